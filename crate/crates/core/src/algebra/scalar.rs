//! Runtime-selected coefficient rings.
//!
//! [`RingSpec`] names a ring; [`Scalar`] is an element of one of the base rings
//! ℤ, ℚ, 𝔽_p, 𝔽_{p^n}. Elements of a truncated polynomial ring are
//! `Polynomial<Scalar>` over a capped [`VarSet`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::error::AlgebraError;
use super::gf::{Gf, GfField};
use super::poly::{Polynomial, VarSet};
use super::ring::{from_bigint, Ring};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSpec {
    Integer,
    Rational,
    Prime(u64),
    /// Modulus is the fixed table entry (or first irreducible) for `(p, degree)`.
    Extension {
        p: u64,
        degree: u32,
    },
    Truncated {
        base: Box<RingSpec>,
        vars: Vec<(String, u16)>,
    },
}

impl RingSpec {
    pub fn validate(&self) -> Result<(), AlgebraError> {
        match self {
            RingSpec::Integer | RingSpec::Rational => Ok(()),
            RingSpec::Prime(p) => GfField::prime(*p).map(|_| ()),
            RingSpec::Extension { p, degree } => {
                if !(1..=4).contains(degree) {
                    return Err(AlgebraError::InvalidRing(format!("extension degree {degree} outside 1..4")));
                }
                GfField::new(*p, *degree).map(|_| ())
            }
            RingSpec::Truncated { base, vars } => {
                if matches!(**base, RingSpec::Truncated { .. }) {
                    return Err(AlgebraError::InvalidRing("nested truncated rings".into()));
                }
                base.validate()?;
                VarSet::with_caps(vars.iter().map(|(n, c)| (n.clone(), Some(*c)))).map(|_| ())
            }
        }
    }

    /// The finite field, for `Prime` and `Extension`.
    pub fn field(&self) -> Option<&'static GfField> {
        match self {
            RingSpec::Prime(p) => GfField::prime(*p).ok(),
            RingSpec::Extension { p, degree } => GfField::new(*p, *degree).ok(),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, RingSpec::Integer | RingSpec::Truncated { .. })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            RingSpec::Integer | RingSpec::Rational => 0,
            RingSpec::Prime(p) | RingSpec::Extension { p, .. } => *p,
            RingSpec::Truncated { base, .. } => base.characteristic(),
        }
    }

    /// Base-ring zero (for a truncated ring, the zero of its coefficient ring).
    pub fn zero(&self) -> Result<Scalar, AlgebraError> {
        self.validate()?;
        Ok(match self {
            RingSpec::Integer => Scalar::Int(BigInt::zero()),
            RingSpec::Rational => Scalar::Rat(BigRational::zero()),
            RingSpec::Prime(_) | RingSpec::Extension { .. } => Scalar::Gf(self.field().expect("validated").zero()),
            RingSpec::Truncated { base, .. } => base.zero()?,
        })
    }

    pub fn int(&self, n: i64) -> Result<Scalar, AlgebraError> {
        Ok(self.zero()?.int_like(n))
    }

    /// Capped variable set of a truncated ring.
    pub fn truncation_vars(&self) -> Option<Arc<VarSet>> {
        match self {
            RingSpec::Truncated { vars, .. } => VarSet::with_caps(vars.iter().map(|(n, c)| (n.clone(), Some(*c)))).ok(),
            _ => None,
        }
    }

    /// Parses a base-ring element: `"-3"`, `"5/8"`, or for 𝔽_{p^n} either the
    /// element index or a polynomial in the generator symbol such as `"w+1"`.
    pub fn parse(&self, s: &str) -> Result<Scalar, AlgebraError> {
        let s = s.trim();
        let bad = || AlgebraError::Parse(format!("`{s}` is not an element of {self}"));
        match self {
            RingSpec::Integer => s.parse::<BigInt>().map(Scalar::Int).map_err(|_| bad()),
            RingSpec::Rational => parse_rational(s).map(Scalar::Rat).ok_or_else(bad),
            RingSpec::Prime(_) | RingSpec::Extension { .. } => {
                let f = self.field().ok_or_else(bad)?;
                if let Ok(n) = s.parse::<BigInt>() {
                    if f.degree() > 1 {
                        let idx = n.to_u64().filter(|&i| i < f.order()).ok_or_else(bad)?;
                        return f.element(idx).map(Scalar::Gf);
                    }
                    return Ok(Scalar::Gf(from_bigint(&f.zero(), &n)));
                }
                if let Some(r) = parse_rational(s) {
                    return Scalar::Rat(r).to_field(f).map(Scalar::Gf);
                }
                parse_gf_poly(f, s).map(Scalar::Gf).ok_or_else(bad)
            }
            RingSpec::Truncated { base, .. } => base.parse(s),
        }
    }

    /// Ring of a scalar.
    pub fn of(x: &Scalar) -> RingSpec {
        match x {
            Scalar::Int(_) => RingSpec::Integer,
            Scalar::Rat(_) => RingSpec::Rational,
            Scalar::Gf(g) => {
                let f = g.field();
                if f.degree() == 1 {
                    RingSpec::Prime(f.characteristic())
                } else {
                    RingSpec::Extension { p: f.characteristic(), degree: f.degree() }
                }
            }
        }
    }

    /// Image of `x` in this (base) ring: ℤ → anything, ℚ → ℚ or 𝔽_q when the
    /// denominator is invertible, 𝔽_q → itself.
    pub fn coerce(&self, x: &Scalar) -> Result<Scalar, AlgebraError> {
        let target = match self {
            RingSpec::Truncated { base, .. } => return base.coerce(x),
            _ => self.zero()?,
        };
        match (&target, x) {
            (Scalar::Int(_), Scalar::Int(_)) => Ok(x.clone()),
            (Scalar::Int(_), Scalar::Rat(r)) if r.is_integer() => Ok(Scalar::Int(r.to_integer())),
            (Scalar::Rat(_), Scalar::Int(n)) => Ok(Scalar::Rat(BigRational::from_integer(n.clone()))),
            (Scalar::Rat(_), Scalar::Rat(_)) => Ok(x.clone()),
            (Scalar::Gf(z), _) => x.to_field(z.field()).map(Scalar::Gf),
            _ => Err(AlgebraError::NoHomomorphism(format!("{x} into {self}"))),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integer => write!(f, "ZZ"),
            RingSpec::Rational => write!(f, "QQ"),
            RingSpec::Prime(p) => write!(f, "GF({p})"),
            RingSpec::Extension { p, degree } => write!(f, "GF({p}^{degree})"),
            RingSpec::Truncated { base, vars } => {
                let v: Vec<String> = vars.iter().map(|(n, c)| format!("{n}^{c}")).collect();
                write!(
                    f,
                    "{base}[{}]/({})",
                    vars.iter().map(|v| v.0.as_str()).collect::<Vec<_>>().join(","),
                    v.join(",")
                )
            }
        }
    }
}

/// `ZZ`, `QQ`, `GF(q)` or `GF(p^k)`; truncated rings only through JSON.
impl std::str::FromStr for RingSpec {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || AlgebraError::Parse(format!("unknown ring `{s}`"));
        let spec = match s {
            "ZZ" | "Z" => RingSpec::Integer,
            "QQ" | "Q" => RingSpec::Rational,
            _ => {
                let inner = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
                match inner.split_once('^') {
                    Some((p, k)) => RingSpec::Extension {
                        p: p.trim().parse().map_err(|_| bad())?,
                        degree: k.trim().parse().map_err(|_| bad())?,
                    },
                    None => {
                        let q: u64 = inner.trim().parse().map_err(|_| bad())?;
                        let f = GfField::of_order(q)?;
                        if f.degree() == 1 {
                            RingSpec::Prime(q)
                        } else {
                            RingSpec::Extension { p: f.characteristic(), degree: f.degree() }
                        }
                    }
                }
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!Zero::is_zero(&d)).then(|| BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Sum of terms `c`, `c*g`, `g`, `g^k`, `c*g^k` in the generator symbol.
fn parse_gf_poly(f: &'static GfField, s: &str) -> Option<Gf> {
    let sym = f.symbol();
    let g = f.generator();
    let mut acc = f.zero();
    for raw in s.replace(' ', "").replace('-', "+-").split('+') {
        if raw.is_empty() {
            continue;
        }
        let (neg, t) = match raw.strip_prefix('-') {
            Some(t) => (true, t),
            None => (false, raw),
        };
        let (coef, mono) = match t.split_once('*') {
            Some((c, m)) => (c.parse::<i64>().ok()?, m),
            None if t.starts_with(sym) => (1, t),
            None => (t.parse::<i64>().ok()?, ""),
        };
        let val = if mono.is_empty() {
            f.one()
        } else {
            let rest = mono.strip_prefix(sym)?;
            let e = match rest.strip_prefix('^') {
                Some(e) => e.parse::<u64>().ok()?,
                None if rest.is_empty() => 1,
                None => return None,
            };
            g.pow(e)
        };
        let term = f.int(coef) * val;
        acc = if neg { acc - term } else { acc + term };
    }
    Some(acc)
}

/// An element of ℤ, ℚ or a finite field. Integers combine with the other kinds
/// through the canonical map; ℚ and 𝔽_q never mix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Gf(Gf),
}

impl Scalar {
    pub fn to_field(&self, f: &'static GfField) -> Result<Gf, AlgebraError> {
        match self {
            Scalar::Int(n) => Ok(from_bigint(&f.zero(), n)),
            Scalar::Rat(r) => {
                let d = from_bigint(&f.zero(), r.denom());
                let inv = d.inverse().ok_or_else(|| {
                    AlgebraError::NoHomomorphism(format!("denominator of {r} vanishes in GF({})", f.order()))
                })?;
                Ok(from_bigint(&f.zero(), r.numer()) * inv)
            }
            Scalar::Gf(g) if std::ptr::eq(g.field(), f) => Ok(*g),
            Scalar::Gf(g) => Err(AlgebraError::NoHomomorphism(format!("{:?} into {:?}", g.field(), f))),
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Int(n) => Some(BigRational::from_integer(n.clone())),
            Scalar::Rat(r) => Some(r.clone()),
            Scalar::Gf(_) => None,
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Int(n) => Some(n.clone()),
            Scalar::Rat(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    pub fn as_gf(&self) -> Option<Gf> {
        match self {
            Scalar::Gf(g) => Some(*g),
            _ => None,
        }
    }

    /// Canonical string used by the JSON codec: decimal, `num/den`, or the field-element index.
    pub fn encode(&self) -> String {
        match self {
            Scalar::Int(n) => n.to_string(),
            Scalar::Rat(r) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Gf(g) => g.index().to_string(),
        }
    }

    fn combine(self, o: &Scalar, op: impl Fn(Promoted) -> Scalar) -> Scalar {
        op(promote(self, o))
    }
}

enum Promoted {
    Int(BigInt, BigInt),
    Rat(BigRational, BigRational),
    Gf(Gf, Gf),
}

fn promote(a: Scalar, b: &Scalar) -> Promoted {
    match (a, b) {
        (Scalar::Int(x), Scalar::Int(y)) => Promoted::Int(x, y.clone()),
        (Scalar::Rat(x), Scalar::Rat(y)) => Promoted::Rat(x, y.clone()),
        (Scalar::Int(x), Scalar::Rat(y)) => Promoted::Rat(BigRational::from_integer(x), y.clone()),
        (Scalar::Rat(x), Scalar::Int(y)) => Promoted::Rat(x, BigRational::from_integer(y.clone())),
        (Scalar::Gf(x), Scalar::Gf(y)) => Promoted::Gf(x, *y),
        (Scalar::Gf(x), Scalar::Int(y)) => Promoted::Gf(x, from_bigint(&x, y)),
        (Scalar::Int(x), Scalar::Gf(y)) => Promoted::Gf(from_bigint(y, &x), *y),
        (a, b) => panic!("ring mismatch: {a} and {b}"),
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(n) => write!(f, "{n}"),
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Gf(g) => write!(f, "{g}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(n) => write!(f, "{n}"),
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Gf(g) => write!(f, "{g:?}"),
        }
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.combine(o, |p| match p {
                    Promoted::Int(x, y) => Scalar::Int(x.$m(y)),
                    Promoted::Rat(x, y) => Scalar::Rat(x.$m(y)),
                    Promoted::Gf(x, y) => Scalar::Gf(x.$m(y)),
                })
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Int(x) => Scalar::Int(-x),
            Scalar::Rat(x) => Scalar::Rat(-x),
            Scalar::Gf(x) => Scalar::Gf(-x),
        }
    }
}

impl Ring for Scalar {
    fn zero_like(&self) -> Self {
        match self {
            Scalar::Int(_) => Scalar::Int(BigInt::zero()),
            Scalar::Rat(_) => Scalar::Rat(BigRational::zero()),
            Scalar::Gf(g) => Scalar::Gf(g.zero_like()),
        }
    }
    fn one_like(&self) -> Self {
        match self {
            Scalar::Int(_) => Scalar::Int(BigInt::one()),
            Scalar::Rat(_) => Scalar::Rat(BigRational::one()),
            Scalar::Gf(g) => Scalar::Gf(g.one_like()),
        }
    }
    fn int_like(&self, n: i64) -> Self {
        match self {
            Scalar::Int(_) => Scalar::Int(BigInt::from(n)),
            Scalar::Rat(_) => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Scalar::Gf(g) => Scalar::Gf(g.int_like(n)),
        }
    }
    fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(x) => Zero::is_zero(x),
            Scalar::Rat(x) => Zero::is_zero(x),
            Scalar::Gf(x) => Ring::is_zero(x),
        }
    }
    fn inverse(&self) -> Option<Self> {
        match self {
            Scalar::Int(x) => Ring::inverse(x).map(Scalar::Int),
            Scalar::Rat(x) => Ring::inverse(x).map(Scalar::Rat),
            Scalar::Gf(x) => x.inverse().map(Scalar::Gf),
        }
    }
    fn characteristic(&self) -> u64 {
        match self {
            Scalar::Gf(g) => g.characteristic(),
            _ => 0,
        }
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        match (self, d) {
            (Scalar::Int(x), Scalar::Int(y)) => x.div_exact(y).map(Scalar::Int),
            (Scalar::Int(_), Scalar::Gf(_)) | (Scalar::Int(_), Scalar::Rat(_)) => {
                let x = d.zero_like() + self;
                x.div_exact(d)
            }
            _ => d.inverse().map(|inv| self.clone() * &inv),
        }
    }
    fn euclid_divrem(&self, d: &Self) -> Option<(Self, Self)> {
        match (self, d) {
            (Scalar::Int(x), Scalar::Int(y)) => x.euclid_divrem(y).map(|(q, r)| (Scalar::Int(q), Scalar::Int(r))),
            _ => d.inverse().map(|inv| (self.clone() * &inv, self.zero_like())),
        }
    }
    fn euclid_size(&self) -> Option<BigInt> {
        match self {
            Scalar::Int(x) => Some(x.abs()),
            _ if Ring::is_zero(self) => Some(BigInt::zero()),
            _ => Some(BigInt::one()),
        }
    }
}

/// True when every denominator of `x` is a power of two.
pub fn is_dyadic(x: &BigRational) -> bool {
    let mut d = x.denom().abs();
    let two = BigInt::from(2);
    while Zero::is_zero(&(&d % &two)) {
        d /= &two;
    }
    One::is_one(&d)
}

/// Polynomial over `spec`: plain constants for base rings, truncated-ring
/// constants carry the capped variable set.
pub fn constant_in(spec: &RingSpec, c: Scalar) -> Result<Polynomial<Scalar>, AlgebraError> {
    let c = spec.coerce(&c)?;
    let vars = spec.truncation_vars().unwrap_or_else(|| VarSet::new(Vec::<String>::new()));
    Ok(Polynomial::constant(vars, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_encode_round_trip() {
        let q = RingSpec::Rational;
        let x = q.parse("-6/8").unwrap();
        assert_eq!(x.encode(), "-3/4");
        assert_eq!(q.parse(&x.encode()).unwrap(), x);
        let f4 = RingSpec::Extension { p: 2, degree: 2 };
        let w = f4.parse("w").unwrap();
        assert_eq!(f4.parse(&w.encode()).unwrap(), w);
        assert_eq!(f4.parse("w^2+w+1").unwrap(), f4.int(0).unwrap());
    }

    #[test]
    fn rationals_map_to_fields_only_with_invertible_denominators() {
        let f5 = GfField::prime(5).unwrap();
        let half = Scalar::Rat(BigRational::new(1.into(), 2.into()));
        assert_eq!(half.to_field(f5).unwrap(), f5.int(3));
        let fifth = Scalar::Rat(BigRational::new(1.into(), 5.into()));
        assert!(matches!(fifth.to_field(f5), Err(AlgebraError::NoHomomorphism(_))));
    }

    #[test]
    fn integers_promote() {
        let a = Scalar::Int(3.into());
        let b = Scalar::Rat(BigRational::new(1.into(), 2.into()));
        assert_eq!((a.clone() * &b).encode(), "3/2");
        let f7 = GfField::prime(7).unwrap();
        assert_eq!(a * &Scalar::Gf(f7.int(5)), Scalar::Gf(f7.int(1)));
    }

    #[test]
    fn ring_spec_validation() {
        assert!(RingSpec::Prime(9).validate().is_err());
        assert!(RingSpec::Extension { p: 2, degree: 5 }.validate().is_err());
        let t = RingSpec::Truncated { base: Box::new(RingSpec::Prime(2)), vars: vec![("f1".into(), 0)] };
        assert!(t.validate().is_err());
    }

    #[test]
    fn dyadic_check() {
        assert!(is_dyadic(&BigRational::new(5.into(), 8.into())));
        assert!(!is_dyadic(&BigRational::new(1.into(), 6.into())));
    }

    #[test]
    fn ring_names_parse() {
        assert_eq!("ZZ".parse::<RingSpec>().unwrap(), RingSpec::Integer);
        assert_eq!("GF(4)".parse::<RingSpec>().unwrap(), RingSpec::Extension { p: 2, degree: 2 });
        assert_eq!("GF(3^2)".parse::<RingSpec>().unwrap(), RingSpec::Extension { p: 3, degree: 2 });
        assert_eq!("GF(7)".parse::<RingSpec>().unwrap(), RingSpec::Prime(7));
        assert!("GF(6)".parse::<RingSpec>().is_err());
        assert!("RR".parse::<RingSpec>().is_err());
    }
}

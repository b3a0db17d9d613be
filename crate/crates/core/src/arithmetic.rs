//! Local-global arithmetic over ℚ: Hilbert symbols, local split/non-split
//! classes of ternary forms, good reduction, the count of forms with good
//! reduction outside a set of primes, and the classification over ℤ.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::gf::is_prime;
use crate::algebra::{AlgebraError, Matrix};
use crate::forms::{signature_pair, to_rational, TernarySymForm};

/// Trial division bound used when factoring.
const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Bound on |dᵢ| for the first representative search.
pub const SMALL_DIAGONAL_BOUND: i64 = 200;

/// Bound on the prime used by the fallback representative search.
const FALLBACK_PRIME_BOUND: u64 = 200_000;

/// Number of places outside the support spot-checked for each representative.
pub const OUTSIDE_SPOT_CHECKS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(u64),
    Infinity,
}

impl Place {
    pub fn prime(p: u64) -> Result<Place, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::Precondition(format!("{p} is not prime")));
        }
        Ok(Place::Finite(p))
    }

    /// "inf", "infinity" or a prime.
    pub fn parse(s: &str) -> Result<Place, AlgebraError> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Place::Infinity),
            t => Place::prime(t.parse().map_err(|_| AlgebraError::Parse(format!("bad place `{t}`")))?),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Elements of ½ℤ/ℤ indexed by places, stored as 0 or 1 (for ½); zero entries are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlaceVector(BTreeMap<Place, u8>);

impl PlaceVector {
    pub fn from_support(places: impl IntoIterator<Item = Place>) -> Self {
        PlaceVector(places.into_iter().map(|v| (v, 1)).collect())
    }

    /// Places carrying ½.
    pub fn support(&self) -> Vec<Place> {
        self.0.iter().filter(|(_, &x)| x == 1).map(|(v, _)| *v).collect()
    }

    pub fn get(&self, v: Place) -> u8 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    /// Σ α_v = 0 in ½ℤ/ℤ.
    pub fn sums_to_zero(&self) -> bool {
        self.support().len().is_multiple_of(2)
    }
}

impl fmt::Display for PlaceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.support().iter().map(|v| format!("{v}:1/2")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for PlaceVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(None)?;
        for v in self.support() {
            m.serialize_entry(&v.to_string(), "1/2")?;
        }
        m.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LocalClass {
    Split,
    Nonsplit,
}

/// p-adic valuation and the remaining cofactor; `n` non-zero.
fn split_off(n: &BigInt, p: u64) -> (u32, BigInt) {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while n.is_multiple_of(&p) {
        n /= &p;
        v += 1;
    }
    (v, n)
}

fn legendre(u: &BigInt, p: u64) -> i8 {
    let r = u.mod_floor(&BigInt::from(p)).to_u64().expect("residue below p");
    if r == 0 {
        return 0;
    }
    let e = BigInt::from((p - 1) / 2);
    if BigInt::from(r).modpow(&e, &BigInt::from(p)).is_one() {
        1
    } else {
        -1
    }
}

/// An integer in the same square class as a non-zero rational.
fn integral_representative(a: &BigRational) -> Result<BigInt, AlgebraError> {
    if a.is_zero() {
        return Err(AlgebraError::Precondition("Hilbert symbol of zero".into()));
    }
    Ok(a.numer() * a.denom())
}

/// (a, b)_v for non-zero rationals.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, v: Place) -> Result<i8, AlgebraError> {
    let (a, b) = (integral_representative(a)?, integral_representative(b)?);
    match v {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Finite(p) if !is_prime(p) => Err(AlgebraError::Precondition(format!("{p} is not prime"))),
        Place::Finite(2) => {
            let (al, u) = split_off(&a, 2);
            let (be, w) = split_off(&b, 2);
            let m8 = |x: &BigInt| x.mod_floor(&BigInt::from(8)).to_u64().expect("residue");
            let eps = |x: u64| ((x - 1) / 2) % 2;
            let omega = |x: u64| ((x * x - 1) / 8) % 2;
            let (u, w) = (m8(&u), m8(&w));
            let e = eps(u) * eps(w) + al as u64 * omega(w) + be as u64 * omega(u);
            Ok(if e.is_multiple_of(2) { 1 } else { -1 })
        }
        Place::Finite(p) => {
            let (al, u) = split_off(&a, p);
            let (be, w) = split_off(&b, p);
            let mut s: i8 = if al % 2 == 1 && be % 2 == 1 && ((p - 1) / 2) % 2 == 1 { -1 } else { 1 };
            if be % 2 == 1 {
                s *= legendre(&u, p);
            }
            if al % 2 == 1 {
                s *= legendre(&w, p);
            }
            Ok(s)
        }
    }
}

/// ⟨d₁, d₂, d₃⟩ with Q ≅ diag(d) over ℚ, by symmetric elimination.
pub fn diagonalize(q: &TernarySymForm<BigRational>) -> Result<[BigRational; 3], AlgebraError> {
    if !q.is_nondegenerate() {
        return Err(AlgebraError::NotInvertible("degenerate form".into()));
    }
    let mut m = q.matrix().clone();
    let n = 3;
    let mut out = Vec::with_capacity(3);
    for k in 0..n {
        if m[(k, k)].is_zero() {
            // x_k ← x_k + x_j makes the pivot 2m_kj + m_jj.
            if let Some(j) = (k + 1..n).find(|&j| !m[(j, j)].is_zero()) {
                swap_basis(&mut m, k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !m[(k, j)].is_zero()) {
                add_basis(&mut m, k, j);
            }
        }
        let pivot = m[(k, k)].clone();
        if pivot.is_zero() {
            return Err(AlgebraError::NotInvertible("degenerate form".into()));
        }
        for i in k + 1..n {
            let c = m[(i, k)].clone() / &pivot;
            for j in 0..n {
                let r = m[(i, j)].clone() - &(c.clone() * &m[(k, j)]);
                m[(i, j)] = r;
            }
            for j in 0..n {
                let r = m[(j, i)].clone() - &(c.clone() * &m[(j, k)]);
                m[(j, i)] = r;
            }
        }
        out.push(pivot);
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}

fn swap_basis(m: &mut Matrix<BigRational>, a: usize, b: usize) {
    for j in 0..3 {
        let t = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = t;
    }
    for i in 0..3 {
        let t = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = t;
    }
}

/// Basis change e_a ← e_a + e_b.
fn add_basis(m: &mut Matrix<BigRational>, a: usize, b: usize) {
    for j in 0..3 {
        let r = m[(a, j)].clone() + &m[(b, j)];
        m[(a, j)] = r;
    }
    for i in 0..3 {
        let r = m[(i, a)].clone() + &m[(i, b)];
        m[(i, a)] = r;
    }
}

/// Split iff the conic Q(v, v) = 0 has a point over ℚ_v.
pub fn local_class(q: &TernarySymForm<BigRational>, v: Place) -> Result<LocalClass, AlgebraError> {
    let [d1, d2, d3] = diagonalize(q)?;
    let a = -(d1 * &d3);
    let b = -(d2 * &d3);
    Ok(if hilbert_symbol(&a, &b, v)? == 1 { LocalClass::Split } else { LocalClass::Nonsplit })
}

/// Good reduction at p: always at 2, otherwise exactly when split at p.
pub fn good_reduction(q: &TernarySymForm<BigRational>, p: u64) -> Result<bool, AlgebraError> {
    let place = Place::prime(p)?;
    if !q.is_nondegenerate() {
        return Err(AlgebraError::NotInvertible("degenerate form".into()));
    }
    if p == 2 {
        return Ok(true);
    }
    Ok(local_class(q, place)? == LocalClass::Split)
}

/// Prime factors of |n| (n ≠ 0), ascending, without multiplicity.
pub fn prime_factors(n: &BigInt) -> Result<Vec<u64>, AlgebraError> {
    let mut n = n.abs();
    if n.is_zero() {
        return Err(AlgebraError::Precondition("zero has no factorization".into()));
    }
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_LIMIT && BigInt::from(d) * BigInt::from(d) <= n {
        if n.is_multiple_of(&BigInt::from(d)) {
            out.push(d);
            while n.is_multiple_of(&BigInt::from(d)) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        let small = n.to_u64().filter(|&r| r <= TRIAL_DIVISION_LIMIT * TRIAL_DIVISION_LIMIT);
        match small {
            Some(r) => out.push(r),
            None => return Err(AlgebraError::Precondition(format!("cannot factor {n} by trial division"))),
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Places where the class of `q` can be non-split: ∞, 2 and primes dividing the diagonal entries.
pub fn relevant_places(q: &TernarySymForm<BigRational>) -> Result<Vec<Place>, AlgebraError> {
    let mut primes = vec![2u64];
    for d in diagonalize(q)? {
        primes.extend(prime_factors(d.numer())?);
        primes.extend(prime_factors(d.denom())?);
    }
    primes.sort_unstable();
    primes.dedup();
    let mut out: Vec<Place> = primes.into_iter().map(Place::Finite).collect();
    out.push(Place::Infinity);
    Ok(out)
}

/// The places where `q` is non-split; the result sums to zero by reciprocity.
pub fn splitting_pattern(q: &TernarySymForm<BigRational>) -> Result<PlaceVector, AlgebraError> {
    let mut support = Vec::new();
    for v in relevant_places(q)? {
        if local_class(q, v)? == LocalClass::Nonsplit {
            support.push(v);
        }
    }
    Ok(PlaceVector::from_support(support))
}

/// One class counted by [`shafarevich_count`].
#[derive(Clone, Debug, Serialize)]
pub struct ShafarevichClass {
    pub pattern: PlaceVector,
    /// Integral symmetric matrix, row-major.
    pub representative: Vec<Vec<String>>,
    /// Every relevant place and the outside spot checks agree with `pattern`.
    pub verified: bool,
    /// Places checked with [`local_class`].
    pub checked_places: Vec<Place>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShafarevichReport {
    pub primes: Vec<u64>,
    pub places: Vec<Place>,
    pub r: usize,
    pub count: u64,
    /// 2 was passed in S and moved to the dyadic places.
    pub two_normalized: bool,
    pub classes: Vec<ShafarevichClass>,
}

impl ShafarevichReport {
    pub fn passed(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.classes.len() as u64 == self.count
            && self.classes.iter().all(|c| c.verified && c.pattern.sums_to_zero() && seen.insert(c.pattern.clone()))
    }
}

/// diag(d₁, d₂, d₃) over ℤ.
fn diagonal_form(d: [i64; 3]) -> TernarySymForm<BigInt> {
    TernarySymForm::diagonal(d.map(BigInt::from))
}

fn rational_form(q: &TernarySymForm<BigInt>) -> TernarySymForm<BigRational> {
    TernarySymForm::new(to_rational(q.matrix())).expect("symmetric")
}

/// Pattern of diag(−a, −b, 1), i.e. of the Hilbert symbol (a, b), over the
/// places dividing 2ab∞.
fn symbol_pattern(a: i64, b: i64) -> Result<PlaceVector, AlgebraError> {
    let (ar, br) = (BigRational::from_integer(a.into()), BigRational::from_integer(b.into()));
    let mut primes = vec![2u64];
    primes.extend(prime_factors(&BigInt::from(a))?);
    primes.extend(prime_factors(&BigInt::from(b))?);
    primes.sort_unstable();
    primes.dedup();
    let mut support = Vec::new();
    for v in primes.into_iter().map(Place::Finite).chain([Place::Infinity]) {
        if hilbert_symbol(&ar, &br, v)? == -1 {
            support.push(v);
        }
    }
    Ok(PlaceVector::from_support(support))
}

fn is_squarefree(n: u64) -> bool {
    (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d * d))
}

/// (a, b) with (a, b)_v = −1 exactly on `target`: first |a|, |b| ≤ 200, then
/// a = ±(product of a subset of the finite target places) against b = ±ℓ for primes ℓ.
fn find_symbol_pair(target: &PlaceVector, finite: &[u64]) -> Result<Option<(i64, i64)>, AlgebraError> {
    let small: Vec<i64> =
        (1..=SMALL_DIAGONAL_BOUND as u64).filter(|&n| is_squarefree(n)).flat_map(|n| [n as i64, -(n as i64)]).collect();
    for &a in &small {
        for &b in &small {
            if b.abs() < a.abs() {
                continue;
            }
            if symbol_pattern(a, b)? == *target {
                return Ok(Some((a, b)));
            }
        }
    }
    let mut heads = Vec::new();
    for mask in 0u32..(1 << finite.len()) {
        let prod: i64 = finite.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p as i64).product();
        heads.push(prod);
        heads.push(-prod);
    }
    for l in (3..FALLBACK_PRIME_BOUND).filter(|&l| is_prime(l)) {
        for &a in &heads {
            for b in [l as i64, -(l as i64), 2 * l as i64, -2 * l as i64] {
                if symbol_pattern(a, b)? == *target {
                    return Ok(Some((a, b)));
                }
            }
        }
    }
    Ok(None)
}

fn spot_check_primes(exclude: &[u64], count: usize) -> Vec<u64> {
    (3..).filter(|&p| is_prime(p) && !exclude.contains(&p)).take(count).collect()
}

/// #{classes with good reduction outside S} = 2^{r−1}, r = #(S ∪ {2, ∞}), with
/// one verified representative per zero-sum pattern on S ∪ {2, ∞}.
pub fn shafarevich_count(s: &[u64]) -> Result<ShafarevichReport, AlgebraError> {
    let mut primes: Vec<u64> = Vec::new();
    for &p in s {
        Place::prime(p)?;
        primes.push(p);
    }
    primes.sort_unstable();
    primes.dedup();
    let two_normalized = primes.contains(&2);
    primes.retain(|&p| p != 2);
    let mut places: Vec<Place> = std::iter::once(2).chain(primes.iter().copied()).map(Place::Finite).collect();
    places.push(Place::Infinity);
    let r = places.len();
    let count = 1u64 << (r - 1);
    let mut classes = Vec::new();
    for mask in 0u32..(1 << r) {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let pattern =
            PlaceVector::from_support(places.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| *v));
        let rep = if mask == 0 {
            TernarySymForm::split(&BigInt::zero())
        } else {
            let finite: Vec<u64> = pattern
                .support()
                .iter()
                .filter_map(|v| match v {
                    Place::Finite(p) if *p != 2 => Some(*p),
                    _ => None,
                })
                .collect();
            let (a, b) = find_symbol_pair(&pattern, &finite)?
                .ok_or_else(|| AlgebraError::Precondition(format!("no representative found for {pattern}")))?;
            diagonal_form([-a, -b, 1])
        };
        let rq = rational_form(&rep);
        let mut checked = relevant_places(&rq)?;
        for p in &primes {
            if !checked.contains(&Place::Finite(*p)) {
                checked.push(Place::Finite(*p));
            }
        }
        let known: Vec<u64> =
            checked.iter().filter_map(|v| if let Place::Finite(p) = v { Some(*p) } else { None }).collect();
        checked.extend(spot_check_primes(&known, OUTSIDE_SPOT_CHECKS).into_iter().map(Place::Finite));
        checked.sort();
        let mut verified = true;
        for &v in &checked {
            let want = if pattern.get(v) == 1 { LocalClass::Nonsplit } else { LocalClass::Split };
            verified &= local_class(&rq, v)? == want;
        }
        let representative = (0..3).map(|i| (0..3).map(|j| rep.matrix()[(i, j)].to_string()).collect()).collect();
        classes.push(ShafarevichClass { pattern, representative, verified, checked_places: checked });
    }
    Ok(ShafarevichReport { primes, places, r, count, two_normalized, classes })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZClass {
    ClassSplitModel,
    ClassDefinite,
}

/// Unimodular integral forms up to similarity: indefinite ↦ the split model, definite ↦ ⟨1,1,1⟩.
pub fn z_classification(q: &TernarySymForm<BigInt>) -> Result<ZClass, AlgebraError> {
    let det = q.det();
    if det.abs() != BigInt::one() {
        return Err(AlgebraError::Precondition(format!("det = {det}, expected ±1")));
    }
    match signature_pair(&to_rational(q.matrix()))? {
        (3, 0) | (0, 3) => Ok(ZClass::ClassDefinite),
        (2, 1) | (1, 2) => Ok(ZClass::ClassSplitModel),
        s => Err(AlgebraError::Precondition(format!("unexpected signature {s:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gf::GfField;
    use crate::forms::similar_forms;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn form(rows: [[i64; 3]; 3]) -> TernarySymForm<BigRational> {
        TernarySymForm::new(
            Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn hilbert_symbol_examples() {
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), Place::Infinity).unwrap(), -1);
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), Place::Finite(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&q(2), &q(3), Place::Finite(3)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&q(1), &q(-7), Place::Finite(7)).unwrap(), 1);
        assert!(hilbert_symbol(&q(0), &q(1), Place::Finite(3)).is_err());
        assert!(hilbert_symbol(&q(1), &q(1), Place::Finite(9)).is_err());
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(hilbert_symbol(&half, &q(3), Place::Finite(3)).unwrap(), -1);
    }

    #[test]
    fn local_classes() {
        let spl = TernarySymForm::split(&q(0));
        for v in [Place::Infinity, Place::Finite(2), Place::Finite(3), Place::Finite(5), Place::Finite(7)] {
            assert_eq!(local_class(&spl, v).unwrap(), LocalClass::Split);
        }
        let id = form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(local_class(&id, Place::Infinity).unwrap(), LocalClass::Nonsplit);
        assert_eq!(local_class(&id, Place::Finite(2)).unwrap(), LocalClass::Nonsplit);
        assert_eq!(local_class(&id, Place::Finite(3)).unwrap(), LocalClass::Split);
        // −u₁xx′ − u₂yy′ + zz′ with (u₁, u₂)₂ = −1.
        let s = form([[-3, 0, 0], [0, -3, 0], [0, 0, 1]]);
        assert_eq!(hilbert_symbol(&q(3), &q(3), Place::Finite(2)).unwrap(), -1);
        assert_eq!(local_class(&s, Place::Finite(2)).unwrap(), LocalClass::Nonsplit);
        assert!(good_reduction(&s, 2).unwrap());
        assert!(local_class(&form([[1, 0, 0], [0, 1, 0], [0, 0, 0]]), Place::Infinity).is_err());
    }

    #[test]
    fn good_reduction_examples() {
        let spl = TernarySymForm::split(&q(0));
        assert!(good_reduction(&spl, 5).unwrap());
        // (2, 3)₃ = −1: non-split at 3.
        let bad3 = form([[-2, 0, 0], [0, -3, 0], [0, 0, 1]]);
        assert_eq!(local_class(&bad3, Place::Finite(3)).unwrap(), LocalClass::Nonsplit);
        assert!(!good_reduction(&bad3, 3).unwrap());
        assert!(good_reduction(&bad3, 2).unwrap());
        assert!(good_reduction(&bad3, 4).is_err());
    }

    #[test]
    fn diagonalization_handles_zero_pivots() {
        let spl = TernarySymForm::split(&q(0));
        let d = diagonalize(&spl).unwrap();
        let prod = d.iter().fold(q(1), |acc, x| acc * x);
        assert_eq!(prod, spl.det());
        let hyper = form([[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
        let d = diagonalize(&hyper).unwrap();
        assert_eq!(d.iter().fold(q(1), |acc, x| acc * x), q(-1));
    }

    #[test]
    fn shafarevich_small_sets() {
        let r = shafarevich_count(&[]).unwrap();
        assert_eq!(r.count, 2);
        assert!(r.passed());
        assert!(r.classes.iter().any(|c| c.pattern.support() == vec![Place::Finite(2), Place::Infinity]));
        let r = shafarevich_count(&[3]).unwrap();
        assert_eq!(r.count, 4);
        assert!(r.passed());
        let r = shafarevich_count(&[3, 5]).unwrap();
        assert_eq!(r.count, 8);
        assert!(r.passed());
        assert!(r.classes.iter().all(|c| c.pattern.support().len() % 2 == 0));
        let r = shafarevich_count(&[2, 3]).unwrap();
        assert!(r.two_normalized);
        assert_eq!(r.count, 4);
        assert!(shafarevich_count(&[4]).is_err());
    }

    #[test]
    fn integral_classification() {
        assert_eq!(z_classification(&TernarySymForm::split(&BigInt::zero())).unwrap(), ZClass::ClassSplitModel);
        assert_eq!(z_classification(&diagonal_form([1, 1, 1])).unwrap(), ZClass::ClassDefinite);
        assert_eq!(z_classification(&diagonal_form([-1, -1, -1])).unwrap(), ZClass::ClassDefinite);
        assert!(z_classification(&diagonal_form([1, 1, 2])).is_err());
    }

    /// Oracle: a x² + b y² = z² has a primitive solution mod p^N (N = 3, or 6 at 2);
    /// for squarefree a, b this decides (a, b)_p independently of the symbol formulas.
    fn solvable_mod_power(a: i64, b: i64, p: u64) -> bool {
        let n = if p == 2 { 6 } else { 3 };
        let m = p.pow(n) as i64;
        let mut squares = vec![Vec::new(); m as usize];
        for z in 0..m {
            squares[((z * z) % m) as usize].push(z);
        }
        let unit = |x: i64| x % p as i64 != 0;
        for x in 0..m {
            for y in 0..m {
                let t = (a * x * x + b * y * y).rem_euclid(m) as usize;
                if squares[t].iter().any(|&z| unit(x) || unit(y) || unit(z)) {
                    return true;
                }
            }
        }
        false
    }

    fn squarefree_part(n: i64) -> i64 {
        let mut n = n;
        let mut d = 2;
        while d * d <= n.abs() {
            while n % (d * d) == 0 {
                n /= d * d;
            }
            d += 1;
        }
        n
    }

    #[test]
    fn symbol_matches_local_solvability() {
        let values: Vec<i64> = (-12..=12).filter(|&x| x != 0).collect();
        for p in [2u64, 3, 5, 7] {
            for &a in &values {
                for &b in &values {
                    let (sa, sb) = (squarefree_part(a), squarefree_part(b));
                    let want = if solvable_mod_power(sa, sb, p) { 1 } else { -1 };
                    assert_eq!(hilbert_symbol(&q(a), &q(b), Place::Finite(p)).unwrap(), want, "({a},{b})_{p}");
                }
            }
        }
    }

    fn nonzero() -> impl Strategy<Value = i64> {
        (-60i64..=60).prop_filter("non-zero", |x| *x != 0)
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn product_formula(a in nonzero(), b in nonzero()) {
            let (ar, br) = (q(a), q(b));
            let mut places = vec![Place::Infinity, Place::Finite(2)];
            places.extend(prime_factors(&BigInt::from(a * b)).unwrap().into_iter().map(Place::Finite));
            places.sort();
            places.dedup();
            let prod: i8 = places.iter().map(|&v| hilbert_symbol(&ar, &br, v).unwrap()).product();
            prop_assert_eq!(prod, 1);
            prop_assert_eq!(hilbert_symbol(&ar, &br, Place::Finite(11)).unwrap() == 1 || (a * b) % 11 == 0, true);
        }

        #[test]
        fn local_class_is_a_similarity_invariant(
            d in prop::array::uniform3(nonzero()),
            t in prop::array::uniform9(-3i64..=3),
            lambda in nonzero(),
        ) {
            let base = diagonal_form(d);
            let t = Matrix::from_rows(t.chunks(3).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap();
            prop_assume!(!t.det().unwrap().is_zero());
            let moved = base.transform(&t).unwrap().scale(&BigInt::from(lambda));
            let (b, m) = (rational_form(&base), rational_form(&moved));
            for v in [Place::Infinity, Place::Finite(2), Place::Finite(3), Place::Finite(5), Place::Finite(7)] {
                prop_assert_eq!(local_class(&b, v).unwrap(), local_class(&m, v).unwrap());
            }
        }

        #[test]
        fn unimodular_forms_reduce_to_the_split_model(
            signs in prop::array::uniform3(prop::bool::ANY),
            ops in prop::collection::vec((0usize..3, 0usize..3, -3i64..=3), 0..8),
        ) {
            // Unimodular T as a product of elementary matrices.
            let mut t = Matrix::identity(3, &BigInt::zero());
            for (i, j, c) in ops {
                if i != j {
                    for k in 0..3 {
                        let r = t[(i, k)].clone() + BigInt::from(c) * &t[(j, k)];
                        t[(i, k)] = r;
                    }
                }
            }
            let form = diagonal_form(signs.map(|s| if s { 1 } else { -1 })).transform(&t).unwrap();
            prop_assert_eq!(form.det().abs(), BigInt::one());
            let rq = rational_form(&form);
            for p in [3u64, 5, 7] {
                prop_assert!(good_reduction(&rq, p).unwrap());
                let f = GfField::prime(p).unwrap();
                let reduced = form.map(|x| f.int(x.mod_floor(&BigInt::from(p)).to_i64().unwrap()));
                let spl = TernarySymForm::split(&f.zero());
                prop_assert!(similar_forms(&reduced, &spl).unwrap().is_some());
            }
        }
    }
}

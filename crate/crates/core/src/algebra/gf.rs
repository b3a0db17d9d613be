//! Finite fields 𝔽_p and 𝔽_{p^n}.
//!
//! Fields are interned: each (p, modulus) pair is built once and lives for the
//! rest of the process, so elements are `Copy` pairs of a field reference and
//! an index. An element of 𝔽_{p^n} is indexed by its coefficient vector in the
//! power basis of the generator, read as a base-p number (constant term lowest).
//!
//! Named moduli: 𝔽₄ = 𝔽₂[w]/(w²+w+1), 𝔽₈ = 𝔽₂[u]/(u³+u+1), 𝔽₉ = 𝔽₃[i]/(i²+1),
//! 𝔽₁₆ = 𝔽₂[v]/(v⁴+v+1). Other extensions use the first monic irreducible
//! polynomial in lexicographic order of its coefficient vector.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use super::error::AlgebraError;
use super::ring::Ring;

/// Largest field order for which log/antilog tables are built.
const MAX_TABLE_ORDER: u64 = 1 << 24;

pub struct GfField {
    p: u64,
    degree: u32,
    q: u64,
    /// Monic modulus, coefficients from constant term up; `[0, 1]` for prime fields.
    modulus: Vec<u64>,
    symbol: &'static str,
    log: Vec<u32>,
    exp: Vec<u32>,
}

impl fmt::Debug for GfField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{}; {:?})", self.p, self.degree, self.modulus)
        }
    }
}

fn registry() -> &'static Mutex<Vec<&'static GfField>> {
    static REG: OnceLock<Mutex<Vec<&'static GfField>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(Vec::new()))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn named_modulus(p: u64, degree: u32) -> Option<(Vec<u64>, &'static str)> {
    match (p, degree) {
        (2, 2) => Some((vec![1, 1, 1], "w")),
        (2, 3) => Some((vec![1, 1, 0, 1], "u")),
        (3, 2) => Some((vec![1, 0, 1], "i")),
        (2, 4) => Some((vec![1, 1, 0, 0, 1], "v")),
        _ => None,
    }
}

impl GfField {
    pub fn prime(p: u64) -> Result<&'static GfField, AlgebraError> {
        GfField::new(p, 1)
    }

    /// 𝔽_{p^degree} with the named modulus when there is one.
    pub fn new(p: u64, degree: u32) -> Result<&'static GfField, AlgebraError> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(AlgebraError::InvalidRing(format!("{p} is not a prime below 2^32")));
        }
        if degree == 0 {
            return Err(AlgebraError::InvalidRing("extension degree must be at least 1".into()));
        }
        if degree == 1 {
            return GfField::intern(p, vec![0, 1], "");
        }
        let (modulus, symbol) = match named_modulus(p, degree) {
            Some(m) => m,
            None => (first_irreducible(p, degree), "x"),
        };
        GfField::intern(p, modulus, symbol)
    }

    /// Field of order `q`, a prime power.
    pub fn of_order(q: u64) -> Result<&'static GfField, AlgebraError> {
        for p in 2..=q {
            if q.is_multiple_of(p) {
                let mut n = q;
                let mut d = 0;
                while n.is_multiple_of(p) {
                    n /= p;
                    d += 1;
                }
                if n != 1 || !is_prime(p) {
                    break;
                }
                return GfField::new(p, d);
            }
        }
        Err(AlgebraError::InvalidRing(format!("{q} is not a prime power")))
    }

    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<&'static GfField, AlgebraError> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(AlgebraError::InvalidRing(format!("{p} is not a prime below 2^32")));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(AlgebraError::InvalidRing("modulus must be monic with reduced coefficients".into()));
        }
        if modulus.len() > 2 && !is_irreducible(p, &modulus) {
            return Err(AlgebraError::InvalidRing(format!("{modulus:?} is reducible over GF({p})")));
        }
        let symbol =
            named_modulus(p, modulus.len() as u32 - 1).filter(|(m, _)| *m == modulus).map(|(_, s)| s).unwrap_or("x");
        GfField::intern(p, modulus, symbol)
    }

    fn intern(p: u64, modulus: Vec<u64>, symbol: &'static str) -> Result<&'static GfField, AlgebraError> {
        let mut reg = registry().lock().expect("field registry poisoned");
        if let Some(f) = reg.iter().find(|f| f.p == p && f.modulus == modulus) {
            return Ok(f);
        }
        let degree = modulus.len() as u32 - 1;
        let q = p.checked_pow(degree).ok_or_else(|| AlgebraError::InvalidRing("field order overflows u64".into()))?;
        if degree > 1 && q > MAX_TABLE_ORDER {
            return Err(AlgebraError::InvalidRing(format!("extension field of order {q} is too large")));
        }
        let mut field = GfField { p, degree, q, modulus, symbol, log: Vec::new(), exp: Vec::new() };
        if degree > 1 {
            field.build_tables();
        }
        let leaked: &'static GfField = Box::leak(Box::new(field));
        reg.push(leaked);
        Ok(leaked)
    }

    fn build_tables(&mut self) {
        let order = self.q - 1;
        let mut gen = None;
        'search: for g in 2..self.q.max(3) {
            let mut x = 1u64;
            for k in 1..=order {
                x = self.slow_mul(x, g);
                if x == 1 {
                    if k == order {
                        gen = Some(g);
                        break 'search;
                    }
                    continue 'search;
                }
            }
        }
        let g = gen.unwrap_or(1);
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u64;
        for k in 0..order {
            exp[k as usize] = x as u32;
            log[x as usize] = k as u32;
            x = self.slow_mul(x, g);
        }
        self.exp = exp;
        self.log = log;
    }

    fn digits(&self, mut v: u64) -> Vec<u64> {
        let mut d = vec![0u64; self.degree as usize];
        for slot in d.iter_mut() {
            *slot = v % self.p;
            v /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0u64, |acc, &c| acc * self.p + c)
    }

    fn slow_mul(&self, a: u64, b: u64) -> u64 {
        let n = self.degree as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * n - 1];
        for i in 0..n {
            for j in 0..n {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % self.p;
            }
        }
        for k in (n..prod.len()).rev() {
            let c = prod[k];
            if c != 0 {
                for i in 0..n {
                    let sub = c * self.modulus[i] % self.p;
                    prod[k - n + i] = (prod[k - n + i] + self.p - sub) % self.p;
                }
                prod[k] = 0;
            }
        }
        self.undigits(&prod[..n])
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn order(&self) -> u64 {
        self.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    pub fn symbol(&self) -> &'static str {
        self.symbol
    }

    pub fn zero(&'static self) -> Gf {
        Gf { field: self, v: 0 }
    }
    pub fn one(&'static self) -> Gf {
        Gf { field: self, v: 1 }
    }

    /// Image of the integer `n` under ℤ → 𝔽.
    pub fn int(&'static self, n: i64) -> Gf {
        Gf { field: self, v: n.rem_euclid(self.p as i64) as u64 }
    }

    /// Element with the given index; errors when out of range.
    pub fn element(&'static self, index: u64) -> Result<Gf, AlgebraError> {
        if index >= self.q {
            return Err(AlgebraError::Parse(format!("{index} is not an element index of {self:?}")));
        }
        Ok(Gf { field: self, v: index })
    }

    /// The generator of the power basis (the class of x modulo the modulus).
    pub fn generator(&'static self) -> Gf {
        if self.degree == 1 {
            self.one()
        } else {
            Gf { field: self, v: self.p }
        }
    }

    /// All elements in index order.
    pub fn elements(&'static self) -> impl Iterator<Item = Gf> {
        (0..self.q).map(move |v| Gf { field: self, v })
    }
}

fn poly_trim(a: &mut Vec<u64>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm && !(r.len() == 1 && r[0] == 0) {
        let k = r.len() - 1;
        let c = r[k] * lead_inv % p;
        if c != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let idx = k - dm + i;
                r[idx] = (r[idx] + p - c * mi % p) % p;
            }
        }
        r.pop();
        if r.is_empty() {
            r.push(0);
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !(y.len() == 1 && y[0] == 0) {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Rabin-style test: f of degree n is irreducible iff gcd(x^{p^i} − x, f) = 1 for i ≤ n/2.
fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let n = f.len() - 1;
    let x = vec![0u64, 1];
    let mut xp = x.clone();
    for _ in 1..=n / 2 {
        // xp ← xp^p mod f
        let mut acc = vec![1u64];
        let mut base = xp.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &base, f, p);
            }
            base = poly_mulmod(&base, &base, f, p);
            e >>= 1;
        }
        xp = acc;
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        poly_trim(&mut diff);
        let g = poly_gcd(f, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn first_irreducible(p: u64, degree: u32) -> Vec<u64> {
    let n = degree as usize;
    let count = p.pow(degree);
    for idx in 0..count {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut v = idx;
        for _ in 0..n {
            coeffs.push(v % p);
            v /= p;
        }
        coeffs.push(1);
        if coeffs[0] != 0 && is_irreducible(p, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// An element of an interned finite field.
#[derive(Clone, Copy)]
pub struct Gf {
    field: &'static GfField,
    v: u64,
}

impl Gf {
    pub fn field(&self) -> &'static GfField {
        self.field
    }

    pub fn index(&self) -> u64 {
        self.v
    }

    /// Coordinates in the power basis, constant term first.
    pub fn coordinates(&self) -> Vec<u64> {
        self.field.digits(self.v)
    }

    pub fn from_coordinates(field: &'static GfField, c: &[u64]) -> Gf {
        let mut d = vec![0u64; field.degree as usize];
        for (slot, &x) in d.iter_mut().zip(c) {
            *slot = x % field.p;
        }
        Gf { field, v: field.undigits(&d) }
    }

    fn same_field(&self, o: &Gf) {
        assert!(std::ptr::eq(self.field, o.field), "finite field mismatch: {:?} vs {:?}", self.field, o.field);
    }

    fn add_raw(&self, o: &Gf) -> u64 {
        let f = self.field;
        if f.degree == 1 {
            (self.v + o.v) % f.p
        } else if f.p == 2 {
            self.v ^ o.v
        } else {
            let (mut a, mut b, mut r, mut place) = (self.v, o.v, 0u64, 1u64);
            for _ in 0..f.degree {
                r += (a % f.p + b % f.p) % f.p * place;
                a /= f.p;
                b /= f.p;
                place *= f.p;
            }
            r
        }
    }

    fn neg_raw(&self) -> u64 {
        let f = self.field;
        if f.degree == 1 {
            (f.p - self.v) % f.p
        } else if f.p == 2 {
            self.v
        } else {
            let (mut a, mut r, mut place) = (self.v, 0u64, 1u64);
            for _ in 0..f.degree {
                r += (f.p - a % f.p) % f.p * place;
                a /= f.p;
                place *= f.p;
            }
            r
        }
    }

    fn mul_raw(&self, o: &Gf) -> u64 {
        let f = self.field;
        if f.degree == 1 {
            self.v * o.v % f.p
        } else if self.v == 0 || o.v == 0 {
            0
        } else {
            let k = (f.log[self.v as usize] as u64 + f.log[o.v as usize] as u64) % (f.q - 1);
            f.exp[k as usize] as u64
        }
    }

    /// x ↦ x^p.
    pub fn frobenius(&self) -> Gf {
        Ring::pow(self, self.field.p)
    }
}

impl PartialEq for Gf {
    fn eq(&self, o: &Gf) -> bool {
        std::ptr::eq(self.field, o.field) && self.v == o.v
    }
}
impl Eq for Gf {}

impl Hash for Gf {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.p.hash(state);
        self.field.degree.hash(state);
        self.v.hash(state);
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.field;
        if field.degree == 1 {
            return write!(f, "{}", self.v);
        }
        let d = field.digits(self.v);
        let mut parts = Vec::new();
        for (k, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && k > 0 { String::new() } else { c.to_string() };
            let mono = match k {
                0 => String::new(),
                1 => field.symbol.to_string(),
                _ => format!("{}^{}", field.symbol, k),
            };
            parts.push(format!("{coeff}{mono}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

impl Add for Gf {
    type Output = Gf;
    fn add(self, o: Gf) -> Gf {
        self.same_field(&o);
        Gf { field: self.field, v: self.add_raw(&o) }
    }
}
impl Add<&Gf> for Gf {
    type Output = Gf;
    fn add(self, o: &Gf) -> Gf {
        self + *o
    }
}
impl Sub for Gf {
    type Output = Gf;
    fn sub(self, o: Gf) -> Gf {
        self.same_field(&o);
        let n = Gf { field: o.field, v: o.neg_raw() };
        Gf { field: self.field, v: self.add_raw(&n) }
    }
}
impl Sub<&Gf> for Gf {
    type Output = Gf;
    fn sub(self, o: &Gf) -> Gf {
        self - *o
    }
}
impl Mul for Gf {
    type Output = Gf;
    fn mul(self, o: Gf) -> Gf {
        self.same_field(&o);
        Gf { field: self.field, v: self.mul_raw(&o) }
    }
}
impl Mul<&Gf> for Gf {
    type Output = Gf;
    fn mul(self, o: &Gf) -> Gf {
        self * *o
    }
}
impl Neg for Gf {
    type Output = Gf;
    fn neg(self) -> Gf {
        Gf { field: self.field, v: self.neg_raw() }
    }
}

impl Ring for Gf {
    fn zero_like(&self) -> Self {
        Gf { field: self.field, v: 0 }
    }
    fn one_like(&self) -> Self {
        Gf { field: self.field, v: 1 }
    }
    fn int_like(&self, n: i64) -> Self {
        self.field.int(n)
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn is_one(&self) -> bool {
        self.v == 1
    }
    fn inverse(&self) -> Option<Self> {
        let f = self.field;
        if self.v == 0 {
            None
        } else if f.degree == 1 {
            Some(Gf { field: f, v: inv_mod(self.v, f.p) })
        } else {
            let l = f.log[self.v as usize] as u64;
            let k = (f.q - 1 - l) % (f.q - 1);
            Some(Gf { field: f, v: f.exp[k as usize] as u64 })
        }
    }
    fn characteristic(&self) -> u64 {
        self.field.p
    }
}

/// Field embedding 𝔽_{p^m} → 𝔽_{p^{mk}} sending the generator to a fixed root of its modulus.
#[derive(Debug, Clone)]
pub struct Embedding {
    from: &'static GfField,
    to: &'static GfField,
    /// Images of 1, g, g², … , g^{m−1}.
    basis_images: Vec<Gf>,
}

impl Embedding {
    /// Uses the root of the source modulus with the smallest index.
    pub fn new(from: &'static GfField, to: &'static GfField) -> Result<Embedding, AlgebraError> {
        if from.p != to.p || !to.degree.is_multiple_of(from.degree) {
            return Err(AlgebraError::InvalidRing(format!("no embedding {from:?} → {to:?}")));
        }
        let root = if from.degree == 1 {
            to.one()
        } else {
            to.elements()
                .find(|x| {
                    let mut acc = to.zero();
                    for &c in from.modulus.iter().rev() {
                        acc = acc * x + to.int(c as i64);
                    }
                    acc.is_zero()
                })
                .expect("a finite extension contains a root of the subfield modulus")
        };
        let mut basis_images = Vec::with_capacity(from.degree as usize);
        let mut x = to.one();
        for _ in 0..from.degree {
            basis_images.push(x);
            x = x * root;
        }
        Ok(Embedding { from, to, basis_images })
    }

    /// The degree-`k` extension of `from` together with the embedding into it.
    pub fn extension(from: &'static GfField, k: u32) -> Result<Embedding, AlgebraError> {
        let to = GfField::new(from.p, from.degree * k)?;
        Embedding::new(from, to)
    }

    pub fn source(&self) -> &'static GfField {
        self.from
    }
    pub fn target(&self) -> &'static GfField {
        self.to
    }

    pub fn apply(&self, x: &Gf) -> Gf {
        assert!(std::ptr::eq(x.field, self.from), "element not in the embedding source");
        let mut acc = self.to.zero();
        for (c, b) in x.coordinates().iter().zip(&self.basis_images) {
            acc = acc + self.to.int(*c as i64) * b;
        }
        acc
    }

    /// Whether `y` in the target lies in the image (y^{|source|} = y).
    pub fn in_image(&self, y: &Gf) -> bool {
        Ring::pow(y, self.from.q) == *y
    }
}

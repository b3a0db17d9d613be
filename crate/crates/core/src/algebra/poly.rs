//! Sparse multivariate polynomials over any [`Ring`].
//!
//! Terms are kept sorted in descending graded-lexicographic order with respect
//! to the declared variable order, with no zero coefficients. A variable may
//! carry a truncation cap `e`, in which case `x^e = 0`; this is how dual numbers
//! and the nilpotents of the characteristic-2 automorphism group are modelled.
//!
//! Binary operations on polynomials with different variable sets first take the
//! union of the two sets (left operand's order first). The operator impls panic
//! on a cap conflict; the `try_*` methods report it.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::budget::{Budget, BudgetExceeded};
use super::error::AlgebraError;
use super::ring::Ring;

pub type Exponents = Box<[u16]>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
    caps: Vec<Option<u16>>,
}

impl VarSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<VarSet> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let caps = vec![None; names.len()];
        Arc::new(VarSet { names, caps })
    }

    /// Variables with optional truncation caps (`Some(e)` imposes `x^e = 0`, e ≥ 1).
    pub fn with_caps<S: Into<String>>(
        vars: impl IntoIterator<Item = (S, Option<u16>)>,
    ) -> Result<Arc<VarSet>, AlgebraError> {
        let mut names = Vec::new();
        let mut caps = Vec::new();
        for (n, c) in vars {
            let n = n.into();
            if c == Some(0) {
                return Err(AlgebraError::InvalidRing(format!("cap of `{n}` must be at least 1")));
            }
            if names.contains(&n) {
                return Err(AlgebraError::VariableConflict(n));
            }
            names.push(n);
            caps.push(c);
        }
        Ok(Arc::new(VarSet { names, caps }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn caps(&self) -> &[Option<u16>] {
        &self.caps
    }
    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn admits(&self, e: &[u16]) -> bool {
        e.iter().zip(&self.caps).all(|(&x, c)| c.is_none_or(|c| x < c))
    }

    fn union(a: &Arc<VarSet>, b: &Arc<VarSet>) -> Result<Arc<VarSet>, AlgebraError> {
        let mut names = a.names.clone();
        let mut caps = a.caps.clone();
        for (n, c) in b.names.iter().zip(&b.caps) {
            match a.index(n) {
                Some(i) if caps[i] != *c => return Err(AlgebraError::VariableConflict(n.clone())),
                Some(_) => {}
                None => {
                    names.push(n.clone());
                    caps.push(*c);
                }
            }
        }
        Ok(Arc::new(VarSet { names, caps }))
    }
}

/// Descending graded-lex comparison: higher total degree first, then larger
/// exponent of the earliest variable first.
pub fn grlex_cmp(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&x| x as u32).sum();
    let db: u32 = b.iter().map(|&x| x as u32).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone)]
pub struct Polynomial<C> {
    vars: Arc<VarSet>,
    terms: Vec<(Exponents, C)>,
    zero: C,
}

impl<C: Ring> Polynomial<C> {
    pub fn zero(vars: Arc<VarSet>, zero: C) -> Self {
        let zero = zero.zero_like();
        Polynomial { vars, terms: Vec::new(), zero }
    }

    /// Collects like terms, drops zeros and monomials beyond the caps.
    pub fn from_terms(
        vars: Arc<VarSet>,
        sample: &C,
        terms: impl IntoIterator<Item = (Vec<u16>, C)>,
    ) -> Result<Self, AlgebraError> {
        let mut acc: FxHashMap<Exponents, C> = FxHashMap::default();
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(AlgebraError::Dimension(format!(
                    "exponent vector of length {} for {} variables",
                    e.len(),
                    vars.len()
                )));
            }
            if !vars.admits(&e) {
                continue;
            }
            let key: Exponents = e.into_boxed_slice();
            match acc.get_mut(&key) {
                Some(slot) => *slot = slot.clone() + &c,
                None => {
                    acc.insert(key, c);
                }
            }
        }
        Ok(Self::from_map(vars, sample.zero_like(), acc))
    }

    fn from_map(vars: Arc<VarSet>, zero: C, acc: FxHashMap<Exponents, C>) -> Self {
        let mut terms: Vec<(Exponents, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|x, y| grlex_cmp(&y.0, &x.0));
        Polynomial { vars, terms, zero }
    }

    pub fn constant(vars: Arc<VarSet>, c: C) -> Self {
        let zero = c.zero_like();
        if c.is_zero() {
            return Polynomial { vars, terms: Vec::new(), zero };
        }
        let e = vec![0u16; vars.len()].into_boxed_slice();
        Polynomial { vars, terms: vec![(e, c)], zero }
    }

    /// The `i`-th variable; zero when its cap is 1.
    pub fn variable(vars: Arc<VarSet>, i: usize, sample: &C) -> Self {
        let mut e = vec![0u16; vars.len()];
        e[i] = 1;
        let one = sample.one_like();
        Self::from_terms(vars, sample, [(e, one)]).expect("length matches")
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }
    pub fn terms(&self) -> &[(Exponents, C)] {
        &self.terms
    }
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
    pub fn coeff_zero(&self) -> &C {
        &self.zero
    }

    pub fn coefficient(&self, e: &[u16]) -> C {
        self.terms
            .binary_search_by(|(t, _)| grlex_cmp(e, t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.zero.clone())
    }

    /// The constant term.
    pub fn constant_term(&self) -> C {
        self.coefficient(&vec![0u16; self.vars.len()])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.iter().all(|&x| x == 0))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(e, _)| e.iter().map(|&x| x as u32).sum())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(e, _)| e.iter().map(|&x| x as u32).sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[i] as u32).max().unwrap_or(0)
    }

    /// Degree in each group of variables, if the polynomial is homogeneous in every group.
    pub fn multidegree(&self, groups: &[Vec<usize>]) -> Option<Vec<u32>> {
        let mut found: Option<Vec<u32>> = None;
        for (e, _) in &self.terms {
            let d: Vec<u32> = groups.iter().map(|g| g.iter().map(|&i| e[i] as u32).sum()).collect();
            match &found {
                None => found = Some(d),
                Some(f) if *f != d => return None,
                _ => {}
            }
        }
        found
    }

    /// Re-express over a variable set containing every current variable with the same cap.
    pub fn with_vars(&self, target: &Arc<VarSet>) -> Result<Self, AlgebraError> {
        if Arc::ptr_eq(&self.vars, target) || *self.vars == **target {
            return Ok(Polynomial { vars: target.clone(), terms: self.terms.clone(), zero: self.zero.clone() });
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (n, c) in self.vars.names.iter().zip(&self.vars.caps) {
            let j = target.index(n).ok_or_else(|| AlgebraError::MissingVariable(n.clone()))?;
            if target.caps[j] != *c {
                return Err(AlgebraError::VariableConflict(n.clone()));
            }
            map.push(j);
        }
        let terms = self.terms.iter().map(|(e, c)| {
            let mut f = vec![0u16; target.len()];
            for (i, &x) in e.iter().enumerate() {
                f[map[i]] = x;
            }
            (f, c.clone())
        });
        Self::from_terms(target.clone(), &self.zero, terms)
    }

    fn aligned(&self, o: &Self) -> Result<(Self, Self), AlgebraError> {
        let u = VarSet::union(&self.vars, &o.vars)?;
        Ok((self.with_vars(&u)?, o.with_vars(&u)?))
    }

    fn same_vars(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.vars, &o.vars) || *self.vars == *o.vars
    }

    fn check_ring(&self, o: &Self) -> Result<(), AlgebraError> {
        if self.zero != o.zero {
            return Err(AlgebraError::RingMismatch(format!("coefficients {:?} vs {:?}", self.zero, o.zero)));
        }
        Ok(())
    }

    fn merge(&self, o: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            let ord = match (self.terms.get(i), o.terms.get(j)) {
                (Some(a), Some(b)) => grlex_cmp(&b.0, &a.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (e, c) = &o.terms[j];
                    out.push((e.clone(), if negate { -c.clone() } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        self.terms[i].1.clone() - &o.terms[j].1
                    } else {
                        self.terms[i].1.clone() + &o.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { vars: self.vars.clone(), terms: out, zero: self.zero.clone() }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.check_ring(o)?;
        if self.same_vars(o) {
            Ok(self.merge(o, false))
        } else {
            let (a, b) = self.aligned(o)?;
            Ok(a.merge(&b, false))
        }
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.check_ring(o)?;
        if self.same_vars(o) {
            Ok(self.merge(o, true))
        } else {
            let (a, b) = self.aligned(o)?;
            Ok(a.merge(&b, true))
        }
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.mul_with_budget(o, &Budget::unlimited())
    }

    /// Product charged at (#terms × #terms) coefficient multiplications.
    pub fn mul_with_budget(&self, o: &Self, budget: &Budget) -> Result<Self, AlgebraError> {
        self.check_ring(o)?;
        if !self.same_vars(o) {
            let (a, b) = self.aligned(o)?;
            return a.mul_with_budget(&b, budget);
        }
        budget.charge((self.terms.len() as u64) * (o.terms.len() as u64))?;
        Ok(self.mul_same(o))
    }

    fn mul_same(&self, o: &Self) -> Self {
        if self.terms.is_empty() || o.terms.is_empty() {
            return Polynomial::zero(self.vars.clone(), self.zero.clone());
        }
        let n = self.vars.len();
        let mut acc: FxHashMap<Exponents, C> = FxHashMap::default();
        acc.reserve(self.terms.len().max(o.terms.len()) * 2);
        let mut buf = vec![0u16; n];
        for (ea, ca) in &self.terms {
            'terms: for (eb, cb) in &o.terms {
                for k in 0..n {
                    let s = ea[k] + eb[k];
                    if let Some(cap) = self.vars.caps[k] {
                        if s >= cap {
                            continue 'terms;
                        }
                    }
                    buf[k] = s;
                }
                let prod = ca.clone() * cb;
                if let Some(slot) = acc.get_mut(buf.as_slice()) {
                    *slot = slot.clone() + &prod;
                } else {
                    acc.insert(buf.clone().into_boxed_slice(), prod);
                }
            }
        }
        Self::from_map(self.vars.clone(), self.zero.clone(), acc)
    }

    pub fn scale(&self, c: &C) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, x)| {
                let y = x.clone() * c;
                (!y.is_zero()).then(|| (e.clone(), y))
            })
            .collect();
        Polynomial { vars: self.vars.clone(), terms, zero: self.zero.clone() }
    }

    pub fn map_coeffs<D: Ring>(&self, sample: &D, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let terms = self.terms.iter().map(|(e, c)| (e.to_vec(), f(c)));
        Polynomial::from_terms(self.vars.clone(), sample, terms).expect("exponent lengths preserved")
    }

    /// Fallible coefficient map (for partial homomorphisms such as ℚ → 𝔽_p).
    pub fn try_map_coeffs<D: Ring>(
        &self,
        sample: &D,
        f: impl Fn(&C) -> Result<D, AlgebraError>,
    ) -> Result<Polynomial<D>, AlgebraError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            terms.push((e.to_vec(), f(c)?));
        }
        Polynomial::from_terms(self.vars.clone(), sample, terms)
    }

    /// Value at `point` (one entry per variable, in declared order).
    pub fn evaluate(&self, point: &[C]) -> Result<C, AlgebraError> {
        self.evaluate_with(&self.zero, |c| c.clone(), point)
    }

    /// Value after mapping coefficients through `hom`.
    pub fn evaluate_with<T: Ring>(&self, sample: &T, hom: impl Fn(&C) -> T, point: &[T]) -> Result<T, AlgebraError> {
        if point.len() != self.vars.len() {
            return Err(AlgebraError::Dimension(format!("{} values for {} variables", point.len(), self.vars.len())));
        }
        let mut powers: Vec<Vec<T>> = point.iter().map(|x| vec![x.one_like(), x.clone()]).collect();
        let mut acc = sample.zero_like();
        for (e, c) in &self.terms {
            let mut t = hom(c);
            for (k, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let pk = &mut powers[k];
                while pk.len() <= x as usize {
                    let next = pk[pk.len() - 1].clone() * &pk[1];
                    pk.push(next);
                }
                t = t * &pk[x as usize];
            }
            acc = acc + &t;
        }
        Ok(acc)
    }

    /// Value at a named assignment.
    pub fn evaluate_named(&self, assignment: &HashMap<String, C>) -> Result<C, AlgebraError> {
        let point = self
            .vars
            .names
            .iter()
            .map(|n| assignment.get(n).cloned().ok_or_else(|| AlgebraError::MissingVariable(n.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        self.evaluate(&point)
    }

    /// Substitute `images[i]` for the `i`-th variable.
    pub fn substitute(&self, images: &[Polynomial<C>]) -> Result<Polynomial<C>, AlgebraError> {
        if images.len() != self.vars.len() {
            return Err(AlgebraError::Dimension(format!("{} images for {} variables", images.len(), self.vars.len())));
        }
        let target = images
            .iter()
            .try_fold(images.first().map(|p| p.vars.clone()).unwrap_or_else(|| self.vars.clone()), |u, p| {
                VarSet::union(&u, &p.vars)
            })?;
        let imgs: Vec<Polynomial<C>> = images.iter().map(|p| p.with_vars(&target)).collect::<Result<_, _>>()?;
        let mut powers: Vec<Vec<Polynomial<C>>> =
            imgs.iter().map(|p| vec![Polynomial::constant(target.clone(), self.zero.one_like()), p.clone()]).collect();
        let mut acc = Polynomial::zero(target.clone(), self.zero.clone());
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(target.clone(), c.clone());
            for (k, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let pk = &mut powers[k];
                while pk.len() <= x as usize {
                    let next = pk[pk.len() - 1].mul_same(&pk[1]);
                    pk.push(next);
                }
                t = t.mul_same(&pk[x as usize]);
            }
            acc = acc.merge(&t, false);
        }
        Ok(acc)
    }

    fn leading(&self) -> Option<&(Exponents, C)> {
        self.terms.first()
    }
}

impl<C: Ring> PartialEq for Polynomial<C> {
    fn eq(&self, o: &Self) -> bool {
        if self.zero != o.zero {
            return false;
        }
        if self.same_vars(o) {
            return self.terms == o.terms;
        }
        match self.aligned(o) {
            Ok((a, b)) => a.terms == b.terms,
            Err(_) => false,
        }
    }
}

impl<C: Ring> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn needs_parens(s: &str) -> bool {
    s.chars().skip(1).any(|ch| ch == '+' || ch == '-')
}

impl<C: Ring> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(
                    |(k, &x)| {
                        if x == 1 {
                            self.vars.names[k].clone()
                        } else {
                            format!("{}^{}", self.vars.names[k], x)
                        }
                    },
                )
                .collect();
            let mut cs = c.to_string();
            let negative = cs.starts_with('-') && !needs_parens(&cs);
            if negative {
                cs.remove(0);
            }
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if needs_parens(&cs) {
                cs = format!("({cs})");
            }
            match (mono.is_empty(), cs.as_str()) {
                (true, _) => write!(f, "{cs}")?,
                (false, "1") => write!(f, "{}", mono.join("*"))?,
                (false, _) => write!(f, "{cs}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl<C: Ring> Add for Polynomial<C> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.try_add(&o).expect("polynomial addition")
    }
}
impl<C: Ring> Add<&Polynomial<C>> for Polynomial<C> {
    type Output = Self;
    fn add(self, o: &Self) -> Self {
        self.try_add(o).expect("polynomial addition")
    }
}
impl<C: Ring> Sub for Polynomial<C> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.try_sub(&o).expect("polynomial subtraction")
    }
}
impl<C: Ring> Sub<&Polynomial<C>> for Polynomial<C> {
    type Output = Self;
    fn sub(self, o: &Self) -> Self {
        self.try_sub(o).expect("polynomial subtraction")
    }
}
impl<C: Ring> Mul for Polynomial<C> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.try_mul(&o).expect("polynomial multiplication")
    }
}
impl<C: Ring> Mul<&Polynomial<C>> for Polynomial<C> {
    type Output = Self;
    fn mul(self, o: &Self) -> Self {
        self.try_mul(o).expect("polynomial multiplication")
    }
}
impl<C: Ring> Neg for Polynomial<C> {
    type Output = Self;
    fn neg(self) -> Self {
        let terms = self.terms.into_iter().map(|(e, c)| (e, -c)).collect();
        Polynomial { vars: self.vars, terms, zero: self.zero }
    }
}

impl<C: Ring> Ring for Polynomial<C> {
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.vars.clone(), self.zero.clone())
    }
    fn one_like(&self) -> Self {
        Polynomial::constant(self.vars.clone(), self.zero.one_like())
    }
    fn int_like(&self, n: i64) -> Self {
        Polynomial::constant(self.vars.clone(), self.zero.int_like(n))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Units are unit constants plus, in a truncated ring, nilpotent corrections.
    fn inverse(&self) -> Option<Self> {
        let c0 = self.constant_term();
        let c0_inv = c0.inverse()?;
        if self.is_constant() {
            return Some(Polynomial::constant(self.vars.clone(), c0_inv));
        }
        let nilpotent = self
            .terms
            .iter()
            .filter(|(e, _)| e.iter().any(|&x| x > 0))
            .all(|(e, _)| e.iter().zip(&self.vars.caps).any(|(&x, c)| x > 0 && c.is_some()));
        if !nilpotent {
            return None;
        }
        // self = c0·(1 − n) with n nilpotent, so self⁻¹ = c0⁻¹·(1 + n + n² + …).
        let one = self.one_like();
        let n = one.clone() - &self.scale(&c0_inv);
        let mut sum = one.clone();
        let mut power = one;
        loop {
            power = power.mul_same(&n);
            if power.is_zero() {
                break;
            }
            sum = sum.merge(&power, false);
        }
        Some(sum.scale(&c0_inv))
    }

    fn characteristic(&self) -> u64 {
        self.zero.characteristic()
    }

    /// Exact division by leading terms; `None` unless the division is exact.
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if !self.same_vars(d) {
            let (a, b) = self.aligned(d).ok()?;
            return a.div_exact(&b);
        }
        if d.is_constant() {
            let c = d.constant_term();
            let mut terms = Vec::with_capacity(self.terms.len());
            for (e, x) in &self.terms {
                terms.push((e.clone(), x.div_exact(&c)?));
            }
            return Some(Polynomial { vars: self.vars.clone(), terms, zero: self.zero.clone() });
        }
        let (ld, cd) = d.leading()?.clone();
        let mut rem = self.clone();
        let mut quot = self.zero_like();
        while let Some((lr, cr)) = rem.leading().cloned() {
            if lr.iter().zip(ld.iter()).any(|(a, b)| a < b) {
                return None;
            }
            let c = cr.div_exact(&cd)?;
            let e: Exponents = lr.iter().zip(ld.iter()).map(|(a, b)| a - b).collect();
            let t = Polynomial { vars: self.vars.clone(), terms: vec![(e, c)], zero: self.zero.clone() };
            rem = rem.merge(&t.mul_same(d), true);
            quot = quot.merge(&t, false);
        }
        Some(quot)
    }

    fn mul_budgeted(&self, rhs: &Self, budget: &Budget) -> Result<Self, BudgetExceeded> {
        match self.mul_with_budget(rhs, budget) {
            Ok(p) => Ok(p),
            Err(AlgebraError::Budget(b)) => Err(b),
            Err(e) => panic!("polynomial multiplication: {e}"),
        }
    }
}

/// Convenience handle producing polynomials over a fixed variable set.
#[derive(Clone, Debug)]
pub struct PolyRing<C> {
    vars: Arc<VarSet>,
    zero: C,
}

impl<C: Ring> PolyRing<C> {
    pub fn new(vars: Arc<VarSet>, sample: &C) -> Self {
        PolyRing { vars, zero: sample.zero_like() }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn var(&self, name: &str) -> Polynomial<C> {
        let i = self.vars.index(name).unwrap_or_else(|| panic!("unknown variable `{name}`"));
        Polynomial::variable(self.vars.clone(), i, &self.zero)
    }

    pub fn gens(&self) -> Vec<Polynomial<C>> {
        (0..self.vars.len()).map(|i| Polynomial::variable(self.vars.clone(), i, &self.zero)).collect()
    }

    pub fn constant(&self, c: C) -> Polynomial<C> {
        Polynomial::constant(self.vars.clone(), c)
    }

    pub fn int(&self, n: i64) -> Polynomial<C> {
        Polynomial::constant(self.vars.clone(), self.zero.int_like(n))
    }

    pub fn zero(&self) -> Polynomial<C> {
        Polynomial::zero(self.vars.clone(), self.zero.clone())
    }

    pub fn one(&self) -> Polynomial<C> {
        self.int(1)
    }
}

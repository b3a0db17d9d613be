//! Quadric models: Y_spl ⊂ ℙ⁶, its Grassmannian presentation, the V₁₀ target of
//! the characteristic-2 quotient map, and the first-order deformation family.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::linalg::{rref, same_span};
use crate::algebra::{AlgebraError, Gf, Matrix, Polynomial, Ring, VarSet};
use crate::correspondence::{net_from_form, pairs};
use crate::forms::{AlternatingNet, TernarySymForm};

/// Homogeneous quadrics in the first `coords` variables; any further variables
/// are parameters (such as a nilpotent `t`).
#[derive(Clone)]
pub struct QuadricSystem<C> {
    coords: usize,
    generators: Vec<Polynomial<C>>,
}

impl<C: Ring> PartialEq for QuadricSystem<C> {
    fn eq(&self, o: &Self) -> bool {
        self.coords == o.coords && self.generators == o.generators
    }
}

impl<C: Ring> std::fmt::Debug for QuadricSystem<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuadricSystem").field("coords", &self.coords).field("generators", &self.generators).finish()
    }
}

impl<C: Ring> QuadricSystem<C> {
    /// Every generator must share one variable set and have degree 2 in the coordinates.
    pub fn new(coords: usize, generators: Vec<Polynomial<C>>) -> Result<Self, AlgebraError> {
        let Some(first) = generators.first() else {
            return Err(AlgebraError::Precondition("empty quadric system".into()));
        };
        let vars = first.vars().clone();
        if coords > vars.len() {
            return Err(AlgebraError::Dimension(format!("{coords} coordinates among {} variables", vars.len())));
        }
        let generators = generators.iter().map(|g| g.with_vars(&vars)).collect::<Result<Vec<_>, _>>()?;
        for g in &generators {
            if g.terms().iter().any(|(e, _)| e[..coords].iter().map(|&x| x as u32).sum::<u32>() != 2) {
                return Err(AlgebraError::Precondition(format!("`{g}` is not a quadric in the coordinates")));
            }
        }
        Ok(QuadricSystem { coords, generators })
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        self.generators[0].vars()
    }

    pub fn coords(&self) -> usize {
        self.coords
    }

    pub fn coordinate_names(&self) -> &[String] {
        &self.vars().names()[..self.coords]
    }

    pub fn generators(&self) -> &[Polynomial<C>] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// The same generators over new variable names (same count and caps, in order).
    pub fn rename<S: Into<String>>(&self, names: impl IntoIterator<Item = S>) -> Result<Self, AlgebraError> {
        let old = self.vars();
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() != old.len() {
            return Err(AlgebraError::Dimension(format!("{} names for {} variables", names.len(), old.len())));
        }
        let vars = VarSet::with_caps(names.into_iter().zip(old.caps().iter().copied()))?;
        let zero = self.generators[0].coeff_zero().clone();
        let generators = self
            .generators
            .iter()
            .map(|g| {
                Polynomial::from_terms(vars.clone(), &zero, g.terms().iter().map(|(e, c)| (e.to_vec(), c.clone())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        QuadricSystem::new(self.coords, generators)
    }

    /// Whether every generator vanishes at `point` (coordinates only; no parameters).
    pub fn contains(&self, point: &[C]) -> Result<bool, AlgebraError> {
        if point.len() != self.vars().len() {
            return Err(AlgebraError::Dimension(format!(
                "{} coordinates for {} variables",
                point.len(),
                self.vars().len()
            )));
        }
        if point.iter().all(Ring::is_zero) {
            return Err(AlgebraError::Precondition("the zero vector is not a projective point".into()));
        }
        for g in &self.generators {
            if !g.evaluate(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of spans over the coefficient ring extended by `multipliers`
    /// (pass `[1]` over a field; `[1, t]` over 𝔽[t]/(t²)).
    pub fn same_span(&self, other: &Self, multipliers: &[Polynomial<C>]) -> Result<bool, AlgebraError> {
        let a = expand(&self.generators, multipliers)?;
        let b = expand(&other.generators, multipliers)?;
        let mut all = a.clone();
        all.extend(b.iter().cloned());
        let rows = coefficient_rows(&all)?;
        let (ra, rb) = rows.split_at(a.len());
        Ok(same_span(ra, rb, self.generators[0].coeff_zero()))
    }
}

fn expand<C: Ring>(polys: &[Polynomial<C>], multipliers: &[Polynomial<C>]) -> Result<Vec<Polynomial<C>>, AlgebraError> {
    let mut out = Vec::with_capacity(polys.len() * multipliers.len().max(1));
    for p in polys {
        if multipliers.is_empty() {
            out.push(p.clone());
        }
        for m in multipliers {
            out.push(p.try_mul(m)?);
        }
    }
    Ok(out)
}

/// Coefficient vectors over the union of occurring monomials (shared variable set).
pub fn coefficient_rows<C: Ring>(polys: &[Polynomial<C>]) -> Result<Vec<Vec<C>>, AlgebraError> {
    let Some(first) = polys.first() else { return Ok(Vec::new()) };
    let vars = first.vars().clone();
    let polys = polys.iter().map(|p| p.with_vars(&vars)).collect::<Result<Vec<_>, _>>()?;
    let mut index: BTreeMap<Vec<u16>, usize> = BTreeMap::new();
    for p in &polys {
        for (e, _) in p.terms() {
            let n = index.len();
            index.entry(e.to_vec()).or_insert(n);
        }
    }
    let width = index.len().max(1);
    let zero = first.coeff_zero().clone();
    Ok(polys
        .iter()
        .map(|p| {
            let mut row = vec![zero.clone(); width];
            for (e, c) in p.terms() {
                row[index[&e.to_vec()]] = c.clone();
            }
            row
        })
        .collect())
}

/// Whether `p` lies in the span of `generators` extended by `multipliers`.
pub fn in_quadric_span<C: Ring>(
    generators: &[Polynomial<C>],
    p: &Polynomial<C>,
    multipliers: &[Polynomial<C>],
) -> Result<bool, AlgebraError> {
    let mut all = expand(generators, multipliers)?;
    let n = all.len();
    all.push(p.clone());
    let rows = coefficient_rows(&all)?;
    Ok(crate::algebra::linalg::in_span(&rows[..n], &rows[n]))
}

pub const Y_COORDS: [&str; 7] = ["a0", "a1", "a2", "a3", "a4", "a5", "a6"];

fn quadric<C: Ring>(vars: &Arc<VarSet>, sample: &C, terms: &[(i64, usize, usize)]) -> Polynomial<C> {
    let n = vars.len();
    let t = terms.iter().map(|&(c, i, j)| {
        let mut e = vec![0u16; n];
        e[i] += 1;
        e[j] += 1;
        (e, sample.int_like(c))
    });
    Polynomial::from_terms(vars.clone(), sample, t).expect("exponent length matches")
}

const Y_SPLIT_TERMS: [[(i64, usize, usize); 3]; 5] = [
    [(1, 0, 4), (-1, 1, 3), (1, 2, 2)],
    [(1, 0, 5), (-1, 1, 4), (1, 2, 3)],
    [(1, 0, 6), (-1, 2, 4), (1, 3, 3)],
    [(1, 1, 6), (-1, 2, 5), (1, 3, 4)],
    [(1, 2, 6), (-1, 3, 5), (1, 4, 4)],
];

/// The five quadrics of Y_spl in a₀..a₆ over the ring of `sample`.
pub fn y_split_ideal<C: Ring>(sample: &C) -> QuadricSystem<C> {
    let vars = VarSet::new(Y_COORDS);
    let gens = Y_SPLIT_TERMS.iter().map(|t| quadric(&vars, sample, t)).collect();
    QuadricSystem::new(7, gens).expect("quadrics")
}

/// Plücker coordinate names b12..b45 in lexicographic order.
pub fn plucker_names() -> Vec<String> {
    pairs(5).into_iter().map(|(i, j)| format!("b{}{}", i + 1, j + 1)).collect()
}

fn plucker_index(i: usize, j: usize) -> usize {
    pairs(5).iter().position(|&p| p == (i, j)).expect("i < j < 5")
}

/// The five 4×4 Pfaffians of the generic alternating matrix (b_ij), deleting
/// index 5, 4, 3, 2, 1 in turn: `b_ij b_kl − b_ik b_jl + b_il b_jk`.
pub fn plucker_pfaffians<C: Ring>(sample: &C) -> QuadricSystem<C> {
    let vars = VarSet::new(plucker_names());
    let gens = (0..5)
        .rev()
        .map(|skip| {
            let ix: Vec<usize> = (0..5).filter(|&k| k != skip).collect();
            let (i, j, k, l) = (ix[0], ix[1], ix[2], ix[3]);
            let b = plucker_index;
            quadric(&vars, sample, &[(1, b(i, j), b(k, l)), (-1, b(i, k), b(j, l)), (1, b(i, l), b(j, k))])
        })
        .collect();
    QuadricSystem::new(10, gens).expect("quadrics")
}

/// `b_ij = u_i v_j − u_j v_i` for the plane spanned by `u` and `v`.
pub fn plucker_from_plane<T: Ring>(u: &[T], v: &[T]) -> Result<Vec<T>, AlgebraError> {
    if u.len() != 5 || v.len() != 5 {
        return Err(AlgebraError::Dimension("plane vectors must have 5 entries".into()));
    }
    Ok(pairs(5).into_iter().map(|(i, j)| u[i].clone() * &v[j] - &(u[j].clone() * &v[i])).collect())
}

/// A linear section of the Grassmannian cut out by a net.
#[derive(Clone)]
pub struct GrassmannianSection<T> {
    /// Linear forms in b12..b45, one per eliminated coordinate, leading coefficient 1.
    pub relations: Vec<Polynomial<T>>,
    /// Indices (into b12..b45) of the coordinates kept.
    pub surviving: Vec<usize>,
    /// The Pfaffians restricted to the section, in the surviving coordinates.
    pub system: QuadricSystem<T>,
}

/// The relations `Σ X_ij b_ij = 0` for X = A, B, C, solved for the rightmost
/// possible coordinates, substituted into the Pfaffians.
pub fn grassmannian_section<T: Ring>(net: &AlternatingNet<T>) -> Result<GrassmannianSection<T>, AlgebraError> {
    let z = net.sample().zero_like();
    let ps = pairs(5);
    // Columns reversed so that pivots fall on the rightmost coordinates.
    let coeff = Matrix::from_fn(3, 10, |r, c| {
        let (i, j) = ps[9 - c];
        net.matrices()[r][(i, j)].clone()
    });
    let (red, piv) = rref(&coeff);
    if piv.len() != 3 {
        return Err(AlgebraError::Precondition(format!(
            "coefficient map has rank {} and kernel rank {}, expected rank 3",
            piv.len(),
            10 - piv.len()
        )));
    }
    let pivots: Vec<usize> = piv.iter().map(|&c| 9 - c).collect();
    let surviving: Vec<usize> = (0..10).filter(|k| !pivots.contains(k)).collect();
    let bvars = VarSet::new(plucker_names());
    let relations = (0..3)
        .map(|r| {
            let terms = (0..10).map(|c| {
                let mut e = vec![0u16; 10];
                e[9 - c] = 1;
                (e, red[(r, c)].clone())
            });
            Polynomial::from_terms(bvars.clone(), &z, terms)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let names = plucker_names();
    let svars = VarSet::new(surviving.iter().map(|&k| names[k].clone()));
    let images: Vec<Polynomial<T>> = (0..10)
        .map(|k| {
            if let Some(pos) = surviving.iter().position(|&s| s == k) {
                return Polynomial::variable(svars.clone(), pos, &z);
            }
            let r = pivots.iter().position(|&p| p == k).expect("pivot");
            let terms = surviving.iter().enumerate().map(|(pos, &s)| {
                let mut e = vec![0u16; surviving.len()];
                e[pos] = 1;
                (e, -red[(r, 9 - s)].clone())
            });
            Polynomial::from_terms(svars.clone(), &z, terms).expect("exponent length matches")
        })
        .collect();
    let pf = plucker_pfaffians(&z);
    let gens = pf.generators().iter().map(|g| g.substitute(&images)).collect::<Result<Vec<_>, _>>()?;
    let system = QuadricSystem::new(surviving.len(), gens)?;
    Ok(GrassmannianSection { relations, surviving, system })
}

/// A point of ℙⁿ over a field, scaled so its first non-zero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjPoint<T> {
    coords: Vec<T>,
}

impl<T: Ring> ProjPoint<T> {
    pub fn new(coords: Vec<T>) -> Result<Self, AlgebraError> {
        let Some(lead) = coords.iter().find(|c| !c.is_zero()) else {
            return Err(AlgebraError::Precondition("the zero vector is not a projective point".into()));
        };
        let inv = lead.inverse().ok_or_else(|| AlgebraError::NotInvertible(format!("leading coordinate {lead}")))?;
        Ok(ProjPoint { coords: coords.iter().map(|c| c.clone() * &inv).collect() })
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }
}

impl<T: Ring> std::fmt::Display for ProjPoint<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Whether every generator of `s` vanishes at `p`.
pub fn membership<C: Ring>(p: &ProjPoint<C>, s: &QuadricSystem<C>) -> Result<bool, AlgebraError> {
    s.contains(p.coords())
}

fn require_char2<C: Ring>(sample: &C) -> Result<(), AlgebraError> {
    if sample.characteristic() != 2 {
        return Err(AlgebraError::Precondition(format!(
            "characteristic {} given, 2 required",
            sample.characteristic()
        )));
    }
    Ok(())
}

/// V₁₀ ⊂ ℙ⁷ in a₀..a₆, t: the Y_spl quadrics and `t² − (a₁a₅ + a₀a₃ + a₃a₆)`.
pub fn v10_ideal<C: Ring>(sample: &C) -> Result<QuadricSystem<C>, AlgebraError> {
    require_char2(sample)?;
    let vars = VarSet::new(Y_COORDS.iter().copied().chain(["t"]));
    let mut gens: Vec<Polynomial<C>> = Y_SPLIT_TERMS.iter().map(|t| quadric(&vars, sample, t)).collect();
    gens.push(quadric(&vars, sample, &[(1, 7, 7), (-1, 1, 5), (-1, 0, 3), (-1, 3, 6)]));
    QuadricSystem::new(8, gens)
}

/// `(a₀, …, a₆) ↦ (a₀², …, a₆², a₁a₅ + a₀a₃ + a₃a₆)`.
pub fn v10_quotient_map<C: Ring>(p: &[C]) -> Result<Vec<C>, AlgebraError> {
    if p.len() != 7 {
        return Err(AlgebraError::Dimension("points of ℙ⁶ have 7 coordinates".into()));
    }
    require_char2(&p[0])?;
    let mut out: Vec<C> = p.iter().map(|x| x.clone() * x).collect();
    out.push(p[1].clone() * &p[5] + &(p[0].clone() * &p[3]) + &(p[3].clone() * &p[6]));
    Ok(out)
}

/// The quotient map as seven-variable quartics/quadrics, for symbolic checks.
pub fn v10_quotient_polys<C: Ring>(sample: &C) -> Result<Vec<Polynomial<C>>, AlgebraError> {
    require_char2(sample)?;
    let vars = VarSet::new(Y_COORDS);
    let gens: Vec<Polynomial<C>> = (0..7).map(|i| Polynomial::variable(vars.clone(), i, sample)).collect();
    v10_quotient_map(&gens)
}

/// Variables a₀..a₆, t with t² = 0.
pub fn dual_number_vars() -> Arc<VarSet> {
    VarSet::with_caps(Y_COORDS.iter().map(|n| (n.to_string(), None)).chain([("t".to_string(), Some(2))]))
        .expect("distinct names")
}

fn t_index() -> usize {
    7
}

fn dual_quadric(vars: &Arc<VarSet>, sample: &Gf, terms: &[(Gf, usize, usize, u16)]) -> Polynomial<Gf> {
    let n = vars.len();
    let t = terms.iter().map(|&(c, i, j, tp)| {
        let mut e = vec![0u16; n];
        e[i] += 1;
        e[j] += 1;
        e[t_index()] = tp;
        (e, c)
    });
    Polynomial::from_terms(vars.clone(), sample, t).expect("exponent length matches")
}

/// The deformed quadrics with t₁ = ξt, t₂ = ηt over 𝔽[t]/(t²), 𝔽 of characteristic 2.
pub fn deformed_ideal(xi: Gf, eta: Gf) -> Result<QuadricSystem<Gf>, AlgebraError> {
    require_char2(&xi)?;
    if !std::ptr::eq(xi.field(), eta.field()) {
        return Err(AlgebraError::RingMismatch("ξ and η lie in different fields".into()));
    }
    let one = xi.one_like();
    let vars = dual_number_vars();
    let g = |terms: &[(Gf, usize, usize, u16)]| dual_quadric(&vars, &xi, terms);
    let gens = vec![
        g(&[
            (one, 0, 4, 0),
            (one, 1, 3, 0),
            (one, 2, 2, 0),
            (xi, 0, 6, 1),
            (xi, 1, 5, 1),
            (xi, 2, 4, 1),
            (eta, 1, 1, 1),
        ]),
        g(&[(one, 0, 5, 0), (one, 1, 4, 0), (one, 2, 3, 0), (xi, 3, 4, 1), (eta, 0, 3, 1)]),
        g(&[(one, 0, 6, 0), (one, 2, 4, 0), (one, 3, 3, 0), (xi, 3, 5, 1), (eta, 1, 3, 1)]),
        g(&[(one, 1, 6, 0), (one, 2, 5, 0), (one, 3, 4, 0), (xi, 3, 6, 1), (eta, 2, 3, 1)]),
        g(&[
            (one, 2, 6, 0),
            (one, 3, 5, 0),
            (one, 4, 4, 0),
            (xi, 5, 5, 1),
            (eta, 0, 6, 1),
            (eta, 1, 5, 1),
            (eta, 2, 4, 1),
        ]),
    ];
    QuadricSystem::new(7, gens)
}

/// The symmetric matrix [[ξt, 1, 0], [1, ηt, 0], [0, 0, 1]] over 𝔽[t]/(t²).
pub fn deformed_form(xi: Gf, eta: Gf) -> Result<TernarySymForm<Polynomial<Gf>>, AlgebraError> {
    require_char2(&xi)?;
    let vars = VarSet::with_caps([("t", Some(2))])?;
    let t = Polynomial::variable(vars.clone(), 0, &xi);
    let c = |x: Gf| Polynomial::constant(vars.clone(), x);
    let one = xi.one_like();
    let zero = xi.zero_like();
    TernarySymForm::new(Matrix::from_rows(vec![
        vec![t.scale(&xi), c(one), c(zero)],
        vec![c(one), t.scale(&eta), c(zero)],
        vec![c(zero), c(zero), c(one)],
    ])?)
}

/// Surviving Plücker coordinates (b12, b13, b14, b15, b25, b35, b45) named a₀..a₆.
pub const SURVIVING_SPLIT: [usize; 7] = [0, 1, 2, 3, 6, 8, 9];

/// The net relations of the deformation, each `(eliminated, [(coefficient, t-power, kept)])`:
/// b₃₄ = b₂₅ + t₂b₂₃ + t₁b₄₅, b₁₄ = b₂₃ + t₂b₁₂ + t₁b₃₄, b₁₅ = b₂₄ + t₂b₁₃ + t₁b₃₅.
/// Solved over t² = 0: b₂₃ = a₂ + t₂a₀ + t₁a₄, b₂₄ = a₃ + t₂a₁ + t₁a₅, b₃₄ = a₄ + t₂a₂ + t₁a₆.
pub fn deformed_from_relations(xi: Gf, eta: Gf) -> Result<QuadricSystem<Gf>, AlgebraError> {
    require_char2(&xi)?;
    let vars = dual_number_vars();
    let one = xi.one_like();
    let lin = |terms: &[(Gf, usize, u16)]| {
        let t = terms.iter().map(|&(c, i, tp)| {
            let mut e = vec![0u16; 8];
            e[i] = 1;
            e[t_index()] = tp;
            (e, c)
        });
        Polynomial::from_terms(vars.clone(), &xi, t).expect("exponent length matches")
    };
    let a = |i: usize| Polynomial::variable(vars.clone(), i, &xi);
    let mut images: Vec<Polynomial<Gf>> = vec![a(0); 10];
    for (k, &s) in SURVIVING_SPLIT.iter().enumerate() {
        images[s] = a(k);
    }
    images[plucker_index(1, 2)] = lin(&[(one, 2, 0), (eta, 0, 1), (xi, 4, 1)]);
    images[plucker_index(1, 3)] = lin(&[(one, 3, 0), (eta, 1, 1), (xi, 5, 1)]);
    images[plucker_index(2, 3)] = lin(&[(one, 4, 0), (eta, 2, 1), (xi, 6, 1)]);
    let gens =
        plucker_pfaffians(&xi).generators().iter().map(|g| g.substitute(&images)).collect::<Result<Vec<_>, _>>()?;
    QuadricSystem::new(7, gens)
}

/// The deformation obtained by running the form-to-net map on the deformed form
/// and cutting the Grassmannian with the resulting net.
pub fn deformed_from_net(xi: Gf, eta: Gf) -> Result<QuadricSystem<Gf>, AlgebraError> {
    let net = net_from_form(&deformed_form(xi, eta)?)?;
    let sec = grassmannian_section(&net)?;
    if sec.surviving != SURVIVING_SPLIT {
        return Err(AlgebraError::Precondition(format!("unexpected surviving coordinates {:?}", sec.surviving)));
    }
    let vars = dual_number_vars();
    let gens = sec.system.generators().iter().map(|g| flatten(g, &vars)).collect::<Result<Vec<_>, _>>()?;
    QuadricSystem::new(7, gens)
}

/// Rewrites a polynomial with polynomial coefficients over the concatenated variables.
pub fn flatten<C: Ring>(p: &Polynomial<Polynomial<C>>, target: &Arc<VarSet>) -> Result<Polynomial<C>, AlgebraError> {
    let outer = p.vars().len();
    let sample = p.coeff_zero().coeff_zero().clone();
    let mut terms = Vec::new();
    for (e, c) in p.terms() {
        let inner = c.vars();
        if outer + inner.len() != target.len() {
            return Err(AlgebraError::Dimension("flattened variable count".into()));
        }
        for (f, x) in c.terms() {
            let mut g = e.to_vec();
            g.extend_from_slice(f);
            terms.push((g, x.clone()));
        }
    }
    Polynomial::from_terms(target.clone(), &sample, terms)
}

/// Multipliers {1, t} spanning 𝔽[t]/(t²) over 𝔽.
pub fn dual_number_multipliers(sample: &Gf) -> Vec<Polynomial<Gf>> {
    let vars = dual_number_vars();
    vec![Polynomial::constant(vars.clone(), sample.one_like()), Polynomial::variable(vars, t_index(), sample)]
}

/// The system with t set to 0.
pub fn at_t_zero(s: &QuadricSystem<Gf>) -> Result<QuadricSystem<Gf>, AlgebraError> {
    let vars = VarSet::new(Y_COORDS);
    let sample = *s.generators()[0].coeff_zero();
    let gens = s
        .generators()
        .iter()
        .map(|g| {
            let terms = g.terms().iter().filter(|(e, _)| e[t_index()] == 0).map(|(e, c)| (e[..7].to_vec(), *c));
            Polynomial::from_terms(vars.clone(), &sample, terms)
        })
        .collect::<Result<Vec<_>, _>>()?;
    QuadricSystem::new(7, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GfField;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn z() -> BigInt {
        BigInt::from(0)
    }

    fn pt(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn y_split_generators() {
        let y = y_split_ideal(&z());
        assert_eq!(y.len(), 5);
        assert_eq!(y.generators()[0].to_string(), "a0*a4 - a1*a3 + a2^2");
        let f2 = GfField::prime(2).unwrap();
        assert_eq!(y_split_ideal(&f2.zero()).generators()[0].to_string(), "a0*a4 + a1*a3 + a2^2");
        assert!(y.contains(&pt(&[0, 1, 0, 0, 0, 1, 0])).unwrap());
    }

    #[test]
    fn membership_examples() {
        let y = y_split_ideal(&z());
        let p = |v: &[i64]| ProjPoint::new(v.iter().map(|&x| BigRational::from_integer(x.into())).collect()).unwrap();
        let yq = y_split_ideal(&BigRational::from_integer(z()));
        assert!(membership(&p(&[0, 0, 0, 0, 0, 1, 0]), &yq).unwrap());
        assert!(membership(&p(&[1, 0, 0, 0, 0, 0, 0]), &yq).unwrap());
        assert!(!membership(&p(&[1, 1, 0, 0, 0, 0, 1]), &yq).unwrap());
        assert!(y.contains(&pt(&[0; 7])).is_err());
        assert!(ProjPoint::new(vec![BigRational::from_integer(z()); 3]).is_err());
    }

    #[test]
    fn split_section_reproduces_the_model() {
        let sec = grassmannian_section(&AlternatingNet::split(&z())).unwrap();
        assert_eq!(sec.surviving, SURVIVING_SPLIT);
        let rel: Vec<String> = sec.relations.iter().map(ToString::to_string).collect();
        assert_eq!(rel, ["-b25 + b34", "-b15 + b24", "-b14 + b23"]);
        let renamed = sec.system.rename(Y_COORDS).unwrap();
        assert_eq!(renamed, y_split_ideal(&z()));
    }

    #[test]
    fn zero_net_has_no_section() {
        assert!(grassmannian_section(&AlternatingNet::zero(&z())).is_err());
    }

    #[test]
    fn planes_lie_on_the_grassmannian() {
        let u = pt(&[1, 2, -3, 0, 5]);
        let v = pt(&[4, -1, 0, 7, 2]);
        let b = plucker_from_plane(&u, &v).unwrap();
        assert!(plucker_pfaffians(&z()).contains(&b).unwrap());
    }

    #[test]
    fn v10_map_lands_in_v10() {
        let f2 = GfField::prime(2).unwrap();
        let v = v10_ideal(&f2.zero()).unwrap();
        let p: Vec<Gf> = [0, 0, 0, 0, 0, 1, 0].iter().map(|&x| f2.int(x)).collect();
        let img = v10_quotient_map(&p).unwrap();
        assert_eq!(img, [0, 0, 0, 0, 0, 1, 0, 0].map(|x| f2.int(x)).to_vec());
        assert!(v.contains(&img).unwrap());
        assert!(v10_ideal(&z()).is_err());
    }

    #[test]
    fn deformation_routes_agree() {
        let f2 = GfField::prime(2).unwrap();
        let mult = dual_number_multipliers(&f2.zero());
        for (x, e) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let (xi, eta) = (f2.int(x), f2.int(e));
            let listed = deformed_ideal(xi, eta).unwrap();
            let rel = deformed_from_relations(xi, eta).unwrap();
            let net = deformed_from_net(xi, eta).unwrap();
            assert!(listed.same_span(&rel, &mult).unwrap(), "relations route at ({x},{e})");
            assert!(listed.same_span(&net, &mult).unwrap(), "net route at ({x},{e})");
            assert_eq!(at_t_zero(&listed).unwrap(), y_split_ideal(&f2.zero()));
        }
        let g2 = deformed_ideal(f2.one(), f2.zero()).unwrap().generators()[1].to_string();
        assert_eq!(g2, "a3*a4*t + a0*a5 + a1*a4 + a2*a3");
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn planes_satisfy_the_pfaffians(u in prop::collection::vec(-9i64..=9, 5), v in prop::collection::vec(-9i64..=9, 5)) {
            let b = plucker_from_plane(&pt(&u), &pt(&v)).unwrap();
            prop_assert!(plucker_pfaffians(&z()).contains(&b).unwrap());
        }
    }
}

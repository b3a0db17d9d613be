//! Symmetries of Y_spl: the stabilizer equations of the split form, the 7×7
//! representations σ (2 invertible) and σ′ (characteristic 2), the
//! characteristic-2 group G with its subgroups H ⊃ K, and quadric-span checks.

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{AlgebraError, Matrix, Polynomial, Ring, VarSet};
use crate::forms::TernarySymForm;
use crate::models::{coefficient_rows, in_quadric_span, QuadricSystem, Y_COORDS};

/// A monomial a^i b^j c^k d^l with rational coefficient.
#[derive(Clone, Debug, PartialEq)]
struct Term {
    num: i64,
    den: i64,
    exp: [u16; 4],
}

/// Parses "5/2 b c4 d + 5 a c3 d2" style entries; "0" is the empty sum.
fn parse_entry(s: &str) -> Vec<Term> {
    if s.trim() == "0" {
        return Vec::new();
    }
    s.split('+')
        .map(|t| {
            let mut num = 1;
            let mut den = 1;
            let mut exp = [0u16; 4];
            for tok in t.split_whitespace() {
                let first = tok.chars().next().expect("non-empty token");
                if first.is_ascii_digit() {
                    let (n, d) = tok.split_once('/').unwrap_or((tok, "1"));
                    num = n.parse().expect("numerator");
                    den = d.parse().expect("denominator");
                } else {
                    let v = "abcd".find(first).expect("variable a, b, c or d");
                    exp[v] += if tok.len() > 1 { tok[1..].parse::<u16>().expect("exponent") } else { 1 };
                }
            }
            Term { num, den, exp }
        })
        .collect()
}

// Row 6, column 3 carries the d making the entry homogeneous of degree 6.
const SIGMA_TABLE: [[&str; 7]; 7] = [
    ["a6", "2 a5 b", "10 a4 b2", "20 a3 b3", "20 a2 b4", "8 a b5", "8 b6"],
    [
        "3 a5 c",
        "5 a4 b c + a5 d",
        "20 a3 b2 c + 10 a4 b d",
        "30 a2 b3 c + 30 a3 b2 d",
        "20 a b4 c + 40 a2 b3 d",
        "4 b5 c + 20 a b4 d",
        "24 b5 d",
    ],
    [
        "3/2 a4 c2",
        "2 a3 b c2 + a4 c d",
        "6 a2 b2 c2 + 8 a3 b c d + a4 d2",
        "6 a b3 c2 + 18 a2 b2 c d + 6 a3 b d2",
        "2 b4 c2 + 16 a b3 c d + 12 a2 b2 d2",
        "4 b4 c d + 8 a b3 d2",
        "12 b4 d2",
    ],
    [
        "a3 c3",
        "a2 b c3 + a3 c2 d",
        "2 a b2 c3 + 6 a2 b c2 d + 2 a3 c d2",
        "b3 c3 + 9 a b2 c2 d + 9 a2 b c d2 + a3 d3",
        "4 b3 c2 d + 12 a b2 c d2 + 4 a2 b d3",
        "4 b3 c d2 + 4 a b2 d3",
        "8 b3 d3",
    ],
    [
        "3/4 a2 c4",
        "1/2 a b c4 + a2 c3 d",
        "1/2 b2 c4 + 4 a b c3 d + 3 a2 c2 d2",
        "3 b2 c3 d + 9 a b c2 d2 + 3 a2 c d3",
        "6 b2 c2 d2 + 8 a b c d3 + a2 d4",
        "4 b2 c d3 + 2 a b d4",
        "6 b2 d4",
    ],
    [
        "3/4 a c5",
        "1/4 b c5 + 5/4 a c4 d",
        "5/2 b c4 d + 5 a c3 d2",
        "15/2 b c3 d2 + 15/2 a c2 d3",
        "10 b c2 d3 + 5 a c d4",
        "5 b c d4 + a d5",
        "6 b d5",
    ],
    ["1/8 c6", "1/4 c5 d", "5/4 c4 d2", "5/2 c3 d3", "5/2 c2 d4", "c d5", "d6"],
];

const SIGMA_PRIME_TABLE: [[&str; 7]; 7] = [
    ["a3", "0", "a2 b", "0", "a b2", "0", "b3"],
    ["0", "a2", "0", "a b", "0", "b2", "0"],
    ["a2 c", "0", "a2 d", "0", "b2 c", "0", "b2 d"],
    ["0", "0", "0", "1", "0", "0", "0"],
    ["a c2", "0", "b c2", "0", "a d2", "0", "b d2"],
    ["0", "c2", "0", "c d", "0", "d2", "0"],
    ["c3", "0", "c2 d", "0", "c d2", "0", "d3"],
];

type Table = Vec<Vec<Vec<Term>>>;

fn parsed(table: &[[&str; 7]; 7]) -> Table {
    table.iter().map(|row| row.iter().map(|e| parse_entry(e)).collect()).collect()
}

fn sigma_table() -> &'static Table {
    static T: OnceLock<Table> = OnceLock::new();
    T.get_or_init(|| parsed(&SIGMA_TABLE))
}

fn sigma_prime_table() -> &'static Table {
    static T: OnceLock<Table> = OnceLock::new();
    T.get_or_init(|| parsed(&SIGMA_PRIME_TABLE))
}

/// Whether every σ coefficient has a denominator dividing 8.
pub fn sigma_denominators_divide_eight() -> bool {
    sigma_table().iter().flatten().flatten().all(|t| 8 % t.den == 0)
}

fn check_2x2<T: Ring>(g: &Matrix<T>) -> Result<[T; 4], AlgebraError> {
    if g.rows() != 2 || g.cols() != 2 {
        return Err(AlgebraError::Dimension("expected a 2×2 matrix".into()));
    }
    Ok([g[(0, 0)].clone(), g[(0, 1)].clone(), g[(1, 0)].clone(), g[(1, 1)].clone()])
}

fn evaluate_table<T: Ring>(table: &Table, v: &[T; 4], half: Option<&T>) -> Result<Matrix<T>, AlgebraError> {
    let z = v[0].zero_like();
    let mut out = Matrix::zeros(7, 7, &z);
    for (i, row) in table.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            let mut acc = z.clone();
            for t in entry {
                let mut x = z.int_like(t.num);
                if t.den != 1 {
                    let h = half.ok_or_else(|| AlgebraError::Precondition("2 is not invertible".into()))?;
                    x = x * &h.pow(t.den.trailing_zeros() as u64);
                }
                for (k, &e) in t.exp.iter().enumerate() {
                    if e > 0 {
                        x = x * &v[k].pow(e as u64);
                    }
                }
                acc = acc + &x;
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

/// σ(g) for g ∈ GL₂ over a ring where 2 is invertible.
pub fn sigma<T: Ring>(g: &Matrix<T>) -> Result<Matrix<T>, AlgebraError> {
    let v = check_2x2(g)?;
    let half = v[0]
        .int_like(2)
        .inverse()
        .ok_or_else(|| AlgebraError::Precondition("σ needs 2 invertible (characteristic 2 given)".into()))?;
    let det = g.det()?;
    if !det.is_unit() {
        return Err(AlgebraError::NotInvertible(format!("det g = {det}")));
    }
    evaluate_table(sigma_table(), &v, Some(&half))
}

/// σ′(g) for g ∈ SL₂ over a ring of characteristic 2.
pub fn sigma_prime<T: Ring>(g: &Matrix<T>) -> Result<Matrix<T>, AlgebraError> {
    let v = check_2x2(g)?;
    if v[0].characteristic() != 2 {
        return Err(AlgebraError::Precondition("σ′ needs characteristic 2".into()));
    }
    let det = g.det()?;
    if !det.is_one() {
        return Err(AlgebraError::Precondition(format!("σ′ needs det g = 1, got {det}")));
    }
    evaluate_table(sigma_prime_table(), &v, None)
}

/// The conic embedding PGL₂ → PGL₃: [[a², 2b², −2ab], [c²/2, d², −cd], [−ac, −2bd, ad+bc]].
pub fn embed_pgl2<T: Ring>(g: &Matrix<T>) -> Result<Matrix<T>, AlgebraError> {
    let [a, b, c, d] = check_2x2(g)?;
    let two = a.int_like(2);
    let half = two.inverse().ok_or_else(|| AlgebraError::Precondition("2 is not invertible".into()))?;
    Matrix::from_rows(vec![
        vec![a.clone() * &a, two.clone() * &b * &b, -(two.clone() * &a * &b)],
        vec![half * &c * &c, d.clone() * &d, -(c.clone() * &d)],
        vec![-(a.clone() * &c), -(two * &b * &d), a * &d + &(b * &c)],
    ])
}

/// blockdiag(g, 1).
pub fn embed_sl2_char2<T: Ring>(g: &Matrix<T>) -> Result<Matrix<T>, AlgebraError> {
    let [a, b, c, d] = check_2x2(g)?;
    let z = a.zero_like();
    let o = a.one_like();
    Matrix::from_rows(vec![vec![a, b, z.clone()], vec![c, d, z.clone()], vec![z.clone(), z, o]])
}

/// The five stabilizer equations of the split form in the entries of A
/// (rows and columns indexed α, β, γ).
pub fn stabilizer_equations<T: Ring>(a: &Matrix<T>) -> Result<Vec<T>, AlgebraError> {
    if a.rows() != 3 || a.cols() != 3 {
        return Err(AlgebraError::Dimension("expected a 3×3 matrix".into()));
    }
    let x = |i: usize, j: usize| a[(i, j)].clone();
    let two = a[(0, 0)].int_like(2);
    Ok(vec![
        x(0, 2) * &x(0, 2) - &(two.clone() * &x(0, 0) * &x(0, 1)),
        x(1, 2) * &x(1, 2) - &(two.clone() * &x(1, 0) * &x(1, 1)),
        x(0, 2) * &x(2, 2) - &(x(0, 0) * &x(2, 1)) - &(x(2, 0) * &x(0, 1)),
        x(1, 2) * &x(2, 2) - &(x(1, 0) * &x(2, 1)) - &(x(2, 0) * &x(1, 1)),
        x(0, 2) * &x(1, 2) - &(x(0, 0) * &x(1, 1)) - &(x(1, 0) * &x(0, 1)) + &(x(2, 2) * &x(2, 2))
            - &(two * &x(2, 0) * &x(2, 1)),
    ])
}

/// λ with `Aᵀ Q A = λ Q`, if any.
pub fn form_multiplier<T: Ring>(a: &Matrix<T>, q: &TernarySymForm<T>) -> Option<T> {
    let image = q.transform(a).ok()?;
    scalar_ratio(image.matrix(), q.matrix())
}

/// λ with `m = λ n`, read off at the first unit entry of n.
pub fn scalar_ratio<T: Ring>(m: &Matrix<T>, n: &Matrix<T>) -> Option<T> {
    if m.rows() != n.rows() || m.cols() != n.cols() {
        return None;
    }
    let k = n.entries().iter().position(Ring::is_unit)?;
    let lambda = m.entries()[k].clone() * &n.entries()[k].inverse()?;
    (n.scale(&lambda) == *m).then_some(lambda)
}

/// Whether `m = λ n` for a unit λ.
pub fn projectively_equal<T: Ring>(m: &Matrix<T>, n: &Matrix<T>) -> bool {
    scalar_ratio(m, n).is_some_and(|l| l.is_unit())
}

/// An element of G over a ring of characteristic 2 with f₁² = f₂² = 0 and
/// ad − bc = 1 + f₁f₂; its 3×3 matrix is
/// [[a, b, af₂+bf₁], [c, d, cf₂+df₁], [f₁, f₂, 1]].
#[derive(Clone, PartialEq)]
pub struct GElementChar2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub f1: T,
    pub f2: T,
}

impl<T: Ring> std::fmt::Debug for GElementChar2<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "G({}, {}, {}, {}; {}, {})", self.a, self.b, self.c, self.d, self.f1, self.f2)
    }
}

impl<T: Ring> GElementChar2<T> {
    pub fn e1(&self) -> T {
        self.a.clone() * &self.f2 + &(self.b.clone() * &self.f1)
    }

    pub fn e2(&self) -> T {
        self.c.clone() * &self.f2 + &(self.d.clone() * &self.f1)
    }

    pub fn matrix(&self) -> Matrix<T> {
        let one = self.a.one_like();
        Matrix::from_rows(vec![
            vec![self.a.clone(), self.b.clone(), self.e1()],
            vec![self.c.clone(), self.d.clone(), self.e2()],
            vec![self.f1.clone(), self.f2.clone(), one],
        ])
        .expect("3×3")
    }

    /// Reads an element off a 3×3 matrix, rescaling so the (γ, γ) entry is 1.
    pub fn from_matrix(m: &Matrix<T>) -> Result<Self, AlgebraError> {
        if m.rows() != 3 || m.cols() != 3 {
            return Err(AlgebraError::Dimension("expected a 3×3 matrix".into()));
        }
        let inv = m[(2, 2)].inverse().ok_or_else(|| AlgebraError::NotInvertible("(γ, γ) entry".into()))?;
        let n = m.scale(&inv);
        let el = g_char2_element(
            n[(0, 0)].clone(),
            n[(0, 1)].clone(),
            n[(1, 0)].clone(),
            n[(1, 1)].clone(),
            n[(2, 0)].clone(),
            n[(2, 1)].clone(),
        )?;
        if el.matrix() != n {
            return Err(AlgebraError::Precondition("matrix is not of the form of G".into()));
        }
        Ok(el)
    }

    /// The group law (matrix product, renormalized).
    pub fn compose(&self, other: &Self) -> Result<Self, AlgebraError> {
        Self::from_matrix(&self.matrix().try_mul(&other.matrix())?)
    }
}

/// Checks the relations of G.
pub fn g_char2_element<T: Ring>(a: T, b: T, c: T, d: T, f1: T, f2: T) -> Result<GElementChar2<T>, AlgebraError> {
    if a.characteristic() != 2 {
        return Err(AlgebraError::Precondition("G lives in characteristic 2".into()));
    }
    if !(f1.clone() * &f1).is_zero() || !(f2.clone() * &f2).is_zero() {
        return Err(AlgebraError::Precondition("f₁² = f₂² = 0 violated".into()));
    }
    let det = a.clone() * &d - &(b.clone() * &c);
    if det != a.one_like() + &(f1.clone() * &f2) {
        return Err(AlgebraError::Precondition("ad − bc = 1 + f₁f₂ violated".into()));
    }
    Ok(GElementChar2 { a, b, c, d, f1, f2 })
}

/// The σ′-shaped matrix plus the correction linear in e₁, e₂, f₁, f₂.
pub fn g_char2_action<T: Ring>(el: &GElementChar2<T>) -> Result<Matrix<T>, AlgebraError> {
    let GElementChar2 { a, b, c, d, f1, f2 } = el;
    let base = evaluate_table(sigma_prime_table(), &[a.clone(), b.clone(), c.clone(), d.clone()], None)?;
    let (e1, e2) = (el.e1(), el.e2());
    let z = a.zero_like();
    let m = |x: &T, y: &T| x.clone() * y;
    let (a2, b2, c2, d2, ab, cd) = (m(a, a), m(b, b), m(c, c), m(d, d), m(a, b), m(c, d));
    let corr = Matrix::from_rows(vec![
        vec![z.clone(), m(&a2, &e1), z.clone(), m(&ab, &e1), z.clone(), m(&b2, &e1), z.clone()],
        vec![m(&a2, f1), z.clone(), m(&a2, f2), z.clone(), m(&b2, f1), z.clone(), m(&b2, f2)],
        vec![z.clone(), m(&a2, &e2), z.clone(), e1.clone() + &m(&ab, &e2), z.clone(), m(&b2, &e2), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), m(f1, f2), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), m(&c2, &e1), z.clone(), m(&cd, &e1) + &e2, z.clone(), m(&d2, &e1), z.clone()],
        vec![m(&c2, f1), z.clone(), m(&c2, f2), z.clone(), m(&d2, f1), z.clone(), m(&d2, f2)],
        vec![z.clone(), m(&c2, &e2), z.clone(), m(&cd, &e2), z.clone(), m(&d2, &e2), z],
    ])?;
    base.try_add(&corr)
}

/// The H element [[1, f₁, f₂], [f₂, 1, f₁], [f₁, f₂, 1]], i.e. (a, b, c, d) = (1, f₁, f₂, 1).
pub fn h_element<T: Ring>(f1: T, f2: T) -> Result<GElementChar2<T>, AlgebraError> {
    let one = f1.one_like();
    g_char2_element(one.clone(), f1.clone(), f2.clone(), one, f1, f2)
}

/// The K element: the H element with f₁ = f₂ = f.
pub fn k_element<T: Ring>(f: T) -> Result<GElementChar2<T>, AlgebraError> {
    h_element(f.clone(), f)
}

/// The 7×7 action of the H element in its closed form.
pub fn h_action_matrix<T: Ring>(f1: &T, f2: &T) -> Matrix<T> {
    let z = f1.zero_like();
    let o = f1.one_like();
    let p = f1.clone() * f2;
    let (x, y) = (f1.clone(), f2.clone());
    Matrix::from_rows(vec![
        vec![o.clone(), y.clone(), x.clone(), p.clone(), z.clone(), z.clone(), z.clone()],
        vec![x.clone(), o.clone(), y.clone(), x.clone(), z.clone(), z.clone(), z.clone()],
        vec![y.clone(), x.clone(), o.clone(), y.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), o.clone() + &p, z.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), x.clone(), o.clone(), y.clone(), x.clone()],
        vec![z.clone(), z.clone(), z.clone(), y.clone(), x.clone(), o.clone(), y.clone()],
        vec![z.clone(), z.clone(), z.clone(), p, y, x, o],
    ])
    .expect("7×7")
}

/// `q(M x)` for each generator: the pullback of a quadric along x ↦ M x.
pub fn pullback<C: Ring>(
    q: &Polynomial<C>,
    m: &Matrix<Polynomial<C>>,
    coords: usize,
) -> Result<Polynomial<C>, AlgebraError> {
    let vars = q.vars().clone();
    let zero = q.coeff_zero().clone();
    let x: Vec<Polynomial<C>> = (0..vars.len()).map(|i| Polynomial::variable(vars.clone(), i, &zero)).collect();
    let mut images = x.clone();
    for i in 0..coords {
        let mut acc = Polynomial::zero(vars.clone(), zero.clone());
        for (j, xj) in x.iter().enumerate().take(coords) {
            if !m[(i, j)].is_zero() {
                acc = acc + &m[(i, j)].with_vars(&vars)?.try_mul(xj)?;
            }
        }
        images[i] = acc;
    }
    q.substitute(&images)
}

/// Whether `q(act·x)` lies in the span of the generators for every generator q.
pub fn preserves_quadric_span<C: Ring>(act: &Matrix<C>, s: &QuadricSystem<C>) -> Result<bool, AlgebraError> {
    if act.rows() != 7 || act.cols() != 7 || s.coords() != 7 || s.vars().len() != 7 {
        return Err(AlgebraError::Dimension("expected a 7×7 action on a system in 7 variables".into()));
    }
    let det = act.det()?;
    if !det.is_unit() {
        return Err(AlgebraError::NotInvertible("singular action matrix".into()));
    }
    let vars = s.vars().clone();
    let m = act.map(|c| Polynomial::constant(vars.clone(), c.clone()));
    for q in s.generators() {
        if !in_quadric_span(s.generators(), &pullback(q, &m, 7)?, &[])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// How an H-invariant candidate behaves under the H action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariance {
    Literal,
    ModuloModelSpan,
    NotFixed,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct InvariantQuadric {
    pub quadric: String,
    pub invariance: Invariance,
}

/// The variables a₀..a₆, f₁, f₂ with f₁² = f₂² = 0.
pub fn h_vars() -> Arc<VarSet> {
    VarSet::with_caps(
        Y_COORDS
            .iter()
            .map(|n| (n.to_string(), None))
            .chain([("f1".to_string(), Some(2)), ("f2".to_string(), Some(2))]),
    )
    .expect("distinct names")
}

/// Checks the quadrics a₀², a₁², a₃², a₄², a₅², a₆², a₁a₅ + a₀a₃ + a₃a₆ (and a₂²)
/// under the H action over 𝔽[f₁, f₂]/(f₁², f₂²), `sample` in a field of characteristic 2.
pub fn invariant_quadrics_h<C: Ring>(sample: &C) -> Result<Vec<InvariantQuadric>, AlgebraError> {
    if sample.characteristic() != 2 {
        return Err(AlgebraError::Precondition("H acts in characteristic 2".into()));
    }
    let vars = h_vars();
    let v = |i: usize| Polynomial::variable(vars.clone(), i, sample);
    let (f1, f2) = (v(7), v(8));
    let m = h_action_matrix(&f1, &f2);
    let mut candidates: Vec<Polynomial<C>> =
        [0, 1, 3, 4, 5, 6].iter().map(|&i| v(i).try_mul(&v(i))).collect::<Result<_, _>>()?;
    candidates.push(v(1) * &v(5) + &(v(0) * &v(3)) + &(v(3) * &v(6)));
    candidates.push(v(2) * &v(2));
    let y: Vec<Polynomial<C>> = crate::models::y_split_ideal(sample)
        .generators()
        .iter()
        .map(|g| g.with_vars(&vars))
        .collect::<Result<_, _>>()?;
    let one = Polynomial::constant(vars.clone(), sample.one_like());
    let multipliers = [one, f1.clone(), f2.clone(), f1.clone() * &f2];
    let mut out = Vec::new();
    for q in candidates {
        let image = pullback(&q, &m, 7)?;
        let diff = image.try_sub(&q)?;
        let invariance = if diff.is_zero() {
            Invariance::Literal
        } else if in_quadric_span(&y, &diff, &multipliers)? {
            Invariance::ModuloModelSpan
        } else {
            Invariance::NotFixed
        };
        out.push(InvariantQuadric { quadric: q.to_string(), invariance });
    }
    Ok(out)
}

/// Whether the coefficient vectors of `polys` are linearly independent.
pub fn independent<C: Ring>(polys: &[Polynomial<C>]) -> Result<bool, AlgebraError> {
    let rows = coefficient_rows(polys)?;
    Ok(crate::algebra::linalg::row_rank(&rows, polys[0].coeff_zero()) == polys.len())
}

/// A rational SL₂ element [[a, b], [c, (1 + bc)/a]] from integers a ≠ 0, b, c.
pub fn sl2_rational(a: i64, b: i64, c: i64) -> Result<Matrix<BigRational>, AlgebraError> {
    if a == 0 {
        return Err(AlgebraError::Precondition("a must be non-zero".into()));
    }
    let r = |n: i64| BigRational::from_integer(BigInt::from(n));
    let d = BigRational::new(BigInt::from(1 + b * c), BigInt::from(a));
    Matrix::from_rows(vec![vec![r(a), r(b)], vec![r(c), d]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Gf, GfField, PolyRing};
    use crate::models::y_split_ideal;
    use rand::{Rng as _, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn gf_mat(f: &'static GfField, rows: &[[u64; 2]; 2]) -> Matrix<Gf> {
        Matrix::from_fn(2, 2, |i, j| f.element(rows[i][j]).unwrap())
    }

    #[test]
    fn sigma_table_shape() {
        assert!(sigma_denominators_divide_eight());
        for (i, row) in sigma_table().iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                for t in e {
                    assert_eq!(t.exp.iter().sum::<u16>(), 6, "σ[{i}][{j}]");
                }
            }
        }
        assert_eq!(parse_entry("5/2 b c4 d + 5 a c3 d2")[0], Term { num: 5, den: 2, exp: [0, 1, 4, 1] });
    }

    #[test]
    fn sigma_of_identity_and_torus() {
        let id = Matrix::identity(2, &q(0));
        assert_eq!(sigma(&id).unwrap(), Matrix::identity(7, &q(0)));
        let g = Matrix::diagonal(&[q(2), q(3)]);
        let s = sigma(&g).unwrap();
        let x = [0, 1, 0, 0, 0, 1, 0].map(q).to_vec();
        let img = s.mul_vec(&x).unwrap();
        assert_eq!(img, vec![q(0), q(32 * 3), q(0), q(0), q(0), q(2 * 243), q(0)]);
        let f2 = GfField::prime(2).unwrap();
        assert!(sigma(&Matrix::identity(2, &f2.zero())).is_err());
    }

    #[test]
    fn sigma_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let y = y_split_ideal(&q(0));
        for _ in 0..10 {
            let mut draw = || loop {
                let a: i64 = rng.gen_range(-4..=4);
                if a != 0 {
                    return sl2_rational(a, rng.gen_range(-4..=4), rng.gen_range(-4..=4)).unwrap();
                }
            };
            let (g, h) = (draw(), draw());
            let gh = g.try_mul(&h).unwrap();
            let lhs = sigma(&g).unwrap().try_mul(&sigma(&h).unwrap()).unwrap();
            assert_eq!(lhs, sigma(&gh).unwrap());
            assert!(preserves_quadric_span(&sigma(&g).unwrap(), &y).unwrap());
        }
    }

    fn sl2(f: &'static GfField) -> Vec<Matrix<Gf>> {
        let els: Vec<Gf> = f.elements().collect();
        let mut out = Vec::new();
        for &a in &els {
            for &b in &els {
                for &c in &els {
                    for &d in &els {
                        if a * d - b * c == f.one() {
                            out.push(Matrix::from_rows(vec![vec![a, b], vec![c, d]]).unwrap());
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn sigma_prime_is_a_homomorphism_preserving_the_model() {
        for q in [2, 4] {
            let f = GfField::of_order(q).unwrap();
            let group = sl2(f);
            assert_eq!(group.len() as u64, q * (q * q - 1));
            let y = y_split_ideal(&f.zero());
            for g in &group {
                let sg = sigma_prime(g).unwrap();
                assert!(preserves_quadric_span(&sg, &y).unwrap());
                for h in &group {
                    let lhs = sg.try_mul(&sigma_prime(h).unwrap()).unwrap();
                    assert_eq!(lhs, sigma_prime(&g.try_mul(h).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn sigma_prime_fixture() {
        let f2 = GfField::prime(2).unwrap();
        let g = gf_mat(f2, &[[1, 1], [0, 1]]);
        let x: Vec<Gf> = [0, 0, 0, 0, 0, 1, 0].iter().map(|&v| f2.int(v)).collect();
        let img = sigma_prime(&g).unwrap().mul_vec(&x).unwrap();
        assert_eq!(img, [0, 1, 0, 0, 0, 1, 0].map(|v| f2.int(v)).to_vec());
        assert_eq!(sigma_prime(&Matrix::identity(2, &f2.zero())).unwrap(), Matrix::identity(7, &f2.zero()));
        let f4 = GfField::of_order(4).unwrap();
        let w = f4.generator();
        assert!(sigma_prime(&Matrix::diagonal(&[w, w])).is_err());
    }

    #[test]
    fn generic_matrix_breaks_the_span() {
        let f = GfField::prime(5).unwrap();
        let mut m = Matrix::identity(7, &f.zero());
        m[(0, 1)] = f.one();
        assert!(!preserves_quadric_span(&m, &y_split_ideal(&f.zero())).unwrap());
        assert!(preserves_quadric_span(&Matrix::zeros(7, 7, &f.zero()), &y_split_ideal(&f.zero())).is_err());
    }

    #[test]
    fn embeddings_satisfy_the_stabilizer_equations() {
        let r = PolyRing::new(VarSet::new(["a", "b", "c", "d"]), &q(0));
        let g = Matrix::from_rows(vec![vec![r.var("a"), r.var("b")], vec![r.var("c"), r.var("d")]]).unwrap();
        for e in stabilizer_equations(&embed_pgl2(&g).unwrap()).unwrap() {
            assert!(e.is_zero(), "{e}");
        }
        let f2 = GfField::prime(2).unwrap();
        let r2 = PolyRing::new(VarSet::new(["a", "b", "c", "d"]), &f2.zero());
        let g2 = Matrix::from_rows(vec![vec![r2.var("a"), r2.var("b")], vec![r2.var("c"), r2.var("d")]]).unwrap();
        // The last equation is ad − bc − 1, which vanishes on SL₂.
        let det_minus_one = g2.det().unwrap() - &r2.one();
        let eqs = stabilizer_equations(&embed_sl2_char2(&g2).unwrap()).unwrap();
        assert!(eqs[..4].iter().all(|e| e.is_zero()));
        assert_eq!(eqs[4], det_minus_one);
        assert!(stabilizer_equations(&Matrix::identity(3, &q(0))).unwrap().iter().all(|e| e.is_zero()));
    }

    /// Over 𝔽₃ every invertible A satisfies the equations iff AᵀQA = λQ.
    #[test]
    fn stabilizer_equations_match_form_preservation_over_f3() {
        let f = GfField::prime(3).unwrap();
        let qs = TernarySymForm::split(&f.zero());
        let els: Vec<Gf> = f.elements().collect();
        let mut stab = 0;
        for idx in 0..3u32.pow(9) {
            let mut k = idx;
            let a = Matrix::from_fn(3, 3, |_, _| {
                let v = els[(k % 3) as usize];
                k /= 3;
                v
            });
            if a.det().unwrap().is_zero() {
                continue;
            }
            let eq = stabilizer_equations(&a).unwrap().iter().all(|e| e.is_zero());
            let pres = form_multiplier(&a, &qs).is_some();
            assert_eq!(eq, pres, "{a:?}");
            stab += eq as usize;
        }
        // Scalars times the image of PGL₂(𝔽₃): 2 · 24.
        assert_eq!(stab, 48);
    }

    fn truncated(f: &'static GfField) -> PolyRing<Gf> {
        PolyRing::new(VarSet::with_caps([("e1", Some(2)), ("e2", Some(2))]).unwrap(), &f.zero())
    }

    #[test]
    fn g_action_reduces_to_sigma_prime_and_matches_h() {
        let f2 = GfField::prime(2).unwrap();
        let r = truncated(f2);
        let (e1, e2) = (r.var("e1"), r.var("e2"));
        let g = g_char2_element(r.one(), r.one(), r.zero(), r.one(), r.zero(), r.zero()).unwrap();
        let plain = gf_mat(f2, &[[1, 1], [0, 1]]).map(|x| r.constant(*x));
        assert_eq!(g_char2_action(&g).unwrap(), sigma_prime(&plain).unwrap());
        let h = h_element(e1.clone(), e2.clone()).unwrap();
        assert_eq!(g_char2_action(&h).unwrap(), h_action_matrix(&e1, &e2));
        assert!(g_char2_element(r.one(), r.zero(), r.zero(), r.one(), e1.clone(), e2.clone()).is_err());
    }

    #[test]
    fn k_elements_are_involutions() {
        let f2 = GfField::prime(2).unwrap();
        let r = truncated(f2);
        let k = k_element(r.var("e1")).unwrap();
        assert_eq!(k.matrix().try_mul(&k.matrix()).unwrap(), Matrix::identity(3, &r.zero()));
        let act = g_char2_action(&k).unwrap();
        assert!(projectively_equal(&act.try_mul(&act).unwrap(), &Matrix::identity(7, &r.zero())));
        assert_eq!(k.compose(&k).unwrap().matrix(), Matrix::identity(3, &r.zero()));
    }

    #[test]
    fn g_action_respects_the_group_law() {
        let f4 = GfField::of_order(4).unwrap();
        let r = truncated(f4);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let elements: Vec<Gf> = f4.elements().collect();
        let draw = |rng: &mut ChaCha8Rng| loop {
            let pick = |rng: &mut ChaCha8Rng| elements[rng.gen_range(0..4)];
            let (a, b, c) = (pick(rng), pick(rng), pick(rng));
            let (u, v) = (pick(rng), pick(rng));
            if a.is_zero() {
                continue;
            }
            let ainv = a.inverse().unwrap();
            let f1 = r.var("e1").scale(&u);
            let f2 = r.var("e2").scale(&v);
            let d = r.constant((f4.one() + b * c) * ainv) + &(f1.clone() * &f2).scale(&ainv);
            return g_char2_element(r.constant(a), r.constant(b), r.constant(c), d, f1, f2).unwrap();
        };
        for _ in 0..20 {
            let (g, h) = (draw(&mut rng), draw(&mut rng));
            let gh = g.compose(&h).unwrap();
            let lhs = g_char2_action(&g).unwrap().try_mul(&g_char2_action(&h).unwrap()).unwrap();
            assert!(projectively_equal(&lhs, &g_char2_action(&gh).unwrap()), "{g:?} {h:?}");
            assert!(preserves_quadric_span(
                &g_char2_action(&g).unwrap().map(|p| p.constant_term()),
                &y_split_ideal(&f4.zero())
            )
            .unwrap());
        }
    }

    #[test]
    fn h_invariants() {
        let f2 = GfField::prime(2).unwrap();
        let inv = invariant_quadrics_h(&f2.zero()).unwrap();
        let kinds: Vec<Invariance> = inv.iter().map(|i| i.invariance).collect();
        assert_eq!(&kinds[..6], &[Invariance::Literal; 6]);
        assert_eq!(kinds[6], Invariance::ModuloModelSpan);
        assert_eq!(kinds[7], Invariance::Literal);
    }
}

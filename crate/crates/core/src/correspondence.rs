//! The two directions between nets and ternary forms.
//!
//! Φ: the 6×5 Gram matrix M of Pfaffian conics, and Q_ν from its signed 5×5
//! minors. Ψ: five symmetric matrices P₁..P₅ spanning the monomial duals of
//! S²(α, β, γ) modulo Q, sent to `Alt(P_k Q⁻¹ P_l)`.
//!
//! The auxiliary matrices P′, Θ and Θ′ satisfy `adj(P′) = Q_ν` and `Θ′ = Θ(P′)`
//! identically; [`verify_master_symbolic`] and [`verify_master_randomized`] check this over ℤ in 30
//! indeterminates or at random points of a prime field.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::linalg::rank;
use crate::algebra::{AlgebraError, Budget, Gf, GfField, Matrix, PolyRing, Polynomial, Ring, Scalar, VarSet};
use crate::forms::{rank4_failure, AlternatingNet, BasisChange, TernarySymForm, RANK4_MAX_ORDER};

/// Row labels of the Gram matrix.
pub const GRAM_ROWS: [&str; 6] = ["α²", "βγ", "β²", "γα", "γ²", "αβ"];

/// Ψ's monomial order with signs: (position in Q, Gram row, sign).
const PSI_MONOMIALS: [((usize, usize), usize, i64); 6] =
    [((0, 0), 0, -1), ((2, 0), 3, 1), ((2, 2), 4, -1), ((0, 1), 5, -1), ((1, 2), 1, 1), ((1, 1), 2, -1)];

/// Column j holds the six coefficients of `Pf((xA+yB+zC)_j)` in [`GRAM_ROWS`] order.
pub fn gram_matrix<T: Ring>(net: &AlternatingNet<T>) -> Matrix<T> {
    let conics = net.pfaffian_conics();
    Matrix::from_fn(6, 5, |i, j| conics[j][i].clone())
}

/// Q_ν = [[|M₁|, −|M₆|, −|M₄|], [−|M₆|, |M₃|, −|M₂|], [−|M₄|, −|M₂|, |M₅|]], M_i = M without row i.
pub fn q_nu_budgeted<T: Ring>(m: &Matrix<T>, budget: &Budget) -> Result<Matrix<T>, AlgebraError> {
    let d = |i: usize| m.delete_row(i - 1).det_budgeted(budget);
    let (d1, d2, d3, d4, d5, d6) = (d(1)?, d(2)?, d(3)?, d(4)?, d(5)?, d(6)?);
    Matrix::from_rows(vec![vec![d1, -d6.clone(), -d4.clone()], vec![-d6, d3, -d2.clone()], vec![-d4, -d2, d5]])
}

/// The map Φ.
pub fn phi_from_net<T: Ring>(net: &AlternatingNet<T>) -> TernarySymForm<T> {
    let q = q_nu_budgeted(&gram_matrix(net), &Budget::unlimited()).expect("6×5 Gram matrix");
    TernarySymForm::new(q).expect("Q_ν is symmetric")
}

/// `β̃_j(X, X) = (−1)^{j−1} Pf(X_j)` (j from 1).
pub fn beta_square<T: Ring>(x: &Matrix<T>) -> Result<Vec<T>, AlgebraError> {
    beta_square_budgeted(x, &Budget::unlimited())
}

fn beta_square_budgeted<T: Ring>(x: &Matrix<T>, budget: &Budget) -> Result<Vec<T>, AlgebraError> {
    check_five(x)?;
    (0..5)
        .map(|j| {
            let p = x.principal_minor(j).pfaffian_budgeted(budget)?;
            Ok(if j % 2 == 0 { p } else { -p })
        })
        .collect()
}

/// `β̃_j(X, Y) = (−1)^{j−1} (Pf((X+Y)_j) − Pf(X_j) − Pf(Y_j))`.
pub fn beta_polar<T: Ring>(x: &Matrix<T>, y: &Matrix<T>) -> Result<Vec<T>, AlgebraError> {
    beta_polar_budgeted(x, y, &Budget::unlimited())
}

fn beta_polar_budgeted<T: Ring>(x: &Matrix<T>, y: &Matrix<T>, budget: &Budget) -> Result<Vec<T>, AlgebraError> {
    check_five(x)?;
    check_five(y)?;
    let s = x.try_add(y)?;
    (0..5)
        .map(|j| {
            let p = s.principal_minor(j).pfaffian_budgeted(budget)?
                - &x.principal_minor(j).pfaffian_budgeted(budget)?
                - &y.principal_minor(j).pfaffian_budgeted(budget)?;
            Ok(if j % 2 == 0 { p } else { -p })
        })
        .collect()
}

fn check_five<T: Ring>(x: &Matrix<T>) -> Result<(), AlgebraError> {
    if x.rows() != 5 || x.cols() != 5 {
        return Err(AlgebraError::Dimension("β̃ needs 5×5 matrices".into()));
    }
    if !x.is_alternating() {
        return Err(AlgebraError::NotAlternating);
    }
    Ok(())
}

/// `⟨ξ|X|η⟩ = Σ ξ_i x_ij η_j`.
pub fn trilinear<T: Ring>(xi: &[T], x: &Matrix<T>, eta: &[T]) -> Result<T, AlgebraError> {
    trilinear_budgeted(xi, x, eta, &Budget::unlimited())
}

fn trilinear_budgeted<T: Ring>(xi: &[T], x: &Matrix<T>, eta: &[T], budget: &Budget) -> Result<T, AlgebraError> {
    if xi.len() != x.rows() || eta.len() != x.cols() {
        return Err(AlgebraError::Dimension("trilinear form arguments".into()));
    }
    let mut acc = x[(0, 0)].zero_like();
    for i in 0..x.rows() {
        if xi[i].is_zero() {
            continue;
        }
        let mut row = x[(0, 0)].zero_like();
        for j in 0..x.cols() {
            if x[(i, j)].is_zero() || eta[j].is_zero() {
                continue;
            }
            row = row + &x[(i, j)].mul_budgeted(&eta[j], budget)?;
        }
        if !row.is_zero() {
            acc = acc + &xi[i].mul_budgeted(&row, budget)?;
        }
    }
    Ok(acc)
}

/// The symmetric matrix P′.
pub fn p_prime<T: Ring>(net: &AlternatingNet<T>) -> Matrix<T> {
    p_prime_budgeted(net, &Budget::unlimited()).expect("valid net")
}

pub fn p_prime_budgeted<T: Ring>(net: &AlternatingNet<T>, budget: &Budget) -> Result<Matrix<T>, AlgebraError> {
    let [a, b, c] = net.matrices();
    let aa = beta_square_budgeted(a, budget)?;
    let bb = beta_square_budgeted(b, budget)?;
    let cc = beta_square_budgeted(c, budget)?;
    let ab = beta_polar_budgeted(a, b, budget)?;
    let bc = beta_polar_budgeted(b, c, budget)?;
    let ca = beta_polar_budgeted(c, a, budget)?;
    let t = |xi: &[T], x: &Matrix<T>, eta: &[T]| trilinear_budgeted(xi, x, eta, budget);
    let p11 = t(&aa, c, &ab)?;
    let p12 = t(&aa, c, &bb)?;
    let p13 = t(&cc, b, &aa)?;
    // The middle matrix is A: this entry is the cyclic image of p₁₁ and p₃₃.
    let p22 = t(&bb, a, &bc)?;
    let p23 = t(&bb, a, &cc)?;
    let p33 = t(&cc, b, &ca)?;
    Matrix::from_rows(vec![vec![p11, p12.clone(), p13.clone()], vec![p12, p22, p23.clone()], vec![p13, p23, p33]])
}

/// Θ(p): 3×15, columns indexed by pairs (i, j), 1 ≤ i < j ≤ 6, in lexicographic order.
pub fn theta_of<T: Ring>(p: &Matrix<T>) -> Result<Matrix<T>, AlgebraError> {
    if !p.is_square() || p.rows() != 3 || !p.is_symmetric() {
        return Err(AlgebraError::Precondition("Θ needs a symmetric 3×3 matrix".into()));
    }
    let z = p[(0, 0)].zero_like();
    let e = |i: usize, j: usize, neg: bool| {
        let v = p[(i - 1, j - 1)].clone();
        if neg {
            -v
        } else {
            v
        }
    };
    let o = || z.clone();
    let rows = vec![
        vec![
            o(),
            o(),
            o(),
            o(),
            o(),
            e(2, 2, true),
            e(1, 3, false),
            e(3, 3, false),
            e(1, 2, true),
            e(1, 2, false),
            e(2, 3, false),
            o(),
            o(),
            e(1, 1, true),
            e(1, 3, true),
        ],
        vec![
            e(1, 2, true),
            o(),
            e(1, 1, true),
            e(1, 3, true),
            o(),
            o(),
            e(2, 3, false),
            o(),
            e(2, 2, false),
            o(),
            o(),
            o(),
            e(3, 3, true),
            e(1, 2, false),
            e(2, 3, false),
        ],
        vec![
            e(1, 3, false),
            e(1, 2, false),
            o(),
            o(),
            e(1, 1, false),
            o(),
            e(3, 3, true),
            o(),
            e(2, 3, true),
            e(2, 3, true),
            o(),
            e(2, 2, true),
            o(),
            e(1, 3, false),
            o(),
        ],
    ];
    Matrix::from_rows(rows)
}

/// The pairs (i, j), 0 ≤ i < j < n, in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Θ′: column (i, j) has, for X = A, B, C, the entry
/// `Σ_{k<l} (−1)^{k+l} (m_ik m_jl − m_il m_jk) X_kl` with M the Gram matrix.
pub fn theta_prime<T: Ring>(net: &AlternatingNet<T>) -> Matrix<T> {
    theta_prime_budgeted(net, &Budget::unlimited()).expect("valid net")
}

pub fn theta_prime_budgeted<T: Ring>(net: &AlternatingNet<T>, budget: &Budget) -> Result<Matrix<T>, AlgebraError> {
    let m = gram_matrix(net);
    let z = net.sample().zero_like();
    let cols = pairs(6);
    let kl = pairs(5);
    let mut out = Matrix::zeros(3, 15, &z);
    for (c, &(i, j)) in cols.iter().enumerate() {
        let mut minors = Vec::with_capacity(kl.len());
        for &(k, l) in &kl {
            let d = m[(i, k)].mul_budgeted(&m[(j, l)], budget)? - &m[(i, l)].mul_budgeted(&m[(j, k)], budget)?;
            minors.push(if (k + l) % 2 == 0 { d } else { -d });
        }
        for (r, x) in net.matrices().into_iter().enumerate() {
            let mut acc = z.clone();
            for (d, &(k, l)) in minors.iter().zip(&kl) {
                if d.is_zero() || x[(k, l)].is_zero() {
                    continue;
                }
                acc = acc + &d.mul_budgeted(&x[(k, l)], budget)?;
            }
            out[(r, c)] = acc;
        }
    }
    Ok(out)
}

/// The symmetric 3×3 matrix dual to a monomial of S²(α, β, γ): 1 at its position(s).
fn monomial_matrix<T: Ring>(pos: (usize, usize), sample: &T) -> Matrix<T> {
    let mut e = Matrix::zeros(3, 3, sample);
    e[pos] = sample.one_like();
    e[(pos.1, pos.0)] = sample.one_like();
    e
}

/// Five symmetric matrices forming a basis of the monomial duals modulo Q.
/// Drops the first monomial (in Ψ order) whose Q-coefficient is a unit; over ℤ
/// without such a coefficient, completes Q's coefficient vector to a basis by
/// Euclidean reduction.
pub fn psi_basis<T: Ring>(q: &TernarySymForm<T>) -> Result<Vec<Matrix<T>>, AlgebraError> {
    let qm = q.matrix();
    let sample = qm[(0, 0)].zero_like();
    let signed: Vec<Matrix<T>> =
        PSI_MONOMIALS.iter().map(|&(pos, _, s)| monomial_matrix(pos, &sample).scale(&sample.int_like(s))).collect();
    if let Some(drop) = PSI_MONOMIALS.iter().position(|&(pos, _, _)| qm[pos].is_unit()) {
        return Ok(signed.into_iter().enumerate().filter(|(k, _)| *k != drop).map(|(_, m)| m).collect());
    }
    // Invariant: Σ_k x_k b_k = (coefficients of Q in the signed basis).
    let mut x: Vec<T> = PSI_MONOMIALS.iter().map(|&(pos, _, s)| qm[pos].clone() * &sample.int_like(s)).collect();
    let mut b: Vec<Vec<T>> =
        (0..6).map(|k| (0..6).map(|m| if k == m { sample.one_like() } else { sample.zero_like() }).collect()).collect();
    let size =
        |v: &T| v.euclid_size().ok_or_else(|| AlgebraError::Precondition("coefficient ring is not Euclidean".into()));
    loop {
        let mut nz: Vec<usize> = (0..6).filter(|&k| !x[k].is_zero()).collect();
        if nz.is_empty() {
            return Err(AlgebraError::NotInvertible("zero form".into()));
        }
        let mut best = nz[0];
        for &k in &nz[1..] {
            if size(&x[k])? < size(&x[best])? {
                best = k;
            }
        }
        if nz.len() == 1 {
            if !x[best].is_unit() {
                return Err(AlgebraError::NotInvertible("form coefficients are not coprime".into()));
            }
            return Ok((0..6)
                .filter(|&k| k != best)
                .map(|k| {
                    (0..6).fold(Matrix::zeros(3, 3, &sample), |acc, m| {
                        acc.try_add(&signed[m].scale(&b[k][m])).expect("3×3")
                    })
                })
                .collect());
        }
        nz.retain(|&k| k != best);
        for k in nz {
            let (quo, rem) = x[k]
                .euclid_divrem(&x[best])
                .ok_or_else(|| AlgebraError::Precondition("coefficient ring is not Euclidean".into()))?;
            x[k] = rem;
            let bk = b[k].clone();
            for (dst, src) in b[best].iter_mut().zip(&bk) {
                *dst = dst.clone() + &(quo.clone() * src);
            }
        }
    }
}

/// The map Ψ: `(A_kl, B_kl, C_kl) = (Alt₂₃, Alt₃₁, Alt₁₂)` of `P_k Q⁻¹ P_l`, `Alt(M) = M − Mᵀ`.
pub fn net_from_form<T: Ring>(q: &TernarySymForm<T>) -> Result<AlternatingNet<T>, AlgebraError> {
    let qinv = q.matrix().inverse()?;
    let basis = psi_basis(q)?;
    let z = q.matrix()[(0, 0)].zero_like();
    let mut mats = [Matrix::zeros(5, 5, &z), Matrix::zeros(5, 5, &z), Matrix::zeros(5, 5, &z)];
    for k in 0..5 {
        for l in k + 1..5 {
            let m = basis[k].try_mul(&qinv)?.try_mul(&basis[l])?;
            let alt = |i: usize, j: usize| m[(i, j)].clone() - &m[(j, i)];
            for (x, v) in mats.iter_mut().zip([alt(1, 2), alt(2, 0), alt(0, 1)]) {
                x[(l, k)] = -v.clone();
                x[(k, l)] = v;
            }
        }
    }
    let [a, b, c] = mats;
    AlternatingNet::new(a, b, c)
}

/// Basis change `(U, F⁻¹·I)` with `Ψ(Φ(ν)) = (U, F⁻¹·I)·ν`, where F = det P′ and
/// `U_jk = s_k (−1)^j M[row(m_k), j]` over the five monomials kept by Ψ.
pub fn psi_phi_witness<T: Ring>(net: &AlternatingNet<T>) -> Result<BasisChange<T>, AlgebraError> {
    let q = phi_from_net(net);
    let f = p_prime(net).det()?;
    let finv = f.inverse().ok_or_else(|| AlgebraError::NotInvertible(format!("F = {f}")))?;
    let qm = q.matrix();
    let drop = PSI_MONOMIALS
        .iter()
        .position(|&(pos, _, _)| qm[pos].is_unit())
        .ok_or_else(|| AlgebraError::Precondition("Q_ν has no unit monomial coefficient".into()))?;
    let kept: Vec<_> = PSI_MONOMIALS.iter().enumerate().filter(|(k, _)| *k != drop).map(|(_, m)| *m).collect();
    let m = gram_matrix(net);
    let z = net.sample().zero_like();
    let u = Matrix::from_fn(5, 5, |j, k| {
        let (_, row, s) = kept[k];
        let v = m[(row, j)].clone() * &z.int_like(s);
        if j % 2 == 0 {
            v
        } else {
            -v
        }
    });
    BasisChange::new(u, Matrix::identity(3, &z).scale(&finv))
}

/// The thirty indeterminates a_ij, b_ij, c_ij (1 ≤ i < j ≤ 5).
pub fn generic_net() -> (PolyRing<BigInt>, AlternatingNet<Polynomial<BigInt>>) {
    let names: Vec<String> = ["a", "b", "c"]
        .iter()
        .flat_map(|x| pairs(5).into_iter().map(move |(i, j)| format!("{x}{}{}", i + 1, j + 1)))
        .collect();
    let ring = PolyRing::new(VarSet::new(names), &BigInt::from(0));
    let gens = ring.gens();
    let mat = |off: usize| {
        let upper: Vec<_> = pairs(5).into_iter().enumerate().map(|(k, (i, j))| (i, j, gens[off + k].clone())).collect();
        Matrix::alternating(5, &ring.zero(), &upper)
    };
    let net = AlternatingNet::new(mat(0), mat(10), mat(20)).expect("generic matrices are alternating");
    (ring, net)
}

/// Variable groups (a, b, c) of [`generic_net`].
pub fn generic_groups() -> Vec<Vec<usize>> {
    (0..3).map(|g| (10 * g..10 * g + 10).collect()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityMode {
    Symbolic,
    Randomized,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub mode: IdentityMode,
    pub checks: Vec<IdentityCheck>,
    /// Counterexample point (30 coordinates) in randomized mode.
    pub witness: Option<Vec<String>>,
    pub terms: BTreeMap<String, usize>,
    pub term_operations: u64,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> IdentityCheck {
    IdentityCheck { name: name.to_string(), passed, detail: detail.into() }
}

/// Symbolic `adj(P′) = Q_ν` over ℤ[a, b, c] with degree audits; the two
/// corollaries follow from it and are reported as such.
pub fn verify_master_symbolic(budget: &Budget) -> Result<IdentityReport, AlgebraError> {
    let (_, net) = generic_net();
    let groups = generic_groups();
    let pp = p_prime_budgeted(&net, budget)?;
    let q = q_nu_budgeted(&gram_matrix(&net), budget)?;
    let adj = pp.adjugate_budgeted(budget)?;
    let f = pp.det_budgeted(budget)?;
    let mut terms = BTreeMap::new();
    for i in 0..3 {
        for j in i..3 {
            terms.insert(format!("Q_nu[{}{}]", i + 1, j + 1), q[(i, j)].num_terms());
            terms.insert(format!("P'[{}{}]", i + 1, j + 1), pp[(i, j)].num_terms());
        }
    }
    terms.insert("F".into(), f.num_terms());
    let equal = adj == q;
    let q_deg = q.entries().iter().all(|e| e.is_homogeneous() && e.total_degree() == Some(10));
    let f_md = f.multidegree(&groups);
    let mut checks = vec![
        check("adjugate(P′) = Q_ν", equal, "entrywise polynomial equality over ZZ in 30 indeterminates"),
        check("P′ Q_ν = F E", equal, "follows from adjugate(P′) = Q_ν since P′ adj(P′) = det(P′) E"),
        check("det Q_ν = F²", equal, "follows from adjugate(P′) = Q_ν since det adj(P′) = det(P′)² for 3×3"),
        check("Q_ν entries homogeneous of degree 10", q_deg, ""),
        check("F multidegree (5,5,5)", f_md.as_deref() == Some(&[5, 5, 5][..]), format!("observed {:?}", f_md)),
    ];
    checks.push(check("F nonzero", !f.is_zero(), format!("{} terms", f.num_terms())));
    Ok(IdentityReport {
        identity: "master".into(),
        mode: IdentityMode::Symbolic,
        checks,
        witness: None,
        terms,
        term_operations: budget.used(),
    })
}

/// Symbolic `Θ′ = Θ(P′)` over ℤ[a, b, c].
pub fn verify_theta_symbolic(budget: &Budget) -> Result<IdentityReport, AlgebraError> {
    let (_, net) = generic_net();
    let pp = p_prime_budgeted(&net, budget)?;
    let lhs = theta_prime_budgeted(&net, budget)?;
    let rhs = theta_of(&pp)?;
    let mut terms = BTreeMap::new();
    terms.insert("Theta'".into(), lhs.entries().iter().map(Polynomial::num_terms).sum());
    let equal = lhs == rhs;
    let mismatches: Vec<String> = (0..3)
        .flat_map(|r| (0..15).map(move |c| (r, c)))
        .filter(|&(r, c)| lhs[(r, c)] != rhs[(r, c)])
        .map(|(r, c)| format!("({},{})", r + 1, c + 1))
        .collect();
    Ok(IdentityReport {
        identity: "theta".into(),
        mode: IdentityMode::Symbolic,
        checks: vec![check("Θ′ = Θ(P′)", equal, if equal { String::new() } else { mismatches.join(" ") })],
        witness: None,
        terms,
        term_operations: budget.used(),
    })
}

pub fn random_gf(f: &'static GfField, rng: &mut ChaCha8Rng) -> Gf {
    f.element(rng.gen_range(0..f.order())).expect("index below order")
}

/// A net with independent uniform entries above the diagonal.
pub fn random_net(f: &'static GfField, rng: &mut ChaCha8Rng) -> AlternatingNet<Gf> {
    let mut mat = || {
        let upper: Vec<_> = pairs(5).into_iter().map(|(i, j)| (i, j, random_gf(f, rng))).collect();
        Matrix::alternating(5, &f.zero(), &upper)
    };
    let (a, b, c) = (mat(), mat(), mat());
    AlternatingNet::new(a, b, c).expect("alternating by construction")
}

/// Default prime of the randomized mode.
pub const DEFAULT_PRIME: u64 = (1 << 31) - 1;

/// Degree bound used for the Schwartz–Zippel estimate of every identity entry.
pub const IDENTITY_DEGREE_BOUND: u64 = 30;

/// All identities at `samples` uniform points of 𝔽_p³⁰.
pub fn verify_master_randomized(samples: usize, prime: u64, seed: u64) -> Result<IdentityReport, AlgebraError> {
    if samples == 0 {
        return Err(AlgebraError::Precondition("sample count must be positive".into()));
    }
    let f = GfField::prime(prime)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fails: BTreeMap<&str, usize> = BTreeMap::new();
    let mut witness = None;
    let names = ["adjugate(P′) = Q_ν", "P′ Q_ν = F E", "det Q_ν = F²", "Θ′ = Θ(P′)"];
    for _ in 0..samples {
        let net = random_net(f, &mut rng);
        let pp = p_prime(&net);
        let q = phi_from_net(&net);
        let fv = pp.det()?;
        let results = [
            pp.adjugate()? == *q.matrix(),
            pp.try_mul(q.matrix())? == Matrix::identity(3, &f.zero()).scale(&fv),
            q.det() == fv * fv,
            theta_prime(&net) == theta_of(&pp)?,
        ];
        for (n, ok) in names.iter().zip(results) {
            if !ok {
                *fails.entry(n).or_default() += 1;
                if witness.is_none() {
                    let point = net
                        .matrices()
                        .iter()
                        .flat_map(|m| pairs(5).into_iter().map(|(i, j)| m[(i, j)].to_string()))
                        .collect();
                    witness = Some(point);
                }
            }
        }
    }
    let bound = format!(
        "{samples} samples over GF({prime}); a false identity of degree <= {IDENTITY_DEGREE_BOUND} survives one sample with probability <= {IDENTITY_DEGREE_BOUND}/{prime}"
    );
    let checks = names
        .iter()
        .map(|n| {
            let k = fails.get(n).copied().unwrap_or(0);
            check(n, k == 0, if k == 0 { bound.clone() } else { format!("{k} failing samples") })
        })
        .collect();
    Ok(IdentityReport {
        identity: "master".into(),
        mode: IdentityMode::Randomized,
        checks,
        witness,
        terms: BTreeMap::new(),
        term_operations: 0,
    })
}

/// Outcome of the rank-4 check on a net over any supported ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rank4Certificate {
    Certified,
    /// A point of ℙ² where the member has rank below 4.
    FailedAt([String; 3]),
    /// det Q_ν = 0 but no failing point was found among small coordinates.
    DegenerateForm,
}

impl Rank4Certificate {
    pub fn certified(&self) -> bool {
        *self == Rank4Certificate::Certified
    }
}

/// Over 𝔽_q with q ≤ 9 by exhaustive search over extensions; otherwise by
/// det Q_ν ≠ 0, with a search of points of height ≤ 3 to locate a failure.
pub fn certify_rank4(net: &AlternatingNet<Scalar>) -> Result<Rank4Certificate, AlgebraError> {
    let sample = net.sample().clone();
    if let Some(g) = sample.as_gf() {
        if g.field().order() <= RANK4_MAX_ORDER {
            let gnet = net.try_map(|x| x.as_gf().ok_or_else(|| AlgebraError::RingMismatch("mixed entries".into())))?;
            return Ok(match rank4_failure(&gnet)? {
                None => Rank4Certificate::Certified,
                Some(p) => Rank4Certificate::FailedAt(p.map(|x| x.to_string())),
            });
        }
    }
    if !phi_from_net(net).det().is_zero() {
        return Ok(Rank4Certificate::Certified);
    }
    // Integers are ranked over ℚ.
    let field_net = net.map(|x| match x {
        Scalar::Int(n) => Scalar::Rat(num_rational::BigRational::from_integer(n.clone())),
        other => other.clone(),
    });
    let fz = field_net.sample().clone();
    let small: Vec<i64> = (-3..=3).collect();
    let mut candidates: Vec<[i64; 3]> = small.iter().flat_map(|&y| small.iter().map(move |&w| [1, y, w])).collect();
    candidates.extend(small.iter().map(|&w| [0, 1, w]));
    candidates.push([0, 0, 1]);
    for [x, y, z] in candidates {
        let m = field_net.member(&fz.int_like(x), &fz.int_like(y), &fz.int_like(z));
        if rank(&m) < 4 {
            return Ok(Rank4Certificate::FailedAt([x, y, z].map(|v| v.to_string())));
        }
    }
    Ok(Rank4Certificate::DegenerateForm)
}

//! Nets of quinary alternating forms and ternary symmetric bilinear forms.
//!
//! A net is a triple (A, B, C) of 5×5 alternating matrices read as
//! `e_i ∧ e_j ↦ A_ij·α + B_ij·β + C_ij·γ`. A ternary form is a symmetric 3×3
//! matrix in the ordered basis (α, β, γ).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::algebra::{AlgebraError, Embedding, Gf, GfField, Matrix, PolyRing, Ring, VarSet};

/// Order of the six coefficients of a Pfaffian conic: x², yz, y², zx, z², xy.
pub const CONIC_MONOMIALS: [&str; 6] = ["x^2", "yz", "y^2", "zx", "z^2", "xy"];

#[derive(Clone, PartialEq)]
pub struct AlternatingNet<T> {
    a: Matrix<T>,
    b: Matrix<T>,
    c: Matrix<T>,
}

impl<T: Ring> AlternatingNet<T> {
    pub fn new(a: Matrix<T>, b: Matrix<T>, c: Matrix<T>) -> Result<Self, AlgebraError> {
        for (name, m) in [("A", &a), ("B", &b), ("C", &c)] {
            if m.rows() != 5 || m.cols() != 5 {
                return Err(AlgebraError::Dimension(format!("{name} is {}×{}, expected 5×5", m.rows(), m.cols())));
            }
            if !m.is_alternating() {
                return Err(AlgebraError::NotAlternating);
            }
        }
        Ok(AlternatingNet { a, b, c })
    }

    /// A₂₅ = −1, A₃₄ = 1, B₁₄ = −1, B₂₃ = 1, C₁₅ = −1, C₂₄ = 1.
    pub fn split(sample: &T) -> Self {
        let one = sample.one_like();
        let m = |e: &[(usize, usize, i64)]| {
            let upper: Vec<_> = e.iter().map(|&(i, j, v)| (i - 1, j - 1, one.int_like(v))).collect();
            Matrix::alternating(5, sample, &upper)
        };
        AlternatingNet {
            a: m(&[(2, 5, -1), (3, 4, 1)]),
            b: m(&[(1, 4, -1), (2, 3, 1)]),
            c: m(&[(1, 5, -1), (2, 4, 1)]),
        }
    }

    pub fn zero(sample: &T) -> Self {
        let z = Matrix::zeros(5, 5, sample);
        AlternatingNet { a: z.clone(), b: z.clone(), c: z }
    }

    pub fn a(&self) -> &Matrix<T> {
        &self.a
    }
    pub fn b(&self) -> &Matrix<T> {
        &self.b
    }
    pub fn c(&self) -> &Matrix<T> {
        &self.c
    }
    pub fn matrices(&self) -> [&Matrix<T>; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn sample(&self) -> &T {
        &self.a.entries()[0]
    }

    /// The member `xA + yB + zC`.
    pub fn member(&self, x: &T, y: &T, z: &T) -> Matrix<T> {
        Matrix::from_fn(5, 5, |i, j| {
            self.a[(i, j)].clone() * x + &(self.b[(i, j)].clone() * y) + &(self.c[(i, j)].clone() * z)
        })
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> AlternatingNet<U> {
        AlternatingNet { a: self.a.map(&f), b: self.b.map(&f), c: self.c.map(&f) }
    }

    pub fn try_map<U: Ring, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<AlternatingNet<U>, E> {
        Ok(AlternatingNet { a: self.a.try_map(&f)?, b: self.b.try_map(&f)?, c: self.c.try_map(&f)? })
    }

    /// Coefficients of the five conics `Pf((xA+yB+zC)_j)` (row and column j deleted),
    /// each in the order of [`CONIC_MONOMIALS`].
    pub fn pfaffian_conics(&self) -> Vec<[T; 6]> {
        (0..5)
            .map(|j| {
                let (a, b, c) = (self.a.principal_minor(j), self.b.principal_minor(j), self.c.principal_minor(j));
                let pf = |m: &Matrix<T>| m.pfaffian().expect("principal minors of alternating matrices");
                let (pa, pb, pc) = (pf(&a), pf(&b), pf(&c));
                let polar =
                    |x: &Matrix<T>, y: &Matrix<T>, px: &T, py: &T| pf(&x.try_add(y).expect("same shape")) - px - py;
                [
                    pa.clone(),
                    polar(&b, &c, &pb, &pc),
                    pb.clone(),
                    polar(&c, &a, &pc, &pa),
                    pc.clone(),
                    polar(&a, &b, &pa, &pb),
                ]
            })
            .collect()
    }
}

/// Value of a conic with coefficients in [`CONIC_MONOMIALS`] order.
pub fn eval_conic<T: Ring>(k: &[T; 6], x: &T, y: &T, z: &T) -> T {
    k[0].clone() * x * x
        + &(k[1].clone() * y * z)
        + &(k[2].clone() * y * y)
        + &(k[3].clone() * z * x)
        + &(k[4].clone() * z * z)
        + &(k[5].clone() * x * y)
}

#[derive(Clone, PartialEq)]
pub struct TernarySymForm<T> {
    q: Matrix<T>,
}

impl<T: Ring> TernarySymForm<T> {
    pub fn new(q: Matrix<T>) -> Result<Self, AlgebraError> {
        if q.rows() != 3 || q.cols() != 3 {
            return Err(AlgebraError::Dimension(format!("form is {}×{}, expected 3×3", q.rows(), q.cols())));
        }
        if !q.is_symmetric() {
            return Err(AlgebraError::Precondition("form matrix is not symmetric".into()));
        }
        Ok(TernarySymForm { q })
    }

    /// `[[0,−1,0],[−1,0,0],[0,0,1]]`.
    pub fn split(sample: &T) -> Self {
        let z = sample.zero_like();
        let m = -sample.one_like();
        let q = Matrix::from_rows(vec![
            vec![z.clone(), m.clone(), z.clone()],
            vec![m, z.clone(), z.clone()],
            vec![z.clone(), z, sample.one_like()],
        ])
        .expect("3×3");
        TernarySymForm { q }
    }

    pub fn diagonal(d: [T; 3]) -> Self {
        TernarySymForm { q: Matrix::diagonal(&d) }
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.q
    }

    pub fn det(&self) -> T {
        self.q.det().expect("3×3")
    }

    /// Non-degenerate: determinant is a unit.
    pub fn is_nondegenerate(&self) -> bool {
        self.det().is_unit()
    }

    pub fn scale(&self, c: &T) -> Self {
        TernarySymForm { q: self.q.scale(c) }
    }

    /// `Tᵀ Q T`.
    pub fn transform(&self, t: &Matrix<T>) -> Result<Self, AlgebraError> {
        let q = t.transpose().try_mul(&self.q)?.try_mul(t)?;
        TernarySymForm::new(q)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> TernarySymForm<U> {
        TernarySymForm { q: self.q.map(f) }
    }

    pub fn try_map<U: Ring, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<TernarySymForm<U>, E> {
        Ok(TernarySymForm { q: self.q.try_map(f)? })
    }
}

/// A pair (U on the quinary side, W on the (α, β, γ) coordinates).
#[derive(Clone, PartialEq)]
pub struct BasisChange<T> {
    u: Matrix<T>,
    w: Matrix<T>,
}

impl<T: Ring> BasisChange<T> {
    pub fn new(u: Matrix<T>, w: Matrix<T>) -> Result<Self, AlgebraError> {
        if (u.rows(), u.cols(), w.rows(), w.cols()) != (5, 5, 3, 3) {
            return Err(AlgebraError::Dimension("basis change needs a 5×5 U and a 3×3 W".into()));
        }
        for (name, m) in [("U", &u), ("W", &w)] {
            let d = m.det()?;
            if !d.is_unit() {
                return Err(AlgebraError::NotInvertible(format!("det {name} = {d}")));
            }
        }
        Ok(BasisChange { u, w })
    }

    pub fn identity(sample: &T) -> Self {
        BasisChange { u: Matrix::identity(5, sample), w: Matrix::identity(3, sample) }
    }

    pub fn u(&self) -> &Matrix<T> {
        &self.u
    }
    pub fn w(&self) -> &Matrix<T> {
        &self.w
    }

    /// The change acting as `self` first, then `next`.
    pub fn then(&self, next: &BasisChange<T>) -> BasisChange<T> {
        BasisChange { u: self.u.try_mul(&next.u).expect("5×5"), w: next.w.try_mul(&self.w).expect("3×3") }
    }
}

/// `X ↦ Uᵀ X U` on each matrix, then `(A′, B′, C′) = W·(A, B, C)`.
pub fn apply_basis_change<T: Ring>(
    net: &AlternatingNet<T>,
    g: &BasisChange<T>,
) -> Result<AlternatingNet<T>, AlgebraError> {
    let ut = g.u.transpose();
    let conj = |x: &Matrix<T>| ut.try_mul(x).and_then(|m| m.try_mul(&g.u));
    let xs = [conj(&net.a)?, conj(&net.b)?, conj(&net.c)?];
    let mix = |r: usize| {
        Matrix::from_fn(5, 5, |i, j| {
            (0..3).fold(net.sample().zero_like(), |acc, k| acc + &(g.w[(r, k)].clone() * &xs[k][(i, j)]))
        })
    };
    AlternatingNet::new(mix(0), mix(1), mix(2))
}

/// Projective points of ℙ²(F) in normal form (first non-zero coordinate 1), in a fixed order.
pub fn plane_points(f: &'static GfField) -> impl Iterator<Item = [Gf; 3]> {
    let (z, o) = (f.zero(), f.one());
    let a = f.elements().flat_map(move |y| f.elements().map(move |w| [o, y, w]));
    let b = f.elements().map(move |w| [z, o, w]);
    a.chain(b).chain(std::iter::once([z, z, o]))
}

/// Largest field order accepted by the exhaustive rank-4 certificate.
pub const RANK4_MAX_ORDER: u64 = 9;

/// First point of ℙ²(𝔽_{q^k}), k ≤ 4, where the member of the net has rank below 4;
/// `None` certifies rank 4 everywhere. A common zero of the five Pfaffian
/// conics over the closure has degree ≤ 4, so these extensions suffice.
pub fn rank4_failure(net: &AlternatingNet<Gf>) -> Result<Option<[Gf; 3]>, AlgebraError> {
    let f = net.sample().field();
    if f.order() > RANK4_MAX_ORDER {
        return Err(AlgebraError::Precondition(format!(
            "exhaustive rank-4 certification supports q ≤ {RANK4_MAX_ORDER}, got {}",
            f.order()
        )));
    }
    let conics = net.pfaffian_conics();
    for k in [1u32, 3, 4] {
        let emb = Embedding::extension(f, k)?;
        let ext: Vec<[Gf; 6]> = conics.iter().map(|c| c.map(|x| emb.apply(&x))).collect();
        for [x, y, z] in plane_points(emb.target()) {
            if ext.iter().all(|c| eval_conic(c, &x, &y, &z).is_zero()) {
                return Ok(Some([x, y, z]));
            }
        }
    }
    Ok(None)
}

pub fn is_rank4_net(net: &AlternatingNet<Gf>) -> Result<bool, AlgebraError> {
    Ok(rank4_failure(net)?.is_none())
}

/// Largest field order accepted by [`similar_forms`].
pub const SIMILARITY_MAX_ORDER: u64 = 9;

/// A witness `(T, λ)` with `Tᵀ Q₁ T = λ Q₂`, T invertible, λ a unit; the first
/// in the order λ, then the columns of T, each by element index.
pub fn similar_forms(
    q1: &TernarySymForm<Gf>,
    q2: &TernarySymForm<Gf>,
) -> Result<Option<(Matrix<Gf>, Gf)>, AlgebraError> {
    let f = q1.q.entries()[0].field();
    if f.order() > SIMILARITY_MAX_ORDER {
        return Err(AlgebraError::Precondition(format!(
            "exhaustive similarity search supports q ≤ {SIMILARITY_MAX_ORDER}, got {}",
            f.order()
        )));
    }
    let vectors: Vec<[Gf; 3]> = f
        .elements()
        .flat_map(|a| f.elements().flat_map(move |b| f.elements().map(move |c| [a, b, c])))
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    let q1v: Vec<[Gf; 3]> = vectors
        .iter()
        .map(|v| {
            let w = q1.q.mul_vec(v).expect("3×3");
            [w[0], w[1], w[2]]
        })
        .collect();
    let dot = |a: &[Gf; 3], b: &[Gf; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let target = |i: usize, j: usize, l: &Gf| *l * q2.q[(i, j)];
    for lam in f.elements().filter(|x| !x.is_zero()) {
        let c1: Vec<usize> = (0..vectors.len()).filter(|&i| dot(&vectors[i], &q1v[i]) == target(0, 0, &lam)).collect();
        for &i in &c1 {
            for j in 0..vectors.len() {
                if dot(&vectors[j], &q1v[i]) != target(0, 1, &lam) || dot(&vectors[j], &q1v[j]) != target(1, 1, &lam) {
                    continue;
                }
                for k in 0..vectors.len() {
                    if dot(&vectors[k], &q1v[i]) != target(0, 2, &lam)
                        || dot(&vectors[k], &q1v[j]) != target(1, 2, &lam)
                        || dot(&vectors[k], &q1v[k]) != target(2, 2, &lam)
                    {
                        continue;
                    }
                    let t = Matrix::from_fn(3, 3, |r, c| [vectors[i], vectors[j], vectors[k]][c][r]);
                    if !t.det().expect("3×3").is_zero() {
                        return Ok(Some((t, lam)));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Numbers of positive and negative eigenvalues of a non-degenerate rational
/// symmetric matrix, by Descartes' rule on the characteristic polynomial
/// (exact because every root is real).
pub fn signature_pair(q: &Matrix<BigRational>) -> Result<(usize, usize), AlgebraError> {
    if !q.is_square() || !q.is_symmetric() {
        return Err(AlgebraError::Precondition("signature needs a symmetric matrix".into()));
    }
    let n = q.rows();
    let zero = BigRational::zero();
    let ring = PolyRing::new(VarSet::new(["x"]), &zero);
    let x = ring.var("x");
    let m = Matrix::from_fn(n, n, |i, j| {
        let c = ring.constant(-q[(i, j)].clone());
        if i == j {
            c + &x
        } else {
            c
        }
    });
    let chi = m.det()?;
    let coeffs: Vec<BigRational> = (0..=n).map(|d| chi.coefficient(&[d as u16])).collect();
    if Ring::is_zero(&coeffs[0]) {
        return Err(AlgebraError::NotInvertible("degenerate form".into()));
    }
    let changes = |cs: &[BigRational]| {
        let signs: Vec<bool> = cs.iter().filter(|c| !Ring::is_zero(*c)).map(|c| c.is_positive()).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let pos = changes(&coeffs);
    let flipped: Vec<BigRational> =
        coeffs.iter().enumerate().map(|(d, c)| if d % 2 == 1 { -c.clone() } else { c.clone() }).collect();
    Ok((pos, changes(&flipped)))
}

/// Integer matrix as a rational one.
pub fn to_rational(m: &Matrix<BigInt>) -> Matrix<BigRational> {
    m.map(|x| BigRational::from_integer(x.clone()))
}

impl<T: Ring> std::fmt::Debug for AlternatingNet<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AlternatingNet").field("a", &self.a).field("b", &self.b).field("c", &self.c).finish()
    }
}

impl<T: Ring> std::fmt::Debug for TernarySymForm<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("TernarySymForm").field(&self.q).finish()
    }
}

impl<T: Ring> std::fmt::Debug for BasisChange<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BasisChange").field("u", &self.u).field("w", &self.w).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zq(rows: [[i64; 3]; 3]) -> Matrix<BigRational> {
        Matrix::from_fn(3, 3, |i, j| BigRational::from_integer(rows[i][j].into()))
    }

    #[test]
    fn split_net_entries() {
        let n = AlternatingNet::split(&BigInt::from(0));
        assert_eq!(n.a()[(1, 4)], BigInt::from(-1));
        assert_eq!(n.a()[(2, 3)], BigInt::from(1));
        assert_eq!(n.b()[(0, 3)], BigInt::from(-1));
        assert_eq!(n.b()[(1, 2)], BigInt::from(1));
        assert_eq!(n.c()[(0, 4)], BigInt::from(-1));
        assert_eq!(n.c()[(1, 3)], BigInt::from(1));
        assert_eq!(n.a()[(4, 1)], BigInt::from(1));
    }

    #[test]
    fn split_form_mod_two() {
        let f2 = GfField::prime(2).unwrap();
        let q = TernarySymForm::split(&f2.zero());
        assert_eq!(q.matrix()[(0, 1)], f2.one());
        assert_eq!(q.matrix()[(2, 2)], f2.one());
        assert!(q.is_nondegenerate());
    }

    #[test]
    fn non_alternating_net_is_rejected() {
        let z = BigInt::from(0);
        let mut a = Matrix::zeros(5, 5, &z);
        a[(0, 0)] = BigInt::from(1);
        assert_eq!(
            AlternatingNet::new(a, Matrix::zeros(5, 5, &z), Matrix::zeros(5, 5, &z)),
            Err(AlgebraError::NotAlternating)
        );
    }

    #[test]
    fn rank4_certificates() {
        for p in [2, 3] {
            let f = GfField::prime(p).unwrap();
            assert!(is_rank4_net(&AlternatingNet::split(&f.zero())).unwrap());
        }
        let f3 = GfField::prime(3).unwrap();
        let s = AlternatingNet::split(&f3.zero());
        let bad = AlternatingNet::new(s.a().clone(), s.b().clone(), Matrix::zeros(5, 5, &f3.zero())).unwrap();
        let w = rank4_failure(&bad).unwrap().unwrap();
        assert_eq!(w, [f3.zero(), f3.zero(), f3.one()]);
    }

    #[test]
    fn swapping_alpha_and_beta() {
        let z = BigInt::from(0);
        let n = AlternatingNet::split(&z);
        let w = Matrix::from_fn(3, 3, |i, j| BigInt::from(i64::from([(0, 1), (1, 0), (2, 2)].contains(&(i, j)))));
        let g = BasisChange::new(Matrix::identity(5, &z), w).unwrap();
        let m = apply_basis_change(&n, &g).unwrap();
        assert_eq!((m.a(), m.b(), m.c()), (n.b(), n.a(), n.c()));
        assert_eq!(apply_basis_change(&n, &BasisChange::identity(&z)).unwrap(), n);
    }

    #[test]
    fn similarity_examples() {
        let f3 = GfField::prime(3).unwrap();
        let s = TernarySymForm::split(&f3.zero());
        let (t, l) = similar_forms(&s, &s).unwrap().unwrap();
        assert_eq!(s.transform(&t).unwrap(), s.scale(&l));
        let id = TernarySymForm::diagonal([f3.one(), f3.one(), f3.one()]);
        assert!(similar_forms(&id, &s).unwrap().is_some());
        let f5 = GfField::prime(5).unwrap();
        let s5 = TernarySymForm::split(&f5.zero());
        let (t, l) = similar_forms(&s5, &s5.scale(&f5.int(2))).unwrap().unwrap();
        assert_eq!(s5.transform(&t).unwrap(), s5.scale(&f5.int(2)).scale(&l));
        let f11 = GfField::prime(11).unwrap();
        assert!(similar_forms(&TernarySymForm::split(&f11.zero()), &TernarySymForm::split(&f11.zero())).is_err());
    }

    #[test]
    fn signatures() {
        assert_eq!(signature_pair(&zq([[1, 0, 0], [0, 1, 0], [0, 0, 1]])).unwrap(), (3, 0));
        assert_eq!(signature_pair(&zq([[0, -1, 0], [-1, 0, 0], [0, 0, 1]])).unwrap(), (2, 1));
        assert_eq!(signature_pair(&zq([[-1, 0, 0], [0, -1, 0], [0, 0, -1]])).unwrap(), (0, 3));
        assert!(signature_pair(&zq([[1, 1, 0], [1, 1, 0], [0, 0, 1]])).is_err());
    }
}

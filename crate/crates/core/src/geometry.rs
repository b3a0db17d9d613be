//! Lines and orbits on Y_spl: the line l_P attached to a point P of ℙ²,
//! the projected Veronese surface and its trisecants, orbit labels, the
//! normalizations ν and ν′, line searches through a point, and censuses over
//! small finite fields.
//!
//! Points of Y_spl use the coordinates a₀..a₆ = (b12, b13, b14, b15, b25, b35, b45).

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::linalg::{kernel, rank};
use crate::algebra::{AlgebraError, Embedding, Gf, GfField, Matrix, Polynomial, Ring, VarSet};
use crate::correspondence::pairs;
use crate::forms::{plane_points, AlternatingNet};
use crate::group_actions::{embed_pgl2, embed_sl2_char2};
use crate::models::{grassmannian_section, plucker_from_plane, y_split_ideal, ProjPoint};

/// Largest field order for which [`census`] runs the line and trisecant checks.
pub const LINE_CHECK_MAX_ORDER: u64 = 5;

/// Largest field order accepted by [`census`].
pub const CENSUS_MAX_ORDER: u64 = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LineType {
    Ordinary,
    Special,
    Exceptional,
}

impl fmt::Display for LineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LineType::Ordinary => "ordinary",
            LineType::Special => "special",
            LineType::Exceptional => "exceptional",
        })
    }
}

/// Orbits of the automorphism group on Y_spl; `O1Prime` only in characteristic 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum OrbitLabel {
    O3,
    O2,
    O1,
    O1Prime,
}

impl OrbitLabel {
    /// Labels occurring in characteristic `p`.
    pub fn all(p: u64) -> Vec<OrbitLabel> {
        if p == 2 {
            vec![OrbitLabel::O3, OrbitLabel::O2, OrbitLabel::O1, OrbitLabel::O1Prime]
        } else {
            vec![OrbitLabel::O3, OrbitLabel::O2, OrbitLabel::O1]
        }
    }

    /// Types of the lines through a point of the orbit, sorted.
    pub fn expected_lines(&self) -> Vec<LineType> {
        match self {
            OrbitLabel::O3 => vec![LineType::Ordinary; 3],
            OrbitLabel::O2 => vec![LineType::Ordinary, LineType::Special],
            OrbitLabel::O1 => vec![LineType::Special],
            OrbitLabel::O1Prime => vec![LineType::Special, LineType::Exceptional],
        }
    }

    /// (multiplicity, type of the line indexed by the intersection point), sorted.
    pub fn expected_trisecant_profile(&self) -> Vec<(u32, LineType)> {
        match self {
            OrbitLabel::O3 => vec![(1, LineType::Ordinary); 3],
            OrbitLabel::O2 => vec![(1, LineType::Ordinary), (2, LineType::Special)],
            OrbitLabel::O1 => vec![(3, LineType::Special)],
            OrbitLabel::O1Prime => vec![(1, LineType::Exceptional), (2, LineType::Special)],
        }
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitLabel::O3 => "O3",
            OrbitLabel::O2 => "O2",
            OrbitLabel::O1 => "O1",
            OrbitLabel::O1Prime => "O1'",
        })
    }
}

/// A line on Y_spl spanned by two points of ℙ⁶.
#[derive(Clone, Debug, PartialEq)]
pub struct LineInY<T> {
    points: [ProjPoint<T>; 2],
    kind: LineType,
}

impl<T: Ring> LineInY<T> {
    pub fn new(p: Vec<T>, q: Vec<T>, kind: LineType) -> Result<Self, AlgebraError> {
        if p.len() != 7 || q.len() != 7 {
            return Err(AlgebraError::Dimension("line points need 7 coordinates".into()));
        }
        let m = Matrix::from_rows(vec![p.clone(), q.clone()])?;
        if rank(&m) != 2 {
            return Err(AlgebraError::Precondition("spanning points are dependent".into()));
        }
        Ok(LineInY { points: [ProjPoint::new(p)?, ProjPoint::new(q)?], kind })
    }

    pub fn points(&self) -> &[ProjPoint<T>; 2] {
        &self.points
    }

    pub fn kind(&self) -> LineType {
        self.kind
    }

    /// s·p + t·q.
    pub fn point_at(&self, s: &T, t: &T) -> Vec<T> {
        let [p, q] = &self.points;
        p.coords().iter().zip(q.coords()).map(|(x, y)| s.clone() * x + &(t.clone() * y)).collect()
    }

    /// The seven coordinates as linear forms in s, t.
    pub fn parameterization(&self) -> Vec<Polynomial<T>> {
        let vars = VarSet::new(["s", "t"]);
        let [p, q] = &self.points;
        let z = p.coords()[0].zero_like();
        p.coords()
            .iter()
            .zip(q.coords())
            .map(|(x, y)| {
                Polynomial::from_terms(vars.clone(), &z, vec![(vec![1, 0], x.clone()), (vec![0, 1], y.clone())])
                    .expect("two exponents")
            })
            .collect()
    }

    pub fn contains(&self, x: &[T]) -> bool {
        let [p, q] = &self.points;
        x.len() == 7
            && Matrix::from_rows(vec![p.coords().to_vec(), q.coords().to_vec(), x.to_vec()])
                .map(|m| rank(&m) == 2)
                .unwrap_or(false)
    }

    pub fn same_line(&self, other: &LineInY<T>) -> bool {
        other.points.iter().all(|p| self.contains(p.coords()))
    }
}

impl<T: Ring> fmt::Display for LineInY<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parameterization().iter().map(ToString::to_string).collect();
        write!(f, "{{({})}} [{}]", parts.join(","), self.kind)
    }
}

/// Plücker coordinates b12..b45 of a point of Y_spl.
pub fn plucker_of_split<T: Ring>(a: &[T]) -> Result<Vec<T>, AlgebraError> {
    if a.len() != 7 {
        return Err(AlgebraError::Dimension("points of Y_spl have 7 coordinates".into()));
    }
    Ok([0, 1, 2, 3, 2, 3, 4, 4, 5, 6].iter().map(|&k| a[k].clone()).collect())
}

/// The type of l_P read off P: in characteristic 2, exceptional at (0,0,1) and
/// special on z = 0; otherwise special on z² = 2xy. Ordinary elsewhere.
pub fn line_type_of_plane_point<T: Ring>(p: &[T; 3]) -> LineType {
    let [x, y, z] = p;
    if x.characteristic() == 2 {
        if x.is_zero() && y.is_zero() {
            LineType::Exceptional
        } else if z.is_zero() {
            LineType::Special
        } else {
            LineType::Ordinary
        }
    } else if (z.clone() * z - &(x.int_like(2) * x * y)).is_zero() {
        LineType::Special
    } else {
        LineType::Ordinary
    }
}

/// The line l_P of `net` at P = (x, y, z): with k spanning ker W, W = xA + yB + zC,
/// the 2-planes L with k ∈ L ⊂ {u : uᵀXk = 0 for X = A, B, C} isotropic for the
/// whole net. Coordinates are those kept by [`grassmannian_section`]; the type
/// tag follows [`line_type_of_plane_point`].
pub fn line_from_net_point<T: Ring>(net: &AlternatingNet<T>, x: &T, y: &T, z: &T) -> Result<LineInY<T>, AlgebraError> {
    if x.is_zero() && y.is_zero() && z.is_zero() {
        return Err(AlgebraError::Precondition("(0,0,0) is not a point of ℙ²".into()));
    }
    let w = net.member(x, y, z);
    let r = rank(&w);
    if r != 4 {
        return Err(AlgebraError::Precondition(format!("W = xA+yB+zC has rank {r} at ({x},{y},{z}), expected 4")));
    }
    let k = kernel(&w).pop().expect("rank 4 leaves a kernel line");
    let images = net.matrices().iter().map(|m| m.mul_vec(&k)).collect::<Result<Vec<_>, _>>()?;
    let v3 = kernel(&Matrix::from_rows(images)?);
    if v3.len() != 3 {
        return Err(AlgebraError::Precondition(format!("isotropic complement has dimension {}, expected 3", v3.len())));
    }
    let idx = [(1, 2), (2, 0), (0, 1)];
    let conditions = net
        .matrices()
        .iter()
        .map(|m| idx.iter().map(|&(i, j)| m.bilinear(&v3[i], &v3[j])).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let normals = kernel(&Matrix::from_rows(conditions)?);
    if normals.len() != 2 {
        return Err(AlgebraError::Precondition(format!(
            "isotropic pencil has dimension {}, expected 2",
            normals.len()
        )));
    }
    let wedge = idx.map(|(i, j)| plucker_from_plane(&v3[i], &v3[j]));
    let wedge = wedge.into_iter().collect::<Result<Vec<_>, _>>()?;
    let section = grassmannian_section(net)?;
    let pts: Vec<Vec<T>> = normals
        .iter()
        .map(|n| {
            let b: Vec<T> =
                (0..10).map(|c| (0..3).fold(x.zero_like(), |acc, i| acc + &(n[i].clone() * &wedge[i][c]))).collect();
            section.surviving.iter().map(|&s| b[s].clone()).collect()
        })
        .collect();
    let [p, q]: [Vec<T>; 2] = pts.try_into().expect("two normals");
    LineInY::new(p, q, line_type_of_plane_point(&[x.clone(), y.clone(), z.clone()]))
}

/// 5a₂a₄ − 4a₁a₅ + 27a₀a₆.
pub fn d_value<T: Ring>(a: &[T]) -> T {
    let c = |n: i64| a[0].int_like(n);
    c(5) * &a[2] * &a[4] - &(c(4) * &a[1] * &a[5]) + &(c(27) * &a[0] * &a[6])
}

fn on_exceptional_line<T: Ring>(a: &[T]) -> bool {
    [0, 2, 3, 4, 6].iter().all(|&i| a[i].is_zero())
}

/// The type of a line read off Y_spl: ordinary iff not contained in D (in
/// characteristic 2, in D_red = {a₃ = 0}); the exceptional line is
/// {(0,s,0,0,0,t,0)}.
pub fn classify_line<T: Ring>(line: &LineInY<T>) -> LineType {
    let [p, q] = line.points();
    let (p, q) = (p.coords(), q.coords());
    let in_d = if p[0].characteristic() == 2 {
        p[3].is_zero() && q[3].is_zero()
    } else {
        let sum: Vec<T> = p.iter().zip(q).map(|(x, y)| x.clone() + y).collect();
        d_value(p).is_zero() && d_value(q).is_zero() && d_value(&sum).is_zero()
    };
    if !in_d {
        LineType::Ordinary
    } else if p[0].characteristic() == 2 && on_exceptional_line(p) && on_exceptional_line(q) {
        LineType::Exceptional
    } else {
        LineType::Special
    }
}

/// (x, y, z) ↦ (−x², zx, −z²−xy, yz, −y²).
pub fn veronese_projection<T: Ring>(p: &[T; 3]) -> Result<ProjPoint<T>, AlgebraError> {
    ProjPoint::new(veronese_coords(p).to_vec())
}

fn veronese_coords<T: Ring>(p: &[T; 3]) -> [T; 5] {
    let [x, y, z] = p;
    [-(x.clone() * x), z.clone() * x, -(z.clone() * z) - &(x.clone() * y), y.clone() * z, -(y.clone() * y)]
}

/// The point of ℙ² mapping to `w` under [`veronese_projection`].
pub fn veronese_preimage<T: Ring>(w: &ProjPoint<T>) -> Result<ProjPoint<T>, AlgebraError> {
    let c = w.coords();
    if c.len() != 5 {
        return Err(AlgebraError::Dimension("points of ℙ⁴ have 5 coordinates".into()));
    }
    let z0 = c[0].zero_like();
    let one = c[0].one_like();
    let inv = |v: &T| v.inverse().ok_or_else(|| AlgebraError::NotInvertible(v.to_string()));
    let candidate = if !c[0].is_zero() {
        // x = 1, scale λ = −w₀.
        let l = inv(&-c[0].clone())?;
        let z = c[1].clone() * &l;
        let y = -(c[2].clone() * &l) - &(z.clone() * &z);
        [one, y, z]
    } else if !c[4].is_zero() {
        // x = 0, y = 1, scale λ = −w₄.
        let l = inv(&-c[4].clone())?;
        [z0.clone(), one, c[3].clone() * &l]
    } else {
        [z0.clone(), z0, one]
    };
    let back = veronese_projection(&candidate)?;
    if back != *w {
        return Err(AlgebraError::Precondition(format!("{w} is not on the projected Veronese surface")));
    }
    ProjPoint::new(candidate.to_vec())
}

fn monomials(nvars: usize, degree: u16) -> Vec<Vec<u16>> {
    if nvars == 1 {
        return vec![vec![degree]];
    }
    (0..=degree)
        .rev()
        .flat_map(|d| {
            monomials(nvars - 1, degree - d).into_iter().map(move |mut rest| {
                rest.insert(0, d);
                rest
            })
        })
        .collect()
}

/// A basis of the cubics in w₀..w₄ vanishing on the projected Veronese surface.
pub fn veronese_cubics<T: Ring>(sample: &T) -> Result<Vec<Polynomial<T>>, AlgebraError> {
    let xyz = VarSet::new(["x", "y", "z"]);
    let z = sample.zero_like();
    let gens: Vec<Polynomial<T>> = (0..3).map(|i| Polynomial::variable(xyz.clone(), i, &z)).collect();
    let images = veronese_coords(&[gens[0].clone(), gens[1].clone(), gens[2].clone()]);
    let cubics = monomials(5, 3);
    let sextics = monomials(3, 6);
    let mut columns = Vec::with_capacity(cubics.len());
    for e in &cubics {
        let mut acc = Polynomial::constant(xyz.clone(), sample.one_like());
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                acc = acc.try_mul(&images[i])?;
            }
        }
        columns.push(sextics.iter().map(|s| acc.coefficient(s)).collect::<Vec<T>>());
    }
    let m = Matrix::from_fn(sextics.len(), cubics.len(), |r, c| columns[c][r].clone());
    let wvars = VarSet::new(["w0", "w1", "w2", "w3", "w4"]);
    kernel(&m).into_iter().map(|v| Polynomial::from_terms(wvars.clone(), &z, cubics.iter().cloned().zip(v))).collect()
}

/// A point of ℙ(L) ∩ (projected Veronese surface).
#[derive(Clone, Debug, PartialEq)]
pub struct TrisecantPoint {
    /// The point in ℙ⁴.
    pub image: ProjPoint<Gf>,
    /// Its preimage in ℙ².
    pub plane: ProjPoint<Gf>,
    pub multiplicity: u32,
}

/// The intersection of the line ℙ(L) ⊂ ℙ⁴ of a point of Y_spl with the surface.
#[derive(Clone, Debug)]
pub struct TrisecantIntersection {
    /// Two points spanning ℙ(L), over the base field.
    pub span: [Vec<Gf>; 2],
    /// Degree over the base field of the field holding every intersection point.
    pub field_degree: u32,
    /// Sorted by multiplicity, then by ℙ⁴ coordinates.
    pub points: Vec<TrisecantPoint>,
}

impl TrisecantIntersection {
    /// Multiplicities in decreasing order.
    pub fn profile(&self) -> Vec<u32> {
        let mut m: Vec<u32> = self.points.iter().map(|p| p.multiplicity).collect();
        m.sort_unstable_by(|a, b| b.cmp(a));
        m
    }

    /// (multiplicity, type of l_P at the preimage P), sorted.
    pub fn typed_profile(&self) -> Vec<(u32, LineType)> {
        let mut v: Vec<(u32, LineType)> = self
            .points
            .iter()
            .map(|p| {
                let c = p.plane.coords();
                (p.multiplicity, line_type_of_plane_point(&[c[0], c[1], c[2]]))
            })
            .collect();
        v.sort();
        v
    }
}

/// Cached cubic equations of the projected Veronese surface over one field.
pub struct Veronese {
    field: &'static GfField,
    cubics: Vec<Polynomial<Gf>>,
}

impl Veronese {
    pub fn new(field: &'static GfField) -> Result<Veronese, AlgebraError> {
        Ok(Veronese { field, cubics: veronese_cubics(&field.zero())? })
    }

    pub fn cubics(&self) -> &[Polynomial<Gf>] {
        &self.cubics
    }

    /// The trisecant intersection of the line attached to `p ∈ Y_spl(F)`.
    pub fn trisecant_points(&self, p: &ProjPoint<Gf>) -> Result<TrisecantIntersection, AlgebraError> {
        let a = p.coords();
        if a.len() != 7 || !std::ptr::eq(a[0].field(), self.field) {
            return Err(AlgebraError::Precondition("point of ℙ⁶ over the surface's field expected".into()));
        }
        if !y_split_ideal(&a[0]).contains(a)? {
            return Err(AlgebraError::Precondition(format!("{p} is not on Y_spl")));
        }
        let b = plucker_of_split(a)?;
        let ps = pairs(5);
        let (i, j) = ps[b.iter().position(|x| !x.is_zero()).expect("projective point")];
        let row = |r: usize| -> Vec<Gf> {
            (0..5)
                .map(|c| match r.cmp(&c) {
                    std::cmp::Ordering::Equal => self.field.zero(),
                    std::cmp::Ordering::Less => b[ps.iter().position(|&x| x == (r, c)).unwrap()],
                    std::cmp::Ordering::Greater => -b[ps.iter().position(|&x| x == (c, r)).unwrap()],
                })
                .collect()
        };
        let (u, v) = (row(i), row(j));
        let st = VarSet::new(["s", "t"]);
        let zero = self.field.zero();
        let line: Vec<Polynomial<Gf>> = u
            .iter()
            .zip(&v)
            .map(|(x, y)| Polynomial::from_terms(st.clone(), &zero, vec![(vec![1, 0], *x), (vec![0, 1], *y)]))
            .collect::<Result<_, _>>()?;
        // Dehomogenized at t = 1 with the t-adic valuation tracked separately.
        let mut g: Option<Vec<Gf>> = None;
        let mut at_infinity = u32::MAX;
        for cubic in &self.cubics {
            let r = cubic.substitute(&line)?;
            let f = trim((0..=3u16).map(|k| r.coefficient(&[k, 3 - k])).collect());
            if f.is_empty() {
                continue;
            }
            at_infinity = at_infinity.min(3 - (f.len() as u32 - 1));
            g = Some(match g {
                None => f,
                Some(h) => poly_gcd(h, f),
            });
        }
        let Some(g) = g else {
            return Err(AlgebraError::Precondition(format!("the line of {p} lies on the surface")));
        };
        let mut finite: Vec<(Gf, u32)> = Vec::new();
        let mut rest = monic(g);
        for x in self.field.elements() {
            let m = root_multiplicity(&mut rest, x);
            if m > 0 {
                finite.push((x, m));
            }
        }
        let r = rest.len() as u32 - 1;
        let emb = Embedding::extension(self.field, r.max(1))?;
        let up = |x: &Gf| emb.apply(x);
        let mut roots: Vec<(Gf, u32)> = finite.iter().map(|(x, m)| (up(x), *m)).collect();
        if r > 0 {
            let mut ext: Vec<Gf> = rest.iter().map(up).collect();
            for x in emb.target().elements().filter(|x| !emb.in_image(x)) {
                let m = root_multiplicity(&mut ext, x);
                if m > 0 {
                    roots.push((x, m));
                }
            }
            if ext.len() != 1 {
                return Err(AlgebraError::Precondition(format!("residual factor of degree {} left", ext.len() - 1)));
            }
        }
        let total = at_infinity + roots.iter().map(|(_, m)| m).sum::<u32>();
        if total != 3 {
            return Err(AlgebraError::Precondition(format!("intersection has length {total}, expected 3")));
        }
        let (ue, ve): (Vec<Gf>, Vec<Gf>) = (u.iter().map(up).collect(), v.iter().map(up).collect());
        let mut points = Vec::new();
        if at_infinity > 0 {
            let image = ProjPoint::new(ue.clone())?;
            points.push(TrisecantPoint { plane: veronese_preimage(&image)?, image, multiplicity: at_infinity });
        }
        for (s, m) in roots {
            let w: Vec<Gf> = ue.iter().zip(&ve).map(|(x, y)| s * x + y).collect();
            let image = ProjPoint::new(w)?;
            points.push(TrisecantPoint { plane: veronese_preimage(&image)?, image, multiplicity: m });
        }
        points.sort_by_key(|p| {
            (std::cmp::Reverse(p.multiplicity), p.image.coords().iter().map(Gf::index).collect::<Vec<_>>())
        });
        Ok(TrisecantIntersection { span: [u, v], field_degree: r.max(1), points })
    }
}

/// [`Veronese::trisecant_points`] with the cubics computed on the fly.
pub fn trisecant_points(p: &ProjPoint<Gf>) -> Result<TrisecantIntersection, AlgebraError> {
    let f = p.coords().first().ok_or_else(|| AlgebraError::Dimension("empty point".into()))?.field();
    Veronese::new(f)?.trisecant_points(p)
}

fn trim(mut f: Vec<Gf>) -> Vec<Gf> {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

fn monic(f: Vec<Gf>) -> Vec<Gf> {
    let lead = f.last().expect("nonzero polynomial").inverse().expect("field");
    f.into_iter().map(|c| c * lead).collect()
}

fn poly_rem(mut a: Vec<Gf>, b: &[Gf]) -> Vec<Gf> {
    let inv = b.last().expect("nonzero divisor").inverse().expect("field");
    while a.len() >= b.len() {
        let c = *a.last().unwrap() * inv;
        let shift = a.len() - b.len();
        for (k, bk) in b.iter().enumerate() {
            a[shift + k] = a[shift + k] - c * bk;
        }
        a.pop();
        a = trim(a);
    }
    a
}

fn poly_gcd(mut a: Vec<Gf>, mut b: Vec<Gf>) -> Vec<Gf> {
    while !b.is_empty() {
        let r = poly_rem(a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

/// Divides out (u − x) as often as possible, returning the count.
fn root_multiplicity(f: &mut Vec<Gf>, x: Gf) -> u32 {
    let mut m = 0;
    while f.len() > 1 {
        // Synthetic division, highest coefficient first.
        let mut q = vec![x.field().zero(); f.len() - 1];
        let mut acc = x.field().zero();
        for k in (0..f.len()).rev() {
            acc = acc * x + f[k];
            if k > 0 {
                q[k - 1] = acc;
            }
        }
        if !acc.is_zero() {
            break;
        }
        *f = q;
        m += 1;
    }
    m
}

/// ν((α,γ),(β,δ)) on ℙ¹ × ℙ¹, for 2 invertible.
pub fn nu<T: Ring>(p: &[T; 2], q: &[T; 2]) -> Result<ProjPoint<T>, AlgebraError> {
    if p[0].characteristic() == 2 {
        return Err(AlgebraError::Precondition("ν needs 2 invertible".into()));
    }
    let [al, ga] = p;
    let [be, de] = q;
    let c = |n: i64| al.int_like(n);
    let pw = |x: &T, e: u64| x.pow(e);
    ProjPoint::new(vec![
        c(8) * al * &pw(be, 5),
        c(4) * &pw(be, 5) * ga + &(c(20) * al * &pw(be, 4) * de),
        c(4) * &pw(be, 4) * ga * de + &(c(8) * al * &pw(be, 3) * &pw(de, 2)),
        c(4) * &pw(be, 3) * ga * &pw(de, 2) + &(c(4) * al * &pw(be, 2) * &pw(de, 3)),
        c(4) * &pw(be, 2) * ga * &pw(de, 3) + &(c(2) * al * be * &pw(de, 4)),
        c(5) * be * ga * &pw(de, 4) + &(al.clone() * &pw(de, 5)),
        ga.clone() * &pw(de, 5),
    ])
}

/// A point of the blow-up of ℙ² at (0,0,1).
#[derive(Clone, Debug, PartialEq)]
pub enum BlowupPoint<T> {
    /// A point of ℙ² other than (0,0,1).
    Plane([T; 3]),
    /// A direction (x : y) at (0,0,1).
    Exceptional([T; 2]),
}

/// ν′ in characteristic 2: (x,y,z) ↦ (x³, x²z, x²y, 0, xy², y²z, y³) off the
/// centre and (x,y) ↦ (0, x², 0, 0, 0, y², 0) on the exceptional curve.
pub fn nu_prime<T: Ring>(p: &BlowupPoint<T>) -> Result<ProjPoint<T>, AlgebraError> {
    let sample = match p {
        BlowupPoint::Plane(v) => &v[0],
        BlowupPoint::Exceptional(v) => &v[0],
    };
    if sample.characteristic() != 2 {
        return Err(AlgebraError::Precondition("ν′ lives in characteristic 2".into()));
    }
    let z0 = sample.zero_like();
    match p {
        BlowupPoint::Plane([x, y, z]) => {
            if x.is_zero() && y.is_zero() {
                return Err(AlgebraError::Precondition("(0,0,1) is blown up".into()));
            }
            ProjPoint::new(vec![
                x.pow(3),
                x.clone() * x * z,
                x.clone() * x * y,
                z0,
                x.clone() * y * y,
                y.clone() * y * z,
                y.pow(3),
            ])
        }
        BlowupPoint::Exceptional([x, y]) => {
            ProjPoint::new(vec![z0.clone(), x.clone() * x, z0.clone(), z0.clone(), z0.clone(), y.clone() * y, z0])
        }
    }
}

/// Points of ℙ¹(F) in normal form: (1, y) for y ∈ F, then (0, 1).
pub fn projective_line_points(f: &'static GfField) -> Vec<[Gf; 2]> {
    let mut v: Vec<[Gf; 2]> = f.elements().map(|y| [f.one(), y]).collect();
    v.push([f.zero(), f.one()]);
    v
}

/// Orbit label of a point of Y_spl(𝔽_q).
pub fn classify_point(p: &ProjPoint<Gf>) -> Result<OrbitLabel, AlgebraError> {
    let a = p.coords();
    if a.len() != 7 {
        return Err(AlgebraError::Dimension("points of Y_spl have 7 coordinates".into()));
    }
    if !y_split_ideal(&a[0]).contains(a)? {
        return Err(AlgebraError::Precondition(format!("{p} is not on Y_spl")));
    }
    let f = a[0].field();
    if f.characteristic() != 2 {
        if !d_value(a).is_zero() {
            return Ok(OrbitLabel::O3);
        }
        for q in projective_line_points(f) {
            if nu(&q, &q)? == *p {
                return Ok(OrbitLabel::O1);
            }
        }
        return Ok(OrbitLabel::O2);
    }
    if !a[3].is_zero() {
        return Ok(OrbitLabel::O3);
    }
    for [x, y] in projective_line_points(f) {
        if nu_prime(&BlowupPoint::Exceptional([x, y]))? == *p {
            return Ok(OrbitLabel::O1Prime);
        }
        if nu_prime(&BlowupPoint::Plane([x, y, f.zero()]))? == *p {
            return Ok(OrbitLabel::O1);
        }
    }
    for x in f.elements() {
        for y in f.elements() {
            if (!x.is_zero() || !y.is_zero()) && nu_prime(&BlowupPoint::Plane([x, y, f.one()]))? == *p {
                return Ok(OrbitLabel::O2);
            }
        }
    }
    Err(AlgebraError::Precondition(format!("{p} has a₃ = 0 but is not in the image of ν′")))
}

/// A line through a point together with the degree of its field of definition.
#[derive(Clone, Debug)]
pub struct FoundLine {
    pub degree: u32,
    pub line: LineInY<Gf>,
}

type QuadricTerms = Vec<Vec<(Gf, usize, usize)>>;

fn split_quadric_terms(sample: &Gf) -> QuadricTerms {
    y_split_ideal(sample)
        .generators()
        .iter()
        .map(|g| {
            g.terms()
                .iter()
                .map(|(e, c)| {
                    let idx: Vec<usize> =
                        e.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize)).collect();
                    (*c, idx[0], idx[1])
                })
                .collect()
        })
        .collect()
}

fn eval_quadric(terms: &[(Gf, usize, usize)], x: &[Gf]) -> Gf {
    terms.iter().fold(x[0].field().zero(), |acc, (c, i, j)| acc + *c * x[*i] * x[*j])
}

/// Lines of Y_spl through `p ∈ Y_spl(𝔽_q)`, over 𝔽_{q^k} for k ≤ 3: the
/// directions y with B_Q(p, y) = 0 and Q(y) = 0 for the five quadrics, the
/// polar form taken as Q(p+y) − Q(p) − Q(y). Lines not defined over 𝔽_q are
/// checked to be permuted by Frobenius.
pub fn lines_through(p: &ProjPoint<Gf>) -> Result<Vec<FoundLine>, AlgebraError> {
    let a = p.coords();
    if a.len() != 7 {
        return Err(AlgebraError::Dimension("points of Y_spl have 7 coordinates".into()));
    }
    let f = a[0].field();
    let terms = split_quadric_terms(&a[0]);
    if terms.iter().any(|t| !eval_quadric(t, a).is_zero()) {
        return Err(AlgebraError::Precondition(format!("{p} is not on Y_spl")));
    }
    let unit = |k: usize| -> Vec<Gf> { (0..7).map(|i| if i == k { f.one() } else { f.zero() }).collect() };
    let polar = Matrix::from_fn(5, 7, |r, k| {
        let e = unit(k);
        let sum: Vec<Gf> = a.iter().zip(&e).map(|(x, y)| *x + y).collect();
        eval_quadric(&terms[r], &sum) - eval_quadric(&terms[r], a) - eval_quadric(&terms[r], &e)
    });
    let mut basis: Vec<Vec<Gf>> = vec![a.to_vec()];
    for v in kernel(&polar) {
        let mut trial = basis.clone();
        trial.push(v);
        if rank(&Matrix::from_rows(trial.clone())?) == trial.len() {
            basis = trial;
        }
    }
    let dirs: Vec<Vec<Gf>> = basis.split_off(1);
    if dirs.len() != 3 {
        return Err(AlgebraError::Precondition(format!(
            "tangent space at {p} has dimension {}, expected 3",
            dirs.len()
        )));
    }
    let mut found = Vec::new();
    for k in 1..=3u32 {
        let emb = Embedding::extension(f, k)?;
        let up = |v: &[Gf]| -> Vec<Gf> { v.iter().map(|x| emb.apply(x)).collect() };
        let dirs_k: Vec<Vec<Gf>> = dirs.iter().map(|d| up(d)).collect();
        let terms_k: QuadricTerms =
            terms.iter().map(|t| t.iter().map(|(c, i, j)| (emb.apply(c), *i, *j)).collect()).collect();
        let pk = up(a);
        let mut coeffs: Vec<[Gf; 3]> = Vec::new();
        for c in plane_points(emb.target()) {
            if k > 1 && c.iter().all(|x| emb.in_image(x)) {
                continue;
            }
            let y: Vec<Gf> = (0..7).map(|i| c[0] * dirs_k[0][i] + c[1] * dirs_k[1][i] + c[2] * dirs_k[2][i]).collect();
            if terms_k.iter().all(|t| eval_quadric(t, &y).is_zero()) {
                coeffs.push(c);
            }
        }
        for c in &coeffs {
            if k > 1 {
                let conj = ProjPoint::new(c.iter().map(|x| frobenius_q(x, f)).collect())?;
                if !coeffs.iter().any(|d| d.as_slice() == conj.coords()) {
                    return Err(AlgebraError::Precondition(format!(
                        "lines through {p} are not closed under Frobenius"
                    )));
                }
            }
            let y: Vec<Gf> = (0..7).map(|i| c[0] * dirs_k[0][i] + c[1] * dirs_k[1][i] + c[2] * dirs_k[2][i]).collect();
            let mut line = LineInY::new(pk.clone(), y, LineType::Ordinary)?;
            line.kind = classify_line(&line);
            found.push(FoundLine { degree: k, line });
        }
    }
    Ok(found)
}

fn frobenius_q(x: &Gf, base: &GfField) -> Gf {
    (0..base.degree()).fold(*x, |acc, _| acc.frobenius())
}

/// Calls `visit` on every point of ℙⁿ(F) in normal form.
pub fn for_each_projective_point(f: &'static GfField, n: usize, mut visit: impl FnMut(&[Gf])) {
    let elems: Vec<Gf> = f.elements().collect();
    let q = elems.len();
    let mut v = vec![f.zero(); n + 1];
    for lead in 0..=n {
        for slot in v.iter_mut() {
            *slot = f.zero();
        }
        v[lead] = f.one();
        let free = n - lead;
        let mut digits = vec![0usize; free];
        loop {
            for (k, &d) in digits.iter().enumerate() {
                v[lead + 1 + k] = elems[d];
            }
            visit(&v);
            let mut pos = 0;
            while pos < free {
                digits[pos] += 1;
                if digits[pos] < q {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == free {
                break;
            }
        }
    }
}

/// Every point of Y_spl(F), by brute force over ℙ⁶(F).
pub fn split_points(f: &'static GfField) -> Vec<ProjPoint<Gf>> {
    let terms = split_quadric_terms(&f.zero());
    let mut out = Vec::new();
    for_each_projective_point(f, 6, |v| {
        if terms.iter().all(|t| eval_quadric(t, v).is_zero()) {
            out.push(ProjPoint::new(v.to_vec()).expect("normalized"));
        }
    });
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitCensus {
    pub label: OrbitLabel,
    pub size: usize,
    /// Types of the lines through each point, when checked and uniform.
    pub lines: Option<Vec<LineType>>,
    /// Trisecant multiplicities with the type of l_P at each preimage, when checked and uniform.
    pub trisecant: Option<Vec<(u32, LineType)>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub q: u64,
    pub characteristic: u64,
    pub total: usize,
    pub orbits: Vec<OrbitCensus>,
    pub lines_checked: bool,
    pub mismatches: Vec<String>,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.orbits.iter().map(|o| o.size).sum::<usize>() == self.total
    }

    pub fn orbit_size(&self, label: OrbitLabel) -> usize {
        self.orbits.iter().find(|o| o.label == label).map_or(0, |o| o.size)
    }
}

/// Points, orbit labels and (for q ≤ [`LINE_CHECK_MAX_ORDER`]) the lines and
/// trisecant profile through every point of Y_spl(𝔽_q), compared with the
/// per-orbit tables of [`OrbitLabel`].
pub fn census(q: u64) -> Result<CensusReport, AlgebraError> {
    let f = GfField::of_order(q)?;
    if q > CENSUS_MAX_ORDER {
        return Err(AlgebraError::Precondition(format!("census supports q ≤ {CENSUS_MAX_ORDER}, got {q}")));
    }
    let points = split_points(f);
    let check = q <= LINE_CHECK_MAX_ORDER;
    let veronese = if check { Some(Veronese::new(f)?) } else { None };
    let split = AlternatingNet::split(&f.zero());
    let mut sizes: BTreeMap<OrbitLabel, usize> = BTreeMap::new();
    let mut lines: BTreeMap<OrbitLabel, Option<Vec<LineType>>> = BTreeMap::new();
    let mut profiles: BTreeMap<OrbitLabel, Option<Vec<(u32, LineType)>>> = BTreeMap::new();
    let mut mismatches = Vec::new();
    for p in &points {
        let label = classify_point(p)?;
        *sizes.entry(label).or_default() += 1;
        let Some(ver) = &veronese else { continue };
        let mut types: Vec<LineType> = lines_through(p)?.iter().map(|l| l.line.kind()).collect();
        types.sort();
        if types != label.expected_lines() {
            mismatches.push(format!("{p} in {label}: lines {types:?}"));
        }
        let tri = ver.trisecant_points(p)?;
        let profile = tri.typed_profile();
        if profile != label.expected_trisecant_profile() {
            mismatches.push(format!("{p} in {label}: trisecant profile {profile:?}"));
        }
        for t in &tri.points {
            let c = t.plane.coords();
            let l = line_from_net_point(&split.map(|x| lift(x, &c[0])), &c[0], &c[1], &c[2])?;
            let pe: Vec<Gf> = p.coords().iter().map(|x| lift(x, &c[0])).collect();
            if !l.contains(&pe) {
                mismatches.push(format!("{p}: l_{} misses the point", t.plane));
            }
        }
        merge(lines.entry(label).or_insert_with(|| Some(types.clone())), &types);
        merge(profiles.entry(label).or_insert_with(|| Some(profile.clone())), &profile);
    }
    let orbits = OrbitLabel::all(f.characteristic())
        .into_iter()
        .map(|label| OrbitCensus {
            label,
            size: sizes.get(&label).copied().unwrap_or(0),
            lines: lines.get(&label).cloned().flatten(),
            trisecant: profiles.get(&label).cloned().flatten(),
        })
        .collect();
    Ok(CensusReport {
        q,
        characteristic: f.characteristic(),
        total: points.len(),
        orbits,
        lines_checked: check,
        mismatches,
    })
}

fn merge<V: PartialEq>(slot: &mut Option<V>, v: &V) {
    if slot.as_ref().is_some_and(|s| s != v) {
        *slot = None;
    }
}

/// The image of a base-field element in the field of `target`.
fn lift(x: &Gf, target: &Gf) -> Gf {
    if std::ptr::eq(x.field(), target.field()) {
        *x
    } else {
        Embedding::new(x.field(), target.field()).expect("subfield").apply(x)
    }
}

/// A part of ℙ²(𝔽_q) with its defining description.
#[derive(Clone, Debug)]
pub struct LineOrbit {
    pub name: &'static str,
    pub kind: LineType,
    pub points: Vec<[Gf; 3]>,
}

/// The orbit partition of ℙ²(𝔽_q) read off the line types, the orbits of the
/// embedded SL₂(𝔽_q) computed by brute force, and whether every part is a
/// union of computed orbits.
#[derive(Clone, Debug)]
pub struct LineOrbitPartition {
    pub parts: Vec<LineOrbit>,
    pub group_orbits: Vec<Vec<[Gf; 3]>>,
    pub preserved: bool,
}

/// 3×3 images of SL₂(𝔽_q) acting on ℙ²(𝔽_q) by column vectors.
pub fn plane_action_group(f: &'static GfField) -> Result<Vec<Matrix<Gf>>, AlgebraError> {
    let mut out = Vec::new();
    for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                for d in f.elements() {
                    if !(a * d - b * c).is_one() {
                        continue;
                    }
                    let g = Matrix::from_rows(vec![vec![a, b], vec![c, d]])?;
                    out.push(if f.characteristic() == 2 { embed_sl2_char2(&g)? } else { embed_pgl2(&g)? });
                }
            }
        }
    }
    Ok(out)
}

/// ℙ²(𝔽_q) split as V(z² − 2xy) and its complement, or in characteristic 2 as
/// the point (0,0,1), the line V(z) and the rest.
pub fn sigma_orbits_on_lines(f: &'static GfField) -> Result<LineOrbitPartition, AlgebraError> {
    let pts: Vec<[Gf; 3]> = plane_points(f).collect();
    let mut parts: Vec<LineOrbit> = if f.characteristic() == 2 {
        vec![
            LineOrbit { name: "(0,0,1)", kind: LineType::Exceptional, points: Vec::new() },
            LineOrbit { name: "V(z)", kind: LineType::Special, points: Vec::new() },
            LineOrbit { name: "rest", kind: LineType::Ordinary, points: Vec::new() },
        ]
    } else {
        vec![
            LineOrbit { name: "V(z^2-2xy)", kind: LineType::Special, points: Vec::new() },
            LineOrbit { name: "rest", kind: LineType::Ordinary, points: Vec::new() },
        ]
    };
    for p in &pts {
        let kind = line_type_of_plane_point(p);
        parts.iter_mut().find(|o| o.kind == kind).expect("every type has a part").points.push(*p);
    }
    let group = plane_action_group(f)?;
    let key = |p: &[Gf]| -> Result<Vec<u64>, AlgebraError> {
        Ok(ProjPoint::new(p.to_vec())?.coords().iter().map(Gf::index).collect())
    };
    let mut orbit_of: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
    let mut group_orbits: Vec<Vec<[Gf; 3]>> = Vec::new();
    for p in &pts {
        if orbit_of.contains_key(&key(p)?) {
            continue;
        }
        let mut orbit = Vec::new();
        for g in &group {
            let img = g.mul_vec(p)?;
            let normal = ProjPoint::new(img)?;
            let k = key(normal.coords())?;
            if orbit_of.insert(k, group_orbits.len()).is_none() {
                orbit.push([normal.coords()[0], normal.coords()[1], normal.coords()[2]]);
            }
        }
        group_orbits.push(orbit);
    }
    let mut preserved = true;
    for part in &parts {
        let ids: Vec<usize> = part.points.iter().map(|p| key(p).map(|k| orbit_of[&k])).collect::<Result<_, _>>()?;
        let outside = orbit_of.values().filter(|i| ids.contains(i)).count();
        preserved &= outside == part.points.len();
    }
    Ok(LineOrbitPartition { parts, group_orbits, preserved })
}

//! The span complex `(span K^R_•)^*` of a fixed degree, its cohomology
//! `T^{k,-R}` for `k = 0, 1, 2`, the `psi/delta/eta` model in degrees `mR*`
//! and canonical normal forms for second cohomology classes.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::cone::{Cone, Face};
use crate::error::{Error, Result};
use crate::lattice::{
    fmt_qvec, kernel_basis, mat_vec, pair_unchecked, q, solve, MVector, RatSubspace, Q,
};

/// Limits for window-enumerated spans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpanConfig {
    pub max_height: i64,
}

impl Default for SpanConfig {
    fn default() -> Self {
        SpanConfig { max_height: 48 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "method", content = "height")]
pub enum SpanMethod {
    ClosedForm,
    WindowEnumerated(i64),
}

/// `span_k K^R_tau` together with how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanResult {
    pub face: Face,
    pub space: RatSubspace,
    pub method: SpanMethod,
}

/// Multiple `m` with `R = m R*`, if any.
pub fn multiple_of_rstar(cone: &Cone, r: &MVector) -> Option<i64> {
    let rs = cone.gorenstein_degree()?;
    let i = rs.0.iter().position(|&c| c != 0)?;
    let m = r.0[i] / rs.0[i];
    (rs.scale(m) == *r).then_some(m)
}

/// Span of `K^R_{a_j}` by the trichotomy of the Gorenstein case.
pub fn ray_span(cone: &Cone, r: &MVector, j: usize) -> Result<SpanResult> {
    if cone.gorenstein_degree().is_none() {
        return Err(Error::Domain("the ray trichotomy needs a Gorenstein cone".into()));
    }
    let rank = cone.rank();
    let a = cone.ray(j);
    let p = pair_unchecked(a, r);
    let space = if p <= 0 {
        RatSubspace::zero(rank)
    } else if p == 1 {
        RatSubspace::span(rank, vec![a.to_q()]).annihilator()
    } else {
        RatSubspace::full(rank)
    };
    Ok(SpanResult { face: Face::Ray(j), space, method: SpanMethod::ClosedForm })
}

/// Span of `K^R_tau`, by closed form where available and otherwise by
/// enumeration in growing windows with a stabilization certificate.
pub fn face_span(cone: &Cone, r: &MVector, face: Face, cfg: &SpanConfig) -> Result<SpanResult> {
    let rank = cone.rank();
    match face {
        Face::Origin => {
            return Ok(SpanResult { face, space: RatSubspace::full(rank), method: SpanMethod::ClosedForm })
        }
        Face::Ray(j) if cone.gorenstein_degree().is_some() => return ray_span(cone, r, j),
        Face::Pair(j) => {
            if let Some(m) = multiple_of_rstar(cone, r).filter(|&m| m >= 2) {
                let (d, l) = &cone.edge_data()[j];
                let space = if (*l as i64) >= m {
                    RatSubspace::span(rank, vec![d.to_q()]).annihilator()
                } else {
                    RatSubspace::full(rank)
                };
                return Ok(SpanResult { face, space, method: SpanMethod::ClosedForm });
            }
        }
        _ => {}
    }
    window_span(cone, r, face, cfg)
}

/// Window enumeration of `span K^R_tau`, certified once the span is stable over
/// two consecutive heights beyond twice the largest `|<a_j, R>|`.
pub fn window_span(cone: &Cone, r: &MVector, face: Face, cfg: &SpanConfig) -> Result<SpanResult> {
    let rank = cone.rank();
    let rays = cone.face_rays(face);
    if rays.iter().any(|&j| pair_unchecked(cone.ray(j), r) <= 0) {
        return Ok(SpanResult {
            face,
            space: RatSubspace::zero(rank),
            method: SpanMethod::ClosedForm,
        });
    }
    let bound = 2 * cone.pairings(r).iter().map(|p| p.abs()).max().unwrap_or(0);
    let mut prev: Option<RatSubspace> = None;
    let mut h = 4;
    while h <= cfg.max_height {
        let pts: Vec<Vec<i64>> = cone
            .lattice_points(h)
            .into_iter()
            .filter(|l| cone.in_k_set(r, face, l))
            .map(|l| l.0)
            .collect();
        let space = RatSubspace::span_int(rank, &pts);
        if space.dim() == rank {
            return Ok(SpanResult { face, space, method: SpanMethod::WindowEnumerated(h) });
        }
        if h > bound && prev.as_ref() == Some(&space) {
            return Ok(SpanResult { face, space, method: SpanMethod::WindowEnumerated(h) });
        }
        prev = Some(space);
        h += 2;
    }
    Err(Error::Uncertified { face: face.label(), max_height: cfg.max_height })
}

/// Dimension and representatives of one cohomology group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyGroup {
    pub dim: usize,
    pub representatives: Vec<Vec<Q>>,
}

/// The finite complex `0 -> (span K^R_0)^* -> (span K^R_1)^* -> ...`.
///
/// A cochain of position `p` is stored as one vector of `N_k` per face of
/// dimension `p`, read as a linear function on `span K^R_tau`; vectors in the
/// annihilator of the span represent zero.
#[derive(Clone, Debug)]
pub struct DegreeComplex {
    pub degree: MVector,
    rank: usize,
    pub faces: Vec<Vec<Face>>,
    pub spans: Vec<Vec<SpanResult>>,
    maps: Vec<Vec<Vec<Q>>>,
    zeros: Vec<RatSubspace>,
    kers: Vec<RatSubspace>,
    ims: Vec<RatSubspace>,
}

impl DegreeComplex {
    pub fn new(cone: &Cone, r: &MVector, cfg: &SpanConfig) -> Result<Self> {
        if r.rank() != cone.rank() {
            return Err(Error::Dimension { expected: cone.rank(), got: r.rank() });
        }
        let rank = cone.rank();
        let faces: Vec<Vec<Face>> = (0..=rank).map(|p| cone.faces(p)).collect();
        let spans = faces
            .iter()
            .map(|fs| fs.iter().map(|&f| face_span(cone, r, f, cfg)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_spans(cone, r.clone(), faces, spans))
    }

    pub(crate) fn from_spans(cone: &Cone, degree: MVector, faces: Vec<Vec<Face>>, spans: Vec<Vec<SpanResult>>) -> Self {
        let rank = cone.rank();
        let top = faces.len() - 1;
        let maps: Vec<Vec<Vec<Q>>> = (0..top)
            .map(|p| {
                let (src, dst) = (&faces[p], &faces[p + 1]);
                let mut m = vec![vec![Q::zero(); rank * src.len()]; rank * dst.len()];
                for (bi, &t2) in dst.iter().enumerate() {
                    for (ai, &t) in src.iter().enumerate() {
                        let s = cone.incidence(t, t2);
                        if s != 0 {
                            for k in 0..rank {
                                m[bi * rank + k][ai * rank + k] = q(s);
                            }
                        }
                    }
                }
                m
            })
            .collect();
        let zeros: Vec<RatSubspace> = spans
            .iter()
            .map(|row| {
                let n = row.len();
                let mut gens = Vec::new();
                for (i, s) in row.iter().enumerate() {
                    for v in s.space.annihilator().basis() {
                        let mut g = vec![Q::zero(); rank * n];
                        g[i * rank..(i + 1) * rank].clone_from_slice(v);
                        gens.push(g);
                    }
                }
                RatSubspace::span(rank * n, gens)
            })
            .collect();
        let kers: Vec<RatSubspace> = (0..=top)
            .map(|p| {
                let dim = rank * faces[p].len();
                if p == top {
                    return RatSubspace::full(dim);
                }
                let mut rows = Vec::new();
                for (bi, s) in spans[p + 1].iter().enumerate() {
                    for w in s.space.basis() {
                        let mut row = vec![Q::zero(); dim];
                        for (k, wk) in w.iter().enumerate() {
                            if wk.is_zero() {
                                continue;
                            }
                            for (c, x) in maps[p][bi * rank + k].iter().enumerate() {
                                if !x.is_zero() {
                                    row[c] += wk * x;
                                }
                            }
                        }
                        rows.push(row);
                    }
                }
                kernel_basis(&rows, dim)
            })
            .collect();
        let ims: Vec<RatSubspace> = (0..=top)
            .map(|p| {
                if p == 0 {
                    return zeros[0].clone();
                }
                let m = &maps[p - 1];
                let cols = m[0].len();
                let gens: Vec<Vec<Q>> = (0..cols).map(|c| m.iter().map(|row| row[c].clone()).collect()).collect();
                RatSubspace::span(m.len(), gens).sum(&zeros[p])
            })
            .collect();
        DegreeComplex { degree, rank, faces, spans, maps, zeros, kers, ims }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn top(&self) -> usize {
        self.faces.len() - 1
    }

    /// Ambient dimension of cochains in position `p`.
    pub fn ambient(&self, p: usize) -> usize {
        self.rank * self.faces[p].len()
    }

    /// The boundary matrix from position `p` to `p+1`.
    pub fn map(&self, p: usize) -> &[Vec<Q>] {
        &self.maps[p]
    }

    pub fn apply(&self, p: usize, x: &[Q]) -> Vec<Q> {
        mat_vec(&self.maps[p], x)
    }

    /// Vectors representing the zero cochain in position `p`.
    pub fn zero_space(&self, p: usize) -> &RatSubspace {
        &self.zeros[p]
    }

    pub fn cocycles(&self, p: usize) -> &RatSubspace {
        &self.kers[p]
    }

    pub fn coboundaries(&self, p: usize) -> &RatSubspace {
        &self.ims[p]
    }

    pub fn cohomology(&self, p: usize) -> CohomologyGroup {
        let mut acc = self.ims[p].clone();
        let mut reps = Vec::new();
        for v in self.kers[p].basis() {
            let r = acc.reduce(v);
            if r.iter().any(|x| !x.is_zero()) {
                acc = acc.sum(&RatSubspace::span(r.len(), vec![r.clone()]));
                reps.push(r);
            }
        }
        CohomologyGroup { dim: reps.len(), representatives: reps }
    }

    pub fn dim_h(&self, p: usize) -> usize {
        self.kers[p].dim() - self.ims[p].dim()
    }

    /// Whether `x` restricts to the zero function on every span.
    pub fn is_zero_cochain(&self, p: usize, x: &[Q]) -> bool {
        self.zeros[p].contains(x)
    }

    /// Canonical residue of a cocycle modulo coboundaries, with a preimage
    /// certificate when the class vanishes.
    pub fn normal_form(&self, p: usize, x: &[Q]) -> Result<T2Class> {
        if x.len() != self.ambient(p) {
            return Err(Error::Dimension { expected: self.ambient(p), got: x.len() });
        }
        if !self.kers[p].contains(x) {
            return Err(Error::NotACocycle(format!("position {p} cochain has nonzero boundary")));
        }
        let residue = self.ims[p].reduce(x);
        let zero = residue.iter().all(Zero::is_zero);
        let certificate = if zero && p > 0 {
            let m = &self.maps[p - 1];
            let cols = m[0].len();
            let zgens = self.zeros[p].basis();
            let mat: Vec<Vec<Q>> = (0..m.len())
                .map(|i| {
                    let mut row = m[i].clone();
                    row.extend(zgens.iter().map(|g| g[i].clone()));
                    row
                })
                .collect();
            let sol = solve(&mat, cols + zgens.len(), x)
                .ok_or_else(|| Error::IdentityViolation("class is zero but no preimage exists".into()))?;
            Some(sol[..cols].to_vec())
        } else {
            None
        };
        Ok(T2Class { components: x.to_vec(), residue, certificate })
    }
}

/// A class of the span complex: the tuple `(q_1, ..., q_N)`, its canonical
/// residue modulo coboundaries and, for zero classes, a preimage `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct T2Class {
    pub components: Vec<Q>,
    pub residue: Vec<Q>,
    pub certificate: Option<Vec<Q>>,
}

impl T2Class {
    pub fn is_zero(&self) -> bool {
        self.residue.iter().all(Zero::is_zero)
    }
}

/// The complex `0 -> N_k -> N_k^N -> ⊕ N_k/δ_j d_j -> (span K_σ)^*` in degree `mR*`.
#[derive(Clone, Debug)]
pub struct MRStarModel {
    pub m: i64,
    pub delta_bits: Vec<bool>,
    pub psi: Vec<Vec<Q>>,
    pub delta: Vec<Vec<Q>>,
    pub eta: Vec<Vec<Q>>,
    pub complex: DegreeComplex,
}

pub fn mrstar_model(cone: &Cone, m: i64, cfg: &SpanConfig) -> Result<MRStarModel> {
    let rs = cone
        .gorenstein_degree()
        .ok_or_else(|| Error::Domain("the mR* model needs a Gorenstein cone".into()))?
        .clone();
    if cone.rank() != 3 {
        return Err(Error::Domain("the mR* model is built for cones over polygons".into()));
    }
    if m < 2 {
        return Err(Error::Domain("the mR* model needs m >= 2".into()));
    }
    let complex = DegreeComplex::new(cone, &rs.scale(m), cfg)?;
    let delta_bits = cone.edge_data().iter().map(|(_, l)| (*l as i64) >= m).collect();
    let r = 3;
    let n = cone.num_rays();
    let psi: Vec<Vec<Q>> = (0..n * r)
        .map(|i| (0..r).map(|k| if i % r == k { Q::one() } else { Q::zero() }).collect())
        .collect();
    let delta = complex.map(1).to_vec();
    let w = &complex.spans[3][0].space;
    let eta: Vec<Vec<Q>> = w
        .basis()
        .iter()
        .map(|v| (0..n * r).map(|c| v[c % r].clone()).collect())
        .collect();
    Ok(MRStarModel { m, delta_bits, psi, delta, eta, complex })
}

impl MRStarModel {
    pub fn t2_dim(&self) -> usize {
        self.complex.dim_h(2)
    }

    pub fn normal_form(&self, q: &[Q]) -> Result<T2Class> {
        if !mat_vec(&self.eta, q).iter().all(Zero::is_zero) {
            return Err(Error::NotACocycle("eta(q) does not vanish".into()));
        }
        self.complex.normal_form(2, q)
    }

    /// The summation map `(q_j) -> sum_j q_j` into `N_k`.
    pub fn summation(&self, q: &[Q]) -> Vec<Q> {
        let mut s = vec![Q::zero(); 3];
        for (i, x) in q.iter().enumerate() {
            s[i % 3] += x;
        }
        s
    }
}

pub fn t2_class_normal_form(model: &MRStarModel, q: &[Q]) -> Result<T2Class> {
    model.normal_form(q)
}

/// `T^2(-R) = 0` is guaranteed when at most two rays pair positively with `R`.
pub fn t2_vanishing_by_support(cone: &Cone, r: &MVector) -> bool {
    cone.pairings(r).iter().filter(|&&p| p > 0).count() <= 2
}

/// Structured summary of one degree.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub degree: Vec<i64>,
    pub span_dims: Vec<(String, usize)>,
    pub t0: usize,
    pub t1: usize,
    pub t2: usize,
    pub t1_basis: Vec<Vec<String>>,
    pub t2_basis: Vec<Vec<String>>,
}

pub fn span_complex_cohomology(cone: &Cone, r: &MVector, cfg: &SpanConfig) -> Result<DegreeComplex> {
    if cone.gorenstein_degree().is_none() {
        return Err(Error::Domain("span complex cohomology needs a Gorenstein cone".into()));
    }
    DegreeComplex::new(cone, r, cfg)
}

impl DegreeComplex {
    pub fn report(&self) -> DegreeReport {
        let span_dims = self
            .spans
            .iter()
            .flatten()
            .map(|s| (s.face.label(), s.space.dim()))
            .collect();
        let h = |p: usize| if p <= self.top() { Some(self.cohomology(p)) } else { None };
        let (h0, h1, h2) = (h(0), h(1), h(2));
        let basis = |g: &Option<CohomologyGroup>| {
            g.as_ref().map(|g| g.representatives.iter().map(|v| fmt_qvec(v)).collect()).unwrap_or_default()
        };
        DegreeReport {
            degree: self.degree.0.clone(),
            span_dims,
            t0: h0.as_ref().map_or(0, |g| g.dim),
            t1: h1.as_ref().map_or(0, |g| g.dim),
            t2: h2.as_ref().map_or(0, |g| g.dim),
            t1_basis: basis(&h1),
            t2_basis: basis(&h2),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{an_surface_cone, Polytope2};
    use crate::lattice::NVector;

    fn m(v: &[i64]) -> MVector {
        MVector::new(v)
    }
    fn cfg() -> SpanConfig {
        SpanConfig::default()
    }
    fn hexagon() -> Cone {
        Cone::over_polytope(&Polytope2::hexagon()).unwrap()
    }
    fn square() -> Cone {
        Cone::over_polytope(&Polytope2::unit_square()).unwrap()
    }
    fn p123() -> Cone {
        Cone::over_polytope(&Polytope2::p123_triangle()).unwrap()
    }

    #[test]
    fn ray_trichotomy() {
        let c = p123();
        for j in 0..3 {
            assert_eq!(ray_span(&c, &m(&[0, 0, 1]), j).unwrap().space.dim(), 2);
            assert_eq!(ray_span(&c, &m(&[0, 0, 0]), j).unwrap().space.dim(), 0);
        }
        let r1 = m(&[0, 0, 2]).sub(&c.dual_generators()[2]);
        let dims: Vec<usize> = (0..3).map(|j| ray_span(&c, &r1, j).unwrap().space.dim()).collect();
        assert_eq!(dims, vec![3, 0, 3]);
    }

    #[test]
    fn closed_form_spans() {
        let hex = hexagon();
        for j in 0..6 {
            let s = face_span(&hex, &m(&[0, 0, 2]), Face::Pair(j), &cfg()).unwrap();
            assert_eq!(s.space.dim(), 3);
        }
        let tri = Cone::over_polytope(&Polytope2::new(vec![[0, 0], [2, 0], [1, 1]]).unwrap()).unwrap();
        let s = face_span(&tri, &m(&[0, 0, 2]), Face::Pair(0), &cfg()).unwrap();
        assert_eq!(s.space, RatSubspace::span_int(3, &[vec![2, 0, 0]]).annihilator());
        for c in [hex, square(), p123()] {
            let s = face_span(&c, &m(&[0, 0, 1]), Face::Full, &cfg()).unwrap();
            assert_eq!(s.space.dim(), 0);
        }
    }

    #[test]
    fn closed_forms_agree_with_windows() {
        let cones = [
            hexagon(),
            square(),
            p123(),
            Cone::over_polytope(&Polytope2::new(vec![[0, 0], [2, 0], [0, 2]]).unwrap()).unwrap(),
            Cone::over_polytope(&Polytope2::new(vec![[0, 0], [3, 0], [0, 1]]).unwrap()).unwrap(),
        ];
        for c in &cones {
            for mm in [2, 3] {
                let r = c.gorenstein_degree().unwrap().scale(mm);
                for f in c.faces(1).into_iter().chain(c.faces(2)) {
                    let closed = face_span(c, &r, f, &cfg()).unwrap();
                    let win = window_span(c, &r, f, &cfg()).unwrap();
                    assert_eq!(closed.space, win.space, "{f:?} m={mm}");
                }
            }
        }
    }

    #[test]
    fn t1_in_the_gorenstein_degree() {
        let rs = m(&[0, 0, 1]);
        let hex = span_complex_cohomology(&hexagon(), &rs, &cfg()).unwrap();
        assert_eq!(hex.dim_h(1), 3);
        assert_eq!(hex.cohomology(1).dim, 3);
        let sq = span_complex_cohomology(&square(), &rs, &cfg()).unwrap();
        assert_eq!(sq.dim_h(1), 1);
        for n in 1..4 {
            let c = an_surface_cone(n).unwrap();
            for k in 1..n + 4 {
                let dc = span_complex_cohomology(&c, &m(&[k, k]), &cfg()).unwrap();
                let expect = usize::from((2..=n + 1).contains(&k));
                assert_eq!(dc.dim_h(1), expect, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn boundaries_compose_to_zero() {
        for c in [hexagon(), square(), p123()] {
            for r in [m(&[0, 0, 1]), m(&[0, 0, 2]), m(&[-1, -1, 2]), m(&[1, 2, 3])] {
                let dc = DegreeComplex::new(&c, &r, &cfg()).unwrap();
                for p in 0..dc.top() - 1 {
                    let a = dc.map(p);
                    let b = dc.map(p + 1);
                    for i in 0..b.len() {
                        for j in 0..a[0].len() {
                            let s: Q = (0..a.len()).map(|k| &b[i][k] * &a[k][j]).sum();
                            assert!(s.is_zero());
                        }
                    }
                }
                for p in 0..=dc.top() {
                    assert!(dc.coboundaries(p).is_subspace_of(dc.cocycles(p)));
                }
            }
        }
    }

    #[test]
    fn mrstar_models() {
        let sq = mrstar_model(&square(), 2, &cfg()).unwrap();
        assert_eq!(sq.t2_dim(), 0);
        let hex = mrstar_model(&hexagon(), 2, &cfg()).unwrap();
        assert_eq!(hex.t2_dim(), 2);
        assert_eq!(hex.complex.spans[3][0].space, RatSubspace::span_int(3, &[vec![0, 0, 1]]));
        for model in [&sq, &hex] {
            let n = model.delta_bits.len();
            let dpsi = (0..n * 3).all(|i| (0..3).all(|c| {
                let s: Q = (0..n * 3).map(|k| &model.delta[i][k] * &model.psi[k][c]).sum();
                s.is_zero()
            }));
            assert!(dpsi);
            for row in &model.eta {
                for c in 0..n * 3 {
                    let s: Q = (0..n * 3).map(|k| &row[k] * &model.delta[k][c]).sum();
                    assert!(s.is_zero());
                }
            }
        }
    }

    #[test]
    fn normal_forms() {
        let hex = mrstar_model(&hexagon(), 2, &cfg()).unwrap();
        let b: Vec<Q> = (0..18).map(|i| q((i * 7 % 5) - 2)).collect();
        let qv = hex.complex.apply(1, &b);
        let cls = hex.normal_form(&qv).unwrap();
        assert!(cls.is_zero());
        let cert = cls.certificate.unwrap();
        let back = hex.complex.apply(1, &cert);
        let diff: Vec<Q> = back.iter().zip(&qv).map(|(x, y)| x - y).collect();
        assert!(hex.complex.is_zero_cochain(2, &diff));

        let mut d1 = vec![Q::zero(); 18];
        d1[0] = q(1);
        let cls = hex.normal_form(&d1).unwrap();
        assert!(!cls.is_zero());
        let mut bad = vec![Q::zero(); 18];
        bad[2] = q(1);
        assert!(matches!(hex.normal_form(&bad), Err(Error::NotACocycle(_))));
    }

    #[test]
    fn support_criterion() {
        let c = p123();
        let s = c.dual_generators().to_vec();
        let r1 = |a: i64| m(&[0, 0, 2]).sub(&s[2].scale(a));
        let r2 = |b: i64| m(&[0, 0, 2]).sub(&s[0].scale(b));
        for a in 1..4 {
            assert_eq!(c.pairings(&r1(a)), vec![2, 2 - 3 * a, 2]);
            assert!(t2_vanishing_by_support(&c, &r1(a)));
        }
        assert_eq!(c.pairings(&r1(1).add(&r2(1))), vec![4, 1, 2]);
        assert!(!t2_vanishing_by_support(&c, &r1(1).add(&r2(1))));
        assert!(t2_vanishing_by_support(&c, &m(&[0, 0, 0])));
    }

    #[test]
    fn uncertified_windows_are_loud() {
        let c = Cone::new(vec![NVector::new(&[-1, 2]), NVector::new(&[1, 2])]).unwrap();
        let r = m(&[21, 11]);
        let err = window_span(&c, &r, Face::Full, &SpanConfig { max_height: 10 }).unwrap_err();
        assert!(matches!(err, Error::Uncertified { .. }));
    }
}

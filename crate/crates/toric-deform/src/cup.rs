//! The deformation space `V(P)`, additive seeds, the closed-form cup product
//! `T^1(-R*) x T^1(-R*) -> T^2(-2R*)`, versal-base quadratics and cup products
//! in the special degrees `qR* - p s_j`.

use num_traits::Zero;
use serde::Serialize;

use crate::cone::{Cone, Face};
use crate::degree_complex::{mrstar_model, t2_vanishing_by_support, DegreeComplex, MRStarModel, SpanConfig, T2Class};
use crate::error::{Error, Result};
use crate::lattice::{dot_iq, fmt_q, kernel_basis, mat_vec, pair_unchecked, q, MVector, RatSubspace, Q};
use crate::pipeline::{pipeline_cup, PipelineTrace};

/// Cup products are classes of the span complex in degree `R + S`.
pub type CupClass = T2Class;

/// `V = {t : sum_j t_j d_j = 0}` for a cone over a polygon.
#[derive(Clone, Debug)]
pub struct VSpace {
    pub relations: Vec<Vec<Q>>,
    pub space: RatSubspace,
    pub ones: Vec<Q>,
}

impl VSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, t: &[Q]) -> bool {
        t.len() == self.ones.len() && mat_vec(&self.relations, t).iter().all(Zero::is_zero)
    }

    /// The point of `V` with coordinates `c` in the echelon basis.
    pub fn combine(&self, c: &[Q]) -> Vec<Q> {
        let mut t = vec![Q::zero(); self.ones.len()];
        for (ci, b) in c.iter().zip(self.space.basis()) {
            for (x, y) in t.iter_mut().zip(b) {
                *x += ci * y;
            }
        }
        t
    }
}

pub fn v_space(cone: &Cone) -> Result<VSpace> {
    require_polygon(cone)?;
    let edges = cone.edge_data();
    let n = edges.len();
    let relations: Vec<Vec<Q>> = (0..3).map(|i| edges.iter().map(|(d, _)| q(d.0[i])).collect()).collect();
    let space = kernel_basis(&relations, n);
    Ok(VSpace { relations, space, ones: vec![q(1); n] })
}

fn require_polygon(cone: &Cone) -> Result<&MVector> {
    if cone.rank() != 3 {
        return Err(Error::Domain("expected a cone over a polygon".into()));
    }
    cone.gorenstein_degree().ok_or_else(|| Error::Domain("expected a Gorenstein cone".into()))
}

/// An element `t` of `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationParam {
    pub t: Vec<Q>,
}

impl DeformationParam {
    pub fn new(v: &VSpace, t: Vec<Q>) -> Result<Self> {
        if !v.contains(&t) {
            return Err(Error::Domain("the parameter does not satisfy sum t_j d_j = 0".into()));
        }
        Ok(DeformationParam { t })
    }
}

/// An additive function on `Lambda \ Lambda(R)` given by one linear form
/// `x -> <b_j, x>` per ray, valid on `K^R_{a_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveSeed {
    pub degree: MVector,
    pub b: Vec<Vec<Q>>,
    pub t: Option<Vec<Q>>,
}

impl AdditiveSeed {
    pub fn new(degree: MVector, b: Vec<Vec<Q>>) -> Self {
        AdditiveSeed { degree, b, t: None }
    }

    /// Seed from a first cohomology representative of the span complex in the
    /// seed's degree; each form is the canonical residue modulo the annihilator
    /// of `span K^R_{a_j}`.
    pub fn from_cocycle(complex: &DegreeComplex, x: &[Q]) -> Result<Self> {
        if !complex.cocycles(1).contains(x) {
            return Err(Error::NotACocycle("seed representative is not a cocycle".into()));
        }
        let r = complex.rank();
        let b = complex.spans[1]
            .iter()
            .enumerate()
            .map(|(j, s)| s.space.annihilator().reduce(&x[j * r..(j + 1) * r]))
            .collect();
        Ok(AdditiveSeed::new(complex.degree.clone(), b))
    }

    /// `xi~_j(x) = <b_j, x>`.
    pub fn tilde(&self, j: usize, x: &MVector) -> Q {
        dot_iq(&x.0, &self.b[j])
    }

    /// The function on `Lambda \ Lambda(R)`, extended by zero (`xi^0`).
    pub fn extended(&self, cone: &Cone, l: &MVector) -> Q {
        if !cone.contains(l) {
            return Q::zero();
        }
        match (0..cone.num_rays()).find(|&j| cone.in_k_set(&self.degree, Face::Ray(j), l)) {
            Some(j) => self.tilde(j, l),
            None => Q::zero(),
        }
    }

    /// Checks additivity on `Lambda \ Lambda(R)` within the window of height `h`
    /// and agreement of the forms on overlaps.
    pub fn verify(&self, cone: &Cone, h: i64) -> Result<()> {
        let pts = cone.lattice_points(h);
        let n = cone.num_rays();
        let outside = |l: &MVector| !cone.contains(&l.sub(&self.degree));
        for l in pts.iter().filter(|l| outside(l)) {
            let vals: Vec<Q> = (0..n)
                .filter(|&j| cone.in_k_set(&self.degree, Face::Ray(j), l))
                .map(|j| self.tilde(j, l))
                .collect();
            if vals.windows(2).any(|w| w[0] != w[1]) {
                return Err(Error::IdentityViolation(format!("seed forms disagree at {l}")));
            }
        }
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i..] {
                let s = a.add(b);
                if cone.height(&s) <= h && outside(&s) {
                    let lhs = self.extended(cone, a) + self.extended(cone, b);
                    if lhs != self.extended(cone, &s) {
                        return Err(Error::IdentityViolation(format!("seed is not additive at {a} + {b}")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `b_1 = 0`, `b_{j+1} = b_j + t_j d_j`, `xi~_j = <b_j, .>` in degree `R*`.
pub fn seed_from_t(cone: &Cone, t: &DeformationParam, r: &MVector) -> Result<AdditiveSeed> {
    let rs = require_polygon(cone)?;
    if r != rs {
        return Err(Error::Domain("seeds from V are defined in the degree R* only".into()));
    }
    let v = v_space(cone)?;
    if !v.contains(&t.t) {
        return Err(Error::Domain("t is not in V".into()));
    }
    let edges = cone.edge_data();
    let mut b = vec![vec![Q::zero(); 3]];
    for j in 0..edges.len() - 1 {
        let next: Vec<Q> = b[j].iter().zip(&edges[j].0 .0).map(|(x, &d)| x + &t.t[j] * q(d)).collect();
        b.push(next);
    }
    Ok(AdditiveSeed { degree: r.clone(), b, t: Some(t.t.clone()) })
}

/// The tuple `(s_1 t_1 d_1, ..., s_N t_N d_N)`.
pub fn cup_tuple(cone: &Cone, t: &[Q], s: &[Q]) -> Vec<Q> {
    let mut out = Vec::with_capacity(3 * t.len());
    for (j, (d, _)) in cone.edge_data().iter().enumerate() {
        let f = &t[j] * &s[j];
        out.extend(d.0.iter().map(|&c| &f * q(c)));
    }
    out
}

pub fn cup_closed_form(cone: &Cone, model: &MRStarModel, t: &DeformationParam, s: &DeformationParam) -> Result<CupClass> {
    if model.m != 2 {
        return Err(Error::Domain("the cup product lands in degree 2R*".into()));
    }
    model.normal_form(&cup_tuple(cone, &t.t, &s.t))
}

/// A diagonal quadratic form `sum_j c_j t_j^2` on `V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticForm {
    pub coefficients: Vec<String>,
    #[serde(skip)]
    pub coeffs: Vec<Q>,
}

impl QuadraticForm {
    fn new(coeffs: Vec<Q>) -> Self {
        QuadraticForm { coefficients: coeffs.iter().map(fmt_q).collect(), coeffs }
    }

    pub fn eval(&self, t: &[Q]) -> Q {
        self.coeffs.iter().zip(t).map(|(c, x)| c * x * x).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Polynomial notation, e.g. `t1^2 + t2^2 - t4^2`.
    pub fn display(&self) -> String {
        let mut s = String::new();
        for (j, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let neg = c < &Q::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            let coef = if a == q(1) { String::new() } else { format!("{}*", a) };
            if s.is_empty() {
                s.push_str(if neg { "-" } else { "" });
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&format!("{coef}t{}^2", j + 1));
        }
        if s.is_empty() {
            "0".into()
        } else {
            s
        }
    }
}

/// Which case of the classification applies to the polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VersalCase {
    AllEdgesShort,
    OneLongDirection,
    TwoLongDirections,
}

/// Quadratic equations of the versal base in degree `-R*`, from `t ∪ t = 0`.
pub fn versal_quadratics(cone: &Cone) -> Result<(VersalCase, Vec<QuadraticForm>)> {
    let rs = require_polygon(cone)?.clone();
    let edges = cone.edge_data();
    let long: Vec<usize> = (0..edges.len()).filter(|&j| edges[j].1 > 1).collect();
    let parallel = |i: usize, j: usize| {
        let (a, b) = (&edges[i].0 .0, &edges[j].0 .0);
        crate::lattice::cross(a, b) == [0, 0, 0]
    };
    let form_on = |m: &MVector| {
        QuadraticForm::new(edges.iter().map(|(d, _)| q(pair_unchecked(d, m))).collect())
    };
    if long.is_empty() {
        let piv = rs.0.iter().position(|&c| c != 0).unwrap();
        let forms = (0..3)
            .filter(|&i| i != piv)
            .map(|i| {
                let mut e = MVector::zero(3);
                e.0[i] = 1;
                form_on(&e)
            })
            .filter(|f| !vanishes_on_v(cone, f))
            .collect();
        return Ok((VersalCase::AllEdgesShort, forms));
    }
    if long.iter().all(|&j| parallel(j, long[0])) {
        let s = &cone.dual_generators()[long[0]];
        let f = form_on(s);
        let forms = if vanishes_on_v(cone, &f) { Vec::new() } else { vec![f] };
        return Ok((VersalCase::OneLongDirection, forms));
    }
    Ok((VersalCase::TwoLongDirections, Vec::new()))
}

fn vanishes_on_v(cone: &Cone, f: &QuadraticForm) -> bool {
    let Ok(v) = v_space(cone) else { return false };
    let basis = v.space.basis();
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i..] {
            let bil: Q = f.coeffs.iter().zip(a.iter().zip(b)).map(|(c, (x, y))| c * x * y).sum();
            if !bil.is_zero() {
                return false;
            }
        }
    }
    true
}

/// A degree `R^{p,q}_j = q R* - p s_j`, with a 0-based edge index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialDegree {
    pub j: usize,
    pub p: i64,
    pub q: i64,
}

impl SpecialDegree {
    pub fn degree(&self, cone: &Cone) -> Result<MVector> {
        let rs = require_polygon(cone)?;
        let n = cone.num_rays();
        if self.j >= n {
            return Err(Error::Input(format!("edge index {} out of range", self.j + 1)));
        }
        let l = cone.edge_data()[self.j].1 as i64;
        if self.q < 2 || self.q > l {
            return Err(Error::Domain(format!(
                "need 2 <= q <= l(d_{}) = {l}, got q = {}",
                self.j + 1,
                self.q
            )));
        }
        let r = rs.scale(self.q).sub(&cone.dual_generators()[self.j].scale(self.p));
        if cone.pairings(&r).iter().all(|&x| x > 0) {
            return Err(Error::Domain(format!("degree {r} lies in the interior of the dual cone")));
        }
        Ok(r)
    }
}

/// Why a special-degree cup product vanishes without computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroReason {
    Support,
    SameEdge,
    NoCommonFace,
    TrivialT1,
}

#[derive(Clone, Debug)]
pub enum SpecialCup {
    CertifiedZero { degree: MVector, reason: ZeroReason },
    Computed { degree: MVector, t1_dims: (usize, usize), class: CupClass, trace: Box<PipelineTrace> },
}

impl SpecialCup {
    pub fn is_zero(&self) -> bool {
        match self {
            SpecialCup::CertifiedZero { .. } => true,
            SpecialCup::Computed { class, .. } => class.is_zero(),
        }
    }
}

/// Cup product `T^1(-R_1) x T^1(-R_2) -> T^2(-R_1-R_2)` for special degrees.
pub fn special_degree_cup(
    cone: &Cone,
    d1: SpecialDegree,
    d2: SpecialDegree,
    window: i64,
    cfg: &SpanConfig,
) -> Result<SpecialCup> {
    let r1 = d1.degree(cone)?;
    let r2 = d2.degree(cone)?;
    let total = r1.add(&r2);
    let n = cone.num_rays();
    if t2_vanishing_by_support(cone, &total) {
        return Ok(SpecialCup::CertifiedZero { degree: total, reason: ZeroReason::Support });
    }
    if d1.j == d2.j {
        return Ok(SpecialCup::CertifiedZero { degree: total, reason: ZeroReason::SameEdge });
    }
    let adjacent = (d1.j + 1) % n == d2.j || (d2.j + 1) % n == d1.j;
    if !adjacent {
        return Ok(SpecialCup::CertifiedZero { degree: total, reason: ZeroReason::NoCommonFace });
    }
    let c1 = DegreeComplex::new(cone, &r1, cfg)?;
    let c2 = DegreeComplex::new(cone, &r2, cfg)?;
    let (h1, h2) = (c1.cohomology(1), c2.cohomology(1));
    if h1.dim == 0 || h2.dim == 0 {
        return Ok(SpecialCup::CertifiedZero { degree: total, reason: ZeroReason::TrivialT1 });
    }
    let xi = AdditiveSeed::from_cocycle(&c1, &h1.representatives[0])?;
    let mu = AdditiveSeed::from_cocycle(&c2, &h2.representatives[0])?;
    let (class, trace) = pipeline_cup(cone, &xi, &mu, window, cfg)?;
    Ok(SpecialCup::Computed { degree: total, t1_dims: (h1.dim, h2.dim), class, trace: Box::new(trace) })
}

/// Convenience: the `m = 2` model together with `V`.
pub fn cup_setup(cone: &Cone, cfg: &SpanConfig) -> Result<(VSpace, MRStarModel)> {
    Ok((v_space(cone)?, mrstar_model(cone, 2, cfg)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::Polytope2;
    use crate::lattice::{qf, NVector};
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn cone(v: Vec<[i64; 2]>) -> Cone {
        Cone::over_polytope(&Polytope2::new(v).unwrap()).unwrap()
    }
    fn hexagon() -> Cone {
        Cone::over_polytope(&Polytope2::hexagon()).unwrap()
    }
    fn square() -> Cone {
        Cone::over_polytope(&Polytope2::unit_square()).unwrap()
    }
    fn qv(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&c| q(c)).collect()
    }
    fn random_t(rng: &mut StdRng, v: &VSpace) -> DeformationParam {
        let c: Vec<Q> = (0..v.dim()).map(|_| qf(rng.gen_range(-6..7), rng.gen_range(1..4))).collect();
        DeformationParam::new(v, v.combine(&c)).unwrap()
    }

    #[test]
    fn v_spaces() {
        let v = v_space(&hexagon()).unwrap();
        assert_eq!(v.dim(), 4);
        let r1 = qv(&[1, 1, 0, -1, -1, 0]);
        let r2 = qv(&[0, 1, 1, 0, -1, -1]);
        for b in v.space.basis() {
            assert!(crate::lattice::dot_q(&r1, b).is_zero());
            assert!(crate::lattice::dot_q(&r2, b).is_zero());
        }
        assert!(v.contains(&v.ones));
        let sq = v_space(&square()).unwrap();
        assert_eq!(sq.dim(), 2);
        assert!(sq.contains(&qv(&[1, 2, 1, 2])));
        assert!(!sq.contains(&qv(&[1, 2, 2, 1])));
        let p = Cone::over_polytope(&Polytope2::p123_triangle()).unwrap();
        assert!(v_space(&p).unwrap().contains(&qv(&[1, 1, 1])));
    }

    #[test]
    fn seeds_from_t() {
        let c = hexagon();
        let v = v_space(&c).unwrap();
        let t = DeformationParam::new(&v, v.ones.clone()).unwrap();
        let seed = seed_from_t(&c, &t, &MVector::new(&[0, 0, 1])).unwrap();
        for j in 0..6 {
            let expect: Vec<Q> = c.ray(j).sub(c.ray(0)).to_q();
            assert_eq!(seed.b[j], expect);
        }
        seed.verify(&c, 8).unwrap();
        let mut rng = StdRng::seed_from_u64(3);
        let t = random_t(&mut rng, &v);
        let seed = seed_from_t(&c, &t, &MVector::new(&[0, 0, 1])).unwrap();
        let d = c.edge_data();
        for j in 0..5 {
            let diff: Vec<Q> = seed.b[j + 1].iter().zip(&seed.b[j]).map(|(a, b)| a - b).collect();
            let expect: Vec<Q> = d[j].0 .0.iter().map(|&x| &t.t[j] * q(x)).collect();
            assert_eq!(diff, expect);
        }
        seed.verify(&c, 8).unwrap();
        assert!(seed_from_t(&c, &t, &MVector::new(&[0, 0, 2])).is_err());
        assert!(DeformationParam::new(&v, qv(&[1, 0, 0, 0, 0, 0])).is_err());
    }

    #[test]
    fn example_seed_values() {
        let c = Cone::new(vec![NVector::new(&[-1, 2]), NVector::new(&[1, 2])]).unwrap();
        let r = MVector::new(&[0, 1]);
        let seed = AdditiveSeed::new(r.clone(), vec![qv(&[0, 0]), qv(&[0, 1])]);
        seed.verify(&c, 8).unwrap();
        assert_eq!(seed.extended(&c, &r), q(0));
        assert_eq!(seed.extended(&c, &MVector::new(&[1, 1])), q(0));
        assert_eq!(seed.extended(&c, &MVector::new(&[-1, 1])), q(1));
    }

    #[test]
    fn closed_form_cup_products() {
        let cfg = SpanConfig::default();
        let mut rng = StdRng::seed_from_u64(11);
        for c in [hexagon(), square()] {
            let (v, model) = cup_setup(&c, &cfg).unwrap();
            let one = DeformationParam::new(&v, v.ones.clone()).unwrap();
            for _ in 0..10 {
                let t = random_t(&mut rng, &v);
                let s = random_t(&mut rng, &v);
                assert!(cup_closed_form(&c, &model, &one, &s).unwrap().is_zero());
                let ts = cup_closed_form(&c, &model, &t, &s).unwrap();
                let st = cup_closed_form(&c, &model, &s, &t).unwrap();
                assert_eq!(ts.residue, st.residue);
                let k = qf(rng.gen_range(-5..6), rng.gen_range(1..3));
                let shifted: Vec<Q> = t.t.iter().map(|x| x + &k).collect();
                let shifted = DeformationParam::new(&v, shifted).unwrap();
                assert_eq!(cup_closed_form(&c, &model, &shifted, &s).unwrap().residue, ts.residue);
                let lin: Vec<Q> = t.t.iter().zip(&s.t).map(|(a, b)| a * &k + b).collect();
                let lin = DeformationParam::new(&v, lin).unwrap();
                let lhs = cup_closed_form(&c, &model, &lin, &s).unwrap().residue;
                let ss = cup_closed_form(&c, &model, &s, &s).unwrap().residue;
                let rhs: Vec<Q> = ts.residue.iter().zip(&ss).map(|(a, b)| a * &k + b).collect();
                assert_eq!(lhs, rhs);
            }
        }
        let (v, model) = cup_setup(&square(), &cfg).unwrap();
        for _ in 0..10 {
            let t = random_t(&mut rng, &v);
            assert!(cup_closed_form(&square(), &model, &t, &t).unwrap().is_zero());
        }
    }

    #[test]
    fn versal_forms() {
        let (case, forms) = versal_quadratics(&hexagon()).unwrap();
        assert_eq!(case, VersalCase::AllEdgesShort);
        let shown: Vec<String> = forms.iter().map(|f| f.display()).collect();
        assert_eq!(shown, vec!["t1^2 + t2^2 - t4^2 - t5^2", "t2^2 + t3^2 - t5^2 - t6^2"]);
        assert!(versal_quadratics(&square()).unwrap().1.is_empty());
        let tri = cone(vec![[0, 0], [2, 0], [0, 2]]);
        assert_eq!(versal_quadratics(&tri).unwrap(), (VersalCase::TwoLongDirections, vec![]));
    }

    #[test]
    fn versal_forms_match_cup_classes() {
        let cfg = SpanConfig::default();
        let mut rng = StdRng::seed_from_u64(5);
        let cones = [
            hexagon(),
            square(),
            cone(vec![[0, 0], [2, 0], [1, 1], [0, 1]]),
            cone(vec![[0, 0], [2, 0], [2, 1], [0, 1]]),
            cone(vec![[0, 0], [2, 0], [3, 1], [1, 2], [0, 1]]),
            cone(vec![[0, 0], [2, 0], [2, 2], [0, 1]]),
        ];
        for c in &cones {
            let (v, model) = cup_setup(c, &cfg).unwrap();
            let (_, forms) = versal_quadratics(c).unwrap();
            let mut seen_nonzero = false;
            for trial in 0..40 {
                let t = if trial % 2 == 0 {
                    random_t(&mut rng, &v)
                } else {
                    let mut x = vec![Q::zero(); v.dim()];
                    x[trial % v.dim()] = q(1);
                    x[(trial / 2) % v.dim()] += q(1);
                    DeformationParam::new(&v, v.combine(&x)).unwrap()
                };
                let zero_class = cup_closed_form(c, &model, &t, &t).unwrap().is_zero();
                let zero_forms = forms.iter().all(|f| f.eval(&t.t).is_zero());
                assert_eq!(zero_class, zero_forms);
                seen_nonzero |= !zero_class;
            }
            assert_eq!(seen_nonzero, !forms.is_empty());
        }
    }
}

#[cfg(test)]
mod special_tests {
    use super::*;
    use crate::cone::Polytope2;

    fn p123() -> Cone {
        Cone::over_polytope(&Polytope2::p123_triangle()).unwrap()
    }

    #[test]
    fn p123_degrees() {
        let c = p123();
        let z1 = SpecialDegree { j: 2, p: 1, q: 2 };
        let z2 = SpecialDegree { j: 0, p: 1, q: 2 };
        let z3 = SpecialDegree { j: 0, p: 2, q: 3 };
        assert_eq!(c.pairings(&z1.degree(&c).unwrap().add(&z2.degree(&c).unwrap())), vec![4, 1, 2]);
        assert_eq!(c.pairings(&z1.degree(&c).unwrap().add(&z3.degree(&c).unwrap())), vec![5, 2, 1]);
        assert!(SpecialDegree { j: 1, p: 0, q: 2 }.degree(&c).is_err());
    }

    #[test]
    fn p123_special_cups() {
        let c = p123();
        let cfg = SpanConfig::default();
        let z1 = SpecialDegree { j: 2, p: 1, q: 2 };
        let z2 = SpecialDegree { j: 0, p: 1, q: 2 };
        let z3 = SpecialDegree { j: 0, p: 2, q: 3 };
        for (a, b) in [(z1, z2), (z1, z3)] {
            let r = special_degree_cup(&c, a, b, 12, &cfg).map_err(|e| e.to_string()).unwrap();
            assert!(matches!(r, SpecialCup::Computed { t1_dims: (1, 1), .. }));
            assert!(!r.is_zero());
        }
        let r = special_degree_cup(&c, z2, z3, 12, &cfg).unwrap();
        assert!(matches!(r, SpecialCup::CertifiedZero { .. }));
    }
}

//! The cup product of two additive seeds computed through explicit cochains:
//! the 2-cochain `C`, per-ray corrections `G_j = h_j + F_j` with `dG_j = C_j`,
//! and the class of `(G_j - G_{j+1})` in the span complex of degree `R + S`.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::cone::{Cone, Face};
use crate::cup::{AdditiveSeed, CupClass};
use crate::degree_complex::{DegreeComplex, SpanConfig};
use crate::error::{Error, Result};
use crate::lattice::{pair_unchecked, q, solve, MVector, RatSubspace, Q};

/// The cochains attached to a pair of seeds of degrees `R` and `S`.
pub struct CupFunctions<'a> {
    pub cone: &'a Cone,
    pub xi: &'a AdditiveSeed,
    pub mu: &'a AdditiveSeed,
    pub total: MVector,
}

impl<'a> CupFunctions<'a> {
    pub fn new(cone: &'a Cone, xi: &'a AdditiveSeed, mu: &'a AdditiveSeed) -> Self {
        let total = xi.degree.add(&mu.degree);
        CupFunctions { cone, xi, mu, total }
    }

    pub fn r(&self) -> &MVector {
        &self.xi.degree
    }

    pub fn s(&self) -> &MVector {
        &self.mu.degree
    }

    pub fn xi0(&self, l: &MVector) -> Q {
        self.xi.extended(self.cone, l)
    }

    pub fn mu0(&self, l: &MVector) -> Q {
        self.mu.extended(self.cone, l)
    }

    fn d1(&self, f: impl Fn(&MVector) -> Q, a: &MVector, b: &MVector) -> Q {
        if !self.cone.contains(a) || !self.cone.contains(b) {
            return Q::zero();
        }
        f(a) + f(b) - f(&a.add(b))
    }

    pub fn dxi0(&self, a: &MVector, b: &MVector) -> Q {
        self.d1(|l| self.xi0(l), a, b)
    }

    pub fn dmu0(&self, a: &MVector, b: &MVector) -> Q {
        self.d1(|l| self.mu0(l), a, b)
    }

    fn c_formula(&self, x: impl Fn(&MVector) -> Q, m: impl Fn(&MVector) -> Q, a: &MVector, b: &MVector) -> Q {
        if !self.cone.contains(a) || !self.cone.contains(b) {
            return Q::zero();
        }
        let ab = a.add(b);
        let dx = x(a) + x(b) - x(&ab);
        let dm = m(a) + m(b) - m(&ab);
        x(a) * m(b) + x(b) * m(a) - dx * m(&ab.sub(self.r())) - dm * x(&ab.sub(self.s()))
    }

    /// `C(l1, l2)`, whose coboundary is `[dxi^0, dmu^0]`.
    pub fn c(&self, a: &MVector, b: &MVector) -> Q {
        self.c_formula(|l| self.xi0(l), |l| self.mu0(l), a, b)
    }

    pub fn in_k(&self, j: usize, l: &MVector) -> bool {
        self.cone.contains(l) && self.cone.in_k_set(&self.total, Face::Ray(j), l)
    }

    pub fn xi_j(&self, j: usize, l: &MVector) -> Q {
        if self.in_k(j, l) {
            self.xi.tilde(j, l)
        } else {
            Q::zero()
        }
    }

    pub fn mu_j(&self, j: usize, l: &MVector) -> Q {
        if self.in_k(j, l) {
            self.mu.tilde(j, l)
        } else {
            Q::zero()
        }
    }

    pub fn xi0_j(&self, j: usize, l: &MVector) -> Q {
        if self.cone.contains(&l.sub(self.r())) {
            Q::zero()
        } else {
            self.xi_j(j, l)
        }
    }

    pub fn mu0_j(&self, j: usize, l: &MVector) -> Q {
        if self.cone.contains(&l.sub(self.s())) {
            Q::zero()
        } else {
            self.mu_j(j, l)
        }
    }

    pub fn h(&self, j: usize, l: &MVector) -> Q {
        let (x, m) = (self.xi_j(j, l), self.mu_j(j, l));
        -(&x * &m) + self.xi_j(j, &l.sub(self.s())) * &m + self.mu_j(j, &l.sub(self.r())) * x
    }

    /// The model cochain `C^0_j`, which equals `dh_j`.
    pub fn c0(&self, j: usize, a: &MVector, b: &MVector) -> Q {
        self.c_formula(|l| self.xi0_j(j, l), |l| self.mu0_j(j, l), a, b)
    }

    /// `(K^{2R}_{a_j} \ K^R_{a_j}) ∩ K^R_{a_{j±1}}` for the two neighbours.
    pub fn exceptional(&self, j: usize, l: &MVector, forward: bool) -> bool {
        let n = self.cone.num_rays();
        let r = self.r();
        let aj = self.cone.ray(j);
        let k = pair_unchecked(aj, r);
        let v = pair_unchecked(aj, l);
        let other = if forward { (j + 1) % n } else { (j + n - 1) % n };
        let ao = self.cone.ray(other);
        self.cone.contains(l) && k <= v && v < 2 * k && pair_unchecked(ao, l) < pair_unchecked(ao, r)
    }

    /// `F_j` for seeds built from `t, s` in `V` with `R = S = R*`: on the
    /// exceptional lines it is `xi(c) s_e + mu(c) t_e + 2 t_e s_e` and
    /// `-xi(c) s_e - mu(c) t_e + 2 t_e s_e`, with `e` the edge of the line.
    pub fn f_explicit(&self, j: usize, l: &MVector) -> Option<Q> {
        let t = self.xi.t.as_ref()?;
        let s = self.mu.t.as_ref()?;
        let n = self.cone.num_rays();
        let edges = self.cone.edge_data();
        let pd = |e: usize| q(pair_unchecked(&edges[e].0, l));
        let mut out = Q::zero();
        if self.exceptional(j, l, true) {
            out -= (self.xi0(l) * &s[j] + self.mu0(l) * &t[j]) * pd(j);
            out += q(2) * &t[j] * &s[j];
        }
        if self.exceptional(j, l, false) {
            let e = (j + n - 1) % n;
            out += (self.xi0(l) * &s[e] + self.mu0(l) * &t[e]) * pd(e);
            out += q(2) * &t[e] * &s[e];
        }
        Some(out)
    }
}

/// Per-ray data of a pipeline run.
#[derive(Clone, Debug)]
pub struct RayTrace {
    pub points: usize,
    pub free_values: usize,
    pub exceptional_forward: Vec<MVector>,
    pub exceptional_backward: Vec<MVector>,
    pub defect_pairs: usize,
    pub h: BTreeMap<MVector, Q>,
    pub f: BTreeMap<MVector, Q>,
    pub g: BTreeMap<MVector, Q>,
}

#[derive(Clone, Debug)]
pub struct PipelineTrace {
    pub r: MVector,
    pub s: MVector,
    pub window: i64,
    pub explicit_f: bool,
    pub rays: Vec<RayTrace>,
    pub delta_g: Vec<(Face, Vec<Q>)>,
    pub cochain: Vec<Q>,
}

#[derive(Clone, Debug, Default)]
struct Affine {
    c: Q,
    v: BTreeMap<usize, Q>,
}

impl Affine {
    fn var(i: usize) -> Self {
        Affine { c: Q::zero(), v: BTreeMap::from([(i, q(1))]) }
    }
    fn axpy(&mut self, k: &Q, o: &Affine) {
        self.c += k * &o.c;
        for (i, x) in &o.v {
            let e = self.v.entry(*i).or_insert_with(Q::zero);
            *e += k * x;
            if e.is_zero() {
                self.v.remove(i);
            }
        }
    }
}

/// Incrementally reduced system of affine equations `form = 0`.
struct Echelon {
    rows: Vec<(usize, Affine)>,
}

impl Echelon {
    fn push(&mut self, mut a: Affine) -> Result<()> {
        for (p, row) in &self.rows {
            if let Some(k) = a.v.get(p).cloned() {
                a.axpy(&-k, row);
            }
        }
        let Some((&p, lead)) = a.v.iter().next() else {
            if a.c.is_zero() {
                return Ok(());
            }
            return Err(Error::IdentityViolation("dF_j = C_j - dh_j has no solution".into()));
        };
        let inv = q(1) / lead.clone();
        let mut norm = Affine::default();
        norm.axpy(&inv, &a);
        for (_, row) in self.rows.iter_mut() {
            if let Some(k) = row.v.get(&p).cloned() {
                row.axpy(&-k, &norm);
            }
        }
        self.rows.push((p, norm));
        Ok(())
    }
}

fn span_dim(rank: usize, pts: &[&MVector]) -> usize {
    let v: Vec<Vec<i64>> = pts.iter().map(|p| p.0.clone()).collect();
    RatSubspace::span_int(rank, &v).dim()
}

/// Solves `dF = E` on the points of `K` in the window, free values set to zero.
fn solve_f(points: &[&MVector], e: impl Fn(&MVector, &MVector) -> Q, h: i64, cone: &Cone) -> Result<(BTreeMap<MVector, Q>, usize)> {
    let index: HashMap<&MVector, usize> = points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut forms: Vec<Affine> = Vec::with_capacity(points.len());
    let mut nfree = 0;
    let mut sys = Echelon { rows: Vec::new() };
    for (i, p) in points.iter().enumerate() {
        let mut form = None;
        if !p.is_zero() {
            for (k, a) in points[..i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                if let Some(&m) = index.get(&p.sub(a)) {
                    if m < i && !points[m].is_zero() {
                        let mut f = forms[k].clone();
                        f.axpy(&q(1), &forms[m]);
                        f.c -= e(a, points[m]);
                        form = Some(f);
                        break;
                    }
                }
            }
        }
        forms.push(form.unwrap_or_else(|| {
            nfree += 1;
            Affine::var(nfree - 1)
        }));
    }
    for (i, a) in points.iter().enumerate() {
        for b in &points[i..] {
            let s = a.add(b);
            if cone.height(&s) > h {
                continue;
            }
            if let Some(&k) = index.get(&s) {
                let mut f = forms[index[a]].clone();
                f.axpy(&q(1), &forms[index[b]]);
                f.axpy(&q(-1), &forms[k]);
                f.c -= e(a, b);
                sys.push(f)?;
            }
        }
    }
    let kernel = nfree - sys.rows.len();
    let expected = span_dim(cone.rank(), points);
    if kernel > expected {
        return Err(Error::WindowTooSmall(format!(
            "additive functions on a ray set have {kernel} free values, expected {expected}"
        )));
    }
    let mut val = vec![Q::zero(); nfree];
    for (p, row) in &sys.rows {
        val[*p] = -row.c.clone();
    }
    let table = points
        .iter()
        .zip(&forms)
        .map(|(p, f)| {
            let mut x = f.c.clone();
            for (i, k) in &f.v {
                x += k * &val[*i];
            }
            ((*p).clone(), x)
        })
        .collect();
    Ok((table, nfree))
}

/// Computes `xi ∪ mu` as a class of the span complex in degree `R + S`,
/// working in the window of height `window`.
pub fn pipeline_cup(
    cone: &Cone,
    xi: &AdditiveSeed,
    mu: &AdditiveSeed,
    window: i64,
    cfg: &SpanConfig,
) -> Result<(CupClass, PipelineTrace)> {
    let n = cone.num_rays();
    if xi.b.len() != n || mu.b.len() != n {
        return Err(Error::Dimension { expected: n, got: xi.b.len().min(mu.b.len()) });
    }
    let fns = CupFunctions::new(cone, xi, mu);
    let complex = DegreeComplex::new(cone, &fns.total, cfg)?;
    let pts = cone.lattice_points(window);
    let explicit = xi.t.is_some() && mu.t.is_some() && xi.degree == mu.degree;
    let mut rays = Vec::with_capacity(n);
    for j in 0..n {
        let kj: Vec<&MVector> = pts.iter().filter(|l| fns.in_k(j, l)).collect();
        let h: BTreeMap<MVector, Q> = kj.iter().map(|l| ((*l).clone(), fns.h(j, l))).collect();
        let fwd: Vec<MVector> = pts.iter().filter(|l| fns.exceptional(j, l, true)).cloned().collect();
        let bwd: Vec<MVector> = pts.iter().filter(|l| fns.exceptional(j, l, false)).cloned().collect();
        let e = |a: &MVector, b: &MVector| {
            fns.c(a, b) - (h[a].clone() + h[b].clone() - h[&a.add(b)].clone())
        };
        let (f, free) = if explicit {
            for set in [&fwd, &bwd] {
                if !set.is_empty() && set.len() < 3 {
                    return Err(Error::WindowTooSmall(format!(
                        "exceptional set of ray {} has {} points in the window",
                        j + 1,
                        set.len()
                    )));
                }
            }
            let f = kj.iter().map(|l| ((*l).clone(), fns.f_explicit(j, l).unwrap())).collect();
            (f, 0)
        } else {
            solve_f(&kj, e, window, cone)?
        };
        let g: BTreeMap<MVector, Q> = h.iter().map(|(l, x)| (l.clone(), x + &f[l])).collect();
        let mut defect_pairs = 0;
        for (i, a) in kj.iter().enumerate() {
            for b in &kj[i..] {
                let s = a.add(b);
                let Some(gs) = g.get(&s) else { continue };
                if cone.height(&s) > window {
                    continue;
                }
                let c = fns.c(a, b);
                if c != fns.c0(j, a, b) {
                    defect_pairs += 1;
                }
                if g[*a].clone() + &g[*b] - gs != c {
                    return Err(Error::IdentityViolation(format!(
                        "dG_{} differs from C_{} at ({a}, {b})",
                        j + 1,
                        j + 1
                    )));
                }
            }
        }
        rays.push(RayTrace {
            points: kj.len(),
            free_values: free,
            exceptional_forward: fwd,
            exceptional_backward: bwd,
            defect_pairs,
            h,
            f,
            g,
        });
    }
    let rank = cone.rank();
    let faces = cone.faces(2);
    let mut delta_g = Vec::with_capacity(faces.len());
    let mut cochain = Vec::new();
    for (idx, &tau) in faces.iter().enumerate() {
        let k: Vec<&MVector> = pts
            .iter()
            .filter(|l| cone.in_k_set(&fns.total, tau, l))
            .collect();
        let expected = complex.spans[2][idx].space.dim();
        if span_dim(rank, &k) < expected {
            return Err(Error::WindowTooSmall(format!("{} spans too little in the window", tau.label())));
        }
        let members = cone.face_rays(tau);
        let value = |l: &MVector| -> Q {
            members
                .iter()
                .map(|&j| q(cone.incidence(Face::Ray(j), tau)) * &rays[j].g[l])
                .sum()
        };
        let mat: Vec<Vec<Q>> = k.iter().map(|l| l.to_q()).collect();
        let rhs: Vec<Q> = k.iter().map(|l| value(l)).collect();
        let b = if k.is_empty() {
            vec![Q::zero(); rank]
        } else {
            solve(&mat, rank, &rhs).ok_or_else(|| {
                Error::IdentityViolation(format!("δG is not additive on {}", tau.label()))
            })?
        };
        cochain.extend(b.iter().cloned());
        delta_g.push((tau, b));
    }
    let class = complex.normal_form(2, &cochain)?;
    let trace = PipelineTrace {
        r: xi.degree.clone(),
        s: mu.degree.clone(),
        window,
        explicit_f: explicit,
        rays,
        delta_g,
        cochain,
    };
    Ok((class, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::Polytope2;
    use crate::cup::{cup_setup, seed_from_t, DeformationParam};
    use crate::lattice::qf;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn poly(v: Vec<[i64; 2]>) -> Cone {
        Cone::over_polytope(&Polytope2::new(v).unwrap()).unwrap()
    }

    #[test]
    fn explicit_and_generic_agree_with_closed_form() {
        let cfg = SpanConfig::default();
        let mut rng = StdRng::seed_from_u64(17);
        for c in [
            Cone::over_polytope(&Polytope2::hexagon()).unwrap(),
            Cone::over_polytope(&Polytope2::unit_square()).unwrap(),
            poly(vec![[0, 0], [2, 0], [1, 1], [0, 1]]),
        ] {
            let rs = c.gorenstein_degree().unwrap().clone();
            let (v, model) = cup_setup(&c, &cfg).unwrap();
            for _ in 0..2 {
                let mut pick = || {
                    let x: Vec<Q> = (0..v.dim()).map(|_| qf(rng.gen_range(-3..4), 1)).collect();
                    DeformationParam::new(&v, v.combine(&x)).unwrap()
                };
                let (t, s) = (pick(), pick());
                let xi = seed_from_t(&c, &t, &rs).unwrap();
                let mu = seed_from_t(&c, &s, &rs).unwrap();
                let (cls, trace) = pipeline_cup(&c, &xi, &mu, 10, &cfg).map_err(|e| e.to_string()).unwrap();
                assert!(trace.explicit_f);
                let closed = crate::cup::cup_closed_form(&c, &model, &t, &s).unwrap();
                let neg: Vec<Q> = closed.residue.iter().map(|x| -x).collect();
                assert_eq!(cls.residue, neg);
                let gen_xi = AdditiveSeed::new(rs.clone(), xi.b.clone());
                let gen_mu = AdditiveSeed::new(rs.clone(), mu.b.clone());
                let (gcls, gtrace) = pipeline_cup(&c, &gen_xi, &gen_mu, 10, &cfg).unwrap();
                assert!(!gtrace.explicit_f);
                assert_eq!(gcls.residue, cls.residue);
            }
        }
    }

    #[test]
    fn model_cochain_identity() {
        let c = Cone::over_polytope(&Polytope2::hexagon()).unwrap();
        let rs = c.gorenstein_degree().unwrap().clone();
        let (v, _) = cup_setup(&c, &SpanConfig::default()).unwrap();
        let t = DeformationParam::new(&v, v.combine(&[q(1), q(-2), q(0), q(3)])).unwrap();
        let xi = seed_from_t(&c, &t, &rs).unwrap();
        let fns = CupFunctions::new(&c, &xi, &xi);
        let pts = c.lattice_points(5);
        for j in 0..6 {
            for a in pts.iter().filter(|l| fns.in_k(j, l)) {
                for b in pts.iter().filter(|l| fns.in_k(j, l) && fns.in_k(j, &l.add(a))) {
                    let dh = fns.h(j, a) + fns.h(j, b) - fns.h(j, &a.add(b));
                    assert_eq!(dh, fns.c0(j, a, b));
                }
            }
        }
    }
}

//! Brute-force cochains on finite truncations of the dual semigroup: windows,
//! tables, the differential, shuffle and Hodge projections, the Gerstenhaber
//! bracket, coboundary tests and pointwise identity checks.

use std::collections::HashMap;

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::cone::{Cone, Face};
use crate::cup::AdditiveSeed;
use crate::degree_complex::{DegreeComplex, SpanConfig};
use crate::error::{Error, Result};
use crate::lattice::{q, qf, solve, MVector, Q};
use crate::pipeline::CupFunctions;

/// The points of the dual semigroup of height at most `height`.
#[derive(Clone, Debug)]
pub struct Window {
    pub cone: Cone,
    pub height: i64,
    pub points: Vec<MVector>,
    index: HashMap<MVector, u32>,
}

pub type Tuple = [u32; 3];

impl Window {
    /// Enumerates the window and certifies that it is monoid-like.
    pub fn new(cone: &Cone, height: i64) -> Result<Self> {
        if height < 0 {
            return Err(Error::Input("window height must be nonnegative".into()));
        }
        let points = cone.lattice_points(height);
        let index = points.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let w = Window { cone: cone.clone(), height, points, index };
        for a in &w.points {
            for b in &w.points {
                let d = a.sub(b);
                if w.cone.contains(&d) && !w.contains(&d) {
                    return Err(Error::IdentityViolation(format!("window is not monoid-like at {a} - {b}")));
                }
            }
        }
        Ok(w)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, l: &MVector) -> bool {
        self.index.contains_key(l)
    }

    pub fn index_of(&self, l: &MVector) -> Option<u32> {
        self.index.get(l).copied()
    }

    pub fn point(&self, i: u32) -> &MVector {
        &self.points[i as usize]
    }

    pub fn in_lambda(&self, l: &MVector) -> bool {
        self.cone.contains(l)
    }

    /// Certifies that `W ∩ Λ(R)` is full in `W`.
    pub fn certify_full(&self, r: &MVector) -> Result<()> {
        let shifted = |l: &MVector| self.cone.contains(&l.sub(r));
        for a in self.points.iter().filter(|l| shifted(l)) {
            for b in &self.points {
                let s = a.add(b);
                if self.contains(&s) && !shifted(&s) {
                    return Err(Error::IdentityViolation(format!("W ∩ Λ({r}) is not full at {a} + {b}")));
                }
            }
        }
        Ok(())
    }

    /// `S_n(W)`: tuples of window points whose sum lies in the window.
    pub fn tuples(&self, n: usize) -> Vec<Tuple> {
        let mut out = Vec::new();
        let hs: Vec<i64> = self.points.iter().map(|p| self.cone.height(p)).collect();
        let m = self.points.len() as u32;
        match n {
            1 => out.extend((0..m).map(|i| [i, u32::MAX, u32::MAX])),
            2 => {
                for i in 0..m {
                    for j in 0..m {
                        if hs[i as usize] + hs[j as usize] <= self.height {
                            out.push([i, j, u32::MAX]);
                        }
                    }
                }
            }
            3 => {
                for i in 0..m {
                    for j in 0..m {
                        let hij = hs[i as usize] + hs[j as usize];
                        if hij > self.height {
                            continue;
                        }
                        for k in 0..m {
                            if hij + hs[k as usize] <= self.height {
                                out.push([i, j, k]);
                            }
                        }
                    }
                }
            }
            _ => {}
        }
        out
    }

    pub fn args(&self, t: &Tuple, n: usize) -> Vec<MVector> {
        t[..n].iter().map(|&i| self.point(i).clone()).collect()
    }

    fn key(&self, args: &[MVector]) -> Option<Tuple> {
        let mut t = [u32::MAX; 3];
        for (slot, a) in t.iter_mut().zip(args) {
            *slot = self.index_of(a)?;
        }
        Some(t)
    }
}

/// A cochain of arity `1..=3` stored as a table on `S_n(W)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    pub arity: usize,
    pub degree: Option<MVector>,
    pub hodge: Option<usize>,
    table: HashMap<Tuple, Q>,
}

impl Cochain {
    pub fn zero(arity: usize) -> Self {
        Cochain { arity, degree: None, hodge: None, table: HashMap::new() }
    }

    pub fn from_fn(w: &Window, arity: usize, mut f: impl FnMut(&[MVector]) -> Q) -> Self {
        let mut table = HashMap::new();
        for t in w.tuples(arity) {
            let v = f(&w.args(&t, arity));
            if !v.is_zero() {
                table.insert(t, v);
            }
        }
        Cochain { arity, degree: None, hodge: None, table }
    }

    /// Integer values in `-range..=range` divided by `1..=3`.
    pub fn random<G: Rng>(w: &Window, arity: usize, rng: &mut G, range: i64) -> Self {
        Cochain::from_fn(w, arity, |_| qf(rng.gen_range(-range..=range), rng.gen_range(1..=3)))
    }

    pub fn with_degree(mut self, r: MVector) -> Self {
        self.degree = Some(r);
        self
    }

    pub fn with_hodge(mut self, i: usize) -> Self {
        self.hodge = Some(i);
        self
    }

    /// Value at `args`; zero when an argument leaves the semigroup or the tuple
    /// leaves `S_n(W)`.
    pub fn value(&self, w: &Window, args: &[MVector]) -> Q {
        match w.key(args) {
            Some(k) => self.table.get(&k).cloned().unwrap_or_else(Q::zero),
            None => Q::zero(),
        }
    }

    pub fn get(&self, t: &Tuple) -> Q {
        self.table.get(t).cloned().unwrap_or_else(Q::zero)
    }

    pub fn support_size(&self) -> usize {
        self.table.len()
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    pub fn scale(&self, k: &Q) -> Cochain {
        let table = if k.is_zero() {
            HashMap::new()
        } else {
            self.table.iter().map(|(t, v)| (*t, v * k)).collect()
        };
        Cochain { table, ..self.clone() }
    }

    pub fn add(&self, o: &Cochain) -> Cochain {
        let mut table = self.table.clone();
        for (t, v) in &o.table {
            let e = table.entry(*t).or_insert_with(Q::zero);
            *e += v;
            if e.is_zero() {
                table.remove(t);
            }
        }
        Cochain { arity: self.arity, degree: self.degree.clone(), hodge: None, table }
    }
}

/// Evaluates the differential of `f` (arity `n`) at an `(n+1)`-tuple.
pub fn d_at(f: impl Fn(&[MVector]) -> Q, args: &[MVector]) -> Q {
    let n = args.len();
    let mut out = f(&args[1..]);
    for i in 0..n - 1 {
        let mut merged: Vec<MVector> = args[..i].to_vec();
        merged.push(args[i].add(&args[i + 1]));
        merged.extend_from_slice(&args[i + 2..]);
        let v = f(&merged);
        if i % 2 == 0 {
            out -= v;
        } else {
            out += v;
        }
    }
    let last = f(&args[..n - 1]);
    if n % 2 == 0 {
        out += last;
    } else {
        out -= last;
    }
    out
}

pub fn differential(w: &Window, phi: &Cochain) -> Cochain {
    let out = Cochain::from_fn(w, phi.arity + 1, |a| d_at(|x| phi.value(w, x), a));
    Cochain { degree: phi.degree.clone(), ..out }
}

/// `s_{i,n-i}` as argument orders with signs.
pub fn shuffle_terms(i: usize, n: usize) -> Vec<(Vec<usize>, i64)> {
    match (i, n) {
        (1, 2) => vec![(vec![0, 1], 1), (vec![1, 0], -1)],
        (1, 3) => vec![(vec![0, 1, 2], 1), (vec![1, 0, 2], -1), (vec![1, 2, 0], 1)],
        (2, 3) => vec![(vec![0, 1, 2], 1), (vec![0, 2, 1], -1), (vec![2, 0, 1], 1)],
        _ => Vec::new(),
    }
}

/// `s_n = sum_i s_{i,n-i}` applied to a function of `n` arguments.
pub fn s_at(f: &dyn Fn(&[MVector]) -> Q, args: &[MVector]) -> Q {
    let n = args.len();
    (1..n)
        .flat_map(|i| shuffle_terms(i, n))
        .map(|(perm, sign)| {
            let permuted: Vec<MVector> = perm.iter().map(|&k| args[k].clone()).collect();
            q(sign) * f(&permuted)
        })
        .sum()
}

/// `phi ∘ s_n`.
pub fn apply_s(w: &Window, phi: &Cochain) -> Cochain {
    Cochain::from_fn(w, phi.arity, |a| s_at(&|x: &[MVector]| phi.value(w, x), a))
}

/// Coefficients `c_k` with `e_n(i) = sum_k c_k s_n^k`.
pub fn projector_coefficients(n: usize, i: usize) -> Result<Vec<Q>> {
    Ok(match (n, i) {
        (2, 1) => vec![q(1), qf(-1, 2)],
        (2, 2) => vec![q(0), qf(1, 2)],
        (3, 1) => vec![q(1), qf(-2, 3), qf(1, 12)],
        (3, 2) => vec![q(0), qf(3, 4), qf(-1, 8)],
        (3, 3) => vec![q(0), qf(-1, 12), qf(1, 24)],
        _ => return Err(Error::Domain(format!("no Hodge projector e_{n}({i})"))),
    })
}

/// The Hodge projection `e_n(i) phi`.
pub fn hodge_projection(w: &Window, phi: &Cochain, i: usize) -> Result<Cochain> {
    let coeffs = projector_coefficients(phi.arity, i)?;
    let mut power = phi.clone();
    let mut out = Cochain::zero(phi.arity);
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 {
            power = apply_s(w, &power);
        }
        out = out.add(&power.scale(c));
    }
    out.degree = phi.degree.clone();
    out.hodge = Some(i);
    Ok(out)
}

/// Checks `phi ∘ s_n = (2^i - 2) phi` on every tuple.
pub fn hodge_eigen_check(w: &Window, phi: &Cochain, i: usize) -> bool {
    let lambda = q((1 << i) - 2);
    apply_s(w, phi).table == phi.scale(&lambda).table
}

/// The bracket of 2-cochains of degrees `r` (for `f`) and `s` (for `g`) at a triple.
pub fn bracket_at(
    cone: &Cone,
    f: &dyn Fn(&[MVector]) -> Q,
    g: &dyn Fn(&[MVector]) -> Q,
    r: &MVector,
    s: &MVector,
    l: &[MVector],
) -> Q {
    let ev = |h: &dyn Fn(&[MVector]) -> Q, a: MVector, b: MVector| {
        if cone.contains(&a) && cone.contains(&b) {
            h(&[a, b])
        } else {
            Q::zero()
        }
    };
    let l12 = l[0].add(&l[1]);
    let l23 = l[1].add(&l[2]);
    ev(f, l12.sub(s), l[2].clone()) * ev(g, l[0].clone(), l[1].clone())
        - ev(f, l[0].clone(), l23.sub(s)) * ev(g, l[1].clone(), l[2].clone())
        + ev(g, l12.sub(r), l[2].clone()) * ev(f, l[0].clone(), l[1].clone())
        - ev(g, l[0].clone(), l23.sub(r)) * ev(f, l[1].clone(), l[2].clone())
}

pub fn bracket(w: &Window, f: &Cochain, g: &Cochain, r: &MVector, s: &MVector) -> Cochain {
    let fe = |x: &[MVector]| f.value(w, x);
    let ge = |x: &[MVector]| g.value(w, x);
    let out = Cochain::from_fn(w, 3, |l| bracket_at(&w.cone, &fe, &ge, r, s, l));
    out.with_degree(r.add(s))
}

/// Result of solving `d psi = phi` over the window.
#[derive(Clone, Debug)]
pub struct Coboundary {
    pub exact: bool,
    pub preimage: Option<Cochain>,
    pub uses_outer_shell: bool,
}

/// Decides whether a 2-cochain is `d` of a 1-cochain on the window, the
/// 1-cochain being supported on `Λ(R)` when a degree is given.
pub fn is_coboundary(w: &Window, phi: &Cochain, degree: Option<&MVector>) -> Result<Coboundary> {
    if phi.arity != 2 {
        return Err(Error::Domain("coboundary tests are implemented for 2-cochains".into()));
    }
    let allowed: Vec<bool> = w
        .points
        .iter()
        .map(|l| degree.map_or(true, |r| w.cone.contains(&l.sub(r))))
        .collect();
    let vars: Vec<usize> = (0..w.len()).filter(|&i| allowed[i]).collect();
    let col: HashMap<usize, usize> = vars.iter().enumerate().map(|(c, &i)| (i, c)).collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for t in w.tuples(2) {
        let a = w.point(t[0]);
        let b = w.point(t[1]);
        let s = w.index_of(&a.add(b)).unwrap() as usize;
        let mut row = vec![Q::zero(); vars.len()];
        for (idx, sign) in [(t[0] as usize, 1), (t[1] as usize, 1), (s, -1)] {
            if let Some(&c) = col.get(&idx) {
                row[c] += q(sign);
            }
        }
        rows.push(row);
        rhs.push(phi.get(&t));
    }
    let Some(sol) = solve(&rows, vars.len(), &rhs) else {
        return Ok(Coboundary { exact: false, preimage: None, uses_outer_shell: false });
    };
    let mut values: HashMap<MVector, Q> = HashMap::new();
    let mut outer = false;
    for (c, &i) in vars.iter().enumerate() {
        if !sol[c].is_zero() {
            outer |= w.cone.height(w.point(i as u32)) == w.height;
            values.insert(w.point(i as u32).clone(), sol[c].clone());
        }
    }
    let psi = Cochain::from_fn(w, 1, |a| values.get(&a[0]).cloned().unwrap_or_else(Q::zero));
    Ok(Coboundary { exact: true, preimage: Some(psi), uses_outer_shell: outer })
}

/// Outcome of a tuple-by-tuple comparison.
#[derive(Clone, Debug, Default, Serialize)]
pub struct PointwiseReport {
    pub tuples: usize,
    pub violations: usize,
    pub examples: Vec<String>,
}

impl PointwiseReport {
    pub fn ok(&self) -> bool {
        self.violations == 0
    }

    pub fn record(&mut self, args: &[MVector], lhs: &Q, rhs: &Q) {
        self.tuples += 1;
        if lhs != rhs {
            self.violations += 1;
            if self.examples.len() < 5 {
                let shown: Vec<String> = args.iter().map(|a| a.to_string()).collect();
                self.examples.push(format!("({}): {} vs {}", shown.join(", "), lhs, rhs));
            }
        }
    }

    pub fn merge(&mut self, o: PointwiseReport) {
        self.tuples += o.tuples;
        self.violations += o.violations;
        for e in o.examples {
            if self.examples.len() < 5 {
                self.examples.push(e);
            }
        }
    }
}

/// Compares two functions of `n` arguments on every tuple of `S_n(W)` that
/// passes `filter`.
pub fn verify_pointwise(
    w: &Window,
    n: usize,
    lhs: impl Fn(&[MVector]) -> Q,
    rhs: impl Fn(&[MVector]) -> Q,
    filter: impl Fn(&[MVector]) -> bool,
) -> PointwiseReport {
    let mut rep = PointwiseReport::default();
    for t in w.tuples(n) {
        let a = w.args(&t, n);
        if filter(&a) {
            rep.record(&a, &lhs(&a), &rhs(&a));
        }
    }
    rep
}

/// The identity suites exposed by the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    DdZero,
    SleC,
    Hj,
    BracketCases,
    Hodge,
    BracketSupport,
}

impl Identity {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "dd-zero" => Identity::DdZero,
            "sle-C" | "sle-c" => Identity::SleC,
            "hj" => Identity::Hj,
            "bracket-cases" => Identity::BracketCases,
            "hodge" => Identity::Hodge,
            "bracket-support" => Identity::BracketSupport,
            _ => return Err(Error::Input(format!("unknown identity {s}"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Identity::DdZero => "dd-zero",
            Identity::SleC => "sle-C",
            Identity::Hj => "hj",
            Identity::BracketCases => "bracket-cases",
            Identity::Hodge => "hodge",
            Identity::BracketSupport => "bracket-support",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub height: i64,
    pub instances: usize,
    pub tuples: usize,
    pub violations: usize,
    pub examples: Vec<String>,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.violations == 0
    }
}

/// Degrees near the origin whose first graded piece is nonzero.
pub fn seed_degrees(cone: &Cone, cfg: &SpanConfig, limit: usize) -> Result<Vec<(MVector, DegreeComplex)>> {
    let rank = cone.rank();
    let mut out = Vec::new();
    let box_pts = cone_box(rank, 2);
    for r in box_pts {
        if out.len() >= limit {
            break;
        }
        if cone.pairings(&r).iter().all(|&x| x <= 0) {
            continue;
        }
        let c = DegreeComplex::new(cone, &r, cfg)?;
        if c.dim_h(1) > 0 {
            out.push((r, c));
        }
    }
    Ok(out)
}

fn cone_box(rank: usize, b: i64) -> Vec<MVector> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (-b..=b).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    let mut pts: Vec<MVector> = out.into_iter().map(MVector).collect();
    pts.sort_by_key(|m| (m.0.iter().map(|x| x.abs()).sum::<i64>(), m.clone()));
    pts
}

/// A random additive seed in the degree of `complex`.
pub fn random_seed<G: Rng>(complex: &DegreeComplex, rng: &mut G) -> Result<AdditiveSeed> {
    let h = complex.cohomology(1);
    let mut x = vec![Q::zero(); complex.ambient(1)];
    for rep in &h.representatives {
        let c = qf(rng.gen_range(-4..=4), rng.gen_range(1..=2));
        for (xi, ri) in x.iter_mut().zip(rep) {
            *xi += &c * ri;
        }
    }
    AdditiveSeed::from_cocycle(complex, &x)
}

/// A random alternating bilinear form on `M ⊗ Q`.
pub fn random_skew<G: Rng>(rank: usize, rng: &mut G) -> Vec<Vec<Q>> {
    let mut a = vec![vec![Q::zero(); rank]; rank];
    for i in 0..rank {
        for j in i + 1..rank {
            let v = qf(rng.gen_range(-3..=3), rng.gen_range(1..=2));
            a[i][j] = v.clone();
            a[j][i] = -v;
        }
    }
    a
}

pub fn bilinear(a: &[Vec<Q>], x: &MVector, y: &MVector) -> Q {
    let mut s = Q::zero();
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if x.0[i] != 0 && y.0[j] != 0 {
                s += v * q(x.0[i] * y.0[j]);
            }
        }
    }
    s
}

/// Runs `instances` random instances of an identity on the window of height `height`.
pub fn run_identity<G: Rng>(
    cone: &Cone,
    identity: Identity,
    height: i64,
    instances: usize,
    rng: &mut G,
    cfg: &SpanConfig,
) -> Result<IdentityReport> {
    let w = Window::new(cone, height)?;
    let mut rep = PointwiseReport::default();
    let degrees = match identity {
        Identity::SleC | Identity::Hj | Identity::BracketCases => {
            let d = seed_degrees(cone, cfg, 6)?;
            if d.is_empty() {
                return Err(Error::Domain("no degree with nonzero first cohomology near the origin".into()));
            }
            d
        }
        _ => Vec::new(),
    };
    let tuples3 = w.tuples(3);
    for _ in 0..instances {
        match identity {
            Identity::DdZero => {
                let phi = Cochain::random(&w, 1, rng, 5);
                let psi = Cochain::random(&w, 2, rng, 5);
                for (arity, c) in [(2usize, &phi), (3, &psi)] {
                    let f = |x: &[MVector]| c.value(&w, x);
                    let df = |x: &[MVector]| d_at(f, x);
                    for t in w.tuples(arity + 1) {
                        let a = w.args(&t, arity + 1);
                        rep.record(&a, &d_at(df, &a), &Q::zero());
                    }
                }
            }
            Identity::SleC => {
                let (r, cr) = &degrees[rng.gen_range(0..degrees.len())];
                let (s, cs) = &degrees[rng.gen_range(0..degrees.len())];
                let xi = random_seed(cr, rng)?;
                let mu = random_seed(cs, rng)?;
                let fns = CupFunctions::new(cone, &xi, &mu);
                let dxi = |x: &[MVector]| fns.dxi0(&x[0], &x[1]);
                let dmu = |x: &[MVector]| fns.dmu0(&x[0], &x[1]);
                let c = Cochain::from_fn(&w, 2, |x| fns.c(&x[0], &x[1]));
                for t in &tuples3 {
                    let a = w.args(t, 3);
                    let lhs = d_at(|x| c.value(&w, x), &a);
                    let rhs = bracket_at(cone, &dxi, &dmu, r, s, &a);
                    rep.record(&a, &lhs, &rhs);
                }
            }
            Identity::Hj => {
                let (_, cr) = &degrees[rng.gen_range(0..degrees.len())];
                let (_, cs) = &degrees[rng.gen_range(0..degrees.len())];
                let xi = random_seed(cr, rng)?;
                let mu = random_seed(cs, rng)?;
                let fns = CupFunctions::new(cone, &xi, &mu);
                for j in 0..cone.num_rays() {
                    let h: HashMap<&MVector, Q> =
                        w.points.iter().filter(|l| fns.in_k(j, l)).map(|l| (l, fns.h(j, l))).collect();
                    for t in w.tuples(2) {
                        let a = w.args(&t, 2);
                        let s = a[0].add(&a[1]);
                        let (Some(h0), Some(h1), Some(hs)) = (h.get(&a[0]), h.get(&a[1]), h.get(&s)) else {
                            continue;
                        };
                        rep.record(&a, &(h0 + h1 - hs), &fns.c0(j, &a[0], &a[1]));
                    }
                }
            }
            Identity::BracketCases => {
                let (_, cs) = &degrees[rng.gen_range(0..degrees.len())];
                let mu = random_seed(cs, rng)?;
                let xi = random_skew(cone.rank(), rng);
                let r = MVector(
                    (0..cone.rank()).map(|_| rng.gen_range(-2..=2)).collect(),
                );
                rep.merge(crate::gersten2::case_identity_check(&w, &xi, &r, &mu).pointwise);
            }
            Identity::Hodge => {
                let a = random_skew(cone.rank(), rng);
                let r = w.points[rng.gen_range(0..w.len().min(6))].clone();
                let p = |x: &[MVector]| bilinear(&a, &x[0], &x[1]);
                let pp = Cochain::from_fn(&w, 3, |l| bracket_at(cone, &p, &p, &r, &r, l));
                let e2 = hodge_projection(&w, &pp, 2)?;
                let e3 = hodge_projection(&w, &pp, 3)?;
                for t in &tuples3 {
                    let l = w.args(t, 3);
                    rep.record(&l, &e2.get(t), &Q::zero());
                    let jac: Q = (0..3)
                        .map(|k| {
                            let (x, y, z) = (&l[k], &l[(k + 1) % 3], &l[(k + 2) % 3]);
                            let sh = x.add(y).sub(&r);
                            if cone.contains(&sh) {
                                p(&[x.clone(), y.clone()]) * p(&[sh, z.clone()])
                            } else {
                                Q::zero()
                            }
                        })
                        .sum();
                    rep.record(&l, &e3.get(t), &(qf(4, 3) * jac));
                }
                let f = Cochain::random(&w, 2, rng, 5);
                let sum = hodge_projection(&w, &f, 1)?.add(&hodge_projection(&w, &f, 2)?);
                for t in w.tuples(2) {
                    rep.record(&w.args(&t, 2), &sum.get(&t), &f.get(&t));
                }
            }
            Identity::BracketSupport => {
                let r = w.points[rng.gen_range(0..w.len().min(5))].clone();
                let s = w.points[rng.gen_range(0..w.len().min(5))].clone();
                let supported = |deg: &MVector, x: &[MVector]| cone.contains(&x[0].add(&x[1]).sub(deg));
                let f = Cochain::random(&w, 2, rng, 4);
                let g = Cochain::random(&w, 2, rng, 4);
                let fv = |x: &[MVector]| if supported(&r, x) { f.value(&w, x) } else { Q::zero() };
                let gv = |x: &[MVector]| if supported(&s, x) { g.value(&w, x) } else { Q::zero() };
                let rs = r.add(&s);
                for t in &tuples3 {
                    let l = w.args(t, 3);
                    let sum = l[0].add(&l[1]).add(&l[2]);
                    if !cone.contains(&sum.sub(&rs)) {
                        rep.record(&l, &bracket_at(cone, &fv, &gv, &r, &s, &l), &Q::zero());
                    }
                }
            }
        }
    }
    Ok(IdentityReport {
        identity,
        height,
        instances,
        tuples: rep.tuples,
        violations: rep.violations,
        examples: rep.examples,
    })
}

/// Whether `l` lies in `K^R_tau` (a convenience for reports and examples).
pub fn k_set(cone: &Cone, r: &MVector, face: Face, w: &Window) -> Vec<MVector> {
    w.points.iter().filter(|l| cone.in_k_set(r, face, l)).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::Polytope2;
    use crate::lattice::NVector;
    use rand::{rngs::StdRng, SeedableRng};

    fn example_cone() -> Cone {
        Cone::new(vec![NVector::new(&[-1, 2]), NVector::new(&[1, 2])]).unwrap()
    }

    fn quadrant() -> Cone {
        Cone::new(vec![NVector::new(&[1, 0]), NVector::new(&[0, 1])]).unwrap()
    }

    #[test]
    fn windows() {
        let w = Window::new(&quadrant(), 2).unwrap();
        let mut pts: Vec<Vec<i64>> = w.points.iter().map(|p| p.0.clone()).collect();
        pts.sort();
        assert_eq!(pts, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![2, 0]]);
        assert_eq!(Window::new(&example_cone(), 0).unwrap().points, vec![MVector::new(&[0, 0])]);
        let w = Window::new(&example_cone(), 4).unwrap();
        for p in ["(0,0)", "(2,1)", "(1,1)", "(4,2)", "(3,2)", "(-2,1)", "(-4,2)"] {
            assert!(w.points.iter().any(|x| x.to_string() == p));
        }
        w.certify_full(&MVector::new(&[0, 1])).unwrap();
        assert_eq!(w.tuples(2).len(), w.tuples(2).iter().filter(|t| w.contains(&w.point(t[0]).add(w.point(t[1])))).count());
    }

    fn example_seed() -> AdditiveSeed {
        AdditiveSeed::new(MVector::new(&[0, 1]), vec![vec![q(0), q(0)], vec![q(0), q(1)]])
    }

    #[test]
    fn differential_examples() {
        let c = example_cone();
        let w = Window::new(&c, 4).unwrap();
        let seed = example_seed();
        let xi0 = Cochain::from_fn(&w, 1, |a| seed.extended(&c, &a[0]));
        let d = differential(&w, &xi0);
        assert_eq!(d.value(&w, &[MVector::new(&[1, 1]), MVector::new(&[-1, 1])]), q(1));
        let lin = Cochain::from_fn(&w, 1, |a| q(3 * a[0].0[0] - a[0].0[1]));
        assert!(differential(&w, &lin).is_zero());
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..5 {
            let phi = Cochain::random(&w, 1, &mut rng, 5);
            assert!(differential(&w, &differential(&w, &phi)).is_zero());
        }
        let phi = Cochain::random(&w, 2, &mut rng, 5);
        assert!(differential(&w, &differential(&w, &phi)).is_zero());
    }

    #[test]
    fn hodge_pieces() {
        let w = Window::new(&quadrant(), 4).unwrap();
        let g = |l: &MVector| q(l.0[0] + 2 * l.0[1] + 1);
        let sym = Cochain::from_fn(&w, 2, |a| g(&a[0]) * g(&a[1]));
        assert!(hodge_eigen_check(&w, &sym, 1));
        let skew = Cochain::from_fn(&w, 2, |a| q(a[0].0[0] * a[1].0[1] - a[0].0[1] * a[1].0[0]));
        assert!(hodge_eigen_check(&w, &skew, 2));
        let mut rng = StdRng::seed_from_u64(2);
        let f = Cochain::random(&w, 3, &mut rng, 4);
        for i in 1..=3 {
            let e = hodge_projection(&w, &f, i).unwrap();
            assert!(hodge_eigen_check(&w, &e, i));
        }
        let total = (1..=3).fold(Cochain::zero(3), |acc, i| acc.add(&hodge_projection(&w, &f, i).unwrap()));
        assert_eq!(total.table, f.table);
    }

    #[test]
    fn brackets() {
        let c = example_cone();
        let w = Window::new(&c, 5).unwrap();
        let mut rng = StdRng::seed_from_u64(4);
        let (r, s) = (MVector::new(&[0, 1]), MVector::new(&[1, 1]));
        let f = Cochain::random(&w, 2, &mut rng, 3);
        let g = Cochain::random(&w, 2, &mut rng, 3);
        assert!(bracket(&w, &f, &Cochain::zero(2), &r, &s).is_zero());
        assert_eq!(bracket(&w, &f, &g, &r, &s).table, bracket(&w, &g, &f, &s, &r).table);
    }

    #[test]
    fn coboundaries() {
        let c = example_cone();
        let w = Window::new(&c, 6).unwrap();
        let mut rng = StdRng::seed_from_u64(5);
        let psi = Cochain::random(&w, 1, &mut rng, 4);
        let res = is_coboundary(&w, &differential(&w, &psi), None).unwrap();
        assert!(res.exact);
        assert_eq!(differential(&w, res.preimage.as_ref().unwrap()).table, differential(&w, &psi).table);
        let zero = is_coboundary(&w, &Cochain::zero(2), None).unwrap();
        assert!(zero.exact && zero.preimage.unwrap().is_zero());
        let seed = example_seed();
        let xi0 = Cochain::from_fn(&w, 1, |a| seed.extended(&c, &a[0]));
        let dxi = differential(&w, &xi0);
        assert!(!is_coboundary(&w, &dxi, Some(&seed.degree)).unwrap().exact);
    }

    #[test]
    fn identity_suites_small() {
        let mut rng = StdRng::seed_from_u64(6);
        let cfg = SpanConfig::default();
        let hex = Cone::over_polytope(&Polytope2::hexagon()).unwrap();
        for (cone, h) in [(example_cone(), 6), (hex, 3)] {
            for id in [Identity::DdZero, Identity::SleC, Identity::Hj, Identity::Hodge, Identity::BracketSupport] {
                let rep = run_identity(&cone, id, h, 3, &mut rng, &cfg).unwrap();
                assert!(rep.ok(), "{:?}: {:?}", id, rep.examples);
                assert!(rep.tuples > 0);
            }
        }
    }
}

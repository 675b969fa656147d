//! Skew multi-additive classes and the representative `(δ(B), dB - [ξ, dμ⁰])`
//! of their Gerstenhaber product with first-order classes, together with the
//! zero-product certificate for `A_n` surface singularities.

use num_traits::Zero;
use serde::Serialize;

use crate::cone::{an_generators, an_surface_cone, Cone};
use crate::cup::AdditiveSeed;
use crate::error::{Error, Result};
use crate::lattice::{q, MVector, Q};
use crate::oracle::{bilinear, PointwiseReport, Window};

/// `ξ(x, y)` for an alternating form; `guarded` makes it vanish when an
/// argument leaves the semigroup.
fn xi_eval(cone: &Cone, a: &[Vec<Q>], guarded: bool, x: &MVector, y: &MVector) -> Q {
    if guarded && (!cone.contains(x) || !cone.contains(y)) {
        return Q::zero();
    }
    bilinear(a, x, y)
}

fn det_form() -> Vec<Vec<Q>> {
    vec![vec![q(0), q(1)], vec![q(-1), q(0)]]
}

/// Alternating forms vanishing on window pairs with `λ₁+λ₂ ∈ Λ∖Λ(R)`, checked
/// at heights `h` and `h + 2`. In rank 2 the answer is `{det}` or empty.
pub fn skew_space(cone: &Cone, r: &MVector, h: i64) -> Result<Vec<Vec<Vec<Q>>>> {
    if cone.rank() != 2 {
        return Err(Error::Domain("skew spaces are computed for surfaces".into()));
    }
    for height in [h, h + 2] {
        let w = Window::new(cone, height)?;
        for t in w.tuples(2) {
            let (a, b) = (w.point(t[0]), w.point(t[1]));
            let s = a.add(b);
            if !cone.contains(&s.sub(r)) && a.0[0] * b.0[1] - a.0[1] * b.0[0] != 0 {
                return Ok(Vec::new());
            }
        }
    }
    Ok(vec![det_form()])
}

/// The cochains `B₁`, `B₂` and `B = B₁ - B₂` built from `ξ` (degree `R`) and `μ` (degree `S`).
pub struct BracketRepresentative<'a> {
    pub cone: &'a Cone,
    pub xi: &'a [Vec<Q>],
    pub r: MVector,
    pub mu: &'a AdditiveSeed,
    pub guarded: bool,
}

impl<'a> BracketRepresentative<'a> {
    pub fn new(cone: &'a Cone, xi: &'a [Vec<Q>], r: &MVector, mu: &'a AdditiveSeed, guarded: bool) -> Self {
        BracketRepresentative { cone, xi, r: r.clone(), mu, guarded }
    }

    pub fn s(&self) -> &MVector {
        &self.mu.degree
    }

    pub fn xi(&self, x: &MVector, y: &MVector) -> Q {
        xi_eval(self.cone, self.xi, self.guarded, x, y)
    }

    pub fn mu0(&self, l: &MVector) -> Q {
        self.mu.extended(self.cone, l)
    }

    /// `dμ⁰(x, y) = μ⁰(x) + μ⁰(y) - μ⁰(x + y)`, with `μ⁰` zero off the semigroup.
    pub fn dmu0(&self, x: &MVector, y: &MVector) -> Q {
        if !self.guarded && (!self.cone.contains(x) || !self.cone.contains(y)) {
            return Q::zero();
        }
        self.mu0(x) + self.mu0(y) - self.mu0(&x.add(y))
    }

    pub fn b1(&self, l1: &MVector, l2: &MVector) -> Q {
        let m = l1.add(l2).sub(self.s());
        self.xi(&m, l2) * self.mu0(l1) + self.xi(l1, &m) * self.mu0(l2)
    }

    pub fn b2(&self, l1: &MVector, l2: &MVector) -> Q {
        self.xi(l1, l2) * self.mu0(&l1.add(l2).sub(&self.r))
    }

    pub fn b(&self, l1: &MVector, l2: &MVector) -> Q {
        self.b1(l1, l2) - self.b2(l1, l2)
    }

    pub fn db(&self, l: &[MVector]) -> Q {
        self.b(&l[1], &l[2]) - self.b(&l[0].add(&l[1]), &l[2]) + self.b(&l[0], &l[1].add(&l[2])) - self.b(&l[0], &l[1])
    }

    /// `[ξ, dμ⁰]` with `ξ` in degree `R` and `dμ⁰` in degree `S`.
    pub fn bracket(&self, l: &[MVector]) -> Q {
        let (r, s) = (&self.r, self.s());
        let l12 = l[0].add(&l[1]);
        let l23 = l[1].add(&l[2]);
        self.xi(&l12.sub(s), &l[2]) * self.dmu0(&l[0], &l[1])
            - self.xi(&l[0], &l23.sub(s)) * self.dmu0(&l[1], &l[2])
            + self.dmu0(&l12.sub(r), &l[2]) * self.xi(&l[0], &l[1])
            - self.dmu0(&l[0], &l23.sub(r)) * self.xi(&l[1], &l[2])
    }

    /// Which of the four cases a triple belongs to (0-based) and the defect
    /// `dB - [ξ, dμ⁰]` predicted for it.
    pub fn predicted_defect(&self, l: &[MVector]) -> (usize, Q) {
        let s = self.s();
        let ge = |x: &MVector| self.cone.contains(&x.sub(s));
        let m = l[0].add(&l[1]).add(&l[2]).sub(s);
        let (a, b) = (ge(&l[0].add(&l[1])), ge(&l[1].add(&l[2])));
        let (u1, u2, u3) = (self.mu0(&l[0]), self.mu0(&l[1]), self.mu0(&l[2]));
        let x = |p: &MVector, q: &MVector| self.xi(p, q);
        match (a, b) {
            (true, true) => (0, Q::zero()),
            (false, true) => (1, u1 * (x(&m, &l[1]) + x(&l[1], &l[2])) + u2 * (x(&l[0], &m) - x(&l[0], &l[2]))),
            (true, false) => (2, u2 * (x(&l[0], &l[2]) - x(&m, &l[2])) + u3 * (x(&m, &l[1]) - x(&l[0], &l[1]))),
            (false, false) => (
                3,
                u1 * (x(&m, &l[1]) + x(&l[1], &l[2]))
                    + u2 * (x(&l[0], &m) - x(&m, &l[2]))
                    + u3 * (x(&m, &l[1]) - x(&l[0], &l[1])),
            ),
        }
    }
}

/// Per-case triple counts and violations of the four case identities.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CaseReport {
    pub counts: [usize; 4],
    pub violations: [usize; 4],
    pub pointwise: PointwiseReport,
}

impl CaseReport {
    pub fn ok(&self) -> bool {
        self.pointwise.ok()
    }
}

/// Verifies `dB - [ξ, dμ⁰]` against the case formulas on every triple of the window.
pub fn case_identity_check(w: &Window, xi: &[Vec<Q>], r: &MVector, mu: &AdditiveSeed) -> CaseReport {
    let rep = BracketRepresentative::new(&w.cone, xi, r, mu, true);
    let mut out = CaseReport::default();
    for t in w.tuples(3) {
        let l = w.args(&t, 3);
        let (case, predicted) = rep.predicted_defect(&l);
        let defect = rep.db(&l) - rep.bracket(&l);
        out.counts[case] += 1;
        if defect != predicted {
            out.violations[case] += 1;
        }
        out.pointwise.record(&l, &defect, &predicted);
    }
    out
}

/// `(dim H²₍₁₎(-R), dim H³₍₂₎(-R))` for the `A_n` singularity.
pub fn an_dims(n: i64, r: &MVector) -> Result<(usize, usize)> {
    if n < 1 {
        return Err(Error::Domain("A_n needs n >= 1".into()));
    }
    if r.rank() != 2 {
        return Err(Error::Dimension { expected: 2, got: r.rank() });
    }
    let k = r.0[0];
    let nonzero = r.0[0] == r.0[1] && (2..=n + 1).contains(&k);
    Ok(if nonzero { (1, 1) } else { (0, 0) })
}

/// `μ_k`: `λ_x - λ_y` on `K^{kS₂}_{a₂}`, zero on `K^{kS₂}_{a₁}` and on `Λ(kS₂)`.
pub fn mu_seed(n: i64, k: i64) -> Result<AdditiveSeed> {
    if n < 1 || !(2..=n + 1).contains(&k) {
        return Err(Error::Domain(format!("need 2 <= k <= n + 1, got k = {k}")));
    }
    let s2 = &an_generators(n)[1];
    Ok(AdditiveSeed::new(s2.scale(k), vec![vec![q(0), q(0)], vec![q(1), q(-1)]]))
}

/// One `(k, m)` entry of the `A_n` certificate: `S = kS₂`, `R + S = mS₂`.
#[derive(Clone, Debug, Serialize)]
pub struct SurfaceEntry {
    pub k: i64,
    pub m: i64,
    pub r: Vec<i64>,
    pub skew_dim: usize,
    pub tuples: usize,
    pub db_violations: usize,
    pub pairs: usize,
    pub support_violations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurfaceCertificate {
    pub n: i64,
    pub height: i64,
    pub entries: Vec<SurfaceEntry>,
}

impl SurfaceCertificate {
    pub fn ok(&self) -> bool {
        self.entries.iter().all(|e| e.db_violations == 0 && e.support_violations == 0)
    }
}

/// Certifies that the products `H²₍₂₎ × H²₍₁₎ → H³₍₂₎` of `A_n` vanish.
pub fn verify_surface_zero(n: i64, height: i64) -> Result<SurfaceCertificate> {
    let cone = an_surface_cone(n)?;
    let need = cone.height(&an_generators(n)[1].scale(n + 2));
    if height < need {
        return Err(Error::WindowTooSmall(format!("need height >= {need}, got {height}")));
    }
    let w = Window::new(&cone, height)?;
    let s2 = an_generators(n)[1].clone();
    let triples = w.tuples(3);
    let pairs = w.tuples(2);
    let mut entries = Vec::new();
    for k in 2..=n + 1 {
        let mu = mu_seed(n, k)?;
        mu.verify(&cone, height)?;
        for m in 2..=n + 1 {
            let total = s2.scale(m);
            let r = total.sub(&mu.degree);
            let basis = skew_space(&cone, &r, height)?;
            let mut entry = SurfaceEntry {
                k,
                m,
                r: r.0.clone(),
                skew_dim: basis.len(),
                tuples: 0,
                db_violations: 0,
                pairs: 0,
                support_violations: 0,
            };
            for xi in &basis {
                let rep = BracketRepresentative::new(&cone, xi, &r, &mu, false);
                for t in &triples {
                    let l = w.args(t, 3);
                    entry.tuples += 1;
                    if rep.db(&l) != rep.bracket(&l) {
                        entry.db_violations += 1;
                    }
                }
                for t in &pairs {
                    let (a, b) = (w.point(t[0]), w.point(t[1]));
                    if cone.contains(&a.add(b).sub(&total)) {
                        continue;
                    }
                    entry.pairs += 1;
                    if !rep.b(a, b).is_zero() {
                        entry.support_violations += 1;
                    }
                }
            }
            entries.push(entry);
        }
    }
    Ok(SurfaceCertificate { n, height, entries })
}

//! Rational polyhedral cones of rank 2 and 3: dual generators, faces,
//! Hilbert bases in rank 2, Gorenstein degrees and the sets `K^R_tau`.

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{cross, lattice_length, pair_unchecked, solve, MVector, NVector, Q};

/// A lattice polygon with counterclockwise, strictly convex vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polytope2 {
    pub vertices: Vec<[i64; 2]>,
}

impl Polytope2 {
    pub fn new(vertices: Vec<[i64; 2]>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::Input("a polygon needs at least three vertices".into()));
        }
        for i in 0..n {
            let p = vertices[i];
            let r = vertices[(i + 1) % n];
            for (k, v) in vertices.iter().enumerate() {
                if k == i || k == (i + 1) % n {
                    continue;
                }
                let turn = (r[0] - p[0]) * (v[1] - p[1]) - (r[1] - p[1]) * (v[0] - p[0]);
                if turn <= 0 {
                    return Err(Error::Input(format!(
                        "vertices are not strictly convex in counterclockwise order at {:?}",
                        r
                    )));
                }
            }
        }
        Ok(Polytope2 { vertices })
    }

    pub fn unit_square() -> Self {
        Polytope2 { vertices: vec![[0, 0], [1, 0], [1, 1], [0, 1]] }
    }

    pub fn hexagon() -> Self {
        Polytope2 { vertices: vec![[0, 0], [1, 0], [2, 1], [2, 2], [1, 2], [0, 1]] }
    }

    /// The triangle whose cone gives the affine cone over `P(1,2,3)`.
    pub fn p123_triangle() -> Self {
        Polytope2 { vertices: vec![[-1, -1], [2, -1], [-1, 1]] }
    }
}

/// A face of a cone of rank 2 or 3. `Pair(j)` is spanned by rays `j` and `j+1`
/// (cyclically) and only occurs in rank 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Face {
    Origin,
    Ray(usize),
    Pair(usize),
    Full,
}

impl Face {
    pub fn label(&self) -> String {
        match self {
            Face::Origin => "origin".into(),
            Face::Ray(j) => format!("ray {}", j + 1),
            Face::Pair(j) => format!("face {}", j + 1),
            Face::Full => "full cone".into(),
        }
    }
}

/// A full-dimensional pointed cone given by its primitive rays in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    rays: Vec<NVector>,
    duals: Vec<MVector>,
    r_star: Option<MVector>,
    height: NVector,
    polytope: Option<Polytope2>,
}

impl Cone {
    pub fn new(rays: Vec<NVector>) -> Result<Self> {
        let rank = rays.first().map(|r| r.rank()).unwrap_or(0);
        if !(rank == 2 || rank == 3) {
            return Err(Error::Input("only cones of rank 2 and 3 are supported".into()));
        }
        if let Some(r) = rays.iter().find(|r| r.rank() != rank) {
            return Err(Error::Dimension { expected: rank, got: r.rank() });
        }
        if let Some(r) = rays.iter().find(|r| !r.is_primitive()) {
            return Err(Error::Input(format!("ray {r} is not primitive")));
        }
        let duals = if rank == 2 {
            if rays.len() != 2 {
                return Err(Error::Input("a rank 2 cone needs exactly two rays".into()));
            }
            dual_cone_2d(&rays[0], &rays[1])?.to_vec()
        } else {
            dual_generators_3d(&rays)?
        };
        let r_star = gorenstein_degree(&rays);
        let mut sum = NVector::zero(rank);
        for r in &rays {
            sum = sum.add(r);
        }
        let height = sum.primitive();
        Ok(Cone { rays, duals, r_star, height, polytope: None })
    }

    /// The cone over `P x {1}`.
    pub fn over_polytope(p: &Polytope2) -> Result<Self> {
        let p = Polytope2::new(p.vertices.clone())?;
        let rays = p.vertices.iter().map(|v| NVector::new(&[v[0], v[1], 1])).collect();
        let mut c = Cone::new(rays)?;
        c.polytope = Some(p);
        Ok(c)
    }

    pub fn rank(&self) -> usize {
        self.rays[0].rank()
    }

    pub fn rays(&self) -> &[NVector] {
        &self.rays
    }

    pub fn ray(&self, j: usize) -> &NVector {
        &self.rays[j % self.rays.len()]
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    /// Generators of the dual cone. In rank 3 the `j`-th one vanishes on
    /// rays `j` and `j+1`; in rank 2 the `j`-th one vanishes on ray `j`.
    pub fn dual_generators(&self) -> &[MVector] {
        &self.duals
    }

    pub fn gorenstein_degree(&self) -> Option<&MVector> {
        self.r_star.as_ref()
    }

    pub fn polytope(&self) -> Option<&Polytope2> {
        self.polytope.as_ref()
    }

    /// The height functional, an interior point of the cone.
    pub fn height_vector(&self) -> &NVector {
        &self.height
    }

    pub fn height(&self, m: &MVector) -> i64 {
        pair_unchecked(&self.height, m)
    }

    pub fn pairings(&self, m: &MVector) -> Vec<i64> {
        self.rays.iter().map(|a| pair_unchecked(a, m)).collect()
    }

    pub fn contains(&self, m: &MVector) -> bool {
        self.rays.iter().all(|a| pair_unchecked(a, m) >= 0)
    }

    /// Edge vectors `d_j = a_{j+1} - a_j` with their lattice lengths (rank 3).
    pub fn edge_data(&self) -> Vec<(NVector, u64)> {
        let n = self.rays.len();
        (0..n)
            .map(|j| {
                let d = self.rays[(j + 1) % n].sub(&self.rays[j]);
                let l = lattice_length(&d);
                (d, l)
            })
            .collect()
    }

    pub fn faces(&self, dim: usize) -> Vec<Face> {
        let n = self.rays.len();
        match (dim, self.rank()) {
            (0, _) => vec![Face::Origin],
            (1, _) => (0..n).map(Face::Ray).collect(),
            (2, 2) | (3, 3) => vec![Face::Full],
            (2, 3) => (0..n).map(Face::Pair).collect(),
            _ => Vec::new(),
        }
    }

    pub fn face_rays(&self, f: Face) -> Vec<usize> {
        let n = self.rays.len();
        match f {
            Face::Origin => Vec::new(),
            Face::Ray(j) => vec![j],
            Face::Pair(j) => vec![j, (j + 1) % n],
            Face::Full => (0..n).collect(),
        }
    }

    /// Orientation sign of a codimension one inclusion `tau < tau2`, zero if
    /// `tau` is not a facet of `tau2`.
    pub fn incidence(&self, tau: Face, tau2: Face) -> i64 {
        let n = self.rays.len();
        match (tau, tau2) {
            (Face::Origin, Face::Ray(_)) => 1,
            (Face::Ray(i), Face::Pair(j)) => {
                if i == j {
                    1
                } else if i == (j + 1) % n {
                    -1
                } else {
                    0
                }
            }
            (Face::Ray(i), Face::Full) if self.rank() == 2 => {
                if i == 0 {
                    1
                } else {
                    -1
                }
            }
            (Face::Pair(_), Face::Full) => 1,
            _ => 0,
        }
    }

    /// Membership in `K^R_tau = {l in Lambda : <a,l> < <a,R> for all rays a of tau}`.
    pub fn k_set_member(&self, r: &MVector, face: Face, l: &MVector) -> Result<bool> {
        if l.rank() != self.rank() || r.rank() != self.rank() {
            return Err(Error::Dimension { expected: self.rank(), got: l.rank().min(r.rank()) });
        }
        if !self.contains(l) {
            return Err(Error::Domain(format!("{l} is not in the dual cone")));
        }
        Ok(self.in_k_set(r, face, l))
    }

    pub(crate) fn in_k_set(&self, r: &MVector, face: Face, l: &MVector) -> bool {
        self.face_rays(face)
            .into_iter()
            .all(|j| pair_unchecked(&self.rays[j], l) < pair_unchecked(&self.rays[j], r))
    }

    /// All lattice points of the dual cone with height at most `h`, ordered by
    /// height and then lexicographically.
    pub fn lattice_points(&self, h: i64) -> Vec<MVector> {
        if h < 0 {
            return Vec::new();
        }
        let rank = self.rank();
        let mut lo = vec![0i64; rank];
        let mut hi = vec![0i64; rank];
        for g in &self.duals {
            let hg = self.height(g);
            for i in 0..rank {
                let num = h * g.0[i];
                let (f, c) = (num.div_euclid(hg), -((-num).div_euclid(hg)));
                lo[i] = lo[i].min(f);
                hi[i] = hi[i].max(c);
            }
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            let m = MVector(cur.clone());
            if self.contains(&m) && self.height(&m) <= h {
                out.push(m);
            }
            let mut i = 0;
            loop {
                if i == rank {
                    out.sort_by(|a, b| self.height(a).cmp(&self.height(b)).then(a.cmp(b)));
                    return out;
                }
                cur[i] += 1;
                if cur[i] <= hi[i] {
                    break;
                }
                cur[i] = lo[i];
                i += 1;
            }
        }
    }
}

/// Dual generators of a two-dimensional cone: the first vanishes on `a0`,
/// the second on `a1`, each nonnegative on the other ray.
pub fn dual_cone_2d(a0: &NVector, a1: &NVector) -> Result<[MVector; 2]> {
    if a0.rank() != 2 || a1.rank() != 2 {
        return Err(Error::Input("dual_cone_2d expects rank 2 rays".into()));
    }
    let det = a0.0[0] * a1.0[1] - a0.0[1] * a1.0[0];
    if det == 0 {
        return Err(Error::DegenerateCone(format!("rays {a0} and {a1} are parallel")));
    }
    let orth = |a: &NVector, other: &NVector| {
        let g = MVector::new(&[-a.0[1], a.0[0]]).primitive();
        if pair_unchecked(other, &g) < 0 {
            g.neg()
        } else {
            g
        }
    };
    Ok([orth(a0, a1), orth(a1, a0)])
}

fn dual_generators_3d(rays: &[NVector]) -> Result<Vec<MVector>> {
    let n = rays.len();
    if n < 3 {
        return Err(Error::Input("a rank 3 cone needs at least three rays".into()));
    }
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let (a, b) = (&rays[j], &rays[(j + 1) % n]);
        let c = MVector(cross(&a.0, &b.0).to_vec());
        if c.is_zero() {
            return Err(Error::DegenerateCone(format!("rays {a} and {b} are parallel")));
        }
        let mut s = c.primitive();
        let others: Vec<i64> = (0..n)
            .filter(|&k| k != j && k != (j + 1) % n)
            .map(|k| pair_unchecked(&rays[k], &s))
            .collect();
        if others.iter().all(|&p| p < 0) {
            s = s.neg();
        } else if !others.iter().all(|&p| p > 0) {
            return Err(Error::Input(format!(
                "rays are not the cyclically ordered extremal rays of a pointed cone (at ray {})",
                j + 1
            )));
        }
        out.push(s);
    }
    Ok(out)
}

/// The degree `R*` with `<a_j, R*> = 1` for every ray, if it exists in `M`.
pub fn gorenstein_degree(rays: &[NVector]) -> Option<MVector> {
    let rank = rays.first()?.rank();
    let mat: Vec<Vec<Q>> = rays.iter().map(|a| a.to_q()).collect();
    let rhs = vec![Q::one(); rays.len()];
    let x = solve(&mat, rank, &rhs)?;
    if x.iter().all(|c| c.is_integer()) {
        Some(MVector(x.iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect()))
    } else {
        None
    }
}

/// Minimal generating set of `Lambda = cone^dual ∩ M` for a rank 2 cone, sorted.
pub fn hilbert_basis_2d(cone: &Cone) -> Result<Vec<MVector>> {
    if cone.rank() != 2 {
        return Err(Error::Input("Hilbert bases are only computed in rank 2".into()));
    }
    let g = cone.dual_generators();
    let (g0, g1) = (&g[0], &g[1]);
    let det = g0.0[0] * g1.0[1] - g0.0[1] * g1.0[0];
    let corners = [[0, 0], [g0.0[0], g0.0[1]], [g1.0[0], g1.0[1]], [g0.0[0] + g1.0[0], g0.0[1] + g1.0[1]]];
    let lo = |i: usize| corners.iter().map(|c| c[i]).min().unwrap();
    let hi = |i: usize| corners.iter().map(|c| c[i]).max().unwrap();
    let mut cand = vec![g0.clone(), g1.clone()];
    for x in lo(0)..=hi(0) {
        for y in lo(1)..=hi(1) {
            if x == 0 && y == 0 {
                continue;
            }
            let u = Q::new((x * g1.0[1] - y * g1.0[0]).into(), det.into());
            let v = Q::new((g0.0[0] * y - g0.0[1] * x).into(), det.into());
            let in_unit = |t: &Q| !t.is_negative() && t < &Q::one();
            if in_unit(&u) && in_unit(&v) {
                cand.push(MVector::new(&[x, y]));
            }
        }
    }
    cand.sort();
    cand.dedup();
    let reducible = |l: &MVector| {
        cand.iter().any(|c| c != l && {
            let rest = l.sub(c);
            !rest.is_zero() && cone.contains(&rest)
        })
    };
    let basis: Vec<MVector> = cand.iter().filter(|l| !reducible(l)).cloned().collect();
    Ok(basis)
}

/// The cone of the `A_n` surface singularity `xy = z^{n+1}`. Its semigroup is
/// generated by `(0,1)`, `(1,1)` and `(n+1,n)`.
pub fn an_surface_cone(n: i64) -> Result<Cone> {
    if n < 1 {
        return Err(Error::Domain("A_n needs n >= 1".into()));
    }
    let [r0, r1] = dual_cone_2d(&NVector::new(&[0, 1]), &NVector::new(&[n + 1, n]))?;
    Cone::new(vec![NVector(r0.0), NVector(r1.0)])
}

pub fn an_generators(n: i64) -> [MVector; 3] {
    [MVector::new(&[0, 1]), MVector::new(&[1, 1]), MVector::new(&[n + 1, n])]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[i64]) -> MVector {
        MVector::new(v)
    }

    fn example_cone() -> Cone {
        Cone::new(vec![NVector::new(&[-1, 2]), NVector::new(&[1, 2])]).unwrap()
    }

    #[test]
    fn polygon_cones() {
        let sq = Cone::over_polytope(&Polytope2::unit_square()).unwrap();
        let rays: Vec<Vec<i64>> = sq.rays().iter().map(|r| r.0.clone()).collect();
        assert_eq!(rays, vec![vec![0, 0, 1], vec![1, 0, 1], vec![1, 1, 1], vec![0, 1, 1]]);
        assert!(sq.edge_data().iter().all(|(_, l)| *l == 1));
        assert_eq!(sq.gorenstein_degree(), Some(&m(&[0, 0, 1])));

        let hex = Cone::over_polytope(&Polytope2::hexagon()).unwrap();
        let proj: Vec<[i64; 2]> = hex.edge_data().iter().map(|(d, _)| [d.0[0], d.0[1]]).collect();
        assert_eq!(proj, vec![[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]]);
        assert!(hex.edge_data().iter().all(|(_, l)| *l == 1));

        let tri = Cone::over_polytope(&Polytope2::new(vec![[0, 0], [2, 0], [0, 2]]).unwrap()).unwrap();
        let l: Vec<u64> = tri.edge_data().iter().map(|e| e.1).collect();
        assert_eq!(l, vec![2, 2, 2]);

        assert!(Polytope2::new(vec![[0, 0], [1, 0], [1, 1], [2, 2], [0, 1]]).is_err());
        assert!(Polytope2::new(vec![[0, 0], [0, 1], [1, 0]]).is_err());
        assert!(Polytope2::new(vec![[0, 0], [1, 0], [1, 0], [0, 1]]).is_err());
    }

    #[test]
    fn p123_dual_generators() {
        let c = Cone::over_polytope(&Polytope2::p123_triangle()).unwrap();
        assert_eq!(c.dual_generators(), &[m(&[0, 1, 1]), m(&[-2, -3, 1]), m(&[1, 0, 1])]);
        let l: Vec<u64> = c.edge_data().iter().map(|e| e.1).collect();
        assert_eq!(l, vec![3, 1, 2]);
    }

    #[test]
    fn duals_in_rank_two() {
        let [g0, g1] = dual_cone_2d(&NVector::new(&[-1, 2]), &NVector::new(&[1, 2])).unwrap();
        assert_eq!((g0, g1), (m(&[2, 1]), m(&[-2, 1])));
        let [g0, g1] = dual_cone_2d(&NVector::new(&[0, 1]), &NVector::new(&[2, 1])).unwrap();
        assert_eq!((g0, g1), (m(&[1, 0]), m(&[-1, 2])));
        let [g0, g1] = dual_cone_2d(&NVector::new(&[1, 0]), &NVector::new(&[0, 1])).unwrap();
        assert_eq!((g0, g1), (m(&[0, 1]), m(&[1, 0])));
        assert!(matches!(
            dual_cone_2d(&NVector::new(&[1, 2]), &NVector::new(&[2, 4])),
            Err(Error::DegenerateCone(_))
        ));
    }

    #[test]
    fn hilbert_bases() {
        let hb = hilbert_basis_2d(&example_cone()).unwrap();
        assert_eq!(hb, vec![m(&[-2, 1]), m(&[-1, 1]), m(&[0, 1]), m(&[1, 1]), m(&[2, 1])]);
        let quad = Cone::new(vec![NVector::new(&[1, 0]), NVector::new(&[0, 1])]).unwrap();
        assert_eq!(hilbert_basis_2d(&quad).unwrap(), vec![m(&[0, 1]), m(&[1, 0])]);
        for n in 1..6 {
            let c = an_surface_cone(n).unwrap();
            let mut expect = an_generators(n).to_vec();
            expect.sort();
            assert_eq!(hilbert_basis_2d(&c).unwrap(), expect);
            let [s1, s2, s3] = an_generators(n);
            assert_eq!(s1.add(&s3), s2.scale(n + 1));
        }
        let a1 = an_surface_cone(1).unwrap();
        assert_eq!(a1.rays(), &[NVector::new(&[1, 0]), NVector::new(&[-1, 2])]);
    }

    #[test]
    fn gorenstein_degrees() {
        let hex = Cone::over_polytope(&Polytope2::hexagon()).unwrap();
        assert_eq!(hex.gorenstein_degree(), Some(&m(&[0, 0, 1])));
        for n in 1..5 {
            assert_eq!(an_surface_cone(n).unwrap().gorenstein_degree(), Some(&m(&[1, 1])));
        }
        let quad = Cone::new(vec![NVector::new(&[1, 0]), NVector::new(&[0, 1])]).unwrap();
        assert_eq!(quad.gorenstein_degree(), Some(&m(&[1, 1])));
        assert_eq!(example_cone().gorenstein_degree(), None);
    }

    #[test]
    fn k_sets_of_the_example() {
        let c = example_cone();
        let r = m(&[0, 1]);
        assert!(c.k_set_member(&r, Face::Ray(0), &m(&[1, 1])).unwrap());
        assert!(!c.k_set_member(&r, Face::Ray(1), &m(&[1, 1])).unwrap());
        for l in [[0, 0], [2, 1], [1, 1], [4, 2], [3, 2]] {
            assert!(c.k_set_member(&r, Face::Ray(0), &m(&l)).unwrap());
            assert!(c.k_set_member(&r, Face::Ray(1), &m(&[-l[0], l[1]])).unwrap());
        }
        assert!(matches!(c.k_set_member(&r, Face::Ray(0), &m(&[0, -1])), Err(Error::Domain(_))));
        let p = Cone::over_polytope(&Polytope2::p123_triangle()).unwrap();
        let r1 = m(&[0, 0, 2]).sub(&p.dual_generators()[2]);
        assert!(p.k_set_member(&r1, Face::Ray(0), &m(&[0, 0, 0])).unwrap());
    }

    #[test]
    fn hilbert_basis_generates_low_heights() {
        let cones = [example_cone(), an_surface_cone(2).unwrap(), an_surface_cone(3).unwrap()];
        for c in &cones {
            let hb = hilbert_basis_2d(c).unwrap();
            assert!(hb.iter().all(|h| c.contains(h)));
            let pts = c.lattice_points(10);
            let mut reach: std::collections::HashSet<MVector> = [MVector::zero(2)].into();
            for p in &pts {
                if !p.is_zero() {
                    assert!(hb.iter().any(|h| reach.contains(&p.sub(h))), "{p} not generated");
                }
                reach.insert(p.clone());
            }
        }
    }

    #[test]
    fn k_set_union_identity() {
        let cones = [
            example_cone(),
            Cone::over_polytope(&Polytope2::hexagon()).unwrap(),
            Cone::over_polytope(&Polytope2::p123_triangle()).unwrap(),
        ];
        for c in &cones {
            let rank = c.rank();
            let degrees: Vec<MVector> = if rank == 2 {
                vec![m(&[0, 1]), m(&[1, 3]), m(&[-2, 2])]
            } else {
                vec![m(&[0, 0, 1]), m(&[-1, -1, 2]), m(&[1, 0, 3])]
            };
            for r in &degrees {
                for l in c.lattice_points(10) {
                    let in_shift = c.contains(&l.sub(r));
                    let in_union = (0..c.num_rays()).any(|j| c.in_k_set(r, Face::Ray(j), &l));
                    assert_eq!(!in_shift, in_union);
                }
            }
        }
    }

    #[test]
    fn windows() {
        let quad = Cone::new(vec![NVector::new(&[1, 0]), NVector::new(&[0, 1])]).unwrap();
        let pts = quad.lattice_points(2);
        assert_eq!(pts.len(), 6);
        assert_eq!(quad.lattice_points(0), vec![MVector::zero(2)]);
        let ex = example_cone();
        assert_eq!(ex.height(&m(&[3, 2])), 2);
    }
}

//! Exact integer and rational linear algebra: pairings, echelon forms,
//! kernels, subspaces and canonical residues.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(p: i64, d: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(d))
}

/// Formats a rational as `p/q` with `q > 0` in lowest terms.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn fmt_qvec(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

/// Parses `p`, `p/q` or a decimal-free integer into a rational.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Input(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((p, d)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(p, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// A character of the torus, i.e. a point of the lattice `M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MVector(pub Vec<i64>);

/// A one-parameter subgroup, i.e. a point of the lattice `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NVector(pub Vec<i64>);

macro_rules! lattice_vector {
    ($t:ident) => {
        impl $t {
            pub fn new(coords: &[i64]) -> Self {
                $t(coords.to_vec())
            }
            pub fn zero(rank: usize) -> Self {
                $t(vec![0; rank])
            }
            pub fn rank(&self) -> usize {
                self.0.len()
            }
            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&c| c == 0)
            }
            pub fn add(&self, o: &Self) -> Self {
                $t(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
            }
            pub fn sub(&self, o: &Self) -> Self {
                $t(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
            }
            pub fn scale(&self, k: i64) -> Self {
                $t(self.0.iter().map(|a| a * k).collect())
            }
            pub fn neg(&self) -> Self {
                self.scale(-1)
            }
            pub fn to_q(&self) -> Vec<Q> {
                self.0.iter().map(|&c| q(c)).collect()
            }
            /// Divides out the content; the zero vector is returned unchanged.
            pub fn primitive(&self) -> Self {
                let g = content(&self.0);
                if g == 0 {
                    self.clone()
                } else {
                    $t(self.0.iter().map(|a| a / g).collect())
                }
            }
            pub fn is_primitive(&self) -> bool {
                content(&self.0) == 1
            }
        }

        impl std::fmt::Display for $t {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    };
}

lattice_vector!(MVector);
lattice_vector!(NVector);

fn content(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &c| g.gcd(&c))
}

/// The natural pairing `N x M -> Z`.
pub fn pair(a: &NVector, r: &MVector) -> Result<i64> {
    if a.rank() != r.rank() {
        return Err(Error::Dimension { expected: a.rank(), got: r.rank() });
    }
    Ok(pair_unchecked(a, r))
}

pub(crate) fn pair_unchecked(a: &NVector, r: &MVector) -> i64 {
    a.0.iter().zip(&r.0).map(|(x, y)| x * y).sum()
}

/// Content of an edge vector; zero for the zero vector.
pub fn lattice_length(d: &NVector) -> u64 {
    content(&d.0).unsigned_abs()
}

pub fn cross(a: &[i64], b: &[i64]) -> [i64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn dot_q(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Pairs an integer vector with a rational one.
pub fn dot_iq(a: &[i64], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(&x, y)| y * q(x)).sum()
}

/// Row-reduces `rows` in place to reduced echelon form and returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Q>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(mat: &[Vec<Q>], ncols: usize) -> usize {
    let mut m = mat.to_vec();
    rref(&mut m, ncols).len()
}

/// Right kernel of a matrix given by rows.
pub fn kernel_basis(mat: &[Vec<Q>], ncols: usize) -> RatSubspace {
    let mut m = mat.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); ncols];
        v[free] = Q::one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(v);
    }
    RatSubspace::span(ncols, basis)
}

/// Solves `mat * x = rhs`; returns the solution with free variables set to zero.
pub fn solve(mat: &[Vec<Q>], ncols: usize, rhs: &[Q]) -> Option<Vec<Q>> {
    let mut aug: Vec<Vec<Q>> = mat
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (row, &pc) in aug.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

pub fn mat_vec(mat: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    mat.iter().map(|row| dot_q(row, v)).collect()
}

/// A subspace of `Q^n` stored by its reduced echelon basis, so equal
/// subspaces are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatSubspace {
    ambient: usize,
    basis: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl RatSubspace {
    pub fn span(ambient: usize, vectors: Vec<Vec<Q>>) -> Self {
        let mut rows = vectors;
        let pivots = rref(&mut rows, ambient);
        RatSubspace { ambient, basis: rows, pivots }
    }

    pub fn span_int(ambient: usize, vectors: &[Vec<i64>]) -> Self {
        Self::span(ambient, vectors.iter().map(|v| v.iter().map(|&c| q(c)).collect()).collect())
    }

    pub fn zero(ambient: usize) -> Self {
        RatSubspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect();
        RatSubspace { ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical residue of `v`: zero in every pivot column.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut r = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            if !r[pc].is_zero() {
                let f = r[pc].clone();
                for (x, y) in r.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Coordinates of a member with respect to the echelon basis.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &RatSubspace) -> RatSubspace {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        RatSubspace::span(self.ambient, rows)
    }

    /// The orthogonal complement with respect to the standard pairing.
    pub fn annihilator(&self) -> RatSubspace {
        kernel_basis(&self.basis, self.ambient)
    }

    pub fn intersect(&self, other: &RatSubspace) -> RatSubspace {
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    pub fn is_subspace_of(&self, other: &RatSubspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }
}

/// Canonical residue of a vector modulo a subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCoords {
    pub residue: Vec<Q>,
}

impl QuotientCoords {
    pub fn is_zero(&self) -> bool {
        self.residue.iter().all(Zero::is_zero)
    }
}

pub fn quotient_coords(v: &[Q], modulus: &RatSubspace) -> QuotientCoords {
    QuotientCoords { residue: modulus.reduce(v) }
}

pub fn is_nonneg_integer(x: &Q) -> bool {
    x.is_integer() && !x.is_negative()
}

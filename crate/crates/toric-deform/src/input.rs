//! Cone files, named presets and degree strings.
//!
//! A cone file is TOML with either a `polytope` (counterclockwise vertices of a
//! lattice polygon, giving the rank 3 cone over it) or explicit `rays`:
//!
//! ```toml
//! name = "hexagon"
//! rank = 3
//! polytope = [[0, 0], [1, 0], [2, 1], [2, 2], [1, 2], [0, 1]]
//! ```
//!
//! ```toml
//! rank = 2
//! rays = [[-1, 2], [1, 2]]
//! ```

use std::path::Path;

use serde::Deserialize;

use crate::cone::{an_surface_cone, Cone, Polytope2};
use crate::error::{Error, Result};
use crate::lattice::{MVector, NVector};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeFile {
    pub name: Option<String>,
    pub rank: Option<usize>,
    pub rays: Option<Vec<Vec<i64>>>,
    pub polytope: Option<Vec<[i64; 2]>>,
}

impl ConeFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Input(format!("cone file: {}", e.message())))
    }

    pub fn build(&self) -> Result<Cone> {
        let cone = match (&self.rays, &self.polytope) {
            (Some(_), Some(_)) => {
                return Err(Error::Input("give either `rays` or `polytope`, not both".into()))
            }
            (None, None) => return Err(Error::Input("cone file needs `rays` or `polytope`".into())),
            (None, Some(v)) => Cone::over_polytope(&Polytope2::new(v.clone())?)?,
            (Some(rays), None) => {
                let width = rays.first().map_or(0, Vec::len);
                if let Some(bad) = rays.iter().find(|r| r.len() != width) {
                    return Err(Error::Dimension { expected: width, got: bad.len() });
                }
                Cone::new(rays.iter().map(|r| NVector(r.clone())).collect())?
            }
        };
        if let Some(rank) = self.rank {
            if rank != cone.rank() {
                return Err(Error::Dimension { expected: rank, got: cone.rank() });
            }
        }
        Ok(cone)
    }
}

/// Names accepted in place of a cone file.
pub const PRESETS: &[&str] = &["hexagon", "square", "p123", "example", "a<n>"];

pub fn preset(name: &str) -> Option<Result<Cone>> {
    let polygon = |p: Polytope2| Some(Cone::over_polytope(&p));
    match name {
        "hexagon" => polygon(Polytope2::hexagon()),
        "square" => polygon(Polytope2::unit_square()),
        "p123" => polygon(Polytope2::p123_triangle()),
        "example" => Some(Cone::new(vec![NVector::new(&[-1, 2]), NVector::new(&[1, 2])])),
        _ => {
            let n: i64 = name.strip_prefix('a')?.parse().ok()?;
            Some(an_surface_cone(n))
        }
    }
}

/// Resolves a preset name or reads a cone file.
pub fn load_cone(source: &str) -> Result<Cone> {
    if let Some(c) = preset(source) {
        return c;
    }
    let path = Path::new(source);
    let text = std::fs::read_to_string(path).map_err(|e| {
        Error::Input(format!("cannot read cone `{source}` ({e}); presets are {}", PRESETS.join(", ")))
    })?;
    ConeFile::parse(&text)?.build()
}

/// Parses `Rstar`, `R*`, `2Rstar`, `3*R*`, or integer coordinates `1,0,2`.
pub fn parse_degree(cone: &Cone, s: &str) -> Result<MVector> {
    let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '(' && *c != ')').collect();
    let lower = t.to_ascii_lowercase();
    for suffix in ["rstar", "r*"] {
        if let Some(head) = lower.strip_suffix(suffix) {
            let head = head.strip_suffix('*').unwrap_or(head);
            let k: i64 = if head.is_empty() {
                1
            } else if head == "-" {
                -1
            } else {
                head.parse().map_err(|_| Error::Input(format!("bad multiple in degree `{s}`")))?
            };
            let rs = cone
                .gorenstein_degree()
                .ok_or_else(|| Error::Domain("the cone is not Gorenstein, R* is undefined".into()))?;
            return Ok(rs.scale(k));
        }
    }
    let coords = parse_ints(&t)?;
    if coords.len() != cone.rank() {
        return Err(Error::Dimension { expected: cone.rank(), got: coords.len() });
    }
    Ok(MVector(coords))
}

pub fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Input(format!("expected an integer, got `{x}`"))))
        .collect()
}

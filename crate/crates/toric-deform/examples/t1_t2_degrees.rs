//! Dimensions of `T^1(-R)` and `T^2(-R)` for the cone over the hexagon,
//! scanned over a box of degrees, plus the complex in degree `R*`.
//!
//! Run with `cargo run --example t1_t2_degrees`.

use toric_deform::cone::{Cone, Polytope2};
use toric_deform::degree_complex::{DegreeComplex, SpanConfig};
use toric_deform::lattice::MVector;

fn main() -> toric_deform::Result<()> {
    let cone = Cone::over_polytope(&Polytope2::hexagon())?;
    let cfg = SpanConfig::default();
    let rs = cone.gorenstein_degree().expect("cones over polygons are Gorenstein").clone();

    let report = DegreeComplex::new(&cone, &rs, &cfg)?.report();
    println!("degree R* = {rs}: t1 = {}, t2 = {}", report.t1, report.t2);

    println!("nonzero graded pieces with |R_i| <= 1, height <= 2:");
    for x in -1..=1 {
        for y in -1..=1 {
            for z in 0..=2 {
                let r = MVector::new(&[x, y, z]);
                let c = DegreeComplex::new(&cone, &r, &cfg)?;
                let (t1, t2) = (c.dim_h(1), c.dim_h(2));
                if t1 + t2 > 0 {
                    println!("  R = {r:<10} t1 = {t1}  t2 = {t2}");
                }
            }
        }
    }
    Ok(())
}

//! The cup product `T^1(-R*) x T^1(-R*) -> T^2(-2R*)` of the cone over the
//! hexagon, computed by the closed form and by the cochain pipeline.
//!
//! Run with `cargo run --release --example cup_hexagon`.

use toric_deform::cone::{Cone, Polytope2};
use toric_deform::cup::{cup_closed_form, cup_setup, seed_from_t, DeformationParam};
use toric_deform::degree_complex::SpanConfig;
use toric_deform::lattice::{fmt_qvec, q};
use toric_deform::pipeline::pipeline_cup;

fn main() -> toric_deform::Result<()> {
    let cone = Cone::over_polytope(&Polytope2::hexagon())?;
    let cfg = SpanConfig::default();
    let (v, model) = cup_setup(&cone, &cfg)?;
    let rs = cone.gorenstein_degree().unwrap().clone();
    println!("dim V = {}, dim T2(-2R*) = {}", v.dim(), model.t2_dim());

    let t = DeformationParam::new(&v, v.combine(&[q(1), q(0), q(2), q(-1)]))?;
    let s = DeformationParam::new(&v, v.combine(&[q(0), q(1), q(-1), q(3)]))?;
    println!("t = {:?}", fmt_qvec(&t.t));
    println!("s = {:?}", fmt_qvec(&s.t));

    let closed = cup_closed_form(&cone, &model, &t, &s)?;
    println!("closed form residue: {:?}", fmt_qvec(&closed.residue));

    let (xi, mu) = (seed_from_t(&cone, &t, &rs)?, seed_from_t(&cone, &s, &rs)?);
    let (class, trace) = pipeline_cup(&cone, &xi, &mu, 10, &cfg)?;
    println!("pipeline residue:    {:?}", fmt_qvec(&class.residue));
    for (j, ray) in trace.rays.iter().enumerate() {
        println!(
            "  ray {}: {} window points, exceptional lines {}+{}",
            j + 1,
            ray.points,
            ray.exceptional_forward.len(),
            ray.exceptional_backward.len()
        );
    }
    let agrees = class.residue.iter().zip(&closed.residue).all(|(a, b)| *a == -b.clone());
    println!("pipeline = -closed form: {agrees}");
    Ok(())
}

//! Quadratic equations of the versal base space for several polygons,
//! checked against `t ∪ t` on a small grid.
//!
//! Run with `cargo run --example versal_quadratics`.

use num_traits::Zero;
use toric_deform::cone::{Cone, Polytope2};
use toric_deform::cup::{cup_closed_form, cup_setup, versal_quadratics, DeformationParam};
use toric_deform::degree_complex::SpanConfig;
use toric_deform::lattice::q;

fn main() -> toric_deform::Result<()> {
    let polygons = [
        ("hexagon", Polytope2::hexagon()),
        ("square", Polytope2::unit_square()),
        ("trapezoid", Polytope2::new(vec![[0, 0], [2, 0], [1, 1], [0, 1]])?),
        ("triangle 2", Polytope2::new(vec![[0, 0], [2, 0], [0, 2]])?),
    ];
    for (name, p) in polygons {
        let cone = Cone::over_polytope(&p)?;
        let (case, forms) = versal_quadratics(&cone)?;
        println!("{name}: {case:?}");
        for f in &forms {
            println!("  {}", f.display());
        }
        let (v, model) = cup_setup(&cone, &SpanConfig::default())?;
        let mut agree = 0;
        let mut total = 0;
        for a in -2..=2 {
            for b in -2..=2 {
                let mut c = vec![q(0); v.dim()];
                c[0] = q(a);
                if v.dim() > 1 {
                    c[1] = q(b);
                }
                let t = DeformationParam::new(&v, v.combine(&c))?;
                let zero_cup = cup_closed_form(&cone, &model, &t, &t)?.is_zero();
                let zero_forms = forms.iter().all(|f| f.eval(&t.t).is_zero());
                agree += usize::from(zero_cup == zero_forms);
                total += 1;
            }
        }
        println!("  cup(t,t) = 0 iff the quadrics vanish: {agree}/{total} grid points");
    }
    Ok(())
}

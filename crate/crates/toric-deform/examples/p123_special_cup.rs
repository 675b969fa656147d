//! Cup products in the special degrees `q R* - p s_j` of the cone over
//! weighted projective space `P(1,2,3)`.
//!
//! Run with `cargo run --release --example p123_special_cup`.

use toric_deform::cone::{Cone, Polytope2};
use toric_deform::cup::{special_degree_cup, SpecialCup, SpecialDegree};
use toric_deform::degree_complex::SpanConfig;
use toric_deform::lattice::fmt_qvec;

fn main() -> toric_deform::Result<()> {
    let cone = Cone::over_polytope(&Polytope2::p123_triangle())?;
    println!("dual generators: {:?}", cone.dual_generators().iter().map(|m| m.to_string()).collect::<Vec<_>>());
    for (j, (d, len)) in cone.edge_data().iter().enumerate() {
        println!("  edge {}: d = {d}, length {len}", j + 1);
    }

    let mut degrees = Vec::new();
    for (j, (_, len)) in cone.edge_data().iter().enumerate() {
        for qq in 2..=*len as i64 {
            for p in 1..qq {
                let d = SpecialDegree { j, p, q: qq };
                if d.degree(&cone).is_ok() {
                    degrees.push(d);
                }
            }
        }
    }
    for (i, a) in degrees.iter().enumerate() {
        for b in &degrees[i..] {
            let res = special_degree_cup(&cone, *a, *b, 10, &SpanConfig::default())?;
            let label = format!("(j={},p={},q={}) x (j={},p={},q={})", a.j + 1, a.p, a.q, b.j + 1, b.p, b.q);
            match res {
                SpecialCup::CertifiedZero { reason, .. } => println!("{label}: zero ({reason:?})"),
                SpecialCup::Computed { degree, class, .. } => println!(
                    "{label}: degree {degree}, residue {:?}, {}",
                    fmt_qvec(&class.residue),
                    if class.is_zero() { "zero" } else { "nonzero" }
                ),
            }
        }
    }
    Ok(())
}

//! Hilbert basis and the sets `K^R_a` of the rank 2 cone spanned by
//! `(-1,2)` and `(1,2)`, in degree `R = (0,1)`.
//!
//! Run with `cargo run --example hilbert_basis`.

use toric_deform::cone::{hilbert_basis_2d, Cone, Face};
use toric_deform::lattice::{MVector, NVector};

fn main() -> toric_deform::Result<()> {
    let cone = Cone::new(vec![NVector::new(&[-1, 2]), NVector::new(&[1, 2])])?;
    println!("rays: {} {}", cone.ray(0), cone.ray(1));
    println!("dual generators: {:?}", cone.dual_generators().iter().map(|m| m.to_string()).collect::<Vec<_>>());

    let basis = hilbert_basis_2d(&cone)?;
    println!("Hilbert basis ({} elements):", basis.len());
    for b in &basis {
        println!("  {b}");
    }

    let r = MVector::new(&[0, 1]);
    for j in 0..2 {
        let members: Vec<String> = cone
            .lattice_points(2)
            .into_iter()
            .filter(|l| cone.k_set_member(&r, Face::Ray(j), l).unwrap_or(false))
            .map(|l| l.to_string())
            .collect();
        println!("K^R at ray {} up to height 2: {}", j + 1, members.join(" "));
    }
    Ok(())
}

//! Property checks of the cochain identities on random instances over a
//! finite window of the `A_2` semigroup.
//!
//! Run with `cargo run --release --example oracle_identities`.

use rand::{rngs::StdRng, SeedableRng};
use toric_deform::cone::an_surface_cone;
use toric_deform::degree_complex::SpanConfig;
use toric_deform::oracle::{run_identity, Identity, Window};

fn main() -> toric_deform::Result<()> {
    let cone = an_surface_cone(2)?;
    let w = Window::new(&cone, 8)?;
    println!("window of height 8: {} points, {} pairs, {} triples", w.len(), w.tuples(2).len(), w.tuples(3).len());
    let mut rng = StdRng::seed_from_u64(2024);
    for id in [
        Identity::DdZero,
        Identity::SleC,
        Identity::Hj,
        Identity::BracketCases,
        Identity::Hodge,
        Identity::BracketSupport,
    ] {
        let rep = run_identity(&cone, id, 8, 25, &mut rng, &SpanConfig::default())?;
        println!("{:<16} {:>8} tuples  {} violations", id.name(), rep.tuples, rep.violations);
    }
    Ok(())
}

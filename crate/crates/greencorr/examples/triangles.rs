//! Checks that induction from A4 to A5 carries a random triangle to a triangle, modulo
//! the 𝔛-projectives.

use greencorr::bundled;
use greencorr::green::{random_chain_map, random_two_term, triangle_preservation_check, TriangleKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> greencorr::Result<()> {
    let setup = bundled::setup("a5-a4")?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let x = random_two_term(setup.h_group(), 2, 4, &mut rng)?;
    let y = random_two_term(setup.h_group(), 2, 4, &mut rng)?;
    let f = random_chain_map(&x, &y, &mut rng)?;
    for kind in [TriangleKind::TsPlusVSplit, TriangleKind::Ts] {
        let t = triangle_preservation_check(&f, &setup, kind, 5)?;
        println!("{kind:?}: holds {}, cone matches {:?}", t.holds(), t.cone_matches);
    }
    Ok(())
}

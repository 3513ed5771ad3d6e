//! Green correspondents for A4 in A5 at p = 2: every indecomposable A4-module with a
//! vertex outside 𝔛, its correspondent, and the discarded summands of the induced module.

use greencorr::bundled;
use greencorr::dec::DecOptions;
use greencorr::green::{green_correspondent, indecomposable_sample, round_trip_ri};

fn main() -> greencorr::Result<()> {
    let setup = bundled::setup("a5-a4")?;
    let opts = DecOptions::default();
    for l in indecomposable_sample(setup.h_group(), 2, 16, opts)? {
        match green_correspondent(&l, &setup, opts) {
            Ok(c) => {
                let dropped: Vec<usize> = c.summands.iter().filter(|s| s.relatively_projective).map(|s| s.dim).collect();
                println!(
                    "dim {} -> dim {} vertex {}, dropped {:?}, R I L ≅ L: {}",
                    l.dim(),
                    c.module.dim(),
                    c.vertex.label(),
                    dropped,
                    round_trip_ri(&l, &setup, opts)?
                );
            }
            Err(e) => println!("dim {}: {e}", l.dim()),
        }
    }
    Ok(())
}

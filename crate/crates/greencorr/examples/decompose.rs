//! Decomposes the regular module of S4 over GF(2) and prints each summand's vertex.

use greencorr::bundled;
use greencorr::dec::{decompose_with, vertex, DecOptions};
use greencorr::rep::Module;

fn main() -> greencorr::Result<()> {
    let g = bundled::group("s4")?;
    let opts = DecOptions::default();
    let m = Module::permutation(&g.whole().sylow(2), 2);
    let d = decompose_with(&m, opts)?;
    println!("Ind_D8^S4 k has dimension {} and {} summands", m.dim(), d.summands.len());
    for c in &d.classes {
        let s = &d.summands[c[0]].module;
        println!("  dim {} x{}  vertex {}", s.dim(), c.len(), vertex(s, opts)?.label());
    }
    Ok(())
}

//! Relative projectivity two ways: the identity as a relative trace, and a summand of
//! Ind Res.

use greencorr::bundled;
use greencorr::dec::{higman_tests, DecOptions};
use greencorr::rep::Module;

fn main() -> greencorr::Result<()> {
    let g = bundled::group("s4")?;
    let m = Module::permutation(&bundled::subgroup(&g, &["(0 1)"])?, 2);
    for h in g.subgroup_classes() {
        let t = higman_tests(&m, &h, DecOptions::default())?;
        println!("{:>4}: trace {:5} summand {:5}", h.label(), t.via_trace, t.via_summand);
    }
    Ok(())
}

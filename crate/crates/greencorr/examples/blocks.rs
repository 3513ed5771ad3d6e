//! Blocks of GF(2)A5 with their defect groups and the Brauer correspondent of the
//! principal block.

use greencorr::blk::{block_idempotents, brauer_correspondent};
use greencorr::bundled;

fn main() -> greencorr::Result<()> {
    let g = bundled::group("a5")?;
    let blocks = block_idempotents(&g, 2)?;
    for (i, b) in blocks.iter().enumerate() {
        println!("block {i}: principal {}, defect {}", b.is_principal(), b.defect.label());
    }
    let sylow = g.whole().sylow(2);
    let n = g.whole().normalizer(&sylow)?;
    let principal = blocks.iter().find(|b| b.is_principal()).expect("one principal block");
    let c = brauer_correspondent(principal, &n)?;
    println!("Brauer correspondent in {}: principal {} ({:?})", n.label(), c.block.is_principal(), c.rule);
    Ok(())
}

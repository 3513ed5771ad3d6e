//! Mackey decomposition of Res_K Ind_H^G L for two subgroups of A4, with the explicit
//! isomorphism checked both ways.

use greencorr::bundled;
use greencorr::rep::{is_intertwiner, mackey_decomposition, Module};

fn main() -> greencorr::Result<()> {
    let g = bundled::group("a4")?;
    let h = bundled::subgroup(&g, &["(0 1)(2 3)", "(0 2)(1 3)"])?;
    let k = bundled::subgroup(&g, &["(0 1 2)"])?;
    let l = Module::regular(h.as_group(), 2);
    let md = mackey_decomposition(&l, &h, &k)?;
    for s in &md.summands {
        println!("rep {}: K ∩ tHt^-1 = {}, summand dim {}", s.rep, s.stabilizer.label(), s.module.dim());
    }
    let inverse_ok = md.iso.matrix.mul(&md.inverse.matrix).is_identity();
    println!("inverse: {inverse_ok}, intertwiner: {}", is_intertwiner(&md.source, &md.sum, &md.iso.matrix));
    Ok(())
}

//! Splits a perturbed idempotent on X = A ⊕ B over GF(2)S3 in the TS homotopy category
//! relative to the trivial subgroup.

use greencorr::bundled;
use greencorr::cpx::{relative_null_space, split_idempotent, ChainMap, Flavor};
use greencorr::green::random_two_term;
use greencorr::grp::SubgroupCollection;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> greencorr::Result<()> {
    let g = bundled::group("s3")?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = random_two_term(&g, 2, 3, &mut rng)?;
    let b = random_two_term(&g, 2, 3, &mut rng)?;
    let x = a.direct_sum(&b)?;
    let coll = SubgroupCollection::new(vec![g.trivial_subgroup()], true);
    let e = ChainMap::inclusion(&a, &b, false)?.compose(&ChainMap::projection(&a, &b, false)?)?;
    let (hom, null) = relative_null_space(&x, &x, &Flavor::Ts, &coll)?;
    let e = match null.basis().first() {
        Some(v) => e.add(&hom.element(v))?,
        None => e,
    };
    let s = split_idempotent(&x, &e, &Flavor::Ts, &coll)?;
    println!(
        "X has total dimension {}; Y {}, Z {}; certified {}",
        x.total_dim(),
        s.y.total_dim(),
        s.z.total_dim(),
        s.certified()
    );
    Ok(())
}

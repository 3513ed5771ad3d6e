//! Small module and complex samples: simple modules, induced indecomposables and random
//! two-term complexes.

use crate::cpx::{ChainHomSpace, ChainMap, Complex};
use crate::dec::{decompose_with, iso_indecomposable, DecOptions};
use crate::error::{Error, Result};
use crate::gfla::FpMatrix;
use crate::grp::Group;
use crate::rep::{hom_space, Module};
use rand::Rng;
use std::sync::Arc;

const SPIN_CAP: u64 = 1 << 16;

/// A simple submodule, found by spinning every vector until none generates a proper
/// submodule. Needs `p^dim <= 65536` at each step.
pub fn minimal_submodule(m: &Module) -> Result<Module> {
    let p = m.p() as u64;
    let mut cur = m.clone();
    'outer: loop {
        let n = cur.dim();
        if n <= 1 {
            return Ok(cur);
        }
        let total = p.checked_pow(n as u32).filter(|&t| t <= SPIN_CAP).ok_or_else(|| {
            Error::Size(format!("exhaustive spin over {n}-dimensional module exceeds the cap"))
        })?;
        for k in 1..total {
            let mut v = vec![0u32; n];
            let mut r = k;
            for x in v.iter_mut() {
                *x = (r % p) as u32;
                r /= p;
            }
            // one vector per line
            if v.iter().find(|&&x| x != 0) != Some(&1) {
                continue;
            }
            let span = cur.spin(&[v]);
            if span.cols() < n {
                cur = cur.submodule(&span)?.0;
                continue 'outer;
            }
        }
        return Ok(cur);
    }
}

fn push_new(out: &mut Vec<Module>, m: Module) -> Result<()> {
    for t in out.iter() {
        if t.dim() == m.dim() && iso_indecomposable(t, &m)?.is_some() {
            return Ok(());
        }
    }
    out.push(m);
    Ok(())
}

fn sort_modules(v: &mut [Module]) {
    v.sort_by_cached_key(|m| (m.dim(), m.canonical_bytes()));
}

/// One simple module per isomorphism class, as socle pieces of the projective indecomposables.
pub fn simple_modules(group: &Arc<Group>, p: u32, opts: DecOptions) -> Result<Vec<Module>> {
    let d = decompose_with(&Module::regular(group, p), opts)?;
    let mut out = Vec::new();
    for c in &d.classes {
        push_new(&mut out, minimal_submodule(&d.summands[c[0]].module)?)?;
    }
    sort_modules(&mut out);
    Ok(out)
}

/// Indecomposable summands of `Ind_K^G S` over subgroup classes `K` and simple `K`-modules
/// `S`, skipping inductions above `max_dim`; one per isomorphism class.
pub fn indecomposable_sample(group: &Arc<Group>, p: u32, max_dim: usize, opts: DecOptions) -> Result<Vec<Module>> {
    let mut out = Vec::new();
    for k in group.subgroup_classes() {
        let idx = k.index_in_parent();
        if idx > max_dim {
            continue;
        }
        for s in simple_modules(k.as_group(), p, opts)? {
            if idx * s.dim() > max_dim {
                continue;
            }
            let d = decompose_with(&s.induce(&k)?, opts)?;
            for sm in d.summands {
                push_new(&mut out, sm.module)?;
            }
        }
    }
    sort_modules(&mut out);
    Ok(out)
}

/// `A -> B` in degrees 0 and 1, with `A`, `B` random permutation modules of dimension at
/// most `max_dim` and a random module map.
pub fn random_two_term<R: Rng>(group: &Arc<Group>, p: u32, max_dim: usize, rng: &mut R) -> Result<Complex> {
    let a = Module::random(group, p, max_dim, rng);
    let b = Module::random(group, p, max_dim, rng);
    let hom = hom_space(&a, &b)?;
    let c: Vec<u32> = (0..hom.dim()).map(|_| rng.gen_range(0..p)).collect();
    let f = if hom.dim() == 0 { FpMatrix::zeros(p, b.dim(), a.dim()) } else { hom.element(&c) };
    Complex::two_term(&a, &b, &f, 0)
}

/// A uniformly random chain map `X -> Y`.
pub fn random_chain_map<R: Rng>(x: &Complex, y: &Complex, rng: &mut R) -> Result<ChainMap> {
    let hom = ChainHomSpace::new(x, y)?;
    let c: Vec<u32> = (0..hom.dim()).map(|_| rng.gen_range(0..x.p())).collect();
    Ok(hom.element(&c))
}

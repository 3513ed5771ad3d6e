use super::{induce_matrix, ModHom, Module};
use crate::error::{Error, Result};
use crate::gfla::FpMatrix;
use crate::grp::Subgroup;

/// `t ⊗ X`: a module over `d` transported to `t d t^-1`. Returns the conjugate subgroup
/// (in the parent of `d`) and the module on its `as_group()`.
pub fn conjugate_module(x: &Module, d: &Subgroup, t: usize) -> Result<(Subgroup, Module)> {
    if **d.as_group() != **x.group() {
        return Err(Error::Containment("module does not live on the given subgroup".into()));
    }
    let g = d.parent();
    let c = d.conjugate(t);
    let ti = g.inv(t);
    let gens = c
        .as_group()
        .generator_indices()
        .iter()
        .map(|&i| {
            let y = c.elements()[i];
            let z = g.conj(ti, y);
            x.action(d.local_index(z).expect("conjugate lands in d")).clone()
        })
        .collect();
    let m = Module::new_unchecked(c.as_group().clone(), x.p(), x.dim(), gens);
    Ok((c, m))
}

#[derive(Clone, Debug)]
pub struct MackeySummand {
    /// Double coset representative `t` (parent index).
    pub rep: usize,
    /// `K ∩ t H t^-1` in the parent group.
    pub stabilizer: Subgroup,
    /// `Ind_{K ∩ tHt^-1}^K (t ⊗ Res L)`, a module over `K`.
    pub module: Module,
}

#[derive(Clone, Debug)]
pub struct MackeyDecomposition {
    pub summands: Vec<MackeySummand>,
    /// `Res_K Ind_H^G L`.
    pub source: Module,
    /// Direct sum of the summand modules, in order.
    pub sum: Module,
    /// `source -> sum`.
    pub iso: ModHom,
    /// `sum -> source`.
    pub inverse: ModHom,
}

impl MackeyDecomposition {
    /// Basis offset of summand `i` inside `sum`.
    pub fn offset(&self, i: usize) -> usize {
        self.summands[..i].iter().map(|s| s.module.dim()).sum()
    }
}

/// Mackey decomposition of `Res_K Ind_H^G L` over the `K`-`H` double cosets.
/// The inverse iso sends `d ⊗ (t ⊗ e)` to `c_i ⊗ ρ_L(h) e` where `d t = c_i h`.
pub fn mackey_decomposition(l: &Module, h: &Subgroup, k: &Subgroup) -> Result<MackeyDecomposition> {
    if **h.parent() != **k.parent() {
        return Err(Error::Compatibility("subgroups of different groups".into()));
    }
    let g = h.parent().clone();
    let p = l.p();
    let dl = l.dim();
    let ind = l.induce(h)?;
    let source = ind.restrict(k)?;
    let cos_h = g.whole().left_cosets(h)?;
    let reps = g.whole().double_coset_reps(k, h)?;
    let kg = k.as_group().clone();
    let mut summands = Vec::new();
    let mut columns: Vec<(usize, usize, usize)> = Vec::new(); // (coset i, h position, inner e)
    for &t in &reps {
        let ti = g.inv(t);
        let d = k.intersect(&h.conjugate(t))?;
        let e = d.conjugate(ti);
        let res = l.restrict(&h.localize(&e)?)?;
        let (d2, y) = conjugate_module(&res, &e, t)?;
        debug_assert!(d2 == d);
        let dloc = k.localize(&d)?;
        let x = y.induce(&dloc)?;
        let cos_d = kg.whole().left_cosets(&dloc)?;
        for &dl_idx in &cos_d.reps {
            let dpar = k.elements()[dl_idx];
            let (i, hp) = cos_h.locate(g.mul(dpar, t));
            for e in 0..dl {
                columns.push((i, hp, e));
            }
        }
        summands.push(MackeySummand { rep: t, stabilizer: d, module: x });
    }
    let n = ind.dim();
    let mut beta = FpMatrix::zeros(p, n, n);
    for (col, &(i, hp, e)) in columns.iter().enumerate() {
        let m = l.action(hp);
        for r in 0..dl {
            beta.set(i * dl + r, col, m.get(r, e));
        }
    }
    let sum = Module::direct_sum_all(&summands.iter().map(|s| &s.module).collect::<Vec<_>>())?;
    let alpha = beta.inverse().ok_or_else(|| Error::Invariant("Mackey map is not invertible".into()))?;
    Ok(MackeyDecomposition {
        iso: ModHom::new_unchecked(&source, &sum, alpha),
        inverse: ModHom::new_unchecked(&sum, &source, beta),
        summands,
        source,
        sum,
    })
}

/// `X ⊗ Ind Y -> Ind(Res X ⊗ Y)`, `x ⊗ (g ⊗ y) ↦ g ⊗ (g^-1 x ⊗ y)`.
pub fn frobenius_iso(x: &Module, y: &Module, h: &Subgroup) -> Result<ModHom> {
    let (src, tgt, m) = frobenius_parts(x, y, h, false)?;
    Ok(ModHom::new_unchecked(&src, &tgt, m))
}

/// `Ind(Res X ⊗ Y) -> X ⊗ Ind Y`, `g ⊗ (x ⊗ y) ↦ g x ⊗ (g ⊗ y)`.
pub fn frobenius_inverse(x: &Module, y: &Module, h: &Subgroup) -> Result<ModHom> {
    let (src, tgt, m) = frobenius_parts(x, y, h, true)?;
    Ok(ModHom::new_unchecked(&tgt, &src, m))
}

fn frobenius_parts(x: &Module, y: &Module, h: &Subgroup, inverse: bool) -> Result<(Module, Module, FpMatrix)> {
    let g = h.parent();
    if **x.group() != **g {
        return Err(Error::Compatibility("X must be a module for the big group".into()));
    }
    let src = x.tensor(&y.induce(h)?)?;
    let tgt = x.restrict(h)?.tensor(y)?.induce(h)?;
    let cos = g.whole().left_cosets(h)?;
    let (dx, dy, nc) = (x.dim(), y.dim(), cos.len());
    let p = x.p();
    let n = dx * dy * nc;
    let mut m = FpMatrix::zeros(p, n, n);
    for (i, &c) in cos.reps.iter().enumerate() {
        let act = if inverse { x.action(c) } else { x.action(g.inv(c)) };
        for a in 0..dx {
            for a2 in 0..dx {
                let v = act.get(a2, a);
                if v == 0 {
                    continue;
                }
                for b in 0..dy {
                    if inverse {
                        m.set(s_of(a2, i, b, nc, dy), t_of(i, a, b, dx, dy), v);
                    } else {
                        m.set(t_of(i, a2, b, dx, dy), s_of(a, i, b, nc, dy), v);
                    }
                }
            }
        }
    }
    Ok((src, tgt, m))
}

fn s_of(a: usize, i: usize, b: usize, nc: usize, dy: usize) -> usize {
    a * nc * dy + i * dy + b
}
fn t_of(i: usize, a: usize, b: usize, dx: usize, dy: usize) -> usize {
    i * dx * dy + a * dy + b
}

/// `ε_Y: Y -> Res Ind Y`, `y ↦ 1 ⊗ y`.
pub fn unit_eps(y: &Module, h: &Subgroup) -> Result<ModHom> {
    let ind = y.induce(h)?;
    let res = ind.restrict(h)?;
    let mut m = FpMatrix::zeros(y.p(), ind.dim(), y.dim());
    m.set_block(0, 0, &FpMatrix::identity(y.p(), y.dim()));
    Ok(ModHom::new_unchecked(y, &res, m))
}

/// `η_X: Ind Res X -> X`, `g ⊗ x ↦ g x`.
pub fn counit_eta(x: &Module, h: &Subgroup) -> Result<ModHom> {
    let ir = x.restrict(h)?.induce(h)?;
    let g = h.parent();
    let cos = g.whole().left_cosets(h)?;
    let blocks: Vec<&FpMatrix> = cos.reps.iter().map(|&c| x.action(c)).collect();
    let m = FpMatrix::hstack(x.p(), x.dim(), &blocks);
    Ok(ModHom::new_unchecked(&ir, x, m))
}

/// `ε'_X: X -> Ind Res X`, `x ↦ sum g ⊗ g^-1 x`.
pub fn unit_eps_prime(x: &Module, h: &Subgroup) -> Result<ModHom> {
    let ir = x.restrict(h)?.induce(h)?;
    let g = h.parent();
    let cos = g.whole().left_cosets(h)?;
    let blocks: Vec<&FpMatrix> = cos.reps.iter().map(|&c| x.action(g.inv(c))).collect();
    let m = FpMatrix::vstack(x.p(), x.dim(), &blocks);
    Ok(ModHom::new_unchecked(x, &ir, m))
}

/// `η'_Y: Res Ind Y -> Y`, projection onto the identity coset.
pub fn counit_eta_prime(y: &Module, h: &Subgroup) -> Result<ModHom> {
    let ind = y.induce(h)?;
    let res = ind.restrict(h)?;
    let mut m = FpMatrix::zeros(y.p(), y.dim(), ind.dim());
    m.set_block(0, 0, &FpMatrix::identity(y.p(), y.dim()));
    Ok(ModHom::new_unchecked(&res, y, m))
}

/// `Hom_G(Ind Y, X) -> Hom_H(Y, Res X)`, `f ↦ Res(f) ε_Y`.
pub fn adj1(y: &Module, x: &Module, f: &FpMatrix, h: &Subgroup) -> Result<FpMatrix> {
    Ok(f.mul(&unit_eps(y, h)?.matrix).clone_checked(x.dim(), y.dim())?)
}

/// `Hom_H(Y, Res X) -> Hom_G(Ind Y, X)`, `φ ↦ η_X Ind(φ)`.
pub fn adj1_inverse(y: &Module, x: &Module, phi: &FpMatrix, h: &Subgroup) -> Result<FpMatrix> {
    let eta = counit_eta(x, h)?;
    eta.matrix.mul(&induce_matrix(phi, h.index_in_parent())).clone_checked(x.dim(), y.dim() * h.index_in_parent())
}

/// `Hom_G(X, Ind Y) -> Hom_H(Res X, Y)`, `f ↦ η'_Y Res(f)`.
pub fn adj2(y: &Module, x: &Module, f: &FpMatrix, h: &Subgroup) -> Result<FpMatrix> {
    counit_eta_prime(y, h)?.matrix.mul(f).clone_checked(y.dim(), x.dim())
}

/// `Hom_H(Res X, Y) -> Hom_G(X, Ind Y)`, `φ ↦ Ind(φ) ε'_X`.
pub fn adj2_inverse(y: &Module, x: &Module, phi: &FpMatrix, h: &Subgroup) -> Result<FpMatrix> {
    let e = unit_eps_prime(x, h)?;
    induce_matrix(phi, h.index_in_parent()).mul(&e.matrix).clone_checked(y.dim() * h.index_in_parent(), x.dim())
}

trait ShapeCheck: Sized {
    fn clone_checked(self, r: usize, c: usize) -> Result<Self>;
}

impl ShapeCheck for FpMatrix {
    fn clone_checked(self, r: usize, c: usize) -> Result<Self> {
        if self.shape() != (r, c) {
            return Err(Error::Dimension(format!("expected {r}x{c}, got {:?}", self.shape())));
        }
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{Group, Perm};
    use crate::rep::{hom_space, is_intertwiner};
    use std::sync::Arc;

    fn s3() -> Arc<Group> {
        Group::from_generators(3, vec![Perm::parse_cycles(3, "(0 1)").unwrap(), Perm::parse_cycles(3, "(0 1 2)").unwrap()])
            .unwrap()
    }

    #[test]
    fn mackey_over_whole_group_keeps_the_action() {
        // the whole group's greedy generators differ from the file's generating set
        let g = s3();
        let w = g.whole();
        let l = Module::regular(&g, 2);
        let md = mackey_decomposition(&l, &w, &w).unwrap();
        assert!(is_intertwiner(&md.source, &md.sum, &md.iso.matrix));
        assert_eq!(md.sum, l);
    }

    #[test]
    fn s3_c2_mackey_dims() {
        let g = s3();
        let h = g.subgroup(&[g.index_of(&Perm::parse_cycles(3, "(0 1)").unwrap()).unwrap()]);
        let l = Module::trivial(h.as_group(), 2);
        let md = mackey_decomposition(&l, &h, &h).unwrap();
        let dims: Vec<usize> = md.summands.iter().map(|s| s.module.dim()).collect();
        assert_eq!(dims, vec![1, 2]);
        assert!(is_intertwiner(&md.source, &md.sum, &md.iso.matrix));
        assert!(is_intertwiner(&md.sum, &md.source, &md.inverse.matrix));
        // second summand is the regular module of C2
        let reg = Module::regular(h.as_group(), 2);
        let hs = hom_space(&md.summands[1].module, &reg).unwrap();
        assert!(hs.basis().iter().any(|m| m.is_invertible()));
    }

    #[test]
    fn frobenius_round_trip_and_adjunction_zigzag() {
        let g = s3();
        let h = g.whole().sylow(3);
        let x = Module::regular(&g, 3);
        let y = Module::regular(h.as_group(), 3);
        let f = frobenius_iso(&x, &y, &h).unwrap();
        let fi = frobenius_inverse(&x, &y, &h).unwrap();
        assert!(f.matrix.mul(&fi.matrix).is_identity());
        assert!(is_intertwiner(&f.source, &f.target, &f.matrix));
        // η_{Ind Y} ∘ Ind(ε_Y) = id
        let ind = y.induce(&h).unwrap();
        let eta = counit_eta(&ind, &h).unwrap();
        let eps = unit_eps(&y, &h).unwrap();
        let z = eta.matrix.mul(&induce_matrix(&eps.matrix, 2));
        assert!(z.is_identity());
    }
}

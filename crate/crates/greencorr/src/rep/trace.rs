use super::{hom_space, is_intertwiner, HomSpace, ModHom, Module};
use crate::error::{Error, Result};
use crate::gfla::{FpMatrix, Subspace};
use crate::grp::{Subgroup, SubgroupCollection};

/// `Tr_D^G(f) = sum_{c in G/D} ρ_B(c) f ρ_A(c^-1)` for a `D`-map `f: Res A -> Res B`.
pub fn relative_trace(a: &Module, b: &Module, f: &FpMatrix, d: &Subgroup) -> Result<FpMatrix> {
    a.check_compatible(b)?;
    let ra = a.restrict(d)?;
    let rb = b.restrict(d)?;
    if f.shape() != (b.dim(), a.dim()) {
        return Err(Error::Dimension("trace argument has the wrong shape".into()));
    }
    if !is_intertwiner(&ra, &rb, f) {
        return Err(Error::Invariant("trace argument is not an intertwiner for the subgroup".into()));
    }
    let g = d.parent();
    let mut out = FpMatrix::zeros(a.p(), b.dim(), a.dim());
    for &c in &g.whole().left_coset_reps(d)? {
        out.add_assign(&b.action(c).mul(f).mul(a.action(g.inv(c))));
    }
    Ok(out)
}

/// Linear functionals reading off the coordinates of `Tr_D^G(f)` in the RREF basis of
/// `Hom_G(A, B)`: the coordinate at pivot `(a_k, b_k)` is `<W_k, f>` with
/// `W_k[i][j] = sum_{c in G/D} ρ_B(c)[a_k, i] ρ_A(c^-1)[j, b_k]`.
pub struct TraceFunctionals {
    w: Vec<FpMatrix>,
}

impl TraceFunctionals {
    pub fn new(hom: &HomSpace, d: &Subgroup) -> Result<TraceFunctionals> {
        let (a, b) = (&hom.source, &hom.target);
        let reps = d.parent().whole().left_coset_reps(d)?;
        let w = hom.pivot_positions().into_iter().map(|(ak, bk)| trace_functional(a, b, &reps, ak, bk)).collect();
        Ok(TraceFunctionals { w })
    }

    /// Coordinates of `Tr(f)`.
    pub fn apply(&self, f: &FpMatrix) -> Vec<u32> {
        self.w.iter().map(|w| pair(w, f)).collect()
    }

    /// Span of all coordinate vectors when `f` runs over every matrix (trivial subgroup).
    pub fn image_of_all(&self, ambient: usize, p: u32) -> Subspace {
        if self.w.is_empty() {
            return Subspace::zero(p, ambient);
        }
        let n = self.w[0].data().len();
        let vecs = (0..n).map(|e| self.w.iter().map(|w| w.data()[e]).collect()).collect();
        Subspace::from_vectors(p, ambient, vecs)
    }
}

/// `W[i][j] = sum_c ρ_B(c)[ak, i] ρ_A(c^-1)[j, bk]` over the coset representatives `reps`.
pub(crate) fn trace_functional(a: &Module, b: &Module, reps: &[usize], ak: usize, bk: usize) -> FpMatrix {
    let g = a.group();
    let p = a.p();
    let mut acc = vec![0u64; b.dim() * a.dim()];
    for &c in reps {
        let u = b.action(c).row(ak);
        let ac = a.action(g.inv(c));
        let v: Vec<u32> = (0..a.dim()).map(|j| ac.get(j, bk)).collect();
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            let row = &mut acc[i * a.dim()..(i + 1) * a.dim()];
            for (x, &vj) in row.iter_mut().zip(&v) {
                *x = (*x + ui as u64 * vj as u64) % p as u64;
            }
        }
    }
    FpMatrix::from_vec(p, b.dim(), a.dim(), acc.into_iter().map(|x| x as u32).collect())
}

/// Pairing `<W, f>` of equally shaped matrices.
pub(crate) fn pair(w: &FpMatrix, f: &FpMatrix) -> u32 {
    let p = w.p() as u64;
    (w.data().iter().zip(f.data()).fold(0u64, |acc, (&x, &y)| (acc + x as u64 * y as u64) % p)) as u32
}

/// Image of `Tr_D^G` on `Hom_D(Res A, Res B)`, in coordinates of `hom`.
pub fn trace_image(hom: &HomSpace, d: &Subgroup) -> Result<Subspace> {
    let p = hom.source.p();
    let tf = TraceFunctionals::new(hom, d)?;
    if d.is_trivial() {
        return Ok(tf.image_of_all(hom.dim(), p));
    }
    let local = hom_space(&hom.source.restrict(d)?, &hom.target.restrict(d)?)?;
    let vecs = local.basis().iter().map(|f| tf.apply(f)).collect();
    Ok(Subspace::from_vectors(p, hom.dim(), vecs))
}

/// `sum_{D in coll} Tr_D^G(Hom_D(A, B))` as a subspace of `Hom_G(A, B)` coordinates.
pub fn projective_hom_subspace(a: &Module, b: &Module, coll: &SubgroupCollection) -> Result<(HomSpace, Subspace)> {
    let hom = hom_space(a, b)?;
    let mut s = Subspace::zero(a.p(), hom.dim());
    for d in coll.members() {
        if s.dim() == hom.dim() {
            break;
        }
        s = s.sum(&trace_image(&hom, d)?)?;
    }
    Ok((hom, s))
}

/// `dim Hom_G(A, B) - dim` of the relatively projective part.
pub fn stable_hom_dim(a: &Module, b: &Module, coll: &SubgroupCollection) -> Result<usize> {
    let (h, s) = projective_hom_subspace(a, b, coll)?;
    Ok(h.dim() - s.dim())
}

/// `Tr: V^# ⊗ V -> k` and `ι: k -> V^# ⊗ V` with `ι(1) = sum λ_a ⊗ v_a`.
pub fn trace_unit_maps(v: &Module) -> (ModHom, ModHom) {
    let p = v.p();
    let n = v.dim();
    let vv = v.dual().tensor(v).expect("same group");
    let k = Module::trivial(v.group(), p);
    let mut tr = FpMatrix::zeros(p, 1, n * n);
    let mut iota = FpMatrix::zeros(p, n * n, 1);
    for a in 0..n {
        tr.set(0, a * n + a, 1);
        iota.set(a * n + a, 0, 1);
    }
    (ModHom::new_unchecked(&vv, &k, tr), ModHom::new_unchecked(&k, &vv, iota))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{Group, Perm};
    use std::sync::Arc;

    fn s3() -> Arc<Group> {
        Group::from_generators(3, vec![Perm::parse_cycles(3, "(0 1)").unwrap(), Perm::parse_cycles(3, "(0 1 2)").unwrap()])
            .unwrap()
    }

    #[test]
    fn functionals_agree_with_direct_trace() {
        let g = s3();
        let h = g.subgroup(&[g.index_of(&Perm::parse_cycles(3, "(0 1)").unwrap()).unwrap()]);
        let m = Module::permutation(&h, 2);
        let hom = hom_space(&m, &m).unwrap();
        let tf = TraceFunctionals::new(&hom, &h).unwrap();
        let local = hom_space(&m.restrict(&h).unwrap(), &m.restrict(&h).unwrap()).unwrap();
        for f in local.basis() {
            let t = relative_trace(&m, &m, f, &h).unwrap();
            assert_eq!(hom.coords(&t).unwrap(), tf.apply(f));
        }
    }

    #[test]
    fn trace_from_trivial_kills_scalars_in_char_dividing_order() {
        let g = s3();
        let t = Module::trivial(&g, 2);
        let one = SubgroupCollection::new(vec![g.trivial_subgroup()], true);
        assert_eq!(stable_hom_dim(&t, &t, &one).unwrap(), 1);
        let all = SubgroupCollection::new(vec![g.whole()], true);
        assert_eq!(stable_hom_dim(&t, &t, &all).unwrap(), 0);
        let id = FpMatrix::identity(2, 1);
        assert!(relative_trace(&t, &t, &id, &g.trivial_subgroup()).unwrap().is_zero());
    }

    #[test]
    fn trace_unit_for_trivial_is_one() {
        let g = s3();
        let (tr, iota) = trace_unit_maps(&Module::trivial(&g, 5));
        assert!(tr.matrix.is_identity());
        assert!(iota.matrix.is_identity());
    }
}

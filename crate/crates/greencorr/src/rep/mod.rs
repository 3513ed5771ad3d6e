//! Finite-dimensional `kG`-modules given by generator matrices, their homomorphisms and
//! the induction/restriction calculus.

mod hom;
mod mackey;
mod trace;

pub use hom::{hom_space, HomSpace};
pub use mackey::{
    adj1, adj1_inverse, adj2, adj2_inverse, conjugate_module, counit_eta, counit_eta_prime, frobenius_inverse,
    frobenius_iso, mackey_decomposition, unit_eps, unit_eps_prime, MackeyDecomposition, MackeySummand,
};
pub use trace::{
    projective_hom_subspace, relative_trace, stable_hom_dim, trace_image, trace_unit_maps, TraceFunctionals,
};
pub(crate) use trace::{pair, trace_functional};

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::error::{Error, Result};
use crate::gfla::{Echelon, FpMatrix};
use crate::grp::{Group, Subgroup};

struct ModuleData {
    group: Arc<Group>,
    p: u32,
    dim: usize,
    gens: Vec<FpMatrix>,
    cache: Vec<OnceLock<FpMatrix>>,
}

/// A `kG`-module: one invertible matrix per group generator. Cheap to clone.
#[derive(Clone)]
pub struct Module(Arc<ModuleData>);

impl PartialEq for Module {
    fn eq(&self, o: &Module) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || (self.0.p == o.0.p && *self.0.group == *o.0.group && self.0.gens == o.0.gens && self.0.dim == o.0.dim)
    }
}
impl Eq for Module {}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module(dim {} over GF({}), group order {})", self.dim(), self.p(), self.group().order())
    }
}

impl Module {
    /// Checked constructor: verifies `ρ(g)ρ(x) = ρ(gx)` for every generator `g` and element `x`.
    pub fn new(group: Arc<Group>, p: u32, dim: usize, gens: Vec<FpMatrix>) -> Result<Module> {
        if gens.len() != group.generators().len() {
            return Err(Error::Dimension(format!(
                "{} generator matrices for {} group generators",
                gens.len(),
                group.generators().len()
            )));
        }
        for m in &gens {
            if m.shape() != (dim, dim) || m.p() != p {
                return Err(Error::Dimension(format!("generator matrix {:?} for dimension {dim}", m.shape())));
            }
        }
        let m = Self::new_unchecked(group, p, dim, gens);
        m.verify()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(group: Arc<Group>, p: u32, dim: usize, gens: Vec<FpMatrix>) -> Module {
        let n = group.order();
        let cache = (0..n).map(|_| OnceLock::new()).collect();
        Module(Arc::new(ModuleData { group, p, dim, gens, cache }))
    }

    /// Checks the action against the full multiplication table.
    pub fn verify(&self) -> Result<()> {
        let g = self.group();
        for (k, &gi) in g.generator_indices().iter().enumerate() {
            for x in 0..g.order() {
                let lhs = self.0.gens[k].mul(self.action(x));
                if lhs != *self.action(g.mul(gi, x)) {
                    return Err(Error::Invariant(format!(
                        "generator {k} times element {x} disagrees with the group multiplication"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn zero(group: &Arc<Group>, p: u32) -> Module {
        let gens = vec![FpMatrix::zeros(p, 0, 0); group.generators().len()];
        Self::new_unchecked(group.clone(), p, 0, gens)
    }

    pub fn trivial(group: &Arc<Group>, p: u32) -> Module {
        let gens = vec![FpMatrix::identity(p, 1); group.generators().len()];
        Self::new_unchecked(group.clone(), p, 1, gens)
    }

    /// Left-multiplication action on the element basis.
    pub fn regular(group: &Arc<Group>, p: u32) -> Module {
        let n = group.order();
        let gens = group
            .generator_indices()
            .iter()
            .map(|&g| {
                let mut m = FpMatrix::zeros(p, n, n);
                for x in 0..n {
                    m.set(group.mul(g, x), x, 1);
                }
                m
            })
            .collect();
        Self::new_unchecked(group.clone(), p, n, gens)
    }

    /// `k_H` induced to the parent of `h`.
    pub fn permutation(h: &Subgroup, p: u32) -> Module {
        Module::trivial(h.as_group(), p).induce(h).expect("trivial module lives on the subgroup")
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.0.group
    }
    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn dim(&self) -> usize {
        self.0.dim
    }
    pub fn generator_matrices(&self) -> &[FpMatrix] {
        &self.0.gens
    }

    /// Matrix of the group element with index `x`, evaluated through the word table and memoised.
    pub fn action(&self, x: usize) -> &FpMatrix {
        let d = &self.0;
        if let Some(m) = d.cache[x].get() {
            return m;
        }
        // walk down to a cached ancestor, then fill in along the path
        let mut path = Vec::new();
        let mut y = x;
        while d.cache[y].get().is_none() {
            path.push(y);
            match d.group.word_step(y) {
                None => {
                    let _ = d.cache[y].set(FpMatrix::identity(d.p, d.dim));
                    path.pop();
                    break;
                }
                Some((_, parent)) => y = parent,
            }
        }
        for &z in path.iter().rev() {
            let (g, parent) = d.group.word_step(z).expect("non-identity");
            let m = d.gens[g].mul(d.cache[parent].get().expect("parent filled"));
            let _ = d.cache[z].set(m);
        }
        d.cache[x].get().expect("filled")
    }

    pub fn is_compatible(&self, o: &Module) -> bool {
        self.p() == o.p() && *self.group() == *o.group()
    }

    pub(crate) fn check_compatible(&self, o: &Module) -> Result<()> {
        if self.p() != o.p() || *self.group() != *o.group() {
            return Err(Error::Compatibility(format!("{self:?} and {o:?} are over different groups or fields")));
        }
        Ok(())
    }

    pub fn direct_sum(&self, o: &Module) -> Result<Module> {
        Module::direct_sum_all(&[self, o])
    }

    pub fn direct_sum_all(parts: &[&Module]) -> Result<Module> {
        let first = parts.first().ok_or_else(|| Error::Precondition("empty direct sum".into()))?;
        for m in parts {
            first.check_compatible(m)?;
        }
        let p = first.p();
        let dim = parts.iter().map(|m| m.dim()).sum();
        let gens = (0..first.generator_matrices().len())
            .map(|k| FpMatrix::block_diag(p, &parts.iter().map(|m| &m.0.gens[k]).collect::<Vec<_>>()))
            .collect();
        Ok(Module::new_unchecked(first.group().clone(), p, dim, gens))
    }

    /// Diagonal action on `self ⊗ o`; basis `e_i ⊗ f_j` has index `i * dim(o) + j`.
    pub fn tensor(&self, o: &Module) -> Result<Module> {
        self.check_compatible(o)?;
        let gens = self.0.gens.iter().zip(&o.0.gens).map(|(a, b)| a.kron(b)).collect();
        Ok(Module::new_unchecked(self.group().clone(), self.p(), self.dim() * o.dim(), gens))
    }

    /// Contragredient: `g` acts by the transpose of `ρ(g^-1)`.
    pub fn dual(&self) -> Module {
        let g = self.group();
        let gens = g.generator_indices().iter().map(|&x| self.action(g.inv(x)).transpose()).collect();
        Module::new_unchecked(g.clone(), self.p(), self.dim(), gens)
    }

    /// `T^-1 ρ T` for an invertible `T`.
    pub fn change_basis(&self, t: &FpMatrix) -> Result<Module> {
        let ti = t.inverse().ok_or_else(|| Error::Precondition("change of basis is not invertible".into()))?;
        if t.rows() != self.dim() {
            return Err(Error::Dimension("change of basis has the wrong size".into()));
        }
        let gens = self.0.gens.iter().map(|m| ti.mul(m).mul(t)).collect();
        Ok(Module::new_unchecked(self.group().clone(), self.p(), self.dim(), gens))
    }

    /// Restriction to a subgroup of this module's group; the result lives on `h.as_group()`.
    pub fn restrict(&self, h: &Subgroup) -> Result<Module> {
        if **h.parent() != **self.group() {
            return Err(Error::Containment("restriction to a subgroup of a different group".into()));
        }
        if h.is_whole() {
            return Ok(self.clone());
        }
        let gens = h.as_group().generator_indices().iter().map(|&i| self.action(h.elements()[i]).clone()).collect();
        Ok(Module::new_unchecked(h.as_group().clone(), self.p(), self.dim(), gens))
    }

    /// The same representation over another presentation of the same permutation group, e.g.
    /// a module read from a file over `subgroup.as_group()`.
    pub fn transport(&self, target: &Arc<Group>) -> Result<Module> {
        if **target == **self.group() {
            return Ok(self.clone());
        }
        let src = self.group();
        if target.degree() != src.degree() || target.order() != src.order() {
            return Err(Error::Compatibility("groups have different degree or order".into()));
        }
        let gens = target
            .generators()
            .iter()
            .map(|g| {
                src.index_of(g)
                    .map(|i| self.action(i).clone())
                    .ok_or_else(|| Error::Compatibility(format!("{g:?} is not in the module's group")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Module::new_unchecked(target.clone(), self.p(), self.dim(), gens))
    }

    /// Induction from `h.as_group()` to `h.parent()`. Basis `(coset rep i, inner j)` at
    /// index `i * dim + j`, coset reps in canonical order.
    pub fn induce(&self, h: &Subgroup) -> Result<Module> {
        if **h.as_group() != **self.group() {
            return Err(Error::Containment("module does not live on the inducing subgroup".into()));
        }
        if h.is_whole() {
            return Ok(Module::new_unchecked(h.parent().clone(), self.p(), self.dim(), self.0.gens.clone()));
        }
        let g = h.parent();
        let cos = g.whole().left_cosets(h)?;
        let (n, d, p) = (cos.len(), self.dim(), self.p());
        let gens = g
            .generator_indices()
            .iter()
            .map(|&x| {
                let mut m = FpMatrix::zeros(p, n * d, n * d);
                for (i, &c) in cos.reps.iter().enumerate() {
                    let (j, hh) = cos.locate(g.mul(x, c));
                    m.set_block(j * d, i * d, self.action(hh));
                }
                m
            })
            .collect();
        Ok(Module::new_unchecked(g.clone(), p, n * d, gens))
    }

    /// Submodule spanned by the columns of `basis` (which must be invariant).
    pub fn submodule(&self, basis: &FpMatrix) -> Result<(Module, FpMatrix)> {
        let p = self.p();
        let k = basis.cols();
        if k == 0 {
            return Ok((Module::zero(self.group(), p), FpMatrix::zeros(p, self.dim(), 0)));
        }
        // left inverse via pivot rows of the column echelon form
        let (r, rank, piv) = basis.transpose().rref();
        if rank != k {
            return Err(Error::Precondition("submodule basis is not independent".into()));
        }
        let sel = basis.select_rows(&piv);
        let left = sel.inverse().expect("pivot minor is invertible");
        let _ = r;
        let mut gens = Vec::new();
        for m in &self.0.gens {
            let img = m.mul(basis);
            let a = left.mul(&img.select_rows(&piv));
            if basis.mul(&a) != img {
                return Err(Error::Invariant("subspace is not invariant".into()));
            }
            gens.push(a);
        }
        Ok((Module::new_unchecked(self.group().clone(), p, k, gens), basis.clone()))
    }

    /// Smallest submodule containing `v`, as a column basis.
    pub fn spin(&self, vs: &[Vec<u32>]) -> FpMatrix {
        let p = self.p();
        let mut ech = Echelon::new(p, self.dim());
        let mut basis: Vec<Vec<u32>> = Vec::new();
        for v in vs {
            if ech.insert(v.clone()) {
                basis.push(v.clone());
            }
        }
        let mut head = 0;
        while head < basis.len() {
            for m in &self.0.gens {
                let w = m.mul_vec(&basis[head]);
                if ech.insert(w.clone()) {
                    basis.push(w);
                }
            }
            head += 1;
        }
        FpMatrix::from_columns(p, self.dim(), &basis)
    }

    /// Action of a group-algebra element `sum c_x x`.
    pub fn algebra_action(&self, coeffs: &[u32]) -> FpMatrix {
        let p = self.p();
        let mut m = FpMatrix::zeros(p, self.dim(), self.dim());
        for (x, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                m.axpy(c, self.action(x));
            }
        }
        m
    }

    /// Stable serialisation of the generator matrices used for canonical ordering.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for m in &self.0.gens {
            for &v in m.data() {
                out.extend_from_slice(&v.to_be_bytes());
            }
        }
        out
    }

    /// A permutation module `k_K↑G` of dimension at most `max_dim`, padded with trivial
    /// summands and conjugated by a random change of basis.
    pub fn random<R: Rng>(group: &Arc<Group>, p: u32, max_dim: usize, rng: &mut R) -> Module {
        let subs: Vec<Subgroup> =
            group.subgroup_classes().into_iter().filter(|s| s.index_in_parent() <= max_dim).collect();
        let k = &subs[rng.gen_range(0..subs.len())];
        let base = Module::permutation(k, p);
        let pad = rng.gen_range(0..=max_dim - base.dim());
        let mut parts = vec![base];
        for _ in 0..pad {
            parts.push(Module::trivial(group, p));
        }
        let m = Module::direct_sum_all(&parts.iter().collect::<Vec<_>>()).expect("same group");
        let n = m.dim();
        loop {
            let t = FpMatrix::from_fn(p, n, n, |_, _| rng.gen_range(0..p));
            if t.is_invertible() {
                return m.change_basis(&t).expect("invertible");
            }
        }
    }
}

/// A module homomorphism; `matrix` is `dim(target) x dim(source)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModHom {
    pub source: Module,
    pub target: Module,
    pub matrix: FpMatrix,
}

impl ModHom {
    /// Checked constructor (intertwiner condition on generators).
    pub fn new(source: &Module, target: &Module, matrix: FpMatrix) -> Result<ModHom> {
        source.check_compatible(target)?;
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(Error::Dimension(format!(
                "hom matrix {:?} for {} -> {}",
                matrix.shape(),
                source.dim(),
                target.dim()
            )));
        }
        if !is_intertwiner(source, target, &matrix) {
            return Err(Error::Invariant("matrix does not commute with the group action".into()));
        }
        Ok(ModHom { source: source.clone(), target: target.clone(), matrix })
    }

    pub(crate) fn new_unchecked(source: &Module, target: &Module, matrix: FpMatrix) -> ModHom {
        ModHom { source: source.clone(), target: target.clone(), matrix }
    }

    pub fn identity(m: &Module) -> ModHom {
        ModHom::new_unchecked(m, m, FpMatrix::identity(m.p(), m.dim()))
    }

    pub fn zero(s: &Module, t: &Module) -> ModHom {
        ModHom::new_unchecked(s, t, FpMatrix::zeros(s.p(), t.dim(), s.dim()))
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &ModHom) -> Result<ModHom> {
        if o.target != self.source {
            return Err(Error::Compatibility("composition of non-matching homs".into()));
        }
        Ok(ModHom::new_unchecked(&o.source, &self.target, self.matrix.mul(&o.matrix)))
    }

    pub fn is_iso(&self) -> bool {
        self.matrix.is_invertible()
    }

    pub fn restrict(&self, h: &Subgroup) -> Result<ModHom> {
        Ok(ModHom::new_unchecked(&self.source.restrict(h)?, &self.target.restrict(h)?, self.matrix.clone()))
    }

    pub fn induce(&self, h: &Subgroup) -> Result<ModHom> {
        let s = self.source.induce(h)?;
        let t = self.target.induce(h)?;
        Ok(ModHom::new_unchecked(&s, &t, induce_matrix(&self.matrix, h.index_in_parent())))
    }
}

/// Block-diagonal copy of `m`, one block per coset.
pub(crate) fn induce_matrix(m: &FpMatrix, n: usize) -> FpMatrix {
    let blocks: Vec<&FpMatrix> = (0..n).map(|_| m).collect();
    FpMatrix::block_diag(m.p(), &blocks)
}

pub fn is_intertwiner(source: &Module, target: &Module, m: &FpMatrix) -> bool {
    source
        .generator_matrices()
        .iter()
        .zip(target.generator_matrices())
        .all(|(a, b)| m.mul(a) == b.mul(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::Perm;

    pub(crate) fn s3() -> Arc<Group> {
        Group::from_generators(3, vec![Perm::parse_cycles(3, "(0 1)").unwrap(), Perm::parse_cycles(3, "(0 1 2)").unwrap()])
            .unwrap()
    }

    #[test]
    fn basic_constructions() {
        let c2 = Group::from_generators(2, vec![Perm::parse_cycles(2, "(0 1)").unwrap()]).unwrap();
        let t = Module::trivial(&c2, 2);
        assert_eq!(t.generator_matrices()[0], FpMatrix::identity(2, 1));
        let r = Module::regular(&c2, 2);
        assert_eq!(r.generator_matrices()[0].to_i64_rows(), vec![vec![0, 1], vec![1, 0]]);
        r.verify().unwrap();
        let g = s3();
        let h = g.subgroup(&[g.index_of(&Perm::parse_cycles(3, "(0 1)").unwrap()).unwrap()]);
        let pm = Module::permutation(&h, 2);
        assert_eq!(pm.dim(), 3);
        pm.verify().unwrap();
        assert_eq!(pm.tensor(&Module::trivial(&g, 2)).unwrap().generator_matrices(), pm.generator_matrices());
        assert_eq!(pm.dual().dual(), pm);
    }

    #[test]
    fn bad_action_is_rejected() {
        let g = s3();
        let gens = vec![FpMatrix::identity(3, 1), FpMatrix::scalar(3, 1, 2)];
        assert!(matches!(Module::new(g, 3, 1, gens), Err(Error::Invariant(_))));
    }

    #[test]
    fn induction_is_a_module() {
        let g = s3();
        let h = g.whole().sylow(3);
        let r = Module::regular(h.as_group(), 2);
        let ind = r.induce(&h).unwrap();
        assert_eq!(ind.dim(), 6);
        ind.verify().unwrap();
        assert_eq!(ind.restrict(&h).unwrap().dim(), 6);
    }
}

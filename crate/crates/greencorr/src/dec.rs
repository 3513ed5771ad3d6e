//! Krull-Schmidt decomposition, locality of endomorphism algebras, isomorphism tests and
//! vertices.
//!
//! Locality is decided by a certificate rather than a guess: an element whose minimal
//! polynomial has two distinct irreducible factors yields a Fitting split, while a
//! nilpotent two-sided ideal `J` together with an element whose minimal polynomial is a
//! power of an irreducible of degree `dim End - dim J` proves that `End/J` is a field.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gfla::{Echelon, FpMatrix, Poly};
use crate::grp::{Subgroup, SubgroupCollection};
use crate::rep::{hom_space, is_intertwiner, trace_image, HomSpace, Module};

/// Default number of probe elements before giving up on a locality decision.
pub const DEFAULT_BUDGET: usize = 400;

/// Endomorphism algebras up to this dimension are also checked by idempotent enumeration.
pub const EXHAUSTIVE_CAP: usize = 8;
const EXHAUSTIVE_SIZE: u64 = 1 << 16;

pub struct EndoAlgebra {
    pub hom: HomSpace,
}

impl EndoAlgebra {
    pub fn new(m: &Module) -> Result<Self> {
        Ok(EndoAlgebra { hom: hom_space(m, m)? })
    }

    pub fn dim(&self) -> usize {
        self.hom.dim()
    }

    pub fn basis(&self) -> &[FpMatrix] {
        self.hom.basis()
    }

    /// `c[i][j][k]` with `b_i b_j = sum_k c[i][j][k] b_k`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<u32>>> {
        let b = self.basis();
        b.iter()
            .map(|x| b.iter().map(|y| self.hom.coords(&x.mul(y)).expect("End is closed")).collect())
            .collect()
    }
}

/// Outcome of the locality analysis.
#[derive(Clone, Debug)]
pub enum Locality {
    /// Local; `residue_degree` is `dim End/J` over GF(p).
    Local { residue_degree: usize },
    /// An endomorphism that is neither invertible nor nilpotent.
    Split(FpMatrix),
}

/// A Fitting decomposition `M = Y ⊕ Z` for an endomorphism `f`.
#[derive(Clone, Debug)]
pub struct FittingSplit {
    pub y: Module,
    pub z: Module,
    /// Columns: basis of `Y` then of `Z`, in the coordinates of `M`.
    pub basis: FpMatrix,
    pub basis_inverse: FpMatrix,
}

impl FittingSplit {
    pub fn incl_y(&self) -> FpMatrix {
        self.basis.submatrix(0, self.basis.rows(), 0, self.y.dim())
    }
    pub fn incl_z(&self) -> FpMatrix {
        self.basis.submatrix(0, self.basis.rows(), self.y.dim(), self.basis.cols())
    }
    pub fn proj_y(&self) -> FpMatrix {
        self.basis_inverse.submatrix(0, self.y.dim(), 0, self.basis.rows())
    }
    pub fn proj_z(&self) -> FpMatrix {
        self.basis_inverse.submatrix(self.y.dim(), self.basis.rows(), 0, self.basis.rows())
    }
}

/// Stable image and kernel of `f^n`. Returns `None` when one of them is zero.
pub fn fitting_split(m: &Module, f: &FpMatrix) -> Result<Option<FittingSplit>> {
    if f.shape() != (m.dim(), m.dim()) || !is_intertwiner(m, m, f) {
        return Err(Error::Invariant("not an endomorphism".into()));
    }
    let n = m.dim();
    let p = m.p();
    let mut b = f.clone();
    let mut r = b.rank();
    loop {
        let b2 = b.mul(&b);
        let r2 = b2.rank();
        b = b2;
        if r2 == r {
            break;
        }
        r = r2;
    }
    if r == 0 || r == n {
        return Ok(None);
    }
    let y: Vec<Vec<u32>> = b.column_space().basis().to_vec();
    let z: Vec<Vec<u32>> = b.kernel().basis().to_vec();
    let mut cols = y.clone();
    cols.extend(z.iter().cloned());
    let t = FpMatrix::from_columns(p, n, &cols);
    let ti = t.inverse().ok_or_else(|| Error::Invariant("Fitting pieces do not span".into()))?;
    let conj: Vec<FpMatrix> = m.generator_matrices().iter().map(|g| ti.mul(g).mul(&t)).collect();
    let (dy, dz) = (y.len(), z.len());
    let ym = Module::new_unchecked(m.group().clone(), p, dy, conj.iter().map(|c| c.submatrix(0, dy, 0, dy)).collect());
    let zm = Module::new_unchecked(m.group().clone(), p, dz, conj.iter().map(|c| c.submatrix(dy, n, dy, n)).collect());
    debug_assert!(conj.iter().all(|c| c.submatrix(0, dy, dy, n).is_zero() && c.submatrix(dy, n, 0, dy).is_zero()));
    Ok(Some(FittingSplit { y: ym, z: zm, basis: t, basis_inverse: ti }))
}

fn random_element<R: Rng>(end: &HomSpace, rng: &mut R) -> FpMatrix {
    let p = end.source.p();
    let c: Vec<u32> = (0..end.dim()).map(|_| rng.gen_range(0..p)).collect();
    end.element(&c)
}

/// Decides whether `End(M)` is local.
pub fn locality<R: Rng>(m: &Module, end: &HomSpace, rng: &mut R, budget: usize) -> Result<Locality> {
    let d = end.dim();
    let n = m.dim();
    let p = m.p();
    if n == 0 {
        return Err(Error::Precondition("zero module".into()));
    }
    if d == 1 {
        return Ok(Locality::Local { residue_degree: 1 });
    }
    let mut ideal = Echelon::new(p, n * n);
    let mut ideal_basis: Vec<FpMatrix> = Vec::new();
    let mut nilpotent = true;
    for step in 0..budget.max(d) {
        let x = if step < d { end.basis()[step].clone() } else { random_element(end, rng) };
        let mu = x.min_poly();
        let fac = mu.factor(rng);
        if fac.len() >= 2 {
            let (g, e) = &fac[0];
            return Ok(Locality::Split(x.eval_poly(g).pow(*e as u64)));
        }
        let (g, e) = fac.into_iter().next().expect("nonconstant minimal polynomial");
        if e >= 2 {
            let nil = x.eval_poly(&g);
            if !ideal.contains(nil.data()) {
                grow_ideal(end, &mut ideal, &mut ideal_basis, nil);
                nilpotent = is_nilpotent_ideal(m, &ideal_basis);
            }
        }
        if nilpotent && g.degree() == Some(d - ideal.rank()) {
            return Ok(Locality::Local { residue_degree: d - ideal.rank() });
        }
    }
    Err(Error::Undecided(format!(
        "locality of a {n}-dimensional module with {d}-dimensional endomorphism algebra not settled in {budget} probes"
    )))
}

/// Two-sided ideal closure inside `end`.
fn grow_ideal(end: &HomSpace, ideal: &mut Echelon, basis: &mut Vec<FpMatrix>, x: FpMatrix) {
    let mut queue = vec![x];
    while let Some(v) = queue.pop() {
        if !ideal.insert(v.data().to_vec()) {
            continue;
        }
        for b in end.basis() {
            queue.push(b.mul(&v));
            queue.push(v.mul(b));
        }
        basis.push(v);
    }
}

/// `J` is nilpotent iff the chain `M ⊇ JM ⊇ J^2 M ⊇ ...` reaches zero.
fn is_nilpotent_ideal(m: &Module, j: &[FpMatrix]) -> bool {
    let n = m.dim();
    let p = m.p();
    let mut cur: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    loop {
        let mut ech = Echelon::new(p, n);
        let mut next = Vec::new();
        for a in j {
            for v in &cur {
                let w = a.mul_vec(v);
                if ech.insert(w.clone()) {
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            return true;
        }
        if next.len() == cur.len() {
            return false;
        }
        cur = next;
    }
}

/// Whether the algebra has an idempotent other than 0 and 1, by enumeration.
pub fn has_nontrivial_idempotent(end: &EndoAlgebra) -> Option<bool> {
    let d = end.dim();
    let p = end.hom.source.p();
    if d > EXHAUSTIVE_CAP || (p as u64).checked_pow(d as u32).map_or(true, |s| s > EXHAUSTIVE_SIZE) {
        return None;
    }
    let sc = end.structure_constants();
    let one = end.hom.coords(&FpMatrix::identity(p, end.hom.source.dim())).expect("identity");
    let total = (p as u64).pow(d as u32);
    let mut c = vec![0u32; d];
    for k in 0..total {
        let mut r = k;
        for ci in c.iter_mut() {
            *ci = (r % p as u64) as u32;
            r /= p as u64;
        }
        if c.iter().all(|&x| x == 0) || c == one {
            continue;
        }
        let mut sq = vec![0u64; d];
        for i in 0..d {
            if c[i] == 0 {
                continue;
            }
            for j in 0..d {
                if c[j] == 0 {
                    continue;
                }
                let f = c[i] as u64 * c[j] as u64 % p as u64;
                for (s, &t) in sq.iter_mut().zip(&sc[i][j]) {
                    *s = (*s + f * t as u64) % p as u64;
                }
            }
        }
        if sq.iter().zip(&c).all(|(&a, &b)| a as u32 == b) {
            return Some(true);
        }
    }
    Some(false)
}

/// One indecomposable summand with its split inclusion and projection.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Module,
    /// `dim M x dim S`.
    pub inclusion: FpMatrix,
    /// `dim S x dim M`.
    pub projection: FpMatrix,
    /// `dim End(S)/J(End(S))` over GF(p); 1 means absolutely indecomposable.
    pub residue_degree: usize,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub module: Module,
    /// Sorted by (dimension, matrix bytes).
    pub summands: Vec<Summand>,
    /// Isomorphism classes as lists of summand indices; ordered by first member.
    pub classes: Vec<Vec<usize>>,
}

impl Decomposition {
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        self.classes.iter().map(|c| (c[0], c.len())).collect()
    }

    /// `sum inclusion_i projection_i`.
    pub fn reconstruction(&self) -> FpMatrix {
        let p = self.module.p();
        let n = self.module.dim();
        let mut acc = FpMatrix::zeros(p, n, n);
        for s in &self.summands {
            acc.add_assign(&s.inclusion.mul(&s.projection));
        }
        acc
    }
}

/// Options for decomposition and related searches.
#[derive(Clone, Copy, Debug)]
pub struct DecOptions {
    pub seed: u64,
    pub budget: usize,
    /// Run the enumeration cross-check on small endomorphism algebras.
    pub cross_check: bool,
}

impl Default for DecOptions {
    fn default() -> Self {
        DecOptions { seed: 0, budget: DEFAULT_BUDGET, cross_check: true }
    }
}

pub fn decompose(m: &Module, seed: u64) -> Result<Decomposition> {
    decompose_with(m, DecOptions { seed, ..Default::default() })
}

pub fn decompose_with(m: &Module, opts: DecOptions) -> Result<Decomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let p = m.p();
    let n = m.dim();
    let mut work = vec![(m.clone(), FpMatrix::identity(p, n), FpMatrix::identity(p, n))];
    let mut out = Vec::new();
    while let Some((x, inc, proj)) = work.pop() {
        if x.dim() == 0 {
            continue;
        }
        let end = EndoAlgebra::new(&x)?;
        let loc = locality(&x, &end.hom, &mut rng, opts.budget)?;
        if opts.cross_check {
            if let Some(has) = has_nontrivial_idempotent(&end) {
                let local = matches!(loc, Locality::Local { .. });
                if has == local {
                    return Err(Error::Invariant(format!(
                        "locality certificate and idempotent enumeration disagree on a {}-dimensional module",
                        x.dim()
                    )));
                }
            }
        }
        match loc {
            Locality::Local { residue_degree } => {
                out.push(Summand { module: x, inclusion: inc, projection: proj, residue_degree })
            }
            Locality::Split(b) => {
                let s = fitting_split(&x, &b)?.ok_or_else(|| Error::Invariant("probe did not split".into()))?;
                work.push((s.z.clone(), inc.mul(&s.incl_z()), s.proj_z().mul(&proj)));
                work.push((s.y.clone(), inc.mul(&s.incl_y()), s.proj_y().mul(&proj)));
            }
        }
    }
    out.sort_by(|a, b| {
        a.module.dim().cmp(&b.module.dim()).then_with(|| a.module.canonical_bytes().cmp(&b.module.canonical_bytes()))
    });
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..out.len() {
        let mut placed = false;
        for c in classes.iter_mut() {
            let r = &out[c[0]].module;
            if r.dim() == out[i].module.dim() && iso_indecomposable(r, &out[i].module)?.is_some() {
                c.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![i]);
        }
    }
    Ok(Decomposition { module: m.clone(), summands: out, classes })
}

/// Isomorphism of indecomposables: some basis element of `Hom(a, b)` is invertible.
pub fn iso_indecomposable(a: &Module, b: &Module) -> Result<Option<FpMatrix>> {
    if a.dim() != b.dim() {
        return Ok(None);
    }
    let h = hom_space(a, b)?;
    Ok(h.basis().iter().find(|m| m.is_invertible()).cloned())
}

pub fn is_indecomposable(m: &Module, opts: DecOptions) -> Result<bool> {
    if m.dim() == 0 {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let end = hom_space(m, m)?;
    Ok(matches!(locality(m, &end, &mut rng, opts.budget)?, Locality::Local { .. }))
}

/// An isomorphism `a -> b` if one exists.
pub fn is_isomorphic(a: &Module, b: &Module, opts: DecOptions) -> Result<Option<FpMatrix>> {
    a.check_compatible(b)?;
    if a.dim() != b.dim() {
        return Ok(None);
    }
    if a.dim() == 0 {
        return Ok(Some(FpMatrix::zeros(a.p(), 0, 0)));
    }
    let h = hom_space(a, b)?;
    if let Some(m) = h.basis().iter().find(|m| m.is_invertible()) {
        return Ok(Some(m.clone()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.budget.min(64) {
        let m = random_element(&h, &mut rng);
        if m.is_invertible() {
            return Ok(Some(m));
        }
    }
    // exact fallback through the decompositions
    let da = decompose_with(a, opts)?;
    let db = decompose_with(b, opts)?;
    let mut used = vec![false; db.summands.len()];
    let mut iso = FpMatrix::zeros(a.p(), b.dim(), a.dim());
    for sa in &da.summands {
        let mut found = false;
        for (j, sb) in db.summands.iter().enumerate() {
            if used[j] || sb.module.dim() != sa.module.dim() {
                continue;
            }
            if let Some(phi) = iso_indecomposable(&sa.module, &sb.module)? {
                used[j] = true;
                iso.add_assign(&sb.inclusion.mul(&phi).mul(&sa.projection));
                found = true;
                break;
            }
        }
        if !found {
            return Ok(None);
        }
    }
    Ok(Some(iso))
}

/// Result of the two Higman tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Higman {
    pub via_trace: bool,
    pub via_summand: bool,
}

/// `id_M ∈ Tr_H^G(End_H(M))`.
pub fn higman_via_trace(m: &Module, h: &Subgroup) -> Result<bool> {
    let end = hom_space(m, m)?;
    higman_via_trace_in(&end, h)
}

pub(crate) fn higman_via_trace_in(end: &HomSpace, h: &Subgroup) -> Result<bool> {
    let m = &end.source;
    if m.dim() == 0 || h.is_whole() {
        return Ok(true);
    }
    let id = end.coords(&FpMatrix::identity(m.p(), m.dim())).expect("identity is an endomorphism");
    Ok(trace_image(end, h)?.contains(&id))
}

/// `M` is a summand of `Ind Res M`: each indecomposable `M_i` must be, and since `End(M_i)`
/// is local this happens iff some `g ∘ f` with `f: M_i -> X`, `g: X -> M_i` is invertible.
pub fn higman_via_summand(m: &Module, h: &Subgroup, opts: DecOptions) -> Result<bool> {
    if m.dim() == 0 || h.is_whole() {
        return Ok(true);
    }
    let d = decompose_with(m, opts)?;
    for c in &d.classes {
        let mi = &d.summands[c[0]].module;
        if !summand_of_ind_res(mi, h)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For indecomposable `mi`, whether it is a summand of `Ind_H Res_H mi`.
pub fn summand_of_ind_res(mi: &Module, h: &Subgroup) -> Result<bool> {
    let x = mi.restrict(h)?.induce(h)?;
    let fs = hom_space(mi, &x)?;
    let gs = hom_space(&x, mi)?;
    for g in gs.basis() {
        for f in fs.basis() {
            if g.mul(f).is_invertible() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

pub fn higman_tests(m: &Module, h: &Subgroup, opts: DecOptions) -> Result<Higman> {
    Ok(Higman { via_trace: higman_via_trace(m, h)?, via_summand: higman_via_summand(m, h, opts)? })
}

/// Whether `M` is projective relative to some member of the collection.
pub fn is_relatively_projective(m: &Module, coll: &SubgroupCollection) -> Result<bool> {
    if m.dim() == 0 {
        return Ok(true);
    }
    let end = hom_space(m, m)?;
    let id = end.coords(&FpMatrix::identity(m.p(), m.dim())).expect("identity");
    let mut s = crate::gfla::Subspace::zero(m.p(), end.dim());
    for d in coll.members() {
        s = s.sum(&trace_image(&end, d)?)?;
        if s.contains(&id) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Vertex of an indecomposable module: the unique minimal class of `p`-subgroups `Q`
/// with `M` relatively `Q`-projective.
pub fn vertex(m: &Module, opts: DecOptions) -> Result<Subgroup> {
    if !is_indecomposable(m, opts)? {
        return Err(Error::Precondition("vertex of a decomposable module".into()));
    }
    let g = m.group().whole();
    let classes = g.p_subgroup_classes(m.p());
    let end = hom_space(m, m)?;
    let mut passing: Vec<Subgroup> = Vec::new();
    for q in classes.members() {
        // anything containing a passing class passes too, so only test candidates above none
        if passing.iter().any(|r| g.subconjugator(r, q).is_some()) {
            continue;
        }
        if higman_via_trace_in(&end, q)? {
            passing.push(q.clone());
        }
    }
    match passing.len() {
        0 => Err(Error::Invariant("no p-subgroup passes the Higman test (Sylow must)".into())),
        1 => Ok(passing.remove(0)),
        _ => Err(Error::Invariant(format!(
            "non-conjugate minimal vertex candidates of orders {:?}",
            passing.iter().map(|s| s.order()).collect::<Vec<_>>()
        ))),
    }
}

/// Minimal polynomial factorisation helper exposed for reports.
pub fn min_poly_factors(x: &FpMatrix, seed: u64) -> Vec<(Poly, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    x.min_poly().factor(&mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{Group, Perm};
    use std::sync::Arc;

    fn grp(n: usize, gens: &[&str]) -> Arc<Group> {
        Group::from_generators(n, gens.iter().map(|s| Perm::parse_cycles(n, s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn regular_c2_is_indecomposable() {
        let c2 = grp(2, &["(0 1)"]);
        let r = Module::regular(&c2, 2);
        let end = EndoAlgebra::new(&r).unwrap();
        assert_eq!(end.dim(), 2);
        assert_eq!(has_nontrivial_idempotent(&end), Some(false));
        assert!(is_indecomposable(&r, DecOptions::default()).unwrap());
        // g - 1 is nilpotent, so no Fitting split
        let f = r.generator_matrices()[0].sub(&FpMatrix::identity(2, 2));
        assert!(fitting_split(&r, &f).unwrap().is_none());
        assert!(fitting_split(&r, &FpMatrix::identity(2, 2)).unwrap().is_none());
    }

    #[test]
    fn s3_permutation_module_mod_2() {
        let s3 = grp(3, &["(0 1)", "(0 1 2)"]);
        let h = s3.subgroup(&[s3.index_of(&Perm::parse_cycles(3, "(0 1)").unwrap()).unwrap()]);
        let pm = Module::permutation(&h, 2);
        let d = decompose(&pm, 1).unwrap();
        let dims: Vec<usize> = d.summands.iter().map(|s| s.module.dim()).collect();
        assert_eq!(dims, vec![1, 2]);
        assert!(d.reconstruction().is_identity());
        let m2 = pm.direct_sum(&pm).unwrap();
        let d2 = decompose(&m2, 5).unwrap();
        assert_eq!(d2.multiplicities().iter().map(|x| x.1).collect::<Vec<_>>(), vec![2, 2]);
    }

    #[test]
    fn vertices_of_small_modules() {
        let s3 = grp(3, &["(0 1)", "(0 1 2)"]);
        let t = Module::trivial(&s3, 2);
        assert_eq!(vertex(&t, DecOptions::default()).unwrap().order(), 2);
        let a5 = grp(5, &["(0 1 2 3 4)", "(0 1 2)"]);
        let v = vertex(&Module::trivial(&a5, 2), DecOptions::default()).unwrap();
        assert_eq!(v.label(), "V4");
    }

    #[test]
    fn higman_trivial_s3_c2() {
        let s3 = grp(3, &["(0 1)", "(0 1 2)"]);
        let h = s3.subgroup(&[s3.index_of(&Perm::parse_cycles(3, "(0 1)").unwrap()).unwrap()]);
        let t = Module::trivial(&s3, 2);
        let r = higman_tests(&t, &h, DecOptions::default()).unwrap();
        assert!(r.via_trace && r.via_summand);
        let r1 = higman_tests(&t, &s3.trivial_subgroup(), DecOptions::default()).unwrap();
        assert!(!r1.via_trace && !r1.via_summand);
    }
}

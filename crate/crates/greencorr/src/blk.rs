//! Blocks of `kG`: central idempotents, defect groups and Brauer correspondents.

use crate::dec::min_poly_factors;
use crate::error::{Error, Result};
use crate::gfla::{FpMatrix, Subspace};
use crate::grp::{Group, Subgroup};
use crate::rep::{hom_space, Module};
use std::sync::Arc;

/// `sum_x c_x x` in `kG`, coefficients indexed by the canonical element order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    group: Arc<Group>,
    p: u32,
    coeffs: Vec<u32>,
}

impl GroupAlgebraElement {
    pub fn zero(group: &Arc<Group>, p: u32) -> Self {
        GroupAlgebraElement { group: group.clone(), p, coeffs: vec![0; group.order()] }
    }

    pub fn one(group: &Arc<Group>, p: u32) -> Self {
        Self::basis_element(group, p, 0)
    }

    pub fn basis_element(group: &Arc<Group>, p: u32, x: usize) -> Self {
        let mut e = Self::zero(group, p);
        e.coeffs[x] = 1;
        e
    }

    pub fn from_coeffs(group: &Arc<Group>, p: u32, coeffs: Vec<u32>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::Dimension(format!("{} coefficients for a group of order {}", coeffs.len(), group.order())));
        }
        Ok(GroupAlgebraElement { group: group.clone(), p, coeffs: coeffs.into_iter().map(|c| c % p).collect() })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(&a, &b)| crate::gfla::add(a, b, self.p)).collect();
        GroupAlgebraElement { coeffs, ..self.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(&a, &b)| crate::gfla::sub(a, b, self.p)).collect();
        GroupAlgebraElement { coeffs, ..self.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (g, p) = (&self.group, self.p as u64);
        let mut acc = vec![0u64; g.order()];
        for (x, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (y, &b) in o.coeffs.iter().enumerate() {
                if b != 0 {
                    let z = g.mul(x, y);
                    acc[z] = (acc[z] + a as u64 * b as u64) % p;
                }
            }
        }
        GroupAlgebraElement { coeffs: acc.into_iter().map(|c| c as u32).collect(), ..self.clone() }
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    pub fn is_central(&self) -> bool {
        self.group.generator_indices().iter().all(|&s| {
            let s = Self::basis_element(&self.group, self.p, s);
            s.mul(self) == self.mul(&s)
        })
    }

    /// Sum of the coefficients: the action on the trivial module.
    pub fn augmentation(&self) -> u32 {
        self.coeffs.iter().fold(0, |a, &c| crate::gfla::add(a, c, self.p))
    }

    /// Coefficients restricted to the elements of `s`, as an element of `k[s]`.
    pub fn truncate(&self, s: &[usize]) -> Self {
        let mut e = Self::zero(&self.group, self.p);
        for &x in s {
            e.coeffs[x] = self.coeffs[x];
        }
        e
    }

    /// Pushes an element of `kH` forward into `kG`.
    pub fn embed(&self, h: &Subgroup) -> Result<Self> {
        if **h.as_group() != *self.group {
            return Err(Error::Compatibility("element is not over this subgroup".into()));
        }
        let mut e = Self::zero(h.parent(), self.p);
        for (i, &c) in self.coeffs.iter().enumerate() {
            e.coeffs[h.elements()[i]] = c;
        }
        Ok(e)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        self.coeffs.iter().flat_map(|c| c.to_be_bytes()).collect()
    }
}

/// `Z(kG)` in the basis of class sums, with multiplication operators `L_i`.
#[derive(Clone, Debug)]
pub struct Center {
    group: Arc<Group>,
    p: u32,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    mult: Vec<FpMatrix>,
}

impl Center {
    pub fn new(group: &Arc<Group>, p: u32) -> Center {
        let classes = group.conjugacy_classes();
        let mut class_of = vec![0; group.order()];
        for (i, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x] = i;
            }
        }
        let n = classes.len();
        // L_i[k][j] = #{x in C_i : x^-1 r_k in C_j}
        let mult = classes
            .iter()
            .map(|ci| {
                let mut m = vec![0u64; n * n];
                for (k, ck) in classes.iter().enumerate() {
                    for &x in ci {
                        let j = class_of[group.mul(group.inv(x), ck[0])];
                        m[k * n + j] += 1;
                    }
                }
                FpMatrix::from_vec(p, n, n, m.into_iter().map(|v| (v % p as u64) as u32).collect())
            })
            .collect();
        Center { group: group.clone(), p, classes, class_of, mult }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn dim(&self) -> usize {
        self.classes.len()
    }
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn one(&self) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[self.class_of[0]] = 1;
        v
    }

    pub fn to_element(&self, coords: &[u32]) -> GroupAlgebraElement {
        let mut e = GroupAlgebraElement::zero(&self.group, self.p);
        for (c, cl) in coords.iter().zip(&self.classes) {
            for &x in cl {
                e.coeffs[x] = *c;
            }
        }
        e
    }

    /// Class-sum coordinates, or `None` if the element is not central.
    pub fn coords(&self, e: &GroupAlgebraElement) -> Option<Vec<u32>> {
        let v: Vec<u32> = self.classes.iter().map(|c| e.coeffs[c[0]]).collect();
        self.classes.iter().zip(&v).all(|(c, &a)| c.iter().all(|&x| e.coeffs[x] == a)).then_some(v)
    }

    pub fn mult_op(&self, a: &[u32]) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.p, self.dim(), self.dim());
        for (l, &c) in self.mult.iter().zip(a) {
            if c != 0 {
                m.axpy(c, l);
            }
        }
        m
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.mult_op(a).mul_vec(b)
    }

    pub fn pow(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let (mut base, mut acc) = (a.to_vec(), self.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// The `F_p`-linear map `x -> x^p`.
    pub fn frobenius(&self) -> FpMatrix {
        let n = self.dim();
        let cols: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut b = vec![0; n];
                b[i] = 1;
                self.pow(&b, self.p as u64)
            })
            .collect();
        FpMatrix::from_columns(self.p, n, &cols)
    }

    /// `{x : x^p = x}`, which is spanned by the block idempotents.
    pub fn frobenius_fixed(&self) -> Subspace {
        self.frobenius().sub(&FpMatrix::identity(self.p, self.dim())).kernel()
    }

    /// Image of `Tr_D^G` on `(kG)^D`, in class-sum coordinates.
    pub fn trace_image(&self, d: &Subgroup) -> Result<Subspace> {
        let g = &self.group;
        let reps = g.whole().left_coset_reps(d)?;
        let mut seen = vec![false; g.order()];
        let mut vecs = Vec::new();
        for x in 0..g.order() {
            if seen[x] {
                continue;
            }
            let mut orbit = Vec::new();
            for &y in d.elements() {
                let z = g.conj(y, x);
                if !seen[z] {
                    seen[z] = true;
                    orbit.push(z);
                }
            }
            let mut t = GroupAlgebraElement::zero(g, self.p);
            for &c in &reps {
                for &y in &orbit {
                    let z = g.conj(c, y);
                    t.coeffs[z] = crate::gfla::add(t.coeffs[z], 1, self.p);
                }
            }
            vecs.push(self.coords(&t).ok_or_else(|| Error::Invariant("relative trace is not central".into()))?);
        }
        Ok(Subspace::from_vectors(self.p, self.dim(), vecs))
    }
}

/// Class sums of `G`.
pub fn center_basis(group: &Arc<Group>, p: u32) -> Vec<GroupAlgebraElement> {
    let z = Center::new(group, p);
    (0..z.dim())
        .map(|i| {
            let mut v = vec![0; z.dim()];
            v[i] = 1;
            z.to_element(&v)
        })
        .collect()
}

/// A block of `kG` with its idempotent and defect group.
#[derive(Clone, Debug)]
pub struct Block {
    pub idempotent: GroupAlgebraElement,
    /// Class-sum coordinates of the idempotent.
    pub coords: Vec<u32>,
    pub defect: Subgroup,
}

impl Block {
    pub fn is_principal(&self) -> bool {
        self.idempotent.augmentation() != 0
    }
}

/// Splits the idempotent `e` of `Z` along the primary components of multiplication by `z`
/// on the ideal `eZ`.
fn split_by(z: &Center, e: &[u32], x: &[u32], seed: u64) -> Result<Vec<Vec<u32>>> {
    let p = z.p;
    let ideal = z.mult_op(e).column_space();
    if ideal.dim() <= 1 {
        return Ok(vec![e.to_vec()]);
    }
    let basis = ideal.basis().to_vec();
    let lx = z.mult_op(x);
    let cols: Vec<Vec<u32>> = basis.iter().map(|b| ideal.coords(&lx.mul_vec(b)).expect("ideal")).collect();
    let t = FpMatrix::from_columns(p, basis.len(), &cols);
    let factors = min_poly_factors(&t, seed);
    if factors.len() <= 1 {
        return Ok(vec![e.to_vec()]);
    }
    let kernels: Vec<Vec<Vec<u32>>> =
        factors.iter().map(|(f, m)| t.eval_poly(f).pow(*m as u64).kernel().basis().to_vec()).collect();
    let all: Vec<Vec<u32>> = kernels.iter().flatten().cloned().collect();
    let m = FpMatrix::from_columns(p, basis.len(), &all);
    let ce = ideal.coords(e).expect("e lies in eZ");
    let (sol, _) = m.solve(&FpMatrix::column(p, &ce))?.ok_or_else(|| Error::Invariant("primary decomposition failed".into()))?;
    let sol = sol.col(0);
    let bm = FpMatrix::from_columns(p, z.dim(), &basis);
    let mut out = Vec::new();
    let mut off = 0;
    for k in &kernels {
        let mut local = vec![0u32; basis.len()];
        for (j, v) in k.iter().enumerate() {
            for (l, &a) in v.iter().enumerate() {
                local[l] = crate::gfla::add(local[l], crate::gfla::mul(a, sol[off + j], p), p);
            }
        }
        off += k.len();
        let ei = bm.mul_vec(&local);
        if ei.iter().any(|&c| c != 0) {
            out.push(ei);
        }
    }
    Ok(out)
}

/// Primitive idempotents of `Z(kG)` by Fitting splits on class sums, refined by elements of
/// the Frobenius-fixed subalgebra when the class sums do not separate every block.
pub fn block_idempotents(group: &Arc<Group>, p: u32) -> Result<Vec<Block>> {
    let z = Center::new(group, p);
    let target = z.frobenius_fixed().dim();
    let mut idems = vec![z.one()];
    let n = z.dim();
    let units = (0..n).map(|i| {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    });
    let candidates: Vec<Vec<u32>> = units.chain(z.frobenius_fixed().basis().iter().cloned()).collect();
    for (k, x) in candidates.iter().enumerate() {
        if idems.len() == target {
            break;
        }
        let mut next = Vec::new();
        for e in &idems {
            next.extend(split_by(&z, e, x, k as u64)?);
        }
        idems = next;
    }
    if idems.len() != target {
        return Err(Error::FieldTooSmall(format!(
            "found {} of {} central idempotents; the semisimple quotient of the center does not split",
            idems.len(),
            target
        )));
    }
    let mut blocks = idems
        .into_iter()
        .map(|c| {
            let e = z.to_element(&c);
            debug_assert!(e.is_idempotent() && e.is_central());
            let defect = defect_group_of(&z, &c)?;
            Ok(Block { idempotent: e, coords: c, defect })
        })
        .collect::<Result<Vec<_>>>()?;
    blocks.sort_by_key(|b| b.idempotent.to_bytes());
    Ok(blocks)
}

fn defect_group_of(z: &Center, e: &[u32]) -> Result<Subgroup> {
    let g = z.group();
    let whole = g.whole();
    let classes = whole.p_subgroup_classes(z.p);
    let mut works = Vec::new();
    for d in classes.members() {
        if z.trace_image(d)?.contains(e) {
            works.push(d.clone());
        }
    }
    let minimal: Vec<&Subgroup> = works
        .iter()
        .filter(|d| !works.iter().any(|o| o.order() < d.order() && whole.subconjugator(o, d).is_some()))
        .collect();
    match minimal.as_slice() {
        [d] => Ok((*d).clone()),
        [] => Err(Error::Invariant("block idempotent is not a relative trace from any p-subgroup".into())),
        _ => Err(Error::Invariant(format!("{} minimal defect classes", minimal.len()))),
    }
}

/// Defect group of `b`: the minimal `p`-subgroup class `D` with `e_B ∈ Tr_D^G((kG)^D)`.
pub fn defect_group(b: &Block) -> Result<Subgroup> {
    let z = Center::new(b.idempotent.group(), b.idempotent.p());
    defect_group_of(&z, &b.coords)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockMembership {
    Single(usize),
    /// Blocks acting nonzero on the module.
    Several(Vec<usize>),
}

/// The block whose idempotent acts as the identity on `m`.
pub fn block_of(blocks: &[Block], m: &Module) -> BlockMembership {
    let hit: Vec<usize> = blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| !m.algebra_action(b.idempotent.coeffs()).is_zero())
        .map(|(i, _)| i)
        .collect();
    match hit.as_slice() {
        [i] if m.algebra_action(blocks[*i].idempotent.coeffs()).is_identity() => BlockMembership::Single(*i),
        _ => BlockMembership::Several(hit),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BrauerRule {
    SameGroup,
    Product,
    BrauerHomomorphism,
}

#[derive(Clone, Debug)]
pub struct BrauerCorrespondent {
    pub block: Block,
    pub rule: BrauerRule,
    /// Blocks of `kH` with the right defect class.
    pub candidates: usize,
}

/// The block `b` of `kH` (for `H ⊇ N_G(D)`) matching `B`: first by `e_B e_b ≠ 0` in `kG`, then by
/// `Br_D(e_B) e_b ≠ 0` if the product rule leaves several candidates.
pub fn brauer_correspondent(b: &Block, h: &Subgroup) -> Result<BrauerCorrespondent> {
    let g = b.idempotent.group();
    let p = b.idempotent.p();
    let whole = g.whole();
    let d = &b.defect;
    if h.is_whole() {
        return Ok(BrauerCorrespondent { block: b.clone(), rule: BrauerRule::SameGroup, candidates: 1 });
    }
    // a conjugate of D whose normalizer lies in H
    let dd = whole
        .elements()
        .iter()
        .map(|&x| d.conjugate(x))
        .find(|c| c.is_subgroup_of(h) && whole.normalizer(c).map(|n| n.is_subgroup_of(h)).unwrap_or(false))
        .ok_or_else(|| Error::Precondition("subgroup contains no N_G(D) for a conjugate D of the defect group".into()))?;
    let local = block_idempotents(h.as_group(), p)?;
    let cands: Vec<(Block, GroupAlgebraElement)> = local
        .into_iter()
        .filter(|c| h.globalize(&c.defect).map(|x| whole.are_conjugate(&x, &dd)).unwrap_or(false))
        .map(|c| {
            let e = c.idempotent.embed(h).expect("subgroup element");
            (c, e)
        })
        .collect();
    let by_product: Vec<usize> =
        cands.iter().enumerate().filter(|(_, (_, e))| !b.idempotent.mul(e).is_zero()).map(|(i, _)| i).collect();
    if let [i] = by_product.as_slice() {
        return Ok(BrauerCorrespondent { block: cands[*i].0.clone(), rule: BrauerRule::Product, candidates: cands.len() });
    }
    let cent: Vec<usize> =
        (0..g.order()).filter(|&x| dd.generators().iter().all(|&y| g.mul(x, y) == g.mul(y, x))).collect();
    let br = b.idempotent.truncate(&cent);
    let by_brauer: Vec<usize> = cands.iter().enumerate().filter(|(_, (_, e))| !br.mul(e).is_zero()).map(|(i, _)| i).collect();
    match by_brauer.as_slice() {
        [i] => Ok(BrauerCorrespondent { block: cands[*i].0.clone(), rule: BrauerRule::BrauerHomomorphism, candidates: cands.len() }),
        _ => Err(Error::Invariant(format!(
            "Brauer correspondent not determined: {} candidates, {} by product, {} by Brauer homomorphism",
            cands.len(),
            by_product.len(),
            by_brauer.len()
        ))),
    }
}

/// `S ∩ S^x` is conjugate to `d` for some `x`, `S` a Sylow subgroup.
pub fn is_sylow_intersection(d: &Subgroup, p: u32) -> bool {
    let whole = d.parent().whole();
    let s = whole.sylow(p);
    whole.elements().iter().any(|&x| s.intersect(&s.conjugate(x)).map(|i| whole.are_conjugate(&i, d)).unwrap_or(false))
}

#[derive(Clone, Debug, Default)]
pub struct OrthogonalityReport {
    pub pairs: usize,
    /// `(i, j)` sample indices in different blocks with a nonzero hom.
    pub failures: Vec<(usize, usize)>,
}

/// `Hom_G(M_i, M_j) = 0` whenever the samples lie in different blocks.
pub fn block_orthogonality_check(blocks: &[Block], samples: &[Module]) -> Result<OrthogonalityReport> {
    let which: Vec<BlockMembership> = samples.iter().map(|m| block_of(blocks, m)).collect();
    let mut r = OrthogonalityReport::default();
    for (i, a) in samples.iter().enumerate() {
        for (j, b) in samples.iter().enumerate() {
            if let (BlockMembership::Single(x), BlockMembership::Single(y)) = (&which[i], &which[j]) {
                if x != y {
                    r.pairs += 1;
                    if hom_space(a, b)?.dim() != 0 {
                        r.failures.push((i, j));
                    }
                }
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::Perm;

    fn grp(n: usize, gens: &[&str]) -> Arc<Group> {
        Group::from_generators(n, gens.iter().map(|s| Perm::parse_cycles(n, s).unwrap()).collect()).unwrap()
    }

    /// Number of `x` in `Z` with `x^2 = x`, by enumeration.
    fn idempotent_count(z: &Center) -> usize {
        let n = z.dim();
        let p = z.p();
        let total = (p as usize).pow(n as u32);
        (0..total)
            .filter(|&k| {
                let mut v = vec![0u32; n];
                let mut r = k;
                for c in v.iter_mut() {
                    *c = (r % p as usize) as u32;
                    r /= p as usize;
                }
                z.mul(&v, &v) == v
            })
            .count()
    }

    #[test]
    fn s3_blocks() {
        let g = grp(3, &["(0 1)", "(0 1 2)"]);
        assert_eq!(center_basis(&g, 2).len(), 3);
        assert!(center_basis(&g, 2).iter().all(|e| e.is_central()));
        let z2 = Center::new(&g, 2);
        assert_eq!(idempotent_count(&z2), 4);
        let b2 = block_idempotents(&g, 2).unwrap();
        assert_eq!(b2.len(), 2);
        let z3 = Center::new(&g, 3);
        let b3 = block_idempotents(&g, 3).unwrap();
        assert_eq!(1usize << b3.len(), idempotent_count(&z3));
        let principal = b2.iter().find(|b| b.is_principal()).unwrap();
        assert_eq!(principal.defect.order(), 2);
        let other = b2.iter().find(|b| !b.is_principal()).unwrap();
        assert!(other.defect.is_trivial());
        let t = Module::trivial(&g, 2);
        let idx = b2.iter().position(|b| b.is_principal()).unwrap();
        assert_eq!(block_of(&b2, &t), BlockMembership::Single(idx));
        assert!(matches!(block_of(&b2, &Module::regular(&g, 2)), BlockMembership::Several(v) if v.len() == 2));
    }

    #[test]
    fn p_group_has_one_block() {
        let g = grp(4, &["(0 1 2 3)", "(0 2)"]);
        let b = block_idempotents(&g, 2).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].idempotent, GroupAlgebraElement::one(&g, 2));
        assert!(b[0].defect.is_whole());
    }

    #[test]
    fn principal_brauer_correspondent() {
        let g = grp(4, &["(0 1 2 3)", "(0 1)"]);
        let blocks = block_idempotents(&g, 2).unwrap();
        let b = blocks.iter().find(|b| b.is_principal()).unwrap();
        assert_eq!(b.defect.order(), 8);
        let n = g.whole().normalizer(&b.defect).unwrap();
        let c = brauer_correspondent(b, &n).unwrap();
        assert!(c.block.is_principal());
        assert!(is_sylow_intersection(&b.defect, 2));
    }
}

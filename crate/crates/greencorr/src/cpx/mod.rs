//! Bounded cochain complexes of modules, `∂_d: X^d -> X^{d+1}`.
//!
//! Sign conventions: shift scales the boundary by `(-1)^n`; the cone of `f: S -> T` is
//! `T^n ⊕ S^{n+1}` with `∂(t, s) = (∂t + f s, -∂s)`; the dual has
//! `δ_d = (-1)^{d+1} ∂_{-d-1}^#`; the hom complex uses `(Df)_j = (-1)^j (∂ f_j - f_{j+1} ∂)`;
//! the tensor product uses `∂(x ⊗ y) = (-1)^{|y|} ∂x ⊗ y + x ⊗ ∂y` with summands ordered by
//! the degree of the left factor. These are the choices under which the super trace and the
//! unit are both chain maps.

mod hom;
mod seq;

pub use hom::{
    find_chain_iso, homotopy_image, is_null_homotopic, quotient_hom, relative_null_space, ChainHomSpace,
    Homotopy, QuotientHom,
};
pub use seq::{
    chain_retraction, cokernel, hull, is_term_split, is_v_split, relative_cover, relative_cover_economical,
    sequence_in_class, split_idempotent, splits_over_trivial_group, term_retractions, triangle_of, Cover, IdempotentSplit, ShortExact, Triangle,
    TriangleCertificate,
};

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gfla::{sign, FpMatrix};
use crate::grp::{Group, Subgroup, SubgroupCollection};
use crate::rep::{induce_matrix, is_intertwiner, Module};

/// A bounded complex. Zero terms at the window edges are trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct Complex {
    group: Arc<Group>,
    p: u32,
    lo: i32,
    terms: Vec<Module>,
    diffs: Vec<FpMatrix>,
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<usize> = self.terms.iter().map(|m| m.dim()).collect();
        write!(f, "Complex(lo={}, dims={:?}, p={})", self.lo, dims, self.p)
    }
}

impl Complex {
    /// `diffs[k]` maps `terms[k]` to `terms[k + 1]`.
    pub fn new(group: &Arc<Group>, p: u32, lo: i32, terms: Vec<Module>, diffs: Vec<FpMatrix>) -> Result<Complex> {
        if diffs.len() != terms.len().saturating_sub(1) {
            return Err(Error::Dimension(format!("{} terms need {} boundaries", terms.len(), terms.len().saturating_sub(1))));
        }
        for t in &terms {
            if t.group() != group || t.p() != p {
                return Err(Error::Compatibility("complex terms over different groups or fields".into()));
            }
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.shape() != (terms[k + 1].dim(), terms[k].dim()) {
                return Err(Error::Dimension(format!("boundary at degree {} has the wrong shape", lo + k as i32)));
            }
            if !is_intertwiner(&terms[k], &terms[k + 1], d) {
                return Err(Error::Invariant(format!("boundary at degree {} is not an intertwiner", lo + k as i32)));
            }
            if k + 1 < diffs.len() && !diffs[k + 1].mul(d).is_zero() {
                return Err(Error::Invariant(format!("boundary squares to nonzero at degree {}", lo + k as i32)));
            }
        }
        Ok(Self::new_unchecked(group, p, lo, terms, diffs))
    }

    pub(crate) fn new_unchecked(group: &Arc<Group>, p: u32, lo: i32, mut terms: Vec<Module>, mut diffs: Vec<FpMatrix>) -> Complex {
        let mut lo = lo;
        while !terms.is_empty() && terms[0].dim() == 0 {
            terms.remove(0);
            if !diffs.is_empty() {
                diffs.remove(0);
            }
            lo += 1;
        }
        while !terms.is_empty() && terms[terms.len() - 1].dim() == 0 {
            terms.pop();
            diffs.pop();
        }
        if terms.is_empty() {
            lo = 0;
        }
        Complex { group: group.clone(), p, lo, terms, diffs }
    }

    pub fn zero(group: &Arc<Group>, p: u32) -> Complex {
        Complex { group: group.clone(), p, lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// `M` placed in degree `d`.
    pub fn concentrated(m: &Module, d: i32) -> Complex {
        Self::new_unchecked(m.group(), m.p(), d, vec![m.clone()], Vec::new())
    }

    /// The complex `k` in degree 0.
    pub fn unit(group: &Arc<Group>, p: u32) -> Complex {
        Self::concentrated(&Module::trivial(group, p), 0)
    }

    /// `a -> b` in degrees `lo`, `lo + 1`.
    pub fn two_term(a: &Module, b: &Module, f: &FpMatrix, lo: i32) -> Result<Complex> {
        Self::new(a.group(), a.p(), lo, vec![a.clone(), b.clone()], vec![f.clone()])
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn lo(&self) -> i32 {
        self.lo
    }
    /// Last nonzero degree; `lo - 1` for the zero complex.
    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }
    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> &[Module] {
        &self.terms
    }

    pub fn term(&self, d: i32) -> Module {
        match self.idx(d) {
            Some(k) => self.terms[k].clone(),
            None => Module::zero(&self.group, self.p),
        }
    }

    pub fn dim(&self, d: i32) -> usize {
        self.idx(d).map_or(0, |k| self.terms[k].dim())
    }

    pub fn total_dim(&self) -> usize {
        self.terms.iter().map(|m| m.dim()).sum()
    }

    /// `∂_d: X^d -> X^{d+1}`.
    pub fn boundary(&self, d: i32) -> FpMatrix {
        match self.idx(d) {
            Some(k) if k < self.diffs.len() => self.diffs[k].clone(),
            _ => FpMatrix::zeros(self.p, self.dim(d + 1), self.dim(d)),
        }
    }

    fn idx(&self, d: i32) -> Option<usize> {
        if d >= self.lo && d <= self.hi() {
            Some((d - self.lo) as usize)
        } else {
            None
        }
    }

    pub fn is_compatible(&self, o: &Complex) -> bool {
        self.group == o.group && self.p == o.p
    }

    pub(crate) fn check_compatible(&self, o: &Complex) -> Result<()> {
        if self.is_compatible(o) {
            Ok(())
        } else {
            Err(Error::Compatibility("complexes over different groups or fields".into()))
        }
    }

    fn from_fn(
        group: &Arc<Group>,
        p: u32,
        lo: i32,
        hi: i32,
        mut term: impl FnMut(i32) -> Module,
        mut diff: impl FnMut(i32) -> FpMatrix,
    ) -> Complex {
        if hi < lo {
            return Self::zero(group, p);
        }
        let terms: Vec<Module> = (lo..=hi).map(&mut term).collect();
        let diffs: Vec<FpMatrix> = (lo..hi).map(&mut diff).collect();
        debug_assert!(diffs.windows(2).all(|w| w[1].mul(&w[0]).is_zero()));
        Self::new_unchecked(group, p, lo, terms, diffs)
    }

    /// `X[n]^d = X^{d+n}`, boundary scaled by `(-1)^n`.
    pub fn shift(&self, n: i32) -> Complex {
        let s = sign(n as i64, self.p);
        Self::from_fn(&self.group, self.p, self.lo - n, self.hi() - n, |d| self.term(d + n), |d| self.boundary(d + n).scale(s))
    }

    pub fn direct_sum(&self, o: &Complex) -> Result<Complex> {
        self.check_compatible(o)?;
        let (lo, hi) = union(self, o);
        Ok(Self::from_fn(
            &self.group,
            self.p,
            lo,
            hi,
            |d| self.term(d).direct_sum(&o.term(d)).expect("compatible"),
            |d| FpMatrix::block_diag(self.p, &[&self.boundary(d), &o.boundary(d)]),
        ))
    }

    pub fn restrict(&self, h: &Subgroup) -> Result<Complex> {
        if h.parent() != &self.group {
            return Err(Error::Containment("subgroup of a different group".into()));
        }
        let terms = self.terms.iter().map(|m| m.restrict(h)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new_unchecked(h.as_group(), self.p, self.lo, terms, self.diffs.clone()))
    }

    /// Degreewise induction from `h` (the complex lives on `h.as_group()`).
    pub fn induce(&self, h: &Subgroup) -> Result<Complex> {
        if h.as_group() != &self.group {
            return Err(Error::Containment("complex is not over the subgroup".into()));
        }
        let n = h.index_in_parent();
        let terms = self.terms.iter().map(|m| m.induce(h)).collect::<Result<Vec<_>>>()?;
        let diffs = self.diffs.iter().map(|d| induce_matrix(d, n)).collect();
        Ok(Self::new_unchecked(h.parent(), self.p, self.lo, terms, diffs))
    }

    /// `(X^#)^d = (X^{-d})^#` with `δ_d = (-1)^{d+1} ∂_{-d-1}^#`.
    pub fn dual(&self) -> Complex {
        Self::from_fn(
            &self.group,
            self.p,
            -self.hi(),
            -self.lo,
            |d| self.term(-d).dual(),
            |d| self.boundary(-d - 1).transpose().scale(sign(d as i64 + 1, self.p)),
        )
    }

    /// Total complex of `X ⊗ Y`.
    pub fn tensor(&self, o: &Complex) -> Result<Complex> {
        self.check_compatible(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero(&self.group, self.p));
        }
        let p = self.p;
        let lo = self.lo + o.lo;
        let hi = self.hi() + o.hi();
        Ok(Self::from_fn(
            &self.group,
            p,
            lo,
            hi,
            |n| {
                let parts: Vec<Module> =
                    tensor_layout(self, o, n).iter().map(|&(i, j, _)| self.term(i).tensor(&o.term(j)).expect("compatible")).collect();
                Module::direct_sum_all(&parts.iter().collect::<Vec<_>>()).expect("compatible")
            },
            |n| {
                let src = tensor_layout(self, o, n);
                let dst = tensor_layout(self, o, n + 1);
                let rows = dst.last().map_or(0, |&(i, j, off)| off + self.dim(i) * o.dim(j));
                let cols = src.last().map_or(0, |&(i, j, off)| off + self.dim(i) * o.dim(j));
                let mut m = FpMatrix::zeros(p, rows, cols);
                for &(i, j, off) in &src {
                    if let Some(&(_, _, t)) = dst.iter().find(|&&(a, b, _)| a == i + 1 && b == j) {
                        let blk = self.boundary(i).kron(&FpMatrix::identity(p, o.dim(j))).scale(sign(j as i64, p));
                        m.set_block(t, off, &blk);
                    }
                    if let Some(&(_, _, t)) = dst.iter().find(|&&(a, b, _)| a == i && b == j + 1) {
                        m.set_block(t, off, &FpMatrix::identity(p, self.dim(i)).kron(&o.boundary(j)));
                    }
                }
                m
            },
        ))
    }

    /// `Hom_k(X, Y)` complex: `hom^i = ⊕_j Hom_k(X^j, Y^{j+i})`, summands by ascending `j`,
    /// each vectorised row-major with `g · f = ρ_Y(g) f ρ_X(g)^{-1}`.
    pub fn hom_complex(&self, y: &Complex) -> Result<Complex> {
        self.check_compatible(y)?;
        let x = self;
        if x.is_zero() || y.is_zero() {
            return Ok(Self::zero(&self.group, self.p));
        }
        let p = self.p;
        Ok(Self::from_fn(
            &self.group,
            p,
            y.lo - x.hi(),
            y.hi() - x.lo,
            |i| {
                let parts: Vec<Module> = hom_layout(x, y, i).iter().map(|&(j, _)| hom_module(&x.term(j), &y.term(j + i))).collect();
                Module::direct_sum_all(&parts.iter().collect::<Vec<_>>()).expect("compatible")
            },
            |i| {
                let src = hom_layout(x, y, i);
                let dst = hom_layout(x, y, i + 1);
                let size = |l: &[(i32, usize)], ii: i32| l.last().map_or(0, |&(j, off)| off + x.dim(j) * y.dim(j + ii));
                let mut m = FpMatrix::zeros(p, size(&dst, i + 1), size(&src, i));
                for &(j, off) in &src {
                    let s = sign(j as i64, p);
                    // f_j contributes (-1)^j ∂_Y f_j to component j
                    if let Some(&(_, t)) = dst.iter().find(|&&(a, _)| a == j) {
                        m.set_block(t, off, &y.boundary(j + i).kron(&FpMatrix::identity(p, x.dim(j))).scale(s));
                    }
                    // and -(-1)^{j-1} f_j ∂_X to component j - 1
                    if let Some(&(_, t)) = dst.iter().find(|&&(a, _)| a == j - 1) {
                        let blk = FpMatrix::identity(p, y.dim(j + i)).kron(&x.boundary(j - 1).transpose());
                        m.set_block(t, off, &blk.scale(sign(j as i64, p)));
                    }
                }
                m
            },
        ))
    }

    /// Mapping cone of `f: S -> T`.
    pub fn cone(f: &ChainMap) -> Complex {
        let (s, t) = (&f.source, &f.target);
        let p = s.p;
        let lo = t.lo.min(s.lo - 1);
        let hi = t.hi().max(s.hi() - 1);
        Self::from_fn(
            &s.group,
            p,
            lo,
            hi,
            |n| t.term(n).direct_sum(&s.term(n + 1)).expect("compatible"),
            |n| {
                let (tn, sn) = (t.dim(n), s.dim(n + 1));
                let (tn1, sn1) = (t.dim(n + 1), s.dim(n + 2));
                let mut m = FpMatrix::zeros(p, tn1 + sn1, tn + sn);
                m.set_block(0, 0, &t.boundary(n));
                m.set_block(0, tn, &f.comp(n + 1));
                m.set_block(tn1, tn, &s.boundary(n + 1).neg());
                m
            },
        )
    }

    pub fn identity(&self) -> ChainMap {
        ChainMap::new_unchecked(self, self, |d| FpMatrix::identity(self.p, self.dim(d)))
    }

    /// `(degree, dim H^d)` for every degree in the window.
    pub fn homology(&self) -> Vec<(i32, usize)> {
        self.degrees()
            .map(|d| {
                let z = self.dim(d) - self.boundary(d).rank();
                let b = self.boundary(d - 1).rank();
                (d, z - b)
            })
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology().iter().all(|&(_, h)| h == 0)
    }

    /// Acyclic and `V ⊗ X` contractible.
    pub fn is_v_split_acyclic(&self, v: &Module) -> Result<bool> {
        if !self.is_acyclic() {
            return Ok(false);
        }
        let vx = Complex::concentrated(v, 0).tensor(self)?;
        Ok(is_null_homotopic(&vx.identity())?.is_some())
    }

    pub fn is_contractible(&self) -> Result<bool> {
        Ok(is_null_homotopic(&self.identity())?.is_some())
    }

    /// Change of basis `T_d` per degree: new boundary `T_{d+1}^{-1} ∂ T_d`.
    pub fn change_basis(&self, t: impl Fn(i32) -> FpMatrix) -> Result<Complex> {
        let mut terms = Vec::new();
        let mut inv = Vec::new();
        for d in self.degrees() {
            let td = t(d);
            let ti = td.inverse().ok_or_else(|| Error::Invariant(format!("basis change at degree {d} is singular")))?;
            terms.push(self.term(d).change_basis(&td)?);
            inv.push((td, ti));
        }
        let diffs = (0..self.diffs.len()).map(|k| inv[k + 1].1.mul(&self.diffs[k]).mul(&inv[k].0)).collect();
        Ok(Self::new_unchecked(&self.group, self.p, self.lo, terms, diffs))
    }
}

pub(crate) fn union(a: &Complex, b: &Complex) -> (i32, i32) {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => (0, -1),
        (true, false) => (b.lo, b.hi()),
        (false, true) => (a.lo, a.hi()),
        (false, false) => (a.lo.min(b.lo), a.hi().max(b.hi())),
    }
}

/// `(left degree, right degree, offset)` of the summands of `(X ⊗ Y)^n`.
pub(crate) fn tensor_layout(x: &Complex, y: &Complex, n: i32) -> Vec<(i32, i32, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    if x.is_zero() || y.is_zero() {
        return out;
    }
    for i in x.degrees() {
        let j = n - i;
        if j < y.lo || j > y.hi() {
            continue;
        }
        out.push((i, j, off));
        off += x.dim(i) * y.dim(j);
    }
    out
}

/// `(source degree j, offset)` of the summands `Hom(X^j, Y^{j+i})` of `hom^i`.
pub(crate) fn hom_layout(x: &Complex, y: &Complex, i: i32) -> Vec<(i32, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    if x.is_zero() || y.is_zero() {
        return out;
    }
    for j in x.degrees() {
        if j + i < y.lo || j + i > y.hi() {
            continue;
        }
        out.push((j, off));
        off += x.dim(j) * y.dim(j + i);
    }
    out
}

/// `Hom_k(A, B)` with row-major vectorisation and `g · f = ρ_B(g) f ρ_A(g)^{-1}`.
pub fn hom_module(a: &Module, b: &Module) -> Module {
    let ad = a.dual();
    let gens = b.generator_matrices().iter().zip(ad.generator_matrices()).map(|(x, y)| x.kron(y)).collect();
    Module::new_unchecked(a.group().clone(), a.p(), a.dim() * b.dim(), gens)
}

/// A chain map; components live on the common window of source and target.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainMap {
    pub source: Complex,
    pub target: Complex,
    lo: i32,
    comps: Vec<FpMatrix>,
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainMap({:?} -> {:?})", self.source, self.target)
    }
}

impl ChainMap {
    /// Checks shapes, intertwining and `∂ f_d = f_{d+1} ∂`.
    pub fn new(source: &Complex, target: &Complex, comp: impl Fn(i32) -> FpMatrix) -> Result<ChainMap> {
        source.check_compatible(target)?;
        let m = Self::new_unchecked(source, target, comp);
        m.verify()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: &Complex, target: &Complex, comp: impl Fn(i32) -> FpMatrix) -> ChainMap {
        let lo = source.lo.max(target.lo);
        let hi = source.hi().min(target.hi());
        let comps = if source.is_zero() || target.is_zero() || hi < lo { Vec::new() } else { (lo..=hi).map(comp).collect() };
        ChainMap { source: source.clone(), target: target.clone(), lo, comps }
    }

    pub fn verify(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        for (k, c) in self.comps.iter().enumerate() {
            let d = self.lo + k as i32;
            if c.shape() != (t.dim(d), s.dim(d)) {
                return Err(Error::Dimension(format!("chain map component at degree {d} has the wrong shape")));
            }
            if !is_intertwiner(&s.term(d), &t.term(d), c) {
                return Err(Error::Invariant(format!("chain map component at degree {d} is not an intertwiner")));
            }
        }
        let (lo, hi) = union(s, t);
        for d in lo - 1..=hi {
            if t.boundary(d).mul(&self.comp(d)) != self.comp(d + 1).mul(&s.boundary(d)) {
                return Err(Error::Invariant(format!("chain map does not commute with boundaries at degree {d}")));
            }
        }
        Ok(())
    }

    pub fn zero(source: &Complex, target: &Complex) -> ChainMap {
        Self::new_unchecked(source, target, |d| FpMatrix::zeros(source.p, target.dim(d), source.dim(d)))
    }

    pub fn comp(&self, d: i32) -> FpMatrix {
        if d >= self.lo && ((d - self.lo) as usize) < self.comps.len() {
            self.comps[(d - self.lo) as usize].clone()
        } else {
            FpMatrix::zeros(self.source.p, self.target.dim(d), self.source.dim(d))
        }
    }

    pub(crate) fn window(&self) -> (i32, &[FpMatrix]) {
        (self.lo, &self.comps)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.source.degrees().all(|d| self.comp(d).is_identity())
    }

    /// Degreewise invertible.
    pub fn is_iso(&self) -> bool {
        let (lo, hi) = union(&self.source, &self.target);
        (lo..=hi).all(|d| self.source.dim(d) == self.target.dim(d) && (self.source.dim(d) == 0 || self.comp(d).is_invertible()))
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &ChainMap) -> Result<ChainMap> {
        if o.target != self.source {
            return Err(Error::Compatibility("chain maps are not composable".into()));
        }
        Ok(Self::new_unchecked(&o.source, &self.target, |d| self.comp(d).mul(&o.comp(d))))
    }

    fn zip(&self, o: &ChainMap, f: impl Fn(&FpMatrix, &FpMatrix) -> FpMatrix) -> Result<ChainMap> {
        if self.source != o.source || self.target != o.target {
            return Err(Error::Compatibility("chain maps between different complexes".into()));
        }
        Ok(Self::new_unchecked(&self.source, &self.target, |d| f(&self.comp(d), &o.comp(d))))
    }

    pub fn add(&self, o: &ChainMap) -> Result<ChainMap> {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &ChainMap) -> Result<ChainMap> {
        self.zip(o, |a, b| a.sub(b))
    }

    pub fn scale(&self, s: u32) -> ChainMap {
        Self::new_unchecked(&self.source, &self.target, |d| self.comp(d).scale(s))
    }

    /// Components concatenated over the window, each row-major.
    pub fn to_vector(&self) -> Vec<u32> {
        self.comps.iter().flat_map(|c| c.data().iter().copied()).collect()
    }

    pub fn restrict(&self, h: &Subgroup) -> Result<ChainMap> {
        let s = self.source.restrict(h)?;
        let t = self.target.restrict(h)?;
        Ok(Self::new_unchecked(&s, &t, |d| self.comp(d)))
    }

    pub fn induce(&self, h: &Subgroup) -> Result<ChainMap> {
        let s = self.source.induce(h)?;
        let t = self.target.induce(h)?;
        let n = h.index_in_parent();
        Ok(Self::new_unchecked(&s, &t, |d| induce_matrix(&self.comp(d), n)))
    }

    /// `f^#: Y^# -> X^#`, componentwise transpose.
    pub fn dual(&self) -> ChainMap {
        Self::new_unchecked(&self.target.dual(), &self.source.dual(), |d| self.comp(-d).transpose())
    }

    /// `f ⊗ g`.
    pub fn tensor(&self, g: &ChainMap) -> Result<ChainMap> {
        let s = self.source.tensor(&g.source)?;
        let t = self.target.tensor(&g.target)?;
        let p = s.p;
        Ok(Self::new_unchecked(&s, &t, |n| {
            let src = tensor_layout(&self.source, &g.source, n);
            let dst = tensor_layout(&self.target, &g.target, n);
            let mut m = FpMatrix::zeros(p, t.dim(n), s.dim(n));
            for &(i, j, off) in &src {
                if let Some(&(_, _, to)) = dst.iter().find(|&&(a, b, _)| a == i && b == j) {
                    m.set_block(to, off, &self.comp(i).kron(&g.comp(j)));
                }
            }
            m
        }))
    }

    /// Inclusion of the summand `a` (first) or `b` (second) of `a ⊕ b`.
    pub fn inclusion(a: &Complex, b: &Complex, second: bool) -> Result<ChainMap> {
        let s = a.direct_sum(b)?;
        let p = a.p;
        let src = if second { b } else { a };
        Ok(Self::new_unchecked(src, &s, |d| {
            let mut m = FpMatrix::zeros(p, s.dim(d), src.dim(d));
            m.set_block(if second { a.dim(d) } else { 0 }, 0, &FpMatrix::identity(p, src.dim(d)));
            m
        }))
    }

    pub fn projection(a: &Complex, b: &Complex, second: bool) -> Result<ChainMap> {
        let s = a.direct_sum(b)?;
        let p = a.p;
        let dst = if second { b } else { a };
        Ok(Self::new_unchecked(&s, dst, |d| {
            let mut m = FpMatrix::zeros(p, dst.dim(d), s.dim(d));
            m.set_block(0, if second { a.dim(d) } else { 0 }, &FpMatrix::identity(p, dst.dim(d)));
            m
        }))
    }
}

/// `(X ⊗ Y) ⊗ Z -> X ⊗ (Y ⊗ Z)`; no signs.
pub fn associator(x: &Complex, y: &Complex, z: &Complex) -> Result<ChainMap> {
    let xy = x.tensor(y)?;
    let yz = y.tensor(z)?;
    let s = xy.tensor(z)?;
    let t = x.tensor(&yz)?;
    let p = x.p;
    ChainMap::new(&s, &t, |n| {
        let mut m = FpMatrix::zeros(p, t.dim(n), s.dim(n));
        for &(a, c, off_s) in &tensor_layout(&xy, z, n) {
            for &(i, j, off_xy) in &tensor_layout(x, y, a) {
                let k = c;
                let (_, _, off_t) = *tensor_layout(x, &yz, n).iter().find(|&&(u, _, _)| u == i).expect("summand");
                let (_, _, off_yz) = *tensor_layout(y, z, j + k).iter().find(|&&(u, _, _)| u == j).expect("summand");
                let (dx, dy, dz) = (x.dim(i), y.dim(j), z.dim(k));
                let dyz = yz.dim(j + k);
                for xi in 0..dx {
                    for yj in 0..dy {
                        for zk in 0..dz {
                            let src = off_s + (off_xy + xi * dy + yj) * dz + zk;
                            let dst = off_t + xi * dyz + off_yz + yj * dz + zk;
                            m.set(dst, src, 1);
                        }
                    }
                }
            }
        }
        m
    })
}

/// `τ(x ⊗ y) = (-1)^{|x||y|} y ⊗ x`.
pub fn swap(x: &Complex, y: &Complex) -> Result<ChainMap> {
    let s = x.tensor(y)?;
    let t = y.tensor(x)?;
    let p = x.p;
    ChainMap::new(&s, &t, |n| {
        let mut m = FpMatrix::zeros(p, t.dim(n), s.dim(n));
        let dst = tensor_layout(y, x, n);
        for &(i, j, off) in &tensor_layout(x, y, n) {
            let (_, _, to) = *dst.iter().find(|&&(a, _, _)| a == j).expect("summand");
            let sg = sign(i as i64 * j as i64, p);
            let (dx, dy) = (x.dim(i), y.dim(j));
            for a in 0..dx {
                for b in 0..dy {
                    m.set(to + b * dx + a, off + a * dy + b, sg);
                }
            }
        }
        m
    })
}

/// The identification `k ⊗ X = X` (and `X ⊗ k = X`), as a chain map between equal data.
pub fn unitor(from: &Complex, to: &Complex) -> Result<ChainMap> {
    ChainMap::new(from, to, |d| FpMatrix::identity(from.p, from.dim(d)))
}

/// Super trace `U^# ⊗ U -> k`: `(-1)^d Tr` on `(U^d)^# ⊗ U^d`.
pub fn super_trace(u: &Complex) -> Result<ChainMap> {
    let du = u.dual();
    let s = du.tensor(u)?;
    let k = Complex::unit(&u.group, u.p);
    let p = u.p;
    ChainMap::new(&s, &k, |n| {
        let mut m = FpMatrix::zeros(p, 1, s.dim(n));
        for &(a, j, off) in &tensor_layout(&du, u, n) {
            let d = j;
            debug_assert_eq!(a, -d);
            let sg = sign(d as i64, p);
            let dim = u.dim(d);
            for c in 0..dim {
                m.set(0, off + c * dim + c, sg);
            }
        }
        m
    })
}

/// Unit `k -> U^# ⊗ U`, `1 ↦ Σ λ_c ⊗ v_c` with no signs.
pub fn unit_map(u: &Complex) -> Result<ChainMap> {
    let du = u.dual();
    let t = du.tensor(u)?;
    let k = Complex::unit(&u.group, u.p);
    let p = u.p;
    ChainMap::new(&k, &t, |n| {
        let mut m = FpMatrix::zeros(p, t.dim(n), 1);
        for &(_, j, off) in &tensor_layout(&du, u, n) {
            let dim = u.dim(j);
            for c in 0..dim {
                m.set(off + c * dim + c, 0, 1);
            }
        }
        m
    })
}

/// `(1 ⊗ Tr) ∘ assoc ∘ (τ ⊗ 1) ∘ (ι ⊗ 1)` as an endomorphism of `U`.
pub fn zigzag(u: &Complex) -> Result<ChainMap> {
    let k = Complex::unit(&u.group, u.p);
    let du = u.dual();
    let iota = unit_map(u)?;
    let tr = super_trace(u)?;
    let step1 = iota.tensor(&u.identity())?; // k ⊗ U -> (U# ⊗ U) ⊗ U
    let step2 = swap(&du, u)?.tensor(&u.identity())?; // -> (U ⊗ U#) ⊗ U
    let step3 = associator(u, &du, u)?; // -> U ⊗ (U# ⊗ U)
    let step4 = u.identity().tensor(&tr)?; // -> U ⊗ k
    let into = unitor(u, &k.tensor(u)?)?;
    let out = unitor(&u.tensor(&k)?, u)?;
    out.compose(&step4)?.compose(&step3)?.compose(&step2)?.compose(&step1)?.compose(&into)
}

/// `Φ: X^# ⊗ Y -> hom(X, Y)`, `λ ⊗ y ↦ (-1)^{ij} y λ` for `λ ∈ (X^j)^#`, total degree `i`.
pub fn hom_tensor_iso(x: &Complex, y: &Complex) -> Result<ChainMap> {
    let dx = x.dual();
    let s = dx.tensor(y)?;
    let t = x.hom_complex(y)?;
    let p = x.p;
    ChainMap::new(&s, &t, |i| {
        let mut m = FpMatrix::zeros(p, t.dim(i), s.dim(i));
        let dst = hom_layout(x, y, i);
        for &(a, b, off) in &tensor_layout(&dx, y, i) {
            let j = -a;
            let (_, to) = *dst.iter().find(|&&(u, _)| u == j).expect("summand");
            let sg = sign(i as i64 * j as i64, p);
            let (na, nb) = (x.dim(j), y.dim(b));
            for c in 0..na {
                for r in 0..nb {
                    m.set(to + r * na + c, off + c * nb + r, sg);
                }
            }
        }
        m
    })
}

/// `X -> (X^#)^#`; with these conventions the double dual has identical data.
pub fn double_dual(x: &Complex) -> Result<ChainMap> {
    ChainMap::new(x, &x.dual().dual(), |d| FpMatrix::identity(x.p, x.dim(d)))
}

/// A permutation module `⊕_{P} k_P^G` described by its point stabilisers.
#[derive(Clone, Debug)]
pub struct VSpec {
    pub module: Module,
    /// Present when `module` is the permutation module on these subgroups.
    pub sources: Option<SubgroupCollection>,
}

impl VSpec {
    pub fn permutation(group: &Arc<Group>, p: u32, sources: SubgroupCollection) -> Result<VSpec> {
        if sources.is_empty() {
            return Err(Error::Precondition("V must be nonzero".into()));
        }
        let mods: Vec<Module> = sources.members().iter().map(|s| Module::permutation(s, p)).collect();
        let module = Module::direct_sum_all(&mods.iter().collect::<Vec<_>>())?;
        if module.group() != group {
            return Err(Error::Compatibility("sources are not subgroups of the group".into()));
        }
        Ok(VSpec { module, sources: Some(sources) })
    }

    pub fn module(v: Module) -> Result<VSpec> {
        if v.dim() == 0 {
            return Err(Error::Precondition("V must be nonzero".into()));
        }
        Ok(VSpec { module: v, sources: None })
    }
}

/// Exact structures on complexes.
#[derive(Clone, Debug)]
pub enum Flavor {
    /// Term split sequences.
    Ts,
    /// `V ⊗ E` split.
    VSplit(VSpec),
    /// `V ⊗ E` term split.
    VTs(VSpec),
    /// Term split and `V`-split.
    TsPlusVSplit(VSpec),
}

impl Flavor {
    pub fn v(&self) -> Option<&VSpec> {
        match self {
            Flavor::Ts => None,
            Flavor::VSplit(v) | Flavor::VTs(v) | Flavor::TsPlusVSplit(v) => Some(v),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Flavor::Ts => "TS",
            Flavor::VSplit(_) => "V_SPLIT",
            Flavor::VTs(_) => "V_TS",
            Flavor::TsPlusVSplit(_) => "TS_PLUS_V_SPLIT",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::Perm;

    pub(crate) fn c2() -> Arc<Group> {
        Group::from_generators(2, vec![Perm::parse_cycles(2, "(0 1)").unwrap()]).unwrap()
    }

    fn two_term_c2() -> Complex {
        let g = c2();
        let r = Module::regular(&g, 2);
        let t = Module::trivial(&g, 2);
        // augmentation kC2 -> k
        Complex::two_term(&r, &t, &FpMatrix::from_rows(2, &[vec![1, 1]]).unwrap(), -1).unwrap()
    }

    #[test]
    fn shift_and_cone_square_to_zero() {
        let x = two_term_c2();
        assert_eq!(x.shift(0), x);
        assert_eq!(x.shift(1).lo(), -2);
        let c = Complex::cone(&x.identity());
        assert!(c.is_contractible().unwrap());
        let z = Complex::cone(&ChainMap::zero(&x, &x));
        assert_eq!(z, x.direct_sum(&x.shift(1)).unwrap());
    }

    #[test]
    fn bad_boundary_rejected() {
        let g = c2();
        let t = Module::trivial(&g, 2);
        let r = Module::regular(&g, 2);
        assert!(Complex::two_term(&t, &r, &FpMatrix::from_rows(2, &[vec![1], vec![0]]).unwrap(), 0).is_err());
    }

    #[test]
    fn tensor_unit_and_double_dual() {
        let x = two_term_c2();
        let k = Complex::unit(x.group(), 2);
        assert_eq!(k.tensor(&x).unwrap(), x);
        assert_eq!(x.tensor(&k).unwrap(), x);
        assert!(double_dual(&x).unwrap().is_iso());
        let xx = x.tensor(&x.dual()).unwrap();
        assert_eq!(xx.total_dim(), 9);
    }

    #[test]
    fn zigzag_and_euler_characteristic() {
        let x = two_term_c2();
        assert!(zigzag(&x).unwrap().is_identity());
        let c = super_trace(&x).unwrap().compose(&unit_map(&x).unwrap()).unwrap();
        // (-1)^{-1} 2 + 1 = -1 mod 2
        assert_eq!(c.comp(0).get(0, 0), 1);
        let g = Group::from_generators(3, vec![Perm::parse_cycles(3, "(0 1)").unwrap(), Perm::parse_cycles(3, "(0 1 2)").unwrap()])
            .unwrap();
        let m = Module::regular(&g, 3);
        let u = Complex::two_term(&m, &Module::trivial(&g, 3), &FpMatrix::from_fn(3, 1, 6, |_, _| 1), 0).unwrap();
        assert!(zigzag(&u).unwrap().is_identity());
        let e = super_trace(&u).unwrap().compose(&unit_map(&u).unwrap()).unwrap();
        assert_eq!(e.comp(0).get(0, 0), 2);
    }

    #[test]
    fn hom_complex_matches_tensor() {
        let x = two_term_c2();
        let y = x.shift(-1);
        let phi = hom_tensor_iso(&x, &y).unwrap();
        assert!(phi.is_iso());
    }

    #[test]
    fn homology_of_augmentation_sequence() {
        let g = c2();
        let r = Module::regular(&g, 2);
        let t = Module::trivial(&g, 2);
        let x = Complex::new(
            &g,
            2,
            0,
            vec![t.clone(), r, t],
            vec![FpMatrix::from_rows(2, &[vec![1], vec![1]]).unwrap(), FpMatrix::from_rows(2, &[vec![1, 1]]).unwrap()],
        )
        .unwrap();
        assert!(x.is_acyclic());
        assert!(!x.is_v_split_acyclic(&Module::trivial(&g, 2)).unwrap());
        assert!(x.is_v_split_acyclic(&Module::regular(&g, 2)).unwrap());
    }
}

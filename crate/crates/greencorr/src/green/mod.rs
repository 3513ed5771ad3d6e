//! Green correspondence between `H`- and `G`-modules (and complexes) modulo relatively
//! projective objects.

mod complex;
mod sample;

pub use complex::{
    complex_correspondence, complex_mackey, f_part_projective, mackey_natural, tensor_compatibility, triangle_preservation_check,
    ComplexCorrespondent, ComplexMackey, TriangleKind, TrianglePreservation,
};
pub use sample::{indecomposable_sample, minimal_submodule, random_chain_map, random_two_term, simple_modules};

use crate::cpx::{split_idempotent, Complex, ChainMap, Flavor, VSpec};
use crate::dec::{decompose_with, is_indecomposable, is_isomorphic, is_relatively_projective, vertex, DecOptions};
use crate::error::{Error, Result};
use crate::gfla::FpMatrix;
use crate::grp::{Group, Subgroup, SubgroupCollection};
use crate::rep::{
    counit_eta, induce_matrix, is_intertwiner, mackey_decomposition, projective_hom_subspace, unit_eps, MackeySummand,
    Module,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// `(G, H, 𝔓)` with the derived collections `𝔛`, `𝔜` and the modules `V_𝔛`, `V_𝔜`.
/// All collections hold subgroups of `G` contained in `H`.
#[derive(Clone, Debug)]
pub struct CorrespondenceSetup {
    h: Subgroup,
    p: u32,
    frak_p: SubgroupCollection,
    frak_x: SubgroupCollection,
    frak_y: SubgroupCollection,
    v_x: Option<VSpec>,
    v_y: Option<VSpec>,
}

fn push_class(list: &mut Vec<Subgroup>, s: Subgroup, h: &Subgroup) {
    if !list.iter().any(|t| h.are_conjugate(t, &s)) {
        list.push(s);
    }
}

fn sorted(mut v: Vec<Subgroup>) -> Vec<Subgroup> {
    v.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(b.elements())));
    v
}

/// `𝔛 = {gP₁g⁻¹ ∩ P₂}` and `𝔜 = {gPg⁻¹ ∩ H}` over `g ∉ H`, one representative per
/// `H`-conjugacy class.
pub fn build_setup(h: &Subgroup, frak_p: &SubgroupCollection, p: u32) -> Result<CorrespondenceSetup> {
    if frak_p.is_empty() {
        return Err(Error::Precondition("𝔓 is empty".into()));
    }
    if let Some(bad) = frak_p.members().iter().find(|q| !q.is_subgroup_of(h)) {
        return Err(Error::Precondition(format!("member {} of 𝔓 is not contained in H", bad.label())));
    }
    let g = h.parent().clone();
    let mut conj: Vec<Subgroup> = Vec::new();
    for q in frak_p.members() {
        for &x in h.elements() {
            let c = q.conjugate(x);
            if !conj.contains(&c) {
                conj.push(c);
            }
        }
    }
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for t in (0..g.order()).filter(|&t| !h.contains(t)) {
        for p1 in &conj {
            let c1 = p1.conjugate(t);
            push_class(&mut ys, c1.intersect(h)?, h);
            for p2 in &conj {
                push_class(&mut xs, c1.intersect(p2)?, h);
            }
        }
    }
    let (xs, ys) = (sorted(xs), sorted(ys));
    if let Some(x) = xs.iter().find(|x| !ys.iter().any(|y| h.subconjugator(x, y).is_some())) {
        return Err(Error::Invariant(format!("member {} of 𝔛 lies in no member of 𝔜", x.label())));
    }
    CorrespondenceSetup::with_collections(h, frak_p.clone(), SubgroupCollection::new(xs, true), SubgroupCollection::new(ys, true), p)
}

impl CorrespondenceSetup {
    /// A setup with explicitly given collections; no consistency checks.
    pub fn with_collections(
        h: &Subgroup,
        frak_p: SubgroupCollection,
        frak_x: SubgroupCollection,
        frak_y: SubgroupCollection,
        p: u32,
    ) -> Result<CorrespondenceSetup> {
        let g = h.parent();
        let v_x = if frak_x.is_empty() { None } else { Some(VSpec::permutation(g, p, frak_x.clone())?) };
        let mut s = CorrespondenceSetup { h: h.clone(), p, frak_p, frak_x, frak_y, v_x, v_y: None };
        s.v_y = if s.frak_y.is_empty() { None } else { Some(VSpec::permutation(h.as_group(), p, s.y_local())?) };
        Ok(s)
    }

    /// The same setup with `𝔜` replaced.
    pub fn with_y(&self, frak_y: SubgroupCollection) -> Result<CorrespondenceSetup> {
        Self::with_collections(&self.h, self.frak_p.clone(), self.frak_x.clone(), frak_y, self.p)
    }

    pub fn group(&self) -> &Arc<Group> {
        self.h.parent()
    }
    pub fn h(&self) -> &Subgroup {
        &self.h
    }
    pub fn h_group(&self) -> &Arc<Group> {
        self.h.as_group()
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn frak_p(&self) -> &SubgroupCollection {
        &self.frak_p
    }
    pub fn frak_x(&self) -> &SubgroupCollection {
        &self.frak_x
    }
    pub fn frak_y(&self) -> &SubgroupCollection {
        &self.frak_y
    }
    pub fn v_x(&self) -> Option<&VSpec> {
        self.v_x.as_ref()
    }
    pub fn v_y(&self) -> Option<&VSpec> {
        self.v_y.as_ref()
    }
    pub fn is_degenerate(&self) -> bool {
        self.h.is_whole()
    }

    fn localize(&self, c: &SubgroupCollection) -> SubgroupCollection {
        SubgroupCollection::new(c.members().iter().map(|s| self.h.localize(s).expect("member of H")).collect(), true)
    }
    pub fn p_local(&self) -> SubgroupCollection {
        self.localize(&self.frak_p)
    }
    pub fn x_local(&self) -> SubgroupCollection {
        self.localize(&self.frak_x)
    }
    pub fn y_local(&self) -> SubgroupCollection {
        self.localize(&self.frak_y)
    }

    pub fn label(&self) -> String {
        format!("{}/{}", self.group().whole().label(), self.h.label())
    }
}

/// One indecomposable summand as recorded in certificates.
#[derive(Clone, Debug)]
pub struct SummandInfo {
    pub dim: usize,
    pub vertex: Subgroup,
    /// Relatively projective for the collection that was stripped.
    pub relatively_projective: bool,
    pub residue_degree: usize,
}

/// `M` with its relatively projective summands removed.
#[derive(Clone, Debug)]
pub struct Stripped {
    pub module: Module,
    /// `dim M x dim kept`.
    pub inclusion: FpMatrix,
    /// `dim kept x dim M`.
    pub projection: FpMatrix,
    pub kept: Vec<SummandInfo>,
    pub discarded: Vec<SummandInfo>,
}

pub fn strip(m: &Module, coll: &SubgroupCollection, opts: DecOptions) -> Result<Stripped> {
    let p = m.p();
    let d = decompose_with(m, opts)?;
    let (mut kept, mut discarded) = (Vec::new(), Vec::new());
    let (mut inc, mut proj, mut mods) = (Vec::new(), Vec::new(), Vec::new());
    for s in &d.summands {
        let rel = is_relatively_projective(&s.module, coll)?;
        let info = SummandInfo {
            dim: s.module.dim(),
            vertex: vertex(&s.module, opts)?,
            relatively_projective: rel,
            residue_degree: s.residue_degree,
        };
        if rel {
            discarded.push(info);
        } else {
            kept.push(info);
            inc.push(&s.inclusion);
            proj.push(&s.projection);
            mods.push(&s.module);
        }
    }
    let module = if mods.is_empty() { Module::zero(m.group(), p) } else { Module::direct_sum_all(&mods)? };
    let inclusion = FpMatrix::hstack(p, m.dim(), &inc);
    let projection = FpMatrix::vstack(p, m.dim(), &proj);
    Ok(Stripped { module, inclusion, projection, kept, discarded })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    G,
    H,
}

/// An object of a quotient category: a representative modulo the collection's relatively
/// projective summands.
#[derive(Clone, Debug)]
pub struct QuotientObject {
    pub representative: Module,
    pub side: Side,
    pub collection: SubgroupCollection,
}

impl QuotientObject {
    pub fn core(&self, opts: DecOptions) -> Result<Stripped> {
        strip(&self.representative, &self.collection, opts)
    }

    pub fn is_isomorphic(&self, o: &QuotientObject, opts: DecOptions) -> Result<bool> {
        if self.side != o.side {
            return Err(Error::Compatibility("quotient objects on different sides".into()));
        }
        Ok(is_isomorphic(&self.core(opts)?.module, &o.core(opts)?.module, opts)?.is_some())
    }
}

fn require_p_projective(m: &Module, coll: &SubgroupCollection) -> Result<()> {
    if !is_relatively_projective(m, coll)? {
        return Err(Error::Precondition("module is not 𝔓-projective".into()));
    }
    Ok(())
}

/// `𝕀(L) = Ind L` modulo `𝔛`-projectives.
pub fn i_functor(l: &Module, setup: &CorrespondenceSetup) -> Result<QuotientObject> {
    require_p_projective(l, &setup.p_local())?;
    Ok(QuotientObject { representative: l.induce(setup.h())?, side: Side::G, collection: setup.frak_x.clone() })
}

/// `ℝ(M)`: restriction with the `𝔜`-projective summands discarded.
#[derive(Clone, Debug)]
pub struct RImage {
    pub object: QuotientObject,
    /// `Res M -> kept`.
    pub alpha: FpMatrix,
    /// `kept -> Res M`.
    pub alpha_inverse: FpMatrix,
    pub stripped: Stripped,
}

pub fn r_functor(m: &Module, setup: &CorrespondenceSetup, opts: DecOptions) -> Result<RImage> {
    require_p_projective(m, &setup.frak_p)?;
    let res = m.restrict(setup.h())?;
    let st = strip(&res, &setup.y_local(), opts)?;
    if !is_relatively_projective(&st.module, &setup.p_local())? {
        return Err(Error::Invariant("kept part of the restriction is not 𝔓-projective".into()));
    }
    Ok(RImage {
        object: QuotientObject { representative: st.module.clone(), side: Side::H, collection: setup.x_local() },
        alpha: st.projection.clone(),
        alpha_inverse: st.inclusion.clone(),
        stripped: st,
    })
}

/// `F(L)`: the non-identity double cosets of `Res Ind L`, with `(ε, φ): L ⊕ F(L) -> Res Ind L`.
#[derive(Clone, Debug)]
pub struct FunctorF {
    pub module: Module,
    pub eps: FpMatrix,
    pub phi: FpMatrix,
    pub summands: Vec<MackeySummand>,
}

impl FunctorF {
    pub fn sum_map(&self) -> FpMatrix {
        FpMatrix::hstack(self.eps.p(), self.eps.rows(), &[&self.eps, &self.phi])
    }
}

pub fn functor_f(l: &Module, setup: &CorrespondenceSetup) -> Result<FunctorF> {
    let (h, p) = (setup.h(), l.p());
    if setup.is_degenerate() {
        return Ok(FunctorF {
            module: Module::zero(l.group(), p),
            eps: FpMatrix::identity(p, l.dim()),
            phi: FpMatrix::zeros(p, l.dim(), 0),
            summands: Vec::new(),
        });
    }
    let md = mackey_decomposition(l, h, h)?;
    if md.summands[0].rep != 0 {
        return Err(Error::Invariant("first double coset is not the identity coset".into()));
    }
    let beta = &md.inverse.matrix;
    let (n, dl) = (beta.rows(), l.dim());
    let rest: Vec<MackeySummand> = md.summands[1..].to_vec();
    let module = Module::direct_sum_all(&rest.iter().map(|s| &s.module).collect::<Vec<_>>())?;
    Ok(FunctorF { module, eps: beta.submatrix(0, n, 0, dl), phi: beta.submatrix(0, n, dl, n), summands: rest })
}

/// A correspondent with the decomposition it was read off from.
#[derive(Clone, Debug)]
pub struct Correspondent {
    pub module: Module,
    /// Vertex of the input, as a subgroup of `G`.
    pub source_vertex: Subgroup,
    /// Vertex of the correspondent, as a subgroup of `G`.
    pub vertex: Subgroup,
    pub vertex_transported: bool,
    /// Every summand of `Ind L` (or `Res M`) with its vertex and projectivity flag.
    pub summands: Vec<SummandInfo>,
}

fn unique_kept(st: Stripped, what: &str) -> Result<Stripped> {
    if st.kept.len() != 1 {
        let dims: Vec<String> = st
            .kept
            .iter()
            .chain(&st.discarded)
            .map(|s| format!("{}{}", s.dim, if s.relatively_projective { "p" } else { "" }))
            .collect();
        return Err(Error::Invariant(format!(
            "{} non-{what}-projective summands (decomposition: {})",
            st.kept.len(),
            dims.join(" ")
        )));
    }
    Ok(st)
}

/// The unique non-`𝔛`-projective summand of `Ind L`, for `L` indecomposable with vertex in
/// `𝔓` not subconjugate to `𝔛`.
pub fn green_correspondent(l: &Module, setup: &CorrespondenceSetup, opts: DecOptions) -> Result<Correspondent> {
    let h = setup.h();
    if !is_indecomposable(l, opts)? {
        return Err(Error::Precondition("module is not indecomposable".into()));
    }
    let hw = setup.h_group().whole();
    let q = vertex(l, opts)?;
    if !hw.is_subconjugate(&q, &setup.p_local()) {
        return Err(Error::Precondition(format!("vertex {} is not in 𝔓", q.label())));
    }
    if hw.is_subconjugate(&q, &setup.x_local()) {
        return Err(Error::Precondition(format!("vertex {} is subconjugate to 𝔛", q.label())));
    }
    let st = unique_kept(strip(&l.induce(h)?, &setup.frak_x, opts)?, "𝔛")?;
    let source_vertex = h.globalize(&q)?;
    let v = st.kept[0].vertex.clone();
    let vertex_transported = setup.group().whole().are_conjugate(&v, &source_vertex);
    let summands = st.kept.iter().chain(&st.discarded).cloned().collect();
    Ok(Correspondent { module: st.module, source_vertex, vertex: v, vertex_transported, summands })
}

/// The unique non-`𝔜`-projective summand of `Res M`.
pub fn green_correspondent_back(m: &Module, setup: &CorrespondenceSetup, opts: DecOptions) -> Result<Correspondent> {
    let h = setup.h();
    if !is_indecomposable(m, opts)? {
        return Err(Error::Precondition("module is not indecomposable".into()));
    }
    let gw = setup.group().whole();
    let q = vertex(m, opts)?;
    if !gw.is_subconjugate(&q, &setup.frak_p) {
        return Err(Error::Precondition(format!("vertex {} is not in 𝔓", q.label())));
    }
    if gw.is_subconjugate(&q, &setup.frak_x) {
        return Err(Error::Precondition(format!("vertex {} is subconjugate to 𝔛", q.label())));
    }
    let st = unique_kept(strip(&m.restrict(h)?, &setup.y_local(), opts)?, "𝔜")?;
    let v = h.globalize(&st.kept[0].vertex)?;
    let vertex_transported = gw.are_conjugate(&v, &q);
    let summands = st.kept.iter().chain(&st.discarded).cloned().collect();
    Ok(Correspondent { module: st.module, source_vertex: q, vertex: v, vertex_transported, summands })
}

/// `ℝ𝕀(L) ≅ L` modulo `𝔛`-projectives.
pub fn round_trip_ri(l: &Module, setup: &CorrespondenceSetup, opts: DecOptions) -> Result<bool> {
    let ri = r_functor(&l.induce(setup.h())?, setup, opts)?;
    let back = QuotientObject { representative: l.clone(), side: Side::H, collection: setup.x_local() };
    ri.object.is_isomorphic(&back, opts)
}

/// `𝕀ℝ(M) ≅ M` modulo `𝔛`-projectives.
pub fn round_trip_ir(m: &Module, setup: &CorrespondenceSetup, opts: DecOptions) -> Result<bool> {
    let r = r_functor(m, setup, opts)?;
    let ir = i_functor(&r.object.representative, setup)?;
    let orig = QuotientObject { representative: m.clone(), side: Side::G, collection: setup.frak_x.clone() };
    ir.is_isomorphic(&orig, opts)
}

/// `γ(f) = α_M ∘ Res(f) ∘ ε_L` for `f: Ind L -> M`.
pub fn adjunction_gamma(f: &FpMatrix, l: &Module, m: &Module, r: &RImage, setup: &CorrespondenceSetup) -> Result<FpMatrix> {
    let ind = l.induce(setup.h())?;
    if !is_intertwiner(&ind, m, f) {
        return Err(Error::Precondition("γ argument is not a module map Ind L -> M".into()));
    }
    Ok(r.alpha.mul(f).mul(&unit_eps(l, setup.h())?.matrix))
}

/// `β(g) = η_M ∘ Ind(α_M⁻¹ ∘ g)` for `g: L -> ℝ(M)`.
pub fn adjunction_beta(g: &FpMatrix, l: &Module, m: &Module, r: &RImage, setup: &CorrespondenceSetup) -> Result<FpMatrix> {
    if !is_intertwiner(l, &r.object.representative, g) {
        return Err(Error::Precondition("β argument is not a module map L -> ℝ(M)".into()));
    }
    let h = setup.h();
    let lifted = r.alpha_inverse.mul(g);
    Ok(counit_eta(m, h)?.matrix.mul(&induce_matrix(&lifted, h.index_in_parent())))
}

#[derive(Clone, Debug)]
pub struct AdjunctionCheck {
    pub quotient_dim_g: usize,
    pub quotient_dim_h: usize,
    pub gamma_beta_identity: bool,
    pub beta_gamma_identity: bool,
    /// `γ` and `β` map relatively projective maps to relatively projective maps.
    pub well_defined: bool,
}

impl AdjunctionCheck {
    pub fn holds(&self) -> bool {
        self.quotient_dim_g == self.quotient_dim_h && self.gamma_beta_identity && self.beta_gamma_identity && self.well_defined
    }
}

/// `γβ = id` and `βγ = id` on the quotients `Hom_H(L, ℝM)/𝔛` and `Hom_G(Ind L, M)/𝔛`.
pub fn check_adjunction(l: &Module, m: &Module, setup: &CorrespondenceSetup, opts: DecOptions) -> Result<AdjunctionCheck> {
    let r = r_functor(m, setup, opts)?;
    let ind = l.induce(setup.h())?;
    let (hg, pg) = projective_hom_subspace(&ind, m, &setup.frak_x)?;
    let (hh, ph) = projective_hom_subspace(l, &r.object.representative, &setup.x_local())?;
    let in_g = |x: &FpMatrix| hg.coords(x).map(|c| pg.contains(&c)).unwrap_or(false);
    let in_h = |x: &FpMatrix| hh.coords(x).map(|c| ph.contains(&c)).unwrap_or(false);
    let mut beta_gamma_identity = true;
    for f in hg.basis() {
        let back = adjunction_beta(&adjunction_gamma(f, l, m, &r, setup)?, l, m, &r, setup)?;
        beta_gamma_identity &= in_g(&back.sub(f));
    }
    let mut gamma_beta_identity = true;
    for g in hh.basis() {
        let back = adjunction_gamma(&adjunction_beta(g, l, m, &r, setup)?, l, m, &r, setup)?;
        gamma_beta_identity &= in_h(&back.sub(g));
    }
    let mut well_defined = true;
    for c in pg.basis() {
        well_defined &= in_h(&adjunction_gamma(&hg.element(c), l, m, &r, setup)?);
    }
    for c in ph.basis() {
        well_defined &= in_g(&adjunction_beta(&hh.element(c), l, m, &r, setup)?);
    }
    Ok(AdjunctionCheck {
        quotient_dim_g: hg.dim() - pg.dim(),
        quotient_dim_h: hh.dim() - ph.dim(),
        gamma_beta_identity,
        beta_gamma_identity,
        well_defined,
    })
}

/// One line of the condition report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionEntry {
    pub condition: u8,
    pub name: String,
    pub pass: bool,
    pub details: String,
}

/// Conditions (4) through (7) of the functorial correspondence on a sample of `H`-modules.
pub fn verify_conditions(setup: &CorrespondenceSetup, samples: &[Module], opts: DecOptions) -> Result<Vec<ConditionEntry>> {
    let h = setup.h();
    let p = setup.p();
    let mut out = Vec::new();
    for (i, l) in samples.iter().enumerate() {
        let ind = l.induce(h)?;
        let idx = h.index_in_parent();
        let eps = unit_eps(l, h)?.matrix;
        let t1 = counit_eta(&ind, h)?.matrix.mul(&induce_matrix(&eps, idx));
        let res = ind.restrict(h)?;
        let t2 = counit_eta(&ind, h)?.matrix.mul(&unit_eps(&res, h)?.matrix);
        out.push(ConditionEntry {
            condition: 4,
            name: format!("adjunction L{i}"),
            pass: t1.is_identity() && t2.is_identity(),
            details: format!("dim L = {}, dim Ind L = {}", l.dim(), ind.dim()),
        });
        let f = functor_f(l, setup)?;
        let sum = l.direct_sum(&f.module)?;
        let iso = f.sum_map();
        out.push(ConditionEntry {
            condition: 5,
            name: format!("mackey L{i}"),
            pass: iso.is_invertible() && is_intertwiner(&sum, &res, &iso) && f.eps == eps,
            details: format!("dim F(L) = {}", f.module.dim()),
        });
    }
    for (i, l) in samples.iter().enumerate() {
        for (j, l2) in samples.iter().enumerate() {
            let fm = functor_f(l2, setup)?.module;
            let mut pass = true;
            let mut dims = Vec::new();
            for (a, b) in [(l, &fm), (&fm, l)] {
                let (hs, ysub) = projective_hom_subspace(a, b, &setup.y_local())?;
                let (_, xsub) = projective_hom_subspace(a, b, &setup.x_local())?;
                pass &= ysub.dim() == hs.dim() && ysub.is_subspace_of(&xsub);
                dims.push(format!("{}/{}/{}", hs.dim(), ysub.dim(), xsub.dim()));
            }
            out.push(ConditionEntry {
                condition: 6,
                name: format!("factorization L{i} F(L{j})"),
                pass,
                details: format!("dim Hom / 𝔜-part / 𝔛-part: to F {}, from F {}", dims[0], dims[1]),
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let ts = Flavor::Ts;
    for (i, l) in samples.iter().enumerate() {
        for (j, l2) in samples.iter().enumerate().skip(i) {
            let x = l.direct_sum(l2)?;
            let (end, null) = projective_hom_subspace(&x, &x, &setup.x_local())?;
            let mut e = FpMatrix::zeros(p, x.dim(), x.dim());
            e.set_block(0, 0, &FpMatrix::identity(p, l.dim()));
            for c in null.basis() {
                let s = rng.gen_range(0..p);
                e.axpy(s, &end.element(c));
            }
            let xc = Complex::concentrated(&x, 0);
            let ec = ChainMap::new(&xc, &xc, |_| e.clone())?;
            let split = split_idempotent(&xc, &ec, &ts, &setup.x_local())?;
            let y = split.y.term(0);
            let same = strip(&y, &setup.x_local(), opts)?;
            let want = strip(l, &setup.x_local(), opts)?;
            let iso = is_isomorphic(&same.module, &want.module, opts)?.is_some();
            out.push(ConditionEntry {
                condition: 7,
                name: format!("idempotent L{i}+L{j}"),
                pass: split.certified() && iso,
                details: format!("dim Y = {}, dim Z = {}", y.dim(), split.z.term(0).dim()),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;

    fn labels(c: &SubgroupCollection) -> Vec<String> {
        c.members().iter().map(|s| s.label()).collect()
    }

    #[test]
    fn derived_collections() {
        let s = bundled::setup("s3-c2").unwrap();
        assert_eq!(labels(s.frak_x()), ["1"]);
        assert_eq!(labels(s.frak_y()), ["1"]);
        let s = bundled::setup("s4-d8").unwrap();
        assert_eq!(labels(s.frak_x()), ["V4"]);
        assert!(s.frak_x().members()[0].is_normal_in(&s.group().whole()));
        let s = bundled::setup("a5-a4").unwrap();
        assert_eq!(labels(s.frak_x()), ["1"]);
        assert_eq!(labels(s.frak_y()), ["1"]);
    }

    #[test]
    fn f_of_trivial_is_regular_c2() {
        let s = bundled::setup("s3-c2").unwrap();
        let k = Module::trivial(s.h_group(), 2);
        let f = functor_f(&k, &s).unwrap();
        assert_eq!(f.module.dim(), 2);
        assert!(is_isomorphic(&f.module, &Module::regular(s.h_group(), 2), DecOptions::default()).unwrap().is_some());
    }

    #[test]
    fn degenerate_setup_is_identity() {
        let g = bundled::group("s3").unwrap();
        let sylow = SubgroupCollection::new(vec![g.whole().sylow(2)], true);
        let s = build_setup(&g.whole(), &sylow, 2).unwrap();
        assert!(s.frak_x().is_empty() && s.frak_y().is_empty());
        let k = Module::trivial(&g, 2);
        assert_eq!(functor_f(&k, &s).unwrap().module.dim(), 0);
        let c = green_correspondent(&k, &s, DecOptions::default()).unwrap();
        assert_eq!(c.module, k);
    }

    #[test]
    fn trivial_corresponds_to_trivial() {
        let opts = DecOptions::default();
        for name in bundled::SETUP_NAMES {
            let s = bundled::setup(name).unwrap();
            let c = green_correspondent(&Module::trivial(s.h_group(), 2), &s, opts).unwrap();
            assert_eq!(c.module.dim(), 1, "{name}");
            assert!(c.vertex_transported);
            assert!(c.summands.iter().skip(1).all(|m| m.relatively_projective));
        }
    }

    #[test]
    fn projective_input_is_rejected() {
        let s = bundled::setup("s3-c2").unwrap();
        let r = Module::regular(s.h_group(), 2);
        assert!(matches!(green_correspondent(&r, &s, DecOptions::default()), Err(Error::Precondition(_))));
    }

    #[test]
    fn gamma_of_projective_map_is_projective() {
        let opts = DecOptions::default();
        let s = bundled::setup("s4-d8").unwrap();
        for l in indecomposable_sample(s.h_group(), 2, 8, opts).unwrap() {
            let m = Module::trivial(s.group(), 2);
            assert!(check_adjunction(&l, &m, &s, opts).unwrap().holds());
        }
    }

    #[test]
    fn broken_setup_fails_condition_six() {
        let opts = DecOptions::default();
        let s = bundled::broken_setup().unwrap();
        let sample = vec![Module::trivial(s.h_group(), 2)];
        let entries = verify_conditions(&s, &sample, opts).unwrap();
        assert!(entries.iter().any(|e| e.condition == 6 && !e.pass));
        assert!(entries.iter().filter(|e| e.condition != 6).all(|e| e.pass));
    }
}

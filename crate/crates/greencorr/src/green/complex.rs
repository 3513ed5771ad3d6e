//! The correspondence on complexes: degreewise Mackey splitting of `Res Ind Z`, the
//! relative projectivity of the `F(Z)` part, and preservation of triangles.

use super::{r_functor, strip, CorrespondenceSetup};
use crate::cpx::{
    chain_retraction, splits_over_trivial_group, term_retractions, triangle_of, ChainMap, Complex, Flavor,
    ShortExact, TriangleCertificate,
};
use crate::dec::{is_isomorphic, DecOptions};
use crate::error::{Error, Result};
use crate::gfla::{inv, FpMatrix};
use crate::rep::{induce_matrix, mackey_decomposition, relative_trace, MackeySummand, Module};
use std::collections::BTreeMap;

/// `Res Ind Z ≅ Z ⊕ F(Z)`, degree by degree, over the `H`-`H` double cosets.
#[derive(Clone, Debug)]
pub struct ComplexMackey {
    pub z: Complex,
    pub res_ind: Complex,
    pub f: Complex,
    /// `res_ind -> z ⊕ f`.
    pub iso: ChainMap,
    /// The non-identity Mackey summands of each term, in double coset order.
    pub summands: BTreeMap<i32, Vec<MackeySummand>>,
    /// The transported boundary is block diagonal over the summands.
    pub block_diagonal: bool,
    t: BTreeMap<i32, FpMatrix>,
    t_inv: BTreeMap<i32, FpMatrix>,
}

impl ComplexMackey {
    fn block_sizes(&self, d: i32) -> Vec<usize> {
        let mut v = vec![self.z.dim(d)];
        if let Some(s) = self.summands.get(&d) {
            v.extend(s.iter().map(|s| s.module.dim()));
        }
        v
    }

    /// `T_d ∘ m ∘ T_e⁻¹` for `m: (Res Ind)^e -> (Res Ind)^d` of the two decompositions.
    fn transport(&self, src: &ComplexMackey, m: &FpMatrix, d: i32, e: i32) -> Option<FpMatrix> {
        Some(self.t.get(&d)?.mul(m).mul(src.t_inv.get(&e)?))
    }

    /// Boundary block of summand `i` (0 is `Z` itself) from degree `d` to `d + 1`.
    fn summand_boundary(&self, i: usize, d: i32) -> FpMatrix {
        let p = self.z.p();
        let (rows, cols) = (self.block_sizes(d + 1), self.block_sizes(d));
        let (r0, c0): (usize, usize) = (rows[..i].iter().sum(), cols[..i].iter().sum());
        match self.transport(self, &self.res_ind.boundary(d), d + 1, d) {
            Some(b) => b.submatrix(r0, r0 + rows[i], c0, c0 + cols[i]),
            None => FpMatrix::zeros(p, rows.get(i).copied().unwrap_or(0), cols.get(i).copied().unwrap_or(0)),
        }
    }
}

/// Off-diagonal blocks vanish for the given row and column block sizes.
fn is_block_diagonal(m: &FpMatrix, rows: &[usize], cols: &[usize]) -> bool {
    let (mut r0, mut blocks) = (0, Vec::new());
    for (i, &r) in rows.iter().enumerate() {
        let mut c0 = 0;
        for (j, &c) in cols.iter().enumerate() {
            if i != j {
                blocks.push((r0, r, c0, c));
            }
            c0 += c;
        }
        r0 += r;
    }
    blocks.into_iter().all(|(r0, r, c0, c)| m.submatrix(r0, r0 + r, c0, c0 + c).is_zero())
}

pub fn complex_mackey(z: &Complex, setup: &CorrespondenceSetup) -> Result<ComplexMackey> {
    let h = setup.h();
    let p = z.p();
    let res_ind = z.induce(h)?.restrict(h)?;
    let (mut t, mut t_inv, mut summands) = (BTreeMap::new(), BTreeMap::new(), BTreeMap::new());
    let mut f_terms = Vec::new();
    if !z.is_zero() {
        for d in z.degrees() {
            let md = mackey_decomposition(&z.term(d), h, h)?;
            if md.summands[0].rep != 0 {
                return Err(Error::Invariant("first double coset is not the identity coset".into()));
            }
            let rest: Vec<MackeySummand> = md.summands[1..].to_vec();
            f_terms.push(if rest.is_empty() {
                Module::zero(setup.h_group(), p)
            } else {
                Module::direct_sum_all(&rest.iter().map(|s| &s.module).collect::<Vec<_>>())?
            });
            t.insert(d, md.iso.matrix);
            t_inv.insert(d, md.inverse.matrix);
            summands.insert(d, rest);
        }
    }
    let mut cm = ComplexMackey {
        z: z.clone(),
        res_ind: res_ind.clone(),
        f: Complex::zero(setup.h_group(), p),
        iso: ChainMap::zero(&res_ind, &res_ind),
        summands,
        block_diagonal: true,
        t,
        t_inv,
    };
    let mut f_diffs = Vec::new();
    if !z.is_zero() {
        for d in z.lo()..z.hi() {
            let b = cm.transport(&cm, &res_ind.boundary(d), d + 1, d).expect("degrees in range");
            let (rows, cols) = (cm.block_sizes(d + 1), cm.block_sizes(d));
            cm.block_diagonal &= is_block_diagonal(&b, &rows, &cols)
                && b.submatrix(0, rows[0], 0, cols[0]) == z.boundary(d);
            f_diffs.push(b.submatrix(rows[0], b.rows(), cols[0], b.cols()));
        }
        cm.f = Complex::new(setup.h_group(), p, z.lo(), f_terms, f_diffs)?;
    }
    let zf = z.direct_sum(&cm.f)?;
    let t = cm.t.clone();
    cm.iso = ChainMap::new(&res_ind, &zf, |d| t.get(&d).cloned().unwrap_or_else(|| FpMatrix::zeros(p, zf.dim(d), res_ind.dim(d))))?;
    Ok(cm)
}

/// `Res Ind u` is block diagonal in the Mackey decompositions of source and target, with
/// `u` itself as the identity-coset block.
pub fn mackey_natural(u: &ChainMap, src: &ComplexMackey, tgt: &ComplexMackey, setup: &CorrespondenceSetup) -> Result<bool> {
    let ri = u.induce(setup.h())?.restrict(setup.h())?;
    let degrees: Vec<i32> = src.t.keys().filter(|d| tgt.t.contains_key(d)).copied().collect();
    for d in degrees {
        let m = tgt.transport(src, &ri.comp(d), d, d).expect("degree present");
        let (rows, cols) = (tgt.block_sizes(d), src.block_sizes(d));
        if !is_block_diagonal(&m, &rows, &cols) || m.submatrix(0, rows[0], 0, cols[0]) != u.comp(d) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Each summand `Ind_D^H W` of `F(Z)` carries the chain map `h = |D:Q|⁻¹ π_1`, with `π_1`
/// the identity-coset projection and `Q` a Sylow subgroup of `D` lying in `𝔜`; then
/// `Tr_Q^H(h) = id` certifies that the summand is `𝔜`-projective as a complex.
pub fn f_part_projective(cm: &ComplexMackey, setup: &CorrespondenceSetup) -> Result<bool> {
    if !cm.block_diagonal {
        return Ok(false);
    }
    let (h, p) = (setup.h(), setup.p());
    let count = cm.summands.values().next().map_or(0, |s| s.len());
    for i in 0..count {
        let d = &cm.summands.values().next().expect("nonempty")[i].stabilizer;
        let q = d.sylow(p);
        if !setup.frak_y().members().iter().any(|y| h.subconjugator(&q, y).is_some()) {
            return Ok(false);
        }
        let q_loc = h.localize(&q)?;
        let index = h.order() / d.order();
        let scale = inv(((d.order() / q.order()) % p as usize) as u32, p);
        let mut maps = BTreeMap::new();
        for (&deg, s) in &cm.summands {
            let m = &s[i].module;
            let w = m.dim() / index;
            let mut hd = FpMatrix::zeros(p, m.dim(), m.dim());
            hd.set_block(0, 0, &FpMatrix::scalar(p, w, scale));
            if w > 0 && !relative_trace(m, m, &hd, &q_loc)?.is_identity() {
                return Ok(false);
            }
            maps.insert(deg, hd);
        }
        for (&deg, hd) in &maps {
            if let Some(next) = maps.get(&(deg + 1)) {
                let b = cm.summand_boundary(i + 1, deg);
                if b.mul(hd) != next.mul(&b) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `Ind X` with the Mackey data certifying `Res Ind X ≅ X ⊕ F(X)`, `F(X)` `𝔜`-projective.
#[derive(Clone, Debug)]
pub struct ComplexCorrespondent {
    pub induced: Complex,
    pub mackey: ComplexMackey,
    pub f_projective: bool,
}

pub fn complex_correspondence(x: &Complex, setup: &CorrespondenceSetup) -> Result<ComplexCorrespondent> {
    let mackey = complex_mackey(x, setup)?;
    let f_projective = f_part_projective(&mackey, setup)?;
    Ok(ComplexCorrespondent { induced: x.induce(setup.h())?, mackey, f_projective })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangleKind {
    Ts,
    TsPlusVSplit,
}

/// Certificate that inducing an `H`-side distinguished triangle gives a `G`-side one.
#[derive(Clone, Debug)]
pub struct TrianglePreservation {
    pub h_triangle: TriangleCertificate,
    /// Induced hull splits termwise, via induced retractions.
    pub induced_term_split: bool,
    /// Induced hull splits on restriction to every member of `𝔛`.
    pub induced_v_split: bool,
    /// Every member of `𝔜` is `G`-subconjugate to a member of `𝔛`, so `Ind V_𝔜` is
    /// relatively injective for the `G`-side class.
    pub middle_relatively_injective: bool,
    /// Mackey decompositions of `X, Y, E, C` are compatible with `f, g, h`.
    pub mackey_natural: bool,
    pub f_parts_projective: bool,
    /// TS only: the `G`-side triangle on `Ind f` has third term `≅ Ind E`.
    pub cone_matches: Option<bool>,
}

impl TrianglePreservation {
    pub fn holds(&self) -> bool {
        self.h_triangle.holds()
            && self.induced_term_split
            && self.induced_v_split
            && self.middle_relatively_injective
            && self.mackey_natural
            && self.f_parts_projective
            && self.cone_matches != Some(false)
    }
}

pub fn triangle_preservation_check(
    f: &ChainMap,
    setup: &CorrespondenceSetup,
    kind: TriangleKind,
    seed: u64,
) -> Result<TrianglePreservation> {
    let h = setup.h();
    let flavor = match kind {
        TriangleKind::Ts => Flavor::Ts,
        TriangleKind::TsPlusVSplit => Flavor::TsPlusVSplit(
            setup.v_y().cloned().ok_or_else(|| Error::Precondition("𝔜 is empty".into()))?,
        ),
    };
    let (tri, cert) = triangle_of(f, &flavor, true, seed)?;
    let seq_g = ShortExact::new(tri.hull.i.induce(h)?, tri.hull.q.induce(h)?)?;
    let induced_term_split = match term_retractions(&tri.hull)? {
        None => false,
        Some(rs) => rs.iter().all(|(d, r)| induce_matrix(r, h.index_in_parent()).mul(&seq_g.i.comp(*d)).is_identity()),
    };
    let mut induced_v_split = true;
    let mut middle_relatively_injective = true;
    if kind == TriangleKind::TsPlusVSplit {
        for x in setup.frak_x().members() {
            let res = seq_g.restrict(x)?;
            induced_v_split &=
                if x.is_trivial() { splits_over_trivial_group(&res) } else { chain_retraction(&res.i)?.is_some() };
        }
        let gw = setup.group().whole();
        middle_relatively_injective = setup.frak_y().members().iter().all(|y| gw.is_subconjugate(y, setup.frak_x()));
    }
    let ms: Vec<ComplexMackey> =
        [tri.x(), tri.y(), tri.e(), tri.shifted()].iter().map(|z| complex_mackey(z, setup)).collect::<Result<_>>()?;
    let mut mackey_ok = ms.iter().all(|m| m.block_diagonal);
    for (k, u) in [&tri.f, &tri.g, &tri.h].into_iter().enumerate() {
        mackey_ok &= mackey_natural(u, &ms[k], &ms[k + 1], setup)?;
    }
    let mut f_parts_projective = true;
    for m in &ms {
        f_parts_projective &= f_part_projective(m, setup)?;
    }
    let cone_matches = if kind == TriangleKind::Ts {
        // E_G ≅ cone(Ind f) ≅ Ind cone(f) ≅ Ind E_H
        let fg = f.induce(h)?;
        let (tri_g, cert_g) = triangle_of(&fg, &Flavor::Ts, false, seed)?;
        Some(match (&cert_g.cone_iso, &cert.cone_iso) {
            (Some(phi_g), Some(phi_h)) => {
                let (cg, ch) = (Complex::cone(&fg), Complex::cone(f));
                let n = h.index_in_parent();
                let pi = ChainMap::new(&ch.induce(h)?, &cg, |d| {
                    induced_sum_order(f.source.p(), n, f.target.dim(d), f.source.dim(d + 1))
                });
                let ind = phi_h.induce(h)?;
                match (pi, chain_inverse(&ind)) {
                    (Ok(pi), Some(back)) => match chain_inverse(&pi) {
                        Some(pi_inv) => {
                            let psi = back.compose(&pi_inv.compose(phi_g)?)?;
                            psi.source == *tri_g.e() && psi.target == tri.e().induce(h)? && psi.is_iso()
                        }
                        None => false,
                    },
                    _ => false,
                }
            }
            _ => false,
        })
    } else {
        None
    };
    Ok(TrianglePreservation {
        h_triangle: cert,
        induced_term_split,
        induced_v_split,
        middle_relatively_injective,
        mackey_natural: mackey_ok,
        f_parts_projective,
        cone_matches,
    })
}

/// `Ind(A ⊕ B) -> Ind A ⊕ Ind B`: coset-major order to block order.
fn induced_sum_order(p: u32, n: usize, a: usize, b: usize) -> FpMatrix {
    let mut m = FpMatrix::zeros(p, n * (a + b), n * (a + b));
    for c in 0..n {
        for j in 0..a + b {
            let to = if j < a { c * a + j } else { n * a + c * b + j - a };
            m.set(to, c * (a + b) + j, 1);
        }
    }
    m
}

fn chain_inverse(f: &ChainMap) -> Option<ChainMap> {
    let (lo, hi) = (f.source.lo().min(f.target.lo()), f.source.hi().max(f.target.hi()));
    let mut inv = BTreeMap::new();
    for d in lo..=hi {
        if f.source.dim(d) != f.target.dim(d) {
            return None;
        }
        inv.insert(d, f.comp(d).inverse()?);
    }
    ChainMap::new(&f.target, &f.source, |d| inv.get(&d).cloned().unwrap_or_else(|| FpMatrix::zeros(f.source.p(), 0, 0))).ok()
}

/// `ℝ(M ⊗ M') ≅ ℝ(M) ⊗ ℝ(M')` modulo `𝔜`-projectives.
pub fn tensor_compatibility(m1: &Module, m2: &Module, setup: &CorrespondenceSetup, opts: DecOptions) -> Result<bool> {
    let y = setup.y_local();
    let lhs = strip(&m1.tensor(m2)?.restrict(setup.h())?, &y, opts)?;
    let (r1, r2) = (r_functor(m1, setup, opts)?, r_functor(m2, setup, opts)?);
    let rhs = strip(&r1.object.representative.tensor(&r2.object.representative)?, &y, opts)?;
    Ok(is_isomorphic(&lhs.module, &rhs.module, opts)?.is_some())
}

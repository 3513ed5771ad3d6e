use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{super_trace, unitor, ChainMap, Complex, Flavor, VSpec};
use crate::error::{Error, Result};
use crate::gfla::{Echelon, FpMatrix, Subspace};
use crate::grp::{Subgroup, SubgroupCollection};
use crate::rep::{hom_space, pair, relative_trace, trace_functional, Module};

/// Chain maps `X -> Y` over the group, with an RREF basis of the concatenated components.
#[derive(Clone, Debug)]
pub struct ChainHomSpace {
    pub source: Complex,
    pub target: Complex,
    /// `(degree, offset)` for every degree of the common window.
    layout: Vec<(i32, usize)>,
    total: usize,
    basis: Vec<ChainMap>,
    space: Subspace,
}

impl ChainHomSpace {
    pub fn new(x: &Complex, y: &Complex) -> Result<ChainHomSpace> {
        x.check_compatible(y)?;
        let p = x.p();
        let probe = ChainMap::zero(x, y);
        let (lo, comps) = probe.window();
        let mut layout = Vec::new();
        let mut total = 0;
        for (k, c) in comps.iter().enumerate() {
            layout.push((lo + k as i32, total));
            total += c.rows() * c.cols();
        }
        // per-degree intertwiners, then the chain condition as one linear system
        let mut unknowns: Vec<(i32, FpMatrix)> = Vec::new();
        for &(d, _) in &layout {
            if x.dim(d) == 0 || y.dim(d) == 0 {
                continue;
            }
            for h in hom_space(&x.term(d), &y.term(d))?.basis() {
                unknowns.push((d, h.clone()));
            }
        }
        let eq_degrees: Vec<i32> = match (layout.first(), layout.last()) {
            (Some(&(a, _)), Some(&(b, _))) => (a - 1..=b).collect(),
            _ => Vec::new(),
        };
        let mut eq_off = Vec::new();
        let mut neq = 0;
        for &d in &eq_degrees {
            eq_off.push(neq);
            neq += y.dim(d + 1) * x.dim(d);
        }
        let col_of = |d: i32, h: &FpMatrix| -> Vec<u32> {
            let mut col = vec![0u32; neq];
            // block d: ∂_Y h ; block d - 1: -h ∂_X
            if let Some(k) = eq_degrees.iter().position(|&e| e == d) {
                let m = y.boundary(d).mul(h);
                col[eq_off[k]..eq_off[k] + m.data().len()].copy_from_slice(m.data());
            }
            if let Some(k) = eq_degrees.iter().position(|&e| e == d - 1) {
                let m = h.mul(&x.boundary(d - 1)).neg();
                col[eq_off[k]..eq_off[k] + m.data().len()].copy_from_slice(m.data());
            }
            col
        };
        let cols: Vec<Vec<u32>> = unknowns.iter().map(|(d, h)| col_of(*d, h)).collect();
        let mut ech = Echelon::new(p, unknowns.len());
        for r in 0..neq {
            if ech.is_full() {
                break;
            }
            let row: Vec<u32> = cols.iter().map(|c| c[r]).collect();
            if row.iter().any(|&v| v != 0) {
                ech.insert(row);
            }
        }
        let kernel = if unknowns.is_empty() { Vec::new() } else { ech.kernel() };
        let vecs: Vec<Vec<u32>> = kernel
            .iter()
            .map(|c| {
                let mut v = vec![0u32; total];
                for (coef, (d, h)) in c.iter().zip(&unknowns) {
                    if *coef == 0 {
                        continue;
                    }
                    let off = layout.iter().find(|e| e.0 == *d).expect("degree in window").1;
                    for (t, &e) in v[off..off + h.data().len()].iter_mut().zip(h.data()) {
                        *t = ((*t as u64 + *coef as u64 * e as u64) % p as u64) as u32;
                    }
                }
                v
            })
            .collect();
        let space = Subspace::from_vectors(p, total, vecs);
        let mut out = ChainHomSpace { source: x.clone(), target: y.clone(), layout, total, basis: Vec::new(), space };
        out.basis = out.space.basis().iter().map(|v| out.from_vector(v)).collect();
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[ChainMap] {
        &self.basis
    }
    pub fn as_subspace(&self) -> &Subspace {
        &self.space
    }
    pub fn ambient_dim(&self) -> usize {
        self.total
    }

    pub fn from_vector(&self, v: &[u32]) -> ChainMap {
        let p = self.source.p();
        let (x, y) = (&self.source, &self.target);
        ChainMap::new_unchecked(x, y, |d| {
            let (r, c) = (y.dim(d), x.dim(d));
            match self.layout.iter().find(|e| e.0 == d) {
                Some(&(_, off)) => FpMatrix::from_vec(p, r, c, v[off..off + r * c].to_vec()),
                None => FpMatrix::zeros(p, r, c),
            }
        })
    }

    pub fn contains(&self, f: &ChainMap) -> bool {
        f.source == self.source && f.target == self.target && self.space.contains(&f.to_vector())
    }

    pub fn coords(&self, f: &ChainMap) -> Option<Vec<u32>> {
        self.space.coords(&f.to_vector())
    }

    pub fn element(&self, coeffs: &[u32]) -> ChainMap {
        let p = self.source.p();
        let mut v = vec![0u32; self.total];
        for (c, b) in coeffs.iter().zip(self.space.basis()) {
            for (t, &e) in v.iter_mut().zip(b) {
                *t = ((*t as u64 + *c as u64 * e as u64) % p as u64) as u32;
            }
        }
        self.from_vector(&v)
    }

    /// `(degree, row, col)` of each pivot.
    fn pivot_positions(&self) -> Vec<(i32, usize, usize)> {
        self.space
            .pivots()
            .iter()
            .map(|&k| {
                let &(d, off) = self
                    .layout
                    .iter()
                    .find(|e| e.1 <= k && k < e.1 + self.source.dim(e.0) * self.target.dim(e.0))
                    .expect("pivot in layout");
                let c = self.source.dim(d);
                (d, (k - off) / c, (k - off) % c)
            })
            .collect()
    }

    fn span_of(&self, maps: impl IntoIterator<Item = ChainMap>) -> Subspace {
        let p = self.source.p();
        let mut ech = Echelon::new(p, self.dim());
        for f in maps {
            if ech.is_full() {
                break;
            }
            let c = self.coords(&f).expect("map lies in the chain map space");
            ech.insert(c);
        }
        ech.to_subspace()
    }

    /// Null-homotopic chain maps, in coordinates.
    pub fn homotopy_subspace(&self) -> Result<Subspace> {
        let hs = homotopy_basis(&self.source, &self.target)?;
        Ok(self.span_of(hs.iter().map(|(d, h)| homotopy_image(&self.source, &self.target, *d, h))))
    }

    /// `Tr_P^G` of chain maps over `P`, in coordinates.
    pub fn trace_subspace(&self, q: &Subgroup) -> Result<Subspace> {
        let p = self.source.p();
        if q.is_whole() {
            return Ok(Subspace::full(p, self.dim()));
        }
        if self.dim() == 0 {
            return Ok(Subspace::zero(p, 0));
        }
        let (x, y) = (&self.source, &self.target);
        let reps = q.parent().whole().left_coset_reps(q)?;
        let w: Vec<(i32, FpMatrix)> = self
            .pivot_positions()
            .into_iter()
            .map(|(d, a, b)| (d, trace_functional(&x.term(d), &y.term(d), &reps, a, b)))
            .collect();
        let local = ChainHomSpace::new(&x.restrict(q)?, &y.restrict(q)?)?;
        let mut ech = Echelon::new(p, self.dim());
        for f in local.basis() {
            if ech.is_full() {
                break;
            }
            ech.insert(w.iter().map(|(d, wk)| pair(wk, &f.comp(*d))).collect());
        }
        Ok(ech.to_subspace())
    }

    /// `∂h + h∂` with each `h_d` a relative trace from `q`.
    pub fn traced_homotopy_subspace(&self, q: &Subgroup) -> Result<Subspace> {
        let (x, y) = (&self.source, &self.target);
        let mut maps = Vec::new();
        for d in x.degrees() {
            if y.dim(d - 1) == 0 {
                continue;
            }
            let (a, b) = (x.term(d), y.term(d - 1));
            let local = hom_space(&a.restrict(q)?, &b.restrict(q)?)?;
            for f in local.basis() {
                let h = relative_trace(&a, &b, f, q)?;
                maps.push(homotopy_image(x, y, d, &h));
            }
        }
        Ok(self.span_of(maps))
    }

    /// Maps factoring through `Y ⊗ V^# ⊗ V -> Y`.
    pub fn v_cover_subspace(&self, v: &Module) -> Result<Subspace> {
        let (x, y) = (&self.source, &self.target);
        let vc = Complex::concentrated(v, 0);
        let tr = super_trace(&vc)?;
        let yv = y.tensor(&tr.source)?;
        let mu = unitor(&y.tensor(&tr.target)?, y)?.compose(&y.identity().tensor(&tr)?)?;
        let through = ChainHomSpace::new(x, &yv)?;
        let maps: Vec<ChainMap> = through.basis().iter().map(|g| mu.compose(g).expect("composable")).collect();
        Ok(self.span_of(maps))
    }

    /// As `traced_homotopy_subspace`, for a general `V`.
    pub fn v_cover_homotopy_subspace(&self, v: &Module) -> Result<Subspace> {
        let (x, y) = (&self.source, &self.target);
        let vv = v.dual().tensor(v)?;
        let n = v.dim();
        let mut tr = FpMatrix::zeros(v.p(), 1, n * n);
        for c in 0..n {
            tr.set(0, c * n + c, 1);
        }
        let mut maps = Vec::new();
        for d in x.degrees() {
            if y.dim(d - 1) == 0 {
                continue;
            }
            let b = y.term(d - 1);
            let mu = FpMatrix::identity(v.p(), b.dim()).kron(&tr);
            for g in hom_space(&x.term(d), &b.tensor(&vv)?)?.basis() {
                maps.push(homotopy_image(x, y, d, &mu.mul(g)));
            }
        }
        Ok(self.span_of(maps))
    }
}

/// A map of degree `-1`, `h_d: X^d -> Y^{d-1}`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub components: Vec<(i32, FpMatrix)>,
}

impl Homotopy {
    pub fn get(&self, d: i32) -> Option<&FpMatrix> {
        self.components.iter().find(|c| c.0 == d).map(|c| &c.1)
    }

    /// `∂h + h∂`.
    pub fn boundary(&self, x: &Complex, y: &Complex) -> ChainMap {
        let p = x.p();
        let z = |d: i32| FpMatrix::zeros(p, y.dim(d - 1), x.dim(d));
        ChainMap::new_unchecked(x, y, |d| {
            let hd = self.get(d).cloned().unwrap_or_else(|| z(d));
            let hd1 = self.get(d + 1).cloned().unwrap_or_else(|| z(d + 1));
            y.boundary(d - 1).mul(&hd).add(&hd1.mul(&x.boundary(d)))
        })
    }
}

fn homotopy_basis(x: &Complex, y: &Complex) -> Result<Vec<(i32, FpMatrix)>> {
    let mut out = Vec::new();
    for d in x.degrees() {
        if y.dim(d - 1) == 0 {
            continue;
        }
        for h in hom_space(&x.term(d), &y.term(d - 1))?.basis() {
            out.push((d, h.clone()));
        }
    }
    Ok(out)
}

/// `∂h + h∂` for `h` supported in the single degree `d`.
pub fn homotopy_image(x: &Complex, y: &Complex, d: i32, h: &FpMatrix) -> ChainMap {
    let p = x.p();
    ChainMap::new_unchecked(x, y, |c| {
        if c == d {
            y.boundary(d - 1).mul(h)
        } else if c == d - 1 {
            h.mul(&x.boundary(d - 1))
        } else {
            FpMatrix::zeros(p, y.dim(c), x.dim(c))
        }
    })
}

/// A homotopy with `f = ∂h + h∂`, found by solving one linear system.
pub fn is_null_homotopic(f: &ChainMap) -> Result<Option<Homotopy>> {
    let (x, y) = (&f.source, &f.target);
    let p = x.p();
    let target = f.to_vector();
    let hs = homotopy_basis(x, y)?;
    if hs.is_empty() {
        return Ok(if f.is_zero() { Some(Homotopy { components: Vec::new() }) } else { None });
    }
    let cols: Vec<Vec<u32>> = hs.iter().map(|(d, h)| homotopy_image(x, y, *d, h).to_vector()).collect();
    let a = FpMatrix::from_columns(p, target.len(), &cols);
    let sol = match a.solve(&FpMatrix::column(p, &target))? {
        None => return Ok(None),
        Some((s, _)) => s,
    };
    let mut comps: Vec<(i32, FpMatrix)> = Vec::new();
    for (k, (d, h)) in hs.iter().enumerate() {
        let c = sol.get(k, 0);
        if c == 0 {
            continue;
        }
        match comps.iter_mut().find(|e| e.0 == *d) {
            Some(e) => e.1.axpy(c, h),
            None => comps.push((*d, h.scale(c))),
        }
    }
    let h = Homotopy { components: comps };
    debug_assert!(h.boundary(x, y) == *f);
    Ok(Some(h))
}

/// Chain maps `X -> Y` that factor through a projective object of the flavor, plus traces
/// from the members of `coll`.
pub fn relative_null_space(x: &Complex, y: &Complex, flavor: &Flavor, coll: &SubgroupCollection) -> Result<(ChainHomSpace, Subspace)> {
    let hom = ChainHomSpace::new(x, y)?;
    let null = null_space_in(&hom, flavor, coll)?;
    Ok((hom, null))
}

pub(crate) fn null_space_in(hom: &ChainHomSpace, flavor: &Flavor, coll: &SubgroupCollection) -> Result<Subspace> {
    let p = hom.source.p();
    let mut s = Subspace::zero(p, hom.dim());
    let full = |s: &Subspace| s.dim() == hom.dim();
    let traces = |s: &mut Subspace, members: &[Subgroup]| -> Result<()> {
        for q in members {
            if s.dim() == hom.dim() {
                break;
            }
            *s = s.sum(&hom.trace_subspace(q)?)?;
        }
        Ok(())
    };
    match flavor {
        Flavor::Ts => {
            s = hom.homotopy_subspace()?;
        }
        Flavor::VSplit(v) => add_v_split(hom, v, &mut s)?,
        Flavor::VTs(v) => match &v.sources {
            Some(src) => {
                for q in src.members() {
                    if full(&s) {
                        break;
                    }
                    s = s.sum(&hom.traced_homotopy_subspace(q)?)?;
                }
            }
            None => s = hom.v_cover_homotopy_subspace(&v.module)?,
        },
        Flavor::TsPlusVSplit(v) => {
            s = hom.homotopy_subspace()?;
            add_v_split(hom, v, &mut s)?;
        }
    }
    traces(&mut s, coll.members())?;
    Ok(s)
}

fn add_v_split(hom: &ChainHomSpace, v: &VSpec, s: &mut Subspace) -> Result<()> {
    match &v.sources {
        Some(src) => {
            for q in src.members() {
                if s.dim() == hom.dim() {
                    break;
                }
                *s = s.sum(&hom.trace_subspace(q)?)?;
            }
        }
        None => *s = s.sum(&hom.v_cover_subspace(&v.module)?)?,
    }
    Ok(())
}

/// Chain maps modulo the relative null space.
#[derive(Clone, Debug)]
pub struct QuotientHom {
    pub hom: ChainHomSpace,
    pub null: Subspace,
    /// Coordinates of representatives of a basis of the quotient.
    pub representatives: Vec<Vec<u32>>,
}

impl QuotientHom {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representative_maps(&self) -> Vec<ChainMap> {
        self.representatives.iter().map(|c| self.hom.element(c)).collect()
    }

    /// Whether `f` lies in the null space.
    pub fn is_zero_class(&self, f: &ChainMap) -> Result<bool> {
        let c = self.hom.coords(f).ok_or_else(|| Error::Precondition("not a chain map between these complexes".into()))?;
        Ok(self.null.contains(&c))
    }
}

pub fn quotient_hom(x: &Complex, y: &Complex, flavor: &Flavor, coll: &SubgroupCollection) -> Result<QuotientHom> {
    let (hom, null) = relative_null_space(x, y, flavor, coll)?;
    let representatives = null.complement_in(&Subspace::full(x.p(), hom.dim()));
    Ok(QuotientHom { hom, null, representatives })
}

/// A chain isomorphism `a -> b`: basis sweep, then seeded random combinations.
pub fn find_chain_iso(a: &Complex, b: &Complex, seed: u64, budget: usize) -> Result<Option<ChainMap>> {
    a.check_compatible(b)?;
    let (lo, hi) = super::union(a, b);
    if (lo..=hi).any(|d| a.dim(d) != b.dim(d)) {
        return Ok(None);
    }
    let hom = ChainHomSpace::new(a, b)?;
    if let Some(f) = hom.basis().iter().find(|f| f.is_iso()) {
        return Ok(Some(f.clone()));
    }
    if hom.dim() == 0 {
        return Ok(if a.is_zero() && b.is_zero() { Some(ChainMap::zero(a, b)) } else { None });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = a.p();
    for _ in 0..budget {
        let c: Vec<u32> = (0..hom.dim()).map(|_| rng.gen_range(0..p)).collect();
        let f = hom.element(&c);
        if f.is_iso() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{Group, Perm};

    fn s3() -> std::sync::Arc<Group> {
        Group::from_generators(3, vec![Perm::parse_cycles(3, "(0 1)").unwrap(), Perm::parse_cycles(3, "(0 1 2)").unwrap()])
            .unwrap()
    }

    #[test]
    fn contractible_identity_has_homotopy() {
        let g = s3();
        let m = Module::regular(&g, 2);
        let x = Complex::two_term(&m, &m, &FpMatrix::identity(2, 6), 0).unwrap();
        let h = is_null_homotopic(&x.identity()).unwrap().unwrap();
        assert_eq!(h.boundary(&x, &x), x.identity());
    }

    #[test]
    fn one_term_quotients() {
        let g = s3();
        let t = Complex::unit(&g, 2);
        let q = quotient_hom(&t, &t, &Flavor::Ts, &SubgroupCollection::empty()).unwrap();
        assert_eq!(q.dim(), 1);
        let one = SubgroupCollection::new(vec![g.trivial_subgroup()], true);
        assert_eq!(quotient_hom(&t, &t, &Flavor::Ts, &one).unwrap().dim(), 1);
        let m = Complex::concentrated(&Module::regular(&g, 2), 0);
        assert_eq!(quotient_hom(&m, &m, &Flavor::Ts, &SubgroupCollection::empty()).unwrap().dim(), 6);
        assert_eq!(quotient_hom(&m, &m, &Flavor::Ts, &one).unwrap().dim(), 0);
    }

    #[test]
    fn v_split_null_space_two_routes() {
        // permutation V: trace route vs factoring through Y ⊗ V^# ⊗ V
        let g = s3();
        let c2 = g.subgroup(&[g.index_of(&Perm::parse_cycles(3, "(0 1)").unwrap()).unwrap()]);
        let perm = VSpec::permutation(&g, 2, SubgroupCollection::new(vec![c2.clone()], true)).unwrap();
        let generic = VSpec::module(perm.module.clone()).unwrap();
        let m = Module::regular(&g, 2).direct_sum(&Module::trivial(&g, 2)).unwrap();
        let x = Complex::concentrated(&m, 0);
        let none = SubgroupCollection::empty();
        let (_, a) = relative_null_space(&x, &x, &Flavor::VSplit(perm), &none).unwrap();
        let (_, b) = relative_null_space(&x, &x, &Flavor::VSplit(generic), &none).unwrap();
        assert_eq!(a, b);
        assert!(a.dim() > 0);
    }
}

//! Verification suites. Each runs over an explicitly enumerated, seeded sample and returns a
//! report with one entry per checked instance.

use crate::blk::{block_idempotents, block_of, block_orthogonality_check, brauer_correspondent, is_sylow_intersection, BlockMembership, Center};
use crate::bundled;
use crate::cpx::{
    relative_null_space, split_idempotent, super_trace, unit_map, zigzag, ChainMap, Complex, Flavor,
};
use crate::dec::{decompose_with, higman_tests, is_isomorphic, DecOptions};
use crate::error::{Error, Result};
use crate::gfla::FpMatrix;
use crate::green::{
    check_adjunction, green_correspondent, green_correspondent_back, indecomposable_sample, random_chain_map,
    random_two_term, round_trip_ir, round_trip_ri, simple_modules, tensor_compatibility, triangle_preservation_check,
    verify_conditions, CorrespondenceSetup, TriangleKind,
};
use crate::grp::{Group, Subgroup, SubgroupCollection};
use crate::report::{Report, Status};
use crate::rep::{
    adj1, adj1_inverse, adj2, adj2_inverse, frobenius_inverse, frobenius_iso, hom_space, is_intertwiner,
    mackey_decomposition, projective_hom_subspace, trace_unit_maps, Module,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

pub const SUITES: &[&str] =
    &["mackey", "frobenius", "adjunction", "higman", "idem", "green", "conditions61", "blocks", "triangles", "tensor"];

/// Samples for the Higman suite are capped at `|G:H| dim M <= HIGMAN_CAP`.
pub const HIGMAN_CAP: usize = 240;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Dimension cap for sampled indecomposables.
    pub max_dim: usize,
    pub budget: usize,
    /// Groups to run on instead of the suite's defaults.
    pub groups: Option<Vec<(String, Arc<Group>)>>,
    pub p: Option<u32>,
    /// A standard setup name, or `broken`.
    pub setup: Option<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, max_dim: 16, budget: DecOptions::default().budget, groups: None, p: None, setup: None }
    }
}

impl SuiteConfig {
    fn opts(&self) -> DecOptions {
        DecOptions { seed: self.seed, budget: self.budget, cross_check: true }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    fn groups(&self, defaults: &[&str]) -> Result<Vec<(String, Arc<Group>)>> {
        match &self.groups {
            Some(g) => Ok(g.clone()),
            None => defaults.iter().map(|n| Ok((n.to_string(), bundled::group(n)?))).collect(),
        }
    }

    fn setups(&self) -> Result<Vec<(String, CorrespondenceSetup)>> {
        match self.setup.as_deref() {
            Some("broken") => Ok(vec![("broken".into(), bundled::broken_setup()?)]),
            Some(n) => Ok(vec![(n.into(), bundled::setup(n)?)]),
            None => bundled::SETUP_NAMES.iter().map(|n| Ok((n.to_string(), bundled::setup(n)?))).collect(),
        }
    }

    fn p(&self) -> u32 {
        self.p.unwrap_or(2)
    }
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Report> {
    let mut r = Report::new(format!("verify {name}"), cfg.seed);
    match name {
        "mackey" => mackey(cfg, &mut r)?,
        "frobenius" => frobenius(cfg, &mut r)?,
        "adjunction" => adjunction(cfg, &mut r)?,
        "higman" => higman(cfg, &mut r)?,
        "idem" => idem(cfg, &mut r)?,
        "green" => green(cfg, &mut r)?,
        "conditions61" => conditions61(cfg, &mut r)?,
        "blocks" => blocks(cfg, &mut r)?,
        "triangles" => triangles(cfg, &mut r)?,
        "tensor" => tensor(cfg, &mut r)?,
        _ => return Err(Error::Precondition(format!("unknown suite '{name}' (expected one of {})", SUITES.join(", ")))),
    }
    Ok(r)
}

const SMALL_GROUPS: &[&str] = &["c4", "s3", "a4", "s4", "a5"];

fn classes(g: &Arc<Group>) -> Vec<(String, Subgroup)> {
    g.subgroup_classes().into_iter().enumerate().map(|(i, s)| (format!("{}#{i}", s.label()), s)).collect()
}

/// Trivial, regular and one random permutation module of dimension at most 4.
fn module_sample(h: &Arc<Group>, p: u32, rng: &mut ChaCha8Rng) -> Vec<(String, Module)> {
    let m = Module::random(h, p, 4, rng);
    vec![
        ("trivial".into(), Module::trivial(h, p)),
        ("regular".into(), Module::regular(h, p)),
        (format!("random{}", m.dim()), m),
    ]
}

fn mackey(cfg: &SuiteConfig, r: &mut Report) -> Result<()> {
    let p = cfg.p();
    let mut rng = cfg.rng(1);
    for (gname, g) in cfg.groups(SMALL_GROUPS)? {
        let subs = classes(&g);
        for (hname, h) in &subs {
            let sample = module_sample(h.as_group(), p, &mut rng);
            for (kname, k) in &subs {
                let res = sample.iter().map(|(lname, l)| -> Result<(bool, String)> {
                    let md = mackey_decomposition(l, h, k)?;
                    let ok = md.iso.matrix.mul(&md.inverse.matrix).is_identity()
                        && md.inverse.matrix.mul(&md.iso.matrix).is_identity()
                        && is_intertwiner(&md.source, &md.sum, &md.iso.matrix);
                    Ok((ok, format!("{lname}:{}", md.summands.len())))
                });
                r.record(format!("mackey {gname} H={hname} K={kname}"), fold(res));
            }
        }
    }
    Ok(())
}

/// Conjunction of several checks, details joined.
fn fold(it: impl Iterator<Item = Result<(bool, String)>>) -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for x in it {
        let (b, d) = x?;
        ok &= b;
        parts.push(if b { d } else { format!("{d} FAILED") });
    }
    Ok((ok, parts.join(", ")))
}

fn frobenius(cfg: &SuiteConfig, r: &mut Report) -> Result<()> {
    let p = cfg.p();
    let mut rng = cfg.rng(2);
    for (gname, g) in cfg.groups(SMALL_GROUPS)? {
        let xs = [Module::trivial(&g, p), Module::random(&g, p, 3, &mut rng)];
        for (hname, h) in classes(&g) {
            let ys = [Module::trivial(h.as_group(), p), Module::random(h.as_group(), p, 3, &mut rng)];
            let mut res = Vec::new();
            for x in &xs {
                for y in &ys {
                    res.push((|| -> Result<(bool, String)> {
                        let f = frobenius_iso(x, y, &h)?;
                        let b = frobenius_inverse(x, y, &h)?;
                        let ok = f.matrix.mul(&b.matrix).is_identity()
                            && b.matrix.mul(&f.matrix).is_identity()
                            && is_intertwiner(&f.source, &f.target, &f.matrix);
                        Ok((ok, format!("{}x{}", x.dim(), y.dim())))
                    })());
                }
            }
            r.record(format!("frobenius {gname} H={hname}"), fold(res.into_iter()));
        }
    }
    // trace and unit of the monoidal structure: 20 modules, 10 two-term complexes
    let groups: Vec<Arc<Group>> = ["c2", "s3", "a4"].iter().map(|n| bundled::group(n)).collect::<Result<_>>()?;
    for i in 0..20 {
        let g = &groups[i % groups.len()];
        let m = Module::random(g, p, 4, &mut rng);
        r.record(format!("zigzag module {i}"), zigzag_check(&Complex::concentrated(&m, 0)).map(|(ok, d)| {
            let (tr, iota) = trace_unit_maps(&m);
            let scalar = tr.matrix.mul(&iota.matrix).get(0, 0);
            (ok && scalar == (m.dim() as u32) % p, d)
        }));
    }
    for i in 0..10 {
        let g = &groups[i % groups.len()];
        let lo = rng.gen_range(-1..=1);
        let x = random_two_term(g, p, 3, &mut rng)?.shift(lo);
        r.record(format!("zigzag complex {i}"), zigzag_check(&x));
    }
    Ok(())
}

/// Zig-zag is the identity and `Tr ∘ ι = Σ (-1)^d dim U^d`.
fn zigzag_check(u: &Complex) -> Result<(bool, String)> {
    let p = u.p();
    let z = zigzag(u)?;
    let scalar = super_trace(u)?.compose(&unit_map(u)?)?.comp(0);
    let euler: i64 = u.degrees().map(|d| if d % 2 == 0 { u.dim(d) as i64 } else { -(u.dim(d) as i64) }).sum();
    let want = crate::gfla::reduce(euler, p);
    let got = if scalar.rows() == 1 && scalar.cols() == 1 { scalar.get(0, 0) } else { u32::MAX };
    Ok((z.is_identity() && got == want, format!("dims {:?}, Tr ι = {got}", u.degrees().map(|d| u.dim(d)).collect::<Vec<_>>())))
}

fn adjunction(cfg: &SuiteConfig, r: &mut Report) -> Result<()> {
    let p = cfg.p();
    let mut rng = cfg.rng(3);
    for (gname, g) in cfg.groups(SMALL_GROUPS)? {
        let xs = [Module::trivial(&g, p), Module::random(&g, p, 4, &mut rng)];
        for (hname, h) in classes(&g) {
            let ys = module_sample(h.as_group(), p, &mut rng);
            let mut res = Vec::new();
            for x in &xs {
                for (yname, y) in &ys {
                    res.push(adjunction_pair(x, y, &h).map(|(ok, d)| (ok, format!("{yname}:{d}"))));
                }
            }
            r.record(format!("adjunction {gname} H={hname}"), fold(res.into_iter()));
        }
    }
    Ok(())
}

fn adjunction_pair(x: &Module, y: &Module, h: &Subgroup) -> Result<(bool, String)> {
    let ind = y.induce(h)?;
    let res = x.restrict(h)?;
    let (g1, h1) = (hom_space(&ind, x)?, hom_space(y, &res)?);
    let (g2, h2) = (hom_space(x, &ind)?, hom_space(&res, y)?);
    let mut ok = g1.dim() == h1.dim() && g2.dim() == h2.dim();
    for f in g1.basis() {
        ok &= adj1_inverse(y, x, &adj1(y, x, f, h)?, h)? == *f;
    }
    for f in h1.basis() {
        ok &= adj1(y, x, &adj1_inverse(y, x, f, h)?, h)? == *f;
    }
    for f in g2.basis() {
        ok &= adj2_inverse(y, x, &adj2(y, x, f, h)?, h)? == *f;
    }
    for f in h2.basis() {
        ok &= adj2(y, x, &adj2_inverse(y, x, f, h)?, h)? == *f;
    }
    Ok((ok, format!("{}/{}", g1.dim(), g2.dim())))
}

fn higman(cfg: &SuiteConfig, r: &mut Report) -> Result<()> {
    let p = cfg.p();
    let opts = cfg.opts();
    let mut rng = cfg.rng(4);
    for (gname, g) in cfg.groups(SMALL_GROUPS)? {
        let s = g.whole().sylow(p);
        let mut ms = vec![Module::trivial(&g, p), Module::random(&g, p, 4, &mut rng), Module::permutation(&s, p)];
        ms.retain(|m| m.dim() <= 16);
        for (hname, h) in classes(&g) {
            let mut res = Vec::new();
            let mut skipped = 0;
            for m in &ms {
                if h.index_in_parent() * m.dim() > HIGMAN_CAP {
                    skipped += 1;
                    continue;
                }
                res.push(higman_tests(m, &h, opts).map(|t| {
                    (t.via_trace == t.via_summand, format!("{}:{}", m.dim(), if t.via_trace { "proj" } else { "not" }))
                }));
            }
            let mut out = fold(res.into_iter());
            if let Ok((_, d)) = &mut out {
                if skipped > 0 {
                    *d += &format!(", {skipped} above cap");
                }
            }
            r.record(format!("higman {gname} H={hname}"), out);
            let a = Module::random(&g, p, 4, &mut rng);
            let b = Module::random(&g, p, 4, &mut rng);
            r.record(format!("higman ideal {gname} H={hname}"), ideal_check(&a, &b, &h));
        }
    }
    Ok(())
}

/// The `H`-projective maps `A -> B` form an ideal: closed under composition with `End(A)`
/// and `End(B)`.
fn ideal_check(a: &Module, b: &Module, h: &Subgroup) -> Result<(bool, String)> {
    let coll = SubgroupCollection::new(vec![h.clone()], true);
    let (hom, proj) = projective_hom_subspace(a, b, &coll)?;
    let (ea, eb) = (hom_space(a, a)?, hom_space(b, b)?);
    let inside = |m: &FpMatrix| hom.coords(m).map(|c| proj.contains(&c)).unwrap_or(false);
    let mut ok = true;
    for c in proj.basis() {
        let f = hom.element(c);
        ok &= eb.basis().iter().all(|u| inside(&u.mul(&f))) && ea.basis().iter().all(|v| inside(&f.mul(v)));
    }
    Ok((ok, format!("{} of {}", proj.dim(), hom.dim())))
}

fn idem(cfg: &SuiteConfig, r: &mut Report) -> Result<()> {
    let mut rng = cfg.rng(5);
    let groups = [("c2", bundled::group("c2")?), ("s3", bundled::group("s3")?)];
    for i in 0..20 {
        let (gname, g) = &groups[i / 10];
        r.record(format!("idem {gname} {i}"), idem_case(g, &mut rng));
    }
    Ok(())
}

fn idem_case(g: &Arc<Group>, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let p = 2;
    let flavor = Flavor::Ts;
    let coll = SubgroupCollection::new(vec![g.trivial_subgroup()], true);
    let a = random_two_term(g, p, 3, rng)?;
    let b = random_two_term(g, p, 3, rng)?;
    let x = a.direct_sum(&b)?;
    let e0 = ChainMap::inclusion(&a, &b, false)?.compose(&ChainMap::projection(&a, &b, false)?)?;
    let (hom, null) = relative_null_space(&x, &x, &flavor, &coll)?;
    let mut v = vec![0u32; hom.dim()];
    for c in null.basis() {
        let s = rng.gen_range(0..p);
        for (t, &e) in v.iter_mut().zip(c) {
            *t = (*t + s * e) % p;
        }
    }
    let e1 = e0.add(&hom.element(&v))?;
    let s0 = split_idempotent(&x, &e0, &flavor, &coll)?;
    let s1 = split_idempotent(&x, &e1, &flavor, &coll)?;
    let fwd = s1.proj_y.compose(&s0.incl_y)?;
    let back = s0.proj_y.compose(&s1.incl_y)?;
    let in_null = |f: &ChainMap| -> Result<bool> {
        let (h, n) = relative_null_space(&f.source, &f.target, &flavor, &coll)?;
        Ok(h.coords(f).map(|c| n.contains(&c)).unwrap_or(false))
    };
    let iso = in_null(&back.compose(&fwd)?.sub(&s0.y.identity())?)? && in_null(&fwd.compose(&back)?.sub(&s1.y.identity())?)?;
    Ok((
        s0.certified() && s1.certified() && iso,
        format!("dim X {}, Y {} / {}, null {}", x.total_dim(), s0.y.total_dim(), s1.y.total_dim(), null.dim()),
    ))
}

fn green(cfg: &SuiteConfig, r: &mut Report) -> Result<()> {
    let opts = cfg.opts();
    for (sname, s) in cfg.setups()? {
        let sample = indecomposable_sample(s.h_group(), s.p(), cfg.max_dim, opts)?;
        let mut eligible = 0;
        let mut pairs = Vec::new();
        for (i, l) in sample.iter().enumerate() {
            let c = match green_correspondent(l, &s, opts) {
                Err(Error::Precondition(_)) => continue,
                other => other,
            };
            eligible += 1;
            let name = format!("correspondent {sname} L{i}");
            let c = match c {
                Ok(c) => c,
                Err(e) => {
                    r.record(name, Err(e));
                    continue;
                }
            };
            let checks = (|| -> Result<(bool, String)> {
                let ri = round_trip_ri(l, &s, opts)?;
                let ir = round_trip_ir(&c.module, &s, opts)?;
                let back = green_correspondent_back(&c.module, &s, opts)?;
                let back_iso = is_isomorphic(&back.module, l, opts)?.is_some();
                let discarded: Vec<String> =
                    c.summands.iter().filter(|m| m.relatively_projective).map(|m| m.dim.to_string()).collect();
                Ok((
                    c.vertex_transported && back.vertex_transported && ri && ir && back_iso,
                    format!(
                        "dim L {} -> dim M {}, vertex {}, discarded [{}], RI {ri}, IR {ir}, back {back_iso}",
                        l.dim(),
                        c.module.dim(),
                        c.vertex.label(),
                        discarded.join(" ")
                    ),
                ))
            })();
            r.record(name, checks);
            pairs.push((i, c.module));
        }
        r.check(
            format!("sample {sname}"),
            eligible > 0,
            format!("{} indecomposables {:?}, {eligible} eligible", sample.len(), sample.iter().map(|m| m.dim()).collect::<Vec<_>>()),
        );
        for (i, m) in &pairs {
            let res = sample.iter().enumerate().map(|(j, l2)| {
                check_adjunction(l2, m, &s, opts).map(|a| (a.holds(), format!("L{j}:{}", a.quotient_dim_g)))
            });
            r.record(format!("gamma-beta {sname} L{i}"), fold(res));
        }
    }
    Ok(())
}

fn conditions61(cfg: &SuiteConfig, r: &mut Report) -> Result<()> {
    let opts = cfg.opts();
    let (sname, s) = match cfg.setup.as_deref() {
        None => ("a5-a4".to_string(), bundled::setup("a5-a4")?),
        Some(_) => cfg.setups()?.remove(0),
    };
    let sample = indecomposable_sample(s.h_group(), s.p(), cfg.max_dim, opts)?;
    for e in verify_conditions(&s, &sample, opts)? {
        r.check(format!("condition ({}) {sname} {}", e.condition, e.name), e.pass, e.details);
    }
    if sname != "broken" {
        let b = bundled::broken_setup()?;
        let bs = indecomposable_sample(b.h_group(), b.p(), cfg.max_dim, opts)?;
        let failing = verify_conditions(&b, &bs, opts)?.into_iter().filter(|e| e.condition == 6 && !e.pass).count();
        r.check("sensitivity broken 𝔜 fails (6)", failing > 0, format!("{failing} failing condition (6) entries"));
    }
    Ok(())
}

fn blocks(cfg: &SuiteConfig, r: &mut Report) -> Result<()> {
    let opts = cfg.opts();
    let cases: Vec<(String, Arc<Group>, u32)> = match &cfg.groups {
        Some(gs) => gs.iter().map(|(n, g)| (n.clone(), g.clone(), cfg.p())).collect(),
        None => [("s3", 2), ("s3", 3), ("s4", 2), ("a5", 2)]
            .iter()
            .map(|&(n, p)| Ok((n.to_string(), bundled::group(n)?, p)))
            .collect::<Result<_>>()?,
    };
    for (gname, g, p) in cases {
        let tag = format!("{gname} GF({p})");
        let bs = match block_idempotents(&g, p) {
            Ok(b) => b,
            Err(e) => {
                r.record(format!("blocks {tag}"), Err(e));
                continue;
            }
        };
        let z = Center::new(&g, p);
        r.record(format!("blocks {tag} oracle"), primitive_idempotents(&z).map(|o| {
            let mut got: Vec<Vec<u32>> = bs.iter().map(|b| b.coords.clone()).collect();
            got.sort();
            (got == o, format!("{} blocks, enumeration finds {}", bs.len(), o.len()))
        }));
        let one = crate::blk::GroupAlgebraElement::one(&g, p);
        let mut sum = crate::blk::GroupAlgebraElement::zero(&g, p);
        let mut ok = true;
        for (i, a) in bs.iter().enumerate() {
            sum = sum.add(&a.idempotent);
            ok &= a.idempotent.is_idempotent() && a.idempotent.is_central();
            for b in &bs[i + 1..] {
                ok &= a.idempotent.mul(&b.idempotent).is_zero();
            }
        }
        r.check(format!("blocks {tag} orthogonal"), ok && sum == one, format!("{} idempotents", bs.len()));
        let sylow = g.whole().sylow(p);
        let principal: Vec<_> = bs.iter().filter(|b| b.is_principal()).collect();
        r.check(
            format!("blocks {tag} principal defect"),
            principal.len() == 1 && g.whole().are_conjugate(&principal[0].defect, &sylow),
            format!("defect {}", principal.first().map(|b| b.defect.label()).unwrap_or_default()),
        );
        let labels: Vec<String> = bs.iter().map(|b| b.defect.label()).collect();
        r.check(
            format!("blocks {tag} sylow intersections"),
            bs.iter().all(|b| is_sylow_intersection(&b.defect, p)),
            format!("defects [{}]", labels.join(" ")),
        );
        let mut samples = simple_modules(&g, p, opts)?;
        samples.extend(decompose_with(&Module::regular(&g, p), opts)?.summands.into_iter().map(|s| s.module));
        let single = samples.iter().all(|m| matches!(block_of(&bs, m), BlockMembership::Single(_)));
        r.check(format!("blocks {tag} membership"), single, format!("{} sampled indecomposables", samples.len()));
        r.record(format!("blocks {tag} hom orthogonality"), block_orthogonality_check(&bs, &samples).map(|o| {
            (o.failures.is_empty(), format!("{} cross-block pairs", o.pairs))
        }));
        let n = g.whole().normalizer(&sylow)?;
        r.record(format!("blocks {tag} brauer"), brauer_correspondent(principal[0], &n).map(|c| {
            (c.block.is_principal(), format!("N(Sylow) {}, rule {:?}", n.label(), c.rule))
        }));
    }
    Ok(())
}

/// Primitive idempotents of the center by enumerating all of it; coordinates sorted.
fn primitive_idempotents(z: &Center) -> Result<Vec<Vec<u32>>> {
    let (p, n) = (z.p() as u64, z.dim());
    let total = p.checked_pow(n as u32).filter(|&t| t <= 1 << 16).ok_or_else(|| {
        Error::Undecided(format!("center of dimension {n} too large to enumerate"))
    })?;
    let mut idem = Vec::new();
    for k in 1..total {
        let mut v = vec![0u32; n];
        let mut r = k;
        for c in v.iter_mut() {
            *c = (r % p) as u32;
            r /= p;
        }
        if z.mul(&v, &v) == v {
            idem.push(v);
        }
    }
    let mut prim: Vec<Vec<u32>> =
        idem.iter().filter(|e| !idem.iter().any(|f| f != *e && z.mul(f, e) == *f)).cloned().collect();
    prim.sort();
    Ok(prim)
}

fn triangles(cfg: &SuiteConfig, r: &mut Report) -> Result<()> {
    let (sname, s) = match cfg.setup.as_deref() {
        None => ("a5-a4".to_string(), bundled::setup("a5-a4")?),
        Some(_) => cfg.setups()?.remove(0),
    };
    let mut rng = cfg.rng(9);
    for i in 0..10u64 {
        let x = random_two_term(s.h_group(), s.p(), 4, &mut rng)?;
        let y = random_two_term(s.h_group(), s.p(), 4, &mut rng)?;
        let f = random_chain_map(&x, &y, &mut rng)?;
        for (kind, tag) in [(TriangleKind::TsPlusVSplit, "TS+V"), (TriangleKind::Ts, "TS")] {
            r.record(format!("triangle {sname} {i} {tag}"), triangle_preservation_check(&f, &s, kind, cfg.seed ^ i).map(|t| {
                let mut parts = vec![format!("dims {}->{}", x.total_dim(), y.total_dim())];
                for (ok, what) in [
                    (t.h_triangle.holds(), "H triangle"),
                    (t.induced_term_split, "term split"),
                    (t.induced_v_split, "V_X split"),
                    (t.middle_relatively_injective, "middle term"),
                    (t.mackey_natural, "Mackey"),
                    (t.f_parts_projective, "F projective"),
                    (t.cone_matches != Some(false), "cone"),
                ] {
                    if !ok {
                        parts.push(format!("{what} FAILED"));
                    }
                }
                (t.holds(), parts.join(", "))
            }));
        }
    }
    Ok(())
}

fn tensor(cfg: &SuiteConfig, r: &mut Report) -> Result<()> {
    let opts = cfg.opts();
    let mut rng = cfg.rng(10);
    for (sname, s) in cfg.setups()? {
        for i in 0..10 {
            let a = Module::random(s.group(), s.p(), 4, &mut rng);
            let b = Module::random(s.group(), s.p(), 4, &mut rng);
            r.record(
                format!("tensor {sname} {i}"),
                tensor_compatibility(&a, &b, &s, opts).map(|ok| (ok, format!("dims {}x{}", a.dim(), b.dim()))),
            );
        }
    }
    Ok(())
}

/// Runs every suite and merges the reports in suite order.
pub fn run_all(cfg: &SuiteConfig) -> Result<Report> {
    let mut all = Report::new("verify all", cfg.seed);
    for s in SUITES {
        all.extend(run_suite(s, cfg)?);
    }
    Ok(all)
}

impl Report {
    /// Entries whose name starts with `prefix`.
    pub fn entries_with(&self, prefix: &str) -> Vec<&crate::report::Entry> {
        self.entries.iter().filter(|e| e.name.starts_with(prefix)).collect()
    }

    pub fn all_pass(&self, prefix: &str) -> bool {
        let e = self.entries_with(prefix);
        !e.is_empty() && e.iter().all(|e| e.status == Status::Pass)
    }
}

//! Property tests over seeded random groups, modules and complexes.

use greencorr::blk::{block_idempotents, block_of, BlockMembership};
use greencorr::bundled;
use greencorr::cpx::{is_null_homotopic, relative_null_space, ChainMap, Complex, Flavor};
use greencorr::dec::{
    decompose, decompose_with, fitting_split, higman_tests, iso_indecomposable, is_isomorphic, vertex, DecOptions,
};
use greencorr::gfla::FpMatrix;
use greencorr::green::{
    green_correspondent, random_chain_map, random_two_term, round_trip_ir, round_trip_ri, strip,
};
use greencorr::grp::{Group, Subgroup, SubgroupCollection};
use greencorr::rep::{frobenius_inverse, frobenius_iso, hom_space, projective_hom_subspace, Module};
use greencorr::verify::{run_suite, SuiteConfig};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

const SMALL: &[&str] = &["c2", "c4", "s3", "a4", "d8", "s4"];

fn pick_group(rng: &mut ChaCha8Rng) -> Arc<Group> {
    bundled::group(SMALL[rng.gen_range(0..SMALL.len())]).unwrap()
}

fn pick_subgroup(g: &Arc<Group>, rng: &mut ChaCha8Rng) -> Subgroup {
    let cs = g.subgroup_classes();
    cs[rng.gen_range(0..cs.len())].clone()
}

fn random_hom(a: &Module, b: &Module, rng: &mut ChaCha8Rng) -> FpMatrix {
    let h = hom_space(a, b).unwrap();
    if h.dim() == 0 {
        return FpMatrix::zeros(a.p(), b.dim(), a.dim());
    }
    let c: Vec<u32> = (0..h.dim()).map(|_| rng.gen_range(0..a.p())).collect();
    h.element(&c)
}

/// Isomorphism classes with multiplicities agree.
fn same_multiset(a: &[(Module, usize)], b: &[(Module, usize)]) -> bool {
    a.len() == b.len()
        && a.iter().all(|(m, k)| {
            b.iter().any(|(n, l)| k == l && m.dim() == n.dim() && iso_indecomposable(m, n).unwrap().is_some())
        })
}

fn classes(m: &Module, seed: u64) -> Vec<(Module, usize)> {
    let d = decompose(m, seed).unwrap();
    d.classes.iter().map(|c| (d.summands[c[0]].module.clone(), c.len())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cosets_partition_and_double_coset_sizes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = pick_group(&mut rng);
        let h = pick_subgroup(&g, &mut rng);
        let k = pick_subgroup(&g, &mut rng);
        let cos = g.whole().left_cosets(&h).unwrap();
        let mut seen = vec![0usize; g.order()];
        for &r in &cos.reps {
            for &x in h.elements() {
                seen[g.mul(r, x)] += 1;
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
        let total: usize = g
            .whole()
            .double_coset_reps(&k, &h)
            .unwrap()
            .iter()
            .map(|&t| k.order() * h.order() / k.intersect(&h.conjugate(t)).unwrap().order())
            .sum();
        prop_assert_eq!(total, g.order());
        prop_assert_eq!(g.whole().left_coset_reps(&h).unwrap(), cos.reps.clone());
    }

    #[test]
    fn normalizer_fixes_and_sylow_order(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = pick_group(&mut rng);
        let q = pick_subgroup(&g, &mut rng);
        let n = g.whole().normalizer(&q).unwrap();
        prop_assert!(q.is_subgroup_of(&n));
        for &x in n.elements() {
            prop_assert!(q.conjugate(x).elements() == q.elements());
        }
        for p in [2u32, 3] {
            let mut pp = 1;
            while g.order().is_multiple_of(pp * p as usize) {
                pp *= p as usize;
            }
            prop_assert_eq!(g.whole().sylow(p).order(), pp);
        }
    }

    #[test]
    fn restriction_and_induction_are_functors(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = pick_group(&mut rng);
        let h = pick_subgroup(&g, &mut rng);
        let (a, b, c) = (Module::random(&g, 2, 4, &mut rng), Module::random(&g, 2, 4, &mut rng), Module::random(&g, 2, 4, &mut rng));
        let (f, k) = (random_hom(&a, &b, &mut rng), random_hom(&b, &c, &mut rng));
        // restriction keeps matrices; induction is block diagonal
        let ra = a.restrict(&h).unwrap();
        prop_assert!(greencorr::rep::is_intertwiner(&ra, &c.restrict(&h).unwrap(), &k.mul(&f)));
        let (x, y) = (Module::random(h.as_group(), 2, 3, &mut rng), Module::random(h.as_group(), 2, 3, &mut rng));
        let u = random_hom(&x, &y, &mut rng);
        let hu = greencorr::rep::ModHom::new(&x, &y, u).unwrap();
        let iu = hu.induce(&h).unwrap();
        prop_assert!(greencorr::rep::is_intertwiner(&iu.source, &iu.target, &iu.matrix));
        let id = greencorr::rep::ModHom::new(&x, &x, FpMatrix::identity(2, x.dim())).unwrap().induce(&h).unwrap();
        prop_assert!(id.matrix.is_identity());
    }

    #[test]
    fn induction_is_transitive(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = bundled::group(["s3", "a4", "d8", "s4"][rng.gen_range(0..4)]).unwrap();
        // a chain 1 <= K <= G through a random K
        let k = pick_subgroup(&g, &mut rng);
        let triv = k.as_group().trivial_subgroup();
        let x = Module::trivial(triv.as_group(), 2);
        let two_step = x.induce(&triv).unwrap().induce(&k).unwrap();
        let one_step = Module::regular(&g, 2);
        prop_assert!(is_isomorphic(&two_step, &one_step, DecOptions::default()).unwrap().is_some());
    }

    #[test]
    fn frobenius_maps_are_mutually_inverse(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = pick_group(&mut rng);
        let h = pick_subgroup(&g, &mut rng);
        let x = Module::random(&g, 2, 3, &mut rng);
        let y = Module::random(h.as_group(), 2, 3, &mut rng);
        let f = frobenius_iso(&x, &y, &h).unwrap();
        let b = frobenius_inverse(&x, &y, &h).unwrap();
        prop_assert!(f.matrix.mul(&b.matrix).is_identity());
        prop_assert!(b.matrix.mul(&f.matrix).is_identity());
    }

    #[test]
    fn projective_maps_form_an_ideal(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = pick_group(&mut rng);
        let h = pick_subgroup(&g, &mut rng);
        let (a, b, c) = (Module::random(&g, 2, 4, &mut rng), Module::random(&g, 2, 4, &mut rng), Module::random(&g, 2, 4, &mut rng));
        let coll = SubgroupCollection::new(vec![h], true);
        let (hab, pab) = projective_hom_subspace(&a, &b, &coll).unwrap();
        let (hac, pac) = projective_hom_subspace(&a, &c, &coll).unwrap();
        let k = random_hom(&b, &c, &mut rng);
        for v in pab.basis() {
            let f = hab.element(v);
            prop_assert!(pac.contains(&hac.coords(&k.mul(&f)).unwrap()));
        }
    }

    #[test]
    fn decomposition_reconstructs_identity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = pick_group(&mut rng);
        let m = Module::random(&g, [2, 3][rng.gen_range(0..2)], 12, &mut rng);
        let d = decompose(&m, seed).unwrap();
        let mut sum = FpMatrix::zeros(m.p(), m.dim(), m.dim());
        for s in &d.summands {
            sum = sum.add(&s.inclusion.mul(&s.projection));
        }
        prop_assert!(sum.is_identity());
    }

    #[test]
    fn krull_schmidt_is_seed_independent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = pick_group(&mut rng);
        let m = Module::random(&g, 2, 12, &mut rng);
        prop_assert!(same_multiset(&classes(&m, seed), &classes(&m, seed.wrapping_add(1))));
    }

    #[test]
    fn decomposition_is_additive(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = pick_group(&mut rng);
        let (a, b) = (Module::random(&g, 2, 6, &mut rng), Module::random(&g, 2, 6, &mut rng));
        let mut parts = classes(&a, seed);
        for (m, k) in classes(&b, seed) {
            match parts.iter_mut().find(|(n, _)| n.dim() == m.dim() && iso_indecomposable(n, &m).unwrap().is_some()) {
                Some(e) => e.1 += k,
                None => parts.push((m, k)),
            }
        }
        prop_assert!(same_multiset(&classes(&a.direct_sum(&b).unwrap(), seed), &parts));
    }

    #[test]
    fn fitting_split_is_invertible_plus_nilpotent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = pick_group(&mut rng);
        let m = Module::random(&g, 2, 8, &mut rng);
        let f = random_hom(&m, &m, &mut rng);
        if let Some(s) = fitting_split(&m, &f).unwrap() {
            prop_assert!(s.proj_y().mul(&f).mul(&s.incl_y()).inverse().is_some());
            let mut fz = s.proj_z().mul(&f).mul(&s.incl_z());
            let base = fz.clone();
            for _ in 1..s.z.dim().max(1) {
                fz = fz.mul(&base);
            }
            prop_assert!(fz.is_zero());
        }
    }

    #[test]
    fn vertex_is_upward_closed(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = bundled::group(["s3", "a4", "d8", "s4"][rng.gen_range(0..4)]).unwrap();
        let opts = DecOptions { seed, ..DecOptions::default() };
        let d = decompose_with(&Module::random(&g, 2, 8, &mut rng), opts).unwrap();
        let m = &d.summands[rng.gen_range(0..d.summands.len())].module;
        let v = vertex(m, opts).unwrap();
        for k in g.subgroup_classes() {
            if g.whole().subconjugator(&v, &k).is_some() {
                prop_assert!(higman_tests(m, &k, opts).unwrap().via_trace);
            }
        }
    }

    #[test]
    fn null_space_is_an_ideal(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = bundled::group(["c2", "s3"][rng.gen_range(0..2)]).unwrap();
        let (x, y, z) = (
            random_two_term(&g, 2, 3, &mut rng).unwrap(),
            random_two_term(&g, 2, 3, &mut rng).unwrap(),
            random_two_term(&g, 2, 3, &mut rng).unwrap(),
        );
        let coll = SubgroupCollection::new(vec![g.trivial_subgroup()], true);
        let (hxy, nxy) = relative_null_space(&x, &y, &Flavor::Ts, &coll).unwrap();
        let (hxz, nxz) = relative_null_space(&x, &z, &Flavor::Ts, &coll).unwrap();
        let k = random_chain_map(&y, &z, &mut rng).unwrap();
        for v in nxy.basis() {
            let kf = k.compose(&hxy.element(v)).unwrap();
            prop_assert!(nxz.contains(&hxz.coords(&kf).unwrap()));
        }
    }

    #[test]
    fn cone_composite_is_null_homotopic(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = pick_group(&mut rng);
        let x = random_two_term(&g, 2, 3, &mut rng).unwrap();
        let y = random_two_term(&g, 2, 3, &mut rng).unwrap();
        let f = random_chain_map(&x, &y, &mut rng).unwrap();
        let c = Complex::cone(&f);
        let incl = ChainMap::new(&y, &c, |d| {
            FpMatrix::vstack(2, y.dim(d), &[&FpMatrix::identity(2, y.dim(d)), &FpMatrix::zeros(2, x.dim(d + 1), y.dim(d))])
        })
        .unwrap();
        prop_assert!(is_null_homotopic(&incl.compose(&f).unwrap()).unwrap().is_some());
    }

    #[test]
    fn strip_keeps_a_summand(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = pick_group(&mut rng);
        let m = Module::random(&g, 2, 10, &mut rng);
        let coll = SubgroupCollection::new(vec![pick_subgroup(&g, &mut rng)], true);
        let s = strip(&m, &coll, DecOptions::default()).unwrap();
        prop_assert!(s.projection.mul(&s.inclusion).is_identity());
        prop_assert!(s.kept.iter().all(|k| !k.relatively_projective));
        prop_assert_eq!(s.module.dim() + s.discarded.iter().map(|k| k.dim).sum::<usize>(), m.dim());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn correspondence_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let name = ["s3-c2", "s4-d8", "a5-a4"][rng.gen_range(0..3)];
        let setup = bundled::setup(name).unwrap();
        let opts = DecOptions { seed, ..DecOptions::default() };
        let m = Module::random(setup.h_group(), 2, 8, &mut rng);
        for s in decompose_with(&m, opts).unwrap().summands {
            let l = s.module;
            if let Ok(c) = green_correspondent(&l, &setup, opts) {
                prop_assert!(c.vertex_transported);
                prop_assert!(round_trip_ri(&l, &setup, opts).unwrap());
                prop_assert!(round_trip_ir(&c.module, &setup, opts).unwrap());
            }
        }
    }

    #[test]
    fn blocks_contain_vertices(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (name, p) = [("s3", 2), ("s3", 3), ("s4", 2), ("a4", 2)][rng.gen_range(0..4)];
        let g = bundled::group(name).unwrap();
        let bs = block_idempotents(&g, p).unwrap();
        let opts = DecOptions { seed, ..DecOptions::default() };
        for s in decompose_with(&Module::random(&g, p, 12, &mut rng), opts).unwrap().summands {
            let BlockMembership::Single(i) = block_of(&bs, &s.module) else {
                return Err(TestCaseError::fail("indecomposable in no single block"));
            };
            let v = vertex(&s.module, opts).unwrap();
            prop_assert!(g.whole().subconjugator(&v, &bs[i].defect).is_some());
        }
    }

    #[test]
    fn reports_are_byte_deterministic(seed in 0u64..1000) {
        let cfg = SuiteConfig { seed, ..SuiteConfig::default() };
        prop_assert_eq!(run_suite("idem", &cfg).unwrap().to_json(), run_suite("idem", &cfg).unwrap().to_json());
    }
}

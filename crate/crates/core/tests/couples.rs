mod common;

use std::collections::BTreeMap;

use vanishing::complexes::GradedComplex;
use vanishing::couples::{
    couple_from_tower, derived_couple, e_infinity, oracle_page, page, pages, Bidegree, CoupleMap,
};
use vanishing::flinalg::FpMatrix;
use vanishing::towers::{random_tower, RandomParams, Tower};
use vanishing::Error;

use common::{sphere_tower, t1};

fn dims(entries: &[((i32, i32), usize)]) -> BTreeMap<Bidegree, usize> {
    entries.iter().map(|&((s, t), d)| (Bidegree::new(s, t), d)).collect()
}

#[test]
fn level_one_couples() {
    let zero = couple_from_tower(&Tower::zero(3));
    assert!(zero.is_empty());

    let sphere = couple_from_tower(&sphere_tower(2));
    assert_eq!(sphere.e_module().entries(), &dims(&[((0, 0), 1)]));
    assert_eq!(sphere.d_dim(Bidegree::new(0, 0)), 1);
    assert_eq!(sphere.d_dim(Bidegree::new(1, 1)), 0);

    let c = couple_from_tower(&t1());
    assert_eq!(c.e_module().entries(), &dims(&[((0, 1), 1), ((1, 1), 1)]));
    assert_eq!(c.d_dim(Bidegree::new(1, 1)), 1);
    for t in -3..4 {
        assert_eq!(c.d_dim(Bidegree::new(0, t)), 0);
    }
    assert!(c.verify_les().is_exact());
}

#[test]
fn t1_pages() {
    let e1 = page(&t1(), 1).unwrap();
    assert_eq!(e1.module.entries(), &dims(&[((0, 1), 1), ((1, 1), 1)]));
    assert_eq!(e1.differential_rank(), 1);
    assert_eq!(e1.differential(Bidegree::new(0, 1)).rank(), 1);
    assert!(page(&t1(), 2).unwrap().module.is_empty());
    assert!(oracle_page(&t1(), 2).unwrap().is_empty());
    let derived = couple_from_tower(&t1()).derive().unwrap();
    assert!(derived.e_module().is_empty());
}

#[test]
fn sphere_is_a_permanent_cycle() {
    for r in 1..6 {
        let e = page(&sphere_tower(2), r).unwrap();
        assert_eq!(e.module.entries(), &dims(&[((0, 0), 1)]));
        assert_eq!(e.r, r);
    }
    let (einf, report) = e_infinity(&sphere_tower(2)).unwrap();
    assert_eq!(einf.entries(), &dims(&[((0, 0), 1)]));
    assert!(report.converges);
    let (einf, report) = e_infinity(&t1()).unwrap();
    assert!(einf.is_empty());
    assert!(report.converges);
}

#[test]
fn bad_page_index() {
    assert_eq!(page(&t1(), 0).unwrap_err(), Error::BadPage(0));
    assert_eq!(oracle_page(&t1(), -1).unwrap_err(), Error::BadPage(-1));
}

#[test]
fn stable_couple_keeps_e() {
    // a constant tower already has injective i
    let c = GradedComplex::sphere(3, 1)
        .direct_sum(&GradedComplex::sphere(3, 4))
        .unwrap();
    let couple = couple_from_tower(&Tower::constant(&c));
    let derived = couple.derive().unwrap();
    assert_eq!(couple.e_module(), derived.e_module());
    let empty = couple_from_tower(&Tower::zero(2)).derive().unwrap();
    assert!(empty.is_empty());
}

#[test]
fn corrupted_map_is_reported() {
    let c = couple_from_tower(&t1());
    let b = Bidegree::new(1, 1);
    let zero = FpMatrix::zeros(2, 0, 1);
    // k out of E^{1,1} lands in D^{2,1} = 0, so corrupt j into E^{1,1} instead
    assert!(c.with_map(CoupleMap::K, b, zero).is_ok());
    let broken = c.with_map(CoupleMap::J, b, FpMatrix::zeros(2, 1, 1)).unwrap();
    let report = broken.verify_les();
    assert!(!report.is_exact());
    assert!(report.failures.iter().any(|f| f.bidegree == b));
    assert!(matches!(broken.derive(), Err(Error::NotExact { .. })));
}

#[test]
fn random_corpus_matches_oracle() {
    for p in [2, 3] {
        let params = RandomParams {
            p,
            max_generators: 20,
            ..RandomParams::default()
        };
        for seed in 0..20 {
            let tower = random_tower(seed, &params).unwrap();
            let rmax = tower.top() + 2;
            for (k, e) in pages(&tower, rmax).unwrap().iter().enumerate() {
                let r = k as i32 + 1;
                assert_eq!(e.module, oracle_page(&tower, r).unwrap(), "p={p} seed={seed} r={r}");
                for (&b, d) in &e.differentials {
                    let next = e.differential(e.differential_target(b));
                    assert!(next.compose(d).unwrap().is_zero(), "d∘d at {b}");
                }
            }
            for r in 1..=rmax + 1 {
                assert!(derived_couple(&tower, r).unwrap().verify_les().is_exact());
            }
            assert!(e_infinity(&tower).unwrap().1.converges, "p={p} seed={seed}");
        }
    }
}

use std::collections::BTreeMap;

use multischeme::atlas::{vf_zero, Atlas, DoubleSchemeSpec, VectorFieldCocycle};
use multischeme::blowup::{blowup_hypersurface, line_x0};
use multischeme::catalog::{carpet, make_p2, p2_atlas, w_atlas, w_bundle};
use multischeme::cohomology::{
    canonical_class, class_is_zero, contract_cup, h2_residue, iso_decide, BoundedSpace, SectionKind, SmoothChart,
    TwoCocycle,
};
use multischeme::laurent::{int, rat, LaurentPoly, Rational};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `δc` for a random cochain of regular top forms with small coefficients.
fn random_coboundary(atlas: &Atlas, rng: &mut ChaCha8Rng) -> TwoCocycle {
    let mut c = BTreeMap::new();
    for (i, j) in atlas.pairs() {
        let chart = SmoothChart::new(atlas.ring(i, j)).unwrap();
        let space = BoundedSpace::new(&chart, SectionKind::TopForms, 2);
        let mut f = LaurentPoly::zero(atlas.nvars());
        for b in &space.basis {
            if rng.gen_bool(0.3) {
                f = &f + &b[0].scale(&int(rng.gen_range(-4..=4)));
            }
        }
        c.insert((i, j), f);
    }
    TwoCocycle::coboundary_of(atlas, &c)
}

fn cup_with(s: &DoubleSchemeSpec, m: i64, p: i64) -> TwoCocycle {
    let alpha = s.full_alpha().unwrap();
    let sigma = s.full_d().unwrap();
    let omega = canonical_class(&s.atlas, &w_bundle(m, p)).unwrap().full(&s.atlas).unwrap();
    contract_cup(&s.atlas, &alpha, &sigma, &omega).unwrap()
}

#[test]
fn residue_detects_a_nonregular_cochain() {
    let atlas = p2_atlas();
    let c = BTreeMap::from([((0, 1), LaurentPoly::x(&[-1, -1]))]);
    assert_ne!(h2_residue(&atlas, &TwoCocycle::coboundary_of(&atlas, &c)).unwrap(), int(0));
}

#[test]
fn cup_products_are_cocycles() {
    for a in [int(0), rat(1, 2), int(3)] {
        let s = carpet(&a, true);
        for (m, p) in [(1, 0), (0, 1), (-3, 1), (2, -1)] {
            assert!(cup_with(&s, m, p).is_cocycle(&s.atlas));
        }
    }
}

#[test]
fn residue_is_linear() {
    let s = carpet(&rat(1, 3), true);
    let (a, b) = (cup_with(&s, 1, 0), cup_with(&s, 0, -1));
    let k = rat(-5, 2);
    let lhs = h2_residue(&s.atlas, &a.add(&b.scaled(&k))).unwrap();
    let rhs = h2_residue(&s.atlas, &a).unwrap() + &k * h2_residue(&s.atlas, &b).unwrap();
    assert_eq!(lhs, rhs);
}

fn scaled(s: &DoubleSchemeSpec, c: &Rational) -> DoubleSchemeSpec {
    DoubleSchemeSpec::new(s.atlas.clone(), s.alpha.clone(), s.d.scaled(c))
}

#[test]
fn iso_decide_is_reflexive() {
    for s in [make_p2(-3, true).unwrap(), carpet(&int(0), true), carpet(&rat(1, 2), true)] {
        let (tau, t) = iso_decide(&s, &s, 6).unwrap().expect("reflexive");
        assert_eq!(tau, int(1));
        assert!(t.iter().all(|v| v.iter().all(|c| c.is_zero())));
    }
}

#[test]
fn iso_decide_is_symmetric() {
    for s in [make_p2(-3, true).unwrap(), carpet(&rat(1, 2), true)] {
        for c in [int(2), rat(-1, 3)] {
            let other = scaled(&s, &c);
            let (tau, _) = iso_decide(&s, &other, 6).unwrap().expect("scaled class");
            let (back, _) = iso_decide(&other, &s, 6).unwrap().expect("scaled class");
            assert_eq!(tau, c);
            assert_eq!(back, int(1) / tau);
        }
    }
}

#[test]
fn coboundary_search_is_monotone() {
    let s = blowup_hypersurface(&make_p2(-3, true).unwrap().to_multiple().unwrap(), &line_x0())
        .unwrap()
        .to_double()
        .unwrap();
    let first = (0..=10).find(|&d| class_is_zero(&s, d).unwrap()).expect("coboundary");
    for d in first..=first + 3 {
        assert!(class_is_zero(&s, d).unwrap());
    }
    let x = make_p2(-3, true).unwrap();
    assert!((0..=8).all(|d| !class_is_zero(&x, d).unwrap()));
}

/// `T_i − α_ij T_j` for a random bounded 0-cochain `T` of vector fields is found at its bound.
#[test]
fn random_coboundaries_are_found() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let s = make_p2(-3, false).unwrap();
    let alpha = s.full_alpha().unwrap();
    for _ in 0..5 {
        let t: Vec<Vec<LaurentPoly>> = (0..s.atlas.len())
            .map(|i| {
                let chart = SmoothChart::new(&s.atlas.charts()[i].ring).unwrap();
                let space = BoundedSpace::new(&chart, SectionKind::VectorFields, 1);
                let mut v = vf_zero(2);
                for b in &space.basis {
                    if rng.gen_bool(0.3) {
                        let k = int(rng.gen_range(-3..=3));
                        v = v.iter().zip(b).map(|(x, y)| x + &y.scale(&k)).collect();
                    }
                }
                v
            })
            .collect();
        let d = s
            .atlas
            .pairs()
            .into_iter()
            .map(|(i, j)| {
                let v = t[i].iter().zip(&t[j]).map(|(a, b)| a - &(&alpha[i][j] * b)).collect();
                ((i, j), v)
            })
            .collect();
        let spec = DoubleSchemeSpec::new(s.atlas.clone(), s.alpha.clone(), VectorFieldCocycle::new(d));
        assert!(spec.validate().valid);
        for bound in 1..=3 {
            assert!(class_is_zero(&spec, bound).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn residue_kills_coboundaries(seed in any::<u64>(), on_w in any::<bool>()) {
        let atlas = if on_w { w_atlas() } else { p2_atlas() };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(h2_residue(&atlas, &random_coboundary(&atlas, &mut rng)).unwrap(), int(0));
    }
}

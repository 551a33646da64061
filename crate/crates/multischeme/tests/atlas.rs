use std::collections::BTreeMap;

use multischeme::atlas::{double_transition, Atlas, DoubleSchemeSpec, MultCocycle, VectorFieldCocycle};
use multischeme::catalog::{carpet, make_blown_plane, make_p2, p2_atlas, p2_bundle, w_atlas, w_bundle, FamilyParams};
use multischeme::laurent::{int, rat, LaurentPoly, Rational};
use multischeme::truncated::TruncElement;
use proptest::prelude::*;

fn catalog() -> Vec<DoubleSchemeSpec> {
    let mut out = vec![make_p2(-3, true).unwrap()];
    for m in -3..=3 {
        out.push(make_p2(m, false).unwrap());
        for p in 0..=2 {
            let params = match p {
                0 => FamilyParams::p0(int(2), int(-1), false),
                1 => FamilyParams::carpet(rat(1, 3), false),
                _ => FamilyParams::default(),
            };
            out.push(make_blown_plane(m, p, &params).unwrap());
        }
    }
    for a in [int(0), rat(1, 2), int(-1)] {
        out.push(carpet(&a, true));
        out.push(make_blown_plane(-3, 0, &FamilyParams::p0(a.clone(), int(3), true)).unwrap());
    }
    out
}

#[test]
fn catalog_specs_validate() {
    for s in catalog() {
        let report = s.validate();
        assert!(report.valid, "{:?}", report);
        assert!(s.to_multiple().unwrap().validate().valid);
    }
}

/// Transitions built pair by pair compose on every triple, checked on variables and `t`.
#[test]
fn transitions_compose_on_triples() {
    for s in catalog() {
        let alpha = s.full_alpha().unwrap();
        let d = s.full_d().unwrap();
        let theta = |i: usize, j: usize| double_transition(&d[i][j], &alpha[i][j]);
        let nvars = s.nvars();
        for (i, j, k) in s.atlas.triples() {
            let (ij, jk, ik) = (theta(i, j), theta(j, k), theta(i, k));
            let mut probes: Vec<TruncElement> = (0..nvars)
                .map(|v| TruncElement::from_poly(2, LaurentPoly::var(nvars, v).unwrap()))
                .collect();
            probes.push(TruncElement::t(2, nvars));
            for u in probes {
                assert_eq!(ij.apply(&jk.apply(&u).unwrap()).unwrap(), ik.apply(&u).unwrap());
            }
        }
    }
}

/// Derived entries follow `σ_ji = −α_ji σ_ij`.
#[test]
fn skew_convention() {
    for s in catalog() {
        let alpha = s.full_alpha().unwrap();
        let d = s.full_d().unwrap();
        for (i, j) in s.atlas.pairs() {
            let expected: Vec<LaurentPoly> = d[i][j].iter().map(|c| -&(&alpha[j][i] * c)).collect();
            assert_eq!(d[j][i], expected);
        }
    }
}

fn lambda() -> LaurentPoly {
    LaurentPoly::x(&[1, 0])
}

fn mu() -> LaurentPoly {
    LaurentPoly::x(&[0, 1])
}

/// The carpet data with `E23 = s·(α/λ) ∂/∂μ` on the tree `01, 12, 23`.
fn carpet_on_tree(a: &Rational, sign: i64) -> DoubleSchemeSpec {
    let zero = LaurentPoly::zero(2);
    let e01 = vec![zero.clone(), -&LaurentPoly::x(&[2, 2])];
    let e12 = vec![mu().scale(&(int(1) - a)), zero.clone()];
    let e23 = vec![zero, lambda().inverse().unwrap().scale(&(a * int(sign)))];
    let d = VectorFieldCocycle::new(BTreeMap::from([((0, 1), e01), ((1, 2), e12), ((2, 3), e23)]));
    DoubleSchemeSpec::new(w_atlas(), w_bundle(-3, 1), d)
}

#[test]
fn printed_carpet_sign_is_rejected() {
    for a in [int(1), rat(1, 2), int(-2)] {
        assert!(!carpet_on_tree(&a, -1).validate().valid, "alpha = {a}");
        let fixed = carpet_on_tree(&a, 1);
        assert!(fixed.validate().valid);
        assert_eq!(fixed.full_d().unwrap(), carpet(&a, true).full_d().unwrap());
    }
    assert!(carpet_on_tree(&int(0), -1).validate().valid);
}

/// All pairs of a bundle, some entries multiplied by a monomial.
fn perturbed(on_w: bool, exps: &[(i64, i64)], coeffs: &[i64]) -> (MultCocycle, Atlas) {
    let (atlas, base) = if on_w {
        (w_atlas(), w_bundle(exps[0].0, exps[0].1))
    } else {
        (p2_atlas(), p2_bundle(exps[0].0))
    };
    let full = base.full(&atlas).unwrap();
    let mut data = BTreeMap::new();
    for (k, (i, j)) in atlas.pairs().into_iter().enumerate() {
        let (a, b) = exps[(k + 1) % exps.len()];
        let c = coeffs[k % coeffs.len()];
        let v = &full[i][j];
        let entry = if c == 1 { v.clone() } else { v * &LaurentPoly::monomial(int(c), vec![a, b]) };
        data.insert((i, j), entry);
    }
    (MultCocycle::new("c", data), atlas)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn validation_agrees_with_the_dual(
        on_w in any::<bool>(),
        exps in prop::collection::vec((-3i64..=3, -3i64..=3), 2..5),
        coeffs in prop::collection::vec(prop::sample::select(vec![1i64, 1, 1, 1, 2, -1]), 1..7),
    ) {
        let (c, atlas) = perturbed(on_w, &exps, &coeffs);
        prop_assert_eq!(c.validate(&atlas).valid, c.dual().unwrap().validate(&atlas).valid);
    }
}

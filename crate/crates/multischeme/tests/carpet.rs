use multischeme::catalog::{
    carpet, carpet_decompose, carpet_obstruction, f_mn, solve_pullback_family, w_atlas, w_bundle,
};
use multischeme::cohomology::{
    canonical_class, contract_cup, h2_residue, sharp_cocycle,
};
use multischeme::laurent::{int, rat, Rational};

fn pairing(a: (i64, i64), b: (i64, i64)) -> Rational {
    let atlas = w_atlas();
    let omega = w_bundle(-3, 1).full(&atlas).unwrap();
    let ca = canonical_class(&atlas, &w_bundle(a.0, a.1)).unwrap().full(&atlas).unwrap();
    let cb = canonical_class(&atlas, &w_bundle(b.0, b.1)).unwrap().full(&atlas).unwrap();
    let sharp = sharp_cocycle(&atlas, &omega, &ca).unwrap();
    h2_residue(&atlas, &contract_cup(&atlas, &omega, &sharp, &cb).unwrap()).unwrap()
}

#[test]
fn pairing_matrix() {
    assert_eq!(pairing((1, 0), (1, 0)), int(1));
    assert_eq!(pairing((0, -1), (0, -1)), int(-1));
    assert_eq!(pairing((1, 0), (0, -1)), int(0));
    assert_eq!(pairing((0, -1), (1, 0)), int(0));
}

#[test]
fn decomposition_values() {
    for a in [int(0), int(1), rat(1, 2), int(-2)] {
        let d = carpet_decompose(&a, 6).unwrap();
        assert_eq!((d.u, d.v), (int(1), a));
    }
}

#[test]
fn obstruction_formula() {
    for a in [int(0), rat(1, 2), int(2)] {
        for m in -3..=3 {
            for n in -3..=3 {
                assert_eq!(carpet_obstruction(&a, m, n).unwrap(), int(m) - int(n) * &a);
            }
        }
    }
}

#[test]
fn carpets_validate_and_twist_by_f_minus_three_minus_one() {
    let atlas = w_atlas();
    for a in [int(0), rat(1, 2), int(-1)] {
        let s = carpet(&a, true);
        assert!(s.validate().valid);
        assert!(s.alpha.equivalent(&f_mn(-3, -1), &atlas).unwrap());
    }
}

#[test]
fn family_dimensions() {
    for (p, dim) in [(0, 2), (1, 1), (2, 0)] {
        let f = solve_pullback_family(-3, p, 4).unwrap();
        assert_eq!(f.parameter_dim, dim);
    }
}

//! The projective plane, its blow-up at `P = (0:0:1)` and the double
//! structures on them, in the coordinates `λ = x0/x1`, `μ = x1/x2`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::atlas::{
    apply_to_monomial, vf_add, vf_scale, vf_sub, vf_zero, Atlas, Chart, DoubleSchemeSpec, MultCocycle,
    VectorField, VectorFieldCocycle,
};
use crate::cohomology::{
    canonical_class, contract_cocycle, decompose, extension_obstruction, Calibration, SectionKind,
};
use crate::error::{Error, Result};
use crate::laurent::{int, ExponentMonoid, LaurentPoly, Rational};
use crate::linalg::LinearSystem;

pub fn variables() -> Vec<String> {
    vec!["lambda".to_string(), "mu".to_string()]
}

fn monoid(gens: &[[i64; 2]]) -> ExponentMonoid {
    ExponentMonoid::new(gens.iter().map(|g| g.to_vec()).collect()).expect("valid generators")
}

fn full2() -> ExponentMonoid {
    ExponentMonoid::full(2)
}

fn x(e: [i64; 2]) -> LaurentPoly {
    LaurentPoly::x(&e)
}

/// Exponent of `x_a` in `(λ, μ)`: `x0 ↦ λμ`, `x1 ↦ μ`, `x2 ↦ 1`.
fn homogeneous_exponent(a: usize) -> [i64; 2] {
    [[1, 1], [0, 1], [0, 0]][a]
}

fn ratio(a: usize, b: usize) -> [i64; 2] {
    let (ea, eb) = (homogeneous_exponent(a), homogeneous_exponent(b));
    [ea[0] - eb[0], ea[1] - eb[1]]
}

pub fn u_ring(i: usize) -> ExponentMonoid {
    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
    monoid(&[ratio(j, i), ratio(k, i)])
}

pub fn p2_atlas() -> Atlas {
    let charts = (0..3)
        .map(|i| Chart {
            name: format!("U{i}"),
            ring: u_ring(i),
        })
        .collect();
    let overlaps = BTreeMap::from([
        ((0, 1), monoid(&[[1, 0], [-1, 0], [0, -1]])),
        ((0, 2), monoid(&[[0, 1], [1, 1], [-1, -1]])),
        ((1, 2), monoid(&[[1, 0], [0, 1], [0, -1]])),
    ]);
    Atlas::new(variables(), charts, overlaps).expect("P2 cover")
}

pub fn w_atlas() -> Atlas {
    let charts = vec![
        Chart {
            name: "W0".into(),
            ring: u_ring(0),
        },
        Chart {
            name: "W1".into(),
            ring: u_ring(1),
        },
        Chart {
            name: "W2".into(),
            ring: monoid(&[[1, 0], [0, 1]]),
        },
        Chart {
            name: "W3".into(),
            ring: monoid(&[[-1, 0], [1, 1]]),
        },
    ];
    let overlaps = BTreeMap::from([
        ((0, 1), monoid(&[[1, 0], [-1, 0], [0, -1]])),
        ((0, 2), full2()),
        ((0, 3), monoid(&[[-1, 0], [1, 1], [-1, -1]])),
        ((1, 2), monoid(&[[1, 0], [0, 1], [0, -1]])),
        ((1, 3), full2()),
        ((2, 3), monoid(&[[1, 0], [-1, 0], [0, 1]])),
    ]);
    Atlas::new(variables(), charts, overlaps).expect("blown-up plane cover")
}

/// `O(m)` on the P² cover.
pub fn p2_bundle(m: i64) -> MultCocycle {
    MultCocycle::new(
        format!("O({m})"),
        BTreeMap::from([((0, 1), x([-m, 0])), ((1, 2), x([0, -m]))]),
    )
}

/// `π*O(m) ⊗ O(pP̃)` on the W cover, on all six pairs.
pub fn w_bundle(m: i64, p: i64) -> MultCocycle {
    MultCocycle::new(
        format!("F({m},{p})"),
        BTreeMap::from([
            ((0, 1), x([-m, 0])),
            ((0, 2), x([-m, -p - m])),
            ((0, 3), x([-p - m, -p - m])),
            ((1, 2), x([0, -p - m])),
            ((1, 3), x([-p, -p - m])),
            ((2, 3), x([-p, 0])),
        ]),
    )
}

/// `F_mn = π*O(m) ⊗ O(−nP̃)`.
pub fn f_mn(m: i64, n: i64) -> MultCocycle {
    w_bundle(m, -n)
}

/// `(x_i/x_{i+1}) ∂/∂(x_{i+2}/x_i)` written in `(λ, μ)`.
pub fn x_derivation(i: usize) -> VectorField {
    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
    let g = [ratio(j, i), ratio(k, i)];
    let d = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    // (G^{-1})_{v,1} for the second coordinate.
    let inv_col = [-g[0][1] * d, g[0][0] * d];
    let scale = ratio(i, j);
    (0..2)
        .map(|v| {
            let mut e = [-g[1][0], -g[1][1]];
            e[v] += 1;
            e[0] += scale[0];
            e[1] += scale[1];
            x(e).scale(&int(inv_col[v]))
        })
        .collect()
}

pub fn make_p2(m: i64, nontrivial: bool) -> Result<DoubleSchemeSpec> {
    if nontrivial && m != -3 {
        return Err(Error::Invalid(format!(
            "the nontrivial double plane has associated bundle O(-3), not O({m})"
        )));
    }
    let atlas = p2_atlas();
    let d = if nontrivial {
        VectorFieldCocycle::new(BTreeMap::from([((0, 1), x_derivation(0)), ((1, 2), x_derivation(1))]))
    } else {
        VectorFieldCocycle::new(BTreeMap::from([((0, 1), vf_zero(2)), ((1, 2), vf_zero(2))]))
    };
    Ok(DoubleSchemeSpec::new(atlas, p2_bundle(m), d))
}

/// Parameters of the normal form: `R(λ) = Σ r_k λ^k`, `S(1/λ) = Σ s_k λ^{-k}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyParams {
    pub base_nontrivial: bool,
    pub c0: Rational,
    pub r: Vec<Rational>,
    pub s: Vec<Rational>,
}

impl FamilyParams {
    pub fn carpet(alpha: Rational, base_nontrivial: bool) -> Self {
        FamilyParams {
            base_nontrivial,
            c0: alpha.clone(),
            r: vec![alpha],
            s: vec![],
        }
    }

    /// The `p = 0` member with `R = R₀ + c₀λ`, `S = −R₀`.
    pub fn p0(c0: Rational, r0: Rational, base_nontrivial: bool) -> Self {
        FamilyParams {
            base_nontrivial,
            c0: c0.clone(),
            r: vec![r0.clone(), c0],
            s: vec![-r0],
        }
    }
}

fn poly_in_lambda(coeffs: &[Rational], sign: i64) -> LaurentPoly {
    LaurentPoly::from_terms(
        2,
        coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (c.clone(), vec![sign * k as i64, 0])),
    )
    .expect("two variables")
}

fn pullback_field(nontrivial: bool) -> VectorField {
    if nontrivial {
        vec![x([0, 1]), LaurentPoly::zero(2)]
    } else {
        vf_zero(2)
    }
}

/// `(E01, E12, E13)` of the normal form.
pub fn family_fields(m: i64, p: i64, params: &FamilyParams) -> (VectorField, VectorField, VectorField) {
    let beta = w_bundle(m, p).data;
    let b12 = &beta[&(1, 2)];
    let b13 = &beta[&(1, 3)];
    let base = pullback_field(params.base_nontrivial);
    let e01 = if params.base_nontrivial {
        x_derivation(0)
    } else {
        vf_zero(2)
    };
    let inv_mu = x([0, -1]);
    let r = poly_in_lambda(&params.r, 1);
    let s = poly_in_lambda(&params.s, -1);
    let c0 = LaurentPoly::constant(2, params.c0.clone());
    let e12 = vec![&base[0] - &(&(b12 * &inv_mu) * &r), LaurentPoly::zero(2)];
    let inner = &(&x([1, 0]) * &c0).scale(&int(-1)) + &s;
    let e13 = vec![&base[0] + &(&(b13 * &inv_mu) * &inner), b13 * &c0];
    (e01, e12, e13)
}

pub fn make_blown_plane(m: i64, p: i64, params: &FamilyParams) -> Result<DoubleSchemeSpec> {
    if p < 0 {
        return Err(Error::Invalid(format!("p must be non-negative, got {p}")));
    }
    if params.base_nontrivial && m != -3 {
        return Err(Error::Invalid(format!(
            "structures over the nontrivial double plane need m = -3, got {m}"
        )));
    }
    let (e01, e12, e13) = family_fields(m, p, params);
    let d = VectorFieldCocycle::new(BTreeMap::from([((0, 1), e01), ((1, 2), e12), ((1, 3), e13)]));
    Ok(DoubleSchemeSpec::new(w_atlas(), w_bundle(m, p), d))
}

/// `X̃₁,α` (or `Ỹ₁,α` on the trivial base): associated bundle `ω`, `c₀ = α`.
pub fn carpet(alpha: &Rational, base_nontrivial: bool) -> DoubleSchemeSpec {
    make_blown_plane(-3, 1, &FamilyParams::carpet(alpha.clone(), base_nontrivial)).expect("carpet")
}

/// Residue normalization: `∇₀(O(1))² = 1` on either cover.
pub fn calibration_for(atlas: &Atlas) -> Result<Calibration> {
    let (alpha, h) = if atlas.same_geometry(&w_atlas()) {
        (w_bundle(-3, 1), w_bundle(1, 0))
    } else if atlas.same_geometry(&p2_atlas()) {
        (p2_bundle(-3), p2_bundle(1))
    } else {
        return Err(Error::Unsupported(
            "the residue is defined on the P2 cover and the blown-up plane cover".into(),
        ));
    };
    Ok(Calibration {
        alpha: alpha.full(atlas)?,
        class: canonical_class(atlas, &h)?.full(atlas)?,
        value: Rational::one(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CarpetDecomposition {
    #[serde(with = "crate::laurent::rational_string")]
    pub u: Rational,
    #[serde(with = "crate::laurent::rational_string")]
    pub v: Rational,
    pub bound: i64,
    pub witness: BTreeMap<String, Vec<LaurentPoly>>,
}

/// `(c_u, c_v)` with `σ_α = c_u ∇₀(π*O(1)) + c_v ∇₀(O(−P̃))` up to a verified coboundary.
pub fn carpet_decompose(alpha: &Rational, bound: i64) -> Result<CarpetDecomposition> {
    let spec = carpet(alpha, true);
    let atlas = &spec.atlas;
    let twist = spec.full_alpha()?;
    let sigma = contract_cocycle(atlas, &twist, &spec.full_d()?)?;
    let u = canonical_class(atlas, &w_bundle(1, 0))?.full(atlas)?;
    let v = canonical_class(atlas, &w_bundle(0, -1))?.full(atlas)?;
    let ones = crate::cohomology::trivial_table(atlas);
    let found = decompose(atlas, &ones, &sigma, &[&u, &v], SectionKind::OneForms, bound)?
        .ok_or_else(|| Error::Validation(format!("no decomposition within bound {bound}")))?;
    if !found.determined {
        return Err(Error::Validation("decomposition coefficients are not unique".into()));
    }
    Ok(CarpetDecomposition {
        u: found.coefficients[0].clone(),
        v: found.coefficients[1].clone(),
        bound,
        witness: found
            .cochain
            .iter()
            .enumerate()
            .map(|(i, c)| (atlas.name(i).to_string(), c.clone()))
            .collect(),
    })
}

/// `σ_α·∇₀(F_mn)` for the carpet over the nontrivial plane.
pub fn carpet_obstruction(alpha: &Rational, m: i64, n: i64) -> Result<Rational> {
    extension_obstruction(&carpet(alpha, true), &f_mn(m, n))
}

/// `σ_α·∇₀(F_mn) = a + b·α` as a polynomial in a free `α`, returned as `(a, b)`.
pub fn symbolic_obstruction(m: i64, n: i64) -> Result<(Rational, Rational)> {
    let at0 = carpet_obstruction(&Rational::zero(), m, n)?;
    let at1 = carpet_obstruction(&Rational::one(), m, n)?;
    Ok((at0.clone(), at1 - at0))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Quasiprojective {
    Yes { m: i64, n: i64 },
    No,
}

/// Reduced `α = a/b` with `b > 0`.
fn reduced(alpha: &Rational) -> Result<(i64, i64)> {
    let to_i64 = |v: &num_bigint::BigInt| {
        i64::try_from(v).map_err(|_| Error::Unsupported("rational out of machine range".into()))
    };
    Ok((to_i64(alpha.numer())?, to_i64(alpha.denom())?))
}

/// Some ample `F_mn` extends iff `m − nα = 0` has a solution with `m, n > 0`.
/// `None` stands for a free symbolic `α`.
pub fn quasiprojective(alpha: Option<&Rational>) -> Result<Quasiprojective> {
    let Some(alpha) = alpha else {
        // m − nα vanishes identically only at m = n = 0.
        for (m, n) in [(1, 1), (1, 0), (0, 1)] {
            let (a, b) = symbolic_obstruction(m, n)?;
            if a.is_zero() && b.is_zero() {
                return Err(Error::Validation(format!("F({m},{n}) extends for every alpha")));
            }
        }
        return Ok(Quasiprojective::No);
    };
    if !alpha.is_positive() {
        return Ok(Quasiprojective::No);
    }
    let (m, n) = reduced(alpha)?;
    if !carpet_obstruction(alpha, m, n)?.is_zero() {
        return Err(Error::Validation(format!("witness ({m},{n}) does not extend")));
    }
    Ok(Quasiprojective::Yes { m, n })
}

/// Generator of `{(m, n) : m − nα = 0}` with `n > 0`.
pub fn extension_lattice(alpha: &Rational) -> Result<(i64, i64)> {
    reduced(alpha)
}

/// `Σ_k p_k·field_k + field_0`, one vector field per column (column 0 is the constant).
type AffineField = Vec<VectorField>;

fn affine_scale(a: &AffineField, f: &LaurentPoly) -> AffineField {
    a.iter().map(|v| vf_scale(v, f)).collect()
}

fn affine_add(a: &AffineField, b: &AffineField) -> AffineField {
    a.iter().zip(b).map(|(x, y)| vf_add(x, y)).collect()
}

fn affine_sub(a: &AffineField, b: &AffineField) -> AffineField {
    a.iter().zip(b).map(|(x, y)| vf_sub(x, y)).collect()
}

/// Equations forcing `X(x^g) ∈ target` for every `g` in `sources`.
fn add_membership(
    system: &mut LinearSystem,
    field: &AffineField,
    sources: &[Vec<i64>],
    target: &ExponentMonoid,
) {
    for g in sources {
        let images: Vec<LaurentPoly> = field.iter().map(|v| apply_to_monomial(v, g)).collect();
        let mut rows: BTreeMap<Vec<i64>, Vec<(usize, Rational)>> = BTreeMap::new();
        for (col, img) in images.iter().enumerate() {
            for (e, c) in img.terms() {
                if !target.contains(e) {
                    rows.entry(e.clone()).or_default().push((col, c.clone()));
                }
            }
        }
        for row in rows.values() {
            let mut rhs = Rational::zero();
            let mut terms = Vec::new();
            for (col, c) in row {
                if *col == 0 {
                    rhs -= c;
                } else {
                    terms.push((col - 1, c.clone()));
                }
            }
            system.add_equation(&terms, &rhs);
        }
    }
}

/// Membership constraints of the blown-up plane on tree data `(E01, E12, E13)`: every
/// derived `E_ij` preserves its overlap ring, and the comparison fields
/// `γ_k = β_{1k}^{-1}(D_X − E_1k)` send the generators of `U2` into `W_k`.
fn pullback_constraints(
    system: &mut LinearSystem,
    m: i64,
    p: i64,
    nontrivial: bool,
    e01: &AffineField,
    e12: &AffineField,
    e13: &AffineField,
) -> Result<()> {
    let atlas = w_atlas();
    let beta = w_bundle(m, p).full(&atlas)?;
    let ncols = e12.len();
    let mut base = vec![vf_zero(2); ncols];
    base[0] = pullback_field(nontrivial);
    let e02 = affine_add(e01, &affine_scale(e12, &beta[0][1]));
    let e03 = affine_add(e01, &affine_scale(e13, &beta[0][1]));
    let e23 = affine_scale(&affine_sub(e13, e12), &beta[2][1]);
    for (field, (i, j)) in [(e01, (0, 1)), (&e02, (0, 2)), (&e03, (0, 3)), (e12, (1, 2)), (e13, (1, 3)), (&e23, (2, 3))] {
        let ring = atlas.ring(i, j);
        add_membership(system, field, ring.generators(), ring);
    }
    let u2 = u_ring(2);
    for (k, e) in [(2usize, e12), (3usize, e13)] {
        let gamma = affine_scale(&affine_sub(&base, e), &beta[k][1]);
        add_membership(system, &gamma, u2.generators(), &atlas.charts()[k].ring);
    }
    Ok(())
}

fn theta_field(d: [i64; 2], coeffs: [i64; 2]) -> VectorField {
    (0..2)
        .map(|v| {
            let mut e = d;
            e[v] += 1;
            x(e).scale(&int(coeffs[v]))
        })
        .collect()
}

/// Dimension of regular vector fields `x^d(c_λ θ_λ + c_μ θ_μ)` on a chart.
fn gauge_dim(d: [i64; 2], ring: &ExponentMonoid) -> usize {
    let mut sys = LinearSystem::new(2);
    let field: AffineField = vec![vf_zero(2), theta_field(d, [1, 0]), theta_field(d, [0, 1])];
    add_membership(&mut sys, &field, ring.generators(), ring);
    2 - sys.rank()
}

/// `Σ_d (dim V_d − dim G_d)` over `|d|_∞ ≤ bound`, where `V_d` are the homogeneous
/// solutions `(ΔE12, ΔE13)` of θ-degree `d` and `G_d` the gauge fields from `W2`, `W3`.
pub fn graded_family_dimension(m: i64, p: i64, bound: i64) -> Result<usize> {
    let atlas = w_atlas();
    let beta = w_bundle(m, p);
    let exp = |k: (usize, usize)| beta.data[&k].as_monomial().expect("monomial").1.clone();
    let (b12, b13) = (exp((1, 2)), exp((1, 3)));
    let mut total = 0usize;
    for d0 in -bound..=bound {
        for d1 in -bound..=bound {
            let d = [d0, d1];
            let zero = vf_zero(2);
            let unit = |c: [i64; 2]| theta_field(d, c);
            let e12: AffineField = vec![zero.clone(), unit([1, 0]), unit([0, 1]), zero.clone(), zero.clone()];
            let e13: AffineField = vec![zero.clone(), zero.clone(), zero.clone(), unit([1, 0]), unit([0, 1])];
            let e01: AffineField = vec![zero; 5];
            let mut sys = LinearSystem::new(4);
            pullback_constraints(&mut sys, m, p, false, &e01, &e12, &e13)?;
            let v_dim = 4 - sys.rank();
            let g_dim = gauge_dim([d0 - b12[0], d1 - b12[1]], &atlas.charts()[2].ring)
                + gauge_dim([d0 - b13[0], d1 - b13[1]], &atlas.charts()[3].ring);
            if g_dim > v_dim {
                return Err(Error::Validation(format!("gauge exceeds solutions in degree {d:?}")));
            }
            total += v_dim - g_dim;
        }
    }
    Ok(total)
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyDescription {
    pub m: i64,
    pub p: i64,
    pub ansatz_bound: i64,
    pub parameter_dim: usize,
    pub graded_dim: usize,
    pub free_parameters: Vec<String>,
    pub relations: Vec<String>,
    pub vanishing: Vec<String>,
    pub normal_form: BTreeMap<String, String>,
}

fn format_linear(constant: &Rational, terms: &[(String, Rational)]) -> String {
    let mut parts = Vec::new();
    for (name, c) in terms {
        if c.is_zero() {
            continue;
        }
        let coeff = if c.is_one() {
            String::new()
        } else if *c == -Rational::one() {
            "-".to_string()
        } else {
            format!("{}*", crate::laurent::format_rational(c))
        };
        parts.push(format!("{coeff}{name}"));
    }
    if !constant.is_zero() || parts.is_empty() {
        parts.push(crate::laurent::format_rational(constant));
    }
    parts.join(" + ").replace("+ -", "- ")
}

fn format_affine(field: &AffineField, values: &[(Rational, Vec<(usize, Rational)>)], names: &[String]) -> String {
    let vars = variables();
    let nfree = names.len();
    let mut comps = Vec::new();
    for v in 0..2 {
        // Coefficient polynomial for the constant and for each free parameter.
        let mut polys = vec![field[0][v].clone()];
        polys.extend(std::iter::repeat_n(LaurentPoly::zero(2), nfree));
        for (col, (c, deps)) in values.iter().enumerate() {
            let f = &field[col + 1][v];
            if f.is_zero() {
                continue;
            }
            polys[0] = &polys[0] + &f.scale(c);
            for (k, coeff) in deps {
                polys[k + 1] = &polys[k + 1] + &f.scale(coeff);
            }
        }
        let mut parts = Vec::new();
        if !polys[0].is_zero() {
            parts.push(format!("({})", polys[0].display_with(&vars)));
        }
        for (k, name) in names.iter().enumerate() {
            if !polys[k + 1].is_zero() {
                parts.push(format!("({})*{name}", polys[k + 1].display_with(&vars)));
            }
        }
        if !parts.is_empty() {
            comps.push(format!("[{}]*d/d{}", parts.join(" + "), vars[v]));
        }
    }
    if comps.is_empty() {
        "0".to_string()
    } else {
        comps.join(" + ")
    }
}

/// Solves the pullback constraints on the named ansatz
/// `E12 = (δμ − (β12/μ)R(λ))∂λ`, `E13 = (δμ + (β13/μ)(−c₀λ + S(1/λ)))∂λ + β13c₀∂μ`
/// with `deg R, deg S ≤ ansatz_bound`, and cross-checks the dimension against the
/// graded count.
pub fn solve_pullback_family(m: i64, p: i64, ansatz_bound: i64) -> Result<FamilyDescription> {
    if p < 0 {
        return Err(Error::Invalid(format!("p must be non-negative, got {p}")));
    }
    let nontrivial = m == -3;
    let k = ansatz_bound.max(0) as usize;
    let mut names: Vec<String> = (0..=k).map(|i| format!("S_{i}")).collect();
    names.extend((1..=k).rev().map(|i| format!("R_{i}")));
    names.push("R_0".into());
    names.push("c_0".into());
    let ncols = names.len() + 1;
    let col_of = |name: &str| names.iter().position(|n| n == name).expect("named") + 1;
    let beta = w_bundle(m, p).data;
    let b12_mu = &beta[&(1, 2)] * &x([0, -1]);
    let b13_mu = &beta[&(1, 3)] * &x([0, -1]);
    let zero = vf_zero(2);
    let mut e01 = vec![zero.clone(); ncols];
    let mut e12 = vec![zero.clone(); ncols];
    let mut e13 = vec![zero.clone(); ncols];
    if nontrivial {
        e01[0] = x_derivation(0);
    }
    e12[0] = pullback_field(nontrivial);
    e13[0] = pullback_field(nontrivial);
    for i in 0..=k {
        let li = x([i as i64, 0]);
        e12[col_of(&format!("R_{i}"))] = vec![-&(&b12_mu * &li), LaurentPoly::zero(2)];
        let lmi = x([-(i as i64), 0]);
        e13[col_of(&format!("S_{i}"))] = vec![&b13_mu * &lmi, LaurentPoly::zero(2)];
    }
    e13[col_of("c_0")] = vec![-&(&b13_mu * &x([1, 0])), beta[&(1, 3)].clone()];
    let mut sys = LinearSystem::new(names.len());
    pullback_constraints(&mut sys, m, p, nontrivial, &e01, &e12, &e13)?;
    if !sys.is_consistent() {
        return Err(Error::Validation(format!("no structure with m = {m}, p = {p} in the ansatz")));
    }
    let free = sys.free_columns();
    let free_names: Vec<String> = free.iter().map(|&c| names[c].clone()).collect();
    let mut relations = Vec::new();
    let mut vanishing = Vec::new();
    let mut values: Vec<(Rational, Vec<(usize, Rational)>)> = Vec::with_capacity(names.len());
    for (col, name) in names.iter().enumerate() {
        if let Some((c, rest)) = sys.pivot_expression(col) {
            let deps: Vec<(usize, Rational)> = rest
                .iter()
                .map(|(k, v)| (free.iter().position(|f| f == k).expect("free column"), v.clone()))
                .collect();
            let named: Vec<(String, Rational)> = rest.iter().map(|(k, v)| (names[*k].clone(), v.clone())).collect();
            if c.is_zero() && rest.is_empty() {
                vanishing.push(name.clone());
            } else {
                relations.push(format!("{name} = {}", format_linear(&c, &named)));
            }
            values.push((c, deps));
        } else {
            let idx = free.iter().position(|f| *f == col).expect("free column");
            values.push((Rational::zero(), vec![(idx, Rational::one())]));
        }
    }
    let graded = graded_family_dimension(m, p, ansatz_bound)?;
    if graded != free.len() {
        return Err(Error::Validation(format!(
            "named ansatz has {} parameters but the graded count is {graded}",
            free.len()
        )));
    }
    let normal_form = BTreeMap::from([
        ("E01".to_string(), format_affine(&e01, &values, &free_names)),
        ("E12".to_string(), format_affine(&e12, &values, &free_names)),
        ("E13".to_string(), format_affine(&e13, &values, &free_names)),
    ]);
    Ok(FamilyDescription {
        m,
        p,
        ansatz_bound,
        parameter_dim: free.len(),
        graded_dim: graded,
        free_parameters: free_names,
        relations,
        vanishing,
        normal_form,
    })
}

/// Whether `c` is the `F(m,p)` cocycle on an atlas with the geometry of the W cover.
pub fn is_w_bundle(c: &MultCocycle, atlas: &Atlas, m: i64, p: i64) -> Result<bool> {
    Ok(atlas.same_geometry(&w_atlas()) && c.full(atlas)? == w_bundle(m, p).full(atlas)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_derivations_match_hand_values() {
        assert_eq!(x_derivation(0), vec![LaurentPoly::zero(2), x([2, 2]).scale(&int(-1))]);
        assert_eq!(x_derivation(1), vec![x([0, 1]), LaurentPoly::zero(2)]);
    }

    #[test]
    fn catalog_specs_validate() {
        assert!(make_p2(-3, true).unwrap().validate().valid);
        assert!(make_p2(2, false).unwrap().validate().valid);
        assert!(make_p2(0, true).is_err());
        let c = carpet(&Rational::new(1.into(), 2.into()), true);
        let report = c.validate();
        assert!(report.valid, "{:?}", report.failures);
    }

    #[test]
    fn lattice_generators() {
        assert_eq!(extension_lattice(&Rational::new(1.into(), 2.into())).unwrap(), (1, 2));
        assert_eq!(extension_lattice(&Rational::zero()).unwrap(), (0, 1));
        assert_eq!(extension_lattice(&int(2)).unwrap(), (2, 1));
    }
}

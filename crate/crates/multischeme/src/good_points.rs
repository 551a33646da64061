//! Good zero-dimensional subschemes `Z(a) = (y_k + a_k t)` supported at a point,
//! their invariant `Δ_P`, the evaluation image `H_{L,P}` on P², and the
//! decision of when two such blow-ups are isomorphic.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::atlas::DoubleSchemeSpec;
use crate::cohomology::SmoothChart;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Rational};
use crate::linalg::LinearSystem;
use crate::truncated::{RingMorphism, TruncElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodPoint {
    pub chart: String,
    pub coords: Vec<LaurentPoly>,
    pub coeffs: Vec<LaurentPoly>,
}

/// `Δ_P` in the reference basis `∂/∂y` at `P`, tensored with the fiber frame `frame`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaValue {
    #[serde(with = "rational_vec")]
    pub tangent: Vec<Rational>,
    pub basis: Vec<String>,
    pub frame: String,
}

mod rational_vec {
    use serde::Serializer;

    use crate::laurent::{format_rational, Rational};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }
}

/// Monomial coordinates of a chart with no invertible directions, ordered by degree.
fn reference_chart(spec_ring: &crate::laurent::ExponentMonoid) -> Result<SmoothChart> {
    let chart = SmoothChart::new(spec_ring)?;
    if chart.invertible().iter().any(|x| *x) {
        return Err(Error::Unsupported(
            "good points need a chart isomorphic to affine space".into(),
        ));
    }
    let mut basis = chart.basis().to_vec();
    basis.sort_by_key(|e| (e.iter().sum::<i64>(), e.clone()));
    SmoothChart::from_coordinates(basis)
}

impl GoodPoint {
    /// `Z(a_1, a_2)` at `P = (0:0:1)` on the P² chart `U2`, with `y = (μ, λμ)`.
    pub fn at_p(a1: LaurentPoly, a2: LaurentPoly) -> Self {
        GoodPoint {
            chart: "U2".into(),
            coords: vec![LaurentPoly::x(&[0, 1]), LaurentPoly::x(&[1, 1])],
            coeffs: vec![a1, a2],
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut p: GoodPoint = serde_json::from_str(text).map_err(|e| Error::Parse(format!("good point: {e}")))?;
        // The zero polynomial parses without a variable count.
        let n = p.coords.iter().chain(&p.coeffs).map(|y| y.nvars()).max().unwrap_or(0);
        for y in p.coords.iter_mut().chain(p.coeffs.iter_mut()) {
            *y = y.clone().with_nvars(n)?;
        }
        Ok(p)
    }

    /// Reference chart and Jacobian `J_ij = ∂y_i/∂(ref)_j` at `P`.
    fn frame(&self, spec: &DoubleSchemeSpec) -> Result<(SmoothChart, Vec<Vec<Rational>>)> {
        let i0 = spec.atlas.chart_index(&self.chart)?;
        let ring = &spec.atlas.charts()[i0].ring;
        let reference = reference_chart(ring)?;
        let d = reference.dim();
        if self.coords.len() != d || self.coeffs.len() != d {
            return Err(Error::Invalid(format!(
                "a good point on a {d}-dimensional chart needs {d} coordinates and coefficients"
            )));
        }
        let mut jac = vec![vec![Rational::zero(); d]; d];
        for (i, y) in self.coords.iter().chain(&self.coeffs).enumerate() {
            if !ring.contains_poly(y) {
                return Err(Error::OutsideRing(format!("{} on chart {}", y, self.chart)));
            }
            if i >= d {
                continue;
            }
            if !y.constant_term().is_zero() {
                return Err(Error::Invalid(format!("coordinate {y} does not vanish at P")));
            }
            for (e, c) in y.terms() {
                let k = reference.coordinates(e);
                if k.iter().sum::<i64>() == 1 {
                    let j = k.iter().position(|x| *x == 1).expect("unit vector");
                    jac[i][j] = c.clone();
                }
            }
        }
        if rank(&jac) < d {
            return Err(Error::Invalid("coordinates have dependent differentials at P".into()));
        }
        Ok((reference, jac))
    }
}

fn rank(rows: &[Vec<Rational>]) -> usize {
    crate::linalg::rank_of(rows, rows.first().map_or(0, |r| r.len()))
}

/// Solves `J x = b` for invertible `J`.
fn solve(jac: &[Vec<Rational>], b: &[Rational]) -> Vec<Rational> {
    let d = b.len();
    let mut sys = LinearSystem::new(d);
    for (row, rhs) in jac.iter().zip(b) {
        let terms: Vec<(usize, Rational)> = row.iter().cloned().enumerate().collect();
        sys.add_equation(&terms, rhs);
    }
    sys.particular().expect("invertible Jacobian")
}

/// True iff both points use the same chart and coordinates and `a_i − a′_i ∈ 𝔪_P`.
pub fn ideal_equivalent(z: &GoodPoint, z2: &GoodPoint) -> Result<bool> {
    if z.chart != z2.chart || z.coords != z2.coords || z.coeffs.len() != z2.coeffs.len() {
        return Err(Error::Invalid("good points use different charts or coordinates".into()));
    }
    Ok(z
        .coeffs
        .iter()
        .zip(&z2.coeffs)
        .all(|(a, b)| (a - b).constant_term().is_zero()))
}

/// `Δ_P = J^{-1} a(P)` in the reference basis.
pub fn delta_invariant(z: &GoodPoint, spec: &DoubleSchemeSpec) -> Result<DeltaValue> {
    let (reference, jac) = z.frame(spec)?;
    let values: Vec<Rational> = z.coeffs.iter().map(|a| a.constant_term()).collect();
    let names = spec.atlas.variables();
    Ok(DeltaValue {
        tangent: solve(&jac, &values),
        basis: reference
            .coordinate_functions()
            .iter()
            .map(|y| format!("d/d({})", y.display_with(names)))
            .collect(),
        frame: format!("delta*_{}(t)(P)", z.chart),
    })
}

/// The same subscheme after changing the splitting on its chart by `θ`:
/// `a′_i` is the `t`-coefficient of `θ(y_i + a_i t)`. Also returns `ε(P)`,
/// the factor relating the two fiber frames.
pub fn change_trivialization(z: &GoodPoint, theta: &RingMorphism) -> Result<(GoodPoint, Rational)> {
    if theta.order() != 2 {
        return Err(Error::Unsupported("trivialization changes are order-2 morphisms".into()));
    }
    let coeffs = z
        .coords
        .iter()
        .zip(&z.coeffs)
        .map(|(y, a)| {
            let u = TruncElement::new(vec![y.clone(), a.clone()])?;
            Ok(theta.apply(&u)?.coeff(1).clone())
        })
        .collect::<Result<Vec<_>>>()?;
    let scale = theta.epsilon().constant_term().constant_term();
    Ok((
        GoodPoint {
            coeffs,
            ..z.clone()
        },
        scale,
    ))
}

fn binomial(n: i64, k: i64) -> usize {
    if n < k || k < 0 {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
}

/// A global section `Σ F_k ∂/∂x_k` of `T_{P²}(m)`, `F_k` of degree `m + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousField {
    pub components: [BTreeMap<[u32; 3], Rational>; 3],
}

impl HomogeneousField {
    /// Value at `P = (0:0:1)` in the basis `(∂/∂μ, ∂/∂(λμ))`, i.e. `(F_1, F_0)` at `P`.
    pub fn value_at_p(&self, m: i64) -> [Rational; 2] {
        let top = [0, 0, (m + 1) as u32];
        let get = |k: usize| self.components[k].get(&top).cloned().unwrap_or_else(Rational::zero);
        [get(1), get(0)]
    }
}

fn monomials(deg: i64) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    if deg < 0 {
        return out;
    }
    let d = deg as u32;
    for a in 0..=d {
        for b in 0..=(d - a) {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

/// Basis of `H⁰(T_{P²}(m))` from the Euler sequence: triples of degree-`(m+1)`
/// forms modulo multiples of `(x0, x1, x2)`.
pub fn sections_tl(m: i64) -> Vec<HomogeneousField> {
    let top = monomials(m + 1);
    let index: BTreeMap<[u32; 3], usize> = top.iter().enumerate().map(|(k, e)| (*e, k)).collect();
    let ncols = 3 * top.len();
    let mut sys = LinearSystem::new(ncols);
    for e in monomials(m) {
        let terms: Vec<(usize, Rational)> = (0..3)
            .map(|k| {
                let mut f = e;
                f[k] += 1;
                (k * top.len() + index[&f], Rational::one())
            })
            .collect();
        sys.add_equation(&terms, &Rational::zero());
    }
    let mut basis = Vec::new();
    for k in 0..3 {
        for e in &top {
            if sys.add_equation(&[(k * top.len() + index[e], Rational::one())], &Rational::zero()) {
                let mut components: [BTreeMap<[u32; 3], Rational>; 3] = Default::default();
                components[k].insert(*e, Rational::one());
                basis.push(HomogeneousField { components });
            }
        }
    }
    basis
}

/// `dim H⁰(T_{P²}(m))`.
pub fn sections_tl_dim(m: i64) -> usize {
    if m < -1 {
        return 0;
    }
    3 * binomial(m + 3, 2) - binomial(m + 2, 2)
}

/// `H_{L,P}`: the span of all values at `P` of sections of `T_{P²}(m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberSubspace {
    pub basis: Vec<[Rational; 2]>,
}

impl FiberSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut rows: Vec<Vec<Rational>> = self.basis.iter().map(|b| b.to_vec()).collect();
        let before = rank(&rows);
        rows.push(v.to_vec());
        rank(&rows) == before
    }

    /// Whether `Ψ(u)` and `Ψ(v)` span the same line in the quotient by `self`.
    pub fn same_line(&self, u: &[Rational], v: &[Rational]) -> bool {
        let base: Vec<Vec<Rational>> = self.basis.iter().map(|b| b.to_vec()).collect();
        let (zu, zv) = (self.contains(u), self.contains(v));
        if zu || zv {
            return zu && zv;
        }
        let mut rows = base.clone();
        rows.push(u.to_vec());
        rows.push(v.to_vec());
        rank(&rows) == rank(&base) + 1
    }
}

pub fn h_lp(m: i64) -> FiberSubspace {
    let mut sys = LinearSystem::new(2);
    let mut basis = Vec::new();
    for s in sections_tl(m) {
        let v = s.value_at_p(m);
        let terms: Vec<(usize, Rational)> = v.iter().cloned().enumerate().collect();
        if sys.add_equation(&terms, &Rational::zero()) {
            basis.push(v);
        }
    }
    FiberSubspace { basis }
}

/// `m` with `α = O(m)` exactly on the P² cover.
fn p2_degree(spec: &DoubleSchemeSpec) -> Result<i64> {
    let atlas = crate::catalog::p2_atlas();
    if !spec.atlas.same_geometry(&atlas) {
        return Err(Error::AtlasMismatch("expected the three-chart P² cover".into()));
    }
    let alpha = spec.full_alpha()?;
    let m = alpha[0][1]
        .as_monomial()
        .map(|(_, e)| -e[0])
        .ok_or_else(|| Error::NotMonomial(format!("{}", alpha[0][1])))?;
    if alpha != crate::catalog::p2_bundle(m).full(&atlas)? {
        return Err(Error::Unsupported("the associated bundle is not in the O(m) normal form".into()));
    }
    Ok(m)
}

/// Whether the blow-ups at `Z` and `Z′` are isomorphic: `Δ − Δ′ ∈ H_{L,P}` over a
/// nontrivial base, equal lines `ℂ·Ψ(Δ) = ℂ·Ψ(Δ′)` over the split one (`D = 0`).
pub fn blowup_iso_decide(z: &GoodPoint, z2: &GoodPoint, spec: &DoubleSchemeSpec) -> Result<bool> {
    if z.chart != "U2" || z2.chart != "U2" {
        return Err(Error::Unsupported("good points are taken at P = (0:0:1) on U2".into()));
    }
    let m = p2_degree(spec)?;
    let h = h_lp(m);
    let d = delta_invariant(z, spec)?.tangent;
    let d2 = delta_invariant(z2, spec)?.tangent;
    if spec.d.is_zero() {
        Ok(h.same_line(&d, &d2))
    } else {
        let diff: Vec<Rational> = d.iter().zip(&d2).map(|(a, b)| a - b).collect();
        Ok(h.contains(&diff))
    }
}

/// For the ideal `(f + g t)` on a curve chart with `f(P) = 0`, `g(P) ≠ 0`: whether
/// it is good at `P`, i.e. `f` vanishes to order exactly one there.
pub fn is_good_principal(f: &LaurentPoly, g: &LaurentPoly, p: &Rational) -> Result<bool> {
    if f.nvars() != 1 || g.nvars() != 1 {
        return Err(Error::Unsupported("the principal criterion is for curve charts".into()));
    }
    let at = [p.clone()];
    if !f.eval(&at)?.is_zero() {
        return Err(Error::Unsupported("f does not vanish at P".into()));
    }
    if g.eval(&at)?.is_zero() {
        return Err(Error::Invalid("g vanishes at P".into()));
    }
    Ok(!f.partial_derivative(0)?.eval(&at)?.is_zero())
}


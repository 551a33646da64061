//! Twisted Čech 1-cocycles on chart atlases: bounded coboundary solving,
//! isomorphism of double structures, canonical classes, cup products and the
//! residue functional on `H²(ω)`.
//!
//! All solver answers are semi-decisions: "none" only means no cochain with
//! exponents bounded by `D` exists.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::atlas::{
    vf_scale, vf_sub, Atlas, DoubleSchemeSpec, MultCocycle, PairTable, VectorField, VectorFieldCocycle,
};
use crate::error::{Error, Result};
use crate::laurent::{int, ExponentMonoid, ExponentVector, LaurentPoly, Rational};
use crate::linalg::LinearSystem;

/// A chart ring `Q[y_1^{±}, …, y_k, …]` with `y_k = x^{g_k}` a unimodular basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothChart {
    basis: Vec<Vec<i64>>,
    inverse: Vec<Vec<i64>>,
    invertible: Vec<bool>,
    det: i64,
}

fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut total = 0;
    for c in 0..n {
        if m[0][c] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, v)| *v).collect())
            .collect();
        let sign = if c % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][c] * det(&minor);
    }
    total
}

/// Integer inverse of a unimodular matrix via the adjugate.
fn unimodular_inverse(m: &[Vec<i64>], d: i64) -> Vec<Vec<i64>> {
    let n = m.len();
    let mut inv = vec![vec![0; n]; n];
    for r in 0..n {
        for c in 0..n {
            let minor: Vec<Vec<i64>> = m
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != r)
                .map(|(_, row)| row.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, v)| *v).collect())
                .collect();
            let sign = if (r + c) % 2 == 0 { 1 } else { -1 };
            inv[c][r] = sign * det(&minor) * d;
        }
    }
    inv
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl SmoothChart {
    pub fn new(ring: &ExponentMonoid) -> Result<Self> {
        let n = ring.dim();
        let gens = ring.generators();
        for pick in combinations(gens.len(), n) {
            let basis: Vec<Vec<i64>> = pick.iter().map(|&k| gens[k].clone()).collect();
            let d = det(&basis);
            if d.abs() != 1 {
                continue;
            }
            let inverse = unimodular_inverse(&basis, d);
            let invertible: Vec<bool> = basis.iter().map(|g| ring.is_unit(g)).collect();
            let chart = SmoothChart {
                basis,
                inverse,
                invertible,
                det: d,
            };
            if gens.iter().all(|g| chart.contains(g)) {
                return Ok(chart);
            }
        }
        Err(Error::Unsupported(format!(
            "chart ring with generators {gens:?} has no unimodular generator basis"
        )))
    }

    /// Coordinates `y_k = x^{g_k}` given directly; all directions non-invertible.
    pub fn from_coordinates(basis: Vec<Vec<i64>>) -> Result<Self> {
        let n = basis.len();
        if basis.iter().any(|g| g.len() != n) {
            return Err(Error::Invalid("coordinate count must equal the variable count".into()));
        }
        let d = det(&basis);
        if d.abs() != 1 {
            return Err(Error::Unsupported(format!(
                "coordinates with exponents {basis:?} are not a unimodular system"
            )));
        }
        let inverse = unimodular_inverse(&basis, d);
        Ok(SmoothChart {
            basis,
            inverse,
            invertible: vec![false; n],
            det: d,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn invertible(&self) -> &[bool] {
        &self.invertible
    }

    /// `a` with `e = Σ a_k g_k`.
    pub fn coordinates(&self, e: &[i64]) -> Vec<i64> {
        let n = self.dim();
        (0..n)
            .map(|k| (0..n).map(|v| e[v] * self.inverse[v][k]).sum())
            .collect()
    }

    pub fn contains(&self, e: &[i64]) -> bool {
        self.coordinates(e)
            .iter()
            .zip(&self.invertible)
            .all(|(a, inv)| *inv || *a >= 0)
    }

    pub fn coordinate_functions(&self) -> Vec<LaurentPoly> {
        self.basis.iter().map(|g| LaurentPoly::x(g)).collect()
    }

    /// `∂/∂y_k = x^{-g_k} Σ_v (G^{-1})_{vk} x_v ∂_v`.
    pub fn partial(&self, k: usize) -> VectorField {
        let n = self.dim();
        (0..n)
            .map(|v| {
                let mut e: Vec<i64> = self.basis[k].iter().map(|x| -x).collect();
                e[v] += 1;
                LaurentPoly::x(&e).scale(&int(self.inverse[v][k]))
            })
            .collect()
    }

    /// `dy_k = x^{g_k} Σ_v G_{kv} dx_v / x_v`, as coefficients of `dx_v`.
    pub fn differential(&self, k: usize) -> Vec<LaurentPoly> {
        let n = self.dim();
        (0..n)
            .map(|v| {
                let mut e = self.basis[k].clone();
                e[v] -= 1;
                LaurentPoly::x(&e).scale(&int(self.basis[k][v]))
            })
            .collect()
    }

    /// `dy_1∧…∧dy_n` as a multiple of `dx_1∧…∧dx_n`.
    pub fn native_top_form(&self) -> LaurentPoly {
        let n = self.dim();
        let mut e = vec![-1; n];
        for g in &self.basis {
            for v in 0..n {
                e[v] += g[v];
            }
        }
        LaurentPoly::x(&e).scale(&int(self.det))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionKind {
    Functions,
    VectorFields,
    OneForms,
    TopForms,
}

impl SectionKind {
    pub fn components(self, nvars: usize) -> usize {
        match self {
            SectionKind::Functions | SectionKind::TopForms => 1,
            SectionKind::VectorFields | SectionKind::OneForms => nvars,
        }
    }
}

/// Monomials `x^e` of the chart with `|e|_∞ ≤ D`, times the chart's native frame elements.
#[derive(Clone, Debug)]
pub struct BoundedSpace {
    pub kind: SectionKind,
    pub bound: i64,
    pub basis: Vec<Vec<LaurentPoly>>,
}

impl BoundedSpace {
    pub fn new(chart: &SmoothChart, kind: SectionKind, bound: i64) -> Self {
        let n = chart.dim();
        let mut exps: Vec<ExponentVector> = vec![vec![]];
        for _ in 0..n {
            exps = exps
                .into_iter()
                .flat_map(|e| {
                    (-bound..=bound).map(move |k| {
                        let mut e = e.clone();
                        e.push(k);
                        e
                    })
                })
                .collect();
        }
        let exps: Vec<ExponentVector> = exps.into_iter().filter(|e| chart.contains(e)).collect();
        let mut basis = Vec::new();
        for e in &exps {
            let m = LaurentPoly::x(e);
            match kind {
                SectionKind::Functions => basis.push(vec![m]),
                SectionKind::TopForms => basis.push(vec![&m * &chart.native_top_form()]),
                SectionKind::VectorFields => {
                    for k in 0..n {
                        basis.push(vf_scale(&chart.partial(k), &m));
                    }
                }
                SectionKind::OneForms => {
                    for k in 0..n {
                        basis.push(vf_scale(&chart.differential(k), &m));
                    }
                }
            }
        }
        BoundedSpace { kind, bound, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Untwisted cocycle of 1-forms `Σ w_v dx_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneFormCocycle {
    pub data: BTreeMap<(usize, usize), Vec<LaurentPoly>>,
}

impl OneFormCocycle {
    pub fn full(&self, atlas: &Atlas) -> Result<PairTable<Vec<LaurentPoly>>> {
        let ones = trivial_table(atlas);
        VectorFieldCocycle::new(self.data.clone()).full(atlas, &ones)
    }

    pub fn add(&self, other: &OneFormCocycle, scale: &Rational) -> OneFormCocycle {
        let mut data = self.data.clone();
        for (k, v) in &other.data {
            let e = data.entry(*k).or_insert_with(|| vec![LaurentPoly::zero(v[0].nvars()); v.len()]);
            *e = e.iter().zip(v).map(|(a, b)| a + &b.scale(scale)).collect();
        }
        OneFormCocycle { data }
    }
}

pub fn trivial_table(atlas: &Atlas) -> PairTable<LaurentPoly> {
    let n = atlas.len();
    vec![vec![LaurentPoly::one(atlas.nvars()); n]; n]
}

/// Top-form-valued 2-cochain: coefficient of `dx_1∧…∧dx_n` on each triple `i<j<k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCocycle {
    pub data: BTreeMap<(usize, usize, usize), LaurentPoly>,
}

impl TwoCocycle {
    /// Value on an arbitrary ordered triple by alternation.
    pub fn get(&self, i: usize, j: usize, k: usize, nvars: usize) -> LaurentPoly {
        let mut idx = [i, j, k];
        if i == j || j == k || i == k {
            return LaurentPoly::zero(nvars);
        }
        let mut sign = 1;
        for a in 0..3 {
            for b in 0..(2 - a) {
                if idx[b] > idx[b + 1] {
                    idx.swap(b, b + 1);
                    sign = -sign;
                }
            }
        }
        let v = self.data.get(&(idx[0], idx[1], idx[2])).cloned().unwrap_or_else(|| LaurentPoly::zero(nvars));
        if sign < 0 {
            -&v
        } else {
            v
        }
    }

    /// `Σ (−1)^m t(i_0 … î_m … i_3)` on one quadruple.
    pub fn coboundary_at(&self, q: [usize; 4], nvars: usize) -> LaurentPoly {
        let mut out = LaurentPoly::zero(nvars);
        for m in 0..4 {
            let rest: Vec<usize> = (0..4).filter(|&k| k != m).map(|k| q[k]).collect();
            let v = self.get(rest[0], rest[1], rest[2], nvars);
            out = if m % 2 == 0 { &out + &v } else { &out - &v };
        }
        out
    }

    pub fn is_cocycle(&self, atlas: &Atlas) -> bool {
        let n = atlas.len();
        let mut quads = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    for d in (c + 1)..n {
                        quads.push([a, b, c, d]);
                    }
                }
            }
        }
        quads.into_iter().all(|q| self.coboundary_at(q, atlas.nvars()).is_zero())
    }

    /// `δc` for a top-form 1-cochain `c_ij` (`i<j`).
    pub fn coboundary_of(atlas: &Atlas, c: &BTreeMap<(usize, usize), LaurentPoly>) -> TwoCocycle {
        let nvars = atlas.nvars();
        let get = |i: usize, j: usize| c.get(&(i, j)).cloned().unwrap_or_else(|| LaurentPoly::zero(nvars));
        let data = atlas
            .triples()
            .into_iter()
            .map(|(i, j, k)| ((i, j, k), &(&get(j, k) - &get(i, k)) + &get(i, j)))
            .collect();
        TwoCocycle { data }
    }

    pub fn scaled(&self, c: &Rational) -> TwoCocycle {
        TwoCocycle {
            data: self.data.iter().map(|(k, v)| (*k, v.scale(c))).collect(),
        }
    }

    pub fn add(&self, other: &TwoCocycle) -> TwoCocycle {
        let mut data = self.data.clone();
        for (k, v) in &other.data {
            let e = data.entry(*k).or_insert_with(|| LaurentPoly::zero(v.nvars()));
            *e = &*e + v;
        }
        TwoCocycle { data }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Found,
    NoneWithinBound,
}

pub const SEMANTICS: &str = "bounded-semi-decision";

/// JSON form of a solver answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolverReport {
    pub status: SolveStatus,
    pub bound: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ReportWitness>,
    pub semantics: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportWitness {
    #[serde(skip_serializing_if = "Option::is_none", with = "optional_rational")]
    pub tau: Option<Rational>,
    pub cochain: BTreeMap<String, Vec<LaurentPoly>>,
}

mod optional_rational {
    use serde::Serializer;

    use crate::laurent::{format_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&format_rational(r)),
            None => s.serialize_none(),
        }
    }
}

impl SolverReport {
    pub fn new(atlas: &Atlas, bound: i64, tau: Option<Rational>, cochain: Option<&[Vec<LaurentPoly>]>) -> Self {
        match cochain {
            Some(c) => SolverReport {
                status: SolveStatus::Found,
                bound,
                witness: Some(ReportWitness {
                    tau,
                    cochain: c
                        .iter()
                        .enumerate()
                        .map(|(i, v)| (atlas.name(i).to_string(), v.clone()))
                        .collect(),
                }),
                semantics: SEMANTICS,
            },
            None => SolverReport {
                status: SolveStatus::NoneWithinBound,
                bound,
                witness: None,
                semantics: SEMANTICS,
            },
        }
    }
}

fn smooth_charts(atlas: &Atlas) -> Result<Vec<SmoothChart>> {
    atlas.charts().iter().map(|c| SmoothChart::new(&c.ring)).collect()
}

/// Sparse equation rows keyed by (component, exponent).
type EquationMap = HashMap<(usize, ExponentVector), Vec<(usize, Rational)>>;

fn push_terms(eqs: &mut EquationMap, col: usize, value: &[LaurentPoly], factor: &LaurentPoly, sign: i64) {
    for (comp, p) in value.iter().enumerate() {
        for (e, c) in (p * factor).terms() {
            let c = if sign < 0 { -c.clone() } else { c.clone() };
            eqs.entry((comp, e.clone())).or_default().push((col, c));
        }
    }
}

/// Solves `target_ij = Σ_s τ_s·extra_s,ij + ρ_i − α_ij ρ_j` on the edges `(0, j)` with
/// `ρ_i` in the bounded spaces. Columns: cochain unknowns, then the `τ_s`.
struct CochainSystem {
    system: LinearSystem,
    offsets: Vec<usize>,
    spaces: Vec<BoundedSpace>,
    extra_cols: Vec<usize>,
}

fn build_system(
    atlas: &Atlas,
    twist: &PairTable<LaurentPoly>,
    target: &PairTable<Vec<LaurentPoly>>,
    extra: &[&PairTable<Vec<LaurentPoly>>],
    kind: SectionKind,
    bound: i64,
) -> Result<CochainSystem> {
    let charts = smooth_charts(atlas)?;
    let spaces: Vec<BoundedSpace> = charts.iter().map(|c| BoundedSpace::new(c, kind, bound)).collect();
    let mut offsets = Vec::with_capacity(spaces.len());
    let mut ncols = 0;
    for s in &spaces {
        offsets.push(ncols);
        ncols += s.dim();
    }
    let extra_cols: Vec<usize> = (0..extra.len()).map(|k| ncols + k).collect();
    ncols += extra.len();
    let mut system = LinearSystem::new(ncols);
    let ncomp = kind.components(atlas.nvars());
    for j in 1..atlas.len() {
        let i = 0;
        let mut eqs: EquationMap = HashMap::new();
        let one = LaurentPoly::one(atlas.nvars());
        for (b, v) in spaces[i].basis.iter().enumerate() {
            push_terms(&mut eqs, offsets[i] + b, v, &one, 1);
        }
        for (b, v) in spaces[j].basis.iter().enumerate() {
            push_terms(&mut eqs, offsets[j] + b, v, &twist[i][j], -1);
        }
        for (s, table) in extra.iter().enumerate() {
            push_terms(&mut eqs, extra_cols[s], &table[i][j], &one, 1);
        }
        let mut rhs: HashMap<(usize, ExponentVector), Rational> = HashMap::new();
        for comp in 0..ncomp {
            for (e, c) in target[i][j][comp].terms() {
                rhs.insert((comp, e.clone()), c.clone());
                eqs.entry((comp, e.clone())).or_default();
            }
        }
        let mut keys: Vec<_> = eqs.keys().cloned().collect();
        keys.sort();
        for key in keys {
            let terms = &eqs[&key];
            let r = rhs.get(&key).cloned().unwrap_or_else(Rational::zero);
            system.add_equation(terms, &r);
            if !system.is_consistent() {
                break;
            }
        }
        if !system.is_consistent() {
            break;
        }
    }
    Ok(CochainSystem {
        system,
        offsets,
        spaces,
        extra_cols,
    })
}

impl CochainSystem {
    fn cochain(&self, x: &[Rational], nvars: usize, kind: SectionKind) -> Vec<Vec<LaurentPoly>> {
        let ncomp = kind.components(nvars);
        self.spaces
            .iter()
            .zip(&self.offsets)
            .map(|(space, &off)| {
                let mut acc = vec![LaurentPoly::zero(nvars); ncomp];
                for (b, v) in space.basis.iter().enumerate() {
                    let c = &x[off + b];
                    if c.is_zero() {
                        continue;
                    }
                    for (a, p) in acc.iter_mut().zip(v) {
                        *a = &*a + &p.scale(c);
                    }
                }
                acc
            })
            .collect()
    }
}

/// `ρ_i − α_ij ρ_j` equals `target_ij − Σ τ_s extra_s,ij` on every pair.
fn verify(
    atlas: &Atlas,
    twist: &PairTable<LaurentPoly>,
    target: &PairTable<Vec<LaurentPoly>>,
    extra: &[(&PairTable<Vec<LaurentPoly>>, Rational)],
    rho: &[Vec<LaurentPoly>],
) -> bool {
    for (i, j) in atlas.pairs() {
        let mut lhs = vf_sub(&rho[i], &vf_scale(&rho[j], &twist[i][j]));
        for (table, tau) in extra {
            let scaled: Vec<LaurentPoly> = table[i][j].iter().map(|p| p.scale(tau)).collect();
            lhs = crate::atlas::vf_add(&lhs, &scaled);
        }
        if lhs != target[i][j] {
            return false;
        }
    }
    true
}

/// A bounded cochain `ρ` with `σ_ij = ρ_i − α_ij ρ_j`, verified on all pairs.
pub fn coboundary_solve(
    atlas: &Atlas,
    twist: &PairTable<LaurentPoly>,
    sigma: &PairTable<Vec<LaurentPoly>>,
    kind: SectionKind,
    bound: i64,
) -> Result<Option<Vec<Vec<LaurentPoly>>>> {
    let sys = build_system(atlas, twist, sigma, &[], kind, bound)?;
    let Some(x) = sys.system.particular() else {
        return Ok(None);
    };
    let rho = sys.cochain(&x, atlas.nvars(), kind);
    if verify(atlas, twist, sigma, &[], &rho) {
        Ok(Some(rho))
    } else {
        Err(Error::Validation("coboundary witness failed resubstitution".into()))
    }
}

/// Coefficients `c_s` and a bounded cochain with `target = Σ c_s class_s + δρ`; `determined`
/// records whether the coefficients are forced by the system.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub coefficients: Vec<Rational>,
    pub cochain: Vec<Vec<LaurentPoly>>,
    pub determined: bool,
}

pub fn decompose(
    atlas: &Atlas,
    twist: &PairTable<LaurentPoly>,
    target: &PairTable<Vec<LaurentPoly>>,
    classes: &[&PairTable<Vec<LaurentPoly>>],
    kind: SectionKind,
    bound: i64,
) -> Result<Option<Decomposition>> {
    let sys = build_system(atlas, twist, target, classes, kind, bound)?;
    let Some(x) = sys.system.particular() else {
        return Ok(None);
    };
    let coefficients: Vec<Rational> = sys.extra_cols.iter().map(|&c| x[c].clone()).collect();
    let determined = sys.extra_cols.iter().all(|&c| {
        sys.system
            .pivot_expression(c)
            .map(|(_, rest)| rest.iter().all(|(_, v)| v.is_zero()))
            .unwrap_or(false)
    });
    let cochain = sys.cochain(&x, atlas.nvars(), kind);
    let extra: Vec<(&PairTable<Vec<LaurentPoly>>, Rational)> =
        classes.iter().copied().zip(coefficients.iter().cloned()).collect();
    if !verify(atlas, twist, target, &extra, &cochain) {
        return Err(Error::Validation("decomposition witness failed resubstitution".into()));
    }
    Ok(Some(Decomposition {
        coefficients,
        cochain,
        determined,
    }))
}

/// Whether the double structure's class vanishes within the bound.
pub fn class_is_zero(s: &DoubleSchemeSpec, bound: i64) -> Result<bool> {
    let alpha = s.full_alpha()?;
    let d = s.d.full(&s.atlas, &alpha)?;
    Ok(coboundary_solve(&s.atlas, &alpha, &d, SectionKind::VectorFields, bound)?.is_some())
}

fn check_comparable(s: &DoubleSchemeSpec, s2: &DoubleSchemeSpec) -> Result<PairTable<LaurentPoly>> {
    if !s.atlas.same_geometry(&s2.atlas) {
        return Err(Error::AtlasMismatch("the two schemes live on different atlases".into()));
    }
    let a = s.full_alpha()?;
    if a != s2.alpha.full(&s.atlas)? {
        return Err(Error::AtlasMismatch("the associated bundle cocycles differ".into()));
    }
    Ok(a)
}

/// `(τ, T)` with `D′_ij = τ D_ij + T_i − α_ij T_j`, `τ ≠ 0`, verified on all pairs.
pub fn iso_decide(
    s: &DoubleSchemeSpec,
    s2: &DoubleSchemeSpec,
    bound: i64,
) -> Result<Option<(Rational, Vec<VectorField>)>> {
    let alpha = check_comparable(s, s2)?;
    let d = s.d.full(&s.atlas, &alpha)?;
    let d2 = s2.d.full(&s.atlas, &alpha)?;
    let nvars = s.nvars();
    let kind = SectionKind::VectorFields;
    let sys = build_system(&s.atlas, &alpha, &d2, &[&d], kind, bound)?;
    if !sys.system.is_consistent() {
        return Ok(None);
    }
    let tau_col = sys.extra_cols[0];
    let mut free = BTreeMap::new();
    if sys.system.is_pivot(tau_col) {
        let (c, rest) = sys.system.pivot_expression(tau_col).expect("pivot");
        if let Some((k, coeff)) = rest.into_iter().find(|(_, v)| !v.is_zero()) {
            free.insert(k, (Rational::one() - &c) / coeff);
        } else if c.is_zero() {
            return Ok(None);
        }
    } else {
        free.insert(tau_col, Rational::one());
    }
    let x = sys.system.solve_with(&free).expect("consistent");
    let tau = x[tau_col].clone();
    if tau.is_zero() {
        return Ok(None);
    }
    let t = sys.cochain(&x, nvars, kind);
    if verify(&s.atlas, &alpha, &d2, &[(&d, tau.clone())], &t) {
        Ok(Some((tau, t)))
    } else {
        Err(Error::Validation("isomorphism witness failed resubstitution".into()))
    }
}

/// `dθ/θ` for each entry `θ = c·x^e`: `Σ e_v dx_v / x_v`.
pub fn log_differential(p: &LaurentPoly) -> Result<Vec<LaurentPoly>> {
    let Some((_, e)) = p.as_monomial() else {
        return Err(Error::NotMonomial(format!("{p}")));
    };
    let n = e.len();
    Ok((0..n)
        .map(|v| {
            let mut u = vec![0; n];
            u[v] = -1;
            LaurentPoly::x(&u).scale(&int(e[v]))
        })
        .collect())
}

/// `∇₀(L)` on every pair `i < j`.
pub fn canonical_class(atlas: &Atlas, c: &MultCocycle) -> Result<OneFormCocycle> {
    let full = c.full(atlas)?;
    let data = atlas
        .pairs()
        .into_iter()
        .map(|(i, j)| Ok(((i, j), log_differential(&full[i][j])?)))
        .collect::<Result<_>>()?;
    Ok(OneFormCocycle { data })
}

/// Trivializing top forms `e_i = c_i dλ∧dμ` of `ω` compatible with `alpha`
/// (`e_j = α_ij e_i`), rooted at `e_0 = −x^{Σg−1}` on chart 0.
pub fn omega_frames(atlas: &Atlas, alpha: &PairTable<LaurentPoly>) -> Result<Vec<LaurentPoly>> {
    let charts = smooth_charts(atlas)?;
    let native0 = charts[0].native_top_form();
    let (_, e0) = native0.as_monomial().expect("monomial");
    let root = LaurentPoly::x(e0).scale(&int(-1));
    let mut frames = Vec::with_capacity(atlas.len());
    for (j, chart) in charts.iter().enumerate() {
        let f = &alpha[0][j] * &root;
        let ratio = &f * &chart.native_top_form().inverse()?;
        let unit = ratio
            .as_monomial()
            .map(|(_, e)| atlas.charts()[j].ring.is_unit(e))
            .unwrap_or(false);
        if !unit {
            return Err(Error::Unsupported(format!(
                "the associated bundle is not the canonical bundle on chart {}",
                atlas.name(j)
            )));
        }
        frames.push(f);
    }
    Ok(frames)
}

fn require_surface(atlas: &Atlas) -> Result<()> {
    if atlas.nvars() != 2 {
        return Err(Error::Unsupported("contractions are implemented for surfaces".into()));
    }
    Ok(())
}

/// `ι_X(f dλ∧dμ) = f (X_λ dμ − X_μ dλ)`.
pub fn contract(x: &VectorField, f: &LaurentPoly) -> Vec<LaurentPoly> {
    vec![-&(&x[1] * f), &x[0] * f]
}

/// Inverse of [`contract`]: the vector field `X` with `ι_X(f dλ∧dμ) = a dλ + b dμ`.
pub fn sharp(w: &[LaurentPoly], f: &LaurentPoly) -> Result<VectorField> {
    let inv = f.inverse()?;
    Ok(vec![&w[1] * &inv, -&(&w[0] * &inv)])
}

/// `ι_{σ_ij} e_i`: an `ω`-twisted vector-field cocycle as an untwisted 1-form cocycle.
pub fn contract_cocycle(
    atlas: &Atlas,
    alpha: &PairTable<LaurentPoly>,
    sigma: &PairTable<VectorField>,
) -> Result<PairTable<Vec<LaurentPoly>>> {
    require_surface(atlas)?;
    let frames = omega_frames(atlas, alpha)?;
    let n = atlas.len();
    Ok((0..n)
        .map(|i| (0..n).map(|j| contract(&sigma[i][j], &frames[i])).collect())
        .collect())
}

/// Inverse of [`contract_cocycle`].
pub fn sharp_cocycle(
    atlas: &Atlas,
    alpha: &PairTable<LaurentPoly>,
    omega: &PairTable<Vec<LaurentPoly>>,
) -> Result<PairTable<VectorField>> {
    require_surface(atlas)?;
    let frames = omega_frames(atlas, alpha)?;
    let n = atlas.len();
    (0..n)
        .map(|i| (0..n).map(|j| sharp(&omega[i][j], &frames[i])).collect())
        .collect()
}

/// `(σ⌣ω)_ijk = ⟨σ_ij, ω_jk⟩ e_i`.
pub fn contract_cup(
    atlas: &Atlas,
    alpha: &PairTable<LaurentPoly>,
    sigma: &PairTable<VectorField>,
    omega: &PairTable<Vec<LaurentPoly>>,
) -> Result<TwoCocycle> {
    let frames = omega_frames(atlas, alpha)?;
    let nvars = atlas.nvars();
    let mut data = BTreeMap::new();
    for (i, j, k) in atlas.triples() {
        let s = &sigma[i][j];
        let w = &omega[j][k];
        if s.len() != nvars || w.len() != nvars {
            return Err(Error::VarCount {
                left: nvars,
                right: s.len().min(w.len()),
            });
        }
        let mut pairing = LaurentPoly::zero(nvars);
        for v in 0..nvars {
            pairing = &pairing + &(&s[v] * &w[v]);
        }
        data.insert((i, j, k), &pairing * &frames[i]);
    }
    Ok(TwoCocycle { data })
}

/// Sum over all triples of the coefficient of `x^{(−1,…,−1)}`.
pub fn residue_raw(t: &TwoCocycle, nvars: usize) -> Rational {
    let e = vec![-1; nvars];
    t.data.values().map(|p| p.coeff(&e)).fold(Rational::zero(), |a, b| a + b)
}

/// A known class `h` with `h·h = value`, used to normalize the residue.
pub struct Calibration {
    pub alpha: PairTable<LaurentPoly>,
    pub class: PairTable<Vec<LaurentPoly>>,
    pub value: Rational,
}

impl Calibration {
    pub fn scale(&self, atlas: &Atlas) -> Result<Rational> {
        let sharp = sharp_cocycle(atlas, &self.alpha, &self.class)?;
        let raw = residue_raw(&contract_cup(atlas, &self.alpha, &sharp, &self.class)?, atlas.nvars());
        if raw.is_zero() {
            return Err(Error::Validation("calibration class has zero raw residue".into()));
        }
        Ok(raw / &self.value)
    }

    pub fn residue(&self, atlas: &Atlas, t: &TwoCocycle) -> Result<Rational> {
        Ok(residue_raw(t, atlas.nvars()) / self.scale(atlas)?)
    }
}

/// The residue on `H²(ω)` for the P² cover and the blown-up plane cover.
pub fn h2_residue(atlas: &Atlas, t: &TwoCocycle) -> Result<Rational> {
    crate::catalog::calibration_for(atlas)?.residue(atlas, t)
}

/// `σ·∇₀(F)` in `H²(ω) ≅ Q`.
pub fn extension_obstruction(s: &DoubleSchemeSpec, f: &MultCocycle) -> Result<Rational> {
    let alpha = s.full_alpha()?;
    let sigma = s.d.full(&s.atlas, &alpha)?;
    let omega = canonical_class(&s.atlas, f)?.full(&s.atlas)?;
    h2_residue(&s.atlas, &contract_cup(&s.atlas, &alpha, &sigma, &omega)?)
}

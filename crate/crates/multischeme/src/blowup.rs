//! Blow-ups of multiple schemes along monomial centers.
//!
//! Each chart `U_i` meeting a reduced center with ideal `(f_1, …, f_p)` is
//! replaced by the charts `D+(f_a)`, whose rings are `O(U_i)[f_l/f_a]`. Charts
//! away from the center keep their ring under the name `⟨chart⟩/D+(1)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::atlas::{
    derivation_failure, vf_add, vf_scale, Atlas, Chart, DoubleSchemeSpec, MultCocycle, MultipleScheme,
    VectorField, VectorFieldCocycle,
};
use crate::cohomology::{iso_decide, SmoothChart};
use crate::error::{Error, Result};
use crate::laurent::{neg_exp, sub_exp, ExponentVector, LaurentPoly};
use crate::truncated::{RingMorphism, TruncElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CenterKind {
    Reduced,
    Good,
    Hypersurface,
}

/// Center data on one chart: ideal generators, or pairs `(y, a)` for `y + a·t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChartCenter {
    Generators(Vec<LaurentPoly>),
    Pairs(Vec<(LaurentPoly, LaurentPoly)>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterSpec {
    pub kind: CenterKind,
    pub per_chart: BTreeMap<String, ChartCenter>,
}

impl CenterSpec {
    pub fn reduced<'a>(per_chart: impl IntoIterator<Item = (&'a str, Vec<LaurentPoly>)>) -> Self {
        CenterSpec {
            kind: CenterKind::Reduced,
            per_chart: per_chart
                .into_iter()
                .map(|(k, v)| (k.to_string(), ChartCenter::Generators(v)))
                .collect(),
        }
    }

    pub fn hypersurface<'a>(per_chart: impl IntoIterator<Item = (&'a str, LaurentPoly)>) -> Self {
        CenterSpec {
            kind: CenterKind::Hypersurface,
            per_chart: per_chart
                .into_iter()
                .map(|(k, v)| (k.to_string(), ChartCenter::Generators(vec![v])))
                .collect(),
        }
    }

    pub fn good(chart: &str, pairs: Vec<(LaurentPoly, LaurentPoly)>) -> Self {
        CenterSpec {
            kind: CenterKind::Good,
            per_chart: BTreeMap::from([(chart.to_string(), ChartCenter::Pairs(pairs))]),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("center spec: {e}")))
    }

    /// Same spec with every polynomial given `nvars` variables (zero parses without any).
    fn normalized(&self, nvars: usize) -> Result<CenterSpec> {
        let fix = |p: &LaurentPoly| p.clone().with_nvars(nvars);
        let per_chart = self
            .per_chart
            .iter()
            .map(|(k, v)| {
                let v = match v {
                    ChartCenter::Generators(g) => ChartCenter::Generators(g.iter().map(fix).collect::<Result<_>>()?),
                    ChartCenter::Pairs(p) => ChartCenter::Pairs(
                        p.iter()
                            .map(|(y, a)| Ok((fix(y)?, fix(a)?)))
                            .collect::<Result<_>>()?,
                    ),
                };
                Ok((k.clone(), v))
            })
            .collect::<Result<_>>()?;
        Ok(CenterSpec {
            kind: self.kind,
            per_chart,
        })
    }

    /// Generators per chart index; charts without an entry get `[1]`.
    fn generators(&self, atlas: &Atlas) -> Result<Vec<Vec<LaurentPoly>>> {
        let nvars = atlas.nvars();
        let mut out = vec![vec![LaurentPoly::one(nvars)]; atlas.len()];
        for (name, entry) in &self.per_chart {
            let i = atlas.chart_index(name)?;
            let gens = match entry {
                ChartCenter::Generators(g) => g.clone(),
                ChartCenter::Pairs(p) => p.iter().map(|(y, _)| y.clone()).collect(),
            };
            if gens.is_empty() {
                return Err(Error::Invalid(format!("chart {name}: empty center")));
            }
            for g in &gens {
                if g.nvars() != nvars || !g.is_monomial() {
                    return Err(Error::NotMonomial(format!("chart {name}: {g}")));
                }
                if !atlas.charts()[i].ring.contains_poly(g) {
                    return Err(Error::OutsideRing(format!("chart {name}: {g}")));
                }
            }
            out[i] = gens;
        }
        Ok(out)
    }
}

fn exponent(f: &LaurentPoly) -> ExponentVector {
    f.as_monomial().expect("checked monomial").1.clone()
}

/// Chart bookkeeping of a blow-up: the new atlas and where each chart came from.
#[derive(Clone, Debug)]
pub struct BlownAtlas {
    pub atlas: Atlas,
    /// `(source chart, generator f_a)` per new chart.
    pub origin: Vec<(usize, LaurentPoly)>,
}

impl BlownAtlas {
    /// The exceptional divisor as a hypersurface center: `f_a` on `D+(f_a)`.
    pub fn exceptional_center(&self) -> CenterSpec {
        CenterSpec::hypersurface(
            self.origin
                .iter()
                .enumerate()
                .map(|(k, (_, f))| (self.atlas.name(k), f.clone())),
        )
    }

    /// `O(Ỹ)`: `f_a/f_b` on the pair `(D+(f_a), D+(f_b))`.
    pub fn exceptional_cocycle(&self) -> MultCocycle {
        let data = self
            .atlas
            .pairs()
            .into_iter()
            .map(|(a, b)| {
                let ratio = self.origin[a].1.div_exact(&self.origin[b].1).expect("monomials");
                ((a, b), ratio)
            })
            .collect();
        MultCocycle::new("O(E)", data)
    }

    /// `π*L`: the source cocycle entry `α_ik` on every new pair.
    pub fn pullback(&self, alpha: &[Vec<LaurentPoly>], name: &str) -> MultCocycle {
        let data = self
            .atlas
            .pairs()
            .into_iter()
            .map(|(a, b)| ((a, b), alpha[self.origin[a].0][self.origin[b].0].clone()))
            .collect();
        MultCocycle::new(name, data)
    }
}

/// Charts `D+(f_a)` and their overlaps for a reduced monomial center.
pub fn blown_atlas(atlas: &Atlas, c: &CenterSpec) -> Result<BlownAtlas> {
    let gens = c.normalized(atlas.nvars())?.generators(atlas)?;
    let names = atlas.variables().to_vec();
    let mut charts = Vec::new();
    let mut origin = Vec::new();
    let mut extra: Vec<Vec<ExponentVector>> = Vec::new();
    for (i, fs) in gens.iter().enumerate() {
        let exps: Vec<ExponentVector> = fs.iter().map(exponent).collect();
        for (a, f) in fs.iter().enumerate() {
            let ratios: Vec<ExponentVector> = exps.iter().map(|e| sub_exp(e, &exps[a])).collect();
            let ring = atlas.charts()[i].ring.extended(&ratios)?.minimized();
            charts.push(Chart {
                name: format!("{}/D+({})", atlas.name(i), f.display_with(&names)),
                ring,
            });
            origin.push((i, f.clone()));
            extra.push(ratios);
        }
    }
    let mut overlaps = BTreeMap::new();
    for a in 0..charts.len() {
        for b in (a + 1)..charts.len() {
            let (i, k) = (origin[a].0, origin[b].0);
            let shift = sub_exp(&exponent(&origin[a].1), &exponent(&origin[b].1));
            let mut more = extra[a].clone();
            more.extend(extra[b].iter().cloned());
            more.push(neg_exp(&shift));
            more.push(shift);
            let ring = atlas.ring(i, k).extended(&more)?.minimized();
            overlaps.insert((a, b), ring);
        }
    }
    Ok(BlownAtlas {
        atlas: Atlas::new(atlas.variables().to_vec(), charts, overlaps)?,
        origin,
    })
}

fn validated(s: MultipleScheme) -> Result<MultipleScheme> {
    let report = s.validate();
    if !report.valid {
        return Err(Error::Validation(format!(
            "blow-up output failed validation: {}",
            report.failures.join("; ")
        )));
    }
    let bundle = s.associated_bundle();
    let report = bundle.validate(&s.atlas);
    if !report.valid {
        return Err(Error::Validation(format!(
            "blow-up bundle failed validation: {}",
            report.failures.join("; ")
        )));
    }
    Ok(s)
}

fn validated_double(s: DoubleSchemeSpec) -> Result<DoubleSchemeSpec> {
    let report = s.validate();
    if !report.valid {
        return Err(Error::Validation(format!(
            "blow-up output failed validation: {}",
            report.failures.join("; ")
        )));
    }
    Ok(s)
}

/// Result of a reduced blow-up.
#[derive(Clone, Debug)]
pub struct ReducedBlowUp {
    pub scheme: MultipleScheme,
    pub charts: BlownAtlas,
    pub exceptional: MultCocycle,
    pub pullback: MultCocycle,
}

/// Blow-up along a reduced center. With `z = t/f_a` on `D+(f_a)`, the new
/// transition is `φ′ = φ[t := f_a z]` and `ε′ = (ε·f_a/φ(f_b))[t := f_a z]`.
pub fn blowup_reduced(s: &MultipleScheme, c: &CenterSpec) -> Result<ReducedBlowUp> {
    if c.kind != CenterKind::Reduced {
        return Err(Error::Invalid("blowup_reduced needs a reduced center".into()));
    }
    let report = s.validate();
    if !report.valid {
        return Err(Error::Validation(report.failures.join("; ")));
    }
    let charts = blown_atlas(&s.atlas, c)?;
    let full = s.full()?;
    let n = s.order;
    let mut transitions = BTreeMap::new();
    for (a, b) in charts.atlas.pairs() {
        let (i, fa) = &charts.origin[a];
        let (k, fb) = &charts.origin[b];
        let theta = &full[*i][*k];
        let fa_t = TruncElement::from_poly(n, fa.clone());
        let images = theta
            .images()
            .iter()
            .map(|im| im.bracket_subst(&fa_t))
            .collect::<Result<Vec<_>>>()?;
        let m = n - 1;
        let phi_fb = theta.apply_poly(fb, n)?.truncate_to(m);
        let eps = theta
            .epsilon()
            .scale(fa)
            .mul(&phi_fb.invert_unit()?)?
            .bracket_subst(&TruncElement::from_poly(m, fa.clone()))?;
        transitions.insert((a, b), RingMorphism::new(images, eps)?);
    }
    let name = format!("{}(E)", s.bundle_name);
    let scheme = validated(MultipleScheme::new(charts.atlas.clone(), n, name, transitions)?)?;
    let alpha: Vec<Vec<LaurentPoly>> = full
        .iter()
        .map(|row| row.iter().map(|t| t.epsilon().constant_term().clone()).collect())
        .collect();
    Ok(ReducedBlowUp {
        exceptional: charts.exceptional_cocycle(),
        pullback: charts.pullback(&alpha, &s.bundle_name),
        charts,
        scheme,
    })
}

/// `ξ`: `E_{(i,a),(k,b)} = f_a·D_ik`, membership-checked on the new overlaps.
pub fn xi_map(s: &DoubleSchemeSpec, c: &CenterSpec) -> Result<VectorFieldCocycle> {
    let charts = blown_atlas(&s.atlas, c)?;
    let alpha = s.full_alpha()?;
    let d = s.d.full(&s.atlas, &alpha)?;
    let mut data = BTreeMap::new();
    for (a, b) in charts.atlas.pairs() {
        let (i, fa) = &charts.origin[a];
        let k = charts.origin[b].0;
        let e = vf_scale(&d[*i][k], fa);
        if let Some(g) = derivation_failure(&e, charts.atlas.ring(a, b)) {
            return Err(Error::OutsideRing(format!(
                "{}: image of generator {g:?} leaves the overlap ring",
                charts.atlas.pair_label(a, b)
            )));
        }
        data.insert((a, b), e);
    }
    Ok(VectorFieldCocycle::new(data))
}

/// Blow-up of a double scheme along a good center `Z(a) = (y_k + a_k t)` on one chart.
///
/// Changing the splitting on that chart by `D(a) = Σ a_k ∂/∂y_k` turns `Z(a)`
/// into the reduced center `(y_k)`; the result carries the pulled-back bundle.
pub fn blowup_good(s: &DoubleSchemeSpec, c: &CenterSpec) -> Result<DoubleSchemeSpec> {
    let c = &c.normalized(s.nvars())?;
    if c.kind != CenterKind::Good || c.per_chart.len() != 1 {
        return Err(Error::Invalid("a good center is given by pairs on exactly one chart".into()));
    }
    let (name, entry) = c.per_chart.iter().next().expect("one chart");
    let ChartCenter::Pairs(pairs) = entry else {
        return Err(Error::Invalid("a good center is given by (y, a) pairs".into()));
    };
    let report = s.validate();
    if !report.valid {
        return Err(Error::Validation(report.failures.join("; ")));
    }
    let i0 = s.atlas.chart_index(name)?;
    let nvars = s.nvars();
    if pairs.len() != nvars {
        return Err(Error::Invalid(format!(
            "good center needs {nvars} pairs (y, a) for a point, got {}",
            pairs.len()
        )));
    }
    for (y, _) in pairs {
        if !y.is_monomial() {
            return Err(Error::NotMonomial(format!("{y}")));
        }
    }
    let coords = SmoothChart::from_coordinates(pairs.iter().map(|(y, _)| exponent(y)).collect())?;
    let mut shift = crate::atlas::vf_zero(nvars);
    for (k, (_, a)) in pairs.iter().enumerate() {
        shift = vf_add(&shift, &vf_scale(&coords.partial(k), a));
    }
    let charts = blown_atlas(&s.atlas, c)?;
    let alpha = s.full_alpha()?;
    let d = s.d.full(&s.atlas, &alpha)?;
    // Gauge-changed D̃ on the source cover.
    let modified = |i: usize, k: usize| -> VectorField {
        let mut v = d[i][k].clone();
        if k == i0 && i != i0 {
            v = vf_add(&v, &vf_scale(&shift, &alpha[i][i0]));
        }
        if i == i0 && k != i0 {
            v = crate::atlas::vf_sub(&v, &shift);
        }
        v
    };
    let mut e = BTreeMap::new();
    for (a, b) in charts.atlas.pairs() {
        let (i, k) = (charts.origin[a].0, charts.origin[b].0);
        e.insert((a, b), modified(i, k));
    }
    let pullback = charts.pullback(&alpha, &s.alpha.name);
    validated_double(DoubleSchemeSpec::new(
        charts.atlas,
        pullback,
        VectorFieldCocycle::new(e),
    ))
}

/// Blow-up along a Cartier divisor with local equations `x_i`:
/// `θ_ij = χ_{x_i} ∘ δ̄*_ij ∘ χ_{1/x_j}` on the same atlas.
pub fn blowup_hypersurface(s: &MultipleScheme, c: &CenterSpec) -> Result<MultipleScheme> {
    let c = &c.normalized(s.atlas.nvars())?;
    if c.kind != CenterKind::Hypersurface {
        return Err(Error::Invalid("blowup_hypersurface needs a hypersurface center".into()));
    }
    let atlas = &s.atlas;
    let mut eqs = Vec::with_capacity(atlas.len());
    for i in 0..atlas.len() {
        let entry = c.per_chart.get(atlas.name(i)).ok_or_else(|| {
            Error::Invalid(format!("hypersurface center has no equation on chart {}", atlas.name(i)))
        })?;
        let ChartCenter::Generators(g) = entry else {
            return Err(Error::Invalid("hypersurface equations are given as generators".into()));
        };
        if g.len() != 1 {
            return Err(Error::Invalid(format!(
                "chart {}: a hypersurface needs exactly one equation",
                atlas.name(i)
            )));
        }
        if !g[0].is_monomial() {
            return Err(Error::NotMonomial(format!("{}", g[0])));
        }
        if !atlas.charts()[i].ring.contains_poly(&g[0]) {
            return Err(Error::OutsideRing(format!("chart {}: {}", atlas.name(i), g[0])));
        }
        eqs.push(g[0].clone());
    }
    for k in c.per_chart.keys() {
        atlas.chart_index(k)?;
    }
    let full = s.full()?;
    let n = s.order;
    let mut transitions = BTreeMap::new();
    for &(i, j) in s.transitions.keys() {
        let beta = eqs[i].div_exact(&eqs[j]).ok_or_else(|| Error::NotMonomial("equation ratio".into()))?;
        if !atlas.ring(i, j).is_unit(&exponent(&beta)) {
            return Err(Error::Validation(format!(
                "{}: local equations do not agree up to a unit",
                atlas.pair_label(i, j)
            )));
        }
        let theta = full[i][j].conjugate_chi(&eqs[j], &TruncElement::from_poly(n, beta))?;
        transitions.insert((i, j), theta);
    }
    let name = format!("{}(H)", s.bundle_name);
    validated(MultipleScheme::new(atlas.clone(), n, name, transitions)?)
}

/// Compares the class of `blowup_hypersurface(blowup_good(s, Z), P̃)` with the
/// class of `blowup_reduced(s, P)`, where `P` is the reduced point of `Z`.
pub fn successive_identity_check(s: &DoubleSchemeSpec, z: &CenterSpec, bound: i64) -> Result<bool> {
    let good = blowup_good(s, z)?;
    let (name, entry) = z.per_chart.iter().next().expect("checked by blowup_good");
    let ChartCenter::Pairs(pairs) = entry else {
        unreachable!("checked by blowup_good")
    };
    let point = CenterSpec::reduced([(name.as_str(), pairs.iter().map(|(y, _)| y.clone()).collect())]);
    let charts = blown_atlas(&s.atlas, &point)?;
    let left = blowup_hypersurface(&good.to_multiple()?, &charts.exceptional_center())?.to_double()?;
    let right = blowup_reduced(&s.to_multiple()?, &point)?.scheme.to_double()?;
    Ok(iso_decide(&left, &right, bound)?.is_some())
}

/// Reduced point `P = (0:0:1)` on the P² cover.
pub fn point_p() -> CenterSpec {
    CenterSpec::reduced([("U2", vec![LaurentPoly::x(&[0, 1]), LaurentPoly::x(&[1, 1])])])
}

/// `Z(a_1, a_2)`: `(μ + a_1 t, λμ + a_2 t)` on `U2`.
pub fn good_point(a1: LaurentPoly, a2: LaurentPoly) -> CenterSpec {
    CenterSpec::good(
        "U2",
        vec![(LaurentPoly::x(&[0, 1]), a1), (LaurentPoly::x(&[1, 1]), a2)],
    )
}

/// The line `{x0 = 0}` on the P² cover.
pub fn line_x0() -> CenterSpec {
    CenterSpec::hypersurface([
        ("U0", LaurentPoly::one(2)),
        ("U1", LaurentPoly::x(&[1, 0])),
        ("U2", LaurentPoly::x(&[1, 1])),
    ])
}

/// `P̃` on the W cover: `μ` on W2, `λμ` on W3.
pub fn exceptional_curve() -> CenterSpec {
    CenterSpec::hypersurface([
        ("W0", LaurentPoly::one(2)),
        ("W1", LaurentPoly::one(2)),
        ("W2", LaurentPoly::x(&[0, 1])),
        ("W3", LaurentPoly::x(&[1, 1])),
    ])
}

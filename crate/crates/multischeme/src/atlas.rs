//! Chart atlases, line-bundle cocycles and twisted derivation cocycles.
//!
//! Cocycle data is entered on a spanning set of chart pairs; the remaining
//! entries are derived from a root chart. Conventions: `β_ij β_jk = β_ik`,
//! `D_ik = D_ij + α_ij D_jk`, `D_ji = −α_ji D_ij`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{ExponentMonoid, LaurentPoly};
use crate::truncated::{RingMorphism, TruncElement};

/// `Σ U_v ∂/∂x_v`, one coefficient per ambient variable.
pub type VectorField = Vec<LaurentPoly>;

pub fn vf_zero(nvars: usize) -> VectorField {
    vec![LaurentPoly::zero(nvars); nvars]
}

pub fn vf_is_zero(x: &VectorField) -> bool {
    x.iter().all(|c| c.is_zero())
}

pub fn vf_add(a: &VectorField, b: &VectorField) -> VectorField {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vf_sub(a: &VectorField, b: &VectorField) -> VectorField {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vf_scale(a: &VectorField, f: &LaurentPoly) -> VectorField {
    a.iter().map(|x| x * f).collect()
}

pub fn vf_neg(a: &VectorField) -> VectorField {
    a.iter().map(|x| -x).collect()
}

/// `X(f) = Σ U_v ∂f/∂x_v`.
pub fn apply_vector_field(x: &VectorField, f: &LaurentPoly) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero(f.nvars());
    for (v, u) in x.iter().enumerate() {
        if u.is_zero() {
            continue;
        }
        out = &out + &(u * &f.partial_derivative(v)?);
    }
    Ok(out)
}

/// `X(x^g) = x^g Σ g_v U_v / x_v`.
pub fn apply_to_monomial(x: &VectorField, g: &[i64]) -> LaurentPoly {
    let nvars = g.len();
    let mut out = LaurentPoly::zero(nvars);
    for (v, u) in x.iter().enumerate() {
        if g[v] == 0 || u.is_zero() {
            continue;
        }
        let mut shift = g.to_vec();
        shift[v] -= 1;
        out = &out + &u.mul_monomial(&shift).scale(&crate::laurent::int(g[v]));
    }
    out
}

/// The first generator of `ring` whose image under `x` leaves the ring.
pub fn derivation_failure(x: &VectorField, ring: &ExponentMonoid) -> Option<Vec<i64>> {
    ring.generators()
        .iter()
        .find(|g| !ring.contains_poly(&apply_to_monomial(x, g)))
        .cloned()
}

pub fn preserves_ring(x: &VectorField, ring: &ExponentMonoid) -> bool {
    derivation_failure(x, ring).is_none()
}

pub fn format_vector_field(x: &VectorField, names: &[String]) -> String {
    let parts: Vec<String> = x
        .iter()
        .enumerate()
        .filter(|(_, u)| !u.is_zero())
        .map(|(v, u)| format!("({})*d/d{}", u.display_with(names), names[v]))
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub name: String,
    pub ring: ExponentMonoid,
}

impl Chart {
    pub fn new(name: impl Into<String>, generators: Vec<Vec<i64>>) -> Result<Self> {
        Ok(Chart {
            name: name.into(),
            ring: ExponentMonoid::new(generators)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atlas {
    variables: Vec<String>,
    charts: Vec<Chart>,
    overlaps: BTreeMap<(usize, usize), ExponentMonoid>,
}

impl Atlas {
    /// `overlaps` is keyed by index pairs `i < j` and must cover every pair.
    pub fn new(
        variables: Vec<String>,
        charts: Vec<Chart>,
        overlaps: BTreeMap<(usize, usize), ExponentMonoid>,
    ) -> Result<Self> {
        let nvars = variables.len();
        let mut names = BTreeSet::new();
        for c in &charts {
            if !names.insert(c.name.clone()) {
                return Err(Error::Invalid(format!("duplicate chart name `{}`", c.name)));
            }
            if c.ring.dim() != nvars {
                return Err(Error::VarCount {
                    left: nvars,
                    right: c.ring.dim(),
                });
            }
        }
        let mut normalized = BTreeMap::new();
        for ((i, j), m) in overlaps {
            let key = (i.min(j), i.max(j));
            if i == j || j >= charts.len() || i >= charts.len() {
                return Err(Error::Invalid(format!("bad overlap index pair ({i},{j})")));
            }
            normalized.insert(key, m);
        }
        for i in 0..charts.len() {
            for j in (i + 1)..charts.len() {
                let Some(m) = normalized.get(&(i, j)) else {
                    return Err(Error::Invalid(format!(
                        "missing overlap {},{}",
                        charts[i].name, charts[j].name
                    )));
                };
                for c in [i, j] {
                    if !m.includes(&charts[c].ring) {
                        return Err(Error::Invalid(format!(
                            "overlap {},{} does not contain the ring of {}",
                            charts[i].name, charts[j].name, charts[c].name
                        )));
                    }
                }
            }
        }
        Ok(Atlas {
            variables,
            charts,
            overlaps: normalized,
        })
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    pub fn len(&self) -> usize {
        self.charts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.charts.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.charts[i].name
    }

    pub fn chart_index(&self, name: &str) -> Result<usize> {
        self.charts
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| Error::UnknownChart(name.to_string()))
    }

    /// The ring of `U_i ∩ U_j`; the chart ring when `i == j`.
    pub fn ring(&self, i: usize, j: usize) -> &ExponentMonoid {
        if i == j {
            &self.charts[i].ring
        } else {
            &self.overlaps[&(i.min(j), i.max(j))]
        }
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect()
    }

    pub fn triples(&self) -> Vec<(usize, usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    out.push((i, j, k));
                }
            }
        }
        out
    }

    pub fn pair_label(&self, i: usize, j: usize) -> String {
        format!("({},{})", self.name(i), self.name(j))
    }

    /// Same variables count, chart rings and overlap rings in the same order; names are ignored.
    pub fn same_geometry(&self, other: &Atlas) -> bool {
        self.nvars() == other.nvars()
            && self.len() == other.len()
            && self
                .charts
                .iter()
                .zip(&other.charts)
                .all(|(a, b)| a.ring.same_ring(&b.ring))
            && self
                .pairs()
                .into_iter()
                .all(|(i, j)| self.ring(i, j).same_ring(other.ring(i, j)))
    }

    /// BFS order of tree edges `(known, new, given_key)` reaching every chart from chart 0.
    fn spanning_edges(&self, given: &BTreeSet<(usize, usize)>) -> Result<Vec<(usize, usize, (usize, usize))>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        if n == 0 {
            return Ok(out);
        }
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for &(i, j) in given {
                let other = if i == a {
                    j
                } else if j == a {
                    i
                } else {
                    continue;
                };
                if !seen[other] {
                    seen[other] = true;
                    out.push((a, other, (i, j)));
                    queue.push_back(other);
                }
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::NotSpanning(format!(
                "chart {} is not connected to {}",
                self.name(missing),
                self.name(0)
            )));
        }
        Ok(out)
    }

    fn check_keys<T>(&self, data: &BTreeMap<(usize, usize), T>) -> Result<()> {
        for &(i, j) in data.keys() {
            if i == j || i >= self.len() || j >= self.len() {
                return Err(Error::Invalid(format!("bad pair ({i},{j})")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub failures: Vec<String>,
}

impl ValidationReport {
    fn from_failures(failures: Vec<String>) -> Self {
        ValidationReport {
            valid: failures.is_empty(),
            failures,
        }
    }

    fn merge(mut self, other: ValidationReport) -> Self {
        self.failures.extend(other.failures);
        self.valid = self.failures.is_empty();
        self
    }
}

/// Full `n × n` table of derived entries.
pub type PairTable<T> = Vec<Vec<T>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultCocycle {
    pub name: String,
    pub data: BTreeMap<(usize, usize), LaurentPoly>,
}

impl MultCocycle {
    pub fn new(name: impl Into<String>, data: BTreeMap<(usize, usize), LaurentPoly>) -> Self {
        MultCocycle {
            name: name.into(),
            data,
        }
    }

    pub fn trivial(atlas: &Atlas, name: impl Into<String>) -> Self {
        let data = atlas
            .pairs()
            .into_iter()
            .map(|p| (p, LaurentPoly::one(atlas.nvars())))
            .collect();
        MultCocycle::new(name, data)
    }

    /// Every `β_ij`, derived along a spanning tree rooted at chart 0.
    pub fn full(&self, atlas: &Atlas) -> Result<PairTable<LaurentPoly>> {
        atlas.check_keys(&self.data)?;
        for v in self.data.values() {
            if !v.is_monomial() {
                return Err(Error::NotUnit(format!("cocycle entry {v}")));
            }
        }
        let keys: BTreeSet<_> = self.data.keys().copied().collect();
        let n = atlas.len();
        let mut root = vec![LaurentPoly::one(atlas.nvars()); n];
        for (known, new, key) in atlas.spanning_edges(&keys)? {
            let g = &self.data[&key];
            root[new] = if key.0 == known {
                &root[known] * g
            } else {
                &root[known] * &g.inverse()?
            };
        }
        let inv: Vec<LaurentPoly> = root.iter().map(|r| r.inverse()).collect::<Result<_>>()?;
        Ok((0..n)
            .map(|i| (0..n).map(|j| &inv[i] * &root[j]).collect())
            .collect())
    }

    /// Given-if-present, derived otherwise.
    fn entry(&self, full: &PairTable<LaurentPoly>, i: usize, j: usize) -> Result<LaurentPoly> {
        if i == j {
            return Ok(full[i][i].clone());
        }
        if let Some(v) = self.data.get(&(i, j)) {
            return Ok(v.clone());
        }
        if let Some(v) = self.data.get(&(j, i)) {
            return v.inverse();
        }
        Ok(full[i][j].clone())
    }

    pub fn validate(&self, atlas: &Atlas) -> ValidationReport {
        let full = match self.full(atlas) {
            Ok(f) => f,
            Err(e) => return ValidationReport::from_failures(vec![e.to_string()]),
        };
        let mut failures = Vec::new();
        let names = atlas.variables();
        for (i, j) in atlas.pairs() {
            let b = &full[i][j];
            let unit = b
                .as_monomial()
                .map(|(_, e)| atlas.ring(i, j).is_unit(e))
                .unwrap_or(false);
            if !unit {
                failures.push(format!(
                    "{}: entry {} of {} is not a unit of the overlap ring",
                    atlas.pair_label(i, j),
                    b.display_with(names),
                    self.name
                ));
            }
        }
        for (i, j, k) in atlas.triples() {
            let (Ok(ij), Ok(jk), Ok(ik)) = (
                self.entry(&full, i, j),
                self.entry(&full, j, k),
                self.entry(&full, i, k),
            ) else {
                failures.push(format!("{}: non-invertible entry", self.name));
                continue;
            };
            if &ij * &jk != ik {
                failures.push(format!(
                    "triple ({},{},{}): {} cocycle identity fails",
                    atlas.name(i),
                    atlas.name(j),
                    atlas.name(k),
                    self.name
                ));
            }
        }
        ValidationReport::from_failures(failures)
    }

    fn check_same_keys(&self, other: &MultCocycle) -> Result<()> {
        if self.data.keys().ne(other.data.keys()) {
            return Err(Error::AtlasMismatch(format!(
                "cocycles {} and {} are given on different pairs",
                self.name, other.name
            )));
        }
        Ok(())
    }

    pub fn tensor(&self, other: &MultCocycle) -> Result<MultCocycle> {
        self.check_same_keys(other)?;
        let data = self
            .data
            .iter()
            .map(|(k, v)| (*k, v * &other.data[k]))
            .collect();
        Ok(MultCocycle::new(format!("{}*{}", self.name, other.name), data))
    }

    pub fn dual(&self) -> Result<MultCocycle> {
        let data = self
            .data
            .iter()
            .map(|(k, v)| Ok((*k, v.inverse()?)))
            .collect::<Result<_>>()?;
        Ok(MultCocycle::new(format!("{}^-1", self.name), data))
    }

    pub fn power(&self, k: i64) -> Result<MultCocycle> {
        let data = self
            .data
            .iter()
            .map(|(p, v)| Ok((*p, v.pow(k)?)))
            .collect::<Result<_>>()?;
        Ok(MultCocycle::new(format!("{}^{k}", self.name), data))
    }

    /// Same cocycle re-expressed on the pairs in `keys` (derived from the full table).
    pub fn restated(&self, atlas: &Atlas, keys: &[(usize, usize)]) -> Result<MultCocycle> {
        let full = self.full(atlas)?;
        let data = keys.iter().map(|&(i, j)| ((i, j), full[i][j].clone())).collect();
        Ok(MultCocycle::new(self.name.clone(), data))
    }

    /// Equality of the derived full tables.
    pub fn equivalent(&self, other: &MultCocycle, atlas: &Atlas) -> Result<bool> {
        Ok(self.full(atlas)? == other.full(atlas)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorFieldCocycle {
    pub data: BTreeMap<(usize, usize), VectorField>,
}

impl VectorFieldCocycle {
    pub fn new(data: BTreeMap<(usize, usize), VectorField>) -> Self {
        VectorFieldCocycle { data }
    }

    pub fn zero(atlas: &Atlas) -> Self {
        let data = atlas
            .pairs()
            .into_iter()
            .map(|p| (p, vf_zero(atlas.nvars())))
            .collect();
        VectorFieldCocycle { data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.values().all(vf_is_zero)
    }

    pub fn scaled(&self, c: &crate::laurent::Rational) -> Self {
        let data = self
            .data
            .iter()
            .map(|(k, v)| (*k, v.iter().map(|u| u.scale(c)).collect()))
            .collect();
        VectorFieldCocycle { data }
    }

    /// Every `D_ij` given the full `α` table.
    pub fn full(&self, atlas: &Atlas, alpha: &PairTable<LaurentPoly>) -> Result<PairTable<VectorField>> {
        atlas.check_keys(&self.data)?;
        let nvars = atlas.nvars();
        for v in self.data.values() {
            if v.len() != nvars || v.iter().any(|u| u.nvars() != nvars) {
                return Err(Error::VarCount {
                    left: nvars,
                    right: v.len(),
                });
            }
        }
        let keys: BTreeSet<_> = self.data.keys().copied().collect();
        let n = atlas.len();
        let mut root = vec![vf_zero(nvars); n];
        for (known, new, key) in atlas.spanning_edges(&keys)? {
            let g = &self.data[&key];
            let step = vf_scale(g, &alpha[0][key.0]);
            root[new] = if key.0 == known {
                vf_add(&root[known], &step)
            } else {
                vf_sub(&root[known], &step)
            };
        }
        Ok((0..n)
            .map(|i| {
                (0..n)
                    .map(|j| vf_scale(&vf_sub(&root[j], &root[i]), &alpha[i][0]))
                    .collect()
            })
            .collect())
    }
}

/// A primitive double scheme: atlas, associated bundle `α` and derivations `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleSchemeSpec {
    pub atlas: Atlas,
    pub alpha: MultCocycle,
    pub d: VectorFieldCocycle,
}

impl DoubleSchemeSpec {
    pub fn new(atlas: Atlas, alpha: MultCocycle, d: VectorFieldCocycle) -> Self {
        DoubleSchemeSpec { atlas, alpha, d }
    }

    pub fn nvars(&self) -> usize {
        self.atlas.nvars()
    }

    pub fn full_alpha(&self) -> Result<PairTable<LaurentPoly>> {
        self.alpha.full(&self.atlas)
    }

    pub fn full_d(&self) -> Result<PairTable<VectorField>> {
        self.d.full(&self.atlas, &self.full_alpha()?)
    }

    pub fn validate(&self) -> ValidationReport {
        let report = self.alpha.validate(&self.atlas);
        let derived = self
            .full_alpha()
            .and_then(|a| Ok((self.d.full(&self.atlas, &a)?, a)));
        let (full, alpha) = match derived {
            Ok(x) => x,
            Err(e) => return report.merge(ValidationReport::from_failures(vec![e.to_string()])),
        };
        let atlas = &self.atlas;
        let names = atlas.variables();
        let mut failures = Vec::new();
        for (&(i, j), given) in &self.d.data {
            if given != &full[i][j] {
                failures.push(format!(
                    "{}: given derivation {} disagrees with the twisted rule ({})",
                    atlas.pair_label(i, j),
                    format_vector_field(given, names),
                    format_vector_field(&full[i][j], names)
                ));
            }
        }
        for (i, j) in atlas.pairs() {
            for (a, b) in [(i, j), (j, i)] {
                if let Some(g) = derivation_failure(&full[a][b], atlas.ring(a, b)) {
                    failures.push(format!(
                        "{}: derivation {} maps the generator {:?} outside the overlap ring",
                        atlas.pair_label(a, b),
                        format_vector_field(&full[a][b], names),
                        g
                    ));
                }
            }
        }
        for (i, j, k) in atlas.triples() {
            let lhs = vf_add(&full[i][j], &vf_scale(&full[j][k], &alpha[i][j]));
            if lhs != full[i][k] {
                failures.push(format!(
                    "triple ({},{},{}): twisted cocycle rule fails",
                    atlas.name(i),
                    atlas.name(j),
                    atlas.name(k)
                ));
            }
        }
        report.merge(ValidationReport::from_failures(failures))
    }

    /// `v ↦ v + D_ij(v) t`, `t ↦ α_ij t`.
    pub fn transition_endomorphism(&self, i: usize, j: usize) -> Result<RingMorphism> {
        let alpha = self.full_alpha()?;
        let d = self.d.full(&self.atlas, &alpha)?;
        Ok(double_transition(&d[i][j], &alpha[i][j]))
    }

    pub fn to_multiple(&self) -> Result<MultipleScheme> {
        let alpha = self.full_alpha()?;
        let d = self.d.full(&self.atlas, &alpha)?;
        let transitions = self
            .atlas
            .pairs()
            .into_iter()
            .map(|(i, j)| ((i, j), double_transition(&d[i][j], &alpha[i][j])))
            .collect();
        MultipleScheme::new(self.atlas.clone(), 2, self.alpha.name.clone(), transitions)
    }

    /// Same scheme with `D` on every pair `i < j`.
    pub fn with_all_pairs(&self) -> Result<DoubleSchemeSpec> {
        let alpha = self.full_alpha()?;
        let d = self.d.full(&self.atlas, &alpha)?;
        let pairs = self.atlas.pairs();
        Ok(DoubleSchemeSpec {
            atlas: self.atlas.clone(),
            alpha: self.alpha.restated(&self.atlas, &pairs)?,
            d: VectorFieldCocycle::new(pairs.into_iter().map(|(i, j)| ((i, j), d[i][j].clone())).collect()),
        })
    }
}

pub fn double_transition(d: &VectorField, alpha: &LaurentPoly) -> RingMorphism {
    let nvars = d.len();
    let images = (0..nvars)
        .map(|v| {
            TruncElement::new(vec![LaurentPoly::var(nvars, v).expect("in range"), d[v].clone()])
                .expect("same variable count")
        })
        .collect();
    RingMorphism::new(images, TruncElement::from_poly(1, alpha.clone())).expect("valid order-2 morphism")
}

/// A primitive multiple scheme of any multiplicity, by its transition morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipleScheme {
    pub atlas: Atlas,
    pub order: usize,
    pub bundle_name: String,
    pub transitions: BTreeMap<(usize, usize), RingMorphism>,
}

impl MultipleScheme {
    pub fn new(
        atlas: Atlas,
        order: usize,
        bundle_name: impl Into<String>,
        transitions: BTreeMap<(usize, usize), RingMorphism>,
    ) -> Result<Self> {
        atlas.check_keys(&transitions)?;
        for t in transitions.values() {
            if t.order() != order || t.nvars() != atlas.nvars() {
                return Err(Error::OrderMismatch {
                    left: order,
                    right: t.order(),
                });
            }
        }
        Ok(MultipleScheme {
            atlas,
            order,
            bundle_name: bundle_name.into(),
            transitions,
        })
    }

    /// Every `δ*_ij` derived along a spanning tree: `δ*_ij = (δ*_0i)^{-1} ∘ δ*_0j`.
    pub fn full(&self) -> Result<PairTable<RingMorphism>> {
        let n = self.atlas.len();
        let nvars = self.atlas.nvars();
        let keys: BTreeSet<_> = self.transitions.keys().copied().collect();
        let mut root = vec![RingMorphism::identity(self.order, nvars); n];
        for (known, new, key) in self.atlas.spanning_edges(&keys)? {
            let g = &self.transitions[&key];
            root[new] = if key.0 == known {
                root[known].compose(g)?
            } else {
                root[known].compose(&g.inverse()?)?
            };
        }
        let inv: Vec<RingMorphism> = root.iter().map(|r| r.inverse()).collect::<Result<_>>()?;
        (0..n)
            .map(|i| (0..n).map(|j| inv[i].compose(&root[j])).collect())
            .collect()
    }

    pub fn validate(&self) -> ValidationReport {
        let full = match self.full() {
            Ok(f) => f,
            Err(e) => return ValidationReport::from_failures(vec![e.to_string()]),
        };
        let atlas = &self.atlas;
        let mut failures = Vec::new();
        for (&(i, j), given) in &self.transitions {
            if given != &full[i][j] {
                failures.push(format!(
                    "{}: given transition disagrees with the composed one",
                    atlas.pair_label(i, j)
                ));
            }
        }
        for (i, j) in atlas.pairs() {
            for (a, b) in [(i, j), (j, i)] {
                if !full[a][b].preserves(atlas.ring(a, b)) {
                    failures.push(format!(
                        "{}: transition does not preserve the overlap ring",
                        atlas.pair_label(a, b)
                    ));
                }
                if full[a][b].classify_in(atlas.ring(a, b)) != crate::truncated::EndoKind::Iso {
                    failures.push(format!("{}: transition is not an isomorphism", atlas.pair_label(a, b)));
                }
            }
        }
        for (i, j, k) in atlas.triples() {
            match full[i][j].compose(&full[j][k]) {
                Ok(c) if c == full[i][k] => {}
                _ => failures.push(format!(
                    "triple ({},{},{}): composition identity fails",
                    atlas.name(i),
                    atlas.name(j),
                    atlas.name(k)
                )),
            }
        }
        ValidationReport::from_failures(failures)
    }

    /// The associated line bundle `ε_0` on the given pairs.
    pub fn associated_bundle(&self) -> MultCocycle {
        let data = self
            .transitions
            .iter()
            .map(|(k, t)| (*k, t.epsilon().constant_term().clone()))
            .collect();
        MultCocycle::new(self.bundle_name.clone(), data)
    }

    /// Reads `(α, D)` back from order-2 transitions.
    pub fn to_double(&self) -> Result<DoubleSchemeSpec> {
        if self.order != 2 {
            return Err(Error::Unsupported(format!(
                "double-scheme data needs order 2, got {}",
                self.order
            )));
        }
        let d = self
            .transitions
            .iter()
            .map(|(k, t)| (*k, t.images().iter().map(|im| im.coeff(1).clone()).collect()))
            .collect();
        Ok(DoubleSchemeSpec::new(
            self.atlas.clone(),
            self.associated_bundle(),
            VectorFieldCocycle::new(d),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::int;

    fn x(e: [i64; 2]) -> LaurentPoly {
        LaurentPoly::x(&e)
    }

    fn p2_atlas() -> Atlas {
        let charts = vec![
            Chart::new("U0", vec![vec![-1, 0], vec![-1, -1]]).unwrap(),
            Chart::new("U1", vec![vec![1, 0], vec![0, -1]]).unwrap(),
            Chart::new("U2", vec![vec![0, 1], vec![1, 1]]).unwrap(),
        ];
        let overlaps = BTreeMap::from([
            ((0, 1), ExponentMonoid::new(vec![vec![1, 0], vec![-1, 0], vec![0, -1]]).unwrap()),
            ((0, 2), ExponentMonoid::new(vec![vec![0, 1], vec![1, 1], vec![-1, -1]]).unwrap()),
            ((1, 2), ExponentMonoid::new(vec![vec![1, 0], vec![0, 1], vec![0, -1]]).unwrap()),
        ]);
        Atlas::new(vec!["lambda".into(), "mu".into()], charts, overlaps).unwrap()
    }

    #[test]
    fn vector_field_action() {
        let d = vec![LaurentPoly::zero(2), x([2, 2]).scale(&int(-1))];
        assert_eq!(apply_to_monomial(&d, &[1, 1]), x([3, 2]).scale(&int(-1)));
        let f = &x([1, 1]) + &x([0, 2]);
        let direct = apply_vector_field(&d, &f).unwrap();
        let by_terms = &apply_to_monomial(&d, &[1, 1]) + &apply_to_monomial(&d, &[0, 2]);
        assert_eq!(direct, by_terms);
    }

    #[test]
    fn cocycle_derivation_and_tensor() {
        let atlas = p2_atlas();
        let beta = MultCocycle::new(
            "O(1)",
            BTreeMap::from([((0, 1), x([-1, 0])), ((1, 2), x([0, -1]))]),
        );
        let full = beta.full(&atlas).unwrap();
        assert_eq!(full[0][2], x([-1, -1]));
        assert_eq!(full[2][0], x([1, 1]));
        assert!(beta.validate(&atlas).valid);
        let dd = beta.dual().unwrap().dual().unwrap();
        assert_eq!(dd.data, beta.data);
        let triv = beta.power(0).unwrap();
        assert!(triv.data.values().all(|v| v == &LaurentPoly::one(2)));
        let cubed = beta.tensor(&beta).unwrap().tensor(&beta).unwrap();
        assert_eq!(cubed.data, beta.power(3).unwrap().data);
    }

    #[test]
    fn non_unit_is_rejected() {
        let atlas = p2_atlas();
        let bad = MultCocycle::new("bad", BTreeMap::from([((0, 1), x([0, 1])), ((1, 2), x([0, 1]))]));
        let report = bad.validate(&atlas);
        assert!(!report.valid);
    }

    #[test]
    fn missing_chart_is_not_spanning() {
        let atlas = p2_atlas();
        let c = MultCocycle::new("c", BTreeMap::from([((0, 1), x([0, 0]))]));
        assert!(matches!(c.full(&atlas), Err(Error::NotSpanning(_))));
    }
}

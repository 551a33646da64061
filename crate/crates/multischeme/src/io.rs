//! The JSON atlas interchange format.
//!
//! Pair keys are the two chart names in sorted order joined by `,`; data
//! stored under a key is oriented from the first name to the second.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::atlas::{Atlas, Chart, DoubleSchemeSpec, MultCocycle, MultipleScheme, VectorField, VectorFieldCocycle};
use crate::error::{Error, Result};
use crate::laurent::{ExponentMonoid, ExponentVector, LaurentPoly};
use crate::truncated::{RingMorphism, TruncElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartEntry {
    pub name: String,
    pub monoid_generators: Vec<ExponentVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubleEntry {
    pub alpha: String,
    #[serde(rename = "D")]
    pub d: BTreeMap<String, VectorField>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionEntry {
    pub images: Vec<TruncElement>,
    pub epsilon: TruncElement,
}

/// Transition morphisms of a multiplicity-`n` scheme, for `n > 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionsEntry {
    pub bundle: String,
    pub maps: BTreeMap<String, TransitionEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtlasFile {
    pub variables: Vec<String>,
    pub truncation_order: usize,
    pub charts: Vec<ChartEntry>,
    pub overlaps: BTreeMap<String, Vec<ExponentVector>>,
    #[serde(default)]
    pub cocycles: BTreeMap<String, BTreeMap<String, LaurentPoly>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub double_structure: Option<DoubleEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transitions: Option<TransitionsEntry>,
}

fn pair_key(atlas: &Atlas, i: usize, j: usize) -> (String, bool) {
    let (a, b) = (atlas.name(i), atlas.name(j));
    if a <= b {
        (format!("{a},{b}"), false)
    } else {
        (format!("{b},{a}"), true)
    }
}

/// Chart indices `(i, j)` for a key `"a,b"`, oriented from `a` to `b`.
fn parse_key(atlas: &Atlas, key: &str) -> Result<(usize, usize)> {
    let (a, b) = key
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("pair key `{key}` is not of the form `a,b`")))?;
    if a > b {
        return Err(Error::Parse(format!("pair key `{key}` is not in sorted order")));
    }
    Ok((atlas.chart_index(a)?, atlas.chart_index(b)?))
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
}

impl AtlasFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }

    /// Pretty-printed with a trailing newline; parsing and re-rendering is the identity.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn atlas(&self) -> Result<Atlas> {
        let nvars = self.variables.len();
        let charts = self
            .charts
            .iter()
            .map(|c| {
                Ok(Chart {
                    name: c.name.clone(),
                    ring: monoid(&c.monoid_generators, nvars)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let index = |name: &str| {
            charts
                .iter()
                .position(|c| c.name == name)
                .ok_or_else(|| Error::UnknownChart(name.to_string()))
        };
        let mut overlaps = BTreeMap::new();
        for (key, gens) in &self.overlaps {
            let (a, b) = key
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("pair key `{key}` is not of the form `a,b`")))?;
            overlaps.insert((index(a)?, index(b)?), monoid(gens, nvars)?);
        }
        Atlas::new(self.variables.clone(), charts, overlaps)
    }

    pub fn cocycle(&self, atlas: &Atlas, name: &str) -> Result<MultCocycle> {
        let raw = self
            .cocycles
            .get(name)
            .ok_or_else(|| Error::Invalid(format!("no cocycle named `{name}`")))?;
        let data = raw
            .iter()
            .map(|(k, v)| Ok((parse_key(atlas, k)?, v.clone().with_nvars(atlas.nvars())?)))
            .collect::<Result<_>>()?;
        Ok(MultCocycle::new(name, data))
    }

    pub fn cocycle_list(&self, atlas: &Atlas) -> Result<Vec<MultCocycle>> {
        self.cocycles.keys().map(|n| self.cocycle(atlas, n)).collect()
    }

    pub fn double(&self) -> Result<DoubleSchemeSpec> {
        let entry = self
            .double_structure
            .as_ref()
            .ok_or_else(|| Error::Invalid("file has no double structure".into()))?;
        if self.truncation_order != 2 {
            return Err(Error::Invalid(format!(
                "a double structure needs truncation order 2, got {}",
                self.truncation_order
            )));
        }
        let atlas = self.atlas()?;
        let alpha = self.cocycle(&atlas, &entry.alpha)?;
        let nvars = atlas.nvars();
        let d = entry
            .d
            .iter()
            .map(|(k, v)| {
                let v = v
                    .iter()
                    .map(|u| u.clone().with_nvars(nvars))
                    .collect::<Result<VectorField>>()?;
                Ok((parse_key(&atlas, k)?, v))
            })
            .collect::<Result<_>>()?;
        Ok(DoubleSchemeSpec::new(atlas, alpha, VectorFieldCocycle::new(d)))
    }

    /// The transition morphisms, from `transitions` or else from the double structure.
    pub fn multiple(&self) -> Result<MultipleScheme> {
        let Some(entry) = &self.transitions else {
            return self.double()?.to_multiple();
        };
        let atlas = self.atlas()?;
        let maps = entry
            .maps
            .iter()
            .map(|(k, t)| Ok((parse_key(&atlas, k)?, RingMorphism::new(t.images.clone(), t.epsilon.clone())?)))
            .collect::<Result<_>>()?;
        MultipleScheme::new(atlas, self.truncation_order, entry.bundle.clone(), maps)
    }

    fn skeleton(atlas: &Atlas, order: usize) -> Self {
        let charts = atlas
            .charts()
            .iter()
            .map(|c| ChartEntry {
                name: c.name.clone(),
                monoid_generators: c.ring.generators().to_vec(),
            })
            .collect();
        let overlaps = atlas
            .pairs()
            .into_iter()
            .map(|(i, j)| (pair_key(atlas, i, j).0, atlas.ring(i, j).generators().to_vec()))
            .collect();
        AtlasFile {
            variables: atlas.variables().to_vec(),
            truncation_order: order,
            charts,
            overlaps,
            cocycles: BTreeMap::new(),
            double_structure: None,
            transitions: None,
        }
    }

    /// Adds a cocycle, re-orienting entries to the sorted-name convention.
    pub fn add_cocycle(&mut self, atlas: &Atlas, c: &MultCocycle) -> Result<()> {
        let mut out = BTreeMap::new();
        for (&(i, j), v) in &c.data {
            let (key, flip) = pair_key(atlas, i, j);
            out.insert(key, if flip { v.inverse()? } else { v.clone() });
        }
        self.cocycles.insert(c.name.clone(), out);
        Ok(())
    }

    pub fn from_atlas(atlas: &Atlas) -> Self {
        Self::skeleton(atlas, 1)
    }

    pub fn from_double(s: &DoubleSchemeSpec) -> Result<Self> {
        let mut file = Self::skeleton(&s.atlas, 2);
        file.add_cocycle(&s.atlas, &s.alpha)?;
        let alpha = s.full_alpha()?;
        let full = s.d.full(&s.atlas, &alpha)?;
        let d = s
            .d
            .data
            .iter()
            .map(|(&(i, j), v)| {
                let (key, flip) = pair_key(&s.atlas, i, j);
                (key, if flip { full[j][i].clone() } else { v.clone() })
            })
            .collect();
        file.double_structure = Some(DoubleEntry {
            alpha: s.alpha.name.clone(),
            d,
        });
        Ok(file)
    }

    /// Order-2 schemes are written as double structures.
    pub fn from_multiple(s: &MultipleScheme) -> Result<Self> {
        if s.order == 2 {
            return Self::from_double(&s.to_double()?);
        }
        let mut file = Self::skeleton(&s.atlas, s.order);
        file.add_cocycle(&s.atlas, &s.associated_bundle())?;
        let mut maps = BTreeMap::new();
        for (&(i, j), t) in &s.transitions {
            let (key, flip) = pair_key(&s.atlas, i, j);
            let t = if flip { t.inverse()? } else { t.clone() };
            maps.insert(
                key,
                TransitionEntry {
                    images: t.images().to_vec(),
                    epsilon: t.epsilon().clone(),
                },
            );
        }
        file.transitions = Some(TransitionsEntry {
            bundle: s.bundle_name.clone(),
            maps,
        });
        Ok(file)
    }
}

fn monoid(gens: &[ExponentVector], nvars: usize) -> Result<ExponentMonoid> {
    let m = ExponentMonoid::new(gens.to_vec())?;
    if m.dim() != nvars {
        return Err(Error::VarCount {
            left: nvars,
            right: m.dim(),
        });
    }
    Ok(m)
}

/// Reads a file and returns it with its parsed atlas.
pub fn read_atlas_file(path: &std::path::Path) -> Result<AtlasFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    AtlasFile::parse(&text)
}

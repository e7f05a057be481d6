//! Case files: the JSON description of a causal root datum, the built-in
//! catalog of group-type cases, and loading with the `CAUSAL_CFN_CASE_DIR`
//! override.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cfn::HatSystem;
use crate::error::{Error, Result};
use crate::rat::{parse_rat, RationalVector};
use crate::roots::{build_classical, group_double, make_causal, CausalRootDatum, Family, RootKind};

/// Environment variable overriding the built-in case catalog with a
/// directory of `*.json` case files.
pub const CASE_DIR_ENV: &str = "CAUSAL_CFN_CASE_DIR";

/// Multiplicities: one value for every root, or per-root entries.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MultSpec {
    Uniform(u32),
    PerRoot(Vec<MultEntry>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultEntry {
    /// Root coordinates as `"p/q"` strings.
    pub root: Vec<String>,
    pub m: u32,
    #[serde(default)]
    pub m2: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HatRootEntry {
    pub root: Vec<String>,
    /// `"compact"` or `"noncompact"`.
    pub kind: String,
    #[serde(default = "one")]
    pub count: u32,
}

fn one() -> u32 {
    1
}

/// JSON case description.
///
/// `type: "group"` derives everything from `(family, rank, split)`;
/// `type: "custom"` additionally needs `z0` and `mults`. Rational
/// coordinates are written as `"p/q"` strings, never floats.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CaseFile {
    pub label: String,
    pub family: String,
    pub rank: usize,
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z0: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mults: Option<MultSpec>,
    /// Optional Jacobian exponent splits `[m_plus, m_minus]` for the three
    /// restricted-root classes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jac_split: Option<[[u32; 2]; 3]>,
    /// Optional full positive system for the group formal dimension, needed
    /// for custom cases.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hat_system: Option<Vec<HatRootEntry>>,
}

fn parse_vec(coords: &[String]) -> Result<RationalVector> {
    Ok(RationalVector::new(coords.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?))
}

impl CaseFile {
    pub fn group(label: &str, family: Family, rank: usize, split: Option<usize>) -> CaseFile {
        CaseFile {
            label: label.to_string(),
            family: family.to_string(),
            rank,
            kind: "group".to_string(),
            split,
            z0: None,
            mults: None,
            jac_split: None,
            hat_system: None,
        }
    }

    pub fn to_datum(&self) -> Result<CausalRootDatum> {
        let family: Family = self.family.parse()?;
        match self.kind.as_str() {
            "group" => {
                let mut datum = group_double(family, self.rank, self.split)?;
                datum.label = self.label.clone();
                Ok(datum)
            }
            "custom" => {
                let (all, positive) = build_classical(family, self.rank)?;
                let z0 = parse_vec(
                    self.z0
                        .as_ref()
                        .ok_or_else(|| Error::Parse("custom case needs z0".into()))?,
                )?;
                let mults = self
                    .mults
                    .as_ref()
                    .ok_or_else(|| Error::Parse("custom case needs mults".into()))?;
                let lookup: Vec<(RationalVector, (u32, u32))> = match mults {
                    MultSpec::Uniform(_) => Vec::new(),
                    MultSpec::PerRoot(entries) => entries
                        .iter()
                        .map(|e| Ok((parse_vec(&e.root)?, (e.m, e.m2))))
                        .collect::<Result<Vec<_>>>()?,
                };
                let mult_fn = |v: &RationalVector| -> Option<(u32, u32)> {
                    match mults {
                        MultSpec::Uniform(m) => Some((*m, 0)),
                        MultSpec::PerRoot(_) => lookup
                            .iter()
                            .find(|(r, _)| r == v || r == &v.neg())
                            .map(|(_, m)| *m),
                    }
                };
                make_causal(&all, &positive, &z0, mult_fn, &self.label)
            }
            other => Err(Error::Parse(format!("unknown case type `{other}`"))),
        }
    }

    /// The restricted root system of the case, with the case's Jacobian
    /// exponent split installed when one is given.
    pub fn restricted(&self, datum: &CausalRootDatum) -> Result<crate::cayley::RestrictedSystem> {
        let gset = crate::cayley::find_strongly_orthogonal(datum)?;
        let rsys = crate::cayley::restricted_system(datum, &gset)?;
        match self.jac_split {
            Some(split) => crate::cayley::jacobian_exponents(
                &rsys,
                [
                    (split[0][0], split[0][1]),
                    (split[1][0], split[1][1]),
                    (split[2][0], split[2][1]),
                ],
            ),
            None => Ok(rsys),
        }
    }

    /// The hat system for the group formal dimension: derived for group
    /// cases, taken from the case file otherwise.
    pub fn hat(&self, datum: &CausalRootDatum) -> Result<Option<HatSystem>> {
        if let Some(entries) = &self.hat_system {
            let positive = entries
                .iter()
                .map(|e| {
                    let kind = match e.kind.as_str() {
                        "compact" => RootKind::Compact,
                        "noncompact" => RootKind::Noncompact,
                        other => {
                            return Err(Error::Parse(format!("unknown root kind `{other}`")))
                        }
                    };
                    Ok((parse_vec(&e.root)?, kind, e.count))
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(Some(HatSystem::new(datum.ambient_dim, positive)));
        }
        if datum.group_type {
            return Ok(Some(HatSystem::group_hat(datum)?));
        }
        Ok(None)
    }
}

/// Built-in catalog: group-type cases of rank up to 3.
pub fn builtin_cases() -> Vec<CaseFile> {
    vec![
        CaseFile::group("group:su11", Family::C, 1, None),
        CaseFile::group("group:sp4r", Family::C, 2, None),
        CaseFile::group("group:sp6r", Family::C, 3, None),
        CaseFile::group("group:su21", Family::A, 2, Some(2)),
        CaseFile::group("group:so23", Family::B, 2, None),
        CaseFile::group("group:sostar6", Family::D, 3, None),
    ]
}

/// The active catalog: the contents of `CAUSAL_CFN_CASE_DIR` when set (all
/// `*.json` files, sorted by name), the built-ins otherwise.
pub fn catalog() -> Result<Vec<CaseFile>> {
    match std::env::var(CASE_DIR_ENV) {
        Ok(dir) if !dir.is_empty() => {
            let mut paths: Vec<_> = std::fs::read_dir(&dir)?
                .filter_map(|e| e.ok())
                .map(|e| e.path())
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            paths.sort();
            paths
                .into_iter()
                .map(|p| {
                    let text = std::fs::read_to_string(&p)?;
                    Ok(serde_json::from_str(&text)?)
                })
                .collect()
        }
        _ => Ok(builtin_cases()),
    }
}

/// Load a case by file path or catalog label.
pub fn load_case(path_or_label: &str) -> Result<CaseFile> {
    let p = Path::new(path_or_label);
    if p.is_file() {
        let text = std::fs::read_to_string(p)?;
        return Ok(serde_json::from_str(&text)?);
    }
    catalog()?
        .into_iter()
        .find(|c| c.label == path_or_label)
        .ok_or_else(|| Error::UnknownCase(path_or_label.to_string()))
}

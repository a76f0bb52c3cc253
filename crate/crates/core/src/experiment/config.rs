use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::closure::ClosureBudget;
use crate::error::{Error, Result};
use crate::group::{GroupDescriptor, GroupElement};
use crate::walk::{SymmetricMeasure, Weight};

/// A scenario file: TOML with `[scenario]`, `[measure]`, `[budget]` and
/// `[analysis]` tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: ScenarioSection,
    #[serde(default)]
    pub measure: MeasureSection,
    #[serde(default)]
    pub budget: BudgetSection,
    #[serde(default)]
    pub analysis: AnalysisSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSection {
    pub name: String,
    pub group: String,
    pub steps: usize,
    #[serde(default = "one")]
    pub tail_index: usize,
    pub seeds: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureSection {
    /// `standard`, `heavy-tail` or `atoms`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minor_weight: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub atoms: Vec<AtomSpec>,
}

impl Default for MeasureSection {
    fn default() -> Self {
        MeasureSection {
            kind: "standard".into(),
            alpha: None,
            cutoff: None,
            minor_weight: None,
            atoms: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomSpec {
    pub element: String,
    /// Exact rational such as `1/4`.
    pub weight: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetSection {
    #[serde(default = "default_radius")]
    pub radius: u32,
    #[serde(default = "default_max_elements")]
    pub max_elements: usize,
    #[serde(default = "default_max_products")]
    pub max_products: u64,
}

impl Default for BudgetSection {
    fn default() -> Self {
        BudgetSection {
            radius: default_radius(),
            max_elements: default_max_elements(),
            max_products: default_max_products(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisSection {
    /// Prefix lengths `N` for `ar-estimate`; empty means `[steps]`.
    #[serde(default)]
    pub prefix_lengths: Vec<usize>,
    /// Coverage radius; defaults to the budget radius.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coverage_radius: Option<u32>,
    #[serde(default = "default_j0")]
    pub j0: u64,
    #[serde(default = "default_cancel_lengths")]
    pub cancel_lengths: Vec<usize>,
    #[serde(default = "default_cancel_trials")]
    pub cancel_trials: u64,
    #[serde(default = "default_pool_size")]
    pub pool_size: usize,
    #[serde(default = "default_reflected_steps")]
    pub reflected_steps: u64,
    /// Walk prefix whose closure feeds the growth profile.
    #[serde(default = "default_growth_generators")]
    pub growth_generators: usize,
    #[serde(default = "default_growth_radius")]
    pub growth_radius: u32,
}

impl Default for AnalysisSection {
    fn default() -> Self {
        AnalysisSection {
            prefix_lengths: Vec::new(),
            coverage_radius: None,
            j0: default_j0(),
            cancel_lengths: default_cancel_lengths(),
            cancel_trials: default_cancel_trials(),
            pool_size: default_pool_size(),
            reflected_steps: default_reflected_steps(),
            growth_generators: default_growth_generators(),
            growth_radius: default_growth_radius(),
        }
    }
}

fn one() -> usize {
    1
}
fn default_radius() -> u32 {
    5
}
fn default_max_elements() -> usize {
    5_000_000
}
fn default_max_products() -> u64 {
    500_000_000
}
fn default_j0() -> u64 {
    crate::free::DEFAULT_THRESHOLD
}
fn default_cancel_lengths() -> Vec<usize> {
    vec![16, 64, 256]
}
fn default_cancel_trials() -> u64 {
    10_000
}
fn default_pool_size() -> usize {
    64
}
fn default_reflected_steps() -> u64 {
    140_000
}
fn default_growth_generators() -> usize {
    50
}
fn default_growth_radius() -> u32 {
    8
}

fn config_err(path: &str, message: impl Into<String>) -> Error {
    Error::Config {
        path: path.into(),
        message: message.into(),
    }
}

fn parse_weight(path: &str, text: &str) -> Result<Weight> {
    let parsed = match text.split_once('/') {
        Some((p, q)) => p
            .trim()
            .parse::<i128>()
            .ok()
            .zip(q.trim().parse::<i128>().ok()),
        None => text.trim().parse::<i128>().ok().map(|p| (p, 1)),
    };
    match parsed {
        Some((p, q)) if q != 0 => Ok(Weight::new(p, q)),
        _ => Err(config_err(path, format!("{text:?} is not a rational p/q"))),
    }
}

/// A config whose fields have been checked by the modules that own them.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub config: ScenarioConfig,
    pub descriptor: GroupDescriptor,
    pub measure: SymmetricMeasure,
    pub budget: ClosureBudget,
    pub hash: String,
}

impl Scenario {
    pub fn coverage_radius(&self) -> u32 {
        self.config
            .analysis
            .coverage_radius
            .unwrap_or(self.budget.radius)
    }

    pub fn prefix_lengths(&self) -> Vec<usize> {
        match self.config.analysis.prefix_lengths.is_empty() {
            true => vec![self.config.scenario.steps],
            false => self.config.analysis.prefix_lengths.clone(),
        }
    }

    /// Steps to simulate so every prefix length is available.
    pub fn walk_length(&self) -> usize {
        self.prefix_lengths()
            .into_iter()
            .chain([self.config.scenario.steps])
            .max()
            .unwrap_or(0)
    }
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| config_err("<toml>", e.message().to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_err(&path.display().to_string(), e.to_string()))?;
        Self::from_toml(&text)
    }

    /// Canonical TOML: fixed table and key order, defaults spelled out.
    pub fn canonical_text(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// First 16 hex digits of the SHA-256 of the canonical text.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.canonical_text().as_bytes());
        hex::encode(digest)[..16].to_string()
    }

    pub fn validate(&self) -> Result<Scenario> {
        let s = &self.scenario;
        let descriptor: GroupDescriptor = s
            .group
            .parse()
            .map_err(|e: Error| config_err("scenario.group", e.to_string()))?;
        if s.steps == 0 {
            return Err(config_err("scenario.steps", "must be positive"));
        }
        if s.seeds.is_empty() {
            return Err(config_err("scenario.seeds", "at least one seed required"));
        }
        if s.tail_index == 0 {
            return Err(config_err("scenario.tail_index", "must be at least 1"));
        }
        let measure = self.build_measure(descriptor)?;
        let b = &self.budget;
        let budget = ClosureBudget::new(b.radius, b.max_elements, b.max_products)
            .map_err(|e| config_err("budget", e.to_string()))?;
        if descriptor.has_capped_metric() && b.radius > crate::group::WORD_LENGTH_CAP {
            return Err(config_err(
                "budget.radius",
                format!(
                    "exceeds the word-length cap {} for {descriptor}",
                    crate::group::WORD_LENGTH_CAP
                ),
            ));
        }
        let a = &self.analysis;
        if let Some(r) = a.coverage_radius {
            if r == 0 || r > b.radius {
                return Err(config_err(
                    "analysis.coverage_radius",
                    "must lie in 1..=budget.radius",
                ));
            }
        }
        if let Some(&n) = a.prefix_lengths.iter().find(|&&n| n < s.tail_index) {
            return Err(config_err(
                "analysis.prefix_lengths",
                format!("prefix length {n} is shorter than scenario.tail_index"),
            ));
        }
        if a.pool_size == 0 || a.cancel_trials == 0 {
            return Err(config_err(
                "analysis",
                "pool_size and cancel_trials must be positive",
            ));
        }
        if a.growth_generators == 0 || a.growth_radius == 0 {
            return Err(config_err(
                "analysis",
                "growth_generators and growth_radius must be positive",
            ));
        }
        Ok(Scenario {
            config: self.clone(),
            descriptor,
            measure,
            budget,
            hash: self.hash(),
        })
    }

    fn build_measure(&self, descriptor: GroupDescriptor) -> Result<SymmetricMeasure> {
        let m = &self.measure;
        let wrap = |e: Error| config_err("measure", e.to_string());
        match m.kind.as_str() {
            "standard" => Ok(SymmetricMeasure::uniform_standard(descriptor)),
            "heavy-tail" => {
                if descriptor != GroupDescriptor::ZPower(2) {
                    return Err(config_err(
                        "measure.kind",
                        "heavy-tail is defined on ZPower(2) only",
                    ));
                }
                let alpha = m
                    .alpha
                    .ok_or_else(|| config_err("measure.alpha", "required for heavy-tail"))?;
                let cutoff = m
                    .cutoff
                    .ok_or_else(|| config_err("measure.cutoff", "required for heavy-tail"))?;
                let minor = parse_weight(
                    "measure.minor_weight",
                    m.minor_weight.as_deref().unwrap_or("1/10"),
                )?;
                SymmetricMeasure::heavy_tail_z2(alpha, cutoff, minor).map_err(wrap)
            }
            "atoms" => {
                if m.atoms.is_empty() {
                    return Err(config_err("measure.atoms", "at least one atom required"));
                }
                let mut atoms = Vec::with_capacity(m.atoms.len());
                for (i, a) in m.atoms.iter().enumerate() {
                    let g = GroupElement::parse(descriptor, &a.element).map_err(|e| {
                        config_err(&format!("measure.atoms[{i}].element"), e.to_string())
                    })?;
                    let w = parse_weight(&format!("measure.atoms[{i}].weight"), &a.weight)?;
                    atoms.push((g, w));
                }
                SymmetricMeasure::new(descriptor, atoms).map_err(wrap)
            }
            other => Err(config_err(
                "measure.kind",
                format!("unknown kind {other:?}; expected standard, heavy-tail or atoms"),
            )),
        }
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const DEFAULTS: &str = include_str!("thresholds.toml");

/// Minimum success fractions. Files may set any subset of the keys; the
/// rest keep the built-in values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Thresholds {
    pub ac_distinct: f64,
    pub bes_distinct: f64,
    pub triangle_sound_verified: f64,
    pub triangle_anonymous_verified: f64,
    pub ecc_lemma_satisfied: f64,
    pub collapse_solved: f64,
    pub sb4_solved: f64,
    pub switch_found: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        toml::from_str(DEFAULTS).expect("built-in thresholds parse")
    }
}

impl Thresholds {
    /// Built-in values overridden by the keys of `text`.
    pub fn with_overrides(text: &str) -> Result<Thresholds> {
        let bad = |e: toml::de::Error| Error::Input(format!("thresholds: {}", e.message()));
        let mut table: toml::Table = toml::from_str(DEFAULTS).expect("built-in thresholds parse");
        let over: toml::Table = toml::from_str(text).map_err(bad)?;
        table.extend(over);
        let t: Thresholds = toml::Table::try_into(table).map_err(bad)?;
        if let Some((k, v)) = t.pairs().into_iter().find(|(_, v)| !(0.0..=1.0).contains(v)) {
            return Err(Error::Input(format!("thresholds: {k} = {v} outside [0, 1]")));
        }
        Ok(t)
    }

    pub fn load(path: &std::path::Path) -> Result<Thresholds> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        Thresholds::with_overrides(&text)
    }

    /// The value named `key`, as spelled in the file.
    pub fn get(&self, key: &str) -> Option<f64> {
        self.pairs().into_iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }

    pub fn keys() -> Vec<&'static str> {
        Thresholds::default().pairs().into_iter().map(|(k, _)| k).collect()
    }

    fn pairs(&self) -> [(&'static str, f64); 8] {
        [
            ("ac_distinct", self.ac_distinct),
            ("bes_distinct", self.bes_distinct),
            ("triangle_sound_verified", self.triangle_sound_verified),
            ("triangle_anonymous_verified", self.triangle_anonymous_verified),
            ("ecc_lemma_satisfied", self.ecc_lemma_satisfied),
            ("collapse_solved", self.collapse_solved),
            ("sb4_solved", self.sb4_solved),
            ("switch_found", self.switch_found),
        ]
    }
}

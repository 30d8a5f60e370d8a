use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::wire::ceil_log2;

/// Communication model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    /// Anonymous broadcast; inboxes are sets.
    Sb,
    /// Anonymous broadcast; inboxes are multisets.
    Mb,
    Sbstar,
    Mbstar,
    /// Unique identifiers, bounded messages.
    BCongest,
    /// Unique identifiers, unbounded messages.
    Local,
}

impl ModelKind {
    pub const ALL: [ModelKind; 6] =
        [ModelKind::Sb, ModelKind::Mb, ModelKind::Sbstar, ModelKind::Mbstar, ModelKind::BCongest, ModelKind::Local];

    /// Whether equal messages collapse to one inbox entry.
    pub fn delivers_sets(self) -> bool {
        matches!(self, ModelKind::Sb | ModelKind::Sbstar)
    }

    pub fn has_ids(self) -> bool {
        matches!(self, ModelKind::BCongest | ModelKind::Local)
    }

    pub fn has_budget(self) -> bool {
        matches!(self, ModelKind::Sbstar | ModelKind::Mbstar | ModelKind::BCongest)
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Sb => "SB",
            ModelKind::Mb => "MB",
            ModelKind::Sbstar => "SB*",
            ModelKind::Mbstar => "MB*",
            ModelKind::BCongest => "B-CONGEST",
            ModelKind::Local => "LOCAL",
        }
    }
}

/// Default per-message budget for bounded models: `8 * max(ceil(log2 n), 4)`.
pub fn default_budget(n: usize) -> u64 {
    8 * ceil_log2(n as u64).max(4) as u64
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for ModelKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let k = s.to_ascii_lowercase().replace(['-', '_'], "");
        Ok(match k.as_str() {
            "sb" => ModelKind::Sb,
            "mb" => ModelKind::Mb,
            "sb*" | "sbstar" => ModelKind::Sbstar,
            "mb*" | "mbstar" => ModelKind::Mbstar,
            "bcongest" | "congest" => ModelKind::BCongest,
            "local" => ModelKind::Local,
            _ => return Err(format!("unknown model {s:?}")),
        })
    }
}

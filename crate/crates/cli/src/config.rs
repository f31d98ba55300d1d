//! Run configuration read from a TOML file. Command-line flags win over
//! file values.
//!
//! ```toml
//! [run]
//! op = "rho_cup"
//! mode = "coherent"
//! exceptions = "children"
//!
//! [exceptions]
//! children = ["John"]
//!
//! [agm]
//! logic = "pl"
//! pool_depth = 2
//! ```

use beliefrev::Error;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub run: RunSection,
    /// Named exception lists, each a list of concepts in DL syntax.
    #[serde(default)]
    pub exceptions: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub agm: AgmSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub op: Option<String>,
    pub mode: Option<String>,
    pub k: Option<usize>,
    pub max_cap: Option<usize>,
    pub superset_limit: Option<usize>,
    pub allow_non_exhaustive: Option<bool>,
    pub bound: Option<usize>,
    pub format: Option<String>,
    pub context: Option<String>,
    /// Name of an entry of `[exceptions]`.
    pub exceptions: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgmSection {
    pub logic: Option<String>,
    pub pool_depth: Option<usize>,
    pub atoms: Option<usize>,
    pub sentences: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn exception_set(&self, name: &str) -> Result<&[String], Error> {
        self.exceptions
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::Config(format!("no exception set named `{name}`")))
    }
}

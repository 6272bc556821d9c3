//! Flat key=value run configuration.
//!
//! A config file supplies defaults for flags of the same name; values given
//! on the command line win. Every run records its resolved parameters, and
//! output files start with a header carrying the parameter digest and the
//! master seed so a run can be reproduced from its output alone.

use anyhow::{bail, Context, Result};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

/// Key=value pairs loaded from `--config`, empty when absent.
#[derive(Debug, Default)]
pub struct ConfigMap {
    entries: BTreeMap<String, String>,
}

impl ConfigMap {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let mut entries = BTreeMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((key, value)) = line.split_once('=') else {
                    bail!("config line {} is not key=value: {line:?}", lineno + 1);
                };
                entries.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(ConfigMap { entries })
    }

    /// Flag value if present, else the parsed config value.
    pub fn resolve<T>(&self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.entries.get(key) {
            None => Ok(None),
            Some(raw) => match raw.parse::<T>() {
                Ok(v) => Ok(Some(v)),
                Err(e) => bail!("config key {key}={raw:?}: {e}"),
            },
        }
    }

    /// Like [`ConfigMap::resolve`] but the parameter must end up set.
    pub fn require<T>(&self, flag: Option<T>, key: &str) -> Result<T>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        self.resolve(flag, key)?
            .with_context(|| format!("missing required parameter --{key} (or config key {key})"))
    }

    /// Boolean flags: true on the command line wins, else config true/false.
    pub fn resolve_flag(&self, flag: bool, key: &str) -> Result<bool> {
        if flag {
            return Ok(true);
        }
        Ok(self.resolve::<bool>(None, key)?.unwrap_or(false))
    }
}

/// Resolved parameters of one run, in insertion order.
#[derive(Debug, Default)]
pub struct RunParams {
    entries: Vec<(String, String)>,
}

impl RunParams {
    pub fn new(command: &str) -> Self {
        RunParams {
            entries: vec![("command".to_string(), command.to_string())],
        }
    }

    pub fn push(&mut self, key: &str, value: impl std::fmt::Display) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    /// SHA-256 (truncated) over the sorted key=value lines.
    pub fn digest(&self) -> String {
        let mut lines: Vec<String> = self
            .entries
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        lines.sort();
        let mut hasher = Sha256::new();
        for line in &lines {
            hasher.update(line.as_bytes());
            hasher.update(b"\n");
        }
        hex_prefix(&hasher.finalize())
    }

    /// Reproducibility header lines for output files.
    pub fn header(&self, master_seed: Option<u64>) -> Vec<(String, String)> {
        let mut out = vec![("version".to_string(), "1".to_string())];
        out.extend(self.entries.iter().cloned());
        out.push(("config_digest".to_string(), self.digest()));
        if let Some(seed) = master_seed {
            out.push(("master_seed".to_string(), seed.to_string()));
        }
        out
    }
}

fn hex_prefix(bytes: &[u8]) -> String {
    bytes[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// Renders header lines as `# key: value`.
pub fn render_header(entries: &[(String, String)]) -> String {
    let mut out = String::new();
    for (k, v) in entries {
        out.push_str(&format!("# {k}: {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_overrides_config() {
        let mut cfg = ConfigMap::default();
        cfg.entries.insert("frames".into(), "100".into());
        assert_eq!(cfg.resolve(Some(7u32), "frames").unwrap(), Some(7));
        assert_eq!(cfg.resolve::<u32>(None, "frames").unwrap(), Some(100));
        assert_eq!(cfg.resolve::<u32>(None, "missing").unwrap(), None);
        assert!(cfg.require::<u32>(None, "missing").is_err());
    }

    #[test]
    fn digest_is_order_independent() {
        let mut a = RunParams::new("x");
        a.push("p", 1);
        a.push("q", 2);
        let mut b = RunParams::new("x");
        b.push("q", 2);
        b.push("p", 1);
        assert_eq!(a.digest(), b.digest());
    }
}

//! Flat `key = value` recipe files whose keys mirror the long flag names.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};

#[derive(Debug, Default, Clone, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    /// `#` starts a comment; keys accept `-` or `_` as separator.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                bail!("line {}: expected key = value, got {raw:?}", n + 1);
            };
            let key = k.trim().replace('_', "-");
            if key.is_empty() {
                bail!("line {}: empty key", n + 1);
            }
            if entries.insert(key.clone(), v.trim().to_string()).is_some() {
                bail!("line {}: duplicate key {key:?}", n + 1);
            }
        }
        Ok(Self { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Rejects keys outside `allowed`.
    pub fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        for k in self.keys() {
            if !allowed.contains(&k) {
                bail!("unknown config key {k:?}");
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_separators() {
        let c = ConfigFile::parse("# recipe\nmodel = pc\nb_ext=2  # tesla\n\n").unwrap();
        assert_eq!(c.get("model"), Some("pc"));
        assert_eq!(c.get("b-ext"), Some("2"));
        assert_eq!(c.get("theta"), None);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(ConfigFile::parse("model pc").is_err());
        assert!(ConfigFile::parse("a=1\na=2").is_err());
        assert!(ConfigFile::parse("=1").is_err());
        let c = ConfigFile::parse("bogus=1").unwrap();
        assert!(c.check_keys(&["model"]).is_err());
    }
}

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::CliError;

/// Keys accepted in a config file.
pub const KEYS: [&str; 13] = [
    "experiment",
    "beta",
    "alpha",
    "gamma",
    "L",
    "seeds",
    "seed",
    "modes",
    "pairs",
    "points",
    "out",
    "input",
    "K0",
];

/// Flat `key = value` settings. Blank lines and lines starting with `#` are
/// ignored; a repeated key keeps its last value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!(
                    "config line {}: expected `key = value`, got {raw:?}",
                    n + 1
                ))
            })?;
            let k = k.trim();
            if !KEYS.contains(&k) {
                return Err(CliError::Usage(format!(
                    "config line {}: unknown key {k:?}",
                    n + 1
                )));
            }
            values.insert(k.to_string(), v.trim().to_string());
        }
        Ok(ConfigFile { values })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        ConfigFile::parse(&text)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// `key` parsed as `T`, if present.
    pub fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.raw(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| CliError::Usage(format!("config key {key}: cannot parse {v:?}")))
            })
            .transpose()
    }

    /// Comma-separated list of floats, if present.
    pub fn list(&self, key: &str) -> Result<Option<Vec<f64>>, CliError> {
        self.raw(key)
            .map(|v| {
                v.split(',')
                    .map(|p| {
                        p.trim().parse().map_err(|_| {
                            CliError::Usage(format!("config key {key}: cannot parse {p:?}"))
                        })
                    })
                    .collect()
            })
            .transpose()
    }
}

/// First present value: command line, then config file, then default.
pub fn pick<T>(cli: Option<T>, file: Option<T>, default: T) -> T {
    cli.or(file).unwrap_or(default)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_files() {
        let c = ConfigFile::parse("# comment\n\nL = 12\nalpha = 0.3, 0.4\nL=14\n").unwrap();
        assert_eq!(c.get::<u32>("L").unwrap(), Some(14));
        assert_eq!(c.list("alpha").unwrap(), Some(vec![0.3, 0.4]));
        assert_eq!(c.get::<f64>("beta").unwrap(), None);
    }

    #[test]
    fn rejects_malformed_lines_and_unknown_keys() {
        assert!(ConfigFile::parse("L 12").is_err());
        assert!(ConfigFile::parse("lenght = 3").is_err());
        assert!(ConfigFile::parse("L = twelve")
            .unwrap()
            .get::<u32>("L")
            .is_err());
    }

    #[test]
    fn command_line_wins() {
        assert_eq!(pick(Some(1), Some(2), 3), 1);
        assert_eq!(pick(None, Some(2), 3), 2);
        assert_eq!(pick(None, None, 3), 3);
    }
}

//! Flat `key = value` scenario files.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{CliError, CliResult};

pub const KEYS: [&str; 7] = ["d", "lambda", "kind", "t", "z", "m", "epsilon0"];

/// Values read from a config file, remembering the line each came from.
#[derive(Debug, Default)]
pub struct ScenarioConfig {
    path: Option<PathBuf>,
    values: HashMap<String, (usize, String)>,
}

impl ScenarioConfig {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
            .map(|mut c| {
                c.path = Some(path.to_path_buf());
                c
            })
            .map_err(|e| e.context(path.display()))
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let mut values = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Parse(format!("line {}: expected key = value", i + 1)));
            };
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(CliError::Parse(format!("line {}: unknown key '{key}'", i + 1)));
            }
            values.insert(key.to_string(), (i + 1, value.trim().to_string()));
        }
        Ok(ScenarioConfig { path: None, values })
    }

    fn where_(&self, line: usize) -> String {
        match &self.path {
            Some(p) => format!("{}: line {line}", p.display()),
            None => format!("line {line}"),
        }
    }

    /// The config value for `key`, parsed.
    pub fn get<T: FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        match self.values.get(key) {
            None => Ok(None),
            Some((line, raw)) => raw
                .parse()
                .map(Some)
                .map_err(|_| CliError::Parse(format!("{}: cannot parse '{raw}' for {key}", self.where_(*line)))),
        }
    }

    /// A comma-separated list value.
    pub fn get_list<T: FromStr>(&self, key: &str) -> CliResult<Option<Vec<T>>> {
        match self.values.get(key) {
            None => Ok(None),
            Some((line, raw)) => raw
                .split(',')
                .map(|s| s.trim().parse())
                .collect::<Result<Vec<T>, _>>()
                .map(Some)
                .map_err(|_| CliError::Parse(format!("{}: cannot parse '{raw}' for {key}", self.where_(*line)))),
        }
    }

    /// Flag value if given, else the config value, else an error naming both.
    pub fn require<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<T> {
        match flag {
            Some(v) => Ok(v),
            None => self
                .get(key)?
                .ok_or_else(|| CliError::Usage(format!("missing --{key} (or '{key}' in the config file)"))),
        }
    }

    pub fn or<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> CliResult<T> {
        match flag {
            Some(v) => Ok(v),
            None => Ok(self.get(key)?.unwrap_or(default)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_resolves() {
        let c = ScenarioConfig::parse("# scenario\nd = 2\nlambda=0.5  # rate\n\nm = 3, 5,7\n").unwrap();
        assert_eq!(c.get::<f64>("d").unwrap(), Some(2.0));
        assert_eq!(c.get_list::<f64>("m").unwrap(), Some(vec![3.0, 5.0, 7.0]));
        assert_eq!(c.require(Some(9.0), "d").unwrap(), 9.0);
        assert_eq!(c.require::<f64>(None, "lambda").unwrap(), 0.5);
        assert!(matches!(c.require::<f64>(None, "z"), Err(CliError::Usage(_))));
        assert_eq!(c.or(None, "epsilon0", 1.0).unwrap(), 1.0);
    }

    #[test]
    fn reports_bad_lines() {
        let e = ScenarioConfig::parse("d = 1\nspeed = 3\n").unwrap_err();
        assert!(matches!(e, CliError::Parse(ref s) if s.contains("line 2")));
        let c = ScenarioConfig::parse("d = one\n").unwrap();
        assert!(matches!(c.get::<f64>("d"), Err(CliError::Parse(ref s)) if s.contains("line 1")));
        assert!(ScenarioConfig::parse("d 1\n").is_err());
    }
}

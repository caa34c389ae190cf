//! Optional `key=value` config files mirroring the long flag names.
//!
//! A file supplies defaults only: any flag given explicitly on the command
//! line wins.  Keys the subcommand does not know are collected and rejected
//! together with every other validation problem.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::CliError;

/// Parsed config file: flag name (without leading `--`) to raw value.
#[derive(Debug, Default)]
pub struct ConfigBag {
    entries: BTreeMap<String, String>,
}

impl ConfigBag {
    /// Reads and parses a config file.  I/O problems are i/o errors;
    /// syntax problems are config errors.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config file {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|why| {
            CliError::Config(format!("config file {}: {why}", path.display()))
        })
    }

    /// Parses config text: one `key=value` per line, `#` comments, blank
    /// lines ignored.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key=value, found '{line}'", lineno + 1))?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() {
                return Err(format!("line {}: empty key", lineno + 1));
            }
            if entries.insert(key.clone(), value).is_some() {
                return Err(format!("line {}: duplicate key '{key}'", lineno + 1));
            }
        }
        Ok(Self { entries })
    }

    /// Fills `slot` from `key` if the command line left it empty.  Parse
    /// failures are pushed onto `problems` rather than returned, so every
    /// config mistake is reported at once.
    pub fn fill<T>(&mut self, slot: &mut Option<T>, key: &str, problems: &mut Vec<String>)
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        let Some(raw) = self.entries.remove(key) else {
            return;
        };
        if slot.is_some() {
            return; // flag given explicitly; config value is shadowed
        }
        match raw.parse::<T>() {
            Ok(v) => *slot = Some(v),
            Err(e) => problems.push(format!("config key '{key}': {e}")),
        }
    }

    /// Boolean variant for presence flags: `true`/`false` in the file, OR-ed
    /// with the command line (a flag given on the command line cannot be
    /// un-set by a file, matching "flags take precedence").
    pub fn fill_flag(&mut self, slot: &mut bool, key: &str, problems: &mut Vec<String>) {
        let Some(raw) = self.entries.remove(key) else {
            return;
        };
        match raw.as_str() {
            "true" => *slot = *slot || true,
            "false" => {} // cannot override an explicit command-line flag
            other => problems.push(format!(
                "config key '{key}': expected true or false, found '{other}'"
            )),
        }
    }

    /// After all known keys were consumed, anything left is unknown.
    pub fn finish(self, problems: &mut Vec<String>) {
        for key in self.entries.keys() {
            problems.push(format!("unknown config key '{key}'"));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_blanks_and_pairs() {
        let bag = ConfigBag::parse("# a comment\n\ndim = 64\nensemble=gue\n").unwrap();
        assert_eq!(bag.entries.len(), 2);
        assert_eq!(bag.entries["dim"], "64");
        assert_eq!(bag.entries["ensemble"], "gue");
    }

    #[test]
    fn rejects_bad_lines_and_duplicates() {
        assert!(ConfigBag::parse("just words\n").is_err());
        assert!(ConfigBag::parse("=5\n").is_err());
        assert!(ConfigBag::parse("a=1\na=2\n").is_err());
    }

    #[test]
    fn flags_take_precedence() {
        let mut bag = ConfigBag::parse("dim=64\n").unwrap();
        let mut problems = Vec::new();
        let mut dim: Option<usize> = Some(8); // explicit flag
        bag.fill(&mut dim, "dim", &mut problems);
        assert_eq!(dim, Some(8));
        assert!(problems.is_empty());
    }

    #[test]
    fn config_fills_missing_values_and_reports_unknowns() {
        let mut bag = ConfigBag::parse("dim=64\nmystery=1\n").unwrap();
        let mut problems = Vec::new();
        let mut dim: Option<usize> = None;
        bag.fill(&mut dim, "dim", &mut problems);
        bag.finish(&mut problems);
        assert_eq!(dim, Some(64));
        assert_eq!(problems, vec!["unknown config key 'mystery'".to_string()]);
    }

    #[test]
    fn parse_failures_are_collected_not_fatal() {
        let mut bag = ConfigBag::parse("dim=not_a_number\nseed=5\n").unwrap();
        let mut problems = Vec::new();
        let mut dim: Option<usize> = None;
        let mut seed: Option<u64> = None;
        bag.fill(&mut dim, "dim", &mut problems);
        bag.fill(&mut seed, "seed", &mut problems);
        bag.finish(&mut problems);
        assert_eq!(seed, Some(5));
        assert_eq!(dim, None);
        assert_eq!(problems.len(), 1);
        assert!(problems[0].contains("dim"));
    }

    #[test]
    fn boolean_keys_or_with_the_command_line() {
        let mut bag = ConfigBag::parse("timing=true\nother=false\n").unwrap();
        let mut problems = Vec::new();
        let mut timing = false;
        let mut other = true;
        bag.fill_flag(&mut timing, "timing", &mut problems);
        bag.fill_flag(&mut other, "other", &mut problems);
        assert!(timing);
        assert!(other, "explicit flag cannot be un-set by a file");
        assert!(problems.is_empty());
    }
}

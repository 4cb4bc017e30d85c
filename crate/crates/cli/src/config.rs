//! Line-oriented `key = value` config files and tab-separated names files.
//!
//! Config keys match the command-line flag names exactly; flags always win
//! over file values. Blank lines and lines starting with `#` are skipped in
//! both formats.

use twochild::{NameAlphabet, Rational};

/// Every key a config file may set: exactly the long flag names.
pub const CONFIG_KEYS: [&str; 11] = [
    "scenario",
    "p",
    "n",
    "names",
    "target",
    "girl-weight",
    "trials",
    "seed",
    "workers",
    "figure",
    "out",
];

/// Parses `key = value` lines. Later occurrences of a key override earlier
/// ones; unknown keys are an error so typos fail loudly.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut entries: Vec<(String, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("config line {}: expected `key = value`", lineno + 1));
        };
        let key = key.trim();
        let value = value.trim();
        if !CONFIG_KEYS.contains(&key) {
            return Err(format!("config line {}: unknown key {key:?}", lineno + 1));
        }
        if value.is_empty() {
            return Err(format!("config line {}: empty value for {key:?}", lineno + 1));
        }
        entries.retain(|(k, _)| k != key);
        entries.push((key.to_string(), value.to_string()));
    }
    Ok(entries)
}

/// A parsed names file: the alphabet (first label distinguished unless the
/// caller re-targets) and one exact weight per name.
#[derive(Debug)]
pub struct NamesFile {
    pub labels: Vec<String>,
    pub weights: Vec<Rational>,
}

impl NamesFile {
    /// Builds the alphabet with `target_label` (or the first line)
    /// distinguished, returning the alphabet and the target index.
    pub fn alphabet(&self, target_label: Option<&str>) -> Result<(NameAlphabet, usize), String> {
        let probe = NameAlphabet::new(self.labels.clone(), 0).map_err(|e| e.to_string())?;
        let target = match target_label {
            None => 0,
            Some(label) => {
                probe
                    .index_of(label)
                    .ok_or_else(|| format!("target {label:?} is not in the names file"))?
                    .0
            }
        };
        let alphabet =
            NameAlphabet::new(self.labels.clone(), target).map_err(|e| e.to_string())?;
        Ok((alphabet, target))
    }
}

/// Parses `label<TAB>num/den` lines. Weights must sum to exactly 1.
pub fn parse_names(text: &str) -> Result<NamesFile, String> {
    let mut labels = Vec::new();
    let mut weights = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim_end();
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let Some((label, weight)) = line.split_once('\t') else {
            return Err(format!(
                "names line {}: expected `label<TAB>num/den`",
                lineno + 1
            ));
        };
        let label = label.trim();
        if label.is_empty() {
            return Err(format!("names line {}: empty label", lineno + 1));
        }
        let weight: Rational = weight
            .trim()
            .parse()
            .map_err(|e| format!("names line {}: {e}", lineno + 1))?;
        labels.push(label.to_string());
        weights.push(weight);
    }
    if labels.is_empty() {
        return Err("names file lists no names".to_string());
    }
    let total: Rational = weights.iter().sum();
    if !total.is_one() {
        return Err(format!("names file weights must sum to exactly 1, got {total}"));
    }
    Ok(NamesFile { labels, weights })
}

//! Line-oriented helpers shared by the data-file loaders.

/// Counts kept while scanning a line-oriented data file. Loaders skip
/// malformed lines and report them so callers can enforce an abort threshold.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LineStats {
    /// Data lines seen (blank lines and `#` comments excluded).
    pub total: usize,
    /// Lines that failed to parse and were skipped.
    pub malformed: usize,
}

impl LineStats {
    pub fn malformed_fraction(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.malformed as f64 / self.total as f64
        }
    }
}

/// Returns `None` for lines a loader should ignore outright: blank lines and
/// `#`-prefixed comments (our own writers embed config echoes that way).
pub fn data_line(raw: &str) -> Option<&str> {
    let line = raw.trim_end_matches(['\r', '\n']);
    let trimmed = line.trim_start();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        None
    } else {
        Some(line)
    }
}

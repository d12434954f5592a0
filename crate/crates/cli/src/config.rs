use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use clap::ValueEnum;
use gbh_core::FieldKind;

use crate::error::CliError;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Inclusive `a..b` range of `n`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub start: usize,
    pub end: usize,
}

impl Window {
    pub fn range(&self) -> RangeInclusive<usize> {
        self.start..=self.end
    }

    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }
}

impl FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .split_once("..")
            .ok_or_else(|| format!("expected a..b, got `{s}`"))?;
        let b = b.strip_prefix('=').unwrap_or(b);
        let start = a.trim().parse().map_err(|_| format!("bad window start `{a}`"))?;
        let end = b.trim().parse().map_err(|_| format!("bad window end `{b}`"))?;
        Ok(Window { start, end })
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub field: FieldKind,
    pub truncation: Option<usize>,
    pub q_max: usize,
    pub n_max: usize,
    pub p_max: usize,
    pub j_max: usize,
    pub window: Option<Window>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub budget: usize,
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(w) = self.window {
            if w.start > w.end {
                return Err(CliError::config(format!("window {}..{} is empty", w.start, w.end)));
            }
        }
        if self.jobs == Some(0) {
            return Err(CliError::config("--jobs must be at least 1"));
        }
        if self.budget == 0 {
            return Err(CliError::config("--budget must be at least 1"));
        }
        Ok(())
    }

    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    /// Truncation for module computations; defaults to `j_max`.
    pub fn truncation(&self) -> usize {
        self.truncation.unwrap_or(self.j_max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_parsing() {
        assert_eq!("3..8".parse::<Window>().unwrap(), Window { start: 3, end: 8 });
        assert_eq!("3..=8".parse::<Window>().unwrap().len(), 6);
        assert!("3-8".parse::<Window>().is_err());
        assert!("a..2".parse::<Window>().is_err());
    }
}

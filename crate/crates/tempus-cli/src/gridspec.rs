//! Compact grid notation used by every sweep flag: `min:max:count:scale`,
//! e.g. `0.1:10000:64:log` or `-4:4:161:lin`.

use std::fmt;
use std::str::FromStr;

use tempus_core::grid;

/// How the points are spaced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Lin,
    Log,
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Lin => "lin",
            Scale::Log => "log",
        })
    }
}

/// A parsed `min:max:count:scale` specification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub scale: Scale,
}

impl GridSpec {
    /// Generates the grid points.  Spacing and bound violations surface as
    /// the underlying grid errors.
    pub fn materialize(&self) -> tempus_core::Result<Vec<f64>> {
        match self.scale {
            Scale::Lin => grid::lin_spaced(self.min, self.max, self.count),
            Scale::Log => grid::log_spaced(self.min, self.max, self.count),
        }
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = |why: &str| format!("grid spec '{s}' invalid: {why} (expected min:max:count:scale)");
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(bad(&format!("{} fields instead of 4", parts.len())));
        }
        let min: f64 = parts[0].parse().map_err(|_| bad("min is not a number"))?;
        let max: f64 = parts[1].parse().map_err(|_| bad("max is not a number"))?;
        let count: usize = parts[2].parse().map_err(|_| bad("count is not an integer"))?;
        let scale = match parts[3] {
            "lin" => Scale::Lin,
            "log" => Scale::Log,
            other => return Err(bad(&format!("unknown scale '{other}'"))),
        };
        Ok(GridSpec {
            min,
            max,
            count,
            scale,
        })
    }
}

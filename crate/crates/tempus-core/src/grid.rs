//! Evenly spaced sample grids on linear and logarithmic scales.
//!
//! Both constructors include their endpoints and return strictly ascending
//! values, which is what the curve routines in this crate require.

use crate::error::{Error, Result};

/// `count` points from `min` to `max` inclusive, linearly spaced.
///
/// `count == 1` collapses to `[min]` (and requires `min == max`).  Endpoints
/// are assigned exactly rather than accumulated, so `grid[0] == min` and
/// `grid[count - 1] == max` bitwise.
pub fn lin_spaced(min: f64, max: f64, count: usize) -> Result<Vec<f64>> {
    validate(min, max, count, false)?;
    if count == 1 {
        return Ok(vec![min]);
    }
    let step = (max - min) / (count - 1) as f64;
    let mut grid: Vec<f64> = (0..count).map(|i| min + step * i as f64).collect();
    grid[0] = min;
    grid[count - 1] = max;
    Ok(grid)
}

/// `count` points from `min` to `max` inclusive, logarithmically spaced.
///
/// Requires `min > 0`.  Endpoints are assigned exactly, interior points are
/// `exp` of a linear walk in `ln` space.
pub fn log_spaced(min: f64, max: f64, count: usize) -> Result<Vec<f64>> {
    validate(min, max, count, true)?;
    if count == 1 {
        return Ok(vec![min]);
    }
    let (lo, hi) = (min.ln(), max.ln());
    let step = (hi - lo) / (count - 1) as f64;
    let mut grid: Vec<f64> = (0..count).map(|i| (lo + step * i as f64).exp()).collect();
    grid[0] = min;
    grid[count - 1] = max;
    Ok(grid)
}

fn validate(min: f64, max: f64, count: usize, log: bool) -> Result<()> {
    if count == 0 {
        return Err(Error::InvalidTimeGrid {
            reason: "grid needs at least one point".into(),
        });
    }
    if !min.is_finite() || !max.is_finite() {
        return Err(Error::InvalidTimeGrid {
            reason: format!("grid endpoints must be finite, got {min} and {max}"),
        });
    }
    if log && min <= 0.0 {
        return Err(Error::InvalidTimeGrid {
            reason: format!("log-scale grid needs min > 0, got {min}"),
        });
    }
    if max < min {
        return Err(Error::InvalidTimeGrid {
            reason: format!("grid needs max >= min, got [{min}, {max}]"),
        });
    }
    if max > min && count < 2 {
        return Err(Error::InvalidTimeGrid {
            reason: "a grid spanning an interval needs at least two points".into(),
        });
    }
    if max == min && count > 1 {
        return Err(Error::InvalidTimeGrid {
            reason: "a degenerate interval admits exactly one point".into(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_grid_hits_endpoints_exactly() {
        let g = lin_spaced(0.1, 7.3, 11).unwrap();
        assert_eq!(g.len(), 11);
        assert_eq!(g[0], 0.1);
        assert_eq!(g[10], 7.3);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn log_grid_is_geometric() {
        let g = log_spaced(1.0, 1024.0, 11).unwrap();
        assert_eq!(g[0], 1.0);
        assert_eq!(g[10], 1024.0);
        // Consecutive ratios should all match the common ratio 2.
        for w in g.windows(2) {
            assert!((w[1] / w[0] - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn singleton_grid() {
        assert_eq!(lin_spaced(2.0, 2.0, 1).unwrap(), vec![2.0]);
        assert_eq!(log_spaced(2.0, 2.0, 1).unwrap(), vec![2.0]);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(lin_spaced(1.0, 0.0, 4).is_err());
        assert!(lin_spaced(0.0, 1.0, 0).is_err());
        assert!(lin_spaced(1.0, 2.0, 1).is_err());
        assert!(lin_spaced(1.0, 1.0, 3).is_err());
        assert!(log_spaced(0.0, 1.0, 4).is_err());
        assert!(log_spaced(-1.0, 1.0, 4).is_err());
        assert!(lin_spaced(f64::NAN, 1.0, 4).is_err());
    }
}

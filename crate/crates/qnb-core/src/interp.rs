//! Piecewise-linear interpolation on strictly increasing grids.
//! No extrapolation: out-of-range queries are domain errors.

use crate::error::{Error, Result};

pub fn check_grid(name: &'static str, grid: &[f64]) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::invalid(name, "grid needs at least 2 nodes"));
    }
    for w in grid.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::invalid(name, "grid must be strictly increasing"));
        }
    }
    if !grid.iter().all(|x| x.is_finite()) {
        return Err(Error::invalid(name, "grid values must be finite"));
    }
    Ok(())
}

pub fn check_len(name: &'static str, values: &[f64], expected: usize) -> Result<()> {
    if values.len() != expected {
        return Err(Error::invalid(
            name,
            format!("expected {expected} values, got {}", values.len()),
        ));
    }
    if !values.iter().all(|x| x.is_finite()) {
        return Err(Error::invalid(name, "values must be finite"));
    }
    Ok(())
}

pub fn linear(grid: &[f64], values: &[f64], x: f64) -> Result<f64> {
    let (min, max) = (grid[0], grid[grid.len() - 1]);
    if x < min || x > max {
        return Err(Error::OutOfRange { omega: x, min, max });
    }
    let i = match grid.partition_point(|&g| g <= x) {
        0 => 0,
        p if p >= grid.len() => grid.len() - 2,
        p => p - 1,
    };
    let t = (x - grid[i]) / (grid[i + 1] - grid[i]);
    Ok(values[i] + t * (values[i + 1] - values[i]))
}

//! Coordinate points on a chart.

use crate::error::{Error, Result};

/// An ordered coordinate tuple on an n- (or 2n-) dimensional chart.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartPoint {
    coords: Vec<f64>,
}

impl ChartPoint {
    /// Rejects NaN and infinite entries.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFiniteInput);
        }
        Ok(ChartPoint { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}

impl AsRef<[f64]> for ChartPoint {
    fn as_ref(&self) -> &[f64] {
        &self.coords
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite() {
        assert!(ChartPoint::new(vec![0.0, f64::NAN]).is_err());
        assert!(ChartPoint::new(vec![0.0, f64::INFINITY]).is_err());
        assert!(ChartPoint::new(vec![0.0, 1.0]).is_ok());
    }
}

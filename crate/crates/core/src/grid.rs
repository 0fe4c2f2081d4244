//! Periodic cubic grid: site indexing and wavenumbers.

use crate::error::{Error, Result};

/// An N^3 periodic grid over the box [0, L)^3. Sites are indexed row-major
/// with the x3 coordinate fastest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    n_sites_per_axis: usize,
    box_len: f64,
}

impl Grid {
    pub fn new(n: usize, box_len: f64) -> Result<Self> {
        if n < 4 || n % 2 != 0 {
            return Err(Error::Config(format!(
                "grid size must be even and >= 4, got {n}"
            )));
        }
        if !(box_len > 0.0) {
            return Err(Error::Config(format!(
                "box length must be positive, got {box_len}"
            )));
        }
        Ok(Self {
            n_sites_per_axis: n,
            box_len,
        })
    }

    pub fn n(&self) -> usize {
        self.n_sites_per_axis
    }

    pub fn box_len(&self) -> f64 {
        self.box_len
    }

    /// Grid spacing h = L/N.
    pub fn spacing(&self) -> f64 {
        self.box_len / self.n_sites_per_axis as f64
    }

    pub fn site_count(&self) -> usize {
        self.n_sites_per_axis.pow(3)
    }

    /// Cell volume h^3, the Riemann-sum quadrature weight.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(3)
    }

    pub fn site_index(&self, i1: usize, i2: usize, i3: usize) -> usize {
        let n = self.n_sites_per_axis;
        (i1 * n + i2) * n + i3
    }

    pub fn site_coords(&self, idx: usize) -> (usize, usize, usize) {
        let n = self.n_sites_per_axis;
        (idx / (n * n), (idx / n) % n, idx % n)
    }

    /// Physical position of a site along one axis.
    pub fn coord(&self, i: usize) -> f64 {
        i as f64 * self.spacing()
    }

    /// Signed integer mode number for DFT bin m: 0..N/2-1 map to themselves,
    /// N/2..N-1 to m - N.
    pub fn mode_int(&self, m: usize) -> i64 {
        let n = self.n_sites_per_axis as i64;
        let m = m as i64;
        if m < n / 2 {
            m
        } else {
            m - n
        }
    }

    /// Wavenumber 2*pi*mode/L for DFT bin m.
    pub fn wavenumber(&self, m: usize) -> f64 {
        2.0 * std::f64::consts::PI * self.mode_int(m) as f64 / self.box_len
    }

    /// Largest mode magnitude kept by the 2/3 dealiasing rule.
    pub fn dealias_cutoff(&self) -> i64 {
        (self.n_sites_per_axis / 3) as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert!(Grid::new(3, 1.0).is_err());
        assert!(Grid::new(6, 0.0).is_err());
        assert!(Grid::new(2, 1.0).is_err());
        assert!(Grid::new(7, 1.0).is_err());
        assert!(Grid::new(8, 1.0).is_ok());
    }

    #[test]
    fn site_indexing_round_trips() {
        let g = Grid::new(8, 1.0).unwrap();
        for i1 in 0..8 {
            for i2 in 0..8 {
                for i3 in 0..8 {
                    let idx = g.site_index(i1, i2, i3);
                    assert_eq!(g.site_coords(idx), (i1, i2, i3));
                }
            }
        }
        // x3 is fastest
        assert_eq!(g.site_index(0, 0, 1), 1);
        assert_eq!(g.site_index(0, 1, 0), 8);
        assert_eq!(g.site_index(1, 0, 0), 64);
    }

    #[test]
    fn wavenumber_convention() {
        let g = Grid::new(8, 2.0).unwrap();
        assert_eq!(g.mode_int(0), 0);
        assert_eq!(g.mode_int(3), 3);
        assert_eq!(g.mode_int(4), -4);
        assert_eq!(g.mode_int(7), -1);
        let k1 = g.wavenumber(1);
        assert!((k1 - std::f64::consts::PI).abs() < 1e-15);
    }
}

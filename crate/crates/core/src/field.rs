//! Algebra-valued lattice fields and their site-local arithmetic.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::algebra::{self, AlgebraElement};
use crate::error::{Error, Result};
use crate::grid::Grid;

/// A rank-r field of n x n complex matrices over an N^3 periodic grid.
///
/// Layout: component-major, then site (x3 fastest), then the row-major matrix
/// entries. Entries are su(n)-valued by convention; compound kernels call
/// [`LatticeField::project_algebra`] to repair floating-point drift.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeField {
    grid: Grid,
    n: usize,
    rank: usize,
    data: Vec<C64>,
}

impl LatticeField {
    pub fn zeros(grid: Grid, n: usize, rank: usize) -> Self {
        let len = rank * grid.site_count() * n * n;
        Self {
            grid,
            n,
            rank,
            data: vec![C64::new(0.0, 0.0); len],
        }
    }

    /// Fills a field from a per-site function returning row-major entries.
    pub fn from_fn<F>(grid: Grid, n: usize, rank: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize, usize, usize) -> Vec<C64>,
    {
        let mut field = Self::zeros(grid, n, rank);
        let nn = n * n;
        for comp in 0..rank {
            for i1 in 0..grid.n() {
                for i2 in 0..grid.n() {
                    for i3 in 0..grid.n() {
                        let site = grid.site_index(i1, i2, i3);
                        let entries = f(comp, i1, i2, i3);
                        debug_assert_eq!(entries.len(), nn);
                        field.site_mut(comp, site).copy_from_slice(&entries);
                    }
                }
            }
        }
        field
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn group_n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }

    fn block(&self) -> usize {
        self.n * self.n
    }

    /// Row-major matrix at (component, site).
    pub fn site(&self, comp: usize, site: usize) -> &[C64] {
        let nn = self.block();
        let base = (comp * self.grid.site_count() + site) * nn;
        &self.data[base..base + nn]
    }

    pub fn site_mut(&mut self, comp: usize, site: usize) -> &mut [C64] {
        let nn = self.block();
        let base = (comp * self.grid.site_count() + site) * nn;
        &mut self.data[base..base + nn]
    }

    /// One whole component as a flat slice of site blocks.
    pub fn component(&self, comp: usize) -> &[C64] {
        let len = self.grid.site_count() * self.block();
        &self.data[comp * len..(comp + 1) * len]
    }

    pub fn component_mut(&mut self, comp: usize) -> &mut [C64] {
        let len = self.grid.site_count() * self.block();
        &mut self.data[comp * len..(comp + 1) * len]
    }

    /// Copies one component of `src` into component `dst_comp` of `self`.
    pub fn set_component(&mut self, dst_comp: usize, src: &LatticeField, src_comp: usize) {
        let len = self.grid.site_count() * self.block();
        self.data[dst_comp * len..(dst_comp + 1) * len]
            .copy_from_slice(&src.data[src_comp * len..(src_comp + 1) * len]);
    }

    /// Extracts a single component as a rank-1 field.
    pub fn extract_component(&self, comp: usize) -> LatticeField {
        let mut out = LatticeField::zeros(self.grid, self.n, 1);
        out.set_component(0, self, comp);
        out
    }

    pub fn algebra_at(&self, comp: usize, site: usize) -> AlgebraElement {
        AlgebraElement::project(self.n, self.site(comp, site).to_vec())
    }

    pub fn scale_in_place(&mut self, c: f64) {
        self.data.par_iter_mut().for_each(|z| *z *= c);
    }

    pub fn scaled(&self, c: f64) -> Self {
        let mut out = self.clone();
        out.scale_in_place(c);
        out
    }

    /// self += c * other
    pub fn axpy(&mut self, c: f64, other: &Self) -> Result<()> {
        self.check_compatible(other)?;
        self.data
            .par_iter_mut()
            .zip(other.data.par_iter())
            .for_each(|(a, b)| *a += c * b);
        Ok(())
    }

    pub fn added(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.axpy(1.0, other)?;
        Ok(out)
    }

    pub fn subbed(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.axpy(-1.0, other)?;
        Ok(out)
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid || self.n != other.n || self.rank != other.rank {
            return Err(Error::DimensionMismatch(format!(
                "fields differ in shape: (N={}, n={}, rank={}) vs (N={}, n={}, rank={})",
                self.grid.n(),
                self.n,
                self.rank,
                other.grid.n(),
                other.n,
                other.rank
            )));
        }
        Ok(())
    }

    /// Re-projects every entry onto su(n). Drift repair after compound kernels.
    pub fn project_algebra(&mut self) {
        let nn = self.block();
        let n = self.n;
        self.data.par_chunks_mut(nn).for_each(|m| {
            algebra::project_algebra(n, m);
        });
    }

    /// Pointwise commutator of same-rank fields: out_c = [a_c, b_c].
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zeros(self.grid, self.n, self.rank);
        let n = self.n;
        let nn = self.block();
        out.data
            .par_chunks_mut(nn)
            .zip(self.data.par_chunks(nn))
            .zip(other.data.par_chunks(nn))
            .for_each(|((o, a), b)| algebra::commutator_slices(n, a, b, o));
        Ok(out)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Largest pointwise norm sqrt(inner(f, f)) over sites and components.
    pub fn max_pointwise_norm(&self) -> f64 {
        let nn = self.block();
        self.data
            .par_chunks(nn)
            .map(|m| algebra::inner_re(m, m))
            .reduce(|| 0.0, f64::max)
            .sqrt()
    }

    /// L^p norm by Riemann-sum quadrature: (h^3 sum_sites (sum_c inner)^{p/2})^{1/p};
    /// p = infinity is handled by [`LatticeField::max_pointwise_norm`].
    pub fn lp_norm(&self, p: f64) -> f64 {
        if p.is_infinite() {
            return self.max_pointwise_norm();
        }
        assert!(p >= 1.0, "p must be >= 1");
        let nsite = self.grid.site_count();
        let nn = self.block();
        let values: Vec<f64> = (0..nsite)
            .into_par_iter()
            .map(|site| {
                let mut sq = 0.0;
                for comp in 0..self.rank {
                    let base = (comp * nsite + site) * nn;
                    let m = &self.data[base..base + nn];
                    sq += algebra::inner_re(m, m);
                }
                sq.powf(p / 2.0)
            })
            .collect();
        (self.grid.cell_volume() * pairwise_sum(&values)).powf(1.0 / p)
    }

    /// L^2 norm (the common case; exact p = 2 power avoids powf).
    pub fn l2_norm(&self) -> f64 {
        self.l2_norm_sq().sqrt()
    }

    pub fn l2_norm_sq(&self) -> f64 {
        let nsite = self.grid.site_count();
        let nn = self.block();
        let values: Vec<f64> = (0..nsite)
            .into_par_iter()
            .map(|site| {
                let mut sq = 0.0;
                for comp in 0..self.rank {
                    let base = (comp * nsite + site) * nn;
                    let m = &self.data[base..base + nn];
                    sq += algebra::inner_re(m, m);
                }
                sq
            })
            .collect();
        self.grid.cell_volume() * pairwise_sum(&values)
    }

    /// Global real inner product h^3 sum_sites sum_c (f, g).
    pub fn dot(&self, other: &Self) -> Result<f64> {
        self.check_compatible(other)?;
        let nsite = self.grid.site_count();
        let nn = self.block();
        let values: Vec<f64> = (0..nsite)
            .into_par_iter()
            .map(|site| {
                let mut acc = 0.0;
                for comp in 0..self.rank {
                    let base = (comp * nsite + site) * nn;
                    acc += algebra::inner_re(
                        &self.data[base..base + nn],
                        &other.data[base..base + nn],
                    );
                }
                acc
            })
            .collect();
        Ok(self.grid.cell_volume() * pairwise_sum(&values))
    }
}

/// Index and sign for the stored i<j components of an antisymmetric pair
/// field: (0,1) -> 0, (0,2) -> 1, (1,2) -> 2, with F_{ji} = -F_{ij}.
/// Returns None on the diagonal.
pub fn antisym_pair(i: usize, j: usize) -> Option<(usize, f64)> {
    match (i, j) {
        (0, 1) => Some((0, 1.0)),
        (1, 0) => Some((0, -1.0)),
        (0, 2) => Some((1, 1.0)),
        (2, 0) => Some((1, -1.0)),
        (1, 2) => Some((2, 1.0)),
        (2, 1) => Some((2, -1.0)),
        _ => None,
    }
}

/// Deterministic pairwise summation; the reduction order is fixed regardless
/// of thread count.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        len => {
            let mid = len / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i_sigma3_entries() -> Vec<C64> {
        vec![
            C64::new(0.0, 1.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, -1.0),
        ]
    }

    #[test]
    fn linf_of_constant_i_sigma3_is_sqrt2() {
        let grid = Grid::new(8, 1.0).unwrap();
        let f = LatticeField::from_fn(grid, 2, 1, |_, _, _, _| i_sigma3_entries());
        assert!((f.lp_norm(f64::INFINITY) - 2.0f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn l2_of_zero_field_is_zero() {
        let grid = Grid::new(8, 1.0).unwrap();
        let f = LatticeField::zeros(grid, 2, 3);
        assert_eq!(f.l2_norm(), 0.0);
        assert_eq!(f.lp_norm(4.0), 0.0);
    }

    #[test]
    fn periodic_shift_by_n_is_identity() {
        let grid = Grid::new(8, 2.0).unwrap();
        let f = LatticeField::from_fn(grid, 2, 1, |_, i1, i2, i3| {
            let v = (i1 * 64 + i2 * 8 + i3) as f64;
            vec![
                C64::new(0.0, v),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, -v),
            ]
        });
        // shifting indices by N along each axis wraps to the same site
        let n = grid.n();
        for i1 in 0..n {
            for i2 in 0..n {
                for i3 in 0..n {
                    let a = grid.site_index(i1, i2, i3);
                    let b = grid.site_index((i1 + n) % n, (i2 + n) % n, (i3 + n) % n);
                    assert_eq!(f.site(0, a), f.site(0, b));
                }
            }
        }
    }

    #[test]
    fn pairwise_sum_matches_naive_on_uniform_data() {
        let values: Vec<f64> = (0..1000).map(|i| (i as f64).sin()).collect();
        let naive: f64 = values.iter().sum();
        assert!((pairwise_sum(&values) - naive).abs() < 1e-9);
    }

    #[test]
    fn antisym_pair_signs() {
        assert_eq!(antisym_pair(0, 1), Some((0, 1.0)));
        assert_eq!(antisym_pair(1, 0), Some((0, -1.0)));
        assert_eq!(antisym_pair(2, 1), Some((2, -1.0)));
        assert_eq!(antisym_pair(1, 1), None);
    }
}

//! Cell geometry, user drops, Rayleigh channel draws and the
//! Gaussian-Chebyshev tables that stand in for the distance distribution.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::specfun::LnFactorials;

/// Default number of Gaussian-Chebyshev nodes.
pub const DEFAULT_N_TERMS: usize = 100;

/// Annulus `[d0, d]` (meters) with path-loss exponent `alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellGeometry {
    pub d0: f64,
    pub d: f64,
    pub alpha: f64,
}

impl CellGeometry {
    pub fn new(d0: f64, d: f64, alpha: f64) -> Result<Self> {
        let g = CellGeometry { d0, d, alpha };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.d0.is_finite() && self.d0 > 0.0) {
            return Err(Error::Geometry(format!("inner radius {} must be > 0", self.d0)));
        }
        if !(self.d.is_finite() && self.d >= self.d0) {
            return Err(Error::Geometry(format!(
                "outer radius {} must be ≥ inner radius {}",
                self.d, self.d0
            )));
        }
        if !(self.alpha.is_finite() && self.alpha > 2.0) {
            return Err(Error::Geometry(format!(
                "path-loss exponent {} must exceed 2",
                self.alpha
            )));
        }
        Ok(())
    }

    /// Normalized cell size `d/d0`.
    pub fn eta(&self) -> f64 {
        self.d / self.d0
    }

    pub fn is_degenerate(&self) -> bool {
        self.d == self.d0
    }

    /// Large-scale attenuation `1 + z^alpha` at distance `z`.
    pub fn attenuation(&self, z: f64) -> f64 {
        1.0 + z.powf(self.alpha)
    }

    pub fn mean_distance(&self) -> f64 {
        if self.is_degenerate() {
            return self.d0;
        }
        let (a, b) = (self.d0, self.d);
        2.0 / 3.0 * (b.powi(3) - a.powi(3)) / (b * b - a * a)
    }

    pub fn distance_cdf(&self, z: f64) -> f64 {
        if z < self.d0 {
            0.0
        } else if z >= self.d {
            1.0
        } else {
            (z * z - self.d0 * self.d0) / (self.d * self.d - self.d0 * self.d0)
        }
    }
}

/// Gaussian-Chebyshev nodes for averaging a function of distance against the
/// uniform-in-area density on `[lo, hi]`.
///
/// `weight(n) = beta[n] / (lo + hi)` is the probability mass of node `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureTable {
    pub lo: f64,
    pub hi: f64,
    pub alpha: f64,
    pub beta: Vec<f64>,
    pub c: Vec<f64>,
    pub phi: Vec<f64>,
}

impl QuadratureTable {
    /// Table for a serving cell. The equidistant case has no density and is
    /// rejected; see [`LargeScale`].
    pub fn new(geom: &CellGeometry, n_terms: usize) -> Result<Self> {
        geom.validate()?;
        if geom.is_degenerate() {
            return Err(Error::DegenerateGeometry { d0: geom.d0 });
        }
        Self::over_interval(geom.d0, geom.d, geom.alpha, n_terms)
    }

    /// Table over an arbitrary annulus `[lo, hi]`, `lo ≥ 0`.
    pub fn over_interval(lo: f64, hi: f64, alpha: f64, n_terms: usize) -> Result<Self> {
        if n_terms == 0 {
            return Err(Error::Config("n_terms must be at least 1".into()));
        }
        if !(lo >= 0.0 && hi > lo && hi.is_finite()) {
            return Err(Error::Geometry(format!(
                "quadrature interval [{lo}, {hi}] is empty"
            )));
        }
        let n = n_terms as f64;
        let mut beta = Vec::with_capacity(n_terms);
        let mut c = Vec::with_capacity(n_terms);
        let mut phi = Vec::with_capacity(n_terms);
        for i in 1..=n_terms {
            let theta = (2.0 * i as f64 - 1.0) * PI / (2.0 * n);
            let p = 0.5 * (hi - lo) * theta.cos() + 0.5 * (hi + lo);
            phi.push(p);
            beta.push(PI / n * theta.sin().abs() * p);
            c.push(1.0 + p.powf(alpha));
        }
        Ok(QuadratureTable {
            lo,
            hi,
            alpha,
            beta,
            c,
            phi,
        })
    }

    pub fn n_terms(&self) -> usize {
        self.beta.len()
    }

    /// Node probability masses `beta_n / (lo + hi)`.
    pub fn weights(&self) -> impl Iterator<Item = f64> + '_ {
        let s = self.lo + self.hi;
        self.beta.iter().map(move |b| b / s)
    }

    /// Total node mass; tends to 1 as the node count grows.
    pub fn mass(&self) -> f64 {
        self.weights().sum()
    }

    /// `Σ beta_n / c_n / (lo + hi)`, the mean large-scale gain.
    pub fn mean_inverse_c(&self) -> f64 {
        self.weights().zip(&self.c).map(|(w, c)| w / c).sum()
    }
}

/// Large-scale gain law of a serving cell: quadrature nodes for a proper
/// annulus, a single atom when every user sits at `d0`.
#[derive(Debug, Clone, PartialEq)]
pub enum LargeScale {
    Quadrature(QuadratureTable),
    Ring { c: f64 },
}

impl LargeScale {
    pub fn new(geom: &CellGeometry, n_terms: usize) -> Result<Self> {
        geom.validate()?;
        if geom.is_degenerate() {
            Ok(LargeScale::Ring {
                c: geom.attenuation(geom.d0),
            })
        } else {
            Ok(LargeScale::Quadrature(QuadratureTable::new(geom, n_terms)?))
        }
    }

    /// Starts at `n_terms` and doubles until the mean gain moves by less than
    /// 1e-6 relative (at most 64x the starting count).
    pub fn converged(geom: &CellGeometry, n_terms: usize) -> Result<Self> {
        let mut n = n_terms.max(1);
        let mut cur = Self::new(geom, n)?;
        if matches!(cur, LargeScale::Ring { .. }) {
            return Ok(cur);
        }
        for _ in 0..6 {
            let next = Self::new(geom, 2 * n)?;
            let (a, b) = (cur.mean_gain(1), next.mean_gain(1));
            if ((b - a) / b).abs() < 1e-6 {
                return Ok(cur);
            }
            cur = next;
            n *= 2;
        }
        Ok(cur)
    }

    /// `(mass, c)` pairs.
    pub fn nodes(&self) -> Vec<(f64, f64)> {
        match self {
            LargeScale::Quadrature(t) => t.weights().zip(t.c.iter().copied()).collect(),
            LargeScale::Ring { c } => vec![(1.0, *c)],
        }
    }

    pub fn table(&self) -> Option<&QuadratureTable> {
        match self {
            LargeScale::Quadrature(t) => Some(t),
            LargeScale::Ring { .. } => None,
        }
    }

    /// `E‖h‖² = m · E[1/(1+d^α)]`.
    pub fn mean_gain(&self, m: usize) -> f64 {
        let per_antenna = match self {
            LargeScale::Quadrature(t) => t.mean_inverse_c(),
            LargeScale::Ring { c } => 1.0 / c,
        };
        m as f64 * per_antenna
    }
}

/// Mean channel gain `E‖h‖²` for `m` antennas.
pub fn mean_gain(law: &LargeScale, m: usize) -> f64 {
    law.mean_gain(m)
}

/// Binomial order-statistic node weights: row `k` (0-based, rank 1 = nearest
/// user) holds the masses of the rank-`k+1` distance on each node. Row sums
/// equal the table mass.
pub fn ordered_weights(k_total: usize, geom: &CellGeometry, table: &QuadratureTable) -> Vec<Vec<f64>> {
    let lf = LnFactorials::up_to(k_total);
    let span = geom.d * geom.d - geom.d0 * geom.d0;
    let cdf: Vec<(f64, f64)> = table
        .phi
        .iter()
        .map(|p| {
            let f = ((p * p - geom.d0 * geom.d0) / span).clamp(f64::MIN_POSITIVE, 1.0);
            (f.ln(), (-f).ln_1p())
        })
        .collect();
    let mass: Vec<f64> = table.weights().collect();
    (1..=k_total)
        .map(|k| {
            let lead = lf.ln_binomial(k_total, k) + (k as f64).ln();
            cdf.iter()
                .zip(&mass)
                .map(|(&(lf_, l1f), &w)| {
                    let mut e = lead;
                    if k > 1 {
                        e += (k - 1) as f64 * lf_;
                    }
                    if k < k_total {
                        e += (k_total - k) as f64 * l1f;
                    }
                    w * e.exp()
                })
                .collect()
        })
        .collect()
}

/// `I_k = E[1/(1+d_k^α)]` for the user of rank `k` (1 = strongest) among
/// `k_total`.
pub fn ordered_moment(
    k: usize,
    k_total: usize,
    geom: &CellGeometry,
    table: &QuadratureTable,
) -> Result<f64> {
    if k == 0 || k > k_total {
        return Err(Error::domain(
            "ordered_moment",
            format!("rank {k} outside 1..={k_total}"),
        ));
    }
    Ok(ordered_moments(k_total, geom, table)[k - 1])
}

/// All `I_1 .. I_K`.
pub fn ordered_moments(k_total: usize, geom: &CellGeometry, table: &QuadratureTable) -> Vec<f64> {
    ordered_weights(k_total, geom, table)
        .iter()
        .map(|row| row.iter().zip(&table.c).map(|(w, c)| w / c).sum())
        .collect()
}

/// Deterministic random stream keyed by `(seed, stream)`.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RngStream { seed, stream, rng }
    }

    /// Stream for one Monte Carlo trial of one sweep point.
    pub fn for_trial(seed: u64, sweep_index: usize, trial: usize) -> Self {
        Self::new(seed, ((sweep_index as u64) << 32) | (trial as u64 & 0xffff_ffff))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Circularly-symmetric complex Gaussian with unit variance.
    pub fn complex_gaussian(&mut self) -> Complex64 {
        let re: f64 = self.rng.sample(StandardNormal);
        let im: f64 = self.rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// One channel realization: `h` is `m × k`, stored column-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelDraw {
    m: usize,
    k: usize,
    distances: Vec<f64>,
    h: Vec<Complex64>,
}

impl ChannelDraw {
    /// Builds a draw from explicit columns.
    pub fn from_columns(m: usize, distances: Vec<f64>, h: Vec<Complex64>) -> Result<Self> {
        let k = distances.len();
        if m == 0 || k == 0 || h.len() != m * k {
            return Err(Error::domain(
                "ChannelDraw::from_columns",
                format!("{} entries for m = {m}, k = {k}", h.len()),
            ));
        }
        Ok(ChannelDraw { m, k, distances, h })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn distances(&self) -> &[f64] {
        &self.distances
    }

    pub fn column(&self, j: usize) -> &[Complex64] {
        &self.h[j * self.m..(j + 1) * self.m]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[Complex64]> {
        self.h.chunks_exact(self.m)
    }

    /// `‖h_j‖²`.
    pub fn gain(&self, j: usize) -> f64 {
        self.column(j).iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn gains(&self) -> Vec<f64> {
        (0..self.k).map(|j| self.gain(j)).collect()
    }

    /// Columns reordered by `order`, which must be a permutation of `0..k`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        let mut h = Vec::with_capacity(self.h.len());
        let mut distances = Vec::with_capacity(self.k);
        for &j in order {
            h.extend_from_slice(self.column(j));
            distances.push(self.distances[j]);
        }
        ChannelDraw {
            m: self.m,
            k: order.len(),
            distances,
            h,
        }
    }

    /// Columns in descending `‖h_j‖²`, ties by original index.
    pub fn sorted_by_gain(&self) -> Self {
        let gains = self.gains();
        let mut order: Vec<usize> = (0..self.k).collect();
        order.sort_by(|&a, &b| gains[b].total_cmp(&gains[a]).then(a.cmp(&b)));
        self.permuted(&order)
    }
}

/// `k` i.i.d. distances with density `2z/(d²-d0²)` on `[d0, d]`.
pub fn sample_distances(k: usize, geom: &CellGeometry, rng: &mut RngStream) -> Vec<f64> {
    let (a2, span) = (geom.d0 * geom.d0, geom.d * geom.d - geom.d0 * geom.d0);
    (0..k)
        .map(|_| {
            if span == 0.0 {
                geom.d0
            } else {
                let u: f64 = rng.random();
                (a2 + u * span).sqrt()
            }
        })
        .collect()
}

/// Rayleigh draw `h_j = g_j / sqrt(1 + d_j^α)` with `m` antennas.
pub fn sample_channel(
    distances: &[f64],
    m: usize,
    geom: &CellGeometry,
    rng: &mut RngStream,
) -> ChannelDraw {
    let mut h = Vec::with_capacity(m * distances.len());
    for &d in distances {
        let scale = geom.attenuation(d).sqrt().recip();
        for _ in 0..m {
            h.push(rng.complex_gaussian() * scale);
        }
    }
    ChannelDraw {
        m,
        k: distances.len(),
        distances: distances.to_vec(),
        h,
    }
}

/// Convenience: distances then channel from the same stream.
pub fn sample_draw(k: usize, m: usize, geom: &CellGeometry, rng: &mut RngStream) -> ChannelDraw {
    let d = sample_distances(k, geom, rng);
    sample_channel(&d, m, geom, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn geom(d: f64) -> CellGeometry {
        CellGeometry::new(50.0, d, 3.76).unwrap()
    }

    #[test]
    fn geometry_validation() {
        assert!(CellGeometry::new(0.0, 10.0, 3.0).is_err());
        assert!(CellGeometry::new(50.0, 40.0, 3.0).is_err());
        assert!(CellGeometry::new(50.0, 60.0, 2.0).is_err());
        assert_eq!(geom(500.0).eta(), 10.0);
    }

    #[test]
    fn table_mass_and_floor() {
        let g = geom(500.0);
        let t = QuadratureTable::new(&g, 100).unwrap();
        assert!((0.999..=1.001).contains(&t.mass()));
        let floor = g.attenuation(g.d0);
        assert!(t.c.iter().all(|&c| c >= floor));
        assert!(t.phi.iter().all(|&p| (g.d0..=g.d).contains(&p)));
    }

    #[test]
    fn table_mass_at_100_nodes() {
        let t = QuadratureTable::new(&geom(200.0), 100).unwrap();
        assert_relative_eq!(t.mass(), 1.000_041_1, max_relative = 1e-7);
    }

    #[test]
    fn degenerate_table_is_an_error() {
        let g = geom(50.0);
        assert!(matches!(
            QuadratureTable::new(&g, 100),
            Err(Error::DegenerateGeometry { .. })
        ));
        let law = LargeScale::new(&g, 100).unwrap();
        assert_relative_eq!(law.mean_gain(1), 1.0 / g.attenuation(50.0));
    }

    #[test]
    fn mean_gain_is_linear_in_m() {
        let law = LargeScale::new(&geom(200.0), 100).unwrap();
        assert_relative_eq!(law.mean_gain(4), 4.0 * law.mean_gain(1), max_relative = 1e-15);
    }

    #[test]
    fn convergence_guard_stops() {
        let law = LargeScale::converged(&geom(200.0), 100).unwrap();
        let n = law.table().unwrap().n_terms();
        let finer = LargeScale::new(&geom(200.0), 2 * n).unwrap();
        assert!(((finer.mean_gain(1) - law.mean_gain(1)) / law.mean_gain(1)).abs() < 1e-6);
    }

    #[test]
    fn ordered_moments_sum_to_k_mean_gain() {
        let g = geom(500.0);
        let t = QuadratureTable::new(&g, 100).unwrap();
        let i = ordered_moments(8, &g, &t);
        let total: f64 = i.iter().sum();
        assert_relative_eq!(total, 8.0 * t.mean_inverse_c(), max_relative = 1e-6);
        assert!(i[0] > i[7]);
        assert_relative_eq!(
            ordered_moment(1, 1, &g, &t).unwrap(),
            t.mean_inverse_c(),
            max_relative = 1e-12
        );
        assert!(ordered_moment(0, 8, &g, &t).is_err());
        assert!(ordered_moment(9, 8, &g, &t).is_err());
    }

    #[test]
    fn ordered_weights_survive_large_k() {
        let g = geom(200.0);
        let t = QuadratureTable::new(&g, 100).unwrap();
        let w = ordered_weights(256, &g, &t);
        assert!(w.iter().flatten().all(|x| x.is_finite() && *x >= 0.0));
        let total: f64 = w.iter().flatten().sum();
        assert_relative_eq!(total, 256.0 * t.mass(), max_relative = 1e-9);
    }

    #[test]
    fn rng_streams_reproduce() {
        let mut a = RngStream::for_trial(7, 1, 2);
        let mut b = RngStream::for_trial(7, 1, 2);
        let mut c = RngStream::for_trial(7, 2, 1);
        let (x, y, z) = (a.next_u64(), b.next_u64(), c.next_u64());
        assert_eq!(x, y);
        assert_ne!(x, z);
    }

    #[test]
    fn degenerate_distances() {
        let mut rng = RngStream::new(1, 0);
        assert!(sample_distances(10, &geom(50.0), &mut rng)
            .iter()
            .all(|&d| d == 50.0));
    }

    #[test]
    fn sorted_draw_is_descending() {
        let g = geom(500.0);
        let mut rng = RngStream::new(3, 0);
        let draw = sample_draw(16, 4, &g, &mut rng).sorted_by_gain();
        let gains = draw.gains();
        assert!(gains.windows(2).all(|w| w[0] >= w[1]));
        assert!(draw.distances().iter().all(|d| (50.0..=500.0).contains(d)));
    }
}

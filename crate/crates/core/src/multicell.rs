//! Inter-cell interference (ICI) from frequency-reuse-one neighbours, treated
//! as extra Gaussian noise at the serving base station.

use rand::Rng;

use crate::analytic::{Scenario, SystemKind};
use crate::channel::{LargeScale, QuadratureTable, RngStream};
use crate::error::{Error, Result};

/// Serving cell of radius `d` inside an interference field of radius `d1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MulticellLayout {
    pub d: f64,
    pub d1: f64,
    /// Users per km², zero when the layout was given explicitly.
    pub rho: f64,
    pub k_per_cell: usize,
    pub l_cells: usize,
    pub p_max_total: f64,
}

impl MulticellLayout {
    /// `K = ⌈ρπD²⌉`, `K' = ⌈ρπD1²⌉`, `L = ⌈(K' - K)/K⌉` with radii in km.
    pub fn from_density(d: f64, d1: f64, rho_per_km2: f64, p_max_total: f64) -> Result<Self> {
        check_radii(d, d1)?;
        if !(rho_per_km2 > 0.0 && rho_per_km2.is_finite()) {
            return Err(Error::Config(format!("density {rho_per_km2} must be > 0")));
        }
        let area = |r: f64| rho_per_km2 * std::f64::consts::PI * (r / 1e3).powi(2);
        let k = area(d).ceil() as usize;
        let k_field = area(d1).ceil() as usize;
        let l = (k_field.saturating_sub(k) as f64 / k as f64).ceil() as usize;
        Ok(MulticellLayout {
            d,
            d1,
            rho: rho_per_km2,
            k_per_cell: k,
            l_cells: l,
            p_max_total,
        })
    }

    /// Explicit user count and neighbour count; `l_cells` may be zero.
    pub fn explicit(d: f64, d1: f64, k_per_cell: usize, l_cells: usize, p_max_total: f64) -> Result<Self> {
        check_radii(d, d1)?;
        if k_per_cell == 0 {
            return Err(Error::Config("cells need at least one user".into()));
        }
        Ok(MulticellLayout {
            d,
            d1,
            rho: 0.0,
            k_per_cell,
            l_cells,
            p_max_total,
        })
    }

    /// Per-cell budget `P'/(L + 1)`.
    pub fn p_max_cell(&self) -> f64 {
        self.p_max_total / (self.l_cells as f64 + 1.0)
    }

    /// Same layout with the total budget chosen so each cell gets `p_cell`.
    pub fn with_cell_power(&self, p_cell: f64) -> Self {
        MulticellLayout {
            p_max_total: p_cell * (self.l_cells as f64 + 1.0),
            ..*self
        }
    }
}

fn check_radii(d: f64, d1: f64) -> Result<()> {
    if !(d > 0.0 && d1 > d && d1.is_finite()) {
        return Err(Error::Geometry(format!(
            "interference radius {d1} must exceed cell radius {d}"
        )));
    }
    Ok(())
}

/// Quadrature over the interferer annulus `[d, d1]`.
pub fn ici_quadrature(d: f64, d1: f64, alpha: f64, n_terms: usize) -> Result<QuadratureTable> {
    check_radii(d, d1)?;
    QuadratureTable::over_interval(d, d1, alpha, n_terms)
}

/// NOMA or OMA side of a comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Access {
    Noma,
    Oma,
}

/// Deterministic ICI powers for one layout.
#[derive(Debug, Clone, PartialEq)]
pub struct IciModel {
    pub table: QuadratureTable,
    pub i_noma: f64,
    pub i_oma: f64,
    pub g_subbands: f64,
}

impl IciModel {
    pub fn new(layout: &MulticellLayout, alpha: f64, n_terms: usize, g_subbands: f64) -> Result<Self> {
        let table = ici_quadrature(layout.d, layout.d1, alpha, n_terms)?;
        let i_noma = ici_power(layout, &table, Access::Noma, g_subbands);
        Ok(IciModel {
            i_oma: i_noma / g_subbands,
            i_noma,
            g_subbands,
            table,
        })
    }
}

/// `L · P_cell · E[1/(1+d'^α)]` for NOMA, a `1/G` share of it for OMA.
pub fn ici_power(layout: &MulticellLayout, table: &QuadratureTable, access: Access, g_subbands: f64) -> f64 {
    let i = layout.l_cells as f64 * layout.p_max_cell() * table.mean_inverse_c();
    match access {
        Access::Noma => i,
        Access::Oma => i / g_subbands,
    }
}

/// One realization of the NOMA ICI: `K·L` interferers uniform on the
/// annulus, each at power `P_cell/K` through a unit-mean exponential
/// effective channel.
pub fn sampled_ici_power(layout: &MulticellLayout, alpha: f64, rng: &mut RngStream) -> f64 {
    let n = layout.k_per_cell * layout.l_cells;
    let p = layout.p_max_cell() / layout.k_per_cell as f64;
    let (a2, span) = (layout.d * layout.d, layout.d1 * layout.d1 - layout.d * layout.d);
    let mut total = 0.0;
    for _ in 0..n {
        let u: f64 = rng.random();
        let z = (a2 + u * span).sqrt();
        let e: f64 = rng.sample(rand_distr::Exp1);
        total += e / (1.0 + z.powf(alpha));
    }
    p * total
}

/// `|wᴴg|²` for a unit-norm detector `w` independent of an `m`-antenna
/// Rayleigh vector `g`.
pub fn effective_ici_gain(m: usize, rng: &mut RngStream) -> f64 {
    let w: Vec<_> = (0..m).map(|_| rng.complex_gaussian()).collect();
    let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let mut acc = num_complex::Complex64::new(0.0, 0.0);
    for wi in &w {
        acc += wi.conj() * rng.complex_gaussian();
    }
    acc.norm_sqr() / (norm * norm)
}

/// Single-cell ESG of `kind` with `N0` raised to `I_NOMA + N0`.
pub fn multicell_esg(
    kind: SystemKind,
    sc: &Scenario,
    law: &LargeScale,
    i_noma: f64,
) -> Result<f64> {
    kind.esg(&sc.with_noise(i_noma + sc.n0), law)
}

/// Sum SINR at the serving BS. OMA divides signal, ICI and noise by `G`, so
/// both sides coincide; the reduction shows up only per subband.
pub fn sinr_summary(sc: &Scenario, law: &LargeScale, ici: &IciModel, access: Access) -> f64 {
    let signal = sc.p_max * law.mean_gain(1);
    match access {
        Access::Noma => signal / (ici.i_noma + sc.n0),
        Access::Oma => {
            let g = ici.g_subbands;
            (signal / g) / (ici.i_oma + sc.n0 / g)
        }
    }
}

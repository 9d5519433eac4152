use rayon::prelude::*;

use crate::analytic::SystemKind;
use crate::channel::{sample_draw, LargeScale, RngStream};
use crate::error::{Error, Result};
use crate::multicell::{ici_power, ici_quadrature, sampled_ici_power, Access};
use crate::receivers::{
    fdma_mrc_rates, fdma_zf_rates, mmimo_oma_rates, mmse_sic_rates, mrc_sic_rates,
    oma_rates_siso, sic_rates_siso, Grouping, MmimoOmaOptions, PowerAllocation,
};

use super::config::{dbm_to_watts, ExperimentConfig, Normalize, PowerSpec, SweepPoint};
use super::report::{EsgReport, EsgRow};

const ZF_REDRAWS: usize = 8;

/// Transmit power giving a received sum SNR of `target_snr_db` at the BS,
/// using the per-antenna mean gain.
pub fn snr_calibrate(law: &LargeScale, target_snr_db: f64, n0: f64) -> f64 {
    10f64.powf(target_snr_db / 10.0) * n0 / law.mean_gain(1)
}

/// Inverse of [`snr_calibrate`].
pub fn received_snr_db(law: &LargeScale, p_max: f64, n0: f64) -> f64 {
    10.0 * (p_max * law.mean_gain(1) / n0).log10()
}

/// Sample mean with a normal-approximation 95% half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub half_width: f64,
}

impl Estimate {
    pub fn from_samples(xs: &[f64]) -> Self {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let half_width = if xs.len() > 1 {
            let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
            1.96 * (var / n).sqrt()
        } else {
            0.0
        };
        Estimate { mean, half_width }
    }

    /// Whether `x` lies in the interval widened by `rel_band · |x|`.
    pub fn covers(&self, x: f64, rel_band: f64) -> bool {
        (x - self.mean).abs() <= self.half_width + rel_band * x.abs()
    }
}

/// Result of one sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointResult {
    pub point: SweepPoint,
    /// Per-cell transmit budget actually used.
    pub p_max: f64,
    /// Deterministic NOMA ICI power (zero in a single cell).
    pub ici: f64,
    pub scheme_pair: String,
    pub noma: Option<Estimate>,
    pub oma: Option<Estimate>,
    pub esg: Option<Estimate>,
    pub analytic_noma: f64,
    pub analytic_oma: f64,
    pub analytic_esg: f64,
}

/// Whether to run trials or only the closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMode {
    Analytic,
    Simulate,
}

/// Scheme-pair label for the CSV.
pub fn scheme_pair(kind: SystemKind, group_w: usize) -> String {
    match kind {
        SystemKind::Siso => "SIC/FDMA-SUD".into(),
        SystemKind::MimoZf => "MMSE-SIC/FDMA-ZF".into(),
        SystemKind::MimoMrc => "MMSE-SIC/FDMA-MRC".into(),
        SystemKind::Mmimo => format!("MRC-SIC/FDMA-MRC-W{group_w}"),
    }
}

/// One paired NOMA/OMA instantaneous sum-rate sample.
pub fn simulate_pair(
    point: &SweepPoint,
    p_max: f64,
    n0: f64,
    rng: &mut RngStream,
    mmimo: MmimoOmaOptions,
) -> Result<(f64, f64)> {
    let (k, m) = (point.k_users, point.m_antennas);
    let pa = PowerAllocation::equal(k, p_max);
    for _ in 0..ZF_REDRAWS {
        let draw = sample_draw(k, m, &point.geom, rng);
        let pair = match point.kind {
            SystemKind::Siso => (
                sic_rates_siso(&draw.sorted_by_gain(), &pa, n0)?.sum,
                oma_rates_siso(&draw, &pa, &Grouping::singletons(k), n0)?.sum,
            ),
            SystemKind::MimoZf => {
                let grouping = Grouping::random(k, m, rng)?;
                match fdma_zf_rates(&draw, &pa, &grouping, n0) {
                    Ok(oma) => (mmse_sic_rates(&draw, &pa, n0)?.sum, oma.sum),
                    Err(Error::SingularGroup { .. }) => continue,
                    Err(e) => return Err(e),
                }
            }
            SystemKind::MimoMrc => (
                mmse_sic_rates(&draw, &pa, n0)?.sum,
                fdma_mrc_rates(&draw, &pa, n0)?.sum,
            ),
            SystemKind::Mmimo => {
                let grouping = Grouping::random(k, point.group_w, rng)?;
                (
                    mrc_sic_rates(&draw.sorted_by_gain(), &pa, n0)?.sum,
                    mmimo_oma_rates(&draw, &pa, &grouping, n0, mmimo)?.sum,
                )
            }
        };
        return Ok(pair);
    }
    Err(Error::SingularGroup { group: 0 })
}

/// Runs every sweep point of `cfg`.
pub fn run_scenario(cfg: &ExperimentConfig, mode: RunMode) -> Result<EsgReport> {
    let mut points = cfg.points()?;
    points.sort_by(|a, b| a.value.total_cmp(&b.value));
    let scale = |kind: SystemKind, k: usize| match (cfg.normalization(), kind) {
        (Normalize::PerUser, _) => 1.0 / k as f64,
        (Normalize::Total, _) => 1.0,
    };
    let mmimo = MmimoOmaOptions {
        full_interference: cfg.mmimo_full_interference,
        strict_favorable: false,
    };
    let mut results = Vec::with_capacity(points.len());
    for (idx, point) in points.into_iter().enumerate() {
        let law = LargeScale::converged(&point.geom, cfg.n_terms)?;
        let (p_max, layout) = match (point.power, point.layout) {
            (PowerSpec::SnrDb(s), layout) => {
                let p = snr_calibrate(&law, s, point.n0);
                (p, layout.map(|l| l.with_cell_power(p)))
            }
            (PowerSpec::TotalDbm(x), Some(l)) => {
                let l = crate::multicell::MulticellLayout {
                    p_max_total: dbm_to_watts(x),
                    ..l
                };
                (l.p_max_cell(), Some(l))
            }
            (PowerSpec::TotalDbm(x), None) => (dbm_to_watts(x), None),
        };
        let ici = match &layout {
            Some(l) => {
                let table = ici_quadrature(l.d, l.d1, point.geom.alpha, cfg.n_terms)?;
                ici_power(l, &table, Access::Noma, 1.0)
            }
            None => 0.0,
        };
        let sc = point.scenario(p_max);
        sc.validate()?;
        let s = scale(point.kind, point.k_users);
        let (an, ao) = point.kind.ergodic_pair(&sc.with_noise(ici + point.n0), &law)?;
        let (noma, oma, esg) = match mode {
            RunMode::Analytic => (None, None, None),
            RunMode::Simulate => {
                let samples: Vec<(f64, f64)> = (0..cfg.trials)
                    .into_par_iter()
                    .map(|t| {
                        let mut rng = RngStream::for_trial(cfg.seed, idx, t);
                        let n0 = match &layout {
                            Some(l) => point.n0 + sampled_ici_power(l, point.geom.alpha, &mut rng),
                            None => point.n0,
                        };
                        simulate_pair(&point, p_max, n0, &mut rng, mmimo)
                    })
                    .collect::<Result<_>>()?;
                let noma: Vec<f64> = samples.iter().map(|p| p.0 * s).collect();
                let oma: Vec<f64> = samples.iter().map(|p| p.1 * s).collect();
                let diff: Vec<f64> = samples.iter().map(|p| (p.0 - p.1) * s).collect();
                (
                    Some(Estimate::from_samples(&noma)),
                    Some(Estimate::from_samples(&oma)),
                    Some(Estimate::from_samples(&diff)),
                )
            }
        };
        results.push(PointResult {
            scheme_pair: scheme_pair(point.kind, point.group_w),
            point,
            p_max,
            ici,
            noma,
            oma,
            esg,
            analytic_noma: an * s,
            analytic_oma: ao * s,
            analytic_esg: (an - ao) * s,
        });
    }
    let rows = results
        .iter()
        .map(|r| EsgRow {
            sweep_name: cfg.sweep_name(),
            sweep_value: r.point.value,
            scheme_pair: r.scheme_pair.clone(),
            noma_sim: r.noma.map(|e| e.mean),
            oma_sim: r.oma.map(|e| e.mean),
            esg_sim: r.esg.map(|e| e.mean),
            esg_analytic: Some(r.analytic_esg),
            ci_halfwidth: r.esg.map(|e| e.half_width),
            trials: if mode == RunMode::Simulate { cfg.trials } else { 0 },
            seed: cfg.seed,
        })
        .collect();
    Ok(EsgReport { rows, points: results })
}

/// [`run_scenario`] on a dedicated pool of `threads` workers.
pub fn run_scenario_on(cfg: &ExperimentConfig, mode: RunMode, threads: Option<usize>) -> Result<EsgReport> {
    match threads {
        None => run_scenario(cfg, mode),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            pool.install(|| run_scenario(cfg, mode))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::CellGeometry;
    use approx::assert_relative_eq;

    #[test]
    fn calibration_round_trip() {
        let g = CellGeometry::new(50.0, 50.0, 3.76).unwrap();
        let law = LargeScale::new(&g, 100).unwrap();
        assert_relative_eq!(snr_calibrate(&law, 0.0, 1e-11), 1e-11 * g.attenuation(50.0));
        let g = CellGeometry::new(50.0, 200.0, 3.76).unwrap();
        let law = LargeScale::new(&g, 100).unwrap();
        for t in [-10.0, 0.0, 13.3, 40.0] {
            let p = snr_calibrate(&law, t, 1e-11);
            assert!((received_snr_db(&law, p, 1e-11) - t).abs() < 1e-10);
        }
    }

    #[test]
    fn estimate_half_width() {
        let e = Estimate::from_samples(&[1.0, 3.0]);
        assert_eq!(e.mean, 2.0);
        assert_relative_eq!(e.half_width, 1.96 * (2.0f64 / 2.0).sqrt());
        assert_eq!(Estimate::from_samples(&[5.0]).half_width, 0.0);
        assert!(e.covers(3.0, 0.0));
        assert!(!e.covers(10.0, 0.0));
    }

    #[test]
    fn analytic_mode_has_no_sim_columns() {
        let cfg = ExperimentConfig::from_toml_str(
            r#"
scenario = "siso"
d_outer_m = 200.0
k_users = 16
sweep = "snr_db"
sweep_values = [10.0, 0.0]
"#,
        )
        .unwrap();
        let rep = run_scenario(&cfg, RunMode::Analytic).unwrap();
        assert_eq!(rep.rows.len(), 2);
        assert_eq!(rep.rows[0].sweep_value, 0.0);
        assert!(rep.rows[0].esg_sim.is_none());
        assert_eq!(rep.rows[0].trials, 0);
        assert!((rep.rows[0].esg_analytic.unwrap() - 0.2837).abs() < 1e-3);
    }

    #[test]
    fn simulation_is_deterministic_across_pools() {
        let cfg = ExperimentConfig::from_toml_str(
            r#"
scenario = "mimo_zf"
d_outer_m = 200.0
k_users = 16
m_antennas = 4
sweep = "snr_db"
sweep_values = [10.0]
trials = 12
seed = 9
"#,
        )
        .unwrap();
        let a = run_scenario_on(&cfg, RunMode::Simulate, Some(1)).unwrap();
        let b = run_scenario_on(&cfg, RunMode::Simulate, Some(3)).unwrap();
        assert_eq!(a.rows, b.rows);
        assert!(a.rows[0].ci_halfwidth.unwrap() > 0.0);
    }
}

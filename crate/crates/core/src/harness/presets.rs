use crate::error::{Error, Result};

use super::config::{ExperimentConfig, ScenarioKind, SweepVar};

pub const PRESET_NAMES: [&str; 15] = [
    "fig2a", "fig2b", "fig2c", "fig3a", "fig3b", "fig3c", "fig3d", "fig4a", "fig4b", "fig4c",
    "fig7a", "fig7b", "fig7c", "fig7d", "table4",
];

const ETAS: [f64; 3] = [1.0, 4.0, 10.0];
const D0: f64 = 50.0;
const DELTA: f64 = 0.5;
const VARSIGMA: f64 = 1.0 / 16.0;

fn base(scenario: ScenarioKind, eta: f64, sweep: SweepVar, values: Vec<f64>) -> ExperimentConfig {
    ExperimentConfig {
        name: Some(format!("eta={eta}")),
        scenario,
        d_inner_m: D0,
        d_outer_m: D0 * eta,
        alpha: 3.76,
        k_users: None,
        m_antennas: None,
        group_w: None,
        delta: None,
        group_ratio: None,
        sweep,
        sweep_values: values,
        snr_sum_db: None,
        p_total_dbm: None,
        noise_dbm: -80.0,
        trials: 2000,
        seed: 1,
        n_terms: 100,
        output: None,
        multicell: false,
        d_interf_m: 5000.0,
        density_per_km2: 1000.0,
        normalize: None,
        mmimo_full_interference: false,
    }
}

fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).round() as usize;
    (0..=n).map(|i| lo + step * i as f64).collect()
}

fn powers_of_two(lo: u32, hi: u32) -> Vec<f64> {
    (lo..=hi).map(|e| f64::from(1u32 << e)).collect()
}

/// Versus K at η = 10 for SNR_sum ∈ {0, 10, 20} dB.
fn versus_k(kind: ScenarioKind, ks: Vec<f64>) -> Vec<ExperimentConfig> {
    [0.0, 10.0, 20.0]
        .into_iter()
        .map(|snr| {
            let mut c = base(kind, 10.0, SweepVar::KUsers, ks.clone());
            c.name = Some(format!("eta=10,snr={snr}"));
            c.snr_sum_db = Some(snr);
            match kind {
                ScenarioKind::MimoZf => c.m_antennas = Some(4),
                ScenarioKind::Mmimo => {
                    c.delta = Some(DELTA);
                    c.group_ratio = Some(VARSIGMA);
                }
                _ => {}
            }
            c
        })
        .collect()
}

/// Versus SNR_sum ∈ [0, 40] dB at K = 256.
fn versus_snr(kind: ScenarioKind, m: usize) -> Vec<ExperimentConfig> {
    ETAS.into_iter()
        .map(|eta| {
            let mut c = base(kind, eta, SweepVar::SnrDb, grid(0.0, 40.0, 5.0));
            c.k_users = Some(256);
            c.m_antennas = Some(m);
            if kind == ScenarioKind::Mmimo {
                c.group_ratio = Some(VARSIGMA);
            } else if m > 1 {
                c.name = Some(format!("eta={eta},m={m}"));
            }
            c
        })
        .collect()
}

/// Versus total transmit power in [20, 60] dBm on the density layout.
fn versus_total_power(kind: ScenarioKind, eta: f64) -> ExperimentConfig {
    let mut c = base(kind, eta, SweepVar::PTotalDbm, grid(20.0, 60.0, 5.0));
    c.multicell = true;
    match kind {
        ScenarioKind::MimoMrc => c.m_antennas = Some(4),
        ScenarioKind::MimoZf => {
            c.m_antennas = Some(4);
            // FDMA-ZF needs K divisible by M; round the layout K up.
            let layout = crate::multicell::MulticellLayout::from_density(
                c.d_outer_m.max(c.d_inner_m),
                c.d_interf_m,
                c.density_per_km2,
                0.0,
            )
            .map(|l| l.k_per_cell)
            .unwrap_or(4);
            c.k_users = Some(layout.div_ceil(4) * 4);
        }
        ScenarioKind::Mmimo => {
            c.delta = Some(DELTA);
            c.group_ratio = Some(VARSIGMA);
        }
        ScenarioKind::Siso => {}
    }
    c
}

fn table4() -> Vec<ExperimentConfig> {
    let mut out = Vec::with_capacity(12);
    for kind in [ScenarioKind::Siso, ScenarioKind::MimoZf, ScenarioKind::Mmimo] {
        for multicell in [false, true] {
            for snr in [0.0, 10.0] {
                let mut c = base(kind, 4.0, SweepVar::SnrDb, vec![snr]);
                let tag = match kind {
                    ScenarioKind::Siso => "siso",
                    ScenarioKind::MimoZf => "mimo",
                    _ => "mmimo",
                };
                let cell = if multicell { "multi" } else { "single" };
                c.name = Some(format!("{tag},{cell}"));
                c.k_users = Some(256);
                c.multicell = multicell;
                match kind {
                    ScenarioKind::MimoZf => c.m_antennas = Some(4),
                    ScenarioKind::Mmimo => {
                        c.delta = Some(DELTA);
                        c.group_ratio = Some(VARSIGMA);
                    }
                    _ => {}
                }
                out.push(c);
            }
        }
    }
    out
}

/// Experiment configs behind a named figure or table.
pub fn figure_preset(name: &str) -> Result<Vec<ExperimentConfig>> {
    let v = match name {
        "fig2a" => versus_k(ScenarioKind::Siso, powers_of_two(1, 8)),
        "fig2b" => versus_k(ScenarioKind::MimoZf, powers_of_two(2, 8)),
        "fig2c" => versus_k(ScenarioKind::Mmimo, powers_of_two(2, 8)),
        "fig3a" => versus_snr(ScenarioKind::Siso, 1),
        "fig3b" => versus_snr(ScenarioKind::MimoZf, 4),
        "fig3c" => [2, 4]
            .into_iter()
            .flat_map(|m| versus_snr(ScenarioKind::MimoMrc, m))
            .collect(),
        "fig3d" => versus_snr(ScenarioKind::Mmimo, 128),
        "fig4a" => ETAS
            .into_iter()
            .map(|eta| {
                let mut c = base(ScenarioKind::MimoZf, eta, SweepVar::MAntennas, powers_of_two(0, 3));
                c.k_users = Some(256);
                c.snr_sum_db = Some(40.0);
                c
            })
            .collect(),
        "fig4b" => [0.0, 10.0, 20.0]
            .into_iter()
            .map(|snr| {
                let mut c = base(ScenarioKind::MimoMrc, 10.0, SweepVar::MAntennas, grid(1.0, 8.0, 1.0));
                c.name = Some(format!("eta=10,snr={snr}"));
                c.k_users = Some(256);
                c.snr_sum_db = Some(snr);
                c
            })
            .collect(),
        "fig4c" => ETAS
            .into_iter()
            .map(|eta| {
                let mut c = base(ScenarioKind::Mmimo, eta, SweepVar::MAntennas, grid(32.0, 128.0, 32.0));
                c.delta = Some(DELTA);
                c.group_ratio = Some(VARSIGMA);
                c.snr_sum_db = Some(40.0);
                c
            })
            .collect(),
        "fig7a" => ETAS.into_iter().map(|e| versus_total_power(ScenarioKind::Siso, e)).collect(),
        "fig7b" => ETAS.into_iter().map(|e| versus_total_power(ScenarioKind::MimoZf, e)).collect(),
        "fig7c" => ETAS.into_iter().map(|e| versus_total_power(ScenarioKind::MimoMrc, e)).collect(),
        "fig7d" => [4.0, 10.0]
            .into_iter()
            .map(|e| versus_total_power(ScenarioKind::Mmimo, e))
            .collect(),
        "table4" => table4(),
        other => return Err(Error::UnknownPreset(other.to_string())),
    };
    Ok(v)
}

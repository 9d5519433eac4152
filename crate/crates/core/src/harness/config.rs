use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analytic::{Scenario, SystemKind};
use crate::channel::CellGeometry;
use crate::error::{Error, Result};
use crate::multicell::MulticellLayout;

const MAX_USERS: usize = 1 << 16;
const MAX_ANTENNAS: usize = 1 << 12;

/// Scheme pair selector as written in config files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    Siso,
    MimoZf,
    MimoMrc,
    Mmimo,
}

impl From<ScenarioKind> for SystemKind {
    fn from(k: ScenarioKind) -> Self {
        match k {
            ScenarioKind::Siso => SystemKind::Siso,
            ScenarioKind::MimoZf => SystemKind::MimoZf,
            ScenarioKind::MimoMrc => SystemKind::MimoMrc,
            ScenarioKind::Mmimo => SystemKind::Mmimo,
        }
    }
}

/// The swept quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVar {
    KUsers,
    MAntennas,
    SnrDb,
    PTotalDbm,
}

impl SweepVar {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepVar::KUsers => "k_users",
            SweepVar::MAntennas => "m_antennas",
            SweepVar::SnrDb => "snr_db",
            SweepVar::PTotalDbm => "p_total_dbm",
        }
    }
}

/// How ESG columns are scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalize {
    Total,
    PerUser,
}

fn default_d_inner() -> f64 {
    50.0
}
fn default_alpha() -> f64 {
    3.76
}
fn default_noise() -> f64 {
    -80.0
}
fn default_trials() -> usize {
    2000
}
fn default_seed() -> u64 {
    1
}
fn default_n_terms() -> usize {
    100
}
fn default_d1() -> f64 {
    5000.0
}
fn default_density() -> f64 {
    1000.0
}

/// One experiment: a scheme pair, a geometry and a single swept variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Curve label appended to `sweep_name` in the CSV.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub scenario: ScenarioKind,
    #[serde(default = "default_d_inner")]
    pub d_inner_m: f64,
    pub d_outer_m: f64,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_users: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_antennas: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_w: Option<usize>,
    /// `M/K`; fills whichever of K and M is not given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    /// `W/M`; `W = ⌈ςM⌉` when `group_w` is not given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_ratio: Option<f64>,
    pub sweep: SweepVar,
    pub sweep_values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snr_sum_db: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_total_dbm: Option<f64>,
    #[serde(default = "default_noise")]
    pub noise_dbm: f64,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_n_terms")]
    pub n_terms: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub multicell: bool,
    #[serde(default = "default_d1")]
    pub d_interf_m: f64,
    #[serde(default = "default_density")]
    pub density_per_km2: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalize: Option<Normalize>,
    /// Keep intra-group interference in massive-MIMO OMA.
    #[serde(default)]
    pub mmimo_full_interference: bool,
}

/// Transmit-power specification of one sweep point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PowerSpec {
    /// Received sum SNR (dB) at the serving BS.
    SnrDb(f64),
    /// Total budget over all cells (dBm).
    TotalDbm(f64),
}

/// A fully resolved sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub value: f64,
    pub kind: SystemKind,
    pub geom: CellGeometry,
    pub k_users: usize,
    pub m_antennas: usize,
    pub group_w: usize,
    pub power: PowerSpec,
    pub n0: f64,
    pub layout: Option<MulticellLayout>,
}

impl SweepPoint {
    /// Scenario at transmit power `p_max` (per cell).
    pub fn scenario(&self, p_max: f64) -> Scenario {
        Scenario {
            geom: self.geom,
            k_users: self.k_users,
            m_antennas: self.m_antennas,
            group_w: self.group_w,
            p_max,
            n0: self.n0,
        }
    }
}

/// dBm to watts.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

fn count(v: f64, what: &str) -> Result<usize> {
    if !(v.is_finite() && v >= 1.0 && v.fract() == 0.0) {
        return Err(Error::Config(format!("{what} = {v} must be a positive integer")));
    }
    Ok(v as usize)
}

fn finite(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Config(format!("{what} must be finite")))
    }
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).unwrap_or_default()
    }

    pub fn system_kind(&self) -> SystemKind {
        self.scenario.into()
    }

    pub fn normalization(&self) -> Normalize {
        self.normalize.unwrap_or(match self.scenario {
            ScenarioKind::Mmimo => Normalize::PerUser,
            _ => Normalize::Total,
        })
    }

    /// Label for the `sweep_name` column.
    pub fn sweep_name(&self) -> String {
        match &self.name {
            Some(n) => format!("{}[{n}]", self.sweep.as_str()),
            None => self.sweep.as_str().to_string(),
        }
    }

    /// Checks every field and every sweep point without running anything.
    pub fn validate(&self) -> Result<()> {
        self.points().map(|_| ())
    }

    /// Resolves each sweep value into concrete parameters.
    pub fn points(&self) -> Result<Vec<SweepPoint>> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.n_terms == 0 || self.n_terms > 100_000 {
            return Err(Error::Config("n_terms must lie in 1..=100000".into()));
        }
        if self.sweep_values.is_empty() {
            return Err(Error::Config("sweep_values is empty".into()));
        }
        let geom = CellGeometry::new(self.d_inner_m, self.d_outer_m, self.alpha)?;
        let n0 = dbm_to_watts(finite(self.noise_dbm, "noise_dbm")?);
        if !(n0 > 0.0 && n0.is_finite()) {
            return Err(Error::Config(format!("noise_dbm = {} is out of range", self.noise_dbm)));
        }
        for (v, what) in [(self.delta, "delta"), (self.group_ratio, "group_ratio")] {
            if let Some(v) = v {
                if !(v > 0.0 && v <= 1.0) {
                    return Err(Error::Config(format!("{what} = {v} must lie in (0, 1]")));
                }
            }
        }
        if self.snr_sum_db.is_some() && self.p_total_dbm.is_some() {
            return Err(Error::Config(
                "give at most one of snr_sum_db and p_total_dbm".into(),
            ));
        }
        let layout_base = if self.multicell {
            if !(self.d_interf_m > self.d_outer_m && self.d_interf_m.is_finite()) {
                return Err(Error::Config(format!(
                    "d_interf_m = {} must exceed d_outer_m",
                    self.d_interf_m
                )));
            }
            let l = MulticellLayout::from_density(
                self.d_outer_m,
                self.d_interf_m,
                self.density_per_km2,
                0.0,
            )?;
            if l.k_per_cell > MAX_USERS || l.l_cells > MAX_USERS * 64 {
                return Err(Error::Config("layout is too large".into()));
            }
            Some(l)
        } else {
            None
        };
        let mut seen = Vec::with_capacity(self.sweep_values.len());
        let mut out = Vec::with_capacity(self.sweep_values.len());
        for &value in &self.sweep_values {
            finite(value, "sweep value")?;
            if seen.contains(&value) {
                return Err(Error::Config(format!("duplicate sweep value {value}")));
            }
            seen.push(value);
            out.push(self.point(value, geom, n0, layout_base)?);
        }
        Ok(out)
    }

    fn point(
        &self,
        value: f64,
        geom: CellGeometry,
        n0: f64,
        layout: Option<MulticellLayout>,
    ) -> Result<SweepPoint> {
        let mut k = self.k_users;
        let mut m = self.m_antennas;
        match self.sweep {
            SweepVar::KUsers => k = Some(count(value, "k_users")?),
            SweepVar::MAntennas => m = Some(count(value, "m_antennas")?),
            _ => {}
        }
        let k = match (k, m, self.delta, layout) {
            (Some(k), ..) => k,
            (None, Some(m), Some(d), _) => (m as f64 / d).round().max(1.0) as usize,
            (None, _, _, Some(l)) => l.k_per_cell,
            _ => return Err(Error::Config("k_users is not determined".into())),
        };
        let m = match (m, self.delta) {
            (Some(m), _) => m,
            (None, Some(d)) => (k as f64 * d).ceil() as usize,
            (None, None) => 1,
        };
        if k == 0 || k > MAX_USERS {
            return Err(Error::Config(format!("k_users = {k} must lie in 1..={MAX_USERS}")));
        }
        if m == 0 || m > MAX_ANTENNAS {
            return Err(Error::Config(format!(
                "m_antennas = {m} must lie in 1..={MAX_ANTENNAS}"
            )));
        }
        let w = match (self.group_w, self.group_ratio) {
            (Some(w), _) => w,
            (None, Some(r)) => (r * m as f64).ceil() as usize,
            (None, None) => 1,
        };
        if w == 0 || w > m {
            return Err(Error::Config(format!("group_w = {w} must lie in 1..=M ({m})")));
        }
        match self.scenario {
            ScenarioKind::Siso if m != 1 => {
                return Err(Error::Config("siso needs m_antennas = 1".into()));
            }
            ScenarioKind::MimoZf if k % m != 0 => {
                return Err(Error::Config(format!(
                    "FDMA-ZF needs K divisible by M (K = {k}, M = {m})"
                )));
            }
            _ => {}
        }
        let power = match self.sweep {
            SweepVar::SnrDb => PowerSpec::SnrDb(value),
            SweepVar::PTotalDbm => PowerSpec::TotalDbm(value),
            _ => match (self.snr_sum_db, self.p_total_dbm) {
                (Some(s), None) => PowerSpec::SnrDb(finite(s, "snr_sum_db")?),
                (None, Some(p)) => PowerSpec::TotalDbm(finite(p, "p_total_dbm")?),
                _ => {
                    return Err(Error::Config(
                        "set snr_sum_db or p_total_dbm for a non-power sweep".into(),
                    ))
                }
            },
        };
        if let PowerSpec::TotalDbm(p) = power {
            if !(-100.0..=200.0).contains(&p) {
                return Err(Error::Config(format!("p_total_dbm = {p} is out of range")));
            }
        }
        if let PowerSpec::SnrDb(s) = power {
            if !(-100.0..=200.0).contains(&s) {
                return Err(Error::Config(format!("snr = {s} dB is out of range")));
            }
        }
        Ok(SweepPoint {
            value,
            kind: self.system_kind(),
            geom,
            k_users: k,
            m_antennas: m,
            group_w: w,
            power,
            n0,
            layout,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASIC: &str = r#"
scenario = "mimo_zf"
d_outer_m = 200.0
k_users = 256
m_antennas = 4
sweep = "snr_db"
sweep_values = [0.0, 10.0]
trials = 10
"#;

    #[test]
    fn parses_and_resolves() {
        let cfg = ExperimentConfig::from_toml_str(BASIC).unwrap();
        let pts = cfg.points().unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[1].power, PowerSpec::SnrDb(10.0));
        assert_eq!(pts[0].k_users, 256);
        assert!((pts[0].n0 - 1e-11).abs() < 1e-24);
        assert_eq!(cfg.sweep_name(), "snr_db");
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = format!("{BASIC}\nbogus_key = 1\n");
        assert!(matches!(ExperimentConfig::from_toml_str(&text), Err(Error::Config(_))));
    }

    #[test]
    fn divisibility_checked() {
        let text = BASIC.replace("k_users = 256", "k_users = 10");
        assert!(ExperimentConfig::from_toml_str(&text).is_err());
    }

    #[test]
    fn delta_fills_antennas() {
        let text = r#"
scenario = "mmimo"
d_outer_m = 500.0
delta = 0.5
group_ratio = 0.0625
sweep = "k_users"
sweep_values = [64.0, 256.0]
snr_sum_db = 10.0
"#;
        let cfg = ExperimentConfig::from_toml_str(text).unwrap();
        let pts = cfg.points().unwrap();
        assert_eq!((pts[1].m_antennas, pts[1].group_w), (128, 8));
        assert_eq!((pts[0].m_antennas, pts[0].group_w), (32, 2));
        assert_eq!(cfg.normalization(), Normalize::PerUser);
    }

    #[test]
    fn power_must_be_specified() {
        let text = BASIC.replace("sweep = \"snr_db\"", "sweep = \"k_users\"");
        assert!(ExperimentConfig::from_toml_str(&text).is_err());
    }

    #[test]
    fn toml_round_trip() {
        let cfg = ExperimentConfig::from_toml_str(BASIC).unwrap();
        let again = ExperimentConfig::from_toml_str(&cfg.to_toml_string()).unwrap();
        assert_eq!(cfg, again);
    }
}

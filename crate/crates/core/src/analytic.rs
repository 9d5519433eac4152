//! Closed-form ergodic sum-rates (nat/s/Hz) and ESG expressions.
//!
//! All NOMA expressions are the many-user forms; for finite `K` they are
//! Jensen upper bounds. Expectations over the user distance use the node
//! masses of a [`LargeScale`] law, so the equidistant cell needs no special
//! casing except where the order statistics enter.

use crate::channel::{ordered_weights, CellGeometry, LargeScale};
use crate::error::{Error, Result};
use crate::specfun::{self, NeumaierSum, EULER_GAMMA};

/// One single-cell operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub geom: CellGeometry,
    pub k_users: usize,
    pub m_antennas: usize,
    /// Users per subband in massive-MIMO OMA.
    pub group_w: usize,
    pub p_max: f64,
    pub n0: f64,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        self.geom.validate()?;
        if self.k_users == 0 || self.m_antennas == 0 || self.group_w == 0 {
            return Err(Error::Config("K, M and W must all be at least 1".into()));
        }
        if self.group_w > self.m_antennas {
            return Err(Error::FavorablePropagation {
                w: self.group_w,
                m: self.m_antennas,
            });
        }
        if !(self.p_max >= 0.0 && self.p_max.is_finite()) {
            return Err(Error::Config(format!("p_max = {} must be ≥ 0", self.p_max)));
        }
        if !(self.n0 > 0.0 && self.n0.is_finite()) {
            return Err(Error::Config(format!("n0 = {} must be > 0", self.n0)));
        }
        Ok(())
    }

    /// `δ = M/K`.
    pub fn delta(&self) -> f64 {
        self.m_antennas as f64 / self.k_users as f64
    }

    /// `ς = W/M`.
    pub fn varsigma(&self) -> f64 {
        self.group_w as f64 / self.m_antennas as f64
    }

    /// Same scenario with noise power `n0`.
    pub fn with_noise(&self, n0: f64) -> Self {
        Scenario { n0, ..*self }
    }

    fn m(&self) -> f64 {
        self.m_antennas as f64
    }
}

/// ESG split into its named contributions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EsgBreakdown {
    pub esg: f64,
    /// Large-scale near-far part.
    pub near_far: f64,
    /// Small-scale fading part.
    pub fading: f64,
    /// Scheme-specific extras such as `M ln M` or `Δ`.
    pub dof_terms: f64,
}

fn weighted<F: Fn(f64) -> f64>(law: &LargeScale, f: F) -> f64 {
    law.nodes().into_iter().map(|(w, c)| w * f(c)).collect::<NeumaierSum>().total()
}

fn normalized_nodes(law: &LargeScale) -> Vec<(f64, f64)> {
    let nodes = law.nodes();
    let mass: f64 = nodes.iter().map(|n| n.0).sum();
    nodes.into_iter().map(|(w, c)| (w / mass, c)).collect()
}

/// `Σ w e^x E1(x)` at `x = scale · c`; zero when no power is transmitted.
fn scaled_e1_average(law: &LargeScale, scale: f64) -> Result<f64> {
    if scale.is_infinite() {
        return Ok(0.0);
    }
    let mut acc = NeumaierSum::default();
    for (w, c) in law.nodes() {
        acc.add(w * specfun::scaled_exp_e1(scale * c)?);
    }
    Ok(acc.total())
}

/// SISO-NOMA: `ln(1 + P_max E|h|² / N0)`.
pub fn ergodic_siso_noma(sc: &Scenario, law: &LargeScale) -> f64 {
    (sc.p_max * law.mean_gain(1) / sc.n0).ln_1p()
}

/// SISO-OMA with FDMA-SUD, valid for any `K`.
pub fn ergodic_siso_oma(sc: &Scenario, law: &LargeScale) -> Result<f64> {
    scaled_e1_average(law, sc.n0 / sc.p_max)
}

/// Exact near-far gain: log ratio of the arithmetic and geometric means of
/// the large-scale gain `1/c`, with node masses renormalized to one.
pub fn near_far_gain(law: &LargeScale) -> f64 {
    match law {
        LargeScale::Ring { .. } => 0.0,
        LargeScale::Quadrature(_) => {
            let nodes = normalized_nodes(law);
            let am: f64 = nodes.iter().map(|(w, c)| w / c).sum();
            let log_gm: f64 = nodes.iter().map(|(w, c)| -w * c.ln()).sum();
            (am.ln() - log_gm).max(0.0)
        }
    }
}

/// Near-far gain as a function of `η = D/D0` alone, dropping the `1` in
/// `1 + d^α` (accurate when `D0^α ≫ 1`).
pub fn vartheta_eta(eta: f64, alpha: f64, n_terms: usize) -> Result<f64> {
    if !(eta >= 1.0 && eta.is_finite()) {
        return Err(Error::domain("vartheta_eta", format!("η = {eta} must be ≥ 1")));
    }
    if eta == 1.0 {
        return Ok(0.0);
    }
    let n = n_terms.max(1) as f64;
    let mut nodes = Vec::with_capacity(n_terms);
    for i in 1..=n_terms {
        let theta = (2.0 * i as f64 - 1.0) * std::f64::consts::PI / (2.0 * n);
        let lambda = 0.5 * (eta - 1.0) * theta.cos() + 0.5 * (eta + 1.0);
        nodes.push((lambda * theta.sin().abs(), lambda));
    }
    let mass: f64 = nodes.iter().map(|n| n.0).sum();
    let am: f64 = nodes.iter().map(|(w, l)| w / mass * l.powf(-alpha)).sum();
    let mean_log: f64 = nodes.iter().map(|(w, l)| w / mass * l.ln()).sum();
    Ok((am.ln() + alpha * mean_log).max(0.0))
}

/// High-SNR, many-user SISO ESG `ϑ + γ`.
pub fn esg_siso_high_snr(law: &LargeScale) -> EsgBreakdown {
    let near_far = near_far_gain(law);
    EsgBreakdown {
        esg: near_far + EULER_GAMMA,
        near_far,
        fading: EULER_GAMMA,
        dof_terms: 0.0,
    }
}

/// Finite-SNR SISO ESG.
pub fn esg_siso(sc: &Scenario, law: &LargeScale) -> Result<f64> {
    Ok(ergodic_siso_noma(sc, law) - ergodic_siso_oma(sc, law)?)
}

/// MIMO-NOMA: `M` times the SISO-NOMA expression.
pub fn ergodic_mimo_noma(sc: &Scenario, law: &LargeScale) -> f64 {
    sc.m() * ergodic_siso_noma(sc, law)
}

/// MIMO-OMA with FDMA-ZF over groups of `M` users.
pub fn ergodic_mimo_oma_zf(sc: &Scenario, law: &LargeScale) -> Result<f64> {
    Ok(sc.m() * scaled_e1_average(law, sc.m() * sc.n0 / sc.p_max)?)
}

/// MIMO-OMA with FDMA-MRC: `E ln(1 + P‖h‖²/N0)` with `‖h‖² ~ Gamma(M, c)`.
pub fn ergodic_mimo_oma_mrc(sc: &Scenario, law: &LargeScale) -> Result<f64> {
    if sc.p_max == 0.0 {
        return Ok(0.0);
    }
    let m = sc.m_antennas as u32;
    let mut acc = NeumaierSum::default();
    for (w, c) in law.nodes() {
        acc.add(w * specfun::ln_moment_gamma(m, c * sc.n0 / sc.p_max)?);
    }
    Ok(acc.total())
}

/// Low-SNR limit of FDMA-MRC: `M P E|h|² / N0`.
pub fn mrc_low_snr_limit(sc: &Scenario, law: &LargeScale) -> f64 {
    sc.p_max * law.mean_gain(sc.m_antennas) / sc.n0
}

/// `E_d ln(1 + d^α)` with renormalized node masses.
pub fn mean_log_attenuation(law: &LargeScale) -> f64 {
    normalized_nodes(law).iter().map(|(w, c)| w * c.ln()).sum()
}

/// `E ln‖h‖² = ψ(M) - E_d ln(1 + d^α)`.
pub fn mean_log_gain(m: usize, law: &LargeScale) -> Result<f64> {
    Ok(specfun::digamma_int(m as u32)? - mean_log_attenuation(law))
}

/// High-SNR limit of FDMA-MRC: `ln(P/N0) + E ln‖h‖²`.
pub fn mrc_high_snr_limit(sc: &Scenario, law: &LargeScale) -> Result<f64> {
    Ok((sc.p_max / sc.n0).ln() + mean_log_gain(sc.m_antennas, law)?)
}

/// High-SNR ZF ESG `Mϑ + M ln M + Mγ`.
pub fn esg_mimo_zf(sc: &Scenario, law: &LargeScale) -> EsgBreakdown {
    let m = sc.m();
    let near_far = m * near_far_gain(law);
    let fading = m * EULER_GAMMA;
    let dof_terms = m * m.ln();
    EsgBreakdown {
        esg: near_far + fading + dof_terms,
        near_far,
        fading,
        dof_terms,
    }
}

/// Finite-SNR ESG of MMSE-SIC over FDMA-ZF.
pub fn esg_mimo_zf_finite(sc: &Scenario, law: &LargeScale) -> Result<f64> {
    Ok(ergodic_mimo_noma(sc, law) - ergodic_mimo_oma_zf(sc, law)?)
}

/// Finite-SNR ESG of MMSE-SIC over FDMA-MRC.
pub fn esg_mimo_mrc(sc: &Scenario, law: &LargeScale) -> Result<f64> {
    Ok(ergodic_mimo_noma(sc, law) - ergodic_mimo_oma_mrc(sc, law)?)
}

/// `Δ = ln E‖h‖² - E ln‖h‖²`.
pub fn log_gain_gap(m: usize, law: &LargeScale) -> Result<f64> {
    Ok(law.mean_gain(m).ln() - mean_log_gain(m, law)?)
}

/// High-SNR MRC ESG `(M-1) ln(P E|h|²/N0) - ln M + Δ`.
pub fn esg_mimo_mrc_high_snr(sc: &Scenario, law: &LargeScale) -> Result<EsgBreakdown> {
    let m = sc.m();
    let dof = (m - 1.0) * (sc.p_max * law.mean_gain(1) / sc.n0).ln() - m.ln();
    let delta = log_gain_gap(sc.m_antennas, law)?;
    Ok(EsgBreakdown {
        esg: dof + delta,
        near_far: 0.0,
        fading: 0.0,
        dof_terms: dof + delta,
    })
}

/// Massive-MIMO NOMA with MRC-SIC, evaluated at the configured finite `K`
/// through the ordered-distance weights.
pub fn ergodic_mmimo_noma(sc: &Scenario, law: &LargeScale) -> Result<f64> {
    let table = match law {
        LargeScale::Ring { .. } => return Ok(ring_forms_for(sc)?.noma),
        LargeScale::Quadrature(t) => t,
    };
    if sc.p_max == 0.0 {
        return Ok(0.0);
    }
    let k = sc.k_users;
    let weights = ordered_weights(k, &sc.geom, table);
    let moments: Vec<f64> = weights
        .iter()
        .map(|row| row.iter().zip(&table.c).map(|(w, c)| w / c).sum())
        .collect();
    let mut acc = NeumaierSum::default();
    let mut tail = 0.0;
    for kk in (0..k).rev() {
        let psi = sc.p_max * sc.m() / (sc.p_max * tail + k as f64 * sc.n0);
        for (w, c) in weights[kk].iter().zip(&table.c) {
            acc.add(w * (psi / c).ln_1p());
        }
        tail += moments[kk];
    }
    Ok(acc.total())
}

/// Massive-MIMO OMA with interference-free MRC in groups of `W`.
pub fn ergodic_mmimo_oma(sc: &Scenario, law: &LargeScale) -> Result<f64> {
    let xi = sc.p_max / (sc.varsigma() * sc.n0);
    // Summing the order statistics over every rank recovers K copies of the
    // unordered law, so the ordered weights are not needed here.
    let per_user = weighted(law, |c| (xi / c).ln_1p());
    Ok(sc.delta() * sc.varsigma() * sc.k_users as f64 * per_user)
}

/// Per-user massive-MIMO ESG at finite SNR.
pub fn esg_mmimo_per_user(sc: &Scenario, law: &LargeScale) -> Result<f64> {
    Ok((ergodic_mmimo_noma(sc, law)? - ergodic_mmimo_oma(sc, law)?) / sc.k_users as f64)
}

/// The four NOMA/OMA scheme pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemKind {
    /// SIC against FDMA-SUD.
    Siso,
    /// MMSE-SIC against FDMA-ZF.
    MimoZf,
    /// MMSE-SIC against FDMA-MRC.
    MimoMrc,
    /// MRC-SIC against grouped FDMA-MRC; ESG reported per user.
    Mmimo,
}

impl SystemKind {
    /// `(noma, oma)` ergodic sum-rates.
    pub fn ergodic_pair(self, sc: &Scenario, law: &LargeScale) -> Result<(f64, f64)> {
        Ok(match self {
            SystemKind::Siso => (ergodic_siso_noma(sc, law), ergodic_siso_oma(sc, law)?),
            SystemKind::MimoZf => (ergodic_mimo_noma(sc, law), ergodic_mimo_oma_zf(sc, law)?),
            SystemKind::MimoMrc => (ergodic_mimo_noma(sc, law), ergodic_mimo_oma_mrc(sc, law)?),
            SystemKind::Mmimo => (ergodic_mmimo_noma(sc, law)?, ergodic_mmimo_oma(sc, law)?),
        })
    }

    /// Finite-SNR ESG; per user for [`SystemKind::Mmimo`].
    pub fn esg(self, sc: &Scenario, law: &LargeScale) -> Result<f64> {
        let (noma, oma) = self.ergodic_pair(sc, law)?;
        Ok(match self {
            SystemKind::Mmimo => (noma - oma) / sc.k_users as f64,
            _ => noma - oma,
        })
    }

    /// Number of OMA subbands `G`.
    pub fn subbands(self, sc: &Scenario) -> f64 {
        let k = sc.k_users as f64;
        match self {
            SystemKind::Siso | SystemKind::MimoMrc => k,
            SystemKind::MimoZf => k / sc.m_antennas as f64,
            SystemKind::Mmimo => k / sc.group_w as f64,
        }
    }
}

/// Equidistant massive-MIMO limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingForms {
    pub noma: f64,
    pub oma: f64,
    /// `noma - oma`.
    pub esg: f64,
    /// High-SNR per-user ESG `ζ - δς ln(1 + ϖ/ς)`.
    pub esg_per_user: f64,
    /// High-SNR per-antenna ESG `ζ/δ - ς ln(1 + ϖ/ς)`.
    pub esg_per_antenna: f64,
    pub zeta: f64,
}

/// Closed forms for every user at `d0`, with `ϖ = P/((1 + d0^α) N0)`.
pub fn ring_forms(
    d0: f64,
    alpha: f64,
    k: usize,
    m: usize,
    w: usize,
    p_max: f64,
    n0: f64,
) -> Result<RingForms> {
    if k == 0 || m == 0 || w == 0 {
        return Err(Error::Config("K, M and W must all be at least 1".into()));
    }
    if !(n0 > 0.0) || !(p_max >= 0.0) {
        return Err(Error::domain("ring_forms", "need p_max ≥ 0 and n0 > 0"));
    }
    let varpi = p_max / ((1.0 + d0.powf(alpha)) * n0);
    let (mf, delta, vs) = (m as f64, m as f64 / k as f64, w as f64 / m as f64);
    if varpi == 0.0 {
        return Ok(RingForms {
            noma: 0.0,
            oma: 0.0,
            esg: 0.0,
            esg_per_user: 0.0,
            esg_per_antenna: 0.0,
            zeta: 0.0,
        });
    }
    let xlnx = |x: f64| (1.0 + x) * x.ln_1p();
    let bracket = xlnx(varpi * delta + varpi) - xlnx(varpi * delta) - xlnx(varpi);
    let noma = mf / (varpi * delta) * bracket;
    let oma_log = (varpi / vs).ln_1p();
    let oma = vs * mf * oma_log;
    let zeta = (varpi * delta + varpi).ln_1p() * (1.0 + delta)
        - (varpi * delta).ln_1p() * delta
        - varpi.ln_1p();
    Ok(RingForms {
        noma,
        oma,
        esg: noma - oma,
        esg_per_user: zeta - delta * vs * oma_log,
        esg_per_antenna: zeta / delta - vs * oma_log,
        zeta,
    })
}

fn ring_forms_for(sc: &Scenario) -> Result<RingForms> {
    ring_forms(
        sc.geom.d0,
        sc.geom.alpha,
        sc.k_users,
        sc.m_antennas,
        sc.group_w,
        sc.p_max,
        sc.n0,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature;
    use approx::assert_relative_eq;

    const N0: f64 = 1e-11;

    fn law(d: f64) -> LargeScale {
        LargeScale::new(&CellGeometry::new(50.0, d, 3.76).unwrap(), 100).unwrap()
    }

    fn scenario(d: f64, k: usize, m: usize, w: usize, snr_db: f64) -> (Scenario, LargeScale) {
        let l = law(d);
        let p = 10f64.powf(snr_db / 10.0) * N0 / l.mean_gain(1);
        let sc = Scenario {
            geom: CellGeometry::new(50.0, d, 3.76).unwrap(),
            k_users: k,
            m_antennas: m,
            group_w: w,
            p_max: p,
            n0: N0,
        };
        (sc, l)
    }

    #[test]
    fn ring_snr_normalization() {
        let (sc, l) = scenario(50.0, 4, 1, 1, 10.0);
        assert_relative_eq!(ergodic_siso_noma(&sc, &l), 11f64.ln(), max_relative = 1e-12);
        // ∫ ln(1+10t) e^{-t} dt
        let oracle = quadrature::integrate_to_infinity(
            |t| (10.0 * t).ln_1p() * (-t).exp(),
            0.0,
            1.0,
            0.0,
            1e-13,
        );
        assert_relative_eq!(oracle, 2.014_642_544_708_452, max_relative = 1e-10);
        assert_relative_eq!(ergodic_siso_oma(&sc, &l).unwrap(), oracle, max_relative = 1e-10);
    }

    #[test]
    fn zero_power_gives_zero() {
        let (mut sc, l) = scenario(200.0, 8, 4, 1, 0.0);
        sc.p_max = 0.0;
        assert_eq!(ergodic_siso_noma(&sc, &l), 0.0);
        assert_eq!(ergodic_siso_oma(&sc, &l).unwrap(), 0.0);
        assert_eq!(ergodic_mimo_oma_zf(&sc, &l).unwrap(), 0.0);
        assert_eq!(ergodic_mimo_oma_mrc(&sc, &l).unwrap(), 0.0);
        assert_eq!(ergodic_mmimo_oma(&sc, &l).unwrap(), 0.0);
    }

    #[test]
    fn table_values_single_cell() {
        let (sc0, l) = scenario(200.0, 256, 1, 1, 0.0);
        assert_relative_eq!(esg_siso(&sc0, &l).unwrap(), 0.2837, epsilon = 5e-4);
        let (sc10, _) = scenario(200.0, 256, 1, 1, 10.0);
        assert_relative_eq!(esg_siso(&sc10, &l).unwrap(), 0.9966, epsilon = 5e-4);
        let (z10, _) = scenario(200.0, 256, 4, 1, 10.0);
        assert_relative_eq!(esg_mimo_zf_finite(&z10, &l).unwrap(), 6.774, epsilon = 2e-3);
    }

    #[test]
    fn near_far_ordering_and_simplification() {
        assert_eq!(near_far_gain(&law(50.0)), 0.0);
        assert_eq!(vartheta_eta(1.0, 3.76, 100).unwrap(), 0.0);
        let t: Vec<f64> = [100.0, 200.0, 500.0].iter().map(|&d| near_far_gain(&law(d))).collect();
        assert!(t[2] > t[1] && t[1] > t[0] && t[0] > 0.0);
        for (eta, exact) in [2.0, 4.0, 10.0].iter().zip(&t) {
            let simple = vartheta_eta(*eta, 3.76, 100).unwrap();
            assert!((simple - exact).abs() / exact < 0.03);
        }
    }

    #[test]
    fn siso_high_snr_floor() {
        let b = esg_siso_high_snr(&law(50.0));
        assert_relative_eq!(b.esg, EULER_GAMMA);
        let (sc, l) = scenario(200.0, 256, 1, 1, 40.0);
        let finite = esg_siso(&sc, &l).unwrap();
        assert!((finite - esg_siso_high_snr(&l).esg).abs() < 0.02);
    }

    #[test]
    fn mimo_reduces_to_siso() {
        let (sc, l) = scenario(200.0, 8, 1, 1, 10.0);
        assert_relative_eq!(ergodic_mimo_noma(&sc, &l), ergodic_siso_noma(&sc, &l));
        let siso = ergodic_siso_oma(&sc, &l).unwrap();
        assert_relative_eq!(ergodic_mimo_oma_zf(&sc, &l).unwrap(), siso, max_relative = 1e-14);
        assert_relative_eq!(ergodic_mimo_oma_mrc(&sc, &l).unwrap(), siso, max_relative = 1e-8);
        let (sc4, _) = scenario(200.0, 8, 4, 1, 10.0);
        assert_relative_eq!(
            ergodic_mimo_noma(&sc4, &l),
            4.0 * ergodic_siso_noma(&sc4, &l),
            max_relative = 1e-15
        );
    }

    #[test]
    fn mrc_limits() {
        // Second-order term is ρ²M(M+1)E[c⁻²]/2, so the 2% band at -20 dB
        // needs equidistant users and M ≤ 2; spread cells need lower SNR.
        for m in [1, 2] {
            let (lo, l) = scenario(50.0, 8, m, 1, -20.0);
            let v = ergodic_mimo_oma_mrc(&lo, &l).unwrap();
            assert!((v - mrc_low_snr_limit(&lo, &l)).abs() / v < 0.02);
        }
        let (lo, l) = scenario(200.0, 8, 4, 1, -40.0);
        let v = ergodic_mimo_oma_mrc(&lo, &l).unwrap();
        assert!((v - mrc_low_snr_limit(&lo, &l)).abs() / v < 0.02);
        let (hi, _) = scenario(200.0, 8, 4, 1, 60.0);
        let v = ergodic_mimo_oma_mrc(&hi, &l).unwrap();
        assert!((v - mrc_high_snr_limit(&hi, &l).unwrap()).abs() < 1e-3);
    }

    #[test]
    fn zf_identity() {
        let l = law(200.0);
        for m in [2usize, 4, 8] {
            let (sc, _) = scenario(200.0, 256, m, 1, 40.0);
            let b = esg_mimo_zf(&sc, &l);
            let mf = m as f64;
            let want = mf * esg_siso_high_snr(&l).esg + mf * mf.ln();
            assert_relative_eq!(b.esg, want, max_relative = 1e-12);
            assert_relative_eq!(b.esg, b.near_far + b.fading + b.dof_terms);
        }
    }

    #[test]
    fn mrc_single_antenna_matches_siso_asymptote() {
        let (sc, l) = scenario(200.0, 256, 1, 1, 40.0);
        let mrc = esg_mimo_mrc_high_snr(&sc, &l).unwrap().esg;
        assert!((mrc - esg_siso_high_snr(&l).esg).abs() < 0.02);
    }

    #[test]
    fn mmimo_single_user_is_plain_average() {
        let (sc, l) = scenario(200.0, 1, 8, 1, 10.0);
        let want = weighted(&l, |c| (sc.p_max * 8.0 / (N0 * c)).ln_1p());
        assert_relative_eq!(ergodic_mmimo_noma(&sc, &l).unwrap(), want, max_relative = 1e-12);
    }

    #[test]
    fn mmimo_table_values() {
        for (snr, want) in [(0.0, 0.1804), (10.0, 0.5754)] {
            let (sc, l) = scenario(200.0, 256, 128, 8, snr);
            let v = esg_mmimo_per_user(&sc, &l).unwrap();
            assert_relative_eq!(v, want, epsilon = 5e-4);
        }
    }

    #[test]
    fn mmimo_noma_grows_with_power() {
        let (a, l) = scenario(500.0, 64, 32, 2, 0.0);
        let (b, _) = scenario(500.0, 64, 32, 2, 5.0);
        assert!(ergodic_mmimo_noma(&b, &l).unwrap() > ergodic_mmimo_noma(&a, &l).unwrap());
    }

    #[test]
    fn ordered_weights_approach_ring_forms() {
        let d0 = 50.0;
        let geom = CellGeometry::new(d0, d0 * (1.0 + 1e-3), 3.76).unwrap();
        let l = LargeScale::new(&geom, 100).unwrap();
        let c0 = geom.attenuation(d0);
        let sc = Scenario {
            geom,
            k_users: 256,
            m_antennas: 128,
            group_w: 8,
            p_max: 10.0 * c0 * N0,
            n0: N0,
        };
        let ordered = ergodic_mmimo_noma(&sc, &l).unwrap();
        let ring = ring_forms(d0, 3.76, 256, 128, 8, sc.p_max, N0).unwrap();
        assert!((ordered - ring.noma).abs() / ring.noma < 0.01);
        let ordered_oma = ergodic_mmimo_oma(&sc, &l).unwrap();
        assert!((ordered_oma - ring.oma).abs() / ring.oma < 0.01);
    }

    #[test]
    fn ring_form_identities() {
        let c0 = 1.0 + 50f64.powf(3.76);
        let t = ring_forms(50.0, 3.76, 256, 128, 8, 10.0 * c0 * N0, N0).unwrap();
        assert_relative_eq!(t.noma, 185.19, epsilon = 0.01);
        assert_relative_eq!(t.oma, 40.65, epsilon = 0.01);
        let (delta, vs) = (0.5, 1.0 / 16.0);
        assert_relative_eq!(
            t.esg_per_user,
            t.zeta - delta * vs * (10.0f64 / vs).ln_1p(),
            max_relative = 1e-15
        );
        let zero = ring_forms(50.0, 3.76, 256, 128, 8, 0.0, N0).unwrap();
        assert_eq!(zero.esg, 0.0);
        let tiny = ring_forms(50.0, 3.76, 256, 128, 8, 1e-6 * c0 * N0, N0).unwrap();
        assert!(tiny.esg.abs() < 1e-5);
    }

    #[test]
    fn ring_mmimo_routes_to_ring_forms() {
        let (sc, l) = scenario(50.0, 256, 128, 8, 10.0);
        let ring = ring_forms_for(&sc).unwrap();
        assert_relative_eq!(ergodic_mmimo_noma(&sc, &l).unwrap(), ring.noma);
        assert_relative_eq!(ergodic_mmimo_oma(&sc, &l).unwrap(), ring.oma, max_relative = 1e-12);
    }

    #[test]
    fn scenario_validation() {
        let (mut sc, _) = scenario(200.0, 8, 4, 1, 0.0);
        assert!(sc.validate().is_ok());
        sc.group_w = 5;
        assert!(sc.validate().is_err());
        sc.group_w = 1;
        sc.n0 = 0.0;
        assert!(sc.validate().is_err());
    }
}

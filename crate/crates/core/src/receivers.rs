//! Instantaneous per-user rates (nat/s/Hz) for each detection scheme.
//!
//! Every NOMA detector decodes in the column order of the draw it is given;
//! pass a [`ChannelDraw::sorted_by_gain`] draw for the strongest-first order.

use std::fmt;

use num_complex::Complex64;
use rand::seq::SliceRandom;

use crate::channel::{ChannelDraw, RngStream};
use crate::error::{Error, Result};
use crate::linalg;

/// Transmit powers under a sum-power budget.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerAllocation {
    pub p: Vec<f64>,
    pub p_max: f64,
}

impl PowerAllocation {
    pub fn new(p: Vec<f64>, p_max: f64) -> Result<Self> {
        if p.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
            return Err(Error::domain("PowerAllocation", "powers must be finite and ≥ 0"));
        }
        let total: f64 = p.iter().sum();
        if total > p_max * (1.0 + 1e-12) {
            return Err(Error::domain(
                "PowerAllocation",
                format!("total {total} exceeds budget {p_max}"),
            ));
        }
        Ok(PowerAllocation { p, p_max })
    }

    /// `p_k = p_max / k` for every user.
    pub fn equal(k: usize, p_max: f64) -> Self {
        PowerAllocation {
            p: vec![p_max / k as f64; k],
            p_max,
        }
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }
}

/// Partition of users into frequency subbands.
#[derive(Debug, Clone, PartialEq)]
pub struct Grouping {
    pub groups: Vec<Vec<usize>>,
    pub freq_share: Vec<f64>,
}

impl Grouping {
    /// Groups with bandwidth shares proportional to their size.
    pub fn from_groups(k: usize, groups: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; k];
        for &u in groups.iter().flatten() {
            if u >= k || seen[u] {
                return Err(Error::Config(format!(
                    "grouping is not a partition of 0..{k} (user {u})"
                )));
            }
            seen[u] = true;
        }
        if seen.iter().any(|s| !s) || groups.iter().any(Vec::is_empty) {
            return Err(Error::Config(format!("grouping is not a partition of 0..{k}")));
        }
        let freq_share = groups.iter().map(|g| g.len() as f64 / k as f64).collect();
        Ok(Grouping { groups, freq_share })
    }

    /// One user per subband.
    pub fn singletons(k: usize) -> Self {
        Grouping {
            groups: (0..k).map(|u| vec![u]).collect(),
            freq_share: vec![1.0 / k as f64; k],
        }
    }

    /// Consecutive blocks of `size`; the last block may be shorter.
    pub fn contiguous(k: usize, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::Config("group size must be at least 1".into()));
        }
        let groups = (0..k)
            .collect::<Vec<_>>()
            .chunks(size)
            .map(<[usize]>::to_vec)
            .collect();
        Self::from_groups(k, groups)
    }

    /// Uniformly random blocks of `size`.
    pub fn random(k: usize, size: usize, rng: &mut RngStream) -> Result<Self> {
        if size == 0 {
            return Err(Error::Config("group size must be at least 1".into()));
        }
        let mut users: Vec<usize> = (0..k).collect();
        users.shuffle(rng);
        let groups = users.chunks(size).map(<[usize]>::to_vec).collect();
        Self::from_groups(k, groups)
    }

    pub fn user_count(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }

    /// Subband share of each user.
    pub fn share_of_users(&self) -> Vec<f64> {
        let mut f = vec![0.0; self.user_count()];
        for (g, &share) in self.groups.iter().zip(&self.freq_share) {
            for &u in g {
                f[u] = share;
            }
        }
        f
    }
}

/// Detection scheme tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Sic,
    FdmaSud,
    MmseSic,
    MrcSic,
    FdmaZf,
    FdmaMrc,
    MmimoOma,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Sic => "SIC",
            Scheme::FdmaSud => "FDMA-SUD",
            Scheme::MmseSic => "MMSE-SIC",
            Scheme::MrcSic => "MRC-SIC",
            Scheme::FdmaZf => "FDMA-ZF",
            Scheme::FdmaMrc => "FDMA-MRC",
            Scheme::MmimoOma => "FDMA-MRC-GROUP",
        })
    }
}

/// Per-user and total instantaneous rates.
#[derive(Debug, Clone, PartialEq)]
pub struct RateReport {
    pub per_user: Vec<f64>,
    pub sum: f64,
    pub scheme: Scheme,
}

impl RateReport {
    fn new(per_user: Vec<f64>, scheme: Scheme) -> Self {
        let sum = per_user.iter().sum();
        RateReport {
            per_user,
            sum,
            scheme,
        }
    }
}

fn check_inputs(draw: &ChannelDraw, pa: &PowerAllocation, n0: f64) -> Result<()> {
    if !(n0.is_finite() && n0 > 0.0) {
        return Err(Error::domain("receivers", format!("noise power {n0} must be > 0")));
    }
    if pa.len() != draw.k() {
        return Err(Error::domain(
            "receivers",
            format!("{} powers for {} users", pa.len(), draw.k()),
        ));
    }
    Ok(())
}

fn require_siso(draw: &ChannelDraw, scheme: &'static str) -> Result<()> {
    if draw.m() != 1 {
        return Err(Error::SchemeMismatch {
            scheme,
            expected: format!("a single BS antenna, got {}", draw.m()),
        });
    }
    Ok(())
}

/// `f ln(1 + s/(f n0))`.
fn fdma_rate(f: f64, signal: f64, n0: f64) -> f64 {
    f * (signal / (f * n0)).ln_1p()
}

/// Single-antenna SIC: user `k` sees interference from users after it.
pub fn sic_rates_siso(draw: &ChannelDraw, pa: &PowerAllocation, n0: f64) -> Result<RateReport> {
    check_inputs(draw, pa, n0)?;
    require_siso(draw, "SIC")?;
    let rx: Vec<f64> = (0..draw.k()).map(|j| pa.p[j] * draw.gain(j)).collect();
    let mut rates = vec![0.0; rx.len()];
    let mut tail = 0.0;
    for j in (0..rx.len()).rev() {
        rates[j] = (rx[j] / (tail + n0)).ln_1p();
        tail += rx[j];
    }
    Ok(RateReport::new(rates, Scheme::Sic))
}

/// Single-antenna FDMA with single-user detection on each subband.
pub fn oma_rates_siso(
    draw: &ChannelDraw,
    pa: &PowerAllocation,
    grouping: &Grouping,
    n0: f64,
) -> Result<RateReport> {
    check_inputs(draw, pa, n0)?;
    require_siso(draw, "FDMA-SUD")?;
    let f = grouping.share_of_users();
    if f.len() != draw.k() {
        return Err(Error::Config("grouping does not cover the draw".into()));
    }
    if let Some(bad) = f.iter().find(|&&x| !(x > 0.0)) {
        return Err(Error::domain("oma_rates_siso", format!("subband share {bad}")));
    }
    let rates = (0..draw.k())
        .map(|j| fdma_rate(f[j], pa.p[j] * draw.gain(j), n0))
        .collect();
    Ok(RateReport::new(rates, Scheme::FdmaSud))
}

/// MMSE-SIC: per-user log-det differences of the backward accumulation
/// `I + Σ_{i≥k} p_i h_i h_iᴴ / n0`.
pub fn mmse_sic_rates(draw: &ChannelDraw, pa: &PowerAllocation, n0: f64) -> Result<RateReport> {
    check_inputs(draw, pa, n0)?;
    let m = draw.m();
    let mut acc = vec![Complex64::new(0.0, 0.0); m * m];
    for i in 0..m {
        acc[i * m + i] = Complex64::new(1.0, 0.0);
    }
    let mut rates = vec![0.0; draw.k()];
    let mut prev = 0.0;
    for j in (0..draw.k()).rev() {
        let h = draw.column(j);
        let s = pa.p[j] / n0;
        for r in 0..m {
            let hr = h[r] * s;
            for c in 0..m {
                acc[r * m + c] += hr * h[c].conj();
            }
        }
        let ld = linalg::hpd_log_det(&acc, m).ok_or_else(|| {
            Error::domain("mmse_sic_rates", "accumulated covariance lost definiteness")
        })?;
        rates[j] = (ld - prev).max(0.0);
        prev = ld;
    }
    Ok(RateReport::new(rates, Scheme::MmseSic))
}

/// `M ln(1 + Σ p_k ‖h_k‖² / (M n0))`.
pub fn mmse_rate_upper_bound(draw: &ChannelDraw, pa: &PowerAllocation, n0: f64) -> Result<f64> {
    check_inputs(draw, pa, n0)?;
    let m = draw.m() as f64;
    let rx: f64 = (0..draw.k()).map(|j| pa.p[j] * draw.gain(j)).sum();
    Ok(m * (rx / (m * n0)).ln_1p())
}

/// MRC-SIC: matched filter per user, later users as residual interference.
pub fn mrc_sic_rates(draw: &ChannelDraw, pa: &PowerAllocation, n0: f64) -> Result<RateReport> {
    check_inputs(draw, pa, n0)?;
    let k = draw.k();
    let gains = draw.gains();
    let mut rates = vec![0.0; k];
    for j in 0..k {
        let hj = draw.column(j);
        let mut interference = 0.0;
        for i in j + 1..k {
            interference += pa.p[i] * linalg::dot_h(hj, draw.column(i)).norm_sqr();
        }
        // ‖h_i‖²|e_jᴴe_i|² = |h_jᴴh_i|²/‖h_j‖²
        let interference = if gains[j] > 0.0 {
            interference / gains[j]
        } else {
            0.0
        };
        rates[j] = (pa.p[j] * gains[j] / (interference + n0)).ln_1p();
    }
    Ok(RateReport::new(rates, Scheme::MrcSic))
}

/// FDMA with zero-forcing inside each group of exactly `M` users.
pub fn fdma_zf_rates(
    draw: &ChannelDraw,
    pa: &PowerAllocation,
    grouping: &Grouping,
    n0: f64,
) -> Result<RateReport> {
    check_inputs(draw, pa, n0)?;
    let m = draw.m();
    if !draw.k().is_multiple_of(m) {
        return Err(Error::Config(format!(
            "FDMA-ZF needs K divisible by M (K = {}, M = {m})",
            draw.k()
        )));
    }
    let mut rates = vec![0.0; draw.k()];
    for (gi, (group, &f)) in grouping.groups.iter().zip(&grouping.freq_share).enumerate() {
        if group.len() != m {
            return Err(Error::SchemeMismatch {
                scheme: "FDMA-ZF",
                expected: format!("groups of {m} users, group {gi} has {}", group.len()),
            });
        }
        // Row-major m×m matrix whose columns are the group's channels.
        let mut hg = vec![Complex64::new(0.0, 0.0); m * m];
        for (c, &u) in group.iter().enumerate() {
            for (r, z) in draw.column(u).iter().enumerate() {
                hg[r * m + c] = *z;
            }
        }
        let inv = linalg::inverse(&hg, m).ok_or(Error::SingularGroup { group: gi })?;
        for (row, &u) in group.iter().enumerate() {
            let norm2: f64 = inv[row * m..(row + 1) * m].iter().map(|z| z.norm_sqr()).sum();
            let gain = 1.0 / norm2;
            rates[u] = fdma_rate(f, pa.p[u] * gain, n0);
        }
    }
    Ok(RateReport::new(rates, Scheme::FdmaZf))
}

/// FDMA with MRC, one user per subband of width `1/K`.
pub fn fdma_mrc_rates(draw: &ChannelDraw, pa: &PowerAllocation, n0: f64) -> Result<RateReport> {
    check_inputs(draw, pa, n0)?;
    let f = 1.0 / draw.k() as f64;
    let rates = (0..draw.k())
        .map(|j| fdma_rate(f, pa.p[j] * draw.gain(j), n0))
        .collect();
    Ok(RateReport::new(rates, Scheme::FdmaMrc))
}

/// Switches for [`mmimo_oma_rates`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MmimoOmaOptions {
    /// Keep intra-group MRC interference instead of the interference-free
    /// idealization.
    pub full_interference: bool,
    /// Reject groups larger than the antenna count.
    pub strict_favorable: bool,
}

/// Massive-MIMO FDMA: per-user MRC inside groups of `W` users sharing a
/// subband of width `W/K`.
pub fn mmimo_oma_rates(
    draw: &ChannelDraw,
    pa: &PowerAllocation,
    grouping: &Grouping,
    n0: f64,
    opts: MmimoOmaOptions,
) -> Result<RateReport> {
    check_inputs(draw, pa, n0)?;
    let m = draw.m();
    let mut rates = vec![0.0; draw.k()];
    for (group, &f) in grouping.groups.iter().zip(&grouping.freq_share) {
        if opts.strict_favorable && group.len() > m {
            return Err(Error::FavorablePropagation { w: group.len(), m });
        }
        for &u in group {
            let hu = draw.column(u);
            let gu = draw.gain(u);
            let mut interference = 0.0;
            if opts.full_interference && gu > 0.0 {
                for &i in group.iter().filter(|&&i| i != u) {
                    interference += pa.p[i] * linalg::dot_h(hu, draw.column(i)).norm_sqr();
                }
                interference /= gu;
            }
            rates[u] = f * (pa.p[u] * gu / (interference + f * n0)).ln_1p();
        }
    }
    Ok(RateReport::new(rates, Scheme::MmimoOma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{sample_draw, CellGeometry};
    use approx::assert_relative_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn scalar_draw(gains: &[f64]) -> ChannelDraw {
        let h = gains.iter().map(|g| c(g.sqrt())).collect();
        ChannelDraw::from_columns(1, vec![100.0; gains.len()], h).unwrap()
    }

    fn random_draw(k: usize, m: usize, seed: u64) -> ChannelDraw {
        let g = CellGeometry::new(50.0, 200.0, 3.76).unwrap();
        let mut rng = RngStream::new(seed, 0);
        sample_draw(k, m, &g, &mut rng).sorted_by_gain()
    }

    #[test]
    fn sic_hand_example() {
        let draw = scalar_draw(&[2.0, 1.0]);
        let pa = PowerAllocation::new(vec![1.0, 1.0], 2.0).unwrap();
        let r = sic_rates_siso(&draw, &pa, 1.0).unwrap();
        assert_relative_eq!(r.per_user[0], 2f64.ln(), max_relative = 1e-14);
        assert_relative_eq!(r.per_user[1], 2f64.ln(), max_relative = 1e-14);
        assert_relative_eq!(r.sum, 4f64.ln(), max_relative = 1e-14);
    }

    #[test]
    fn oma_hand_example() {
        let draw = scalar_draw(&[2.0, 1.0]);
        let pa = PowerAllocation::equal(2, 2.0);
        let r = oma_rates_siso(&draw, &pa, &Grouping::singletons(2), 1.0).unwrap();
        assert_relative_eq!(r.sum, 0.5 * (5f64.ln() + 3f64.ln()), max_relative = 1e-14);
    }

    #[test]
    fn single_user_schemes_coincide() {
        let draw = scalar_draw(&[0.7]);
        let pa = PowerAllocation::equal(1, 3.0);
        let a = sic_rates_siso(&draw, &pa, 0.5).unwrap().sum;
        let b = oma_rates_siso(&draw, &pa, &Grouping::singletons(1), 0.5).unwrap().sum;
        assert_relative_eq!(a, b, max_relative = 1e-15);
        assert_relative_eq!(a, (1.0f64 + 3.0 * 0.7 / 0.5).ln(), max_relative = 1e-15);
    }

    #[test]
    fn siso_schemes_reject_arrays() {
        let draw = random_draw(4, 2, 1);
        let pa = PowerAllocation::equal(4, 1.0);
        assert!(matches!(
            sic_rates_siso(&draw, &pa, 1.0),
            Err(Error::SchemeMismatch { .. })
        ));
    }

    #[test]
    fn mmse_reduces_to_sic_for_one_antenna() {
        let draw = random_draw(6, 1, 2);
        let pa = PowerAllocation::equal(6, 1e-3);
        let a = sic_rates_siso(&draw, &pa, 1e-11).unwrap();
        let b = mmse_sic_rates(&draw, &pa, 1e-11).unwrap();
        for (x, y) in a.per_user.iter().zip(&b.per_user) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn mmse_single_user_rank_one() {
        let h = vec![c(1.0), Complex64::new(0.0, 2.0)];
        let draw = ChannelDraw::from_columns(2, vec![60.0], h).unwrap();
        let pa = PowerAllocation::equal(1, 2.0);
        let r = mmse_sic_rates(&draw, &pa, 1.0).unwrap();
        assert_relative_eq!(r.sum, 11f64.ln(), max_relative = 1e-13);
    }

    #[test]
    fn mrc_orthogonal_columns_are_interference_free() {
        let h = vec![c(1.0), c(0.0), c(0.0), c(2.0)];
        let draw = ChannelDraw::from_columns(2, vec![60.0, 60.0], h).unwrap();
        let pa = PowerAllocation::equal(2, 2.0);
        let r = mrc_sic_rates(&draw, &pa, 1.0).unwrap();
        assert_relative_eq!(r.per_user[0], 2f64.ln(), max_relative = 1e-14);
        assert_relative_eq!(r.per_user[1], 5f64.ln(), max_relative = 1e-14);
    }

    #[test]
    fn mrc_equals_sic_for_one_antenna() {
        let draw = random_draw(5, 1, 3);
        let pa = PowerAllocation::equal(5, 1e-4);
        let a = sic_rates_siso(&draw, &pa, 1e-11).unwrap();
        let b = mrc_sic_rates(&draw, &pa, 1e-11).unwrap();
        for (x, y) in a.per_user.iter().zip(&b.per_user) {
            assert_relative_eq!(x, y, max_relative = 1e-12);
        }
    }

    #[test]
    fn zf_orthogonal_group_keeps_gains() {
        let h = vec![c(3.0), c(0.0), c(0.0), Complex64::new(0.0, 2.0)];
        let draw = ChannelDraw::from_columns(2, vec![60.0, 60.0], h).unwrap();
        let pa = PowerAllocation::equal(2, 2.0);
        let g = Grouping::contiguous(2, 2).unwrap();
        let r = fdma_zf_rates(&draw, &pa, &g, 1.0).unwrap();
        assert_relative_eq!(r.per_user[0], 10f64.ln(), max_relative = 1e-13);
        assert_relative_eq!(r.per_user[1], 5f64.ln(), max_relative = 1e-13);
    }

    #[test]
    fn zf_with_one_antenna_is_fdma() {
        let draw = random_draw(4, 1, 4);
        let pa = PowerAllocation::equal(4, 1e-4);
        let g = Grouping::singletons(4);
        let a = fdma_zf_rates(&draw, &pa, &g, 1e-11).unwrap();
        let b = oma_rates_siso(&draw, &pa, &g, 1e-11).unwrap();
        assert_relative_eq!(a.sum, b.sum, max_relative = 1e-12);
    }

    #[test]
    fn zf_rejects_indivisible_k() {
        let draw = random_draw(5, 2, 5);
        let pa = PowerAllocation::equal(5, 1.0);
        let g = Grouping::contiguous(5, 2).unwrap();
        assert!(matches!(fdma_zf_rates(&draw, &pa, &g, 1.0), Err(Error::Config(_))));
    }

    #[test]
    fn zf_singular_group_is_reported() {
        let h = vec![c(1.0), c(1.0), c(2.0), c(2.0)];
        let draw = ChannelDraw::from_columns(2, vec![60.0, 60.0], h).unwrap();
        let pa = PowerAllocation::equal(2, 1.0);
        let g = Grouping::contiguous(2, 2).unwrap();
        assert!(matches!(
            fdma_zf_rates(&draw, &pa, &g, 1.0),
            Err(Error::SingularGroup { group: 0 })
        ));
    }

    #[test]
    fn fdma_mrc_hand_example() {
        let h = vec![c(2.0), c(0.0), c(1.0), c(0.0)];
        let draw = ChannelDraw::from_columns(2, vec![60.0, 60.0], h).unwrap();
        let pa = PowerAllocation::equal(2, 2.0);
        let r = fdma_mrc_rates(&draw, &pa, 1.0).unwrap();
        assert_relative_eq!(r.sum, 0.5 * (9f64.ln() + 3f64.ln()), max_relative = 1e-14);
    }

    #[test]
    fn mmimo_oma_singletons_are_fdma_mrc() {
        let draw = random_draw(8, 4, 6);
        let pa = PowerAllocation::equal(8, 1e-4);
        let a = mmimo_oma_rates(&draw, &pa, &Grouping::singletons(8), 1e-11, Default::default())
            .unwrap();
        let b = fdma_mrc_rates(&draw, &pa, 1e-11).unwrap();
        assert_relative_eq!(a.sum, b.sum, max_relative = 1e-13);
    }

    #[test]
    fn mmimo_oma_options() {
        let draw = random_draw(8, 2, 7);
        let pa = PowerAllocation::equal(8, 1e-4);
        let g = Grouping::contiguous(8, 4).unwrap();
        let strict = MmimoOmaOptions {
            strict_favorable: true,
            ..Default::default()
        };
        assert!(matches!(
            mmimo_oma_rates(&draw, &pa, &g, 1e-11, strict),
            Err(Error::FavorablePropagation { w: 4, m: 2 })
        ));
        let ideal = mmimo_oma_rates(&draw, &pa, &g, 1e-11, Default::default()).unwrap();
        let full = MmimoOmaOptions {
            full_interference: true,
            ..Default::default()
        };
        let real = mmimo_oma_rates(&draw, &pa, &g, 1e-11, full).unwrap();
        assert!(real.sum < ideal.sum);
    }

    #[test]
    fn wider_subband_raises_rate() {
        let draw = scalar_draw(&[1.0, 1.0]);
        let pa = PowerAllocation::equal(2, 2.0);
        let narrow = mmimo_oma_rates(&draw, &pa, &Grouping::singletons(2), 1.0, Default::default())
            .unwrap();
        let wide = mmimo_oma_rates(
            &draw,
            &pa,
            &Grouping::contiguous(2, 2).unwrap(),
            1.0,
            Default::default(),
        )
        .unwrap();
        assert!(wide.per_user[0] > narrow.per_user[0]);
    }

    #[test]
    fn grouping_validation() {
        assert!(Grouping::from_groups(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Grouping::from_groups(3, vec![vec![0, 1]]).is_err());
        let g = Grouping::contiguous(10, 4).unwrap();
        assert_eq!(g.groups.len(), 3);
        assert_relative_eq!(g.freq_share.iter().sum::<f64>(), 1.0, max_relative = 1e-12);
        let mut rng = RngStream::new(9, 0);
        let r = Grouping::random(12, 4, &mut rng).unwrap();
        assert_eq!(r.user_count(), 12);
    }

    #[test]
    fn power_budget_enforced() {
        assert!(PowerAllocation::new(vec![1.0, 1.5], 2.0).is_err());
        assert!(PowerAllocation::new(vec![1.0, -0.5], 2.0).is_err());
        assert!(PowerAllocation::new(vec![1.0, 1.0], 2.0).is_ok());
    }

    #[test]
    fn nonpositive_noise_rejected() {
        let draw = random_draw(2, 2, 8);
        let pa = PowerAllocation::equal(2, 1.0);
        assert!(mmse_sic_rates(&draw, &pa, 0.0).is_err());
    }
}

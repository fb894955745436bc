//! Sampled time evolution and growth rates extracted from it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{ModelParams, TwoLevelState};
use crate::ode::IntegratorConfig;
use crate::propagator::propagate_sampled;

/// Occupations |c↑|² and |c↓|² at strictly increasing times.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimeSeries {
    pub times: Vec<f64>,
    pub occ_up: Vec<f64>,
    pub occ_down: Vec<f64>,
}

impl TimeSeries {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn total(&self, i: usize) -> f64 {
        self.occ_up[i] + self.occ_down[i]
    }

    /// Rows (t, |c↑|², |c↓|²).
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        (0..self.len()).map(move |i| (self.times[i], self.occ_up[i], self.occ_down[i]))
    }
}

/// Evolves `psi0` from t = 0 to `t_max` in one continuous integration,
/// sampling at `n_samples` equally spaced times including both ends.
pub fn evolve_series(
    p: &ModelParams,
    psi0: TwoLevelState,
    t_max: f64,
    n_samples: usize,
    cfg: &IntegratorConfig,
) -> Result<TimeSeries> {
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(Error::InvalidParameter(format!("t_max must be positive, got {t_max}")));
    }
    if n_samples < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 samples, got {n_samples}")));
    }
    let times: Vec<f64> = (0..n_samples).map(|i| t_max * i as f64 / (n_samples - 1) as f64).collect();
    let states = propagate_sampled(p, psi0, &times, cfg)?;
    Ok(TimeSeries {
        occ_up: states.iter().map(TwoLevelState::occ_up).collect(),
        occ_down: states.iter().map(TwoLevelState::occ_down).collect(),
        times,
    })
}

/// Half the least-squares slope of ln(|c↑|² + |c↓|²) over the last
/// `tail_fraction` of the time span.
pub fn growth_rate(series: &TimeSeries, tail_fraction: f64) -> Result<f64> {
    if !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return Err(Error::InvalidParameter(format!("tail fraction must lie in (0, 1], got {tail_fraction}")));
    }
    let (Some(&t0), Some(&t1)) = (series.times.first(), series.times.last()) else {
        return Err(Error::InvalidParameter("empty time series".into()));
    };
    let start = t1 - tail_fraction * (t1 - t0);
    let points: Vec<(f64, f64)> = (0..series.len())
        .filter(|&i| series.times[i] >= start)
        .map(|i| (series.times[i], series.total(i).ln()))
        .collect();
    if points.len() < 2 {
        return Err(Error::InvalidParameter("fewer than two samples in the fitted tail".into()));
    }
    let n = points.len() as f64;
    let mean_t = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_t) * (p.1 - mean_y)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_t).powi(2)).sum();
    let slope = sxy / sxx;
    if slope.is_nan() || slope <= 0.0 {
        return Err(Error::NotGrowing { slope });
    }
    Ok(0.5 * slope)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Drive;
    use crate::propagator::{max_im_eps, propagate};

    fn cfg() -> IntegratorConfig {
        IntegratorConfig::default()
    }

    #[test]
    fn free_evolution_keeps_occupation() {
        let p = ModelParams::pt(0.8, 0.0).unwrap();
        let s = evolve_series(&p, TwoLevelState::up(), 50.0, 101, &cfg()).unwrap();
        assert!(s.occ_up.iter().all(|&x| (x - 1.0).abs() < 1e-8));
        assert!(s.occ_down.iter().all(|&x| x == 0.0));
        assert_eq!(s.times[0], 0.0);
        assert_eq!(*s.times.last().unwrap(), 50.0);
    }

    #[test]
    fn hermitian_rabi_oscillation() {
        // Ω = 2λ = 0.2, so |↑⟩ empties at t = π/Ω and refills at 2π/Ω ≈ 31.4.
        let p = ModelParams::new(1.0, 1.0, 0.1, Drive::Hermitian).unwrap();
        let s = evolve_series(&p, TwoLevelState::up(), 40.0, 4001, &cfg()).unwrap();
        let (i_min, min) = s.occ_up.iter().enumerate().fold((0, 2.0), |a, (i, &x)| if x < a.1 { (i, x) } else { a });
        assert!(min < 0.02, "contrast {min}");
        assert!((s.times[i_min] - 15.7).abs() < 1.0, "{}", s.times[i_min]);
        let late = s.occ_up.iter().zip(&s.times).filter(|(_, &t)| (t - 31.4).abs() < 1.0).map(|(x, _)| *x);
        assert!(late.fold(0.0, f64::max) > 0.98);
    }

    #[test]
    fn sampling_matches_restarts() {
        let p = ModelParams::pt(1.0, 0.1).unwrap();
        let s = evolve_series(&p, TwoLevelState::up(), 20.0, 9, &cfg()).unwrap();
        let mut psi = TwoLevelState::up();
        for i in 1..s.len() {
            psi = propagate(&p, psi, s.times[i - 1], s.times[i], &cfg()).unwrap();
            let scale = s.total(i);
            assert!((psi.occ_up() - s.occ_up[i]).abs() < 1e-7 * scale);
            assert!((psi.occ_down() - s.occ_down[i]).abs() < 1e-7 * scale);
        }
    }

    #[test]
    fn growth_rate_matches_monodromy() {
        let p = ModelParams::pt(0.99, 0.1).unwrap();
        let s = evolve_series(&p, TwoLevelState::up(), 150.0, 3001, &cfg()).unwrap();
        let rate = growth_rate(&s, 0.5).unwrap();
        let im = max_im_eps(&p, &cfg()).unwrap();
        assert!((rate / im - 1.0).abs() < 0.02, "{rate} vs {im}");
    }

    #[test]
    fn bounded_phase_is_not_growing() {
        let p = ModelParams::pt(1.5, 0.1).unwrap();
        let s = evolve_series(&p, TwoLevelState::up(), 200.0, 2001, &cfg()).unwrap();
        assert!(s.occ_up.iter().chain(&s.occ_down).all(|&x| x < 10.0));
        assert!(matches!(growth_rate(&s, 0.5), Err(Error::NotGrowing { .. })) || growth_rate(&s, 0.5).unwrap() < 1e-3);
    }

    #[test]
    fn exact_exponential_fit() {
        let times: Vec<f64> = (0..50).map(|i| i as f64).collect();
        let s = TimeSeries {
            occ_up: times.iter().map(|t| (0.06 * t).exp()).collect(),
            occ_down: vec![0.0; 50],
            times: times.clone(),
        };
        assert!((growth_rate(&s, 0.3).unwrap() - 0.03).abs() < 1e-14);
        let flat = TimeSeries { occ_up: vec![1.0; 50], occ_down: vec![0.0; 50], times };
        assert!(matches!(growth_rate(&flat, 1.0), Err(Error::NotGrowing { .. })));
        assert!(growth_rate(&flat, 0.0).is_err());
    }

    #[test]
    fn bad_inputs() {
        let p = ModelParams::pt(1.0, 0.1).unwrap();
        assert!(evolve_series(&p, TwoLevelState::up(), 0.0, 10, &cfg()).is_err());
        assert!(evolve_series(&p, TwoLevelState::up(), 1.0, 1, &cfg()).is_err());
    }
}

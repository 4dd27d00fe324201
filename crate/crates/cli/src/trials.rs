/// Trials per batch; also the fewest trials any measurement gets.
pub const MIN_BATCH: u64 = 5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialSummary {
    pub mean: f64,
    pub trials: u64,
    /// 95% confidence half-width over the mean: `1.96 * SEM / mean`.
    pub rel_err: f64,
    /// Stopped at `max_trials` without reaching the target.
    pub capped: bool,
}

/// Runs `measure(trial)` for trial indices `0, 1, ...` in batches of
/// [`MIN_BATCH`] until `1.96 * SEM / mean <= rel_tol` or `max_trials` trials
/// have run.
///
/// A zero mean stops after the first batch with `rel_err` 0.
pub fn adaptive_trials<F, E>(mut measure: F, rel_tol: f64, max_trials: u64) -> Result<TrialSummary, E>
where
    F: FnMut(u64) -> Result<f64, E>,
{
    assert!(rel_tol > 0.0, "rel_tol must be positive");
    assert!(max_trials >= 1, "max_trials must be at least 1");
    // Welford's running mean and sum of squared deviations.
    let mut mean = 0.0;
    let mut m2 = 0.0;
    let mut trials = 0u64;
    loop {
        let batch_end = (trials + MIN_BATCH).min(max_trials);
        while trials < batch_end {
            let x = measure(trials)?;
            trials += 1;
            let delta = x - mean;
            mean += delta / trials as f64;
            m2 += delta * (x - mean);
        }
        let k = trials as f64;
        let rel_err = if mean == 0.0 || trials < 2 {
            0.0
        } else {
            let var = m2 / (k - 1.0);
            1.96 * (var / k).sqrt() / mean.abs()
        };
        let done = mean == 0.0 || rel_err <= rel_tol;
        if done || trials >= max_trials {
            return Ok(TrialSummary { mean, trials, rel_err, capped: !done });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::convert::Infallible;

    fn run(f: impl FnMut(u64) -> f64, rel_tol: f64, max: u64) -> TrialSummary {
        let mut f = f;
        adaptive_trials(|t| Ok::<_, Infallible>(f(t)), rel_tol, max).unwrap()
    }

    #[test]
    fn constant_stops_at_first_batch() {
        let s = run(|_| 7.0, 0.001, 1000);
        assert_eq!(s, TrialSummary { mean: 7.0, trials: 5, rel_err: 0.0, capped: false });
    }

    #[test]
    fn zero_mean_is_degenerate() {
        let s = run(|_| 0.0, 0.001, 1000);
        assert_eq!((s.trials, s.rel_err, s.capped), (5, 0.0, false));
    }

    #[test]
    fn cap_flags_the_row() {
        let s = run(|t| if t % 2 == 0 { 1.0 } else { 100.0 }, 0.001, 10);
        assert_eq!(s.trials, 10);
        assert!(s.capped);
        assert!(s.rel_err > 0.001);
    }

    #[test]
    fn cap_below_batch() {
        let s = run(|t| t as f64, 0.001, 3);
        assert_eq!(s.trials, 3);
        assert_eq!(s.mean, 1.0);
    }

    #[test]
    fn sees_trial_indices_in_order() {
        let mut seen = Vec::new();
        run(
            |t| {
                seen.push(t);
                1.0
            },
            0.1,
            100,
        );
        assert_eq!(seen, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn propagates_errors() {
        let r: Result<TrialSummary, &str> = adaptive_trials(|t| if t == 3 { Err("boom") } else { Ok(1.0) }, 0.1, 10);
        assert_eq!(r, Err("boom"));
    }
}

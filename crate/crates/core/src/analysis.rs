//! Visibility and distinguishability quantifiers from the three
//! perspectives (total ensemble, subensembles conditioned on the d
//! readout, and the subensemble average), plus the
//! concurrence/coherence/predictability triple of a pure bipartite state.
//!
//! Sign conventions: distinguishabilities are signed, `D = 2 p_succ - 1`,
//! with negative values meaning the guessing strategy should be inverted.
//! Visibilities are nonnegative. Quantifiers of an empty subensemble are
//! represented as `None`, never as NaN.

use num_complex::Complex64;

use crate::circuit::{
    exact_joint, exact_sweep, CircuitConfig, Configuration, ExactSweep, JointDistribution,
    ZERO_WEIGHT_EPS,
};
use crate::error::{Error, Result};
use crate::noise::NoiseModel;
use crate::qcore::{TwoQubitState, Wire};
use crate::sampling::{EnsembleCounts, SweepRecord};

/// Which slice of the ensemble a fringe is extracted from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Perspective {
    Total,
    Sub0d,
    Sub1d,
}

/// How visibility is extracted from a sweep.
///
/// `MaxMin` is the (max - min)/(max + min) form used in the experimental
/// procedure; `CosineFit` is a least-squares fit of `A + B cos(theta)`
/// reporting `|B|/A`, which is less biased under sampling noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VisibilityEstimator {
    #[default]
    MaxMin,
    CosineFit,
}

/// All quantifiers for one `(phi, phi_prime)` point.
///
/// `None` marks an ill-defined quantity: a subensemble whose conditioning
/// outcome never occurs, or an average touching such a term with nonzero
/// weight (possible for sampled data only).
#[derive(Debug, Clone, PartialEq)]
pub struct QuantifierSet {
    pub v: f64,
    pub d: f64,
    pub v0d: Option<f64>,
    pub v1d: Option<f64>,
    pub d0d: Option<f64>,
    pub d1d: Option<f64>,
    pub v_avg: Option<f64>,
    pub d_avg: Option<f64>,
    /// d-outcome weights used for the visibility average.
    pub p0d: f64,
    pub p1d: f64,
}

impl QuantifierSet {
    /// `(V, D)` for one perspective, if defined.
    pub fn by_perspective(&self, p: Perspective) -> (Option<f64>, Option<f64>) {
        match p {
            Perspective::Total => (Some(self.v), Some(self.d)),
            Perspective::Sub0d => (self.v0d, self.d0d),
            Perspective::Sub1d => (self.v1d, self.d1d),
        }
    }
}

/// Contrast of the total-ensemble pattern, `p(0_i) - p(1_i)`.
pub fn contrast_total(jd: &JointDistribution) -> f64 {
    jd.p_i(0) - jd.p_i(1)
}

/// Signed distinguishability `2 p_succ - 1` of an open-configuration
/// distribution.
pub fn distinguishability_total(open_jd: &JointDistribution) -> f64 {
    2.0 * open_jd.p_succ() - 1.0
}

fn max_min_visibility(ps: &[f64]) -> f64 {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in ps {
        lo = lo.min(*p);
        hi = hi.max(*p);
    }
    let denom = hi + lo;
    if denom > 0.0 {
        (hi - lo) / denom
    } else {
        0.0
    }
}

fn cosine_fit_visibility(thetas: &[f64], ps: &[f64]) -> f64 {
    let n = ps.len() as f64;
    let (mut sx, mut sxx, mut sp, mut sxp) = (0.0, 0.0, 0.0, 0.0);
    for (theta, p) in thetas.iter().zip(ps.iter()) {
        let x = theta.cos();
        sx += x;
        sxx += x * x;
        sp += p;
        sxp += x * p;
    }
    let det = n * sxx - sx * sx;
    if det.abs() < 1e-12 {
        return 0.0;
    }
    let offset = (sxx * sp - sx * sxp) / det;
    let amplitude = (n * sxp - sx * sp) / det;
    if offset > 0.0 {
        amplitude.abs() / offset
    } else {
        0.0
    }
}

/// Per-point probability track of the chosen perspective, or `None` when a
/// conditioning outcome has no events at some grid point.
fn sweep_track(sweep: &SweepRecord, perspective: Perspective) -> Option<Vec<f64>> {
    let mut ps = Vec::with_capacity(sweep.counts.len());
    for c in &sweep.counts {
        let p = match perspective {
            Perspective::Total => c.i_subtotal(0) as f64 / c.n_shots as f64,
            Perspective::Sub0d | Perspective::Sub1d => {
                let d = if perspective == Perspective::Sub0d { 0 } else { 1 };
                let weight = c.d_subtotal(d);
                if weight == 0 {
                    return None;
                }
                c.count(0, d) as f64 / weight as f64
            }
        };
        ps.push(p);
    }
    Some(ps)
}

fn exact_track(joints: &[JointDistribution], perspective: Perspective) -> Option<Vec<f64>> {
    let mut ps = Vec::with_capacity(joints.len());
    for jd in joints {
        let p = match perspective {
            Perspective::Total => jd.p_i(0),
            Perspective::Sub0d => jd.cond_i_given_d(0, 0)?,
            Perspective::Sub1d => jd.cond_i_given_d(0, 1)?,
        };
        ps.push(p);
    }
    Some(ps)
}

/// Visibility of a sampled theta sweep from the chosen perspective.
///
/// Returns `Ok(None)` when the perspective's conditioning outcome has zero
/// counts at any grid point.
pub fn visibility_from_sweep(
    sweep: &SweepRecord,
    perspective: Perspective,
    estimator: VisibilityEstimator,
) -> Result<Option<f64>> {
    if sweep.counts.is_empty() {
        return Err(Error::EmptySweep);
    }
    Ok(sweep_track(sweep, perspective).map(|ps| match estimator {
        VisibilityEstimator::MaxMin => max_min_visibility(&ps),
        VisibilityEstimator::CosineFit => cosine_fit_visibility(&sweep.theta_grid, &ps),
    }))
}

/// Visibility of an exact sweep from the chosen perspective.
pub fn visibility_from_exact(
    sweep: &ExactSweep,
    perspective: Perspective,
    estimator: VisibilityEstimator,
) -> Result<Option<f64>> {
    if sweep.joints.is_empty() {
        return Err(Error::EmptySweep);
    }
    Ok(exact_track(&sweep.joints, perspective).map(|ps| match estimator {
        VisibilityEstimator::MaxMin => max_min_visibility(&ps),
        VisibilityEstimator::CosineFit => cosine_fit_visibility(&sweep.theta_grid, &ps),
    }))
}

/// Subensemble visibilities and distinguishabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct SubensembleQuantifiers {
    pub v0d: Option<f64>,
    pub d0d: Option<f64>,
    pub v1d: Option<f64>,
    pub d1d: Option<f64>,
}

/// Computes the subensemble quantifiers of one `(phi, phi_prime)` point:
/// visibilities from the closed sweep's conditional fringes,
/// distinguishabilities from the pooled open counts.
///
/// The two inputs must describe the same physical point.
pub fn subensemble_quantifiers(
    open_pooled: &EnsembleCounts,
    closed: &SweepRecord,
    estimator: VisibilityEstimator,
) -> Result<SubensembleQuantifiers> {
    let closed_first = closed.counts.first().ok_or(Error::EmptySweep)?;
    if open_pooled.cfg.configuration != Configuration::Open {
        return Err(Error::ConfigMismatch("pooled counts are not open-configuration".into()));
    }
    if closed_first.cfg.configuration != Configuration::Closed {
        return Err(Error::ConfigMismatch("sweep is not closed-configuration".into()));
    }
    if !open_pooled.cfg.same_point(&closed_first.cfg) {
        return Err(Error::ConfigMismatch(
            "open and closed data come from different (phi, phi') points".into(),
        ));
    }
    let v0d = visibility_from_sweep(closed, Perspective::Sub0d, estimator)?;
    let v1d = visibility_from_sweep(closed, Perspective::Sub1d, estimator)?;
    Ok(SubensembleQuantifiers {
        v0d,
        d0d: conditional_distinguishability(open_pooled, 0),
        v1d,
        d1d: conditional_distinguishability(open_pooled, 1),
    })
}

/// `2 p(d_i = d | d_d = d) - 1` from pooled open counts; `None` when the
/// subensemble is empty.
fn conditional_distinguishability(open: &EnsembleCounts, d: u8) -> Option<f64> {
    let weight = open.d_subtotal(d);
    if weight == 0 {
        return None;
    }
    Some(2.0 * open.count(d, d) as f64 / weight as f64 - 1.0)
}

/// Weighted average of two subensemble values. An undefined term only
/// contributes when its weight vanishes, in which case it contributes
/// nothing; undefined with nonzero weight is an error.
pub fn weighted_average(
    q0: Option<f64>,
    q1: Option<f64>,
    p0: f64,
    p1: f64,
) -> Result<f64> {
    let term = |q: Option<f64>, p: f64| -> Result<f64> {
        match q {
            Some(v) => Ok(p * v),
            None if p <= ZERO_WEIGHT_EPS => Ok(0.0),
            None => Err(Error::UndefinedWithWeight(p)),
        }
    };
    Ok(term(q0, p0)? + term(q1, p1)?)
}

/// Average-perspective visibility and distinguishability from per-
/// subensemble values and the d-outcome weights.
pub fn average_quantifiers(
    sub: &SubensembleQuantifiers,
    p0d: f64,
    p1d: f64,
) -> Result<(f64, f64)> {
    Ok((
        weighted_average(sub.v0d, sub.v1d, p0d, p1d)?,
        weighted_average(sub.d0d, sub.d1d, p0d, p1d)?,
    ))
}

/// Full quantifier set for one `(phi, phi_prime)` point from sampled data:
/// a closed-configuration sweep (visibilities) and a matching
/// open-configuration sweep pooled over theta (distinguishabilities).
pub fn quantifiers_from_records(
    closed: &SweepRecord,
    open: &SweepRecord,
    estimator: VisibilityEstimator,
) -> Result<QuantifierSet> {
    let open_pooled = open.pooled()?;
    let sub = subensemble_quantifiers(&open_pooled, closed, estimator)?;

    let v = visibility_from_sweep(closed, Perspective::Total, estimator)?
        .expect("total-ensemble visibility is always defined");
    let d = distinguishability_total(&crate::sampling::empirical_joint(&open_pooled));

    let closed_pooled = closed.pooled()?;
    let p0d_closed = closed_pooled.d_subtotal(0) as f64 / closed_pooled.n_shots as f64;
    let p1d_closed = 1.0 - p0d_closed;
    let p0d_open = open_pooled.d_subtotal(0) as f64 / open_pooled.n_shots as f64;
    let p1d_open = 1.0 - p0d_open;

    // The visibility average weights by the closed-run d marginal, the
    // distinguishability average by the open-run one; with these weights
    // d_avg reproduces d identically.
    let v_avg = weighted_average(sub.v0d, sub.v1d, p0d_closed, p1d_closed).ok();
    let d_avg = weighted_average(sub.d0d, sub.d1d, p0d_open, p1d_open).ok();

    Ok(QuantifierSet {
        v,
        d,
        v0d: sub.v0d,
        v1d: sub.v1d,
        d0d: sub.d0d,
        d1d: sub.d1d,
        v_avg,
        d_avg,
        p0d: p0d_closed,
        p1d: p1d_closed,
    })
}

/// Full quantifier set for one point evaluated exactly (no sampling),
/// optionally with a noise model and measurement delay. Visibilities come
/// from an exact closed sweep at the given resolution, distinguishabilities
/// from the exact open distribution.
pub fn quantifiers_from_exact(
    phi: f64,
    phi_prime: f64,
    delay_dt: u64,
    noise: Option<&NoiseModel>,
    resolution: f64,
    estimator: VisibilityEstimator,
) -> Result<QuantifierSet> {
    let closed_cfg = CircuitConfig::new(
        phi,
        phi_prime,
        0.0,
        Configuration::Closed,
        delay_dt,
        noise.cloned(),
    )?;
    let sweep = exact_sweep(&closed_cfg, resolution)?;
    let open_jd = exact_joint(&closed_cfg.with_configuration(Configuration::Open));

    let v = visibility_from_exact(&sweep, Perspective::Total, estimator)?
        .expect("total-ensemble visibility is always defined");
    let v0d = visibility_from_exact(&sweep, Perspective::Sub0d, estimator)?;
    let v1d = visibility_from_exact(&sweep, Perspective::Sub1d, estimator)?;
    let d = distinguishability_total(&open_jd);
    let d0d = open_jd.cond_i_given_d(0, 0).map(|p| 2.0 * p - 1.0);
    let d1d = open_jd.cond_i_given_d(1, 1).map(|p| 2.0 * p - 1.0);

    // The closed-run d marginal (theta-independent) weighs the visibility
    // average; the open-run marginal weighs the distinguishability average.
    let p0d = sweep.joints[0].p_d(0);
    let p1d = sweep.joints[0].p_d(1);
    let v_avg = weighted_average(v0d, v1d, p0d, p1d).ok();
    let d_avg = weighted_average(d0d, d1d, open_jd.p_d(0), open_jd.p_d(1)).ok();

    Ok(QuantifierSet { v, d, v0d, v1d, d0d, d1d, v_avg, d_avg, p0d, p1d })
}

/// Closed-form quantifiers of the noiseless circuit; the analytic oracle
/// sweep-based estimates are tested against.
pub fn theoretical_quantifiers(phi: f64, phi_prime: f64) -> QuantifierSet {
    let (c, cp) = (phi.cos(), phi_prime.cos());
    let (s, sp) = (phi.sin(), phi_prime.sin());
    let p0d = (0.5 * (1.0 + c * cp)).max(0.0);
    let p1d = (0.5 * (1.0 - c * cp)).max(0.0);

    let sub0 = p0d > ZERO_WEIGHT_EPS;
    let sub1 = p1d > ZERO_WEIGHT_EPS;
    let v0d = sub0.then(|| (c + cp).abs() / (1.0 + c * cp));
    let d0d = sub0.then(|| -s * sp / (1.0 + c * cp));
    let v1d = sub1.then(|| (cp - c).abs() / (1.0 - c * cp));
    let d1d = sub1.then(|| -s * sp / (1.0 - c * cp));

    let v = c.abs();
    let d = -s * sp;
    let v_avg = weighted_average(v0d, v1d, p0d, p1d).ok();
    let d_avg = weighted_average(d0d, d1d, p0d, p1d).ok();
    QuantifierSet { v, d, v0d, v1d, d0d, d1d, v_avg, d_avg, p0d, p1d }
}

/// Concurrence plus the single-partite coherence and predictability of
/// one qubit of a pure bipartite state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialityTriple {
    /// Concurrence `2 |ad - bc|`, the bipartite entanglement measure.
    pub concurrence: f64,
    /// Interference capacity of the chosen qubit.
    pub coherence: f64,
    /// Outcome bias of the chosen qubit.
    pub predictability: f64,
    pub wire: Wire,
}

impl TrialityTriple {
    /// `C^2 + V_k^2 + P_k^2`; equals 1 for any normalized pure state.
    pub fn square_sum(&self) -> f64 {
        self.concurrence.powi(2) + self.coherence.powi(2) + self.predictability.powi(2)
    }
}

/// Evaluates the triality triple of `state` for the chosen qubit.
pub fn triality(state: &TwoQubitState, wire: Wire) -> TrialityTriple {
    let [a, b, c, d] = *state.amps();
    let concurrence = 2.0 * (a * d - b * c).norm();
    let (coherence, predictability) = match wire {
        Wire::I => (
            2.0 * (a * c.conj() + b * d.conj()).norm(),
            ((c.norm_sqr() + d.norm_sqr()) - (a.norm_sqr() + b.norm_sqr())).abs(),
        ),
        Wire::D => (
            2.0 * (a * b.conj() + c * d.conj()).norm(),
            ((b.norm_sqr() + d.norm_sqr()) - (a.norm_sqr() + c.norm_sqr())).abs(),
        ),
    };
    TrialityTriple { concurrence, coherence, predictability, wire }
}

/// Subensemble quantities computed directly from a pair of amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubensembleAmplitudes {
    /// Signed contrast coefficient `2 Re(a* b) / (|a|^2 + |b|^2)`.
    pub contrast: f64,
    /// Visibility `2 |a||b| / (|a|^2 + |b|^2)`.
    pub visibility: f64,
    /// Signed distinguishability `(|a|^2 - |b|^2) / (|a|^2 + |b|^2)`.
    pub distinguishability: f64,
}

/// Quantifiers of the `0_d` subensemble from a generic amplitude quadruple
/// `(a, b, c, d)` grouped by d outcome: `(a, b)` are the i-qubit amplitudes
/// within the `0_d` sector and `(c, d)` within `1_d`.
///
/// Returns `None` when the `0_d` sector carries no weight. The identity
/// `visibility^2 + distinguishability^2 = 1` holds wherever defined.
pub fn subensemble_from_amplitudes(amps: &[Complex64; 4]) -> Option<SubensembleAmplitudes> {
    sector_quantifiers(amps[0], amps[1])
}

/// Subensemble quantifiers of a circuit state (basis order `|i d>`) for the
/// given d outcome.
pub fn subensemble_view(state: &TwoQubitState, d_outcome: u8) -> Option<SubensembleAmplitudes> {
    let a = state.amps();
    match d_outcome {
        0 => sector_quantifiers(a[0], a[2]),
        _ => sector_quantifiers(a[1], a[3]),
    }
}

fn sector_quantifiers(zero_amp: Complex64, one_amp: Complex64) -> Option<SubensembleAmplitudes> {
    let w = zero_amp.norm_sqr() + one_amp.norm_sqr();
    if w <= ZERO_WEIGHT_EPS {
        return None;
    }
    Some(SubensembleAmplitudes {
        contrast: 2.0 * (zero_amp.conj() * one_amp).re / w,
        visibility: 2.0 * zero_amp.norm() * one_amp.norm() / w,
        distinguishability: (zero_amp.norm_sqr() - one_amp.norm_sqr()) / w,
    })
}

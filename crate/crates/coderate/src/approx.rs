//! Invertible two-segment approximation of the rate-versus-distance
//! trade-off: below the transition point delta2 = ceil(n/2 + offset)/n the
//! rate follows a per-length parabola, at and above it the Plotkin
//! expression, joined continuously at delta2 and at the next grid point
//! delta3 = delta2 + 1/n. The parabola is pinned by the unity-rate anchor
//! (1/n, 1) and the two Plotkin anchors, which fixes its coefficients as
//! the solution of a 3x3 interpolation system.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use thiserror::Error;

use crate::bounds::{self, NormalizedDistance, Rate};

/// Errors produced by the approximation maps.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum ApproxError {
    #[error("code length must be positive")]
    ZeroLength,
    #[error("parameter solve requires n >= 2, got n={0} (n = 1 has the single trivial code)")]
    LengthTooSmall(u64),
    #[error("delta={delta} outside [1/n, 1] for n={n}")]
    DeltaDomain { n: u64, delta: f64 },
    #[error("distance d={d} outside [1, {n}]")]
    DistanceDomain { n: u64, d: u64 },
    #[error("rate must be positive, got {0}")]
    RateDomain(f64),
    #[error("information length k={k} outside (0, {n}]")]
    InfoLengthDomain { n: u64, k: f64 },
}

/// Solved per-length model parameters: the quadratic coefficients of the
/// low-delta segment r = a delta^2 + b delta + c, the transition offset,
/// and the three interpolation anchors the parabola passes through.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadraticParams {
    pub n: u64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Offset added to n/2 before the ceiling that places delta2.
    pub offset: f64,
    /// Anchor abscissae: 1/n, ceil(n/2 + offset)/n, and delta2 + 1/n.
    pub delta1: f64,
    pub delta2: f64,
    pub delta3: f64,
    /// Anchor ordinates: 1 and the Plotkin values at delta2, delta3.
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
}

impl QuadraticParams {
    /// Value of the quadratic segment at the given delta.
    pub fn eval(&self, delta: f64) -> f64 {
        (self.a * delta + self.b) * delta + self.c
    }

    /// Abscissa of the parabola's vertex; the segment is decreasing on
    /// [delta1, delta2] whenever this is >= delta2.
    pub fn vertex(&self) -> f64 {
        -self.b / (2.0 * self.a)
    }
}

/// A code's (n, k) pair. k is real-valued so fractional-rate queries are
/// possible; code tables only ever supply integers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CodeParams {
    n: u64,
    k: f64,
}

impl CodeParams {
    pub fn new(n: u64, k: f64) -> Result<Self, ApproxError> {
        if n == 0 {
            return Err(ApproxError::ZeroLength);
        }
        if !(k > 0.0 && k <= n as f64) {
            return Err(ApproxError::InfoLengthDomain { n, k });
        }
        Ok(Self { n, k })
    }

    pub fn n(self) -> u64 {
        self.n
    }

    pub fn k(self) -> f64 {
        self.k
    }

    pub fn rate(self) -> Rate {
        Rate::new(self.k / self.n as f64).expect("k in (0, n] gives a rate in (0, 1]")
    }
}

/// Root selection for the asymptotic inverse of the quadratic model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InverseBranch {
    /// (1 - sqrt(r))/2: the root below 1/2, consistent with the decreasing
    /// limb of the quadratic model. The default.
    Decreasing,
    /// (1 + sqrt(r))/2: the mirrored root above 1/2.
    Increasing,
}

/// Transition offset: log2(n)/2.
///
/// Any offset that grows without bound while vanishing relative to n keeps
/// the quadratic segment converging to (2 delta - 1)^2; this one also
/// satisfies offset(1) = 0.
pub fn transition_offset(n: u64) -> f64 {
    assert!(n >= 1, "code length must be positive");
    (n as f64).log2() / 2.0
}

static PARAM_CACHE: LazyLock<RwLock<HashMap<u64, QuadraticParams>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Solve the per-length model parameters for n >= 2. Results are cached.
pub fn solve_params(n: u64) -> Result<QuadraticParams, ApproxError> {
    if n < 2 {
        return Err(ApproxError::LengthTooSmall(n));
    }
    if let Some(p) = PARAM_CACHE.read().unwrap().get(&n) {
        return Ok(*p);
    }
    let p = compute_params(n);
    PARAM_CACHE.write().unwrap().insert(n, p);
    Ok(p)
}

fn compute_params(n: u64) -> QuadraticParams {
    let nf = n as f64;
    let offset = transition_offset(n);
    let m = (nf / 2.0 + offset).ceil();
    let delta1 = 1.0 / nf;
    let delta2 = m / nf;
    let delta3 = (m + 1.0) / nf;
    let r2 = plotkin_rate(n, delta2);
    let r3 = plotkin_rate(n, delta3);
    let (a, b, c) = interpolate_parabola([delta1, delta2, delta3], [1.0, r2, r3]);
    QuadraticParams {
        n,
        a,
        b,
        c,
        offset,
        delta1,
        delta2,
        delta3,
        r1: 1.0,
        r2,
        r3,
    }
}

/// Coefficients of the parabola through three points, by expanding the
/// Lagrange basis.
fn interpolate_parabola(xs: [f64; 3], ys: [f64; 3]) -> (f64, f64, f64) {
    let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
    for i in 0..3 {
        let (xj, xk) = (xs[(i + 1) % 3], xs[(i + 2) % 3]);
        let w = ys[i] / ((xs[i] - xj) * (xs[i] - xk));
        a += w;
        b -= w * (xj + xk);
        c += w * xj * xk;
    }
    (a, b, c)
}

fn plotkin_rate(n: u64, delta: f64) -> f64 {
    bounds::plotkin_finite(n, NormalizedDistance::new(delta).expect("positive delta"))
        .expect("delta in (1/2, 3/2]")
        .value()
}

/// Forward map: the approximate maximum rate of a length-n code at
/// normalized distance delta, clamped to [0, 1]. n = 1 has the single
/// trivial code and returns 1.
pub fn rate_from_delta(n: u64, delta: NormalizedDistance) -> Result<Rate, ApproxError> {
    if n == 0 {
        return Err(ApproxError::ZeroLength);
    }
    let d = delta.value();
    let lo = 1.0 / n as f64;
    // Inputs a few ulps outside [1/n, 1] are accepted and clamped: the
    // inverse map's roots land there when the rate sits on an interval
    // endpoint (r = 1 gives the anchor 1/n only to rounding).
    let margin = 16.0 * f64::EPSILON;
    if d < lo * (1.0 - margin) || d > 1.0 + margin {
        return Err(ApproxError::DeltaDomain { n, delta: d });
    }
    let d = d.clamp(lo, 1.0);
    if n == 1 {
        return Ok(Rate::new(1.0).unwrap());
    }
    let p = solve_params(n)?;
    let raw = if d < p.delta2 {
        p.eval(d)
    } else {
        plotkin_rate(n, d)
    };
    Ok(Rate::new(raw.clamp(0.0, 1.0)).expect("clamped"))
}

/// Forward map at an integer distance: rate_from_delta(n, d/n).
pub fn rate_from_dmin(n: u64, d: u64) -> Result<Rate, ApproxError> {
    if n == 0 || d < 1 || d > n {
        return Err(ApproxError::DistanceDomain { n, d });
    }
    rate_from_delta(
        n,
        NormalizedDistance::new(d as f64 / n as f64).expect("d/n positive"),
    )
}

/// Inverse map: the normalized distance at which the approximation takes
/// the given rate.
///
/// Rates above (1/n) log2(n+1) invert through the quadratic segment (the
/// smaller root, matching its decreasing limb); rates at or below the
/// threshold invert through the logarithmic segment in closed form. A rate
/// exactly on the threshold belongs to the logarithmic branch so that the
/// simplex family (n = 2^k - 1, r = k/n) lands on its exact distance
/// 2^{k-1}; the comparison carries a few-ulp margin because the two
/// branches do not agree at the seam and a one-ulp rounding of r must not
/// flip it.
///
/// For rates below the repetition-code rate 1/n the closed form is still
/// evaluated and yields a formal delta > 1.
pub fn delta_from_rate(n: u64, rate: Rate) -> Result<NormalizedDistance, ApproxError> {
    if n == 0 {
        return Err(ApproxError::ZeroLength);
    }
    let r = rate.value();
    if r <= 0.0 {
        return Err(ApproxError::RateDomain(r));
    }
    if n == 1 {
        return Ok(NormalizedDistance::new(1.0).unwrap());
    }
    let nf = n as f64;
    let threshold = (nf + 1.0).log2() / nf;
    if r > threshold * (1.0 + 16.0 * f64::EPSILON) {
        let p = solve_params(n)?;
        let disc = p.b * p.b - 4.0 * p.a * (p.c - r);
        assert!(
            disc >= 0.0,
            "discriminant {disc} < 0 at n={n}, r={r}; cannot happen for r in (0, 1]"
        );
        // The smaller root lies in [delta1, delta2) for every rate in
        // (threshold, 1]; the subtraction cancels near r = 1 and can land
        // an ulp below delta1, so pin it there.
        let delta = ((-p.b - disc.sqrt()) / (2.0 * p.a)).max(p.delta1);
        Ok(NormalizedDistance::new(delta).expect("smaller quadratic root is positive"))
    } else {
        let rn = r * nf;
        // 2^{rn - 1} / (2^{rn} - 1), with the denominator via exp_m1 so
        // tiny rates do not cancel.
        let delta = (rn - 1.0).exp2() / (rn * std::f64::consts::LN_2).exp_m1();
        Ok(NormalizedDistance::new(delta).expect("logarithmic branch is positive"))
    }
}

/// Predicted minimum distance n * delta(n, k/n), as a real number.
/// Rounding is left to the caller.
pub fn dmin(n: u64, k: f64) -> Result<f64, ApproxError> {
    let params = CodeParams::new(n, k)?;
    Ok(n as f64 * delta_from_rate(n, params.rate())?.value())
}

/// Asymptotic inverse of the quadratic model, defaulting to the decreasing
/// root (1 - sqrt(r))/2.
pub fn asymptotic_delta_from_rate(rate: Rate) -> f64 {
    asymptotic_delta_from_rate_branch(rate, InverseBranch::Decreasing)
}

/// Asymptotic inverse with an explicit root selection.
pub fn asymptotic_delta_from_rate_branch(rate: Rate, branch: InverseBranch) -> f64 {
    let s = rate.value().sqrt();
    match branch {
        InverseBranch::Decreasing => (1.0 - s) / 2.0,
        InverseBranch::Increasing => (1.0 + s) / 2.0,
    }
}

//! Classical bounds on the rate of binary codes: the finite-length
//! Gilbert-Varshamov, Hamming and Plotkin bounds, their asymptotic forms,
//! and the MRRW linear-programming bound, together with the binary entropy
//! and exact binomial-sum primitives they share.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

/// Errors produced by the bound evaluations and their domain types.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum BoundError {
    #[error("entropy argument {0} outside [0, 1]")]
    EntropyDomain(f64),
    #[error("binomial sum requires n >= 1 and t <= n, got n={n}, t={t}")]
    BinomialSumDomain { n: u64, t: u64 },
    #[error("distance d={d} outside [1, {n}]")]
    DistanceDomain { n: u64, d: u64 },
    #[error("code length must be positive")]
    ZeroLength,
    #[error("Plotkin bound requires delta in (1/2, 3/2], got {0}")]
    PlotkinDomain(f64),
    #[error("normalized distance must be positive and finite, got {0}")]
    InvalidDistance(f64),
    #[error("rate must lie in [0, 1], got {0}")]
    InvalidRate(f64),
    #[error("{family:?} has no {regime:?} form")]
    UnsupportedRegime { family: BoundFamily, regime: Regime },
    #[error("asymptotic evaluation requires an asymptotic kind, got {family:?} in the finite regime")]
    FiniteKind { family: BoundFamily },
    #[error("asymptotic {family:?} bound requires delta in {range}, got {delta}")]
    AsymptoticDomain {
        family: BoundFamily,
        range: &'static str,
        delta: f64,
    },
}

/// Normalized minimum distance delta = d/n.
///
/// Real codes have delta in (0, 1]. Values above 1 occur only in formal
/// evaluations: the Plotkin expression accepts delta up to 3/2 (the upper
/// interpolation anchor for n <= 3 lands there), and the inverse map yields
/// delta > 1 for rates below the repetition-code rate 1/n.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct NormalizedDistance(f64);

impl NormalizedDistance {
    pub fn new(value: f64) -> Result<Self, BoundError> {
        if value.is_finite() && value > 0.0 {
            Ok(Self(value))
        } else {
            Err(BoundError::InvalidDistance(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Code rate r = k/n, dimensionless, in [0, 1].
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Rate(f64);

impl Rate {
    pub fn new(value: f64) -> Result<Self, BoundError> {
        if value.is_finite() && (0.0..=1.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(BoundError::InvalidRate(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Bound family of the classical rate-versus-distance bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundFamily {
    GilbertVarshamov,
    Hamming,
    Plotkin,
    Mrrw,
    QuadraticModel,
}

/// Whether a bound is evaluated at finite length or in the n -> infinity limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    Finite,
    Asymptotic,
}

/// A bound family paired with a regime it actually exists in.
///
/// Plotkin has no asymptotic form here, and the MRRW bound and the
/// quadratic model have no finite form; [`BoundKind::new`] rejects those
/// combinations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoundKind {
    family: BoundFamily,
    regime: Regime,
}

impl BoundKind {
    pub fn new(family: BoundFamily, regime: Regime) -> Result<Self, BoundError> {
        let supported = match family {
            BoundFamily::GilbertVarshamov | BoundFamily::Hamming => true,
            BoundFamily::Plotkin => regime == Regime::Finite,
            BoundFamily::Mrrw | BoundFamily::QuadraticModel => regime == Regime::Asymptotic,
        };
        if supported {
            Ok(Self { family, regime })
        } else {
            Err(BoundError::UnsupportedRegime { family, regime })
        }
    }

    pub fn family(self) -> BoundFamily {
        self.family
    }

    pub fn regime(self) -> Regime {
        self.regime
    }
}

/// Binary entropy H(q) = -q log2(q) - (1-q) log2(1-q).
///
/// The endpoints return exactly 0 by the continuity convention 0 log 0 := 0.
pub fn binary_entropy(q: f64) -> Result<f64, BoundError> {
    if !(0.0..=1.0).contains(&q) {
        return Err(BoundError::EntropyDomain(q));
    }
    if q == 0.0 || q == 1.0 {
        return Ok(0.0);
    }
    Ok(-q * q.log2() - (1.0 - q) * (1.0 - q).log2())
}

/// log2 of the Hamming-ball size sum_{i=0..t} C(n, i).
///
/// The sum is accumulated in exact integer arithmetic and converted to
/// log2 at the end, so the absolute error stays at the few-ulp level even
/// for n in the thousands.
pub fn log2_binomial_sum(n: u64, t: u64) -> Result<f64, BoundError> {
    if n < 1 || t > n {
        return Err(BoundError::BinomialSumDomain { n, t });
    }
    let mut term = BigUint::from(1u32);
    let mut sum = BigUint::from(1u32);
    for i in 1..=t {
        // C(n, i) = C(n, i-1) * (n - i + 1) / i, exact at every step.
        term *= n - i + 1;
        term /= i;
        sum += &term;
    }
    Ok(log2_biguint(&sum))
}

/// log2 of a positive big integer from its top 64 bits.
fn log2_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().expect("fits in u64") as f64).log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("top word fits in u64");
    shift as f64 + (top as f64).log2()
}

/// Finite-length Gilbert-Varshamov lower bound on the rate of a length-n
/// code with minimum distance d, clamped below at zero.
pub fn gilbert_finite(n: u64, d: u64) -> Result<Rate, BoundError> {
    if n < 1 || d < 1 || d > n {
        return Err(BoundError::DistanceDomain { n, d });
    }
    let log_ball = log2_binomial_sum(n, d - 1).expect("d - 1 < n");
    let value = (1.0 - log_ball / n as f64).max(0.0);
    Rate::new(value)
}

/// Finite-length Hamming (sphere-packing) upper bound, with packing radius
/// floor((d-1)/2).
pub fn hamming_finite(n: u64, d: u64) -> Result<Rate, BoundError> {
    if n < 1 || d < 1 || d > n {
        return Err(BoundError::DistanceDomain { n, d });
    }
    let log_ball = log2_binomial_sum(n, (d - 1) / 2).expect("(d-1)/2 < n");
    Rate::new(1.0 - log_ball / n as f64)
}

/// Finite-length Plotkin upper bound (1/n)[1 - log2(2 - 1/delta)].
///
/// Defined for delta > 1/2; accepted up to 3/2 so the expression can be
/// evaluated at the formal anchor delta3 > 1 that arises for n <= 3. The
/// raw expression exceeds 1 for delta just above 1/2; the result is capped
/// at rate 1 since nothing tighter can be said there.
pub fn plotkin_finite(n: u64, delta: NormalizedDistance) -> Result<Rate, BoundError> {
    if n < 1 {
        return Err(BoundError::ZeroLength);
    }
    let d = delta.value();
    if d <= 0.5 || d > 1.5 {
        return Err(BoundError::PlotkinDomain(d));
    }
    let value = (1.0 - (2.0 - 1.0 / d).log2()) / n as f64;
    Rate::new(value.min(1.0))
}

/// Asymptotic (n -> infinity) bounds as functions of delta.
///
/// Gilbert-Varshamov: max(0, 1 - H(delta)); Hamming: 1 - H(delta/2);
/// MRRW: H(1/2 - sqrt(delta (1 - delta))); quadratic model: (2 delta - 1)^2.
/// Gilbert-Varshamov and Hamming require delta in (0, 1); the MRRW bound and
/// the quadratic model also accept delta = 1.
pub fn asymptotic_bound(kind: BoundKind, delta: NormalizedDistance) -> Result<Rate, BoundError> {
    if kind.regime() == Regime::Finite {
        return Err(BoundError::FiniteKind {
            family: kind.family(),
        });
    }
    let d = delta.value();
    let value = match kind.family() {
        BoundFamily::GilbertVarshamov => {
            check_open_unit(BoundFamily::GilbertVarshamov, d)?;
            (1.0 - binary_entropy(d).expect("d in (0, 1)")).max(0.0)
        }
        BoundFamily::Hamming => {
            check_open_unit(BoundFamily::Hamming, d)?;
            1.0 - binary_entropy(d / 2.0).expect("d/2 in (0, 1)")
        }
        BoundFamily::Mrrw => {
            if d > 1.0 {
                return Err(BoundError::AsymptoticDomain {
                    family: BoundFamily::Mrrw,
                    range: "(0, 1]",
                    delta: d,
                });
            }
            // The radical stays in [0, 1/2] for delta in (0, 1].
            let q = 0.5 - (d * (1.0 - d)).sqrt();
            binary_entropy(q).expect("radical stays in [0, 1/2]")
        }
        BoundFamily::QuadraticModel => {
            if d > 1.0 {
                return Err(BoundError::AsymptoticDomain {
                    family: BoundFamily::QuadraticModel,
                    range: "(0, 1]",
                    delta: d,
                });
            }
            let x = 2.0 * d - 1.0;
            x * x
        }
        BoundFamily::Plotkin => unreachable!("BoundKind forbids asymptotic Plotkin"),
    };
    Rate::new(value)
}

fn check_open_unit(family: BoundFamily, delta: f64) -> Result<(), BoundError> {
    if delta >= 1.0 {
        return Err(BoundError::AsymptoticDomain {
            family,
            range: "(0, 1)",
            delta,
        });
    }
    Ok(())
}

//! Write-in regime classification and the photon-to-atom mapping.
//!
//! A pulse is storable when it is narrow enough for the dressed dispersion to
//! act over the diffusive path (Δω < Γ_AT·b_Σ/κ) yet broad enough to escape
//! spontaneous Raman losses (Δω > κ·Γ_AT·√b_Σ). The "much less/greater"
//! inequalities are operationalised as a factor-κ separation.

use rand::Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ProtocolError {
    #[error("`{name}` must be positive (got {value})")]
    NonPositive { name: &'static str, value: f64 },
    #[error("margin factor kappa must exceed 1 (got {0})")]
    KappaTooSmall(f64),
    #[error("write-in efficiency must lie in [0, 1] (got {0})")]
    EfficiencyOutOfRange(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Storable,
    TooNarrowLossy,
    TooBroadDispersionless,
    Inconsistent,
}

/// Outcome of checking a (pulse, medium, path) triple against the write-in
/// criteria.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport {
    /// AT bandwidth Γ_AT [γ].
    pub gamma_at: f64,
    /// Effective diffusive optical depth b_Σ.
    pub b_sigma: f64,
    /// Pulse bandwidth Δω [γ].
    pub pulse_bandwidth: f64,
    /// Margin factor κ.
    pub kappa: f64,
    /// Δω < Γ_AT·b_Σ/κ (dispersion acts across the whole band).
    pub dispersive_ok: bool,
    /// Δω > κ·Γ_AT·√b_Σ (spontaneous Raman losses negligible).
    pub loss_ok: bool,
    /// Δω ≤ γ advisory flag.
    pub bandwidth_optimal: bool,
    pub verdict: Verdict,
}

/// Classifies a pulse of bandwidth `pulse_bandwidth` against the storability
/// window (κ·Γ_AT·√b_Σ, Γ_AT·b_Σ/κ). The window is nonempty iff b_Σ > κ⁴.
pub fn classify_regime(
    pulse_bandwidth: f64,
    gamma_at: f64,
    b_sigma: f64,
    kappa: f64,
) -> Result<RegimeReport, ProtocolError> {
    for (name, value) in [
        ("pulse_bandwidth", pulse_bandwidth),
        ("gamma_at", gamma_at),
        ("b_sigma", b_sigma),
    ] {
        if !(value > 0.0) || !value.is_finite() {
            return Err(ProtocolError::NonPositive { name, value });
        }
    }
    if !(kappa > 1.0) {
        return Err(ProtocolError::KappaTooSmall(kappa));
    }

    let dispersive_ok = pulse_bandwidth < gamma_at * b_sigma / kappa;
    let loss_ok = pulse_bandwidth > kappa * gamma_at * b_sigma.sqrt();
    let verdict = if dispersive_ok && loss_ok {
        Verdict::Storable
    } else if b_sigma <= kappa.powi(4) {
        // Empty (or single-point) window: no bandwidth can satisfy both.
        Verdict::Inconsistent
    } else if !dispersive_ok {
        Verdict::TooBroadDispersionless
    } else {
        Verdict::TooNarrowLossy
    };
    Ok(RegimeReport {
        gamma_at,
        b_sigma,
        pulse_bandwidth,
        kappa,
        dispersive_ok,
        loss_ok,
        bandwidth_optimal: check_optimal_bandwidth(pulse_bandwidth),
        verdict,
    })
}

/// Advisory flag: the pulse spectrum is in the Δω ≤ γ range favouring
/// substantial diffuse trapping.
pub fn check_optimal_bandwidth(pulse_bandwidth: f64) -> bool {
    pulse_bandwidth <= 1.0
}

/// Maps `photons` stored photons onto repopulated atoms through an
/// independent per-photon Bernoulli loss channel (binomial thinning). The
/// ideal hologram η = 1 preserves the count exactly.
pub fn write_in_map<R: Rng + ?Sized>(
    photons: u64,
    efficiency: f64,
    rng: &mut R,
) -> Result<u64, ProtocolError> {
    if !(0.0..=1.0).contains(&efficiency) {
        return Err(ProtocolError::EfficiencyOutOfRange(efficiency));
    }
    if efficiency == 1.0 || photons == 0 {
        return Ok(if efficiency == 1.0 { photons } else { 0 });
    }
    if efficiency == 0.0 {
        return Ok(0);
    }
    let binom = Binomial::new(photons, efficiency).expect("validated parameters");
    Ok(binom.sample(rng))
}

//! Control-field-modified optical response of the atomic cloud.
//!
//! The probe response is a scalar two-channel model: a bare Lorentzian for
//! the closed transition plus a Λ-system channel dressed by the control
//! field, mixed with participation weight `at_weight`. All detunings and
//! rates are expressed in units of the natural linewidth γ.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::Vec3;
use crate::SPEED_OF_LIGHT;

#[derive(Debug, Error, PartialEq)]
pub enum MediumError {
    #[error("parameter `{name}` is invalid: {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("direction must be a unit vector (|d| = {norm})")]
    NonUnitDirection { norm: f64 },
    #[error("path length must be nonnegative (s = {0})")]
    NegativePathLength(f64),
    #[error("hyperfine splitting must be nonzero to define the AT linewidth")]
    ZeroHyperfineSplitting,
    #[error("column inversion did not converge after {0} iterations")]
    ColumnSolveDiverged(usize),
}

/// Atomic transition constants and control-field parameters.
///
/// `gamma` is the only dimensionful rate; every detuning-like field below is
/// in units of γ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MediumModel {
    /// Natural radiative decay rate γ [rad/s].
    pub gamma: f64,
    /// Resonance wavelength λ [m].
    pub lambda_res: f64,
    /// Resonance cross-section σ₀ of the closed transition [m²].
    pub sigma0: f64,
    /// Upper-state hyperfine splitting Δ̄ [γ].
    pub hpf_splitting: f64,
    /// Control-field Rabi frequency Ω_c [γ].
    pub rabi_control: f64,
    /// Position δ_R of the two-photon (AT) resonance within the probe line [γ].
    pub control_detuning: f64,
    /// Spin-coherence decay rate γ_g [γ], γ_g ≪ 1.
    pub ground_decoherence: f64,
    /// Participation weight w_AT ∈ [0, 1] of the Λ channel.
    pub at_weight: f64,
}

impl MediumModel {
    pub fn new(
        gamma: f64,
        lambda_res: f64,
        sigma0: f64,
        hpf_splitting: f64,
        rabi_control: f64,
        control_detuning: f64,
        ground_decoherence: f64,
        at_weight: f64,
    ) -> Result<Self, MediumError> {
        let medium = MediumModel {
            gamma,
            lambda_res,
            sigma0,
            hpf_splitting,
            rabi_control,
            control_detuning,
            ground_decoherence,
            at_weight,
        };
        medium.validate()?;
        Ok(medium)
    }

    /// ⁸⁵Rb D₂ closed transition with the control field switched off.
    pub fn rb85_d2() -> Self {
        let lambda = 780.241e-9;
        MediumModel {
            gamma: 2.0 * std::f64::consts::PI * 6.0666e6,
            lambda_res: lambda,
            sigma0: 3.0 * lambda * lambda / (2.0 * std::f64::consts::PI),
            hpf_splitting: 19.9,
            rabi_control: 0.0,
            control_detuning: -2.5,
            ground_decoherence: 1.0e-3,
            at_weight: 0.2,
        }
    }

    pub fn validate(&self) -> Result<(), MediumError> {
        let positive = [
            ("gamma", self.gamma),
            ("lambda_res", self.lambda_res),
            ("sigma0", self.sigma0),
        ];
        for (name, value) in positive {
            if !(value > 0.0) || !value.is_finite() {
                return Err(MediumError::InvalidParameter { name, value });
            }
        }
        if !(self.at_weight >= 0.0 && self.at_weight <= 1.0) {
            return Err(MediumError::InvalidParameter {
                name: "at_weight",
                value: self.at_weight,
            });
        }
        if !(self.ground_decoherence >= 0.0) {
            return Err(MediumError::InvalidParameter {
                name: "ground_decoherence",
                value: self.ground_decoherence,
            });
        }
        if !(self.rabi_control >= 0.0) {
            return Err(MediumError::InvalidParameter {
                name: "rabi_control",
                value: self.rabi_control,
            });
        }
        if !(self.hpf_splitting >= 0.0) {
            return Err(MediumError::InvalidParameter {
                name: "hpf_splitting",
                value: self.hpf_splitting,
            });
        }
        Ok(())
    }

    /// Overall susceptibility scale C fixing Im χ̃(0)|_{Ω_c=0} = 2C so that
    /// the cross-section derived from χ̃ reproduces σ₀ on resonance.
    pub fn susceptibility_scale(&self) -> f64 {
        2.0 * std::f64::consts::PI.powi(2) * self.sigma0 / self.lambda_res.powi(2)
    }

    /// AT self-energy Σ(Δ) = (Ω_c/2)² / (Δ − δ_R + i γ_g/2).
    ///
    /// The γ_g = 0, Δ = δ_R point is a removable singularity of the channel
    /// response; it is mapped to an infinite self-energy, i.e. a vanishing
    /// Λ-channel amplitude.
    pub fn at_self_energy(&self, detuning: f64) -> Complex64 {
        let half_rabi_sq = (self.rabi_control / 2.0).powi(2);
        if half_rabi_sq == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let denom = Complex64::new(detuning - self.control_detuning, self.ground_decoherence / 2.0);
        if denom.norm_sqr() == 0.0 {
            return Complex64::new(f64::INFINITY, 0.0);
        }
        half_rabi_sq / denom
    }

    fn bare_response(detuning: f64) -> Complex64 {
        -1.0 / Complex64::new(detuning, 0.5)
    }

    fn lambda_response(&self, detuning: f64) -> Complex64 {
        let sigma = self.at_self_energy(detuning);
        if !sigma.is_finite() {
            return Complex64::new(0.0, 0.0);
        }
        -1.0 / (Complex64::new(detuning, 0.5) - sigma)
    }

    /// Dimensionless susceptibility χ̃(Δ), scaled by the dimensionless atom
    /// density n₀(λ/2π)³.
    pub fn susceptibility(&self, detuning: f64) -> Complex64 {
        let w = self.at_weight;
        let mix = if self.rabi_control == 0.0 {
            Self::bare_response(detuning)
        } else {
            Self::bare_response(detuning) * (1.0 - w) + self.lambda_response(detuning) * w
        };
        mix * self.susceptibility_scale()
    }

    /// χ̃ with the control field switched off (bare Lorentzian).
    pub fn susceptibility_bare(&self, detuning: f64) -> Complex64 {
        Self::bare_response(detuning) * self.susceptibility_scale()
    }

    /// Scattering cross-section σ(Δ) = σ₀ · Im χ̃(Δ) / Im χ̃₀(0).
    pub fn cross_section(&self, detuning: f64) -> f64 {
        let im_bare_peak = self.susceptibility_bare(0.0).im;
        self.sigma0 * self.susceptibility(detuning).im / im_bare_peak
    }

    /// Autler-Townes bandwidth estimate Γ_AT = Ω_c²/Δ̄² [γ], with Δ̄ the
    /// upper-state hyperfine splitting and the O(1) prefactor fixed to 1.
    pub fn at_linewidth(&self) -> Result<f64, MediumError> {
        if self.hpf_splitting == 0.0 {
            return Err(MediumError::ZeroHyperfineSplitting);
        }
        Ok((self.rabi_control / self.hpf_splitting).powi(2))
    }

    /// Per-event spectral factor f(Δ) = (i/2)/(Δ + i/2 − Σ(Δ)), normalised
    /// so |f| ≤ 1 with equality on the undressed resonance.
    pub fn scattering_event_factor(&self, detuning: f64) -> Complex64 {
        let sigma = if self.rabi_control == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            self.at_self_energy(detuning)
        };
        if !sigma.is_finite() {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::new(0.0, 0.5) / (Complex64::new(detuning, 0.5) - sigma)
    }

    /// Real part of the propagation wavenumber,
    /// k_re(Δ) = (ω/c)·(1 + 2π n₀ (λ/2π)³ Re χ̃(Δ))  [1/m].
    ///
    /// Only the dispersive part of the response enters; extinction is
    /// accounted for by discrete event sampling in the transport walk.
    pub fn phase_wavenumber(&self, detuning: f64, peak_density: f64) -> f64 {
        let omega0 = 2.0 * std::f64::consts::PI * SPEED_OF_LIGHT / self.lambda_res;
        let omega = omega0 + detuning * self.gamma;
        let lambdabar = self.lambda_res / (2.0 * std::f64::consts::PI);
        let chi_re = peak_density * lambdabar.powi(3) * self.susceptibility(detuning).re;
        omega / SPEED_OF_LIGHT * (1.0 + 2.0 * std::f64::consts::PI * chi_re)
    }
}

/// Spherical Gaussian atom distribution n(r) = n₀ exp(−|r|²/(2r₀²)).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianCloud {
    /// Peak number density n₀ [1/m³].
    pub n0: f64,
    /// Radial variance parameter r₀ [m].
    pub r0: f64,
}

impl GaussianCloud {
    pub fn new(n0: f64, r0: f64) -> Result<Self, MediumError> {
        if !(n0 >= 0.0) || !n0.is_finite() {
            return Err(MediumError::InvalidParameter { name: "n0", value: n0 });
        }
        if !(r0 > 0.0) || !r0.is_finite() {
            return Err(MediumError::InvalidParameter { name: "r0", value: r0 });
        }
        Ok(GaussianCloud { n0, r0 })
    }

    /// Cloud whose diametral resonant optical depth b₀ = √(2π) n₀ σ₀ r₀
    /// matches `peak_depth`.
    pub fn from_peak_depth(peak_depth: f64, r0: f64, sigma0: f64) -> Result<Self, MediumError> {
        if !(peak_depth >= 0.0) || !peak_depth.is_finite() {
            return Err(MediumError::InvalidParameter {
                name: "peak_depth",
                value: peak_depth,
            });
        }
        let n0 = peak_depth / ((2.0 * std::f64::consts::PI).sqrt() * sigma0 * r0);
        GaussianCloud::new(n0, r0)
    }

    /// Diametral resonant optical depth b₀ = √(2π) n₀ σ₀ r₀.
    pub fn peak_depth(&self, sigma0: f64) -> f64 {
        (2.0 * std::f64::consts::PI).sqrt() * self.n0 * sigma0 * self.r0
    }

    pub fn density(&self, point: Vec3) -> f64 {
        self.n0 * (-point.norm_sqr() / (2.0 * self.r0 * self.r0)).exp()
    }

    /// Precomputed Gaussian line integral along `origin + s·direction`.
    pub fn ray_column(&self, origin: Vec3, direction: Vec3) -> GaussianRayColumn {
        let mu = origin.dot(direction);
        let rho_sqr = (origin.norm_sqr() - mu * mu).max(0.0);
        let scale = std::f64::consts::SQRT_2 * self.r0;
        let z0 = mu / scale;
        let amplitude = self.n0
            * (-rho_sqr / (2.0 * self.r0 * self.r0)).exp()
            * self.r0
            * (std::f64::consts::PI / 2.0).sqrt();
        GaussianRayColumn {
            amplitude,
            mu,
            scale,
            z0,
            erf_z0: libm::erf(z0),
            erfc_z0: libm::erfc(z0),
        }
    }
}

/// Analytic error-function form of ∫ n(origin + s'·direction) ds' along one ray.
#[derive(Debug, Clone, Copy)]
pub struct GaussianRayColumn {
    /// n₀ e^{−ρ²/(2r₀²)} r₀ √(π/2)  [1/m²].
    amplitude: f64,
    mu: f64,
    scale: f64,
    z0: f64,
    erf_z0: f64,
    erfc_z0: f64,
}

impl GaussianRayColumn {
    fn z(&self, s: f64) -> f64 {
        (s + self.mu) / self.scale
    }

    /// Column ∫₀ˢ n dl [1/m²]; monotone nondecreasing in s.
    pub fn integral_to(&self, s: f64) -> f64 {
        if s == f64::INFINITY {
            return self.total();
        }
        self.amplitude * erf_interval(self.z0, self.z(s))
    }

    /// Column for the full half-line, ∫₀^∞ n dl [1/m²]; always finite.
    pub fn total(&self) -> f64 {
        self.amplitude * self.erfc_z0
    }

    /// Local density at ray parameter s, d/ds of `integral_to` [1/m³].
    pub fn density_at(&self, s: f64) -> f64 {
        let z = self.z(s);
        self.amplitude * 2.0 / std::f64::consts::PI.sqrt() * (-z * z).exp() / self.scale
    }

    /// Inverts `integral_to(s) = target` by bracketing plus safeguarded
    /// Newton refinement to 1e-10 relative accuracy in s. Returns
    /// `Ok(None)` when `target` exceeds the total column (the flight
    /// escapes the cloud).
    pub fn distance_for_integral(&self, target: f64) -> Result<Option<f64>, MediumError> {
        const MAX_ITER: usize = 200;
        if target <= 0.0 {
            return Ok(Some(0.0));
        }
        if self.amplitude == 0.0 {
            return Ok(None);
        }
        let q = target / self.amplitude;
        if q >= self.erfc_z0 {
            return Ok(None);
        }
        // Work on z; the target in erf and erfc forms.
        let target_erf = self.erf_z0 + q;
        let target_erfc = self.erfc_z0 - q;
        let use_erfc = target_erf > 0.9;

        let mut lo = self.z0;
        let mut hi = self.z0 + 1.0;
        let mut step = 1.0;
        let mut iters = 0usize;
        while libm::erfc(hi) > target_erfc {
            lo = hi;
            step *= 2.0;
            hi += step;
            iters += 1;
            if iters > MAX_ITER {
                return Err(MediumError::ColumnSolveDiverged(iters));
            }
        }

        let mut z = 0.5 * (lo + hi);
        let tol = 1e-13;
        for _ in iters..MAX_ITER {
            let (residual, slope) = if use_erfc {
                (
                    libm::erfc(z) - target_erfc,
                    -2.0 / std::f64::consts::PI.sqrt() * (-z * z).exp(),
                )
            } else {
                (
                    libm::erf(z) - target_erf,
                    2.0 / std::f64::consts::PI.sqrt() * (-z * z).exp(),
                )
            };
            let increasing = if use_erfc { residual < 0.0 } else { residual > 0.0 };
            if increasing {
                hi = z;
            } else {
                lo = z;
            }
            let newton = z - residual / slope;
            z = if slope != 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if hi - lo <= tol * z.abs().max(1.0) {
                return Ok(Some((z * self.scale - self.mu).max(0.0)));
            }
        }
        Err(MediumError::ColumnSolveDiverged(MAX_ITER))
    }
}

/// erf(b) − erf(a) for a ≤ b, arranged to avoid cancellation both for nearby
/// arguments and on the flat wings.
fn erf_interval(a: f64, b: f64) -> f64 {
    debug_assert!(b >= a);
    let h = b - a;
    if h < 1e-4 {
        // Short-interval quadrature of (2/√π)∫ e^{−t²} dt about the midpoint.
        let zm = 0.5 * (a + b);
        return 2.0 / std::f64::consts::PI.sqrt()
            * (-zm * zm).exp()
            * h
            * (1.0 + (2.0 * zm * zm - 1.0) * h * h / 12.0);
    }
    if a >= 0.5 {
        return libm::erfc(a) - libm::erfc(b);
    }
    if b <= -0.5 {
        return libm::erfc(-b) - libm::erfc(-a);
    }
    libm::erf(b) - libm::erf(a)
}

/// Optical depth τ(s) = σ(Δ) ∫₀ˢ n(origin + direction·s') ds' accumulated
/// along a ray through the cloud. `s = f64::INFINITY` gives the full-ray
/// depth, which is always finite.
pub fn optical_depth_along_ray(
    origin: Vec3,
    direction: Vec3,
    s: f64,
    detuning: f64,
    cloud: &GaussianCloud,
    medium: &MediumModel,
) -> Result<f64, MediumError> {
    if !direction.is_unit(1e-12) {
        return Err(MediumError::NonUnitDirection { norm: direction.norm() });
    }
    if s < 0.0 {
        return Err(MediumError::NegativePathLength(s));
    }
    let column = cloud.ray_column(origin, direction);
    Ok(medium.cross_section(detuning) * column.integral_to(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn control_on() -> MediumModel {
        MediumModel {
            rabi_control: 1.0,
            ..MediumModel::rb85_d2()
        }
    }

    #[test]
    fn control_off_is_exact_lorentzian() {
        let m = MediumModel::rb85_d2();
        for delta in [-7.5, -0.3, 0.0, 1.2, 40.0] {
            let chi = m.susceptibility(delta);
            let expected = m.susceptibility_scale() * (-1.0 / Complex64::new(delta, 0.5));
            assert!((chi - expected).norm() < 1e-14 * expected.norm().max(1.0));
        }
    }

    #[test]
    fn transparency_dip_is_exact_for_pure_lambda_channel() {
        // Δ = δ_R, γ_g = 0, w_AT = 1 → Im χ̃ = 0.
        let m = MediumModel {
            rabi_control: 1.0,
            ground_decoherence: 0.0,
            at_weight: 1.0,
            ..MediumModel::rb85_d2()
        };
        let chi = m.susceptibility(m.control_detuning);
        assert_eq!(chi.im, 0.0);
        assert_eq!(chi.re, 0.0);
    }

    #[test]
    fn far_wing_follows_lorentzian_falloff() {
        let m = MediumModel::rb85_d2();
        let ratio = m.susceptibility(20.0).im / m.susceptibility(0.0).im;
        let expected = 1.0 / (4.0 * 20.0f64.powi(2) + 1.0);
        assert!((ratio - expected).abs() / expected < 1e-3);
    }

    #[test]
    fn peak_scale_matches_stated_convention() {
        // Im χ̃(0) at Ω_c = 0 equals 3/(4π²)·(2π)³ = 6π for σ₀ = 3λ²/2π.
        let m = MediumModel::rb85_d2();
        let im_peak = m.susceptibility(0.0).im;
        assert!((im_peak - 6.0 * std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn cross_section_anchors() {
        let m = MediumModel::rb85_d2();
        assert!((m.cross_section(0.0) - m.sigma0).abs() < 1e-25);
        // Half-linewidth in γ units: Δ = 1/2 → σ₀/2 exactly.
        assert!((m.cross_section(0.5) - m.sigma0 / 2.0).abs() < 1e-12 * m.sigma0);
        assert!((m.cross_section(-0.5) - m.sigma0 / 2.0).abs() < 1e-12 * m.sigma0);
    }

    #[test]
    fn transparency_dip_reduces_cross_section() {
        let on = control_on();
        let off = MediumModel::rb85_d2();
        let dr = on.control_detuning;
        assert!(on.cross_section(dr) < off.cross_section(dr));
    }

    #[test]
    fn at_linewidth_values() {
        let mut m = MediumModel::rb85_d2();
        assert_eq!(m.at_linewidth().unwrap(), 0.0);
        m.rabi_control = m.hpf_splitting;
        assert!((m.at_linewidth().unwrap() - 1.0).abs() < 1e-15);
        m.rabi_control = 2.0;
        m.hpf_splitting = 10.0;
        assert!((m.at_linewidth().unwrap() - 0.04).abs() < 1e-15);
        m.hpf_splitting = 0.0;
        assert_eq!(m.at_linewidth(), Err(MediumError::ZeroHyperfineSplitting));
    }

    #[test]
    fn diametral_ray_reproduces_peak_depth() {
        let m = MediumModel::rb85_d2();
        let cloud = GaussianCloud::from_peak_depth(20.0, 1.0e-3, m.sigma0).unwrap();
        let origin = Vec3::new(0.0, 0.0, -40.0 * cloud.r0);
        let dir = Vec3::new(0.0, 0.0, 1.0);
        let tau = optical_depth_along_ray(origin, dir, f64::INFINITY, 0.0, &cloud, &m).unwrap();
        assert!((tau - 20.0).abs() < 1e-10 * 20.0);
        assert!((cloud.peak_depth(m.sigma0) - 20.0).abs() < 1e-12 * 20.0);
    }

    #[test]
    fn zero_path_has_zero_depth() {
        let m = MediumModel::rb85_d2();
        let cloud = GaussianCloud::from_peak_depth(5.0, 1.0e-3, m.sigma0).unwrap();
        let tau = optical_depth_along_ray(
            Vec3::new(0.0, 1e-4, -3e-3),
            Vec3::new(0.0, 0.0, 1.0),
            0.0,
            0.3,
            &cloud,
            &m,
        )
        .unwrap();
        assert_eq!(tau, 0.0);
    }

    #[test]
    fn impact_parameter_scaling_of_full_depth() {
        let m = MediumModel::rb85_d2();
        let cloud = GaussianCloud::from_peak_depth(20.0, 1.0e-3, m.sigma0).unwrap();
        let rho = 0.7 * cloud.r0;
        let origin = Vec3::new(rho, 0.0, -50.0 * cloud.r0);
        let dir = Vec3::new(0.0, 0.0, 1.0);
        let tau = optical_depth_along_ray(origin, dir, f64::INFINITY, 0.0, &cloud, &m).unwrap();
        let expected = 20.0 * (-rho * rho / (2.0 * cloud.r0 * cloud.r0)).exp();
        assert!((tau - expected).abs() < 1e-10 * expected);
    }

    #[test]
    fn non_unit_direction_is_rejected() {
        let m = MediumModel::rb85_d2();
        let cloud = GaussianCloud::from_peak_depth(5.0, 1.0e-3, m.sigma0).unwrap();
        let err = optical_depth_along_ray(
            Vec3::ZERO,
            Vec3::new(0.0, 0.0, 1.5),
            1.0,
            0.0,
            &cloud,
            &m,
        )
        .unwrap_err();
        assert!(matches!(err, MediumError::NonUnitDirection { .. }));
    }

    #[test]
    fn column_inversion_roundtrip() {
        let m = MediumModel::rb85_d2();
        let cloud = GaussianCloud::from_peak_depth(12.0, 1.0e-3, m.sigma0).unwrap();
        let column = cloud.ray_column(Vec3::new(0.3e-3, -0.2e-3, -6e-3), Vec3::new(0.0, 0.0, 1.0));
        for frac in [1e-9, 1e-4, 0.1, 0.5, 0.9, 0.999, 1.0 - 1e-12] {
            let target = frac * column.total();
            let s = column.distance_for_integral(target).unwrap().unwrap();
            let recovered = column.integral_to(s);
            assert!(
                (recovered - target).abs() <= 1e-9 * target,
                "frac {frac}: target {target}, got {recovered}"
            );
        }
        // τ* = 0 edge.
        assert_eq!(column.distance_for_integral(0.0).unwrap(), Some(0.0));
        // Beyond the total column → escape.
        assert_eq!(column.distance_for_integral(column.total() * 1.0001).unwrap(), None);
    }

    #[test]
    fn event_factor_is_bounded_and_peaks_on_resonance() {
        let on = control_on();
        for delta in [-30.0, -2.5, -0.4, 0.0, 0.3, 5.0] {
            assert!(on.scattering_event_factor(delta).norm() <= 1.0 + 1e-12);
        }
        let off = MediumModel::rb85_d2();
        assert!((off.scattering_event_factor(0.0).norm() - 1.0).abs() < 1e-12);
    }
}

//! Unruh vacuum and one-particle states beyond the single-mode
//! approximation, and the lift of two-party input states into the
//! five-mode space shared by Alice and an accelerated Bob.
//!
//! All states are functions of the acceleration angle γ ∈ [0, π/4]
//! (γ = 0 inertial, γ = π/4 the infinite-acceleration limit) and of the
//! right-branch weight q_R ∈ [0, 1] (q_R = 1 is the single-mode
//! approximation). Amplitudes live on Bob's canonical mode order
//! (ParticleI, ParticleII, AntiparticleII, AntiparticleI).

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::fock::{mix, outer, DensityMatrix, ModeOrder, PureState};
use crate::{Error, Result};

/// Right/left branch weights of the two-branch Unruh operator. `q_l` is
/// always derived from `q_r`, so q_R² + q_L² = 1 by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchWeights {
    q_r: f64,
    q_l: f64,
}

impl BranchWeights {
    pub fn new(q_r: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&q_r) {
            return Err(Error::BranchWeightOutOfRange(q_r));
        }
        Ok(BranchWeights {
            q_r,
            q_l: (1.0 - q_r * q_r).sqrt(),
        })
    }

    /// The single-mode approximation, q_R = 1.
    pub fn single_mode() -> Self {
        BranchWeights { q_r: 1.0, q_l: 0.0 }
    }

    pub fn q_r(&self) -> f64 {
        self.q_r
    }

    pub fn q_l(&self) -> f64 {
        self.q_l
    }
}

/// Which one-particle Unruh state a family is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// Two-party input state prepared in the inertial frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateFamily {
    /// cos α |00⟩ + sin α |1 1⁺⟩
    PhiPlus { alpha: f64 },
    /// cos α |00⟩ + sin α |1 1⁻⟩
    PhiMinus { alpha: f64 },
    /// F |Φ⁺(π/4)⟩⟨Φ⁺(π/4)| + (1-F)/4 · 𝟙, with the identity lifted in the
    /// {|0_U⟩, |1⁺_U⟩} dictionary.
    Werner { fidelity: f64 },
}

impl StateFamily {
    pub fn validate(&self) -> Result<()> {
        match *self {
            StateFamily::PhiPlus { alpha } | StateFamily::PhiMinus { alpha } => {
                if !(0.0..=FRAC_PI_2).contains(&alpha) {
                    return Err(Error::AlphaOutOfRange(alpha));
                }
            }
            StateFamily::Werner { fidelity } => {
                if !(0.0..=1.0).contains(&fidelity) {
                    return Err(Error::FidelityOutOfRange(fidelity));
                }
            }
        }
        Ok(())
    }

    /// The α or F value parameterizing the family.
    pub fn parameter(&self) -> f64 {
        match *self {
            StateFamily::PhiPlus { alpha } | StateFamily::PhiMinus { alpha } => alpha,
            StateFamily::Werner { fidelity } => fidelity,
        }
    }
}

pub fn validate_gamma(gamma: f64) -> Result<()> {
    if gamma.is_nan() || !(0.0..=FRAC_PI_4 + 1e-15).contains(&gamma) {
        return Err(Error::GammaOutOfRange(gamma));
    }
    Ok(())
}

/// Mode-mixing angle γ from a mode frequency Ω, proper acceleration a and
/// speed of light c: cos γ = (e^(−2πΩc/a) + 1)^(−1/2). The limits a → 0 and
/// a = ∞ map to γ = 0 and γ = π/4.
pub fn gamma_from_acceleration(omega: f64, a: f64, c: f64) -> Result<f64> {
    if omega.is_nan() || a.is_nan() || c.is_nan() || omega <= 0.0 || a < 0.0 || c <= 0.0 {
        return Err(Error::AccelerationDomain);
    }
    if a == 0.0 {
        return Ok(0.0);
    }
    let cos_gamma = ((-2.0 * PI * omega * c / a).exp() + 1.0).powf(-0.5);
    Ok(cos_gamma.clamp(0.0, 1.0).acos())
}

/// The Unruh vacuum over Bob's four modes:
/// cos²γ |0000⟩ − sinγ cosγ |0110⟩ + sinγ cosγ |1001⟩ − sin²γ |1111⟩.
pub fn unruh_vacuum(gamma: f64) -> Result<PureState> {
    validate_gamma(gamma)?;
    let (s, c) = gamma.sin_cos();
    let mut amps = vec![Complex64::ZERO; 16];
    amps[0b0000] = Complex64::new(c * c, 0.0);
    amps[0b0110] = Complex64::new(-s * c, 0.0);
    amps[0b1001] = Complex64::new(s * c, 0.0);
    amps[0b1111] = Complex64::new(-s * s, 0.0);
    PureState::new(ModeOrder::bob(), amps)
}

/// One-particle Unruh state.
///
/// Plus branch: q_R (cosγ |1000⟩ − sinγ |1110⟩) + q_L (sinγ |1011⟩ + cosγ |0010⟩).
/// Minus branch: q_L (cosγ |0100⟩ − sinγ |0111⟩) + q_R (sinγ |1110⟩ + cosγ |0010⟩).
///
/// The minus branch is built exactly as its reference expression reads; it
/// is not orthogonal to the plus branch for generic parameters; see
/// [`branch_orthogonality_defect`].
pub fn unruh_particle(gamma: f64, branch: Branch, weights: &BranchWeights) -> Result<PureState> {
    validate_gamma(gamma)?;
    let (s, c) = gamma.sin_cos();
    let (q_r, q_l) = (weights.q_r, weights.q_l);
    let mut amps = vec![Complex64::ZERO; 16];
    match branch {
        Branch::Plus => {
            amps[0b1000] = Complex64::new(q_r * c, 0.0);
            amps[0b1110] = Complex64::new(-q_r * s, 0.0);
            amps[0b1011] = Complex64::new(q_l * s, 0.0);
            amps[0b0010] = Complex64::new(q_l * c, 0.0);
        }
        Branch::Minus => {
            amps[0b0100] = Complex64::new(q_l * c, 0.0);
            amps[0b0111] = Complex64::new(-q_l * s, 0.0);
            amps[0b1110] = Complex64::new(q_r * s, 0.0);
            amps[0b0010] = Complex64::new(q_r * c, 0.0);
        }
    }
    PureState::new(ModeOrder::bob(), amps)
}

/// ⟨1⁻|1⁺⟩ = q_R (q_L cos²γ − q_R sin²γ): the overlap between the two
/// one-particle branches as built. Zero only on a measure-zero set; the
/// defect is reported rather than corrected away.
pub fn branch_orthogonality_defect(gamma: f64, weights: &BranchWeights) -> Result<f64> {
    validate_gamma(gamma)?;
    let (s, c) = gamma.sin_cos();
    Ok(weights.q_r * (weights.q_l * c * c - weights.q_r * s * s))
}

fn alice_ket(occupied: bool) -> PureState {
    let order = ModeOrder::new(vec![crate::fock::ModeLabel::Alice]).unwrap();
    PureState::basis_state(order, usize::from(occupied))
}

fn lift_pure(alpha: f64, gamma: f64, weights: &BranchWeights, branch: Branch) -> Result<PureState> {
    let vac = alice_ket(false).tensor(&unruh_vacuum(gamma)?)?;
    let one = alice_ket(true).tensor(&unruh_particle(gamma, branch, weights)?)?;
    let (s, c) = alpha.sin_cos();
    let amps = vac
        .amplitudes()
        .iter()
        .zip(one.amplitudes())
        .map(|(v, o)| v * c + o * s)
        .collect();
    PureState::new(vac.mode_order().clone(), amps)
}

/// Lift a two-party input state into the 32-dimensional space over
/// (Alice, ParticleI, ParticleII, AntiparticleII, AntiparticleI) by
/// substituting Bob's |0⟩ → |0_U⟩ and |1⟩ → |1^±_U⟩.
pub fn lift_to_unruh(
    family: &StateFamily,
    gamma: f64,
    weights: &BranchWeights,
) -> Result<DensityMatrix> {
    family.validate()?;
    match *family {
        StateFamily::PhiPlus { alpha } => {
            Ok(outer(&lift_pure(alpha, gamma, weights, Branch::Plus)?))
        }
        StateFamily::PhiMinus { alpha } => {
            Ok(outer(&lift_pure(alpha, gamma, weights, Branch::Minus)?))
        }
        StateFamily::Werner { fidelity } => {
            let phi = outer(&lift_pure(FRAC_PI_4, gamma, weights, Branch::Plus)?);
            let mut components = vec![(fidelity, phi)];
            for alice in [false, true] {
                for bob_one in [false, true] {
                    let bob = if bob_one {
                        unruh_particle(gamma, Branch::Plus, weights)?
                    } else {
                        unruh_vacuum(gamma)?
                    };
                    let psi = alice_ket(alice).tensor(&bob)?;
                    components.push(((1.0 - fidelity) / 4.0, outer(&psi)));
                }
            }
            mix(&components)
        }
    }
}

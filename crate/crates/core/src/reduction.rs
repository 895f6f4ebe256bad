//! Reduction of the lifted five-mode states to two-qubit sector states
//! ρ_{A,B} for each single Rindler mode Bob may retain, under explicit,
//! enumerable fermionic trace conventions, plus a search harness that
//! evaluates qualitative claims against every convention.
//!
//! The fermionic sign structure behind "trace out the inaccessible modes" is
//! a convention, not a theorem: the same physical prescription admits mode
//! reorderings (with or without anticommutation signs) and antiparticle
//! phase choices that change the coherences of the reduced state but never
//! its populations. Rather than hard-coding one choice, [`TraceConvention`]
//! spans a 96-element space and [`convention_search`] reports which
//! qualitative claims hold under which variant. The `plain` convention (no
//! reordering, no signs, positive phase) is the default everywhere;
//! everything else is exploratory.

use std::f64::consts::FRAC_PI_4;
use std::fmt;

use crate::correlation::geometric_discord;
use crate::fock::{DensityMatrix, ModeLabel, ModeOrder};
use crate::report::{ClaimRow, ReconciliationReport};
use crate::unruh::{lift_to_unruh, BranchWeights, StateFamily};
use crate::{Error, Result};

/// Threshold below which a discord value counts as vanished.
pub const VANISH_TOL: f64 = 1e-9;
/// Threshold below which two discord values count as coincident.
pub const COINCIDE_TOL: f64 = 1e-9;
/// Threshold above which a discord value counts as retained.
pub const RETAIN_TOL: f64 = 1e-6;

/// Which single Rindler mode Bob keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sector {
    IPlus,
    IMinus,
    IiPlus,
    IiMinus,
}

impl Sector {
    pub const ALL: [Sector; 4] = [
        Sector::IPlus,
        Sector::IMinus,
        Sector::IiPlus,
        Sector::IiMinus,
    ];

    /// The mode this sector retains.
    pub fn kept_mode(self) -> ModeLabel {
        match self {
            Sector::IPlus => ModeLabel::ParticleI,
            Sector::IMinus => ModeLabel::AntiparticleI,
            Sector::IiPlus => ModeLabel::ParticleII,
            Sector::IiMinus => ModeLabel::AntiparticleII,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sector::IPlus => "I+",
            Sector::IMinus => "I-",
            Sector::IiPlus => "II+",
            Sector::IiMinus => "II-",
        }
    }

    pub fn parse(s: &str) -> Option<Sector> {
        Sector::ALL.into_iter().find(|sec| {
            sec.name().eq_ignore_ascii_case(s)
        })
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An explicit fermionic trace convention:
/// a permutation of Bob's four modes applied before tracing (with
/// anticommutation signs iff `reorder_signs`), and a ±1 phase toggle on
/// antiparticle excitations. Populations of the reduced state are invariant
/// across the whole space; only coherence signs differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceConvention {
    order: [ModeLabel; 4],
    reorder_signs: bool,
    negative_antiparticle_phase: bool,
}

impl TraceConvention {
    pub fn new(
        order: [ModeLabel; 4],
        reorder_signs: bool,
        negative_antiparticle_phase: bool,
    ) -> Result<Self> {
        let mut sorted = order;
        sorted.sort();
        let mut canonical = ModeLabel::BOB_CANONICAL;
        canonical.sort();
        if sorted != canonical {
            return Err(Error::InvalidConvention(format!(
                "{order:?} is not a permutation of Bob's modes"
            )));
        }
        Ok(TraceConvention {
            order,
            reorder_signs,
            negative_antiparticle_phase,
        })
    }

    /// The default convention: canonical order, no reordering signs,
    /// positive antiparticle phase. This is the unique variant fully
    /// defined by plain tensor-factor semantics.
    pub fn plain() -> Self {
        TraceConvention {
            order: ModeLabel::BOB_CANONICAL,
            reorder_signs: false,
            negative_antiparticle_phase: false,
        }
    }

    pub fn is_plain(&self) -> bool {
        *self == Self::plain()
    }

    /// All 96 conventions (24 permutations × signs on/off × phase ±1) in a
    /// fixed, deterministic order.
    pub fn enumerate() -> Vec<Self> {
        let mut out = Vec::with_capacity(96);
        let base = ModeLabel::BOB_CANONICAL;
        for a in 0..4 {
            for b in 0..4 {
                if b == a {
                    continue;
                }
                for c in 0..4 {
                    if c == a || c == b {
                        continue;
                    }
                    let d = 6 - a - b - c;
                    let order = [base[a], base[b], base[c], base[d]];
                    for signs in [false, true] {
                        for phase in [false, true] {
                            out.push(TraceConvention {
                                order,
                                reorder_signs: signs,
                                negative_antiparticle_phase: phase,
                            });
                        }
                    }
                }
            }
        }
        debug_assert_eq!(out.len(), 96);
        out
    }

    /// Stable identifier, e.g. `pI.pII.aII.aI|nosigns|phase+` for the plain
    /// convention.
    pub fn id(&self) -> String {
        format!(
            "{}|{}|phase{}",
            self.order
                .iter()
                .map(|m| m.short_name())
                .collect::<Vec<_>>()
                .join("."),
            if self.reorder_signs { "signs" } else { "nosigns" },
            if self.negative_antiparticle_phase {
                "-"
            } else {
                "+"
            }
        )
    }

    /// Parse `plain` or an [`TraceConvention::id`]-formatted string.
    pub fn parse(s: &str) -> Result<Self> {
        if s == "plain" {
            return Ok(Self::plain());
        }
        let bad = || Error::InvalidConvention(s.to_string());
        let parts: Vec<&str> = s.split('|').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let labels: Vec<ModeLabel> = parts[0]
            .split('.')
            .map(|name| {
                ModeLabel::BOB_CANONICAL
                    .into_iter()
                    .find(|m| m.short_name() == name)
                    .ok_or_else(bad)
            })
            .collect::<Result<_>>()?;
        let order: [ModeLabel; 4] = labels.try_into().map_err(|_| bad())?;
        let signs = match parts[1] {
            "signs" => true,
            "nosigns" => false,
            _ => return Err(bad()),
        };
        let phase = match parts[2] {
            "phase-" => true,
            "phase+" => false,
            _ => return Err(bad()),
        };
        Self::new(order, signs, phase)
    }
}

/// Standard partial trace in the state's current mode order (plain
/// tensor-factor semantics); kept modes stay in their original relative
/// order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[ModeLabel]) -> Result<DensityMatrix> {
    rho.partial_trace(keep)
}

/// Reduce a lifted 32-dimensional state to the two-qubit state of Alice and
/// the sector's kept mode under the given convention: apply the mode
/// permutation (with anticommutation signs iff the convention says so) and
/// the antiparticle phase, move the kept mode adjacent to Alice, then trace
/// out the rest.
///
/// Only the convention permutation carries signs; the adjacency move is
/// plain bookkeeping. A signed adjacency move would put the kept mode first
/// regardless of the permutation and collapse the 24 permutations into a
/// single sign structure, emptying the search space the convention exists
/// to span.
pub fn sector_reduce(
    rho32: &DensityMatrix,
    sector: Sector,
    conv: &TraceConvention,
) -> Result<DensityMatrix> {
    if rho32.mode_order() != &ModeOrder::lifted() {
        return Err(Error::ModeOrderMismatch);
    }
    let kept = sector.kept_mode();

    let mut labels = vec![ModeLabel::Alice];
    labels.extend_from_slice(&conv.order);
    let permuted = rho32.reorder(&ModeOrder::new(labels)?, conv.reorder_signs)?;

    let phased = if conv.negative_antiparticle_phase {
        permuted.antiparticle_phase(-1.0)
    } else {
        permuted
    };

    let mut adjacent = vec![ModeLabel::Alice, kept];
    adjacent.extend(conv.order.iter().copied().filter(|&m| m != kept));
    let moved = phased.reorder(&ModeOrder::new(adjacent)?, false)?;

    moved.partial_trace(&[ModeLabel::Alice, kept])
}

/// Lift an input family and reduce it in one step.
pub fn sector_state(
    family: &StateFamily,
    gamma: f64,
    weights: &BranchWeights,
    sector: Sector,
    conv: &TraceConvention,
) -> Result<DensityMatrix> {
    sector_reduce(&lift_to_unruh(family, gamma, weights)?, sector, conv)
}

/// What a qualitative claim asserts about geometric discord at its
/// parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClaimKind {
    /// D_G(sector) > 1e-6.
    Retained(Sector),
    /// D_G(sector) < 1e-9.
    Vanishes(Sector),
    /// |D_G(a) − D_G(b)| < 1e-9.
    Coincide(Sector, Sector),
}

/// One row of the fixed claim catalog, pinned to an explicit parameter
/// point of the Φ⁺ family.
#[derive(Debug, Clone, PartialEq)]
pub struct QualitativeClaim {
    pub id: String,
    pub kind: ClaimKind,
    pub alpha: f64,
    pub q_r: f64,
    pub gamma: f64,
}

/// The fixed claim catalog, in deterministic order:
/// - `retained`: I⁺ and II⁻ keep discord at the infinite-acceleration limit;
/// - `vanishes`: I⁻ and II⁺ lose it there;
/// - `coincides`: the (I⁺, II⁻) and (I⁻, II⁺) pairs agree there;
/// - `product-zero`: every sector has zero discord for the α = 0 input.
///
/// All claims are evaluated at γ = π/4 over q_R ∈ {1, 0.75, 0.5, 0.25} and,
/// except for `product-zero`, over α ∈ {π/4, π/12}.
pub fn claim_catalog() -> Vec<QualitativeClaim> {
    const Q_RS: [f64; 4] = [1.0, 0.75, 0.5, 0.25];
    const ALPHAS: [f64; 2] = [FRAC_PI_4, std::f64::consts::PI / 12.0];
    let mut claims = Vec::new();
    let mut push = |kind: ClaimKind, alpha: f64, q_r: f64| {
        let label = match kind {
            ClaimKind::Retained(s) => format!("retained;{s}"),
            ClaimKind::Vanishes(s) => format!("vanishes;{s}"),
            ClaimKind::Coincide(a, b) => format!("coincides;{a}~{b}"),
        };
        claims.push(QualitativeClaim {
            id: format!("{label};qr={q_r:.2};alpha={alpha:.6}"),
            kind,
            alpha,
            q_r,
            gamma: FRAC_PI_4,
        });
    };
    for &alpha in &ALPHAS {
        for &q_r in &Q_RS {
            push(ClaimKind::Retained(Sector::IPlus), alpha, q_r);
            push(ClaimKind::Retained(Sector::IiMinus), alpha, q_r);
        }
    }
    for &alpha in &ALPHAS {
        for &q_r in &Q_RS {
            push(ClaimKind::Vanishes(Sector::IMinus), alpha, q_r);
            push(ClaimKind::Vanishes(Sector::IiPlus), alpha, q_r);
        }
    }
    for &alpha in &ALPHAS {
        for &q_r in &Q_RS {
            push(ClaimKind::Coincide(Sector::IPlus, Sector::IiMinus), alpha, q_r);
            push(ClaimKind::Coincide(Sector::IMinus, Sector::IiPlus), alpha, q_r);
        }
    }
    for &q_r in &Q_RS {
        for sector in Sector::ALL {
            claims.push(QualitativeClaim {
                id: format!("product-zero;{sector};qr={q_r:.2};alpha=0.000000"),
                kind: ClaimKind::Vanishes(sector),
                alpha: 0.0,
                q_r,
                gamma: FRAC_PI_4,
            });
        }
    }
    claims
}

/// Evaluate every claim under every trace convention and report pass/fail
/// with the witnessing discord values. Rows are sorted by
/// (convention id, claim id); the report may show zero fully-passing
/// conventions.
pub fn convention_search(claims: &[QualitativeClaim]) -> Result<ReconciliationReport> {
    // the lifted state depends only on (alpha, q_r) here; cache across
    // conventions
    let mut lifts: Vec<((u64, u64), DensityMatrix)> = Vec::new();
    let mut lift_for = |alpha: f64, q_r: f64, gamma: f64| -> Result<DensityMatrix> {
        let key = (alpha.to_bits(), q_r.to_bits());
        if let Some((_, rho)) = lifts.iter().find(|(k, _)| *k == key) {
            return Ok(rho.clone());
        }
        let rho = lift_to_unruh(
            &StateFamily::PhiPlus { alpha },
            gamma,
            &BranchWeights::new(q_r)?,
        )?;
        lifts.push((key, rho.clone()));
        Ok(rho)
    };

    let mut rows = Vec::new();
    for conv in TraceConvention::enumerate() {
        let conv_id = conv.id();
        for claim in claims {
            let rho32 = lift_for(claim.alpha, claim.q_r, claim.gamma)?;
            let dg = |sector: Sector| -> Result<f64> {
                geometric_discord(&sector_reduce(&rho32, sector, &conv)?)
            };
            let (pass, witness) = match claim.kind {
                ClaimKind::Retained(s) => {
                    let v = dg(s)?;
                    (v > RETAIN_TOL, vec![v])
                }
                ClaimKind::Vanishes(s) => {
                    let v = dg(s)?;
                    (v < VANISH_TOL, vec![v])
                }
                ClaimKind::Coincide(a, b) => {
                    let (va, vb) = (dg(a)?, dg(b)?);
                    ((va - vb).abs() < COINCIDE_TOL, vec![va, vb])
                }
            };
            rows.push(ClaimRow {
                convention_id: conv_id.clone(),
                claim_id: claim.id.clone(),
                pass,
                witness,
            });
        }
    }
    rows.sort_by(|a, b| {
        (a.convention_id.as_str(), a.claim_id.as_str())
            .cmp(&(b.convention_id.as_str(), b.claim_id.as_str()))
    });
    Ok(ReconciliationReport { rows })
}

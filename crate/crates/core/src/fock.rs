//! Finite fermionic Fock space over an ordered list of modes.
//!
//! A basis state is an occupation bitstring read big-endian in the mode
//! order, so for the order `(Alice, ParticleI, ParticleII, AntiparticleII,
//! AntiparticleI)` the ket |a pqmn⟩ has index `a·16 + p·8 + q·4 + m·2 + n`.
//! Creation operators and mode reorderings carry Jordan–Wigner signs counted
//! over the modes strictly preceding the target in the current order; this
//! makes [`apply_creation`] and [`reorder_modes`] mutually consistent.
//!
//! Whether Alice's mode is itself fermionic is left open; it never matters
//! here because Alice stays leftmost in every order this crate constructs,
//! so her mode is never crossed by a sign-carrying operation.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{Error, Result};

/// Hermiticity and unit-trace tolerance for density matrices.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Eigenvalue floor: anything below `-POSITIVITY_FLOOR` fails validation.
pub const POSITIVITY_FLOOR: f64 = 1e-10;

/// One fermionic mode. `ParticleI` is a particle mode in Rindler region I,
/// `AntiparticleII` an antiparticle mode in region II, and so on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModeLabel {
    Alice,
    ParticleI,
    ParticleII,
    AntiparticleII,
    AntiparticleI,
}

impl ModeLabel {
    /// Canonical order of Bob's four Rindler modes, matching the big-endian
    /// basis |pqmn⟩ = |p⟩⁺_I |q⟩⁺_II |m⟩⁻_II |n⟩⁻_I.
    pub const BOB_CANONICAL: [ModeLabel; 4] = [
        ModeLabel::ParticleI,
        ModeLabel::ParticleII,
        ModeLabel::AntiparticleII,
        ModeLabel::AntiparticleI,
    ];

    pub fn is_antiparticle(self) -> bool {
        matches!(self, ModeLabel::AntiparticleI | ModeLabel::AntiparticleII)
    }

    pub fn short_name(self) -> &'static str {
        match self {
            ModeLabel::Alice => "A",
            ModeLabel::ParticleI => "pI",
            ModeLabel::ParticleII => "pII",
            ModeLabel::AntiparticleII => "aII",
            ModeLabel::AntiparticleI => "aI",
        }
    }
}

/// Ordered list of distinct modes; fixes the basis indexing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeOrder(Vec<ModeLabel>);

impl ModeOrder {
    pub fn new(labels: impl Into<Vec<ModeLabel>>) -> Result<Self> {
        let labels = labels.into();
        if labels.is_empty() || labels.len() > 5 {
            return Err(Error::InvalidModeOrder);
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[i + 1..].contains(a) {
                return Err(Error::InvalidModeOrder);
            }
        }
        Ok(ModeOrder(labels))
    }

    /// The five-mode order `(Alice, ParticleI, ParticleII, AntiparticleII,
    /// AntiparticleI)` used by every lifted two-party state.
    pub fn lifted() -> Self {
        let mut v = vec![ModeLabel::Alice];
        v.extend_from_slice(&ModeLabel::BOB_CANONICAL);
        ModeOrder(v)
    }

    /// Bob's four modes in canonical order.
    pub fn bob() -> Self {
        ModeOrder(ModeLabel::BOB_CANONICAL.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Hilbert-space dimension, 2^len.
    pub fn dim(&self) -> usize {
        1 << self.0.len()
    }

    pub fn labels(&self) -> &[ModeLabel] {
        &self.0
    }

    pub fn position(&self, label: ModeLabel) -> Option<usize> {
        self.0.iter().position(|&l| l == label)
    }

    /// Occupation of the mode at `position` in basis state `index`
    /// (big-endian: position 0 is the highest bit).
    pub fn occupation(&self, index: usize, position: usize) -> bool {
        (index >> (self.0.len() - 1 - position)) & 1 == 1
    }
}

/// Pure state: complex amplitudes over the occupation basis of a mode order.
///
/// Constructors do not normalize; [`apply_creation`] legitimately produces
/// the zero vector (Pauli exclusion). Use [`PureState::normalized`] where a
/// unit vector is required.
#[derive(Debug, Clone)]
pub struct PureState {
    order: ModeOrder,
    amps: Vec<Complex64>,
}

impl PureState {
    pub fn new(order: ModeOrder, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != order.dim() {
            return Err(Error::DimensionMismatch {
                expected: order.dim(),
                found: amps.len(),
            });
        }
        Ok(PureState { order, amps })
    }

    /// The basis ket with the given big-endian occupation index.
    pub fn basis_state(order: ModeOrder, index: usize) -> Self {
        let mut amps = vec![Complex64::ZERO; order.dim()];
        amps[index] = Complex64::ONE;
        PureState { order, amps }
    }

    pub fn mode_order(&self) -> &ModeOrder {
        &self.order
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn dim(&self) -> usize {
        self.order.dim()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sqr().sqrt();
        if n == 0.0 {
            return Err(Error::NotNormalized(1.0));
        }
        let amps = self.amps.iter().map(|a| a / n).collect();
        Ok(PureState {
            order: self.order.clone(),
            amps,
        })
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.order != other.order {
            return Err(Error::ModeOrderMismatch);
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Tensor product; `self`'s modes come first (big-endian concatenation).
    pub fn tensor(&self, other: &PureState) -> Result<Self> {
        let mut labels = self.order.labels().to_vec();
        labels.extend_from_slice(other.order.labels());
        let order = ModeOrder::new(labels)?;
        let db = other.dim();
        let mut amps = vec![Complex64::ZERO; order.dim()];
        for (i, a) in self.amps.iter().enumerate() {
            for (j, b) in other.amps.iter().enumerate() {
                amps[i * db + j] = a * b;
            }
        }
        Ok(PureState { order, amps })
    }
}

/// Index/sign table for a fermionic mode reordering: entry `i` holds the new
/// basis index of old index `i` and the (-1)^inversions sign over occupied
/// mode pairs whose relative order flips.
pub fn reorder_table(old: &ModeOrder, new: &ModeOrder) -> Result<Vec<(usize, f64)>> {
    if old.len() != new.len() {
        return Err(Error::NotAPermutation);
    }
    let len = old.len();
    let mut new_pos = vec![0usize; len];
    for (k, &label) in old.labels().iter().enumerate() {
        new_pos[k] = new.position(label).ok_or(Error::NotAPermutation)?;
    }
    let mut table = Vec::with_capacity(old.dim());
    for idx in 0..old.dim() {
        let mut out = 0usize;
        let mut inversions = 0u32;
        for k in 0..len {
            if !old.occupation(idx, k) {
                continue;
            }
            out |= 1 << (len - 1 - new_pos[k]);
            for l in (k + 1)..len {
                if old.occupation(idx, l) && new_pos[k] > new_pos[l] {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions.is_multiple_of(2) { 1.0 } else { -1.0 };
        table.push((out, sign));
    }
    Ok(table)
}

/// Creation operator for `mode` in Jordan–Wigner form: flips the mode 0→1
/// with sign (-1)^(occupied modes preceding it); doubly-occupied
/// contributions vanish. The output may be the zero vector.
pub fn apply_creation(state: &PureState, mode: ModeLabel) -> Result<PureState> {
    let pos = state.order.position(mode).ok_or(Error::UnknownMode(mode))?;
    let len = state.order.len();
    let bit = 1usize << (len - 1 - pos);
    let mut amps = vec![Complex64::ZERO; state.dim()];
    for (idx, &a) in state.amps.iter().enumerate() {
        if a == Complex64::ZERO || idx & bit != 0 {
            continue;
        }
        // occupied modes strictly preceding `pos` are the bits above `bit`
        let preceding = (idx >> (len - pos)) as u32;
        let sign = if preceding.count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        amps[idx | bit] += a * sign;
    }
    PureState::new(state.order.clone(), amps)
}

/// Annihilation operator, adjoint of [`apply_creation`] with the same sign
/// convention. The output may be the zero vector.
pub fn apply_annihilation(state: &PureState, mode: ModeLabel) -> Result<PureState> {
    let pos = state.order.position(mode).ok_or(Error::UnknownMode(mode))?;
    let len = state.order.len();
    let bit = 1usize << (len - 1 - pos);
    let mut amps = vec![Complex64::ZERO; state.dim()];
    for (idx, &a) in state.amps.iter().enumerate() {
        if a == Complex64::ZERO || idx & bit == 0 {
            continue;
        }
        let preceding = (idx >> (len - pos)) as u32;
        let sign = if preceding.count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        amps[idx & !bit] += a * sign;
    }
    PureState::new(state.order.clone(), amps)
}

/// Reorder the modes of a state, picking up the fermionic reordering sign on
/// every basis amplitude. Applying the inverse reorder recovers the input
/// exactly.
pub fn reorder_modes(state: &PureState, new_order: &ModeOrder) -> Result<PureState> {
    let table = reorder_table(&state.order, new_order)?;
    let mut amps = vec![Complex64::ZERO; state.dim()];
    for (idx, &a) in state.amps.iter().enumerate() {
        let (out, sign) = table[idx];
        amps[out] = a * sign;
    }
    Ok(PureState {
        order: new_order.clone(),
        amps,
    })
}

/// Rank-1 projector |ψ⟩⟨ψ| of a normalized state.
pub fn outer(state: &PureState) -> DensityMatrix {
    let n = state.norm_sqr();
    assert!(
        (n - 1.0).abs() < 1e-9,
        "outer() needs a normalized state (norm^2 = {n})"
    );
    let dim = state.dim();
    let entries = DMatrix::from_fn(dim, dim, |r, c| state.amps[r] * state.amps[c].conj());
    DensityMatrix::new_unchecked(state.order.clone(), entries)
}

/// Convex combination of density matrices over one mode order.
pub fn mix(components: &[(f64, DensityMatrix)]) -> Result<DensityMatrix> {
    let (first_w, first) = components.first().ok_or(Error::WeightSum(0.0))?;
    let sum: f64 = components.iter().map(|(w, _)| w).sum();
    if components.iter().any(|(w, _)| *w < 0.0) || (sum - 1.0).abs() > 1e-12 {
        return Err(Error::WeightSum(sum));
    }
    let mut entries = first.entries.scale(*first_w);
    for (w, rho) in &components[1..] {
        if rho.order != first.order {
            return Err(Error::ModeOrderMismatch);
        }
        entries += rho.entries.scale(*w);
    }
    Ok(DensityMatrix::new_unchecked(first.order.clone(), entries))
}

/// Hermitian, unit-trace, positive-semidefinite matrix over a mode order.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    order: ModeOrder,
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validates Hermiticity (1e-12), unit trace (1e-12) and positivity
    /// (smallest eigenvalue >= -1e-10).
    pub fn new(order: ModeOrder, entries: DMatrix<Complex64>) -> Result<Self> {
        let dim = order.dim();
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: entries.nrows(),
            });
        }
        let rho = DensityMatrix { order, entries };
        rho.validate()?;
        Ok(rho)
    }

    /// Constructor for operations that preserve density-matrix structure
    /// exactly (unitary conjugation, convex mixing, partial trace, outer
    /// products of unit vectors), skipping the eigensolve in [`Self::new`].
    pub(crate) fn new_unchecked(order: ModeOrder, entries: DMatrix<Complex64>) -> Self {
        debug_assert_eq!(entries.nrows(), order.dim());
        DensityMatrix { order, entries }
    }

    /// Re-check the density-matrix invariants: Hermitian and unit-trace
    /// within 1e-12, smallest eigenvalue >= -1e-10.
    pub fn validate(&self) -> Result<()> {
        let dim = self.dim();
        let mut herm_residual = 0.0f64;
        for r in 0..dim {
            for c in r..dim {
                let d = (self.entries[(r, c)] - self.entries[(c, r)].conj()).norm();
                herm_residual = herm_residual.max(d);
            }
        }
        if herm_residual > HERMITICITY_TOL {
            return Err(Error::NotHermitian(herm_residual));
        }
        let trace = self.entries.trace();
        let trace_dev = (trace.re - 1.0).abs().max(trace.im.abs());
        if trace_dev > HERMITICITY_TOL {
            return Err(Error::TraceNotOne(trace_dev));
        }
        let min = self
            .eigenvalues()
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min < -POSITIVITY_FLOOR {
            return Err(Error::NegativeEigenvalue(min));
        }
        Ok(())
    }

    pub fn mode_order(&self) -> &ModeOrder {
        &self.order
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.order.dim()
    }

    /// Real eigenvalues (unsorted) of the Hermitian matrix.
    pub fn eigenvalues(&self) -> Vec<f64> {
        nalgebra::linalg::SymmetricEigen::new(self.entries.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect()
    }

    /// Standard partial trace in the current mode order (plain tensor-factor
    /// semantics). Kept modes stay in their original relative order.
    pub fn partial_trace(&self, keep: &[ModeLabel]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::InvalidKeep);
        }
        let mut keep_pos = Vec::with_capacity(keep.len());
        for pos in 0..self.order.len() {
            if keep.contains(&self.order.labels()[pos]) {
                keep_pos.push(pos);
            }
        }
        if keep_pos.len() != keep.len() {
            return Err(Error::InvalidKeep);
        }
        let len = self.order.len();
        let out_order = ModeOrder::new(
            keep_pos
                .iter()
                .map(|&p| self.order.labels()[p])
                .collect::<Vec<_>>(),
        )?;
        let kdim = out_order.dim();
        let mut out = DMatrix::<Complex64>::zeros(kdim, kdim);
        let project = |idx: usize| -> (usize, usize) {
            // split a full index into (kept sub-index, traced sub-index)
            let mut kept = 0usize;
            let mut traced = 0usize;
            let mut kbit = keep_pos.len();
            let mut tbit = len - keep_pos.len();
            for pos in 0..len {
                let occ = (idx >> (len - 1 - pos)) & 1;
                if keep_pos.contains(&pos) {
                    kbit -= 1;
                    kept |= occ << kbit;
                } else {
                    tbit -= 1;
                    traced |= occ << tbit;
                }
            }
            (kept, traced)
        };
        let dim = self.dim();
        for r in 0..dim {
            let (kr, tr) = project(r);
            for c in 0..dim {
                let (kc, tc) = project(c);
                if tr == tc {
                    out[(kr, kc)] += self.entries[(r, c)];
                }
            }
        }
        Ok(DensityMatrix::new_unchecked(out_order, out))
    }

    /// Conjugate by a mode-reordering unitary. With `signed`, the unitary
    /// carries the fermionic reordering signs of [`reorder_modes`]; without,
    /// it is the plain bit permutation.
    pub fn reorder(&self, new_order: &ModeOrder, signed: bool) -> Result<DensityMatrix> {
        let table = reorder_table(&self.order, new_order)?;
        let dim = self.dim();
        let mut out = DMatrix::<Complex64>::zeros(dim, dim);
        for (r, &(nr, sr)) in table.iter().enumerate() {
            for (c, &(nc, sc)) in table.iter().enumerate() {
                let s = if signed { sr * sc } else { 1.0 };
                out[(nr, nc)] = self.entries[(r, c)] * s;
            }
        }
        Ok(DensityMatrix::new_unchecked(new_order.clone(), out))
    }

    /// Conjugate by the diagonal unitary phase^(number of occupied
    /// antiparticle modes). Populations are untouched.
    pub fn antiparticle_phase(&self, phase: f64) -> DensityMatrix {
        let len = self.order.len();
        let anti: Vec<usize> = (0..len)
            .filter(|&p| self.order.labels()[p].is_antiparticle())
            .collect();
        let diag = |idx: usize| -> f64 {
            let occ: u32 = anti
                .iter()
                .map(|&p| ((idx >> (len - 1 - p)) & 1) as u32)
                .sum();
            phase.powi(occ as i32)
        };
        let dim = self.dim();
        let out = DMatrix::from_fn(dim, dim, |r, c| self.entries[(r, c)] * diag(r) * diag(c));
        DensityMatrix::new_unchecked(self.order.clone(), out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    use ModeLabel::*;

    fn random_state(rng: &mut ChaCha8Rng, order: ModeOrder) -> PureState {
        let amps: Vec<Complex64> = (0..order.dim())
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        PureState::new(order, amps).unwrap().normalized().unwrap()
    }

    #[test]
    fn creation_on_empty_mode_has_plus_sign() {
        let vac = PureState::basis_state(ModeOrder::bob(), 0b0000);
        let out = apply_creation(&vac, ParticleI).unwrap();
        assert_abs_diff_eq!(out.amplitudes()[0b1000].re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn creation_crosses_one_occupied_mode_with_minus_sign() {
        let s = PureState::basis_state(ModeOrder::bob(), 0b1000);
        let out = apply_creation(&s, ParticleII).unwrap();
        assert_abs_diff_eq!(out.amplitudes()[0b1100].re, -1.0, epsilon = 1e-15);
    }

    #[test]
    fn creation_on_occupied_mode_gives_zero_vector() {
        let s = PureState::basis_state(ModeOrder::bob(), 0b1000);
        let out = apply_creation(&s, ParticleI).unwrap();
        assert_eq!(out.norm_sqr(), 0.0);
    }

    #[test]
    fn creation_is_nilpotent_and_anticommutes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let s = random_state(&mut rng, ModeOrder::lifted());
            for &a in ModeOrder::lifted().labels() {
                let twice = apply_creation(&apply_creation(&s, a).unwrap(), a).unwrap();
                assert!(twice.norm_sqr() < 1e-28);
                for &b in ModeOrder::lifted().labels() {
                    if a == b {
                        continue;
                    }
                    let ab = apply_creation(&apply_creation(&s, b).unwrap(), a).unwrap();
                    let ba = apply_creation(&apply_creation(&s, a).unwrap(), b).unwrap();
                    for (x, y) in ab.amplitudes().iter().zip(ba.amplitudes()) {
                        assert_abs_diff_eq!((x + y).norm(), 0.0, epsilon = 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn annihilation_is_adjoint_of_creation() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..10 {
            let psi = random_state(&mut rng, ModeOrder::lifted());
            let phi = random_state(&mut rng, ModeOrder::lifted());
            for &mode in ModeOrder::lifted().labels() {
                let lhs = phi.inner(&apply_annihilation(&psi, mode).unwrap()).unwrap();
                let rhs = apply_creation(&phi, mode).unwrap().inner(&psi).unwrap();
                assert_abs_diff_eq!((lhs - rhs).norm(), 0.0, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn swap_of_two_occupied_modes_flips_sign() {
        let order = ModeOrder::new(vec![ParticleI, ParticleII]).unwrap();
        let s = PureState::basis_state(order, 0b11);
        let swapped = ModeOrder::new(vec![ParticleII, ParticleI]).unwrap();
        let out = reorder_modes(&s, &swapped).unwrap();
        assert_abs_diff_eq!(out.amplitudes()[0b11].re, -1.0, epsilon = 1e-15);
    }

    #[test]
    fn swap_with_single_occupation_keeps_sign() {
        let order = ModeOrder::new(vec![ParticleI, ParticleII]).unwrap();
        let s = PureState::basis_state(order, 0b10);
        let swapped = ModeOrder::new(vec![ParticleII, ParticleI]).unwrap();
        let out = reorder_modes(&s, &swapped).unwrap();
        assert_abs_diff_eq!(out.amplitudes()[0b01].re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn identity_reorder_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = random_state(&mut rng, ModeOrder::bob());
        let out = reorder_modes(&s, &ModeOrder::bob()).unwrap();
        assert_eq!(out.amplitudes(), s.amplitudes());
    }

    #[test]
    fn reorder_is_unitary_and_inverse_recovers_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let orders = [
            vec![Alice, ParticleI, ParticleII, AntiparticleII, AntiparticleI],
            vec![AntiparticleI, ParticleI, Alice, AntiparticleII, ParticleII],
            vec![ParticleII, AntiparticleII, AntiparticleI, ParticleI, Alice],
        ];
        for target in &orders {
            let s = random_state(&mut rng, ModeOrder::lifted());
            let new_order = ModeOrder::new(target.clone()).unwrap();
            let moved = reorder_modes(&s, &new_order).unwrap();
            assert_abs_diff_eq!(moved.norm_sqr(), 1.0, epsilon = 1e-14);
            let back = reorder_modes(&moved, s.mode_order()).unwrap();
            assert_eq!(back.amplitudes(), s.amplitudes());
        }
    }

    #[test]
    fn reorder_composition_matches_direct_reorder() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let s = random_state(&mut rng, ModeOrder::lifted());
        let mid = ModeOrder::new(vec![Alice, AntiparticleII, ParticleI, AntiparticleI, ParticleII])
            .unwrap();
        let fin = ModeOrder::new(vec![ParticleII, Alice, AntiparticleI, ParticleI, AntiparticleII])
            .unwrap();
        let via = reorder_modes(&reorder_modes(&s, &mid).unwrap(), &fin).unwrap();
        let direct = reorder_modes(&s, &fin).unwrap();
        for (a, b) in via.amplitudes().iter().zip(direct.amplitudes()) {
            assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn outer_of_basis_kets() {
        let zero = PureState::basis_state(ModeOrder::new(vec![Alice]).unwrap(), 0);
        let rho = outer(&zero);
        assert_abs_diff_eq!(rho.entries()[(0, 0)].re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.entries()[(1, 1)].re, 0.0, epsilon = 1e-15);

        let plus = PureState::new(
            ModeOrder::new(vec![Alice]).unwrap(),
            vec![
                Complex64::new((0.5f64).sqrt(), 0.0),
                Complex64::new((0.5f64).sqrt(), 0.0),
            ],
        )
        .unwrap();
        let rho = outer(&plus);
        for r in 0..2 {
            for c in 0..2 {
                assert_abs_diff_eq!(rho.entries()[(r, c)].re, 0.5, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn outer_has_unit_trace_and_projector_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = random_state(&mut rng, ModeOrder::lifted());
        let rho = outer(&s);
        let mut eigs = rho.eigenvalues();
        eigs.sort_by(f64::total_cmp);
        assert_abs_diff_eq!(eigs.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eigs[eigs.len() - 1], 1.0, epsilon = 1e-12);
        for &e in &eigs[..eigs.len() - 1] {
            assert_abs_diff_eq!(e, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn outer_of_vacuum_like_state_has_four_quarter_diagonals() {
        // equal-weight four-term real state over four modes: the projector's
        // diagonal carries 1/4 on exactly the four occupied basis indices
        let mut amps = vec![Complex64::ZERO; 16];
        for (idx, sign) in [(0b0000, 1.0), (0b0110, -1.0), (0b1001, 1.0), (0b1111, -1.0)] {
            amps[idx] = Complex64::new(0.5 * sign, 0.0);
        }
        let psi = PureState::new(ModeOrder::bob(), amps).unwrap();
        let rho = outer(&psi);
        let mut quarters = 0;
        for d in 0..16 {
            let v = rho.entries()[(d, d)].re;
            if (v - 0.25).abs() < 1e-15 {
                quarters += 1;
            } else {
                assert_abs_diff_eq!(v, 0.0, epsilon = 1e-15);
            }
        }
        assert_eq!(quarters, 4);
    }

    #[test]
    fn mix_single_component_is_identity() {
        let s = PureState::basis_state(ModeOrder::new(vec![Alice]).unwrap(), 1);
        let rho = outer(&s);
        let mixed = mix(&[(1.0, rho.clone())]).unwrap();
        assert_eq!(mixed.entries(), rho.entries());
    }

    #[test]
    fn mix_equal_weights_of_projectors_is_diagonal() {
        let order = ModeOrder::new(vec![Alice]).unwrap();
        let zero = outer(&PureState::basis_state(order.clone(), 0));
        let one = outer(&PureState::basis_state(order, 1));
        let mixed = mix(&[(0.5, zero), (0.5, one)]).unwrap();
        assert_abs_diff_eq!(mixed.entries()[(0, 0)].re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(mixed.entries()[(1, 1)].re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(mixed.entries()[(0, 1)].norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn mix_builds_two_qubit_werner_entries() {
        let order = ModeOrder::new(vec![Alice, ParticleI]).unwrap();
        let h = (0.5f64).sqrt();
        let bell = outer(
            &PureState::new(
                order.clone(),
                vec![
                    Complex64::new(h, 0.0),
                    Complex64::ZERO,
                    Complex64::ZERO,
                    Complex64::new(h, 0.0),
                ],
            )
            .unwrap(),
        );
        let f = 0.9;
        let mut comps = vec![(f, bell)];
        for k in 0..4 {
            comps.push(((1.0 - f) / 4.0, outer(&PureState::basis_state(order.clone(), k))));
        }
        let werner = mix(&comps).unwrap();
        for (d, want) in [(0, 0.475), (1, 0.025), (2, 0.025), (3, 0.475)] {
            assert_abs_diff_eq!(werner.entries()[(d, d)].re, want, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(werner.entries()[(0, 3)].re, 0.45, epsilon = 1e-15);
        assert_abs_diff_eq!(werner.entries()[(3, 0)].re, 0.45, epsilon = 1e-15);
    }

    #[test]
    fn mix_rejects_bad_weights_and_mismatched_orders() {
        let order = ModeOrder::new(vec![Alice]).unwrap();
        let rho = outer(&PureState::basis_state(order, 0));
        assert!(matches!(
            mix(&[(0.7, rho.clone()), (0.2, rho.clone())]),
            Err(Error::WeightSum(_))
        ));
        let other = outer(&PureState::basis_state(
            ModeOrder::new(vec![ParticleI]).unwrap(),
            0,
        ));
        assert!(matches!(
            mix(&[(0.5, rho), (0.5, other)]),
            Err(Error::ModeOrderMismatch)
        ));
    }

    #[test]
    fn partial_trace_of_bell_pair_is_maximally_mixed() {
        let order = ModeOrder::new(vec![Alice, ParticleI]).unwrap();
        let h = (0.5f64).sqrt();
        let bell = PureState::new(
            order,
            vec![
                Complex64::new(h, 0.0),
                Complex64::ZERO,
                Complex64::ZERO,
                Complex64::new(h, 0.0),
            ],
        )
        .unwrap();
        let reduced = outer(&bell).partial_trace(&[ParticleI]).unwrap();
        assert_abs_diff_eq!(reduced.entries()[(0, 0)].re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(reduced.entries()[(1, 1)].re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(reduced.entries()[(0, 1)].norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn partial_trace_of_product_gives_marginal() {
        let a = PureState::new(
            ModeOrder::new(vec![Alice]).unwrap(),
            vec![Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0)],
        )
        .unwrap();
        let b = PureState::basis_state(ModeOrder::new(vec![ParticleI]).unwrap(), 1);
        let rho = outer(&a.tensor(&b).unwrap());
        let ra = rho.partial_trace(&[Alice]).unwrap();
        assert_abs_diff_eq!(ra.entries()[(0, 0)].re, 0.36, epsilon = 1e-14);
        assert_abs_diff_eq!(ra.entries()[(1, 1)].re, 0.64, epsilon = 1e-14);
        assert_abs_diff_eq!(ra.entries()[(0, 1)].re, 0.48, epsilon = 1e-14);
    }

    #[test]
    fn partial_trace_keeps_original_relative_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let s = random_state(&mut rng, ModeOrder::lifted());
        let rho = outer(&s);
        // keep set listed backwards must still come out as (Alice, ParticleII)
        let kept = rho.partial_trace(&[ParticleII, Alice]).unwrap();
        assert_eq!(kept.mode_order().labels(), &[Alice, ParticleII]);
    }

    #[test]
    fn partial_trace_rejects_unknown_or_empty_keep() {
        let order = ModeOrder::new(vec![Alice, ParticleI]).unwrap();
        let rho = outer(&PureState::basis_state(order, 0));
        assert!(matches!(
            rho.partial_trace(&[ParticleII]),
            Err(Error::InvalidKeep)
        ));
        assert!(matches!(rho.partial_trace(&[]), Err(Error::InvalidKeep)));
    }

    #[test]
    fn mode_order_rejects_duplicates_and_empty() {
        assert!(ModeOrder::new(vec![Alice, Alice]).is_err());
        assert!(ModeOrder::new(Vec::<ModeLabel>::new()).is_err());
    }

    #[test]
    fn density_validation_rejects_bad_matrices() {
        let order = ModeOrder::new(vec![Alice]).unwrap();
        let bad_trace = DMatrix::from_diagonal_element(2, 2, Complex64::new(1.0, 0.0));
        assert!(matches!(
            DensityMatrix::new(order.clone(), bad_trace),
            Err(Error::TraceNotOne(_))
        ));
        let mut non_herm = DMatrix::from_diagonal_element(2, 2, Complex64::new(0.5, 0.0));
        non_herm[(0, 1)] = Complex64::new(0.0, 0.3);
        non_herm[(1, 0)] = Complex64::new(0.0, 0.3);
        assert!(matches!(
            DensityMatrix::new(order.clone(), non_herm),
            Err(Error::NotHermitian(_))
        ));
        let mut neg = DMatrix::zeros(2, 2);
        neg[(0, 0)] = Complex64::new(1.5, 0.0);
        neg[(1, 1)] = Complex64::new(-0.5, 0.0);
        assert!(matches!(
            DensityMatrix::new(order, neg),
            Err(Error::NegativeEigenvalue(_))
        ));
    }
}

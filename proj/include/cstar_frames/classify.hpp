#pragma once

// Decision procedures for frame properties of a finite family in A^d.
//
// Every predicate is computed from its own definition. None is derived from
// another, so that the known equivalences between them (modular Riesz basis,
// omega-independence, biorthogonality with the canonical dual, existence of
// a biorthogonal sequence; exactness via removal and via the invertibility
// of 1 - <x_l, S^{-1} x_l>) are genuine cross-checks.

#include <optional>
#include <vector>

#include "cstar_frames/frame.hpp"

namespace cstar {

struct FrameVerdict {
    bool is_bessel = true;
    bool is_frame = false;
    bool is_tight = false;
    bool is_parseval = false;
    FrameBounds bounds;
};

struct OmegaVerdict {
    bool independent = false;
    /// Unit-norm coefficients {a_j}, not all zero, with sum_j a_j x_j = 0.
    std::optional<std::vector<AlgebraElement>> kernel_witness;
};

struct BiorthogonalVerdict {
    bool exists = false;
    /// Relative least-squares residual of X Y^* = I.
    double residual = 0.0;
    std::optional<FrameSystem> witness;
};

struct LemmaIndexVerdict {
    int index = 0;
    /// 1_A - <x_l, S^{-1} x_l>
    AlgebraElement complement;
    /// Invertible complement means x_l can be removed.
    bool removable = false;
};

struct LemmaVerdict {
    bool exact = false;
    std::vector<LemmaIndexVerdict> per_index;
};

struct RemovalVerdict {
    bool exact = false;
    /// removable[l]: the family without x_l is still a frame.
    std::vector<bool> removable;
    std::optional<int> removable_index;
};

struct FrankLarsonViolation {
    std::vector<AlgebraElement> kernel_element;
    int index = 0;
};

struct FrankLarsonVerdict {
    bool riesz = false;
    std::optional<int> zero_vector_index;
    std::optional<FrankLarsonViolation> violation;
};

struct ClassificationWitnesses {
    std::optional<std::vector<AlgebraElement>> kernel_element;
    std::optional<int> removable_index;
    /// Indices whose complement 1_A - <x_l, S^{-1} x_l> is not invertible.
    std::vector<LemmaIndexVerdict> non_invertible_complements;
    std::optional<FrankLarsonViolation> frank_larson_violation;
    std::optional<FrameSystem> biorthogonal_sequence;
};

struct ClassificationReport {
    bool is_bessel = true;
    bool is_frame = false;
    bool is_tight = false;
    bool is_parseval = false;
    bool is_omega_independent = false;
    bool is_biorthogonal_to_canonical_dual = false;
    bool has_biorthogonal_sequence = false;
    bool is_exact_by_lemma = false;
    bool is_exact_by_removal = false;
    bool is_riesz_frank_larson = false;
    bool is_modular_riesz = false;
    FrameBounds bounds;
    ClassificationWitnesses witnesses;
};

FrameVerdict is_frame(const FrameSystem& frame, const Tolerance& tol);

/// Kernel of the complex-linear synthesis map a -> sum_j a_j x_j, built
/// column by column from the module operations.
OmegaVerdict is_omega_independent(const FrameSystem& frame, const Tolerance& tol);

/// <x_i, y_j> = delta_ij 1_A for all i, j.
bool is_biorthogonal(const FrameSystem& frame, const FrameSystem& other, const Tolerance& tol);

/// Least-squares solve of X Y^* = I_m over the flattened representation.
BiorthogonalVerdict has_biorthogonal_sequence(const FrameSystem& frame, const Tolerance& tol);

/// Throws DomainError for non-frames.
LemmaVerdict is_exact_by_lemma(const FrameSystem& frame, const Tolerance& tol);

/// Throws DomainError for non-frames. A single vector is always exact since
/// the empty family spans nothing.
RemovalVerdict is_exact_by_removal(const FrameSystem& frame, const Tolerance& tol);

/// Nonzero vectors, and every vanishing finite combination has each term
/// a_j x_j = 0. Checked on a basis of the synthesis kernel.
FrankLarsonVerdict is_riesz_frank_larson(const FrameSystem& frame, const Tolerance& tol);

/// |J| = d and the synthesis matrix is invertible over A.
bool is_modular_riesz(const FrameSystem& frame, const Tolerance& tol);

/// Runs every predicate. Throws ConsistencyError when verdicts that must
/// agree do not.
ClassificationReport classify(const FrameSystem& frame, const Tolerance& tol);

/// Basis of the synthesis kernel as coefficient tuples (unit 2-norm each).
std::vector<std::vector<AlgebraElement>> synthesis_kernel_basis(const FrameSystem& frame, const Tolerance& tol);

} // namespace cstar

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cstar_frames/module.hpp"

namespace cstar {

/// A finite indexed family {x_j} in A^d. Row j of the synthesis matrix is x_j.
class FrameSystem {
public:
    FrameSystem(AlgebraSignature signature, int rank, std::vector<ModuleVector> vectors);

    const AlgebraSignature& signature() const noexcept { return signature_; }
    int rank() const noexcept { return rank_; }
    int size() const noexcept { return static_cast<int>(vectors_.size()); }
    const ModuleVector& operator[](std::size_t j) const { return vectors_.at(j); }
    std::span<const ModuleVector> vectors() const noexcept { return vectors_; }

    /// X: the m x d matrix over A with rows x_j.
    ModuleMap synthesis_matrix() const;

    /// The family with index `index` dropped. Throws StructuralError if that
    /// would leave it empty.
    FrameSystem without(int index) const;

    friend bool operator==(const FrameSystem&, const FrameSystem&) = default;

private:
    AlgebraSignature signature_;
    int rank_;
    std::vector<ModuleVector> vectors_;
};

struct FrameBounds {
    double lower = 0.0;
    double upper = 0.0;

    /// upper / lower; infinite when lower == 0.
    double condition() const;
};

/// G = X^* X, so that S x = x G = sum_j <x, x_j> x_j.
ModuleMap gram_operator(const FrameSystem& frame);

/// Optimal constants: extreme eigenvalues of the flattened Gram matrix,
/// lower clamped at 0.
FrameBounds frame_bounds(const FrameSystem& frame, const Tolerance& tol);

/// {x_j G^{-1}}. Throws DomainError("frame operator not invertible") for
/// non-frames.
FrameSystem canonical_dual(const FrameSystem& frame, const Tolerance& tol);

/// ||x - sum_j <x, S^{-1} x_j> x_j||
double reconstruction_residual(const FrameSystem& frame, const ModuleVector& x, const Tolerance& tol);

/// Y^* X = identity within tolerance.
bool is_dual_pair(const FrameSystem& frame, const FrameSystem& other, const Tolerance& tol);

/// sum_j a_j x_j
ModuleVector synthesize(const FrameSystem& frame, std::span<const AlgebraElement> coeffs);

/// sum_j <x, x_j><x_j, x>, evaluated by direct summation.
AlgebraElement frame_sum(const FrameSystem& frame, const ModuleVector& x);

/// ||sum_j a_j a_j^*||: the squared norm of the coefficient tuple in the
/// standard module l^2(J, A).
double coefficient_norm_squared(std::span<const AlgebraElement> coeffs);

/// C ||sum a_j a_j^*|| <= ||sum a_j x_j||^2 <= D ||sum a_j a_j^*|| with
/// (C, D) the optimal frame bounds, up to rel_tol of the largest side.
bool riesz_bounds_check(const FrameSystem& frame, std::span<const AlgebraElement> coeffs, const Tolerance& tol);

} // namespace cstar

#include "cstar_frames/frame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "linalg.hpp"

namespace cstar {

FrameSystem::FrameSystem(AlgebraSignature signature, int rank, std::vector<ModuleVector> vectors)
    : signature_(std::move(signature)), rank_(rank), vectors_(std::move(vectors)) {
    if (rank_ < 1) throw StructuralError("frame system: rank must be >= 1");
    if (vectors_.empty()) throw StructuralError("frame system: needs at least one vector");
    for (std::size_t j = 0; j < vectors_.size(); ++j) {
        require_same_signature(signature_, vectors_[j].signature(), "frame system");
        if (vectors_[j].rank() != rank_)
            throw StructuralError("frame system: vector " + std::to_string(j) + " has rank " +
                                  std::to_string(vectors_[j].rank()) + ", expected " + std::to_string(rank_));
    }
}

ModuleMap FrameSystem::synthesis_matrix() const { return ModuleMap::from_rows(vectors_); }

FrameSystem FrameSystem::without(int index) const {
    if (index < 0 || index >= size()) throw StructuralError("frame system: index out of range");
    std::vector<ModuleVector> rest;
    for (int j = 0; j < size(); ++j)
        if (j != index) rest.push_back(vectors_[static_cast<std::size_t>(j)]);
    return FrameSystem(signature_, rank_, std::move(rest));
}

double FrameBounds::condition() const {
    return lower > 0.0 ? upper / lower : std::numeric_limits<double>::infinity();
}

ModuleMap gram_operator(const FrameSystem& frame) {
    const auto x = frame.synthesis_matrix();
    return map_adjoint(x) * x;
}

FrameBounds frame_bounds(const FrameSystem& frame, const Tolerance& tol) {
    const auto gram = gram_operator(frame);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& block : flatten(gram)) {
        const double defect = detail::largest_singular_value(block - block.adjoint());
        const auto ev = detail::hermitian_eigenvalues(block);
        if (defect > tol.scaled(std::abs(ev(ev.size() - 1))))
            throw DomainError("frame_bounds: Gram matrix is not Hermitian");
        lo = std::min(lo, ev(0));
        hi = std::max(hi, ev(ev.size() - 1));
    }
    return {std::max(lo, 0.0), std::max(hi, 0.0)};
}

namespace {

bool invertible_frame_operator(const FrameBounds& b, const Tolerance& tol) {
    return b.upper > tol.abs_tol && b.lower > tol.rel_tol * b.upper;
}

ModuleMap inverse_gram(const FrameSystem& frame, const Tolerance& tol) {
    if (!invertible_frame_operator(frame_bounds(frame, tol), tol)) throw DomainError("frame operator not invertible");
    std::vector<CMatrix> inv;
    for (const auto& block : flatten(gram_operator(frame))) {
        const CMatrix h = 0.5 * (block + block.adjoint());
        inv.push_back(h.ldlt().solve(CMatrix::Identity(h.rows(), h.cols())));
    }
    return unflatten(frame.signature(), inv);
}

} // namespace

FrameSystem canonical_dual(const FrameSystem& frame, const Tolerance& tol) {
    const auto g_inv = inverse_gram(frame, tol);
    std::vector<ModuleVector> dual;
    dual.reserve(static_cast<std::size_t>(frame.size()));
    for (const auto& x : frame.vectors()) dual.push_back(apply_map(g_inv, x));
    return FrameSystem(frame.signature(), frame.rank(), std::move(dual));
}

double reconstruction_residual(const FrameSystem& frame, const ModuleVector& x, const Tolerance& tol) {
    const auto dual = canonical_dual(frame, tol);
    auto rebuilt = ModuleVector::zero(frame.signature(), frame.rank());
    for (int j = 0; j < frame.size(); ++j) rebuilt += inner_product(x, dual[j]) * frame[j];
    return vector_norm(x - rebuilt);
}

bool is_dual_pair(const FrameSystem& frame, const FrameSystem& other, const Tolerance& tol) {
    require_same_signature(frame.signature(), other.signature(), "is_dual_pair");
    if (frame.rank() != other.rank() || frame.size() != other.size())
        throw StructuralError("is_dual_pair: systems differ in rank or size");
    const auto x = frame.synthesis_matrix();
    const auto y = other.synthesis_matrix();
    const auto product = map_adjoint(y) * x;
    const double scale = std::max(1.0, operator_norm(x) * operator_norm(y));
    return max_entry_distance(product, ModuleMap::identity(frame.signature(), frame.rank())) <= tol.scaled(scale);
}

ModuleVector synthesize(const FrameSystem& frame, std::span<const AlgebraElement> coeffs) {
    if (coeffs.size() != static_cast<std::size_t>(frame.size()))
        throw StructuralError("synthesize: expected " + std::to_string(frame.size()) + " coefficients, got " +
                              std::to_string(coeffs.size()));
    auto out = ModuleVector::zero(frame.signature(), frame.rank());
    for (int j = 0; j < frame.size(); ++j) out += coeffs[static_cast<std::size_t>(j)] * frame[j];
    return out;
}

AlgebraElement frame_sum(const FrameSystem& frame, const ModuleVector& x) {
    AlgebraElement acc(frame.signature());
    for (const auto& xj : frame.vectors()) acc += inner_product(x, xj) * inner_product(xj, x);
    return acc;
}

double coefficient_norm_squared(std::span<const AlgebraElement> coeffs) {
    if (coeffs.empty()) throw StructuralError("coefficient norm: empty coefficient list");
    AlgebraElement acc(coeffs.front().signature());
    for (const auto& a : coeffs) acc += a * adjoint(a);
    return norm(acc);
}

bool riesz_bounds_check(const FrameSystem& frame, std::span<const AlgebraElement> coeffs, const Tolerance& tol) {
    if (coeffs.empty()) throw StructuralError("riesz_bounds_check: empty coefficient list");
    const double synthesized = std::pow(vector_norm(synthesize(frame, coeffs)), 2);
    const double coefficient = coefficient_norm_squared(coeffs);
    const auto bounds = frame_bounds(frame, tol);
    const double slack = tol.scaled(std::max(synthesized, bounds.upper * coefficient));
    return bounds.lower * coefficient - slack <= synthesized && synthesized <= bounds.upper * coefficient + slack;
}

} // namespace cstar

#include "cstar_frames/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "linalg.hpp"

namespace cstar {

double Tolerance::scaled(double magnitude) const {
    return std::max(abs_tol / rel_tol, magnitude) * rel_tol;
}

void Tolerance::validate() const {
    if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) throw StructuralError("tolerance: rel_tol must be positive");
    if (!(abs_tol >= 0.0) || !std::isfinite(abs_tol)) throw StructuralError("tolerance: abs_tol must be nonnegative");
}

AlgebraSignature::AlgebraSignature(std::vector<int> block_sizes) : blocks_(std::move(block_sizes)) {
    if (blocks_.empty()) throw StructuralError("algebra signature needs at least one block");
    for (int n : blocks_)
        if (n < 1) throw StructuralError("algebra block size must be >= 1, got " + std::to_string(n));
}

AlgebraSignature AlgebraSignature::commutative(int count) {
    if (count < 1) throw StructuralError("commutative signature needs at least one block");
    return AlgebraSignature(std::vector<int>(static_cast<std::size_t>(count), 1));
}

int AlgebraSignature::complex_dimension() const noexcept {
    int total = 0;
    for (int n : blocks_) total += n * n;
    return total;
}

void require_same_signature(const AlgebraSignature& a, const AlgebraSignature& b, const char* where) {
    if (!(a == b)) throw StructuralError(std::string(where) + ": algebra signature mismatch");
}

AlgebraElement::AlgebraElement(AlgebraSignature signature) : signature_(std::move(signature)) {
    blocks_.reserve(signature_.block_count());
    for (int n : signature_.block_sizes()) blocks_.push_back(CMatrix::Zero(n, n));
}

AlgebraElement::AlgebraElement(AlgebraSignature signature, std::vector<CMatrix> blocks)
    : signature_(std::move(signature)), blocks_(std::move(blocks)) {
    if (blocks_.size() != signature_.block_count())
        throw StructuralError("algebra element has " + std::to_string(blocks_.size()) + " blocks, signature expects " +
                              std::to_string(signature_.block_count()));
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
        const int n = signature_.block_size(k);
        if (blocks_[k].rows() != n || blocks_[k].cols() != n)
            throw StructuralError("algebra element block " + std::to_string(k) + " must be " + std::to_string(n) +
                                  "x" + std::to_string(n));
    }
}

AlgebraElement AlgebraElement::zero(const AlgebraSignature& signature) { return AlgebraElement(signature); }

AlgebraElement AlgebraElement::identity(const AlgebraSignature& signature) {
    return scalar(signature, Complex(1.0));
}

AlgebraElement AlgebraElement::scalar(const AlgebraSignature& signature, Complex value) {
    std::vector<CMatrix> blocks;
    for (int n : signature.block_sizes()) blocks.push_back(value * CMatrix::Identity(n, n));
    return AlgebraElement(signature, std::move(blocks));
}

AlgebraElement AlgebraElement::diagonal(const AlgebraSignature& signature, std::span<const Complex> values) {
    if (values.size() != signature.block_count()) throw StructuralError("diagonal element: one value per block");
    std::vector<CMatrix> blocks;
    for (std::size_t k = 0; k < values.size(); ++k) {
        const int n = signature.block_size(k);
        blocks.push_back(values[k] * CMatrix::Identity(n, n));
    }
    return AlgebraElement(signature, std::move(blocks));
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
    require_same_signature(signature_, other.signature_, "add");
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += other.blocks_[k];
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
    require_same_signature(signature_, other.signature_, "subtract");
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= other.blocks_[k];
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex factor) {
    for (auto& b : blocks_) b *= factor;
    return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_signature(a.signature_, b.signature_, "multiply");
    std::vector<CMatrix> blocks;
    blocks.reserve(a.blocks_.size());
    for (std::size_t k = 0; k < a.blocks_.size(); ++k) blocks.push_back(a.blocks_[k] * b.blocks_[k]);
    return AlgebraElement(a.signature_, std::move(blocks));
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    if (!(a.signature_ == b.signature_)) return false;
    for (std::size_t k = 0; k < a.blocks_.size(); ++k)
        if (a.blocks_[k] != b.blocks_[k]) return false;
    return true;
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) { return a * b; }

AlgebraElement adjoint(const AlgebraElement& a) {
    std::vector<CMatrix> blocks;
    for (const auto& b : a.blocks()) blocks.push_back(b.adjoint());
    return AlgebraElement(a.signature(), std::move(blocks));
}

double norm(const AlgebraElement& a) {
    double result = 0.0;
    for (const auto& b : a.blocks()) result = std::max(result, detail::largest_singular_value(b));
    return result;
}

namespace {

double hermitian_defect(const AlgebraElement& a) {
    double defect = 0.0;
    for (const auto& b : a.blocks())
        defect = std::max(defect, detail::largest_singular_value(b - b.adjoint()));
    return defect;
}

} // namespace

bool is_positive(const AlgebraElement& a, const Tolerance& tol) {
    const double threshold = tol.scaled(norm(a));
    if (hermitian_defect(a) > threshold) return false;
    for (const auto& b : a.blocks())
        if (detail::hermitian_eigenvalues(b)(0) < -threshold) return false;
    return true;
}

bool is_invertible(const AlgebraElement& a, const Tolerance& tol) {
    double largest = 0.0;
    double smallest = std::numeric_limits<double>::infinity();
    for (const auto& b : a.blocks()) {
        auto sv = detail::singular_values(b);
        largest = std::max(largest, sv(0));
        smallest = std::min(smallest, sv(sv.size() - 1));
    }
    if (largest <= tol.abs_tol) return false;
    return smallest > tol.rel_tol * largest;
}

AlgebraElement inverse(const AlgebraElement& a) {
    std::vector<CMatrix> blocks;
    for (const auto& b : a.blocks()) {
        Eigen::FullPivLU<CMatrix> lu(b);
        if (!lu.isInvertible()) throw DomainError("inverse: algebra element is singular");
        blocks.push_back(lu.inverse());
    }
    return AlgebraElement(a.signature(), std::move(blocks));
}

std::pair<double, double> spectrum_bounds(const AlgebraElement& a, const Tolerance& tol) {
    if (hermitian_defect(a) > tol.scaled(norm(a))) throw DomainError("spectrum_bounds: element is not Hermitian");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& b : a.blocks()) {
        auto ev = detail::hermitian_eigenvalues(b);
        lo = std::min(lo, ev(0));
        hi = std::max(hi, ev(ev.size() - 1));
    }
    return {lo, hi};
}

} // namespace cstar

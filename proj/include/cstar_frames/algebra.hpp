#pragma once

// Finite-dimensional C*-algebras in canonical form: direct sums of full
// complex matrix blocks M_{n_1}(C) + ... + M_{n_K}(C).

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cstar_frames/errors.hpp"

namespace cstar {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Relative tolerance with an absolute floor. One value is threaded through
/// every spectral decision of a computation.
struct Tolerance {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;

    /// Absolute threshold for a quantity of the given magnitude:
    /// max(abs_tol / rel_tol, magnitude) * rel_tol.
    double scaled(double magnitude) const;

    /// Throws StructuralError unless rel_tol > 0 and abs_tol >= 0.
    void validate() const;
};

class AlgebraSignature {
public:
    explicit AlgebraSignature(std::vector<int> block_sizes);

    /// K copies of M_1(C), i.e. C^K with pointwise operations.
    static AlgebraSignature commutative(int count);

    std::size_t block_count() const noexcept { return blocks_.size(); }
    int block_size(std::size_t k) const { return blocks_.at(k); }
    std::span<const int> block_sizes() const noexcept { return blocks_; }

    /// sum of n_k^2
    int complex_dimension() const noexcept;

    friend bool operator==(const AlgebraSignature&, const AlgebraSignature&) = default;

private:
    std::vector<int> blocks_;
};

/// Singular values/eigenvalue extremes are taken over all blocks together.
class AlgebraElement {
public:
    /// Zero element.
    explicit AlgebraElement(AlgebraSignature signature);
    AlgebraElement(AlgebraSignature signature, std::vector<CMatrix> blocks);

    static AlgebraElement zero(const AlgebraSignature& signature);
    static AlgebraElement identity(const AlgebraSignature& signature);
    static AlgebraElement scalar(const AlgebraSignature& signature, Complex value);
    /// One scalar per block, each block a multiple of its identity.
    static AlgebraElement diagonal(const AlgebraSignature& signature, std::span<const Complex> values);

    const AlgebraSignature& signature() const noexcept { return signature_; }
    const CMatrix& block(std::size_t k) const { return blocks_.at(k); }
    CMatrix& block(std::size_t k) { return blocks_.at(k); }
    std::span<const CMatrix> blocks() const noexcept { return blocks_; }

    AlgebraElement& operator+=(const AlgebraElement& other);
    AlgebraElement& operator-=(const AlgebraElement& other);
    AlgebraElement& operator*=(Complex factor);

    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator-(AlgebraElement a) { return a *= Complex(-1.0); }
    friend AlgebraElement operator*(Complex factor, AlgebraElement a) { return a *= factor; }
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

    /// Exact (bitwise) comparison.
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

private:
    AlgebraSignature signature_;
    std::vector<CMatrix> blocks_;
};

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement adjoint(const AlgebraElement& a);

/// C*-norm: largest singular value over all blocks.
double norm(const AlgebraElement& a);

/// Hermitian within tolerance and no block eigenvalue below -scale.
bool is_positive(const AlgebraElement& a, const Tolerance& tol);

/// Every block's smallest singular value exceeds rel_tol times the largest
/// singular value over all blocks. Elements of norm <= abs_tol are never
/// invertible.
bool is_invertible(const AlgebraElement& a, const Tolerance& tol);

/// Blockwise inverse; throws DomainError if some block is singular.
AlgebraElement inverse(const AlgebraElement& a);

/// (min lambda_min, max lambda_max) over blocks of the Hermitian part.
/// Throws DomainError if `a` is not Hermitian within tolerance.
std::pair<double, double> spectrum_bounds(const AlgebraElement& a, const Tolerance& tol);

void require_same_signature(const AlgebraSignature& a, const AlgebraSignature& b, const char* where);

} // namespace cstar

#pragma once

// The free Hilbert module A^d. Vectors are rows, maps act on the right
// (x -> x M), and the inner product is A-linear in its first argument:
//   <x, y> = sum_i x_i y_i^*.

#include <cstddef>
#include <span>
#include <vector>

#include "cstar_frames/algebra.hpp"

namespace cstar {

class ModuleVector {
public:
    ModuleVector(AlgebraSignature signature, std::vector<AlgebraElement> entries);

    static ModuleVector zero(const AlgebraSignature& signature, int rank);
    /// e_j: the unit 1_A in slot j, zero elsewhere.
    static ModuleVector basis(const AlgebraSignature& signature, int rank, int j);

    const AlgebraSignature& signature() const noexcept { return signature_; }
    int rank() const noexcept { return static_cast<int>(entries_.size()); }
    const AlgebraElement& operator[](std::size_t i) const { return entries_.at(i); }
    AlgebraElement& operator[](std::size_t i) { return entries_.at(i); }
    std::span<const AlgebraElement> entries() const noexcept { return entries_; }

    ModuleVector& operator+=(const ModuleVector& other);
    ModuleVector& operator-=(const ModuleVector& other);

    friend ModuleVector operator+(ModuleVector x, const ModuleVector& y) { return x += y; }
    friend ModuleVector operator-(ModuleVector x, const ModuleVector& y) { return x -= y; }
    /// Left module action a x.
    friend ModuleVector operator*(const AlgebraElement& a, const ModuleVector& x);

    friend bool operator==(const ModuleVector&, const ModuleVector&) = default;

private:
    AlgebraSignature signature_;
    std::vector<AlgebraElement> entries_;
};

/// An A-linear adjointable map A^m -> A^d, stored as an m x d matrix over A.
class ModuleMap {
public:
    /// Zero map.
    ModuleMap(AlgebraSignature signature, int domain_rank, int codomain_rank);
    /// Row-major entries, entries[i * codomain_rank + j] = M[i][j].
    ModuleMap(AlgebraSignature signature, int domain_rank, int codomain_rank, std::vector<AlgebraElement> entries);

    static ModuleMap identity(const AlgebraSignature& signature, int rank);
    /// Stacks rows: row i of the matrix is rows[i].
    static ModuleMap from_rows(std::span<const ModuleVector> rows);

    const AlgebraSignature& signature() const noexcept { return signature_; }
    int domain_rank() const noexcept { return domain_rank_; }
    int codomain_rank() const noexcept { return codomain_rank_; }

    const AlgebraElement& at(int i, int j) const;
    AlgebraElement& at(int i, int j);
    ModuleVector row(int i) const;

    /// Composition in the row convention: x (M N) = (x M) N.
    friend ModuleMap operator*(const ModuleMap& m, const ModuleMap& n);
    friend ModuleMap operator-(const ModuleMap& m, const ModuleMap& n);

    friend bool operator==(const ModuleMap&, const ModuleMap&) = default;

private:
    AlgebraSignature signature_;
    int domain_rank_;
    int codomain_rank_;
    std::vector<AlgebraElement> entries_;
};

AlgebraElement inner_product(const ModuleVector& x, const ModuleVector& y);
double vector_norm(const ModuleVector& x);

/// result_j = sum_i x_i M[i][j]
ModuleVector apply_map(const ModuleMap& m, const ModuleVector& x);
ModuleMap map_adjoint(const ModuleMap& m);

/// Block k of the faithful representation: an (m n_k) x (d n_k) complex
/// matrix whose (i, j) tile is M[i][j] restricted to block k.
std::vector<CMatrix> flatten(const ModuleMap& m);
ModuleMap unflatten(const AlgebraSignature& signature, std::span<const CMatrix> blocks);

/// Same tiling for a single row vector: block k is n_k x (d n_k).
std::vector<CMatrix> flatten(const ModuleVector& x);
ModuleVector unflatten_vector(const AlgebraSignature& signature, std::span<const CMatrix> blocks);

/// Largest flattened block 2-norm; equals the operator norm of the map.
double operator_norm(const ModuleMap& m);

/// Square, and every flattened block has smallest singular value above
/// rel_tol times the largest singular value over all blocks.
bool map_invertible(const ModuleMap& m, const Tolerance& tol);

/// Blockwise flattened inverse. Throws DomainError if not invertible.
ModuleMap map_inverse(const ModuleMap& m, const Tolerance& tol);

/// Largest entry norm of M - N.
double max_entry_distance(const ModuleMap& m, const ModuleMap& n);

} // namespace cstar

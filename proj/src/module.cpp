#include "cstar_frames/module.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "linalg.hpp"

namespace cstar {

ModuleVector::ModuleVector(AlgebraSignature signature, std::vector<AlgebraElement> entries)
    : signature_(std::move(signature)), entries_(std::move(entries)) {
    if (entries_.empty()) throw StructuralError("module vector: rank must be >= 1");
    for (const auto& e : entries_) require_same_signature(signature_, e.signature(), "module vector");
}

ModuleVector ModuleVector::zero(const AlgebraSignature& signature, int rank) {
    if (rank < 1) throw StructuralError("module vector: rank must be >= 1");
    return ModuleVector(signature, std::vector<AlgebraElement>(static_cast<std::size_t>(rank), AlgebraElement(signature)));
}

ModuleVector ModuleVector::basis(const AlgebraSignature& signature, int rank, int j) {
    if (j < 0 || j >= rank) throw StructuralError("basis vector index out of range");
    auto e = zero(signature, rank);
    e[static_cast<std::size_t>(j)] = AlgebraElement::identity(signature);
    return e;
}

ModuleVector& ModuleVector::operator+=(const ModuleVector& other) {
    if (rank() != other.rank()) throw StructuralError("module vector add: rank mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

ModuleVector& ModuleVector::operator-=(const ModuleVector& other) {
    if (rank() != other.rank()) throw StructuralError("module vector subtract: rank mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

ModuleVector operator*(const AlgebraElement& a, const ModuleVector& x) {
    require_same_signature(a.signature(), x.signature_, "module action");
    std::vector<AlgebraElement> entries;
    entries.reserve(x.entries_.size());
    for (const auto& e : x.entries_) entries.push_back(a * e);
    return ModuleVector(x.signature_, std::move(entries));
}

ModuleMap::ModuleMap(AlgebraSignature signature, int domain_rank, int codomain_rank)
    : signature_(std::move(signature)), domain_rank_(domain_rank), codomain_rank_(codomain_rank) {
    if (domain_rank < 1 || codomain_rank < 1) throw StructuralError("module map: ranks must be >= 1");
    entries_.assign(static_cast<std::size_t>(domain_rank) * static_cast<std::size_t>(codomain_rank),
                    AlgebraElement(signature_));
}

ModuleMap::ModuleMap(AlgebraSignature signature, int domain_rank, int codomain_rank,
                     std::vector<AlgebraElement> entries)
    : signature_(std::move(signature)), domain_rank_(domain_rank), codomain_rank_(codomain_rank),
      entries_(std::move(entries)) {
    if (domain_rank < 1 || codomain_rank < 1) throw StructuralError("module map: ranks must be >= 1");
    if (entries_.size() != static_cast<std::size_t>(domain_rank) * static_cast<std::size_t>(codomain_rank))
        throw StructuralError("module map: entry count does not match ranks");
    for (const auto& e : entries_) require_same_signature(signature_, e.signature(), "module map");
}

ModuleMap ModuleMap::identity(const AlgebraSignature& signature, int rank) {
    ModuleMap m(signature, rank, rank);
    for (int i = 0; i < rank; ++i) m.at(i, i) = AlgebraElement::identity(signature);
    return m;
}

ModuleMap ModuleMap::from_rows(std::span<const ModuleVector> rows) {
    if (rows.empty()) throw StructuralError("module map: no rows");
    const auto& sig = rows.front().signature();
    const int d = rows.front().rank();
    std::vector<AlgebraElement> entries;
    entries.reserve(rows.size() * static_cast<std::size_t>(d));
    for (const auto& r : rows) {
        require_same_signature(sig, r.signature(), "module map rows");
        if (r.rank() != d) throw StructuralError("module map rows: rank mismatch");
        for (const auto& e : r.entries()) entries.push_back(e);
    }
    return ModuleMap(sig, static_cast<int>(rows.size()), d, std::move(entries));
}

const AlgebraElement& ModuleMap::at(int i, int j) const {
    if (i < 0 || i >= domain_rank_ || j < 0 || j >= codomain_rank_) throw StructuralError("module map index out of range");
    return entries_[static_cast<std::size_t>(i) * codomain_rank_ + j];
}

AlgebraElement& ModuleMap::at(int i, int j) {
    if (i < 0 || i >= domain_rank_ || j < 0 || j >= codomain_rank_) throw StructuralError("module map index out of range");
    return entries_[static_cast<std::size_t>(i) * codomain_rank_ + j];
}

ModuleVector ModuleMap::row(int i) const {
    std::vector<AlgebraElement> entries;
    for (int j = 0; j < codomain_rank_; ++j) entries.push_back(at(i, j));
    return ModuleVector(signature_, std::move(entries));
}

ModuleMap operator*(const ModuleMap& m, const ModuleMap& n) {
    require_same_signature(m.signature_, n.signature_, "map composition");
    if (m.codomain_rank_ != n.domain_rank_) throw StructuralError("map composition: rank mismatch");
    ModuleMap out(m.signature_, m.domain_rank_, n.codomain_rank_);
    for (int i = 0; i < m.domain_rank_; ++i)
        for (int j = 0; j < n.codomain_rank_; ++j) {
            auto& acc = out.at(i, j);
            for (int l = 0; l < m.codomain_rank_; ++l) acc += m.at(i, l) * n.at(l, j);
        }
    return out;
}

ModuleMap operator-(const ModuleMap& m, const ModuleMap& n) {
    require_same_signature(m.signature_, n.signature_, "map difference");
    if (m.domain_rank_ != n.domain_rank_ || m.codomain_rank_ != n.codomain_rank_)
        throw StructuralError("map difference: shape mismatch");
    ModuleMap out = m;
    for (std::size_t e = 0; e < out.entries_.size(); ++e) out.entries_[e] -= n.entries_[e];
    return out;
}

AlgebraElement inner_product(const ModuleVector& x, const ModuleVector& y) {
    require_same_signature(x.signature(), y.signature(), "inner product");
    if (x.rank() != y.rank()) throw StructuralError("inner product: rank mismatch");
    AlgebraElement acc(x.signature());
    for (int i = 0; i < x.rank(); ++i) acc += x[i] * adjoint(y[i]);
    return acc;
}

double vector_norm(const ModuleVector& x) { return std::sqrt(norm(inner_product(x, x))); }

ModuleVector apply_map(const ModuleMap& m, const ModuleVector& x) {
    require_same_signature(m.signature(), x.signature(), "apply map");
    if (x.rank() != m.domain_rank())
        throw StructuralError("apply map: vector rank " + std::to_string(x.rank()) + " but map domain rank " +
                              std::to_string(m.domain_rank()));
    auto out = ModuleVector::zero(m.signature(), m.codomain_rank());
    for (int j = 0; j < m.codomain_rank(); ++j)
        for (int i = 0; i < m.domain_rank(); ++i) out[j] += x[i] * m.at(i, j);
    return out;
}

ModuleMap map_adjoint(const ModuleMap& m) {
    ModuleMap out(m.signature(), m.codomain_rank(), m.domain_rank());
    for (int i = 0; i < m.domain_rank(); ++i)
        for (int j = 0; j < m.codomain_rank(); ++j) out.at(j, i) = adjoint(m.at(i, j));
    return out;
}

std::vector<CMatrix> flatten(const ModuleMap& m) {
    std::vector<CMatrix> out;
    const auto& sig = m.signature();
    for (std::size_t k = 0; k < sig.block_count(); ++k) {
        const int n = sig.block_size(k);
        CMatrix flat(m.domain_rank() * n, m.codomain_rank() * n);
        for (int i = 0; i < m.domain_rank(); ++i)
            for (int j = 0; j < m.codomain_rank(); ++j) flat.block(i * n, j * n, n, n) = m.at(i, j).block(k);
        out.push_back(std::move(flat));
    }
    return out;
}

ModuleMap unflatten(const AlgebraSignature& signature, std::span<const CMatrix> blocks) {
    if (blocks.size() != signature.block_count()) throw StructuralError("unflatten: block count mismatch");
    const int n0 = signature.block_size(0);
    if (blocks[0].rows() % n0 != 0 || blocks[0].cols() % n0 != 0)
        throw StructuralError("unflatten: block 0 shape is not a multiple of its algebra block");
    const int m = static_cast<int>(blocks[0].rows()) / n0;
    const int d = static_cast<int>(blocks[0].cols()) / n0;
    ModuleMap out(signature, m, d);
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        const int n = signature.block_size(k);
        if (blocks[k].rows() != m * n || blocks[k].cols() != d * n)
            throw StructuralError("unflatten: block " + std::to_string(k) + " has inconsistent shape");
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < d; ++j) out.at(i, j).block(k) = blocks[k].block(i * n, j * n, n, n);
    }
    return out;
}

std::vector<CMatrix> flatten(const ModuleVector& x) {
    std::vector<CMatrix> out;
    const auto& sig = x.signature();
    for (std::size_t k = 0; k < sig.block_count(); ++k) {
        const int n = sig.block_size(k);
        CMatrix flat(n, x.rank() * n);
        for (int j = 0; j < x.rank(); ++j) flat.block(0, j * n, n, n) = x[j].block(k);
        out.push_back(std::move(flat));
    }
    return out;
}

ModuleVector unflatten_vector(const AlgebraSignature& signature, std::span<const CMatrix> blocks) {
    auto m = unflatten(signature, blocks);
    if (m.domain_rank() != 1) throw StructuralError("unflatten_vector: expected a single row");
    return m.row(0);
}

double operator_norm(const ModuleMap& m) {
    double result = 0.0;
    for (const auto& b : flatten(m)) result = std::max(result, detail::largest_singular_value(b));
    return result;
}

bool map_invertible(const ModuleMap& m, const Tolerance& tol) {
    if (m.domain_rank() != m.codomain_rank()) return false;
    double largest = 0.0;
    double smallest = std::numeric_limits<double>::infinity();
    for (const auto& b : flatten(m)) {
        auto sv = detail::singular_values(b);
        largest = std::max(largest, sv(0));
        smallest = std::min(smallest, sv(sv.size() - 1));
    }
    if (largest <= tol.abs_tol) return false;
    return smallest > tol.rel_tol * largest;
}

ModuleMap map_inverse(const ModuleMap& m, const Tolerance& tol) {
    if (!map_invertible(m, tol)) throw DomainError("map_inverse: module map is not invertible");
    std::vector<CMatrix> inv;
    for (const auto& b : flatten(m)) inv.push_back(Eigen::PartialPivLU<CMatrix>(b).inverse());
    return unflatten(m.signature(), inv);
}

double max_entry_distance(const ModuleMap& m, const ModuleMap& n) {
    const auto diff = m - n;
    double result = 0.0;
    for (int i = 0; i < diff.domain_rank(); ++i)
        for (int j = 0; j < diff.codomain_rank(); ++j) result = std::max(result, norm(diff.at(i, j)));
    return result;
}

} // namespace cstar

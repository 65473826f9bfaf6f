#include "cstar_frames/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cstar_frames/classify.hpp"
#include "linalg.hpp"

namespace cstar {

std::string_view to_string(GeneratorKind kind) {
    switch (kind) {
    case GeneratorKind::modular_riesz: return "modular_riesz";
    case GeneratorKind::overcomplete_frame: return "overcomplete_frame";
    case GeneratorKind::delta_example: return "delta_example";
    case GeneratorKind::duplicated_vector: return "duplicated_vector";
    case GeneratorKind::near_singular: return "near_singular";
    case GeneratorKind::non_frame: return "non_frame";
    }
    return "unknown";
}

std::optional<GeneratorKind> parse_generator_kind(std::string_view name) {
    for (auto kind : all_generator_kinds)
        if (to_string(kind) == name) return kind;
    return std::nullopt;
}

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

} // namespace

Rng Rng::split(std::uint64_t tag) const { return Rng(mix64(state_ ^ mix64(tag + golden_gamma))); }

std::uint64_t Rng::next() {
    state_ += golden_gamma;
    return mix64(state_);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    // 1 - u lies in (0, 1], so the logarithm is finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
}

void validate(const GeneratorSpec& spec) {
    const auto& sig = spec.signature;
    for (int n : sig.block_sizes())
        if (n > max_block_size) throw StructuralError("generator: block size above cap " + std::to_string(max_block_size));
    if (spec.rank < 1 || spec.rank > max_rank) throw StructuralError("generator: rank must be in 1.." + std::to_string(max_rank));
    if (spec.count < 1 || spec.count > max_count)
        throw StructuralError("generator: count must be in 1.." + std::to_string(max_count));

    const int d = spec.rank;
    const int m = spec.count;
    switch (spec.kind) {
    case GeneratorKind::modular_riesz:
        if (m != d) throw StructuralError("generator: modular_riesz needs count == rank");
        break;
    case GeneratorKind::overcomplete_frame:
        if (m <= d) throw StructuralError("generator: overcomplete_frame needs count > rank");
        break;
    case GeneratorKind::delta_example: {
        const bool ones = std::all_of(sig.block_sizes().begin(), sig.block_sizes().end(), [](int n) { return n == 1; });
        if (!ones || static_cast<int>(sig.block_count()) != m || d != 1)
            throw StructuralError("generator: delta_example needs n blocks of size 1, rank 1 and count n");
        break;
    }
    case GeneratorKind::duplicated_vector:
        if (m < d + 1) throw StructuralError("generator: duplicated_vector needs count >= rank + 1");
        break;
    case GeneratorKind::near_singular: {
        if (m < d) throw StructuralError("generator: near_singular needs count >= rank");
        int singular_values = 0;
        for (int n : sig.block_sizes()) singular_values += d * n;
        if (singular_values < 2)
            throw StructuralError("generator: near_singular needs at least two singular values (rank 1 over C is always conditioned 1)");
        break;
    }
    case GeneratorKind::non_frame:
        break;
    }
}

AlgebraElement random_element(const AlgebraSignature& sig, Rng rng) {
    AlgebraElement a(sig);
    for (std::size_t k = 0; k < sig.block_count(); ++k) {
        auto& b = a.block(k);
        for (Eigen::Index r = 0; r < b.rows(); ++r)
            for (Eigen::Index c = 0; c < b.cols(); ++c) b(r, c) = rng.complex_normal();
    }
    return a;
}

ModuleVector random_vector(const AlgebraSignature& signature, int rank, const Rng& rng) {
    std::vector<AlgebraElement> entries;
    for (int i = 0; i < rank; ++i) entries.push_back(random_element(signature, rng.split(static_cast<std::uint64_t>(i))));
    return ModuleVector(signature, std::move(entries));
}

FrameSystem canonical_basis(const AlgebraSignature& signature, int rank) {
    std::vector<ModuleVector> vectors;
    for (int j = 0; j < rank; ++j) vectors.push_back(ModuleVector::basis(signature, rank, j));
    return FrameSystem(signature, rank, std::move(vectors));
}

FrameSystem delta_example(int n) {
    const auto sig = AlgebraSignature::commutative(n);
    std::vector<ModuleVector> vectors;
    for (int j = 0; j < n; ++j) {
        std::vector<Complex> values(static_cast<std::size_t>(n), Complex(0.0));
        values[static_cast<std::size_t>(j)] = 1.0;
        vectors.push_back(ModuleVector(sig, {AlgebraElement::diagonal(sig, values)}));
    }
    return FrameSystem(sig, 1, std::move(vectors));
}

namespace {

ModuleMap random_matrix(const AlgebraSignature& sig, int rows, int cols, const Rng& attempt) {
    ModuleMap x(sig, rows, cols);
    for (int j = 0; j < rows; ++j) {
        const Rng row = attempt.split(static_cast<std::uint64_t>(j));
        for (int i = 0; i < cols; ++i) x.at(j, i) = random_element(sig, row.split(static_cast<std::uint64_t>(i)));
    }
    return x;
}

FrameSystem to_system(const ModuleMap& x) {
    std::vector<ModuleVector> rows;
    for (int j = 0; j < x.domain_rank(); ++j) rows.push_back(x.row(j));
    return FrameSystem(x.signature(), x.codomain_rank(), std::move(rows));
}

const Tolerance generator_tol{};

bool well_conditioned_frame(const FrameSystem& f) {
    const auto v = is_frame(f, generator_tol);
    return v.is_frame && v.bounds.condition() <= max_condition;
}

/// Clamps the flattened singular values into [s_max / ratio, s_max] and puts
/// the smallest exactly at s_max / ratio.
ModuleMap with_singular_value_ratio(const ModuleMap& x, double ratio) {
    auto blocks = flatten(x);
    std::vector<Eigen::JacobiSVD<CMatrix>> svds;
    double largest = 0.0;
    std::size_t min_block = 0;
    Eigen::Index min_index = 0;
    double smallest = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        svds.emplace_back(blocks[k], Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svds.back().singularValues();
        largest = std::max(largest, sv(0));
        if (sv(sv.size() - 1) < smallest) {
            smallest = sv(sv.size() - 1);
            min_block = k;
            min_index = sv.size() - 1;
        }
    }
    const double floor = largest / ratio;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        Eigen::VectorXd sv = svds[k].singularValues();
        for (Eigen::Index i = 0; i < sv.size(); ++i) sv(i) = std::max(sv(i), floor);
        if (k == min_block) sv(min_index) = floor;
        blocks[k] = svds[k].matrixU() * sv.cast<Complex>().asDiagonal() * svds[k].matrixV().adjoint();
    }
    return unflatten(x.signature(), blocks);
}

/// Projects one flattened block onto the complement of a random direction,
/// so the Gram matrix gains a kernel.
ModuleMap rank_deficient(const ModuleMap& x, Rng rng) {
    auto blocks = flatten(x);
    const auto k = static_cast<std::size_t>(rng.next() % blocks.size());
    CVector v(blocks[k].cols());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.complex_normal();
    v.normalize();
    blocks[k] = blocks[k] - (blocks[k] * v) * v.adjoint();
    return unflatten(x.signature(), blocks);
}

[[noreturn]] void exhausted(const GeneratorSpec& spec) {
    throw DomainError("generator: no admissible " + std::string(to_string(spec.kind)) + " sample after " +
                      std::to_string(max_attempts) + " attempts");
}

} // namespace

FrameSystem generate(const GeneratorSpec& spec) {
    validate(spec);
    const auto& sig = spec.signature;
    const int d = spec.rank;
    const int m = spec.count;
    const Rng root = Rng(spec.seed).split(static_cast<std::uint64_t>(spec.kind));

    if (spec.kind == GeneratorKind::delta_example) return delta_example(m);

    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        const Rng stream = root.split(static_cast<std::uint64_t>(attempt));
        switch (spec.kind) {
        case GeneratorKind::modular_riesz: {
            const auto x = random_matrix(sig, m, d, stream);
            auto f = to_system(x);
            if (map_invertible(x, generator_tol) && well_conditioned_frame(f)) return f;
            break;
        }
        case GeneratorKind::overcomplete_frame: {
            auto f = to_system(random_matrix(sig, m, d, stream));
            if (well_conditioned_frame(f)) return f;
            break;
        }
        case GeneratorKind::duplicated_vector: {
            auto base = to_system(random_matrix(sig, m - 1, d, stream));
            if (!well_conditioned_frame(base)) break;
            Rng pick = stream.split(0xd0b1ULL);
            const auto source = static_cast<std::size_t>(pick.next() % static_cast<std::uint64_t>(m - 1));
            const auto position = static_cast<std::ptrdiff_t>(pick.next() % static_cast<std::uint64_t>(m));
            std::vector<ModuleVector> rows(base.vectors().begin(), base.vectors().end());
            const ModuleVector copy = rows[source];
            rows.insert(rows.begin() + position, copy);
            return FrameSystem(sig, d, std::move(rows));
        }
        case GeneratorKind::near_singular: {
            Rng pick = stream.split(0x5e4aULL);
            const double exponent = 2.0 + 0.05 + 0.9 * pick.uniform();
            const auto x = with_singular_value_ratio(random_matrix(sig, m, d, stream), std::pow(10.0, exponent));
            auto f = to_system(x);
            const auto v = is_frame(f, generator_tol);
            const double cond = v.bounds.condition();
            if (v.is_frame && cond >= near_singular_min_condition && cond <= max_condition) return f;
            break;
        }
        case GeneratorKind::non_frame: {
            auto f = to_system(rank_deficient(random_matrix(sig, m, d, stream), stream.split(0x0f4aULL)));
            if (!is_frame(f, generator_tol).is_frame) return f;
            break;
        }
        case GeneratorKind::delta_example:
            break;
        }
    }
    exhausted(spec);
}

} // namespace cstar

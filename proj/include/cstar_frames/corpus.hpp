#pragma once

// Seeded generators for frame systems covering every classification branch.
// Output depends only on the GeneratorSpec: the random stream is SplitMix64
// with an explicit split per (attempt, row, column), and normals come from
// Box-Muller over 53-bit uniforms, so no platform-provided distribution is
// involved.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "cstar_frames/frame.hpp"

namespace cstar {

enum class GeneratorKind {
    modular_riesz,
    overcomplete_frame,
    delta_example,
    duplicated_vector,
    near_singular,
    non_frame,
};

inline constexpr GeneratorKind all_generator_kinds[] = {
    GeneratorKind::modular_riesz,     GeneratorKind::overcomplete_frame, GeneratorKind::delta_example,
    GeneratorKind::duplicated_vector, GeneratorKind::near_singular,      GeneratorKind::non_frame,
};

std::string_view to_string(GeneratorKind kind);
std::optional<GeneratorKind> parse_generator_kind(std::string_view name);

struct GeneratorSpec {
    std::uint64_t seed = 0;
    AlgebraSignature signature{std::vector<int>{1}};
    int rank = 1;
    int count = 1;
    GeneratorKind kind = GeneratorKind::modular_riesz;
};

inline constexpr int max_block_size = 8;
inline constexpr int max_rank = 8;
inline constexpr int max_count = 16;
inline constexpr double max_condition = 1e6;
inline constexpr double near_singular_min_condition = 1e4;
inline constexpr int max_attempts = 100;

/// SplitMix64 stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// An independent stream keyed by `tag`; does not advance this one.
    Rng split(std::uint64_t tag) const;

    std::uint64_t next();
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    double normal();
    /// Independent standard-normal real and imaginary parts.
    Complex complex_normal();

private:
    std::uint64_t state_;
};

/// Entries with independent standard-normal real and imaginary parts.
AlgebraElement random_element(const AlgebraSignature& signature, Rng rng);
ModuleVector random_vector(const AlgebraSignature& signature, int rank, const Rng& rng);

/// Throws StructuralError for specs no system can satisfy (e.g.
/// modular_riesz with count != rank) and DomainError if rejection sampling
/// runs out of attempts.
FrameSystem generate(const GeneratorSpec& spec);

/// Throws StructuralError if the spec is outside the caps or inconsistent
/// with its kind.
void validate(const GeneratorSpec& spec);

/// {e_1, ..., e_d} in A^d.
FrameSystem canonical_basis(const AlgebraSignature& signature, int rank);

/// delta_1, ..., delta_n in A^1 over C^n (n one-dimensional blocks).
FrameSystem delta_example(int n);

} // namespace cstar

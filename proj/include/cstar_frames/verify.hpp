#pragma once

// Randomized verification of the structural results about frames in A^d,
// run over generated corpora. Used by `cstar_frames verify` and by the
// acceptance suite.

#include <cstdint>
#include <string>
#include <vector>

#include "cstar_frames/corpus.hpp"
#include "cstar_frames/document.hpp"

namespace cstar {

struct VerifyOptions {
    int trials = 20;
    std::uint64_t seed = 0;
    Tolerance tol;
};

struct SuiteTally {
    std::string name;
    long passed = 0;
    long failed = 0;
};

struct VerifyFailure {
    std::string suite;
    GeneratorSpec spec;
    std::string detail;
};

struct VerifySummary {
    std::vector<SuiteTally> suites;
    std::vector<VerifyFailure> failures;
    int systems = 0;

    bool ok() const { return failures.empty(); }
    const SuiteTally& suite(const std::string& name) const;
};

/// Suite names, in report order.
inline constexpr const char* verify_suites[] = {
    "generator_contract",  "frame_inequality", "modular_riesz_equivalence", "diagonal_condition",
    "removal_lemma",       "riesz_exactness",  "reconstruction",            "riesz_bounds",
    "report_consistency",
};

/// Deterministic spec for trial `trial` of `kind`. Signatures cycle through
/// (1), (2), (1,1), (1,2), (2,2); ranks through 1..4.
GeneratorSpec trial_spec(GeneratorKind kind, int trial, std::uint64_t seed);

/// Runs one system through every suite, appending to `summary`.
void verify_system(const GeneratorSpec& spec, const Tolerance& tol, VerifySummary& summary);

/// `options.trials` systems per generator kind.
VerifySummary run_verification(const VerifyOptions& options);

ordered_json summary_to_json(const VerifySummary& summary, const VerifyOptions& options);
std::string summary_to_text(const VerifySummary& summary, const VerifyOptions& options);

} // namespace cstar

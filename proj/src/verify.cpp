#include "cstar_frames/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace cstar {

namespace {

const std::vector<std::vector<int>> trial_signatures = {{1}, {2}, {1, 1}, {1, 2}, {2, 2}};

std::uint64_t trial_seed(std::uint64_t seed, GeneratorKind kind, int trial) {
    return Rng(seed).split(static_cast<std::uint64_t>(kind)).split(static_cast<std::uint64_t>(trial)).next();
}

class Recorder {
public:
    Recorder(VerifySummary& summary, const GeneratorSpec& spec) : summary_(summary), spec_(spec) {}

    void check(const char* suite, bool ok, const std::string& detail) {
        auto& tally = tally_for(suite);
        if (ok) {
            ++tally.passed;
        } else {
            ++tally.failed;
            summary_.failures.push_back({suite, spec_, detail});
        }
    }

private:
    SuiteTally& tally_for(const char* suite) {
        for (auto& t : summary_.suites)
            if (t.name == suite) return t;
        summary_.suites.push_back({suite, 0, 0});
        return summary_.suites.back();
    }

    VerifySummary& summary_;
    const GeneratorSpec& spec_;
};

std::string describe(bool a, bool b) { return std::string(a ? "true" : "false") + "/" + (b ? "true" : "false"); }

bool generator_contract(const GeneratorSpec& spec, const FrameSystem& f, const Tolerance& tol, std::string& detail) {
    const auto fv = is_frame(f, tol);
    switch (spec.kind) {
    case GeneratorKind::modular_riesz:
        detail = "expected a modular Riesz basis";
        return is_modular_riesz(f, tol);
    case GeneratorKind::overcomplete_frame:
        detail = "expected a frame with more vectors than the rank";
        return fv.is_frame && f.size() > f.rank();
    case GeneratorKind::delta_example:
        detail = "expected a Parseval frame";
        return fv.is_parseval;
    case GeneratorKind::duplicated_vector:
        detail = "expected a frame with a removable vector";
        return fv.is_frame && !is_exact_by_removal(f, tol).exact;
    case GeneratorKind::near_singular:
        detail = "expected Gram condition in [1e4, 1e6], got " + std::to_string(fv.bounds.condition());
        return fv.is_frame && fv.bounds.condition() >= near_singular_min_condition &&
               fv.bounds.condition() <= max_condition * (1.0 + 1e-6);
    case GeneratorKind::non_frame:
        detail = "expected a non-frame";
        return !fv.is_frame;
    }
    return false;
}

std::vector<AlgebraElement> random_coefficients(const FrameSystem& f, Rng rng, int pattern) {
    std::vector<AlgebraElement> coeffs;
    const auto picked = static_cast<int>(rng.next() % static_cast<std::uint64_t>(f.size()));
    const double scale = std::exp(2.0 * rng.normal());
    for (int j = 0; j < f.size(); ++j) {
        auto a = scale * random_element(f.signature(), rng.split(static_cast<std::uint64_t>(j)));
        const bool keep = pattern == 0   ? j == picked
                          : pattern == 1 ? (j % 2 == 0 || j == picked)
                                         : true;
        coeffs.push_back(keep ? a : AlgebraElement(f.signature()));
    }
    return coeffs;
}

void check_frame(const GeneratorSpec& spec, const FrameSystem& f, const FrameVerdict& fv, const Tolerance& tol,
                 Recorder& rec) {
    const Rng rng = Rng(spec.seed).split(0x7e57ULL);
    const auto c = fv.bounds.lower;
    const auto d = fv.bounds.upper;

    for (int t = 0; t < 3; ++t) {
        const auto x = random_vector(f.signature(), f.rank(), rng.split(static_cast<std::uint64_t>(t)));
        const auto sum = frame_sum(f, x);
        const auto xx = inner_product(x, x);
        const bool positive_form = is_positive(d * xx - sum, tol) && is_positive(sum - c * xx, tol);
        const double x2 = std::pow(vector_norm(x), 2);
        const double slack = tol.scaled(d * x2);
        const bool norm_form = c * x2 - slack <= norm(sum) && norm(sum) <= d * x2 + slack;
        rec.check("frame_inequality", positive_form && norm_form, "frame inequality violated for random vector " + std::to_string(t));
    }

    const bool modular = is_modular_riesz(f, tol);
    const bool omega = is_omega_independent(f, tol).independent;
    const auto dual = canonical_dual(f, tol);
    const bool biorth_dual = is_biorthogonal(f, dual, tol);
    const bool biorth_seq = has_biorthogonal_sequence(f, tol).exists;
    rec.check("modular_riesz_equivalence", modular == omega && modular == biorth_dual && modular == biorth_seq,
              "modular/omega/dual-biorthogonal/biorthogonal-sequence = " + describe(modular, omega) + "/" +
                  describe(biorth_dual, biorth_seq));

    double diagonal_defect = 0.0;
    const auto one = AlgebraElement::identity(f.signature());
    for (int j = 0; j < f.size(); ++j) diagonal_defect = std::max(diagonal_defect, norm(inner_product(f[j], dual[j]) - one));
    if (diagonal_defect <= tol.rel_tol)
        rec.check("diagonal_condition", modular, "diagonal condition holds but not a modular Riesz basis");

    const auto lemma = is_exact_by_lemma(f, tol);
    const auto removal = is_exact_by_removal(f, tol);
    for (const auto& entry : lemma.per_index) {
        const bool by_removal = removal.removable[static_cast<std::size_t>(entry.index)];
        rec.check("removal_lemma", entry.removable == by_removal,
                  "index " + std::to_string(entry.index) + ": complement invertible/removal leaves frame = " +
                      describe(entry.removable, by_removal));
    }

    if (is_riesz_frank_larson(f, tol).riesz)
        rec.check("riesz_exactness", removal.exact, "Frank-Larson Riesz basis that is not exact");

    const double cond = fv.bounds.condition();
    for (int t = 0; t < 10; ++t) {
        const auto x = random_vector(f.signature(), f.rank(), rng.split(0x100ULL + static_cast<std::uint64_t>(t)));
        const double residual = reconstruction_residual(f, x, tol);
        const double bound = tol.rel_tol * cond * vector_norm(x);
        rec.check("reconstruction", residual <= bound,
                  "residual " + std::to_string(residual) + " above " + std::to_string(bound));
    }

    if (modular)
        for (int t = 0; t < 20; ++t) {
            const auto coeffs = random_coefficients(f, rng.split(0x200ULL + static_cast<std::uint64_t>(t)), t % 4);
            rec.check("riesz_bounds", riesz_bounds_check(f, coeffs, tol), "coefficient tuple " + std::to_string(t));
        }
}

} // namespace

const SuiteTally& VerifySummary::suite(const std::string& name) const {
    for (const auto& t : suites)
        if (t.name == name) return t;
    throw std::out_of_range("no verification suite named " + name);
}

GeneratorSpec trial_spec(GeneratorKind kind, int trial, std::uint64_t seed) {
    GeneratorSpec spec;
    spec.kind = kind;
    spec.seed = trial_seed(seed, kind, trial);
    Rng pick(spec.seed);
    const auto uniform_int = [&](int lo, int hi) { return lo + static_cast<int>(pick.next() % static_cast<std::uint64_t>(hi - lo + 1)); };

    if (kind == GeneratorKind::delta_example) {
        const int n = 2 + trial % 7;
        spec.signature = AlgebraSignature::commutative(n);
        spec.rank = 1;
        spec.count = n;
        return spec;
    }

    spec.signature = AlgebraSignature(trial_signatures[static_cast<std::size_t>(trial) % trial_signatures.size()]);
    spec.rank = 1 + (trial / static_cast<int>(trial_signatures.size())) % 4;
    const int d = spec.rank;
    switch (kind) {
    case GeneratorKind::modular_riesz: spec.count = d; break;
    case GeneratorKind::overcomplete_frame:
    case GeneratorKind::duplicated_vector: spec.count = uniform_int(d + 1, d + 3); break;
    case GeneratorKind::near_singular:
        if (spec.signature.complex_dimension() == 1 && d == 1) spec.rank = 2;
        spec.count = uniform_int(spec.rank, spec.rank + 3);
        break;
    case GeneratorKind::non_frame: spec.count = uniform_int(d, d + 3); break;
    case GeneratorKind::delta_example: break;
    }
    return spec;
}

void verify_system(const GeneratorSpec& spec, const Tolerance& tol, VerifySummary& summary) {
    Recorder rec(summary, spec);
    ++summary.systems;
    try {
        const auto f = generate(spec);
        std::string detail;
        rec.check("generator_contract", generator_contract(spec, f, tol, detail), detail);

        try {
            classify(f, tol);
            rec.check("report_consistency", true, "");
        } catch (const ConsistencyError& e) {
            rec.check("report_consistency", false, e.what());
        }

        const auto fv = is_frame(f, tol);
        if (fv.is_frame) check_frame(spec, f, fv, tol, rec);
    } catch (const std::exception& e) {
        rec.check("generator_contract", false, std::string("exception: ") + e.what());
    }
}

VerifySummary run_verification(const VerifyOptions& options) {
    if (options.trials < 1) throw StructuralError("verify: trials must be >= 1");
    options.tol.validate();
    VerifySummary summary;
    for (const char* name : verify_suites) summary.suites.push_back({name, 0, 0});
    for (auto kind : all_generator_kinds)
        for (int t = 0; t < options.trials; ++t) verify_system(trial_spec(kind, t, options.seed), options.tol, summary);
    return summary;
}

ordered_json summary_to_json(const VerifySummary& summary, const VerifyOptions& options) {
    ordered_json out;
    out["trials"] = options.trials;
    out["seed"] = options.seed;
    out["rel_tol"] = options.tol.rel_tol;
    out["abs_tol"] = options.tol.abs_tol;
    out["systems"] = summary.systems;
    auto suites = ordered_json::array();
    for (const auto& t : summary.suites) suites.push_back({{"name", t.name}, {"passed", t.passed}, {"failed", t.failed}});
    out["suites"] = std::move(suites);
    auto failures = ordered_json::array();
    for (const auto& f : summary.failures)
        failures.push_back({{"suite", f.suite}, {"spec", generator_spec_to_json(f.spec)}, {"detail", f.detail}});
    out["failures"] = std::move(failures);
    out["ok"] = summary.ok();
    return out;
}

std::string summary_to_text(const VerifySummary& summary, const VerifyOptions& options) {
    std::ostringstream os;
    os << "verified " << summary.systems << " systems (" << options.trials << " per kind, seed " << options.seed
       << ", rel_tol " << options.tol.rel_tol << ")\n";
    for (const auto& t : summary.suites)
        os << "  " << std::left << std::setw(28) << t.name << (t.failed == 0 ? "PASS " : "FAIL ") << t.passed << " passed, "
           << t.failed << " failed\n";
    constexpr std::size_t shown = 20;
    for (std::size_t i = 0; i < std::min(shown, summary.failures.size()); ++i) {
        const auto& f = summary.failures[i];
        os << "failure [" << f.suite << "] " << f.detail << "\n  reproduce: " << generator_spec_to_json(f.spec).dump()
           << '\n';
    }
    if (summary.failures.size() > shown) os << "... " << summary.failures.size() - shown << " more failures\n";
    return os.str();
}

} // namespace cstar

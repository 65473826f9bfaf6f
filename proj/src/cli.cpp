#include "cstar_frames/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "cstar_frames/classify.hpp"
#include "cstar_frames/corpus.hpp"
#include "cstar_frames/document.hpp"
#include "cstar_frames/verify.hpp"

namespace cstar {

namespace {

struct GlobalFlags {
    std::optional<double> tol;
    std::string format = "text";
    bool witnesses = false;
};

std::string format_bound(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    std::string s(buf);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

Tolerance effective_tolerance(const GlobalFlags& flags, const std::optional<Tolerance>& from_document) {
    Tolerance tol = from_document.value_or(Tolerance{});
    if (flags.tol) tol.rel_tol = *flags.tol;
    tol.validate();
    return tol;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("CSTAR_FRAMES_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ParseError(std::string("CSTAR_FRAMES_SEED: not an unsigned integer: ") + env);
        }
    }
    return 0;
}

std::vector<int> parse_blocks(const std::string& text) {
    std::vector<int> blocks;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = std::min(text.find(',', start), text.size());
        const auto token = text.substr(start, end - start);
        try {
            std::size_t used = 0;
            blocks.push_back(std::stoi(token, &used));
            if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw ParseError("--blocks: expected comma-separated integers, got \"" + text + "\"");
        }
        start = end + 1;
    }
    return blocks;
}

int cmd_classify(const std::string& path, const GlobalFlags& flags, std::ostream& out, std::ostream& err) {
    const auto doc = read_frame_document(path);
    const auto tol = effective_tolerance(flags, doc.tolerance);
    try {
        const auto report = classify(doc.frame, tol);
        if (flags.format == "json")
            out << report_to_json(report, flags.witnesses).dump(2) << '\n';
        else
            out << report_to_text(report, flags.witnesses);
        return exit_ok;
    } catch (const ConsistencyError& e) {
        err << "internal consistency check failed: " << e.check() << "\n  " << e.first() << "\n  " << e.second() << '\n';
        return exit_consistency_failure;
    }
}

int cmd_bounds(const std::string& path, bool dual, const GlobalFlags& flags, std::ostream& out, std::ostream& err) {
    const auto doc = read_frame_document(path);
    const auto tol = effective_tolerance(flags, doc.tolerance);
    const auto verdict = is_frame(doc.frame, tol);
    if (!verdict.is_frame) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", verdict.bounds.lower);
        err << "not a frame (lower bound " << buf << ")\n";
        return exit_precondition_failure;
    }
    const auto& b = verdict.bounds;
    if (flags.format == "json") {
        ordered_json j;
        j["lower"] = b.lower;
        j["upper"] = b.upper;
        if (dual) j["dual"] = emit_frame_document(canonical_dual(doc.frame, tol));
        out << j.dump(2) << '\n';
    } else {
        out << format_bound(b.lower) << ' ' << format_bound(b.upper) << '\n';
        if (dual) out << emit_frame_document(canonical_dual(doc.frame, tol)).dump(2) << '\n';
    }
    return exit_ok;
}

int cmd_verify(int trials, std::uint64_t seed, const GlobalFlags& flags, std::ostream& out) {
    VerifyOptions options;
    options.trials = trials;
    options.seed = seed;
    if (flags.tol) options.tol.rel_tol = *flags.tol;
    const auto summary = run_verification(options);
    if (flags.format == "json")
        out << summary_to_json(summary, options).dump(2) << '\n';
    else
        out << summary_to_text(summary, options);
    return summary.ok() ? exit_ok : exit_consistency_failure;
}

int cmd_example(const std::string& kind, int n, int d, int count, const std::string& blocks, std::uint64_t seed,
                std::ostream& out, std::ostream& err) {
    if (kind == "delta") {
        out << emit_frame_document(delta_example(n)).dump(2) << '\n';
        return exit_ok;
    }
    const AlgebraSignature sig(parse_blocks(blocks));
    if (kind == "basis") {
        out << emit_frame_document(canonical_basis(sig, d)).dump(2) << '\n';
        return exit_ok;
    }

    std::optional<GeneratorKind> generator;
    if (kind == "mrb") generator = GeneratorKind::modular_riesz;
    else if (kind == "overcomplete") generator = GeneratorKind::overcomplete_frame;
    else if (kind == "duplicated") generator = GeneratorKind::duplicated_vector;
    else generator = parse_generator_kind(kind);
    if (!generator || *generator == GeneratorKind::delta_example) {
        err << "unknown example kind \"" << kind << "\" (expected delta, basis, mrb, overcomplete, duplicated, "
            << "near_singular, non_frame)\n";
        return exit_input_error;
    }

    GeneratorSpec spec;
    spec.seed = seed;
    spec.signature = sig;
    spec.rank = d;
    spec.kind = *generator;
    if (count > 0) spec.count = count;
    else if (spec.kind == GeneratorKind::modular_riesz || spec.kind == GeneratorKind::near_singular ||
             spec.kind == GeneratorKind::non_frame)
        spec.count = d;
    else spec.count = d + 1;
    out << emit_frame_document(generate(spec)).dump(2) << '\n';
    return exit_ok;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Frames, duals and Riesz bases in free Hilbert modules over finite-dimensional C*-algebras",
                 "cstar_frames"};
    app.require_subcommand(1);

    GlobalFlags flags;
    double tol_value = 0.0;
    auto* tol_opt = app.add_option("--tol", tol_value, "Relative tolerance for every spectral decision (default 1e-9)");
    app.add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--witnesses", flags.witnesses, "Include certificates for negative verdicts");

    std::string path;
    auto* classify_cmd = app.add_subcommand("classify", "Classify a frame document");
    classify_cmd->add_option("path", path, "Frame document (JSON)")->required();
    classify_cmd->fallthrough();

    bool dual = false;
    auto* bounds_cmd = app.add_subcommand("bounds", "Optimal frame bounds, optionally the canonical dual");
    bounds_cmd->add_option("path", path, "Frame document (JSON)")->required();
    bounds_cmd->add_flag("--dual", dual, "Also emit the canonical dual frame");
    bounds_cmd->fallthrough();

    int trials = 20;
    std::uint64_t seed = 0;
    auto* verify_cmd = app.add_subcommand("verify", "Randomized verification over generated corpora");
    verify_cmd->add_option("--trials", trials, "Systems per generator kind")->check(CLI::PositiveNumber);
    auto* seed_opt = verify_cmd->add_option("--seed", seed, "Corpus seed (default $CSTAR_FRAMES_SEED or 0)");
    verify_cmd->fallthrough();

    std::string kind;
    int n = 4;
    int d = 1;
    int count = 0;
    std::string blocks = "1";
    std::uint64_t example_seed = 0;
    auto* example_cmd = app.add_subcommand("example", "Emit an example frame document");
    example_cmd->add_option("kind", kind, "delta | basis | mrb | overcomplete | duplicated | near_singular | non_frame")
        ->required();
    example_cmd->add_option("--n", n, "Length of the delta example")->check(CLI::Range(1, 64));
    example_cmd->add_option("--d", d, "Module rank")->check(CLI::Range(1, max_rank));
    example_cmd->add_option("--m", count, "Number of vectors (generated kinds)")->check(CLI::Range(1, max_count));
    example_cmd->add_option("--blocks", blocks, "Comma-separated block sizes, e.g. 1,2");
    auto* example_seed_opt = example_cmd->add_option("--seed", example_seed, "Generator seed");
    example_cmd->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return exit_input_error;
    }
    if (*tol_opt) flags.tol = tol_value;

    try {
        if (*classify_cmd) return cmd_classify(path, flags, out, err);
        if (*bounds_cmd) return cmd_bounds(path, dual, flags, out, err);
        if (*verify_cmd) return cmd_verify(trials, *seed_opt ? seed : default_seed(), flags, out);
        if (*example_cmd)
            return cmd_example(kind, n, d, count, blocks, *example_seed_opt ? example_seed : default_seed(), out, err);
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << '\n';
        return exit_input_error;
    } catch (const StructuralError& e) {
        err << "input error: " << e.what() << '\n';
        return exit_input_error;
    } catch (const DomainError& e) {
        err << "precondition failed: " << e.what() << '\n';
        return exit_precondition_failure;
    }
    return exit_input_error;
}

} // namespace cstar

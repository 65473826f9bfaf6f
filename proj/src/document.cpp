#include "cstar_frames/document.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace cstar {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) { throw ParseError(path + ": " + message); }

const json& member(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, "missing key \"" + key + "\"");
    return *it;
}

int positive_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    const auto value = v.get<long long>();
    if (value < 1 || value > 1'000'000) fail(path, "expected a positive integer");
    return static_cast<int>(value);
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    const double value = v.get<double>();
    if (!std::isfinite(value)) fail(path, "expected a finite number");
    return value;
}

const json& array(const json& v, const std::string& path, std::size_t expected_size) {
    if (!v.is_array()) fail(path, "expected an array");
    if (v.size() != expected_size)
        fail(path, "expected " + std::to_string(expected_size) + " entries, got " + std::to_string(v.size()));
    return v;
}

AlgebraElement parse_element(const AlgebraSignature& sig, const json& v, const std::string& path) {
    array(v, path, sig.block_count());
    std::vector<CMatrix> blocks;
    for (std::size_t k = 0; k < sig.block_count(); ++k) {
        const int n = sig.block_size(k);
        const auto mpath = path + "[" + std::to_string(k) + "]";
        const auto& mat = v[k];
        if (!mat.is_array() || mat.size() != static_cast<std::size_t>(n))
            fail(mpath, "expected " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
        CMatrix block(n, n);
        for (int r = 0; r < n; ++r) {
            const auto rpath = mpath + "[" + std::to_string(r) + "]";
            array(mat[static_cast<std::size_t>(r)], rpath, static_cast<std::size_t>(n));
            for (int c = 0; c < n; ++c) {
                const auto cpath = rpath + "[" + std::to_string(c) + "]";
                const auto& pair = array(mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], cpath, 2);
                block(r, c) = Complex(number(pair[0], cpath + "[0]"), number(pair[1], cpath + "[1]"));
            }
        }
        blocks.push_back(std::move(block));
    }
    return AlgebraElement(sig, std::move(blocks));
}

ordered_json matrix_to_json(const CMatrix& m) {
    auto rows = ordered_json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        auto row = ordered_json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(ordered_json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json coefficients_to_json(const std::vector<AlgebraElement>& coeffs) {
    auto out = ordered_json::array();
    for (const auto& a : coeffs) out.push_back(element_to_json(a));
    return out;
}

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

} // namespace

FrameDocument parse_frame_document(const json& doc) {
    if (!doc.is_object()) fail("$", "expected an object");
    const auto& blocks_json = member(member(doc, "algebra", "$"), "blocks", "$.algebra");
    if (!blocks_json.is_array() || blocks_json.empty()) fail("$.algebra.blocks", "expected a nonempty array");
    std::vector<int> blocks;
    for (std::size_t k = 0; k < blocks_json.size(); ++k)
        blocks.push_back(positive_int(blocks_json[k], "$.algebra.blocks[" + std::to_string(k) + "]"));
    const AlgebraSignature sig(std::move(blocks));

    const int d = positive_int(member(doc, "module_rank", "$"), "$.module_rank");
    const auto& rows = member(doc, "frame", "$");
    if (!rows.is_array() || rows.empty()) fail("$.frame", "expected a nonempty array");
    std::vector<ModuleVector> vectors;
    for (std::size_t j = 0; j < rows.size(); ++j) {
        const auto rpath = "$.frame[" + std::to_string(j) + "]";
        array(rows[j], rpath, static_cast<std::size_t>(d));
        std::vector<AlgebraElement> entries;
        for (int i = 0; i < d; ++i)
            entries.push_back(parse_element(sig, rows[j][static_cast<std::size_t>(i)], rpath + "[" + std::to_string(i) + "]"));
        vectors.emplace_back(sig, std::move(entries));
    }

    std::optional<Tolerance> tolerance;
    if (auto it = doc.find("tolerance"); it != doc.end()) {
        if (!it->is_object()) fail("$.tolerance", "expected an object");
        Tolerance t;
        if (auto r = it->find("rel_tol"); r != it->end()) t.rel_tol = number(*r, "$.tolerance.rel_tol");
        if (auto a = it->find("abs_tol"); a != it->end()) t.abs_tol = number(*a, "$.tolerance.abs_tol");
        try {
            t.validate();
        } catch (const StructuralError& e) {
            fail("$.tolerance", e.what());
        }
        tolerance = t;
    }
    return {FrameSystem(sig, d, std::move(vectors)), tolerance};
}

FrameDocument parse_frame_document(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("$: invalid JSON: ") + e.what());
    }
    return parse_frame_document(doc);
}

FrameDocument read_frame_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_frame_document(buffer.str());
}

ordered_json element_to_json(const AlgebraElement& a) {
    auto out = ordered_json::array();
    for (const auto& b : a.blocks()) out.push_back(matrix_to_json(b));
    return out;
}

ordered_json emit_frame_document(const FrameSystem& frame, const std::optional<Tolerance>& tolerance) {
    ordered_json doc;
    doc["algebra"]["blocks"] = std::vector<int>(frame.signature().block_sizes().begin(), frame.signature().block_sizes().end());
    doc["module_rank"] = frame.rank();
    auto rows = ordered_json::array();
    for (const auto& x : frame.vectors()) {
        auto row = ordered_json::array();
        for (const auto& e : x.entries()) row.push_back(element_to_json(e));
        rows.push_back(std::move(row));
    }
    doc["frame"] = std::move(rows);
    if (tolerance) doc["tolerance"] = {{"rel_tol", tolerance->rel_tol}, {"abs_tol", tolerance->abs_tol}};
    return doc;
}

ordered_json report_to_json(const ClassificationReport& r, bool witnesses) {
    ordered_json out;
    out["is_bessel"] = r.is_bessel;
    out["is_frame"] = r.is_frame;
    out["is_tight"] = r.is_tight;
    out["is_parseval"] = r.is_parseval;
    out["is_omega_independent"] = r.is_omega_independent;
    out["is_biorthogonal_to_canonical_dual"] = r.is_biorthogonal_to_canonical_dual;
    out["has_biorthogonal_sequence"] = r.has_biorthogonal_sequence;
    out["is_exact_by_lemma"] = r.is_exact_by_lemma;
    out["is_exact_by_removal"] = r.is_exact_by_removal;
    out["is_riesz_frank_larson"] = r.is_riesz_frank_larson;
    out["is_modular_riesz"] = r.is_modular_riesz;
    out["bounds"] = {{"lower", r.bounds.lower}, {"upper", r.bounds.upper}};
    if (witnesses) {
        const auto& w = r.witnesses;
        ordered_json wj = ordered_json::object();
        wj["kernel_element"] = w.kernel_element ? coefficients_to_json(*w.kernel_element) : ordered_json(nullptr);
        wj["removable_index"] = w.removable_index ? ordered_json(*w.removable_index) : ordered_json(nullptr);
        auto complements = ordered_json::array();
        for (const auto& c : w.non_invertible_complements)
            complements.push_back({{"index", c.index}, {"complement", element_to_json(c.complement)}});
        wj["non_invertible_complements"] = std::move(complements);
        if (w.frank_larson_violation)
            wj["frank_larson_violation"] = {{"kernel_element", coefficients_to_json(w.frank_larson_violation->kernel_element)},
                                            {"index", w.frank_larson_violation->index}};
        else
            wj["frank_larson_violation"] = nullptr;
        wj["biorthogonal_sequence"] =
            w.biorthogonal_sequence ? emit_frame_document(*w.biorthogonal_sequence)["frame"] : ordered_json(nullptr);
        out["witnesses"] = std::move(wj);
    }
    return out;
}

std::string report_to_text(const ClassificationReport& r, bool witnesses) {
    std::ostringstream os;
    const auto line = [&](const char* name, bool value) { os << std::left << std::setw(36) << name << (value ? "yes" : "no") << '\n'; };
    line("bessel", r.is_bessel);
    line("frame", r.is_frame);
    line("tight", r.is_tight);
    line("parseval", r.is_parseval);
    line("omega-independent", r.is_omega_independent);
    line("biorthogonal to canonical dual", r.is_biorthogonal_to_canonical_dual);
    line("has biorthogonal sequence", r.has_biorthogonal_sequence);
    line("exact (complement invertibility)", r.is_exact_by_lemma);
    line("exact (removal)", r.is_exact_by_removal);
    line("riesz basis (frank-larson)", r.is_riesz_frank_larson);
    line("modular riesz basis", r.is_modular_riesz);
    os << std::left << std::setw(36) << "bounds" << format_double(r.bounds.lower) << ' ' << format_double(r.bounds.upper)
       << '\n';
    if (witnesses) {
        const auto& w = r.witnesses;
        if (w.kernel_element) os << "kernel element: " << coefficients_to_json(*w.kernel_element).dump() << '\n';
        if (w.removable_index) os << "removable index: " << *w.removable_index << '\n';
        for (const auto& c : w.non_invertible_complements)
            os << "non-invertible complement at " << c.index << ": " << element_to_json(c.complement).dump() << '\n';
        if (w.frank_larson_violation)
            os << "frank-larson violation at " << w.frank_larson_violation->index << ": "
               << coefficients_to_json(w.frank_larson_violation->kernel_element).dump() << '\n';
        if (w.biorthogonal_sequence)
            os << "biorthogonal sequence: " << emit_frame_document(*w.biorthogonal_sequence)["frame"].dump() << '\n';
    }
    return os.str();
}

ordered_json generator_spec_to_json(const GeneratorSpec& spec) {
    ordered_json out;
    out["seed"] = spec.seed;
    out["kind"] = std::string(to_string(spec.kind));
    out["blocks"] = std::vector<int>(spec.signature.block_sizes().begin(), spec.signature.block_sizes().end());
    out["rank"] = spec.rank;
    out["count"] = spec.count;
    return out;
}

} // namespace cstar

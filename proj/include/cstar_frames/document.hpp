#pragma once

// JSON frame documents:
//
//   {
//     "algebra": {"blocks": [n_1, ..., n_K]},
//     "module_rank": d,
//     "frame": [ row_1, ..., row_m ],        row = [element_1, ..., element_d]
//     "tolerance": {"rel_tol": ..., "abs_tol": ...}   (optional)
//   }
//
// An element is a list of K matrices; a matrix is a row-major list of rows
// of [re, im] pairs. Doubles are written in shortest round-trip form, so
// parse(emit(F)) == F bit for bit.

#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "cstar_frames/classify.hpp"
#include "cstar_frames/corpus.hpp"

namespace cstar {

using ordered_json = nlohmann::ordered_json;

/// Malformed document; what() carries a JSON path such as
/// "$.frame[2][0][1]: expected 2x2 matrix".
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FrameDocument {
    FrameSystem frame;
    std::optional<Tolerance> tolerance;
};

FrameDocument parse_frame_document(const nlohmann::json& doc);
FrameDocument parse_frame_document(const std::string& text);
FrameDocument read_frame_document(const std::string& path);

ordered_json emit_frame_document(const FrameSystem& frame, const std::optional<Tolerance>& tolerance = std::nullopt);

ordered_json element_to_json(const AlgebraElement& a);
ordered_json report_to_json(const ClassificationReport& report, bool witnesses);
std::string report_to_text(const ClassificationReport& report, bool witnesses);

ordered_json generator_spec_to_json(const GeneratorSpec& spec);

} // namespace cstar

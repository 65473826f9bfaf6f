#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "cstar_frames/document.hpp"
#include "cstar_frames/verify.hpp"

using namespace cstar;

namespace {

std::string parse_error(const std::string& text) {
    try {
        parse_frame_document(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("round trip is bit-exact") {
    for (auto kind : all_generator_kinds)
        for (int t = 0; t < 15; ++t) {
            const auto f = generate(trial_spec(kind, t, 11));
            const auto text = emit_frame_document(f).dump();
            const auto back = parse_frame_document(text);
            CHECK(back.frame == f);
            CHECK_FALSE(back.tolerance.has_value());
            CHECK(emit_frame_document(back.frame).dump() == text);
        }

    SUBCASE("awkward doubles") {
        const AlgebraSignature sig({1});
        const std::vector<Complex> values = {{0.1, -1.0 / 3.0}, {5e-324, 1.7976931348623157e308}, {-0.0, 1e-17}};
        std::vector<ModuleVector> rows;
        for (auto z : values) rows.emplace_back(sig, std::vector<AlgebraElement>{AlgebraElement::scalar(sig, z)});
        const FrameSystem f(sig, 1, rows);
        CHECK(parse_frame_document(emit_frame_document(f).dump()).frame == f);
    }

    SUBCASE("tolerance override") {
        const auto doc = parse_frame_document(emit_frame_document(delta_example(2), Tolerance{1e-6, 1e-10}).dump());
        REQUIRE(doc.tolerance);
        CHECK(doc.tolerance->rel_tol == 1e-6);
        CHECK(doc.tolerance->abs_tol == 1e-10);
    }
}

TEST_CASE("document layout") {
    const auto j = emit_frame_document(delta_example(2));
    CHECK(j.dump() == R"({"algebra":{"blocks":[1,1]},"module_rank":1,"frame":[[[[[[1.0,0.0]]],[[[0.0,0.0]]]]],[[[[[0.0,0.0]]],[[[1.0,0.0]]]]]]})");
}

TEST_CASE("parse errors carry a JSON path") {
    CHECK(parse_error("{").rfind("$: invalid JSON", 0) == 0);
    CHECK(parse_error("[]") == "$: expected an object");
    CHECK(parse_error(R"({"module_rank":1,"frame":[]})") == "$: missing key \"algebra\"");
    CHECK(parse_error(R"({"algebra":{"blocks":[]},"module_rank":1,"frame":[]})") ==
          "$.algebra.blocks: expected a nonempty array");
    CHECK(parse_error(R"({"algebra":{"blocks":[1,0]},"module_rank":1,"frame":[]})") ==
          "$.algebra.blocks[1]: expected a positive integer");
    CHECK(parse_error(R"({"algebra":{"blocks":[1]},"module_rank":1.5,"frame":[]})") == "$.module_rank: expected an integer");
    CHECK(parse_error(R"({"algebra":{"blocks":[1]},"module_rank":1,"frame":[]})") == "$.frame: expected a nonempty array");
    CHECK(parse_error(R"({"algebra":{"blocks":[1]},"module_rank":2,"frame":[[[[[[1,0]]]]]]})") ==
          "$.frame[0]: expected 2 entries, got 1");
    CHECK(parse_error(R"({"algebra":{"blocks":[1,2]},"module_rank":1,"frame":[[[[[[1,0]]],[[[1,0]]]]]]})") ==
          "$.frame[0][0][1]: expected 2x2 matrix");
    CHECK(parse_error(R"({"algebra":{"blocks":[1]},"module_rank":1,"frame":[[[[[[1,"x"]]]]]]})") ==
          "$.frame[0][0][0][0][0][1]: expected a number");
    CHECK(parse_error(R"({"algebra":{"blocks":[1]},"module_rank":1,"frame":[[[[[[1,0]]]]]],"tolerance":{"rel_tol":-1}})")
              .rfind("$.tolerance", 0) == 0);
    CHECK_THROWS_AS(read_frame_document("/nonexistent/frame.json"), ParseError);
}

TEST_CASE("read_frame_document") {
    const std::string path = "test_document_delta.json";
    {
        std::ofstream out(path);
        out << emit_frame_document(delta_example(3)).dump(2);
    }
    CHECK(read_frame_document(path).frame == delta_example(3));
    std::remove(path.c_str());
}

TEST_CASE("report keys are stable and ordered") {
    const auto report = classify(delta_example(4), Tolerance{});
    const auto j = report_to_json(report, false);
    std::vector<std::string> keys;
    for (const auto& item : j.items()) keys.push_back(item.key());
    const std::vector<std::string> expected = {
        "is_bessel",          "is_frame",          "is_tight",
        "is_parseval",        "is_omega_independent", "is_biorthogonal_to_canonical_dual",
        "has_biorthogonal_sequence", "is_exact_by_lemma", "is_exact_by_removal",
        "is_riesz_frank_larson", "is_modular_riesz", "bounds",
    };
    CHECK(keys == expected);
    CHECK(j["is_parseval"] == true);
    CHECK(j["is_modular_riesz"] == false);

    const auto w = report_to_json(report, true);
    REQUIRE(w.contains("witnesses"));
    CHECK(w["witnesses"]["kernel_element"].size() == 4);
    CHECK(w["witnesses"]["non_invertible_complements"].size() == 4);
    CHECK(w["witnesses"]["removable_index"].is_null());

    const auto text = report_to_text(report, false);
    CHECK(text.find("modular riesz basis") != std::string::npos);
}

TEST_CASE("generator spec serialization") {
    const GeneratorSpec spec{7, AlgebraSignature({1, 2}), 2, 3, GeneratorKind::duplicated_vector};
    CHECK(generator_spec_to_json(spec).dump() == R"({"seed":7,"kind":"duplicated_vector","blocks":[1,2],"rank":2,"count":3})");
}

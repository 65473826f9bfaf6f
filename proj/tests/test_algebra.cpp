#include "doctest.h"

#include "cstar_frames/algebra.hpp"
#include "cstar_frames/corpus.hpp"
#include "oracles.hpp"

using namespace cstar;

namespace {

const std::vector<AlgebraSignature> signatures = {
    AlgebraSignature({1}), AlgebraSignature({2}), AlgebraSignature({1, 1}),
    AlgebraSignature({1, 2}), AlgebraSignature({2, 2}), AlgebraSignature({3, 1, 2}),
};

double distance(const AlgebraElement& a, const AlgebraElement& b) { return norm(a - b); }

} // namespace

TEST_CASE("signature validation") {
    CHECK_THROWS_AS(AlgebraSignature(std::vector<int>{}), StructuralError);
    CHECK_THROWS_AS(AlgebraSignature({2, 0}), StructuralError);
    CHECK(AlgebraSignature({1, 2, 3}).complex_dimension() == 14);
    CHECK(AlgebraSignature::commutative(4).complex_dimension() == 4);
}

TEST_CASE("element construction rejects wrong block shapes") {
    const AlgebraSignature sig({2});
    CHECK_THROWS_AS(AlgebraElement(sig, {CMatrix::Zero(3, 3)}), StructuralError);
    CHECK_THROWS_AS(AlgebraElement(sig, {CMatrix::Zero(2, 2), CMatrix::Zero(1, 1)}), StructuralError);
}

TEST_CASE("multiply") {
    SUBCASE("unit law") {
        for (std::size_t s = 0; s < signatures.size(); ++s) {
            const auto a = random_element(signatures[s], Rng(s));
            const auto one = AlgebraElement::identity(signatures[s]);
            CHECK(distance(one * a, a) == 0.0);
            CHECK(distance(a * one, a) == 0.0);
        }
    }
    SUBCASE("scalar blocks multiply componentwise") {
        CHECK(multiply(oracle::pointwise({2, 3}), oracle::pointwise({5, -1})) == oracle::pointwise({10, -3}));
    }
    SUBCASE("nilpotent square") {
        const auto n = oracle::matrix_element({{0, 1}, {0, 0}});
        CHECK(multiply(n, n) == AlgebraElement::zero(AlgebraSignature({2})));
    }
    SUBCASE("associative") {
        const AlgebraSignature sig({2, 3});
        const auto a = random_element(sig, Rng(1));
        const auto b = random_element(sig, Rng(2));
        const auto c = random_element(sig, Rng(3));
        CHECK(distance((a * b) * c, a * (b * c)) <= 1e-12 * norm(a) * norm(b) * norm(c));
    }
    SUBCASE("signature mismatch") {
        CHECK_THROWS_AS(multiply(oracle::pointwise({1, 2}), oracle::pointwise({1, 2, 3})), StructuralError);
    }
}

TEST_CASE("adjoint") {
    const AlgebraSignature sig({2});
    CHECK(adjoint(AlgebraElement::identity(sig)) == AlgebraElement::identity(sig));
    CHECK(adjoint(AlgebraElement::scalar(AlgebraSignature({1}), {3, 4})) ==
          AlgebraElement::scalar(AlgebraSignature({1}), {3, -4}));
    CHECK(adjoint(oracle::matrix_element({{0, 1}, {0, 0}})) == oracle::matrix_element({{0, 0}, {1, 0}}));

    for (std::size_t s = 0; s < signatures.size(); ++s) {
        const auto a = random_element(signatures[s], Rng(10 + s));
        const auto b = random_element(signatures[s], Rng(20 + s));
        CHECK(adjoint(adjoint(a)) == a);
        CHECK(distance(adjoint(a * b), adjoint(b) * adjoint(a)) <= 1e-13 * norm(a) * norm(b));
    }
}

TEST_CASE("norm") {
    CHECK(norm(AlgebraElement::identity(AlgebraSignature({2, 3}))) == doctest::Approx(1.0));
    CHECK(norm(oracle::pointwise({3, -4})) == doctest::Approx(4.0));

    SUBCASE("largest singular value matches an independent eigensolve of a*a") {
        const auto a = oracle::matrix_element({{0, 2}, {0, 0}});
        const auto ev = oracle::hermitian_eigenvalues((adjoint(a) * a).block(0));
        const double expected = std::sqrt(ev.back());
        CHECK(expected == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(norm(a) == doctest::Approx(expected).epsilon(1e-14));
    }

    SUBCASE("C*-identity and submultiplicativity") {
        const Tolerance tol;
        for (std::size_t s = 0; s < signatures.size(); ++s)
            for (std::uint64_t t = 0; t < 10; ++t) {
                const auto a = random_element(signatures[s], Rng(100 * s + t));
                const auto b = random_element(signatures[s], Rng(100 * s + t + 50));
                const double na = norm(a);
                CHECK(std::abs(norm(adjoint(a) * a) - na * na) <= tol.rel_tol * na * na);
                CHECK(norm(a * b) <= (1 + tol.rel_tol) * na * norm(b));
            }
    }
}

TEST_CASE("is_positive") {
    const Tolerance tol;
    CHECK(is_positive(AlgebraElement::zero(AlgebraSignature({2, 1})), tol));

    SUBCASE("swap matrix has eigenvalues -1 and 1") {
        const auto swap = oracle::matrix_element({{0, 1}, {1, 0}});
        const auto ev = oracle::hermitian_eigenvalues(swap.block(0));
        CHECK(ev[0] == doctest::Approx(-1.0));
        CHECK(ev[1] == doctest::Approx(1.0));
        CHECK_FALSE(is_positive(swap, tol));
    }

    SUBCASE("non-Hermitian elements are not positive") {
        CHECK_FALSE(is_positive(oracle::matrix_element({{1, 1}, {0, 1}}), tol));
    }

    SUBCASE("b*b is positive, and a, -a both positive forces a ~ 0") {
        for (std::size_t s = 0; s < signatures.size(); ++s)
            for (std::uint64_t t = 0; t < 10; ++t) {
                const auto b = random_element(signatures[s], Rng(300 + 17 * s + t));
                const auto p = adjoint(b) * b;
                CHECK(is_positive(p, tol));
                CHECK_FALSE(is_positive(-p, tol));
                const auto lo = spectrum_bounds(p, tol).first;
                CHECK(lo >= -tol.scaled(norm(p)));
            }
        const auto tiny = 1e-14 * oracle::pointwise({1, -1});
        CHECK(is_positive(tiny, tol));
        CHECK(is_positive(-tiny, tol));
        CHECK(norm(tiny) <= tol.scaled(norm(tiny)));
    }
}

TEST_CASE("is_invertible") {
    const Tolerance tol;
    CHECK(is_invertible(AlgebraElement::identity(AlgebraSignature({2, 2})), tol));
    // finite truncation of 1 - <delta_1, delta_1> in C^4
    CHECK_FALSE(is_invertible(oracle::pointwise({0, 1, 1, 1}), tol));
    CHECK_FALSE(is_invertible(AlgebraElement::zero(AlgebraSignature({3})), tol));
    CHECK_FALSE(is_invertible(oracle::matrix_element({{1, 1}, {1, 1}}), tol));
    CHECK(is_invertible(1e-8 * AlgebraElement::identity(AlgebraSignature({2})), tol));
    CHECK_FALSE(is_invertible(1e-13 * AlgebraElement::identity(AlgebraSignature({2})), tol));

    SUBCASE("inverse of invertible random elements") {
        for (std::size_t s = 0; s < signatures.size(); ++s) {
            const auto a = random_element(signatures[s], Rng(500 + s));
            REQUIRE(is_invertible(a, tol));
            const auto one = AlgebraElement::identity(signatures[s]);
            CHECK(distance(a * inverse(a), one) <= 1e-9);
            CHECK(distance(inverse(a) * a, one) <= 1e-9);
        }
    }
    CHECK_THROWS_AS(inverse(oracle::pointwise({0, 1})), DomainError);
}

TEST_CASE("spectrum_bounds") {
    const Tolerance tol;
    const auto one = AlgebraElement::identity(AlgebraSignature({3, 1}));
    CHECK(spectrum_bounds(one, tol).first == doctest::Approx(1.0));
    CHECK(spectrum_bounds(one, tol).second == doctest::Approx(1.0));

    const auto [lo, hi] = spectrum_bounds(oracle::pointwise({2, 5}), tol);
    CHECK(lo == doctest::Approx(2.0));
    CHECK(hi == doctest::Approx(5.0));

    const auto h = oracle::matrix_element({{2, 1}, {1, 2}});
    const auto ev = oracle::hermitian_eigenvalues(h.block(0));
    CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(spectrum_bounds(h, tol).first == doctest::Approx(ev[0]).epsilon(1e-14));
    CHECK(spectrum_bounds(h, tol).second == doctest::Approx(ev[1]).epsilon(1e-14));

    CHECK_THROWS_AS(spectrum_bounds(oracle::matrix_element({{0, 1}, {0, 0}}), tol), DomainError);
}

TEST_CASE("tolerance") {
    const Tolerance tol;
    CHECK(tol.scaled(0.0) == doctest::Approx(1e-12));
    CHECK(tol.scaled(10.0) == doctest::Approx(1e-8));
    CHECK_THROWS_AS((Tolerance{0.0, 1e-12}.validate()), StructuralError);
    CHECK_THROWS_AS((Tolerance{1e-9, -1.0}.validate()), StructuralError);
}

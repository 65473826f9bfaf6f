#include "doctest.h"

#include "cstar_frames/corpus.hpp"
#include "cstar_frames/module.hpp"
#include "oracles.hpp"

using namespace cstar;

namespace {

ModuleMap random_map(const AlgebraSignature& sig, int m, int d, std::uint64_t seed) {
    std::vector<AlgebraElement> entries;
    for (int e = 0; e < m * d; ++e) entries.push_back(random_element(sig, Rng(seed).split(static_cast<std::uint64_t>(e))));
    return ModuleMap(sig, m, d, std::move(entries));
}

const std::vector<AlgebraSignature> signatures = {AlgebraSignature({1}), AlgebraSignature({2}),
                                                  AlgebraSignature({1, 2}), AlgebraSignature({2, 2})};

} // namespace

TEST_CASE("inner_product") {
    const AlgebraSignature sig({2, 1});

    SUBCASE("canonical basis is orthonormal") {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const auto ip = inner_product(ModuleVector::basis(sig, 3, i), ModuleVector::basis(sig, 3, j));
                CHECK(ip == (i == j ? AlgebraElement::identity(sig) : AlgebraElement::zero(sig)));
            }
    }

    SUBCASE("scalar case conjugates the second slot") {
        const AlgebraSignature c({1});
        const ModuleVector x(c, {AlgebraElement::scalar(c, 1), AlgebraElement::scalar(c, {0, 2})});
        const ModuleVector y(c, {AlgebraElement::scalar(c, 1), AlgebraElement::scalar(c, 1)});
        CHECK(inner_product(x, y) == AlgebraElement::scalar(c, {1, 2}));
    }

    SUBCASE("delta vectors give idempotents") {
        const auto d1 = oracle::pointwise({1, 0, 0, 0});
        const ModuleVector x(d1.signature(), {d1});
        CHECK(inner_product(x, x) == d1);
    }

    SUBCASE("axioms on random inputs") {
        const Tolerance tol;
        for (std::size_t s = 0; s < signatures.size(); ++s)
            for (std::uint64_t t = 0; t < 5; ++t) {
                const auto& g = signatures[s];
                const auto x = random_vector(g, 3, Rng(10 * s + t));
                const auto y = random_vector(g, 3, Rng(10 * s + t + 1000));
                const auto z = random_vector(g, 3, Rng(10 * s + t + 2000));
                const auto a = random_element(g, Rng(10 * s + t + 3000));
                CHECK(is_positive(inner_product(x, x), tol));
                CHECK(norm(inner_product(x, y) - adjoint(inner_product(y, x))) <= 1e-12);
                const auto lhs = inner_product(a * x + y, z);
                const auto rhs = a * inner_product(x, z) + inner_product(y, z);
                CHECK(norm(lhs - rhs) <= 1e-12 * (1 + norm(lhs)));
                CHECK(norm(inner_product(x, y)) <= (1 + tol.rel_tol) * vector_norm(x) * vector_norm(y));
            }
    }

    SUBCASE("rank mismatch") {
        CHECK_THROWS_AS(inner_product(ModuleVector::zero(sig, 2), ModuleVector::zero(sig, 3)), StructuralError);
    }
}

TEST_CASE("vector_norm") {
    const AlgebraSignature sig({2});
    CHECK(vector_norm(ModuleVector::basis(sig, 3, 1)) == doctest::Approx(1.0));
    CHECK(vector_norm(ModuleVector::zero(sig, 3)) == 0.0);
    const AlgebraSignature c({1});
    CHECK(vector_norm(ModuleVector(c, {AlgebraElement::scalar(c, {3, 4})})) == doctest::Approx(5.0));
    CHECK_THROWS_AS(ModuleVector(sig, {}), StructuralError);
}

TEST_CASE("apply_map and composition") {
    const AlgebraSignature sig({2, 1});
    const auto x = random_vector(sig, 3, Rng(1));
    CHECK(apply_map(ModuleMap::identity(sig, 3), x) == x);
    CHECK(apply_map(ModuleMap(sig, 3, 2), x) == ModuleVector::zero(sig, 2));

    SUBCASE("swap over C") {
        const AlgebraSignature c({1});
        ModuleMap swap(c, 2, 2);
        swap.at(0, 1) = AlgebraElement::identity(c);
        swap.at(1, 0) = AlgebraElement::identity(c);
        const auto a = AlgebraElement::scalar(c, 7);
        const auto b = AlgebraElement::scalar(c, {0, -2});
        CHECK(apply_map(swap, ModuleVector(c, {a, b})) == ModuleVector(c, {b, a}));
    }

    SUBCASE("A-linearity") {
        const auto m = random_map(sig, 3, 2, 5);
        const auto y = random_vector(sig, 3, Rng(2));
        const auto a = random_element(sig, Rng(3));
        const auto lhs = apply_map(m, a * x + y);
        const auto rhs = a * apply_map(m, x) + apply_map(m, y);
        CHECK(vector_norm(lhs - rhs) <= 1e-12 * (1 + vector_norm(lhs)));
    }

    SUBCASE("composition acts in row order") {
        const auto m = random_map(sig, 3, 2, 6);
        const auto n = random_map(sig, 2, 4, 7);
        const auto lhs = apply_map(m * n, x);
        const auto rhs = apply_map(n, apply_map(m, x));
        CHECK(vector_norm(lhs - rhs) <= 1e-12 * (1 + vector_norm(lhs)));
    }

    CHECK_THROWS_AS(apply_map(ModuleMap::identity(sig, 2), x), StructuralError);
}

TEST_CASE("map_adjoint") {
    const AlgebraSignature sig({2, 1});
    CHECK(map_adjoint(ModuleMap::identity(sig, 3)) == ModuleMap::identity(sig, 3));

    const AlgebraSignature c({1});
    ModuleMap i_map(c, 1, 1);
    i_map.at(0, 0) = AlgebraElement::scalar(c, {0, 1});
    CHECK(map_adjoint(i_map).at(0, 0) == AlgebraElement::scalar(c, {0, -1}));

    const auto m = random_map(sig, 3, 2, 9);
    CHECK(map_adjoint(map_adjoint(m)) == m);
    for (std::uint64_t t = 0; t < 5; ++t) {
        const auto x = random_vector(sig, 3, Rng(40 + t));
        const auto y = random_vector(sig, 2, Rng(80 + t));
        const auto lhs = inner_product(apply_map(m, x), y);
        const auto rhs = inner_product(x, apply_map(map_adjoint(m), y));
        CHECK(norm(lhs - rhs) <= 1e-12 * (1 + norm(lhs)));
    }
}

TEST_CASE("flatten") {
    SUBCASE("identity flattens to identity") {
        const AlgebraSignature sig({3});
        const auto flat = flatten(ModuleMap::identity(sig, 2));
        CHECK(flat.size() == 1);
        CHECK(flat[0].isApprox(CMatrix::Identity(6, 6)));
    }

    SUBCASE("over C flatten is the scalar matrix") {
        const AlgebraSignature c({1});
        const auto m = random_map(c, 2, 3, 11);
        const auto flat = flatten(m)[0];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 3; ++j) CHECK(flat(i, j) == m.at(i, j).block(0)(0, 0));
    }

    SUBCASE("*-homomorphism") {
        for (std::size_t s = 0; s < signatures.size(); ++s) {
            const auto m = random_map(signatures[s], 3, 3, 20 + s);
            const auto n = random_map(signatures[s], 3, 3, 40 + s);
            const auto mn = flatten(m * n);
            const auto fm = flatten(m);
            const auto fn = flatten(n);
            const auto fa = flatten(map_adjoint(m));
            const double scale = operator_norm(m) * operator_norm(n);
            for (std::size_t k = 0; k < mn.size(); ++k) {
                CHECK((mn[k] - fm[k] * fn[k]).norm() <= 1e-12 * scale);
                CHECK(fa[k] == fm[k].adjoint());
            }
        }
    }

    SUBCASE("unflatten inverts flatten") {
        const auto m = random_map(AlgebraSignature({2, 1, 3}), 2, 4, 77);
        CHECK(unflatten(m.signature(), flatten(m)) == m);
        const auto x = random_vector(m.signature(), 4, Rng(78));
        CHECK(unflatten_vector(x.signature(), flatten(x)) == x);
    }

    SUBCASE("operator norm by power iteration through apply_map") {
        for (std::size_t s = 0; s < signatures.size(); ++s) {
            const auto m = random_map(signatures[s], 3, 3, 60 + s);
            const auto mm = m * map_adjoint(m);
            auto x = random_vector(signatures[s], 3, Rng(90 + s));
            double estimate = 0.0;
            for (int it = 0; it < 2000; ++it) {
                const double nx = vector_norm(x);
                estimate = vector_norm(apply_map(m, x)) / nx;
                auto next = apply_map(mm, x);
                x = AlgebraElement::scalar(signatures[s], 1.0 / vector_norm(next)) * next;
            }
            CHECK(estimate == doctest::Approx(operator_norm(m)).epsilon(1e-6));
        }
    }
}

TEST_CASE("map_invertible") {
    const Tolerance tol;
    const AlgebraSignature sig({2, 1});
    CHECK(map_invertible(ModuleMap::identity(sig, 3), tol));
    CHECK_FALSE(map_invertible(random_map(sig, 3, 2, 1), tol));
    CHECK_FALSE(map_invertible(random_map(sig, 2, 3, 1), tol));

    SUBCASE("column of (1, 0) over C^2 is singular in the second block") {
        ModuleMap m(AlgebraSignature({1, 1}), 1, 1);
        m.at(0, 0) = oracle::pointwise({1, 0});
        const auto flat = flatten(m);
        CHECK(flat[0](0, 0) == Complex(1.0));
        CHECK(flat[1](0, 0) == Complex(0.0));
        CHECK_FALSE(map_invertible(m, tol));
    }

    SUBCASE("inverse through flattening") {
        for (std::size_t s = 0; s < signatures.size(); ++s) {
            const auto m = random_map(signatures[s], 3, 3, 200 + s);
            REQUIRE(map_invertible(m, tol));
            const auto inv = map_inverse(m, tol);
            const auto id = ModuleMap::identity(signatures[s], 3);
            CHECK(max_entry_distance(m * inv, id) <= 1e-9);
            CHECK(max_entry_distance(inv * m, id) <= 1e-9);
        }
    }
    CHECK_THROWS_AS(map_inverse(ModuleMap(sig, 2, 2), tol), DomainError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "qroots/errors.hpp"
#include "qroots/oracle.hpp"
#include "qroots/polynomial.hpp"

using namespace qroots;
using test_helpers::close;
using test_helpers::multiply;
using test_helpers::pairing_error;

TEST_CASE("normalize strips zero leading coefficients and fixes the sign") {
    CHECK(normalize(Polynomial({-1, 0, 1})).coeffs == std::vector<double>{-1, 0, 1});
    CHECK(normalize(Polynomial({1, 0, -1})).coeffs == std::vector<double>{-1, 0, 1});
    CHECK(normalize(Polynomial({2, 1, 0})).coeffs == std::vector<double>{2, 1});
    CHECK_THROWS_AS(normalize(Polynomial({0.0, 0.0})), ZeroPolynomialError);
    CHECK_THROWS_AS(normalize(Polynomial({3.0})), ConstantPolynomialError);
    CHECK_THROWS_AS(normalize(Polynomial({3.0, 0.0})), ConstantPolynomialError);
}

TEST_CASE("pad_to_power_of_two multiplies by x") {
    auto [p3, c3] = pad_to_power_of_two(Polynomial({-1, 0, 0, 1}));  // x^3 - 1
    CHECK(c3 == 1);
    CHECK(p3.coeffs == std::vector<double>{0, -1, 0, 0, 1});

    auto [p4, c4] = pad_to_power_of_two(Polynomial({-1, 0, 0, 0, 1}));
    CHECK(c4 == 0);
    CHECK(p4.degree() == 4);

    auto [p1, c1] = pad_to_power_of_two(Polynomial({-2, 1}));  // x - 2
    CHECK(c1 == 1);
    CHECK(p1.coeffs == std::vector<double>{0, -2, 1});
}

TEST_CASE("pad adds exactly pad_count roots at zero") {
    std::mt19937_64 rng(11);
    for (int deg : {3, 5, 6, 7}) {
        const Polynomial p = normalize(test_helpers::random_polynomial(rng, deg, true));
        auto [padded, pad] = pad_to_power_of_two(p);
        auto base = find_roots(p).roots;
        for (int i = 0; i < pad; ++i) base.push_back({0.0, 0.0});
        CHECK(pairing_error(find_roots(padded).roots, base) < 1e-8);
    }
}

TEST_CASE("select_mode compares |a_n| and |a_0|") {
    CHECK(select_mode(Polynomial({-0.25, 0, 1})) == Mode::XMode);
    CHECK(select_mode(Polynomial({-4, 0, 1})) == Mode::RecipXMode);
    CHECK(select_mode(Polynomial({-1, 0, 1})) == Mode::XMode);  // tie
    // padded polynomials have a_0 = 0 and always land in x-mode
    CHECK(select_mode(Polynomial({0, -2, 1})) == Mode::XMode);
}

TEST_CASE("scale fills mu, a' and m") {
    SUBCASE("x^2 - 0.25 in x-mode") {
        const ScaledSystem sys = scale(Polynomial({-0.25, 0, 1}), Mode::XMode);
        CHECK(sys.mu == 1.0);
        CHECK(sys.a_prime == std::vector<double>{-0.25, 0});
        CHECK(sys.m == 1);
    }
    SUBCASE("x^2 - 4 in 1/x-mode") {
        const ScaledSystem sys = scale(Polynomial({-4, 0, 1}), Mode::RecipXMode);
        CHECK(sys.a_max == 4.0);
        CHECK(sys.mu == -1.0);
        CHECK(sys.a_prime == std::vector<double>{0.25, 0});
    }
    SUBCASE("x^2 - 1 in x-mode") {
        const ScaledSystem sys = scale(Polynomial({-1, 0, 1}), Mode::XMode);
        CHECK(sys.mu == 1.0);
        CHECK(sys.a_prime == std::vector<double>{-1, 0});
    }
}

TEST_CASE("scale invariants: |a'_i| <= 1 and |mu| >= 1") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        for (int deg : {2, 4, 8}) {
            Polynomial p = normalize(test_helpers::random_polynomial(rng, deg, false));
            auto [padded, pad] = pad_to_power_of_two(p);
            const ScaledSystem sys = scale(padded, select_mode(padded));
            CHECK(std::abs(sys.mu) >= 1.0);
            for (double a : sys.a_prime) CHECK(std::abs(a) <= 1.0);
        }
    }
}

TEST_CASE("scale rejects bad shapes") {
    CHECK_THROWS_AS(scale(Polynomial({-1, 0, 0, 1}), Mode::XMode), InvalidConfigError);  // degree 3
    CHECK_THROWS_AS(scale(Polynomial({0, -2, 1}), Mode::RecipXMode), InvalidConfigError);  // a0 = 0
    CHECK_THROWS_AS(companion_matrix(Polynomial({-2, 1})), InvalidConfigError);
}

TEST_CASE("companion matrix") {
    const ComplexMatrix c1 = companion_matrix(Polynomial({-1, 0, 1}));
    CHECK(close(c1(0, 1), {1, 0}));
    CHECK(close(c1(1, 0), {1, 0}));
    CHECK(close(c1(1, 1), {0, 0}));

    const ComplexMatrix c2 = companion_matrix(Polynomial({1, 0, 1}));
    CHECK(close(c2(1, 0), {-1, 0}));

    // x^4 - 1: eigenvalues are the oracle roots {1, -1, i, -i}
    const Polynomial p4({-1, 0, 0, 0, 1});
    const ComplexMatrix c4 = companion_matrix(p4);
    CHECK(close(c4(3, 0), {1, 0}));
    for (const Complex& root : find_roots(p4).roots) {
        // companion eigenvector for root x is (1, x, x^2, x^3)
        CVector v{1.0, root, root * root, root * root * root};
        const CVector mv = c4.apply(v);
        for (int i = 0; i < 4; ++i) CHECK(close(mv[i], root * v[i], 1e-9));
    }
}

TEST_CASE("modified companion matrices and their eigenvalues") {
    SUBCASE("x^2 - 0.25 x-mode") {
        const ComplexMatrix mat = modified_companion(scale(Polynomial({-0.25, 0, 1}), Mode::XMode));
        CHECK(close(mat(0, 1), {1, 0}));
        CHECK(close(mat(1, 0), {0.25, 0}));
    }
    SUBCASE("x^2 - 4 recip mode has eigenvalues 1/(mu x)") {
        const ScaledSystem sys = scale(Polynomial({-4, 0, 1}), Mode::RecipXMode);
        const ComplexMatrix mat = modified_companion(sys);
        CHECK(close(mat(0, 1), {-1, 0}));
        CHECK(close(mat(1, 0), {-0.25, 0}));
        // char poly: lambda^2 = 0.25
        for (double x : {2.0, -2.0}) {
            const Complex lam = root_to_eigenvalue(sys, {x, 0});
            CHECK(close(lam * lam, {0.25, 0}));
        }
    }
    SUBCASE("x^2 - 1 x-mode") {
        const ComplexMatrix mat = modified_companion(scale(Polynomial({-1, 0, 1}), Mode::XMode));
        CHECK(close(mat(0, 1), {1, 0}));
        CHECK(close(mat(1, 0), {1, 0}));
    }
}

TEST_CASE("spectrum transport against the oracle in both modes") {
    std::mt19937_64 rng(37);
    for (int deg : {2, 4, 8}) {
        for (int trial = 0; trial < 20; ++trial) {
            Polynomial p = normalize(test_helpers::random_polynomial(rng, deg, false));
            if (std::abs(p.coeffs.front()) < 1e-3) continue;  // keep 1/x-mode well-posed
            for (Mode mode : {Mode::XMode, Mode::RecipXMode}) {
                const ScaledSystem sys = scale(p, mode);
                const ComplexMatrix mat = modified_companion(sys);
                for (const Complex& root : find_roots(p).roots) {
                    const Complex lam = root_to_eigenvalue(sys, root);
                    const CVector v = eigenvector_for_root(sys, root);
                    const CVector mv = mat.apply(v);
                    for (int i = 0; i < deg; ++i) CHECK(close(mv[i], lam * v[i], 1e-9));
                    CHECK(close(eigenvalue_to_root(sys, lam), root, 1e-9));
                }
            }
        }
    }
}

TEST_CASE("evaluate uses Horner") {
    CHECK(close(evaluate(Polynomial({-1, 0, 1}), {1, 0}), {0, 0}));
    CHECK(close(evaluate(Polynomial({-1, 0, 1}), {0, 0}), {-1, 0}));
    CHECK(close(evaluate(Polynomial({1, 0, 1}), {0, 1}), {0, 0}));
}

TEST_CASE("deflate removes a real root or a conjugate pair") {
    CHECK(deflate(Polynomial({-1, 0, 1}), {1, 0}).coeffs == std::vector<double>{1, 1});
    CHECK(deflate(Polynomial({1, 0, 1}), {0, 1}).coeffs == std::vector<double>{1});

    const Polynomial p({-0.45, -0.4, 1});  // (x - 0.9)(x + 0.5)
    const Polynomial q = deflate(p, {0.9, 0});
    REQUIRE(q.degree() == 1);
    CHECK(close(q.coeffs[0], 0.5, 1e-12));
    CHECK(close(q.coeffs[1], 1.0, 1e-12));

    CHECK_THROWS_AS(deflate(Polynomial({-1, 0, 1}), {0.5, 0}), NotARootError);
    // a pair division of a linear factor is structurally impossible, caught
    // even when the residual gate is loosened
    CHECK_THROWS_AS(deflate(Polynomial({1, 1}), {-0.5, 0.9}, 10.0), DegreeUnderflowError);
}

TEST_CASE("deflate then re-multiply reproduces the polynomial") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        const Polynomial p = normalize(test_helpers::random_polynomial(rng, 4 + (trial % 3), true));
        for (const Complex& root : find_roots(p).roots) {
            if (root.imag() < -1e-12) continue;  // pairs handled via their upper member
            const bool real_root = std::abs(root.imag()) <= 1e-12;
            const Polynomial q = deflate(p, root, 1e-6);
            const Polynomial back =
                real_root ? multiply(q, {-root.real(), 1.0})
                          : multiply(q, {std::norm(root), -2.0 * root.real(), 1.0});
            REQUIRE(back.coeffs.size() == p.coeffs.size());
            for (std::size_t i = 0; i < p.coeffs.size(); ++i)
                CHECK(close(back.coeffs[i], p.coeffs[i], 1e-9));
        }
    }
}

TEST_CASE("reconstruct_polynomial inverts scale in both modes") {
    for (Mode mode : {Mode::XMode, Mode::RecipXMode}) {
        const Polynomial p({-4, 0.5, 1});
        const Polynomial back = reconstruct_polynomial(scale(p, mode));
        REQUIRE(back.coeffs.size() == p.coeffs.size());
        for (std::size_t i = 0; i < p.coeffs.size(); ++i) CHECK(close(back.coeffs[i], p.coeffs[i], 1e-12));
    }
}

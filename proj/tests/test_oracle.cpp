#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "qroots/oracle.hpp"

using namespace qroots;
using test_helpers::close;
using test_helpers::pairing_error;

TEST_CASE("simple spectra") {
    CHECK(pairing_error(find_roots(Polynomial({-1, 0, 1})).roots, {{1, 0}, {-1, 0}}) < 1e-12);
    CHECK(pairing_error(find_roots(Polynomial({1, 0, 1})).roots, {{0, 1}, {0, -1}}) < 1e-12);

    // x^4 - x = x (x^3 - 1): padded cube roots of unity plus the origin
    const double s3 = std::sqrt(3.0) / 2.0;
    CHECK(pairing_error(find_roots(Polynomial({0, -1, 0, 0, 1})).roots,
                        {{0, 0}, {1, 0}, {-0.5, s3}, {-0.5, -s3}}) < 1e-10);
}

TEST_CASE("residuals stay at the evaluation floor on random instances") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const int deg = 2 + static_cast<int>(rng() % 15);
        const bool monic = trial % 2 == 0;
        const Polynomial p = test_helpers::random_polynomial(rng, deg, monic);
        const OracleResult res = find_roots(p, 1e-12, 800);
        CHECK(res.roots.size() == static_cast<std::size_t>(normalize(p).degree()));
        if (monic) {
            CHECK(res.max_residual < 1e-10);
        } else {
            // small leading coefficients produce large roots where |p(x)|
            // cannot beat the Horner rounding floor; bound per-root residuals
            // by the evaluation conditioning instead
            for (const auto& root : res.roots) {
                double cond = 0.0, power = 1.0;
                for (double c : p.coeffs) {
                    cond += std::abs(c) * power;
                    power *= std::abs(root);
                }
                CHECK(std::abs(evaluate(p, root)) <= 1e-14 * (1.0 + cond));
            }
        }
    }
}

TEST_CASE("root multiset equals found root plus deflated remainder") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const Polynomial p = normalize(test_helpers::random_polynomial(rng, 5, true));
        for (const Complex& root : find_roots(p).roots) {
            if (root.imag() < -1e-9) continue;  // pairs checked via their upper member
            const bool real_root = std::abs(root.imag()) <= 1e-9;
            const Polynomial q = deflate(p, root, 1e-6);
            auto rest = q.degree() >= 1 ? find_roots(q).roots : std::vector<Complex>{};
            rest.push_back(root);
            if (!real_root) rest.push_back(std::conj(root));
            CHECK(pairing_error(find_roots(p).roots, rest) < 1e-6);
        }
    }
}

TEST_CASE("dominant_root tie-breaking") {
    CHECK(close(dominant_root(Polynomial({-0.45, -0.4, 1})), {0.9, 0}, 1e-10));
    CHECK(close(dominant_root(Polynomial({1, 0, 1})), {0, 1}, 1e-10));   // prefers Im >= 0
    CHECK(close(dominant_root(Polynomial({-1, 0, 1})), {1, 0}, 1e-10));  // prefers larger Re
}

TEST_CASE("degree one and convergence failure paths") {
    const OracleResult res = find_roots(Polynomial({-2, 1}));
    REQUIRE(res.roots.size() == 1);
    CHECK(close(res.roots[0], {2, 0}, 1e-12));

    // (x - 1)^6 has a six-fold root; one sweep cannot converge to 1e-14
    const Polynomial multiple({1, -6, 15, -20, 15, -6, 1});
    CHECK_THROWS_AS(find_roots(multiple, 1e-14, 1), NoConvergenceError);
    try {
        find_roots(multiple, 1e-14, 1);
    } catch (const NoConvergenceError& e) {
        CHECK(e.best.roots.size() == 6);  // best iterate is attached
    }
}

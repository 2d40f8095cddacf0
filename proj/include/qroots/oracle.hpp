#pragma once

#include <vector>

#include "qroots/errors.hpp"
#include "qroots/polynomial.hpp"

namespace qroots {

struct OracleResult {
    std::vector<Complex> roots;
    double max_residual = 0.0;
    int iterations_used = 0;
};

struct NoConvergenceError : Error {
    OracleResult best;
    explicit NoConvergenceError(int max_iter, OracleResult b)
        : Error("root iteration did not converge within " + std::to_string(max_iter) + " sweeps"),
          best(std::move(b)) {}
};

/// Durand-Kerner simultaneous iteration; ground truth for the quantum path.
OracleResult find_roots(const Polynomial& p, double tol = 1e-12, int max_iter = 500);

/// Largest-magnitude root; ties broken by larger real part, then by
/// nonnegative imaginary part.
Complex dominant_root(const Polynomial& p);

/// The same tie-break rule, exposed for callers comparing candidates.
bool root_order_before(Complex a, Complex b);

}  // namespace qroots

#include "qroots/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qroots {

namespace {

/// A couple of Newton steps against the original polynomial push residuals
/// from the update-tolerance scale down to the evaluation floor.
void polish(const Polynomial& p, Complex& root) {
    for (int step = 0; step < 2; ++step) {
        Complex value = 0.0, derivative = 0.0;
        for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
            derivative = derivative * root + value;
            value = value * root + *it;
        }
        if (derivative == Complex{0.0, 0.0}) return;
        const Complex candidate = root - value / derivative;
        if (std::abs(evaluate(p, candidate)) <= std::abs(value)) root = candidate;
    }
}

OracleResult finish(const Polynomial& p, std::vector<Complex> roots, int iterations) {
    OracleResult res;
    res.roots = std::move(roots);
    res.iterations_used = iterations;
    for (auto& r : res.roots) polish(p, r);
    for (const auto& r : res.roots)
        res.max_residual = std::max(res.max_residual, std::abs(evaluate(p, r)));
    return res;
}

}  // namespace

OracleResult find_roots(const Polynomial& p, double tol, int max_iter) {
    const Polynomial q = normalize(p);
    const int n = q.degree();
    if (tol <= 0.0) throw InvalidConfigError("oracle tolerance must be positive");

    if (n == 1) return finish(q, {Complex(-q.coeffs[0] / q.coeffs[1], 0.0)}, 0);

    // Monic copy for the Weierstrass update.
    std::vector<double> monic(q.coeffs);
    for (double& c : monic) c /= q.leading();
    const Polynomial pm{monic};

    // Start on a circle comfortably outside the root bound, with an angle
    // offset so no iterate begins on a symmetry axis.
    const double radius = 1.0 + q.max_abs_coeff() / std::abs(q.leading());
    std::vector<Complex> z(n);
    for (int k = 0; k < n; ++k) {
        const double angle = (k + 0.25) * 2.0 * std::numbers::pi / n;
        z[k] = radius * Complex(std::cos(angle), std::sin(angle));
    }

    for (int iter = 1; iter <= max_iter; ++iter) {
        double max_step = 0.0;
        for (int i = 0; i < n; ++i) {
            Complex denom = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= z[i] - z[j];
            if (denom == Complex{0.0, 0.0}) {
                z[i] += Complex(tol, tol);  // nudge collided iterates apart
                max_step = std::max(max_step, tol * 2.0);
                continue;
            }
            const Complex step = evaluate(pm, z[i]) / denom;
            z[i] -= step;
            max_step = std::max(max_step, std::abs(step));
        }
        if (max_step < tol) return finish(q, std::move(z), iter);
    }
    throw NoConvergenceError(max_iter, finish(q, std::move(z), max_iter));
}

bool root_order_before(Complex a, Complex b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (std::abs(ma - mb) > 1e-12 * (1.0 + ma + mb)) return ma > mb;
    if (std::abs(a.real() - b.real()) > 1e-12 * (1.0 + ma + mb)) return a.real() > b.real();
    return a.imag() >= 0.0 && b.imag() < 0.0;
}

Complex dominant_root(const Polynomial& p) {
    const OracleResult res = find_roots(p);
    Complex best = res.roots.front();
    for (const auto& r : res.roots)
        if (root_order_before(r, best)) best = r;
    return best;
}

}  // namespace qroots

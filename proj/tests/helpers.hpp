#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qroots/matrix.hpp"
#include "qroots/polynomial.hpp"
#include "qroots/statevector.hpp"

namespace test_helpers {

using qroots::Complex;
using qroots::ComplexMatrix;
using qroots::CVector;

inline bool close(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

inline bool close(Complex a, Complex b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

/// Coefficients uniform in [-1, 1]; optionally monic.
inline qroots::Polynomial random_polynomial(std::mt19937_64& rng, int degree, bool monic) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> c(degree + 1);
    for (auto& v : c) v = dist(rng);
    if (monic)
        c.back() = 1.0;
    else if (std::abs(c.back()) < 0.1)
        c.back() = c.back() < 0.0 ? -0.1 : 0.1;  // keep the instance well-conditioned
    return qroots::Polynomial(c);
}

/// Product of p and a monic linear or quadratic factor, for round-trip checks.
inline qroots::Polynomial multiply(const qroots::Polynomial& p, const std::vector<double>& factor) {
    std::vector<double> out(p.coeffs.size() + factor.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.coeffs.size(); ++i)
        for (std::size_t j = 0; j < factor.size(); ++j) out[i + j] += p.coeffs[i] * factor[j];
    return qroots::Polynomial(out);
}

/// Greedy nearest matching between two root multisets.
inline double pairing_error(std::vector<Complex> found, std::vector<Complex> reference) {
    double worst = 0.0;
    for (const auto& f : found) {
        std::size_t best = 0;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < reference.size(); ++i) {
            const double d = std::abs(f - reference[i]);
            if (d < best_dist) {
                best_dist = d;
                best = i;
            }
        }
        worst = std::max(worst, best_dist);
        if (!reference.empty()) reference.erase(reference.begin() + best);
    }
    return worst;
}

/// Dense matrix of one gate over nq qubits, written directly from the control
/// and target bit masks; an independent route for composition checks.
inline ComplexMatrix dense_gate_matrix(const qroots::GateOp& gate, int nq) {
    const std::size_t dim = std::size_t{1} << nq;
    ComplexMatrix full(dim);
    for (std::size_t col = 0; col < dim; ++col) {
        bool fires = true;
        for (const auto& c : gate.controls)
            if ((((col >> c.qubit) & 1u) != 0) != c.positive) fires = false;
        if (!fires) {
            full(col, col) = 1.0;
            continue;
        }
        std::size_t local_col = 0;
        for (std::size_t b = 0; b < gate.targets.size(); ++b)
            local_col |= ((col >> gate.targets[b]) & 1u) << b;
        for (std::size_t local_row = 0; local_row < gate.unitary.dim(); ++local_row) {
            std::size_t row = col;
            for (std::size_t b = 0; b < gate.targets.size(); ++b) {
                const std::size_t mask = std::size_t{1} << gate.targets[b];
                row = (row & ~mask) | (((local_row >> b) & 1u) ? mask : 0u);
            }
            full(row, col) = gate.unitary(local_row, local_col);
        }
    }
    return full;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.dim() * b.dim());
    for (std::size_t ar = 0; ar < a.dim(); ++ar)
        for (std::size_t ac = 0; ac < a.dim(); ++ac)
            for (std::size_t br = 0; br < b.dim(); ++br)
                for (std::size_t bc = 0; bc < b.dim(); ++bc)
                    out(ar * b.dim() + br, ac * b.dim() + bc) = a(ar, ac) * b(br, bc);
    return out;
}

/// Haar-ish random 2x2 unitary from three angles.
inline ComplexMatrix random_unitary2(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
    const double a = angle(rng), p1 = angle(rng), p2 = angle(rng);
    ComplexMatrix u(2);
    u(0, 0) = std::polar(std::cos(a), p1);
    u(0, 1) = std::polar(std::sin(a), p2);
    u(1, 0) = -std::polar(std::sin(a), -p2);
    u(1, 1) = std::polar(std::cos(a), -p1);
    return u;
}

inline CVector random_state(std::mt19937_64& rng, std::size_t dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CVector v(dim);
    for (auto& a : v) a = Complex(gauss(rng), gauss(rng));
    const double nrm = std::sqrt(qroots::norm_squared(v));
    for (auto& a : v) a /= nrm;
    return v;
}

}  // namespace test_helpers

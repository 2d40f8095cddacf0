#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "qroots/matrix.hpp"

namespace qroots {

/// Real-coefficient polynomial. coeffs[i] holds the coefficient of x^i,
/// so the degree is coeffs.size() - 1.
struct Polynomial {
    std::vector<double> coeffs;

    Polynomial() = default;
    explicit Polynomial(std::vector<double> c) : coeffs(std::move(c)) {}

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    double leading() const { return coeffs.back(); }
    double max_abs_coeff() const;
};

/// Basis choice for the modified companion matrix.
enum class Mode { XMode, RecipXMode };

/// Scaled form of a power-of-two-degree polynomial: everything the circuit
/// synthesis needs. a_prime entries all lie in [-1, 1] and |mu| >= 1.
struct ScaledSystem {
    Mode mode = Mode::XMode;
    double mu = 1.0;
    std::vector<double> a_prime;  // a'_0 .. a'_{n-1}
    int m = 1;                    // 2^m = n
    double a_max = 1.0;

    int n() const { return 1 << m; }
};

Polynomial normalize(const Polynomial& p);

/// Multiplies by x^k so the degree becomes the least power of two (>= 2).
/// The k added roots sit at exactly 0 and are reported via pad_count.
std::pair<Polynomial, int> pad_to_power_of_two(const Polynomial& p);

Mode select_mode(const Polynomial& p);

ScaledSystem scale(const Polynomial& p, Mode mode);

/// Reconstructs the padded polynomial a ScaledSystem was derived from.
Polynomial reconstruct_polynomial(const ScaledSystem& sys);

ComplexMatrix companion_matrix(const Polynomial& p);

ComplexMatrix modified_companion(const ScaledSystem& sys);

Complex evaluate(const Polynomial& p, Complex x);

double default_deflate_tolerance(const Polynomial& p);

/// Synthetic division by (x - root) for real roots, or by the real quadratic
/// x^2 - 2 Re(root) x + |root|^2 for a conjugate pair.
Polynomial deflate(const Polynomial& p, Complex root);
Polynomial deflate(const Polynomial& p, Complex root, double tolerance);

/// Eigenvalue of the modified companion matrix belonging to a root x of the
/// source polynomial: x/mu in x-mode, 1/(mu x) in 1/x-mode.
Complex root_to_eigenvalue(const ScaledSystem& sys, Complex root);

/// Inverse map, used to turn phase-estimation output back into a root.
Complex eigenvalue_to_root(const ScaledSystem& sys, Complex lambda);

/// Normalized eigenvector of modified_companion(sys) for the given root:
/// (1, x, ..., x^{n-1}) in x-mode, (1, 1/x, ..., 1/x^{n-1}) in 1/x-mode.
CVector eigenvector_for_root(const ScaledSystem& sys, Complex root);

}  // namespace qroots

#include "qroots/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "qroots/errors.hpp"

namespace qroots {

double Polynomial::max_abs_coeff() const {
    double worst = 0.0;
    for (double c : coeffs) worst = std::max(worst, std::abs(c));
    return worst;
}

Polynomial normalize(const Polynomial& p) {
    std::vector<double> c = p.coeffs;
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    if (c.empty()) throw ZeroPolynomialError();
    if (c.size() == 1) throw ConstantPolynomialError();
    if (c.back() < 0.0)
        for (double& v : c) v = -v;
    return Polynomial(std::move(c));
}

std::pair<Polynomial, int> pad_to_power_of_two(const Polynomial& p) {
    const int deg = p.degree();
    int target = 2;
    while (target < deg) target *= 2;
    const int pad = target - deg;
    if (pad == 0) return {p, 0};
    std::vector<double> c(p.coeffs.size() + pad, 0.0);
    std::copy(p.coeffs.begin(), p.coeffs.end(), c.begin() + pad);
    return {Polynomial(std::move(c)), pad};
}

Mode select_mode(const Polynomial& p) {
    // Tie resolved to x-mode; a padded polynomial has a_0 = 0 and lands
    // there automatically.
    return std::abs(p.coeffs.front()) > std::abs(p.coeffs.back()) ? Mode::RecipXMode : Mode::XMode;
}

ScaledSystem scale(const Polynomial& p, Mode mode) {
    const int n = p.degree();
    int m = 0;
    while ((1 << m) < n) ++m;
    if ((1 << m) != n || m < 1)
        throw InvalidConfigError("scale() needs a power-of-two degree >= 2, got " + std::to_string(n));

    ScaledSystem sys;
    sys.mode = mode;
    sys.m = m;
    sys.a_max = p.max_abs_coeff();
    sys.a_prime.resize(n);
    if (mode == Mode::XMode) {
        sys.mu = sys.a_max / p.coeffs[n];
        for (int i = 0; i < n; ++i) sys.a_prime[i] = p.coeffs[i] / sys.a_max;
    } else {
        if (p.coeffs[0] == 0.0)
            throw InvalidConfigError("1/x-mode is undefined when a_0 = 0");
        sys.mu = sys.a_max / p.coeffs[0];
        for (int i = 0; i < n; ++i) sys.a_prime[i] = p.coeffs[n - i] / sys.a_max;
    }
    return sys;
}

Polynomial reconstruct_polynomial(const ScaledSystem& sys) {
    const int n = sys.n();
    std::vector<double> c(n + 1, 0.0);
    if (sys.mode == Mode::XMode) {
        for (int i = 0; i < n; ++i) c[i] = sys.a_prime[i] * sys.a_max;
        c[n] = sys.a_max / sys.mu;
    } else {
        for (int i = 0; i < n; ++i) c[n - i] = sys.a_prime[i] * sys.a_max;
        c[0] = sys.a_max / sys.mu;
    }
    return Polynomial(std::move(c));
}

ComplexMatrix companion_matrix(const Polynomial& p) {
    const int n = p.degree();
    if (n < 2) throw InvalidConfigError("companion matrix needs degree >= 2");
    const double an = p.leading();
    ComplexMatrix mat(static_cast<std::size_t>(n));
    for (int r = 0; r + 1 < n; ++r) mat(r, r + 1) = 1.0;
    for (int c = 0; c < n; ++c) mat(n - 1, c) = -p.coeffs[c] / an;
    return mat;
}

ComplexMatrix modified_companion(const ScaledSystem& sys) {
    const int n = sys.n();
    ComplexMatrix mat(static_cast<std::size_t>(n));
    for (int r = 0; r + 1 < n; ++r) mat(r, r + 1) = 1.0 / sys.mu;
    for (int c = 0; c < n; ++c) mat(n - 1, c) = -sys.a_prime[c];
    return mat;
}

Complex evaluate(const Polynomial& p, Complex x) {
    Complex acc = 0.0;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double default_deflate_tolerance(const Polynomial& p) {
    return 1e-6 * (1.0 + p.max_abs_coeff());
}

Polynomial deflate(const Polynomial& p, Complex root) {
    return deflate(p, root, default_deflate_tolerance(p));
}

Polynomial deflate(const Polynomial& p, Complex root, double tolerance) {
    const double residual = std::abs(evaluate(p, root));
    if (residual > tolerance) throw NotARootError(residual);

    const int n = p.degree();
    const bool real_root = std::abs(root.imag()) <= 1e-9 * (1.0 + std::abs(root));
    if (real_root) {
        // q(x) = p(x) / (x - r); degree n-1.
        const double r = root.real();
        std::vector<double> q(n, 0.0);
        double carry = p.coeffs[n];
        for (int i = n - 1; i >= 0; --i) {
            q[i] = carry;
            carry = p.coeffs[i] + r * carry;
        }
        return Polynomial(std::move(q));
    }

    // Remove the conjugate pair together: divide by x^2 - 2 Re(r) x + |r|^2.
    if (n < 2) throw DegreeUnderflowError();
    const double b = -2.0 * root.real();
    const double c = std::norm(root);
    std::vector<double> rem = p.coeffs;
    std::vector<double> q(n - 1, 0.0);
    for (int i = n - 2; i >= 0; --i) {
        q[i] = rem[i + 2];
        rem[i + 1] -= b * q[i];
        rem[i] -= c * q[i];
    }
    const double rem_mag = std::max(std::abs(rem[0]), std::abs(rem[1]));
    const double rem_tol = tolerance * (2.0 + std::abs(b) + std::abs(c)) * (n + 1);
    if (rem_mag > rem_tol) {
        if (n == 2) throw DegreeUnderflowError();
        throw NotARootError(rem_mag);
    }
    return Polynomial(std::move(q));
}

Complex root_to_eigenvalue(const ScaledSystem& sys, Complex root) {
    if (sys.mode == Mode::XMode) return root / sys.mu;
    return 1.0 / (sys.mu * root);
}

Complex eigenvalue_to_root(const ScaledSystem& sys, Complex lambda) {
    if (sys.mode == Mode::XMode) return sys.mu * lambda;
    return 1.0 / (sys.mu * lambda);
}

CVector eigenvector_for_root(const ScaledSystem& sys, Complex root) {
    const int n = sys.n();
    CVector v(n);
    const Complex base = sys.mode == Mode::XMode ? root : 1.0 / root;
    Complex acc = 1.0;
    for (int j = 0; j < n; ++j) {
        v[j] = acc;
        acc *= base;
    }
    const double nrm = std::sqrt(norm_squared(v));
    for (auto& a : v) a /= nrm;
    return v;
}

}  // namespace qroots

#include "qroots/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "qroots/errors.hpp"

namespace qroots {

namespace {

bool is_unitary(const ComplexMatrix& u, double tol = 1e-12) {
    const std::size_t d = u.dim();
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < d; ++k) acc += std::conj(u(k, r)) * u(k, c);
            const Complex want = r == c ? 1.0 : 0.0;
            if (std::abs(acc - want) > tol) return false;
        }
    return true;
}

bool controls_satisfied(std::uint64_t idx, const std::vector<ControlBit>& controls) {
    for (const auto& c : controls) {
        const bool bit = (idx >> c.qubit) & 1u;
        if (bit != c.positive) return false;
    }
    return true;
}

}  // namespace

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return s;
}

GateOp::GateOp(ComplexMatrix u, std::vector<int> tgts, std::vector<ControlBit> ctrls)
    : unitary(std::move(u)), targets(std::move(tgts)), controls(std::move(ctrls)) {
    if (unitary.dim() != (std::size_t{1} << targets.size()))
        throw InvalidConfigError("gate matrix dimension does not match target count");
    if (!is_unitary(unitary)) throw NonUnitaryError();
    for (int t : targets)
        for (const auto& c : controls)
            if (c.qubit == t) throw InvalidConfigError("gate control overlaps a target qubit");
}

ComplexMatrix hadamard_matrix() {
    ComplexMatrix h(2);
    const double s = 1.0 / std::sqrt(2.0);
    h(0, 0) = s;
    h(0, 1) = s;
    h(1, 0) = s;
    h(1, 1) = -s;
    return h;
}

ComplexMatrix pauli_x_matrix() {
    ComplexMatrix x(2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    return x;
}

ComplexMatrix pauli_z_matrix() {
    ComplexMatrix z(2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return z;
}

ComplexMatrix phase_z_matrix(double theta) {
    ComplexMatrix z(2);
    z(0, 0) = 1.0;
    z(1, 1) = std::exp(Complex(0.0, -theta));
    return z;
}

ComplexMatrix attenuation_matrix(double c) {
    if (std::abs(c) > 1.0) throw ScaleOutOfRangeError();
    const double s = std::sqrt(1.0 - c * c);
    ComplexMatrix a(2);
    a(0, 0) = c;
    a(0, 1) = -s;
    a(1, 0) = s;
    a(1, 1) = c;
    return a;
}

GateOp make_single(ComplexMatrix u, int target, std::vector<ControlBit> controls) {
    return GateOp(std::move(u), {target}, std::move(controls));
}

StateVector prepare(int m, const CVector& main_state) {
    const RegisterLayout layout(m);
    if (main_state.size() != (std::size_t{1} << m))
        throw InvalidConfigError("main register state has the wrong length");
    if (std::abs(norm_squared(main_state) - 1.0) > 1e-9) throw NotNormalizedError();

    StateVector state(layout.total_qubits());
    for (std::size_t j = 0; j < main_state.size(); ++j)
        state.amps[layout.index(0, 0, j, 0)] = main_state[j];
    return state;
}

void apply(StateVector& state, const GateOp& gate) {
    for (int t : gate.targets)
        if (t < 0 || t >= state.num_qubits) throw IndexOutOfRangeError(t);
    for (const auto& c : gate.controls)
        if (c.qubit < 0 || c.qubit >= state.num_qubits) throw IndexOutOfRangeError(c.qubit);

    const std::size_t k = gate.targets.size();
    const std::size_t span = std::size_t{1} << k;
    std::uint64_t target_mask = 0;
    for (int t : gate.targets) target_mask |= std::uint64_t{1} << t;

    std::vector<std::uint64_t> offsets(span, 0);
    for (std::size_t local = 0; local < span; ++local)
        for (std::size_t b = 0; b < k; ++b)
            if ((local >> b) & 1u) offsets[local] |= std::uint64_t{1} << gate.targets[b];

    CVector scratch(span);
    for (std::uint64_t idx = 0; idx < state.dim(); ++idx) {
        if (idx & target_mask) continue;  // visit each operand subspace once
        if (!controls_satisfied(idx, gate.controls)) continue;
        for (std::size_t local = 0; local < span; ++local) scratch[local] = state.amps[idx | offsets[local]];
        for (std::size_t r = 0; r < span; ++r) {
            Complex acc = 0.0;
            for (std::size_t c = 0; c < span; ++c) acc += gate.unitary(r, c) * scratch[c];
            state.amps[idx | offsets[r]] = acc;
        }
    }
}

void apply_all(StateVector& state, const std::vector<GateOp>& gates) {
    for (const auto& g : gates) apply(state, g);
}

PostSelection post_select(const StateVector& state, const std::vector<std::pair<int, int>>& assignments) {
    PostSelection out{state, 0.0};
    for (std::uint64_t idx = 0; idx < state.dim(); ++idx) {
        bool keep = true;
        for (const auto& [q, bit] : assignments)
            if (static_cast<int>((idx >> q) & 1u) != bit) {
                keep = false;
                break;
            }
        if (keep)
            out.probability += std::norm(state.amps[idx]);
        else
            out.state.amps[idx] = 0.0;
    }
    return out;
}

std::pair<double, double> marginal_probs(const StateVector& state, int qubit,
                                         const std::vector<std::pair<int, int>>& conditions) {
    double p0 = 0.0, p1 = 0.0;
    for (std::uint64_t idx = 0; idx < state.dim(); ++idx) {
        bool keep = true;
        for (const auto& [q, bit] : conditions)
            if (static_cast<int>((idx >> q) & 1u) != bit) {
                keep = false;
                break;
            }
        if (!keep) continue;
        const double w = std::norm(state.amps[idx]);
        if ((idx >> qubit) & 1u)
            p1 += w;
        else
            p0 += w;
    }
    return {p0, p1};
}

std::map<std::uint64_t, std::uint64_t> sample(const StateVector& state, const std::vector<int>& qubits,
                                              std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw InvalidConfigError("shot count must be >= 1");
    // Exact joint distribution over the listed qubits.
    std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
    for (std::uint64_t idx = 0; idx < state.dim(); ++idx) {
        std::uint64_t key = 0;
        for (std::size_t b = 0; b < qubits.size(); ++b) key |= ((idx >> qubits[b]) & 1u) << b;
        probs[key] += std::norm(state.amps[idx]);
    }
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (total <= 0.0) throw ZeroSuccessError();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        double u = uniform(rng) * total;
        std::uint64_t key = probs.size() - 1;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            u -= probs[i];
            if (u <= 0.0) {
                key = i;
                break;
            }
        }
        ++counts[key];
    }
    return counts;
}

ComplexMatrix assemble(const std::vector<GateOp>& gates, int num_qubits) {
    const std::size_t dim = std::size_t{1} << num_qubits;
    ComplexMatrix out(dim);
    StateVector column(num_qubits);
    for (std::size_t c = 0; c < dim; ++c) {
        std::fill(column.amps.begin(), column.amps.end(), Complex{0.0, 0.0});
        column.amps[c] = 1.0;
        apply_all(column, gates);
        for (std::size_t r = 0; r < dim; ++r) out(r, c) = column.amps[r];
    }
    return out;
}

}  // namespace qroots

#include "qroots/prc.hpp"

#include <cmath>

#include "qroots/errors.hpp"

namespace qroots {

namespace {

std::vector<ControlBit> main_value_controls(const RegisterLayout& layout, std::uint64_t value) {
    std::vector<ControlBit> controls;
    controls.reserve(layout.m);
    for (int b = 0; b < layout.m; ++b)
        controls.push_back({layout.main(b), ((value >> b) & 1u) != 0});
    return controls;
}

}  // namespace

std::vector<GateOp> build_cyclic_swap(int m) {
    if (m < 1) throw InvalidConfigError("cyclic swap needs m >= 1");
    // Borrow cascade for |j> -> |j-1 mod 2^m>: flip bit 0, then flip bit k
    // whenever the already-updated lower bits all read 1.
    std::vector<GateOp> gates;
    gates.push_back(make_single(pauli_x_matrix(), 0));
    for (int k = 1; k < m; ++k) {
        std::vector<ControlBit> controls;
        for (int low = 0; low < k; ++low) controls.push_back({low, true});
        gates.push_back(make_single(pauli_x_matrix(), k, std::move(controls)));
    }
    return gates;
}

ComplexMatrix rotation_gate(double a_prime_i) {
    if (std::abs(a_prime_i) > 1.0) throw CoefficientOutOfRangeError(a_prime_i);
    const double s = std::sqrt(1.0 - a_prime_i * a_prime_i);
    ComplexMatrix r(2);
    r(0, 0) = a_prime_i;
    r(0, 1) = s;
    r(1, 0) = -s;
    r(1, 1) = a_prime_i;
    return r;
}

std::vector<GateOp> build_formation(const ScaledSystem& sys) {
    const RegisterLayout layout(sys.m);
    const int n = sys.n();
    std::vector<GateOp> gates;
    gates.reserve(n);
    for (int j = 0; j < n; ++j) {
        const int coeff = (j + 1) % n;
        gates.push_back(make_single(rotation_gate(sys.a_prime[coeff]), layout.anc2(),
                                    main_value_controls(layout, static_cast<std::uint64_t>(j))));
    }
    return gates;
}

std::vector<GateOp> build_combination(int m) {
    const RegisterLayout layout(m);
    std::vector<GateOp> gates;
    gates.reserve(2 * m);
    for (int q = 0; q < m; ++q) {
        gates.push_back(make_single(hadamard_matrix(), layout.main(q)));
        gates.push_back(make_single(pauli_x_matrix(), layout.main(q)));
    }
    return gates;
}

ComplexMatrix scaling_gate(int m, double mu) {
    const double denom = std::sqrt(std::exp2(m)) * mu;
    if (std::abs(1.0 / denom) > 1.0) throw ScaleOutOfRangeError();
    const double off = std::sqrt(std::exp2(m) * mu * mu - 1.0);
    ComplexMatrix s(2);
    s(0, 0) = 1.0 / denom;
    s(0, 1) = off / denom;
    s(1, 0) = -off / denom;
    s(1, 1) = 1.0 / denom;
    return s;
}

PrcCircuit build_prc(const ScaledSystem& sys) {
    const RegisterLayout layout(sys.m);
    PrcCircuit circ;
    circ.m = sys.m;
    circ.mu = sys.mu;

    // Branch split.
    circ.gates.push_back(make_single(hadamard_matrix(), layout.anc1()));

    // Shift of the main register, both branches.
    for (auto& g : build_cyclic_swap(sys.m)) {
        std::vector<ControlBit> controls = g.controls;
        for (auto& c : controls) c.qubit = layout.main(c.qubit);
        circ.gates.emplace_back(g.unitary, std::vector<int>{layout.main(g.targets[0])}, std::move(controls));
    }

    // Scale gate on the anc1 = |0> branch.
    circ.gates.push_back(
        make_single(scaling_gate(sys.m, sys.mu), layout.anc2(), {{layout.anc1(), false}}));

    // Formation and combination on the anc1 = |1> branch.
    for (auto& g : build_formation(sys)) {
        std::vector<ControlBit> controls = g.controls;
        controls.push_back({layout.anc1(), true});
        circ.gates.emplace_back(g.unitary, g.targets, std::move(controls));
    }
    for (auto& g : build_combination(sys.m)) {
        circ.gates.emplace_back(g.unitary, g.targets,
                                std::vector<ControlBit>{{layout.anc1(), true}});
    }

    // Sign of the |1> branch, then the branch swap on (main = n-1, anc2 = 0).
    circ.gates.push_back(make_single(pauli_z_matrix(), layout.anc1()));
    std::vector<ControlBit> swap_controls;
    for (int b = 0; b < sys.m; ++b) swap_controls.push_back({layout.main(b), true});
    swap_controls.push_back({layout.anc2(), false});
    circ.gates.push_back(make_single(pauli_x_matrix(), layout.anc1(), std::move(swap_controls)));

    return circ;
}

EffectiveOperator effective_operator(const PrcCircuit& circ, const ScaledSystem& sys) {
    const RegisterLayout layout(sys.m);
    const int n = sys.n();

    EffectiveOperator eff;
    eff.matrix = ComplexMatrix(static_cast<std::size_t>(n));
    eff.reference = modified_companion(sys);

    for (int j = 0; j < n; ++j) {
        CVector basis(n, 0.0);
        basis[j] = 1.0;
        StateVector state = prepare(sys.m, basis);
        apply_all(state, circ.gates);
        const PostSelection sel = post_select(state, {{layout.anc1(), 0}, {layout.anc2(), 0}});
        for (int i = 0; i < n; ++i)
            eff.matrix(i, j) = sel.state.amps[layout.index(0, 0, static_cast<std::uint64_t>(i), 0)];
    }

    // Least-squares fit of a single real scalar, then an element-wise check.
    double num = 0.0, den = 0.0;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            num += std::real(eff.matrix(r, c) * std::conj(eff.reference(r, c)));
            den += std::norm(eff.reference(r, c));
        }
    eff.g = num / den;
    const double deviation = eff.matrix.max_abs_diff(eff.reference.scaled(eff.g));
    if (eff.g <= 0.0 || deviation > 1e-9) throw StructureMismatchError(deviation);
    return eff;
}

PrcApplication apply_prc(const ScaledSystem& sys, const CVector& main_state) {
    const RegisterLayout layout(sys.m);
    const PrcCircuit circ = build_prc(sys);

    StateVector state = prepare(sys.m, main_state);
    apply_all(state, circ.gates);
    const PostSelection sel = post_select(state, {{layout.anc1(), 0}, {layout.anc2(), 0}});
    if (sel.probability < 1e-300) throw ZeroSuccessError();

    PrcApplication out;
    out.success_prob = sel.probability;
    out.beta.resize(sys.n());
    const double scale = std::sqrt(sel.probability);
    for (int i = 0; i < sys.n(); ++i)
        out.beta[i] = sel.state.amps[layout.index(0, 0, static_cast<std::uint64_t>(i), 0)] / scale;
    return out;
}

}  // namespace qroots

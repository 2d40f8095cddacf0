#pragma once

#include <vector>

#include "qroots/polynomial.hpp"
#include "qroots/statevector.hpp"

namespace qroots {

/// Gate list realizing the scaled companion action on the main register once
/// both ancilla qubits post-select to |0>. Gates address the RegisterLayout
/// qubits for sys.m; the phase qubit is untouched.
struct PrcCircuit {
    std::vector<GateOp> gates;
    int m = 1;
    double mu = 1.0;
    double g = 0.0;  // post-selected scale, filled by effective_operator
};

struct EffectiveOperator {
    ComplexMatrix matrix;     // n x n action extracted column by column
    double g = 0.0;           // fitted positive scalar
    ComplexMatrix reference;  // modified companion matrix
};

/// Cyclic shift |j> -> |j-1 mod n| on qubits 0..m-1 (bit j = main_j):
/// superdiagonal 1s plus a bottom-left 1 when assembled.
std::vector<GateOp> build_cyclic_swap(int m);

/// [[a', sqrt(1-a'^2)], [-sqrt(1-a'^2), a']]; requires |a'| <= 1.
ComplexMatrix rotation_gate(double a_prime_i);

/// Controlled rotations on qubits (anc2 = 0, main_j = j+1): main value j
/// selects the rotation for coefficient (j+1) mod n, giving the
/// block-diagonal operator diag(R_1, ..., R_{n-1}, R_0) on (main x anc2).
std::vector<GateOp> build_formation(const ScaledSystem& sys);

/// Per main qubit, H then X, on the same (anc2, main) qubit addressing.
std::vector<GateOp> build_combination(int m);

/// Rotation balancing the shift branch: top-left entry 1/(sqrt(2^m) mu).
ComplexMatrix scaling_gate(int m, double mu);

PrcCircuit build_prc(const ScaledSystem& sys);

/// Runs the circuit on every main basis state, post-selects anc1 = anc2 = 0,
/// and fits the single scalar g with matrix = g * modified_companion(sys).
EffectiveOperator effective_operator(const PrcCircuit& circ, const ScaledSystem& sys);

struct PrcApplication {
    CVector beta;         // renormalized post-selected main register
    double success_prob;  // surviving squared norm
};

PrcApplication apply_prc(const ScaledSystem& sys, const CVector& main_state);

}  // namespace qroots

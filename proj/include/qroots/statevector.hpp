#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "qroots/matrix.hpp"

namespace qroots {

/// Qubit placement shared by every circuit here. Index bit order, least
/// significant first: anc2, main_0 .. main_{m-1}, anc1, phase.
struct RegisterLayout {
    int m;

    explicit RegisterLayout(int m_) : m(m_) {}

    int anc2() const { return 0; }
    int main(int j) const { return 1 + j; }
    int anc1() const { return m + 1; }
    int phase() const { return m + 2; }
    int total_qubits() const { return m + 3; }

    std::uint64_t index(int phase_bit, int anc1_bit, std::uint64_t main_value, int anc2_bit) const {
        return (static_cast<std::uint64_t>(phase_bit) << phase()) |
               (static_cast<std::uint64_t>(anc1_bit) << anc1()) | (main_value << 1) |
               static_cast<std::uint64_t>(anc2_bit);
    }
};

struct StateVector {
    int num_qubits = 0;
    CVector amps;

    StateVector() = default;
    explicit StateVector(int nq) : num_qubits(nq), amps(std::size_t{1} << nq, 0.0) {}

    std::size_t dim() const { return amps.size(); }
    double norm_squared() const;
};

struct ControlBit {
    int qubit;
    bool positive;  // true: fires on |1>, false: fires on |0>
};

/// A k-qubit unitary with optional (anti-)controls. targets[i] supplies bit i
/// of the local operand index. Unitarity is checked at construction.
struct GateOp {
    ComplexMatrix unitary;
    std::vector<int> targets;
    std::vector<ControlBit> controls;

    GateOp(ComplexMatrix u, std::vector<int> tgts, std::vector<ControlBit> ctrls = {});
};

// 2x2 building blocks.
ComplexMatrix hadamard_matrix();
ComplexMatrix pauli_x_matrix();
ComplexMatrix pauli_z_matrix();
/// diag(1, e^{-i theta}): the feedback gate of the estimation loop.
ComplexMatrix phase_z_matrix(double theta);
/// Real rotation sending |0> to c|0> + sqrt(1-c^2)|1>.
ComplexMatrix attenuation_matrix(double c);

GateOp make_single(ComplexMatrix u, int target, std::vector<ControlBit> controls = {});

/// All registers |0> except the main register, which carries main_state.
StateVector prepare(int m, const CVector& main_state);

void apply(StateVector& state, const GateOp& gate);
void apply_all(StateVector& state, const std::vector<GateOp>& gates);

struct PostSelection {
    StateVector state;   // inconsistent amplitudes zeroed; NOT renormalized
    double probability;  // surviving squared norm
};

PostSelection post_select(const StateVector& state, const std::vector<std::pair<int, int>>& assignments);

/// Joint probabilities of (qubit = 0/1 AND conditions), relative to the
/// original normalized input; the state may already be sub-normalized.
std::pair<double, double> marginal_probs(const StateVector& state, int qubit,
                                         const std::vector<std::pair<int, int>>& conditions = {});

/// Seeded multinomial draws over the listed qubits; qubits[i] supplies bit i
/// of the outcome key.
std::map<std::uint64_t, std::uint64_t> sample(const StateVector& state, const std::vector<int>& qubits,
                                              std::uint64_t shots, std::uint64_t seed);

/// Dense matrix of a gate list over num_qubits qubits, composed in
/// application order (later gates multiply on the left).
ComplexMatrix assemble(const std::vector<GateOp>& gates, int num_qubits);

}  // namespace qroots

#pragma once

#include <vector>

namespace qroots {

/// Basic-operation counts per circuit block. This is a counting model with
/// frozen constants, not an executable decomposition; multi-controlled gates
/// assume one reusable work qubit held at |0>.
struct OpLedger {
    int m = 0;
    long cyclic_swap = 0;
    long formation = 0;
    long combination = 0;
    long branch_swap = 0;
    long scaling = 0;
    long total = 0;
};

/// Single-qubit and CNOT gates count as one basic operation; a gate with
/// i >= 2 controls costs i + 2.
long count_multi_controlled(int controls);

OpLedger count_circuit(int m);

/// 2^b * n * log2(n) basic operations across all chain repetitions.
double quantum_complexity(int n, int b);

/// n * log2(n)^2 * (log2(n)^2 + log2(b)) operations for the classical
/// reference solver.
double pan_complexity(int n, int b);

struct CompareRow {
    int n = 0;
    int b = 0;
    double quantum = 0.0;
    double classical = 0.0;
    double ratio = 0.0;          // quantum / classical
    bool quantum_wins = false;   // ratio < 1
};

std::vector<CompareRow> compare_report(const std::vector<int>& n_list, const std::vector<int>& b_list);

}  // namespace qroots

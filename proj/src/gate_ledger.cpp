#include "qroots/gate_ledger.hpp"

#include <cmath>

#include "qroots/errors.hpp"

namespace qroots {

long count_multi_controlled(int controls) {
    if (controls < 0) throw InvalidConfigError("control count must be nonnegative");
    return controls <= 1 ? 1 : controls + 2;
}

OpLedger count_circuit(int m) {
    if (m < 1) throw InvalidConfigError("ledger needs m >= 1");
    OpLedger ledger;
    ledger.m = m;
    ledger.cyclic_swap = 2;
    for (int i = 2; i <= m - 1; ++i) ledger.cyclic_swap += i;
    ledger.formation = (1L << m) * (m + 2);
    ledger.combination = 2L * m;
    ledger.branch_swap = count_multi_controlled(m + 1);
    ledger.scaling = count_multi_controlled(1);
    ledger.total = ledger.cyclic_swap + ledger.formation + ledger.combination + ledger.branch_swap +
                   ledger.scaling;
    return ledger;
}

double quantum_complexity(int n, int b) {
    if (n < 2 || (n & (n - 1)) != 0) throw InvalidConfigError("n must be a power of two >= 2");
    if (b < 1) throw InvalidConfigError("b must be >= 1");
    return std::exp2(b) * n * std::log2(n);
}

double pan_complexity(int n, int b) {
    if (n < 2) throw InvalidConfigError("n must be >= 2");
    if (b < 2) throw InvalidConfigError("b must be >= 2");
    const double log_n = std::log2(static_cast<double>(n));
    return n * log_n * log_n * (log_n * log_n + std::log2(static_cast<double>(b)));
}

std::vector<CompareRow> compare_report(const std::vector<int>& n_list, const std::vector<int>& b_list) {
    std::vector<CompareRow> rows;
    rows.reserve(n_list.size() * b_list.size());
    for (int n : n_list)
        for (int b : b_list) {
            CompareRow row;
            row.n = n;
            row.b = b;
            row.quantum = quantum_complexity(n, b);
            row.classical = pan_complexity(n, b);
            row.ratio = row.quantum / row.classical;
            row.quantum_wins = row.ratio < 1.0;
            rows.push_back(row);
        }
    return rows;
}

}  // namespace qroots

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qroots/polynomial.hpp"
#include "qroots/prc.hpp"

namespace qroots {

enum class MeasurementMode { Exact, Shots };
enum class InitKind { Eigenstate, MaximallyMixed };

struct RunConfig {
    int bits = 4;
    MeasurementMode measurement = MeasurementMode::Exact;
    std::uint64_t shots = 200000;
    std::uint64_t seed = 1;
    InitKind init = InitKind::MaximallyMixed;
    long max_full_chain = 64;   // cap on 2^{b-k} for the full-circuit path
    bool use_full_circuit = false;
    double residual_tol = -1.0;  // < 0 selects 1e-6 * (1 + a_max)
    std::optional<Mode> mode_override;
};

struct BitDecision {
    int bit;
    bool degenerate;  // exact tie, resolved to 0
};

/// Chain probabilities in two frames. Joint values (p0/p1) include the
/// 2^-(m+1)L post-selection attenuation and may underflow for long chains;
/// q0/q1 carry the same information with the attenuation factored out.
struct ChainProbs {
    double q0 = 0.0;
    double q1 = 0.0;
    double log2_scale = 0.0;        // Q_i = q_i * 2^log2_scale
    double log2_attenuation = 0.0;  // (m+1) * L

    double p0() const;
    double p1() const;
};

struct IterationStats {
    int k = 0;
    long L = 0;
    double theta = 0.0;
    double p0 = 0.0;
    double p1 = 0.0;
    int bit = 0;
    bool degenerate = false;
    double r_power = 0.0;  // estimate of |lambda|^L from this iteration
    bool weak = false;     // probability imbalance below the dominance floor
};

struct RootEstimate {
    double magnitude = 0.0;
    double omega = 0.0;
    std::vector<int> bits;  // x_1 .. x_b
    Complex lambda{0.0, 0.0};
    Complex root{0.0, 0.0};
    double residual = 0.0;
    std::vector<IterationStats> iterations;
    std::optional<Complex> conjugate_alternative;

    // Pipeline bookkeeping for reports.
    Mode mode = Mode::XMode;
    double mu = 1.0;
    int m = 1;
    double g = 0.0;
    int pad_count = 0;
    std::string method = "eigenstate";
    bool accepted = true;
    std::string note;
};

BitDecision extract_bit(double p0, double p1);

/// Feedback angle for the next iteration, given bits in extraction order
/// (x_b first). Empty input gives theta_1 = 0.
double theta_feedback(const std::vector<int>& bits_so_far);

/// |lambda|^L from joint probabilities: r^2L = 2 (P0+P1) 2^{(m+1)L} - 1.
double estimate_magnitude(double p0, double p1, long L, int m);

/// One controlled chain of L post-selected applications followed by the
/// feedback gate and a Hadamard; exact probabilities, fast matrix-power path.
std::pair<double, double> controlled_prc_chain(const ScaledSystem& sys, long L, const CVector& init,
                                               double theta);

/// Internals shared by the run loops and the path-equivalence tests.
struct PreparedSystem {
    ScaledSystem sys;
    PrcCircuit circuit;
    EffectiveOperator eff;
    Polynomial source;
};
PreparedSystem prepare_system(const ScaledSystem& sys);

ChainProbs chain_fast(const PreparedSystem& ps, long L, const CVector& init, double theta);
ChainProbs chain_full(const PreparedSystem& ps, long L, const CVector& init, double theta);
ChainProbs chain_shots(const PreparedSystem& ps, long L, const CVector& init, double theta,
                       std::uint64_t shots, std::uint64_t seed);

RootEstimate run_eigenstate(const ScaledSystem& sys, const CVector& eigvec, const RunConfig& config);

/// Maximally mixed input realized by exact averaging over the computational
/// basis; recovers the dominant eigenvalue and emits both conjugate phase
/// candidates, keeping the better-residual one.
RootEstimate run_mixed(const ScaledSystem& sys, const RunConfig& config);

/// Full pipeline: pad, scale, estimate, validate, deflate, repeat. Mixed-mode
/// rounds that fail validation fall back to an oracle-assisted eigenstate run.
std::vector<RootEstimate> find_all_roots(const Polynomial& p, const RunConfig& config);

}  // namespace qroots

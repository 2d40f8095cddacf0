#include "qroots/ipea.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qroots/errors.hpp"
#include "qroots/oracle.hpp"

namespace qroots {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDominanceFloor = 1e-9;  // relative |P0-P1| floor for mixed mode

void validate(const RunConfig& cfg) {
    if (cfg.bits < 1) throw InvalidConfigError("bit precision must be >= 1");
    if (cfg.measurement == MeasurementMode::Exact && cfg.bits > 12)
        throw InvalidConfigError("exact mode is capped at 12 bits");
    if (cfg.measurement == MeasurementMode::Shots) {
        if (cfg.shots < 1) throw InvalidConfigError("shot count must be >= 1");
        if (cfg.bits > 3) throw InvalidConfigError("shot mode is demonstration-grade, capped at 3 bits");
    }
}

/// r^L from log2 of 2(P0+P1)/c^2L; negative values inside tolerance clip to 0.
double magnitude_power_from_log2(double log2_sum) {
    if (log2_sum > 1000.0) return std::exp2(log2_sum / 2.0);
    const double value = std::expm1(log2_sum * std::numbers::ln2);
    if (value < -1e-6) throw NegativeUnderRootError(value);
    return std::sqrt(std::max(0.0, value));
}

double eigen_r_power(const ChainProbs& probs) {
    const double sum = probs.q0 + probs.q1;
    if (sum <= 0.0) throw NoSignalError();
    return magnitude_power_from_log2(std::log2(2.0 * sum) + probs.log2_scale);
}

/// Dominant-eigenvalue power for mixed mode:
/// r^L = 2 (P0 + P1 - c^2L / 2) / |P0 - P1|.
double mixed_r_power(const ChainProbs& probs) {
    const double diff = std::abs(probs.q0 - probs.q1);
    if (diff <= 0.0) throw NoSignalError();
    const double sum = probs.q0 + probs.q1;
    if (probs.log2_scale > 60.0) return 2.0 * sum / diff;  // the subtracted 1/2 is negligible
    const double scale = std::exp2(probs.log2_scale);
    return std::max(0.0, 2.0 * (sum * scale - 0.5)) / (diff * scale);
}

bool weak_signal(const ChainProbs& probs) {
    return std::abs(probs.q0 - probs.q1) < kDominanceFloor * (probs.q0 + probs.q1);
}

ChainProbs average_probs(const std::vector<ChainProbs>& members) {
    ChainProbs out;
    out.log2_attenuation = members.front().log2_attenuation;
    for (const auto& p : members) out.log2_scale = std::max(out.log2_scale, p.log2_scale);
    for (const auto& p : members) {
        const double rescale = std::exp2(p.log2_scale - out.log2_scale);
        out.q0 += p.q0 * rescale;
        out.q1 += p.q1 * rescale;
    }
    out.q0 /= static_cast<double>(members.size());
    out.q1 /= static_cast<double>(members.size());
    return out;
}

std::vector<GateOp> phase_controlled_gates(const PreparedSystem& ps) {
    const RegisterLayout layout(ps.sys.m);
    std::vector<GateOp> gates;
    gates.reserve(ps.circuit.gates.size() + 1);
    for (const auto& g : ps.circuit.gates) {
        std::vector<ControlBit> controls = g.controls;
        controls.push_back({layout.phase(), true});
        gates.emplace_back(g.unitary, g.targets, std::move(controls));
    }
    // Balance the idle branch so both arms share the same per-step scale.
    gates.push_back(make_single(attenuation_matrix(ps.eff.g), layout.anc2(),
                                {{layout.phase(), false}}));
    return gates;
}

struct FullChainState {
    std::vector<double> pass_probs;  // conditional survival per step
    double cond0 = 0.0;              // P(phase=0 | survived), after Z and H
    double p0 = 0.0;                 // exact joint probabilities
    double p1 = 0.0;
};

FullChainState run_full_chain(const PreparedSystem& ps, long L, const CVector& init, double theta) {
    const RegisterLayout layout(ps.sys.m);
    if ((ps.sys.m + 1) * (L + 1) > 900)
        throw InvalidConfigError("full-circuit chain too long; lower the bit count or use the fast path");

    const std::vector<GateOp> step_gates = phase_controlled_gates(ps);
    StateVector state = prepare(ps.sys.m, init);
    apply(state, make_single(hadamard_matrix(), layout.phase()));

    FullChainState out;
    for (long step = 0; step < L; ++step) {
        const double before = state.norm_squared();
        apply_all(state, step_gates);
        PostSelection sel = post_select(state, {{layout.anc1(), 0}, {layout.anc2(), 0}});
        out.pass_probs.push_back(before > 0.0 ? sel.probability / before : 0.0);
        state = std::move(sel.state);
    }
    apply(state, make_single(phase_z_matrix(theta), layout.phase()));
    apply(state, make_single(hadamard_matrix(), layout.phase()));

    const auto [p0, p1] =
        marginal_probs(state, layout.phase(), {{layout.anc1(), 0}, {layout.anc2(), 0}});
    out.p0 = p0;
    out.p1 = p1;
    out.cond0 = (p0 + p1) > 0.0 ? p0 / (p0 + p1) : 0.5;
    return out;
}

Complex inner_product(const CVector& a, const CVector& b) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double loop_omega(const std::vector<int>& bits_msb_first) {
    double omega = 0.0;
    double w = 0.5;
    for (int bit : bits_msb_first) {
        omega += bit * w;
        w *= 0.5;
    }
    return omega;
}

struct LoopResult {
    std::vector<IterationStats> stats;
    std::vector<int> bits;  // x_1 .. x_b
};

template <typename Eval>
LoopResult run_loop(int b, Eval&& eval) {
    LoopResult out;
    std::vector<int> extraction_order;  // x_b first
    for (int k = 1; k <= b; ++k) {
        const long L = 1L << (b - k);
        const double theta = theta_feedback(extraction_order);
        const ChainProbs probs = eval(L, theta);
        const BitDecision decision = extract_bit(probs.q0, probs.q1);
        extraction_order.push_back(decision.bit);

        IterationStats st;
        st.k = k;
        st.L = L;
        st.theta = theta;
        st.p0 = probs.p0();
        st.p1 = probs.p1();
        st.bit = decision.bit;
        st.degenerate = decision.degenerate;
        st.weak = weak_signal(probs);
        out.stats.push_back(st);
    }
    out.bits.assign(extraction_order.rbegin(), extraction_order.rend());
    return out;
}

Complex unit_phase(double omega) { return std::polar(1.0, kTwoPi * omega); }

}  // namespace

double ChainProbs::p0() const { return q0 * std::exp2(log2_scale - log2_attenuation); }
double ChainProbs::p1() const { return q1 * std::exp2(log2_scale - log2_attenuation); }

BitDecision extract_bit(double p0, double p1) {
    const double sum = p0 + p1;
    if (sum < 1e-300) throw NoSignalError();
    if (std::abs(p0 - p1) <= 1e-12 * sum) return {0, true};
    return {p0 > p1 ? 0 : 1, false};
}

double theta_feedback(const std::vector<int>& bits_so_far) {
    // bits_so_far[i] is x_{b-i}; iteration k = bits_so_far.size() + 1 uses
    // theta_k = 2 pi (0.0 x_{b-k+2} ... x_b).
    const int k = static_cast<int>(bits_so_far.size()) + 1;
    double theta = 0.0;
    for (int i = 0; i <= k - 2; ++i)
        theta += bits_so_far[i] * std::exp2(-(k - i));
    return kTwoPi * theta;
}

double estimate_magnitude(double p0, double p1, long L, int m) {
    const double sum = p0 + p1;
    if (sum <= 0.0) throw NoSignalError();
    return magnitude_power_from_log2(std::log2(2.0 * sum) + static_cast<double>(m + 1) * L);
}

PreparedSystem prepare_system(const ScaledSystem& sys) {
    PreparedSystem ps;
    ps.sys = sys;
    ps.circuit = build_prc(sys);
    ps.eff = effective_operator(ps.circuit, sys);
    ps.circuit.g = ps.eff.g;
    ps.source = reconstruct_polynomial(sys);
    return ps;
}

ChainProbs chain_fast(const PreparedSystem& ps, long L, const CVector& init, double theta) {
    // Power of the calibrated operator A_eff / g, with the norm tracked in
    // log2 so long chains neither overflow nor underflow.
    const ComplexMatrix m_measured = ps.eff.matrix.scaled(1.0 / ps.eff.g);
    CVector v = init;
    double log2_norm = 0.0;
    bool dead = false;
    for (long step = 0; step < L && !dead; ++step) {
        v = m_measured.apply(v);
        const double nrm = std::sqrt(norm_squared(v));
        if (nrm < 1e-300) {
            dead = true;
            break;
        }
        for (auto& a : v) a /= nrm;
        log2_norm += std::log2(nrm);
    }

    ChainProbs out;
    out.log2_attenuation = -2.0 * L * std::log2(ps.eff.g);
    if (dead) {
        out.q0 = 0.25;
        out.q1 = 0.25;
        return out;
    }

    const double cross = std::real(std::polar(1.0, -theta) * inner_product(init, v));
    const double s = log2_norm;
    const double t = std::max(0.0, 2.0 * s);
    out.log2_scale = t;
    out.q0 = 0.25 * (std::exp2(-t) + std::exp2(2.0 * s - t) + 2.0 * cross * std::exp2(s - t));
    out.q1 = 0.25 * (std::exp2(-t) + std::exp2(2.0 * s - t) - 2.0 * cross * std::exp2(s - t));
    return out;
}

ChainProbs chain_full(const PreparedSystem& ps, long L, const CVector& init, double theta) {
    const FullChainState full = run_full_chain(ps, L, init, theta);
    ChainProbs out;
    out.log2_attenuation = -2.0 * L * std::log2(ps.eff.g);
    out.q0 = full.p0 * std::exp2(out.log2_attenuation);
    out.q1 = full.p1 * std::exp2(out.log2_attenuation);
    return out;
}

ChainProbs chain_shots(const PreparedSystem& ps, long L, const CVector& init, double theta,
                       std::uint64_t shots, std::uint64_t seed) {
    const FullChainState full = run_full_chain(ps, L, init, theta);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::uint64_t attempts = 0, count0 = 0, count1 = 0;
    constexpr std::uint64_t kAttemptCap = 20'000'000;

    for (std::uint64_t s = 0; s < shots; ++s) {
        // Restart the chain whenever an ancilla round fails post-selection.
        bool done = false;
        while (!done) {
            if (++attempts > kAttemptCap) throw NoSignalError();
            bool survived = true;
            for (double pass : full.pass_probs)
                if (uniform(rng) >= pass) {
                    survived = false;
                    break;
                }
            if (!survived) continue;
            if (uniform(rng) < full.cond0)
                ++count0;
            else
                ++count1;
            done = true;
        }
    }

    ChainProbs out;
    out.log2_attenuation = -2.0 * L * std::log2(ps.eff.g);
    const double scale = std::exp2(out.log2_attenuation);
    out.q0 = (static_cast<double>(count0) / static_cast<double>(attempts)) * scale;
    out.q1 = (static_cast<double>(count1) / static_cast<double>(attempts)) * scale;
    return out;
}

std::pair<double, double> controlled_prc_chain(const ScaledSystem& sys, long L, const CVector& init,
                                               double theta) {
    const PreparedSystem ps = prepare_system(sys);
    const ChainProbs probs = chain_fast(ps, L, init, theta);
    return {probs.p0(), probs.p1()};
}

RootEstimate run_eigenstate(const ScaledSystem& sys, const CVector& eigvec, const RunConfig& config) {
    validate(config);
    if (std::abs(norm_squared(eigvec) - 1.0) > 1e-9) throw NotNormalizedError();
    const PreparedSystem ps = prepare_system(sys);

    int iteration = 0;
    std::vector<ChainProbs> per_iteration;
    auto eval = [&](long L, double theta) -> ChainProbs {
        ++iteration;
        ChainProbs probs;
        switch (config.measurement) {
            case MeasurementMode::Shots:
                probs = chain_shots(ps, L, eigvec, theta, config.shots,
                                    config.seed + 0x9e3779b97f4a7c15ULL * iteration);
                break;
            case MeasurementMode::Exact:
            default:
                if (config.use_full_circuit) {
                    if (L > config.max_full_chain)
                        throw InvalidConfigError("chain length exceeds max_L for the full-circuit path");
                    probs = chain_full(ps, L, eigvec, theta);
                } else {
                    probs = chain_fast(ps, L, eigvec, theta);
                }
        }
        per_iteration.push_back(probs);
        return probs;
    };

    LoopResult loop = run_loop(config.bits, eval);

    // Per-iteration magnitude estimates; the k = b iteration (L = 1) has the
    // widest dynamic range and is the primary one.
    for (std::size_t i = 0; i < loop.stats.size(); ++i) {
        try {
            loop.stats[i].r_power = eigen_r_power(per_iteration[i]);
        } catch (const NegativeUnderRootError&) {
            if (config.measurement == MeasurementMode::Exact) throw;
            loop.stats[i].r_power = 0.0;  // statistical noise in shot mode
        }
    }

    RootEstimate est;
    est.bits = loop.bits;
    est.iterations = loop.stats;
    est.omega = loop_omega(loop.bits);
    est.magnitude = loop.stats.back().r_power;
    est.lambda = est.magnitude * unit_phase(est.omega);
    est.root = eigenvalue_to_root(sys, est.lambda);
    est.residual = std::abs(evaluate(ps.source, est.root));
    est.mode = sys.mode;
    est.mu = sys.mu;
    est.m = sys.m;
    est.g = ps.eff.g;
    est.method = "eigenstate";
    return est;
}

RootEstimate run_mixed(const ScaledSystem& sys, const RunConfig& config) {
    validate(config);
    if (config.measurement != MeasurementMode::Exact)
        throw InvalidConfigError("mixed-state runs require exact probabilities");
    const PreparedSystem ps = prepare_system(sys);
    const int n = sys.n();

    std::vector<CVector> basis(n, CVector(n, 0.0));
    for (int i = 0; i < n; ++i) basis[i][i] = 1.0;

    std::vector<ChainProbs> per_iteration;
    auto eval = [&](long L, double theta) -> ChainProbs {
        std::vector<ChainProbs> members;
        members.reserve(n);
        for (const auto& b : basis) members.push_back(chain_fast(ps, L, b, theta));
        const ChainProbs avg = average_probs(members);
        per_iteration.push_back(avg);
        return avg;
    };

    LoopResult loop = run_loop(config.bits, eval);

    // Magnitude from the longest chain with a usable imbalance; dominance of
    // the top eigenvalue improves with L, so earlier iterations are better.
    double r = -1.0;
    for (std::size_t i = 0; i < per_iteration.size(); ++i) {
        auto& st = loop.stats[i];
        if (st.weak) continue;
        st.r_power = mixed_r_power(per_iteration[i]);
        if (r < 0.0) r = std::pow(st.r_power, 1.0 / static_cast<double>(st.L));
    }
    if (r < 0.0) throw DominanceTooWeakError();

    RootEstimate est;
    est.bits = loop.bits;
    est.iterations = loop.stats;
    est.omega = loop_omega(loop.bits);
    est.magnitude = r;
    est.mode = sys.mode;
    est.mu = sys.mu;
    est.m = sys.m;
    est.g = ps.eff.g;
    est.method = "mixed";

    // Conjugate-pair dominance leaves the phase sign ambiguous; score both.
    const Complex lambda_plus = r * unit_phase(est.omega);
    const Complex lambda_minus = r * unit_phase(-est.omega);
    const Complex root_plus = eigenvalue_to_root(sys, lambda_plus);
    const Complex root_minus = eigenvalue_to_root(sys, lambda_minus);
    const double res_plus = std::abs(evaluate(ps.source, root_plus));
    const double res_minus = std::abs(evaluate(ps.source, root_minus));

    bool take_plus;
    if (std::abs(res_plus - res_minus) <= 1e-9 * (1.0 + std::min(res_plus, res_minus)))
        take_plus = root_order_before(root_plus, root_minus);
    else
        take_plus = res_plus < res_minus;

    est.lambda = take_plus ? lambda_plus : lambda_minus;
    est.root = take_plus ? root_plus : root_minus;
    est.residual = take_plus ? res_plus : res_minus;
    if (std::abs(root_plus - root_minus) > 1e-12 * (1.0 + std::abs(root_plus)))
        est.conjugate_alternative = take_plus ? root_minus : root_plus;
    return est;
}

namespace {

/// Root whose modified-companion eigenvalue dominates; this is what the
/// mixed-state statistics converge to, so the oracle-assisted fallback
/// targets the same one.
Complex dominant_lambda_root(const ScaledSystem& sys, const std::vector<Complex>& roots) {
    Complex best = roots.front();
    Complex best_lambda = root_to_eigenvalue(sys, best);
    for (const auto& r : roots) {
        const Complex lam = root_to_eigenvalue(sys, r);
        if (root_order_before(lam, best_lambda)) {
            best = r;
            best_lambda = lam;
        }
    }
    return best;
}

RootEstimate conjugate_partner(const RootEstimate& primary, const Polynomial& reference) {
    RootEstimate partner = primary;
    partner.root = std::conj(primary.root);
    partner.lambda = std::conj(primary.lambda);
    partner.omega = primary.omega == 0.0 ? 0.0 : 1.0 - primary.omega;
    partner.bits.clear();
    partner.iterations.clear();
    partner.conjugate_alternative.reset();
    partner.residual = std::abs(evaluate(reference, partner.root));
    partner.method = "conjugate";
    partner.note = "conjugate pair partner removed by the same quadratic deflation";
    return partner;
}

}  // namespace

std::vector<RootEstimate> find_all_roots(const Polynomial& p, const RunConfig& config) {
    validate(config);
    if (config.measurement == MeasurementMode::Shots && config.init == InitKind::MaximallyMixed)
        throw InvalidConfigError("shot mode needs --init eigenstate; mixed runs are exact-only");

    const Polynomial original = normalize(p);
    const double accept_tol =
        config.residual_tol >= 0.0 ? config.residual_tol : default_deflate_tolerance(original);

    std::vector<RootEstimate> out;
    Polynomial work = original;

    while (work.degree() >= 1) {
        const auto [padded, pad] = pad_to_power_of_two(work);
        const Mode mode = config.mode_override.value_or(select_mode(padded));
        const ScaledSystem sys = scale(padded, mode);
        const double work_tol = std::max(accept_tol, default_deflate_tolerance(work));

        auto fits = [&](const RootEstimate& e) {
            return std::isfinite(e.residual) &&
                   std::abs(evaluate(original, e.root)) <= accept_tol &&
                   std::abs(evaluate(work, e.root)) <= work_tol;
        };

        std::optional<RootEstimate> est;
        std::string fallback_note;
        if (config.init == InitKind::MaximallyMixed) {
            try {
                RootEstimate candidate = run_mixed(sys, config);
                if (fits(candidate))
                    est = std::move(candidate);
                else
                    fallback_note = "mixed estimate rejected at residual " +
                                    std::to_string(candidate.residual);
            } catch (const Error& e) {
                fallback_note = std::string("mixed run failed: ") + e.what();
            }
        }

        Complex oracle_target;
        bool have_target = false;
        if (!est) {
            OracleResult orc;
            try {
                orc = find_roots(padded);
            } catch (const NoConvergenceError& e) {
                RootEstimate failure;
                failure.accepted = false;
                failure.method = "failed";
                failure.note = std::string("oracle assist failed: ") + e.what();
                failure.pad_count = pad;
                out.push_back(std::move(failure));
                break;
            }
            oracle_target = dominant_lambda_root(sys, orc.roots);
            have_target = true;
            RootEstimate candidate =
                run_eigenstate(sys, eigenvector_for_root(sys, oracle_target), config);
            candidate.note = fallback_note;
            est = std::move(candidate);
        }

        est->pad_count = pad;
        est->residual = std::abs(evaluate(original, est->root));
        Complex deflation_root = est->root;
        if (!fits(*est)) {
            est->accepted = false;
            if (!est->note.empty()) est->note += "; ";
            est->note += "residual above tolerance; continuing via the oracle value";
            if (!have_target) {
                oracle_target = dominant_lambda_root(sys, find_roots(padded).roots);
                have_target = true;
            }
            deflation_root = oracle_target;
        }

        const double pair_tol = 1e-9 * (1.0 + std::abs(deflation_root));
        const bool complex_pair = std::abs(deflation_root.imag()) > pair_tol;
        if (complex_pair && work.degree() < 2) {
            est->accepted = false;
            est->note += "; complex estimate against a linear factor";
            out.push_back(std::move(*est));
            break;
        }

        Polynomial quotient = complex_pair
                                  ? deflate(work, deflation_root, work_tol)
                                  : deflate(work, Complex(deflation_root.real(), 0.0), work_tol);
        out.push_back(*est);
        if (complex_pair) out.push_back(conjugate_partner(*est, original));
        work = std::move(quotient);
        if (work.degree() == 0) break;
    }
    return out;
}

}  // namespace qroots

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json_text.hpp"
#include "qroots/errors.hpp"
#include "qroots/gate_ledger.hpp"
#include "qroots/ipea.hpp"
#include "qroots/oracle.hpp"
#include "qroots/prc.hpp"

using nlohmann::ordered_json;
using namespace qroots;

namespace {

constexpr const char* kSchema = "companion-qpea/1";

struct CommonOpts {
    std::string coeffs;
    std::string coeffs_file;
    int bits = 4;
    std::string mode = "auto";
    bool exact = false;
    std::uint64_t shots = 0;
    std::uint64_t seed = 1;
    std::string init = "mixed";
    bool json_out = false;
    bool text_out = false;
    double tolerance = -1.0;
    int oracle_max_iter = 800;
};

std::vector<double> parse_coeff_list(const std::string& text) {
    std::vector<double> out;
    std::string token;
    std::stringstream ss(text);
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
        if (used != token.size()) throw InvalidConfigError("bad coefficient: '" + token + "'");
        out.push_back(v);
    }
    if (out.size() < 2) throw InvalidConfigError("need at least two coefficients (a0 first)");
    return out;
}

Polynomial load_polynomial(const CommonOpts& opts) {
    if (!opts.coeffs_file.empty()) {
        std::ifstream in(opts.coeffs_file);
        if (!in) throw InvalidConfigError("cannot open " + opts.coeffs_file);
        std::stringstream buffer;
        buffer << in.rdbuf();
        std::string text = buffer.str();
        // Accept either a JSON array or a plain comma/whitespace list.
        const auto parsed = nlohmann::json::parse(text, nullptr, false);
        if (parsed.is_array()) {
            std::vector<double> c;
            for (const auto& v : parsed) c.push_back(v.get<double>());
            if (c.size() < 2) throw InvalidConfigError("need at least two coefficients (a0 first)");
            return Polynomial(c);
        }
        for (auto& ch : text)
            if (ch == '\n' || ch == ' ' || ch == '\t') ch = ',';
        return Polynomial(parse_coeff_list(text));
    }
    if (opts.coeffs.empty()) throw InvalidConfigError("pass --coeffs or --coeffs-file");
    return Polynomial(parse_coeff_list(opts.coeffs));
}

RunConfig build_config(const CommonOpts& opts) {
    RunConfig cfg;
    cfg.bits = opts.bits;
    cfg.seed = opts.seed;
    if (opts.shots > 0) {
        cfg.measurement = MeasurementMode::Shots;
        cfg.shots = opts.shots;
    }
    cfg.init = opts.init == "eigenstate" ? InitKind::Eigenstate : InitKind::MaximallyMixed;
    if (opts.init != "eigenstate" && opts.init != "mixed")
        throw InvalidConfigError("--init must be mixed or eigenstate");
    cfg.residual_tol = opts.tolerance;
    if (opts.mode == "x")
        cfg.mode_override = Mode::XMode;
    else if (opts.mode == "recip")
        cfg.mode_override = Mode::RecipXMode;
    else if (opts.mode != "auto")
        throw InvalidConfigError("--mode must be auto, x or recip");
    return cfg;
}

ordered_json complex_json(const Complex& z) {
    return ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

ordered_json measurement_json(const CommonOpts& opts) {
    if (opts.shots > 0) return ordered_json{{"shots", opts.shots}, {"seed", opts.seed}};
    return "exact";
}

void emit(const ordered_json& report, const CommonOpts& opts) {
    if (opts.text_out && !opts.json_out)
        std::cout << qroots_cli::dump_text(report);
    else
        std::cout << qroots_cli::dump_canonical(report);
}

int cmd_roots(const CommonOpts& opts) {
    const Polynomial input = load_polynomial(opts);
    const RunConfig cfg = build_config(opts);
    const Polynomial norm_p = normalize(input);
    const std::vector<RootEstimate> estimates = find_all_roots(norm_p, cfg);

    ordered_json report;
    report["schema"] = kSchema;
    report["command"] = "roots";
    report["input"] = ordered_json{{"coefficients", norm_p.coeffs},
                                   {"bits", opts.bits},
                                   {"mode", opts.mode},
                                   {"measurement", measurement_json(opts)},
                                   {"init", opts.init},
                                   {"tolerance", opts.tolerance < 0.0 ? ordered_json("auto")
                                                                      : ordered_json(opts.tolerance)}};

    bool all_ok = true;
    ordered_json roots = ordered_json::array();
    std::vector<Complex> found;
    for (const auto& est : estimates) {
        ordered_json r;
        r["re"] = est.root.real();
        r["im"] = est.root.imag();
        r["magnitude"] = est.magnitude;
        r["phase"] = est.omega;
        r["phase_bits"] = est.bits;
        r["residual"] = est.residual;
        r["conjugate_alternative"] =
            est.conjugate_alternative ? complex_json(*est.conjugate_alternative) : ordered_json(nullptr);
        r["method"] = est.method;
        r["accepted"] = est.accepted;
        if (!est.note.empty()) r["note"] = est.note;
        roots.push_back(std::move(r));
        if (est.method != "failed") found.push_back(est.root);
        all_ok = all_ok && est.accepted;
    }
    report["roots"] = std::move(roots);

    ordered_json rounds = ordered_json::array();
    int round_index = 0;
    for (const auto& est : estimates) {
        if (est.method == "conjugate" || est.method == "failed") continue;
        ordered_json iterations = ordered_json::array();
        for (const auto& st : est.iterations)
            iterations.push_back(ordered_json{{"k", st.k},
                                              {"L", st.L},
                                              {"theta", st.theta},
                                              {"p0", st.p0},
                                              {"p1", st.p1},
                                              {"bit", st.bit},
                                              {"degenerate", st.degenerate},
                                              {"r_power", st.r_power}});
        rounds.push_back(ordered_json{{"round", ++round_index},
                                      {"method", est.method},
                                      {"mode", est.mode == Mode::XMode ? "x" : "recip"},
                                      {"mu", est.mu},
                                      {"m", est.m},
                                      {"g", est.g},
                                      {"pad_count", est.pad_count},
                                      {"iterations", std::move(iterations)}});
    }
    ordered_json diagnostics;
    if (!estimates.empty()) {
        diagnostics["mode"] = estimates.front().mode == Mode::XMode ? "x" : "recip";
        diagnostics["mu"] = estimates.front().mu;
        diagnostics["m"] = estimates.front().m;
        diagnostics["g"] = estimates.front().g;
        diagnostics["pad_count"] = estimates.front().pad_count;
    }
    diagnostics["rounds"] = std::move(rounds);
    report["diagnostics"] = std::move(diagnostics);

    const OracleResult oracle = find_roots(norm_p, 1e-12, opts.oracle_max_iter);
    ordered_json oracle_roots = ordered_json::array();
    for (const auto& r : oracle.roots) oracle_roots.push_back(complex_json(r));
    // greedy nearest matching of the estimates onto the oracle multiset
    std::vector<Complex> pool = oracle.roots;
    double pairing = 0.0;
    for (const auto& f : found) {
        if (pool.empty()) break;
        std::size_t best = 0;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (std::abs(f - pool[i]) < best_dist) {
                best_dist = std::abs(f - pool[i]);
                best = i;
            }
        pairing = std::max(pairing, best_dist);
        pool.erase(pool.begin() + best);
    }
    report["oracle"] =
        ordered_json{{"roots", std::move(oracle_roots)}, {"max_pairing_error", pairing}};
    report["ok"] = all_ok;

    emit(report, opts);
    return all_ok ? 0 : 3;
}

int cmd_oracle(const CommonOpts& opts) {
    const Polynomial input = load_polynomial(opts);
    const double tol = opts.tolerance < 0.0 ? 1e-12 : opts.tolerance;

    ordered_json report;
    report["schema"] = kSchema;
    report["command"] = "oracle";
    report["input"] = ordered_json{{"coefficients", normalize(input).coeffs}, {"tolerance", tol}};
    int code = 0;
    OracleResult res;
    try {
        res = find_roots(input, tol, opts.oracle_max_iter);
    } catch (const NoConvergenceError& e) {
        res = e.best;
        report["error"] = e.what();
        code = 3;
    }
    ordered_json roots = ordered_json::array();
    for (const auto& r : res.roots) roots.push_back(complex_json(r));
    report["roots"] = std::move(roots);
    report["max_residual"] = res.max_residual;
    report["iterations_used"] = res.iterations_used;
    report["ok"] = code == 0;
    emit(report, opts);
    return code;
}

int cmd_prc_verify(const CommonOpts& opts) {
    const Polynomial input = load_polynomial(opts);
    const Polynomial norm_p = normalize(input);
    const auto [padded, pad] = pad_to_power_of_two(norm_p);
    Mode mode = select_mode(padded);
    if (opts.mode == "x") mode = Mode::XMode;
    if (opts.mode == "recip") mode = Mode::RecipXMode;
    const ScaledSystem sys = scale(padded, mode);
    const PrcCircuit circ = build_prc(sys);
    const EffectiveOperator eff = effective_operator(circ, sys);

    auto matrix_json = [](const ComplexMatrix& mat) {
        ordered_json rows = ordered_json::array();
        for (std::size_t r = 0; r < mat.dim(); ++r) {
            ordered_json row = ordered_json::array();
            for (std::size_t c = 0; c < mat.dim(); ++c) row.push_back(complex_json(mat(r, c)));
            rows.push_back(std::move(row));
        }
        return rows;
    };

    ordered_json report;
    report["schema"] = kSchema;
    report["command"] = "prc-verify";
    report["input"] = ordered_json{{"coefficients", norm_p.coeffs},
                                   {"mode", mode == Mode::XMode ? "x" : "recip"},
                                   {"pad_count", pad}};
    report["m"] = sys.m;
    report["mu"] = sys.mu;
    report["g"] = eff.g;
    report["gate_count"] = circ.gates.size();
    report["a_eff"] = matrix_json(eff.matrix);
    report["modified_companion"] = matrix_json(eff.reference);
    report["max_deviation"] = eff.matrix.max_abs_diff(eff.reference.scaled(eff.g));
    report["ok"] = true;
    emit(report, opts);
    return 0;
}

int cmd_gates(int m, const CommonOpts& opts) {
    const OpLedger ledger = count_circuit(m);
    ordered_json report;
    report["schema"] = kSchema;
    report["command"] = "gates";
    report["m"] = ledger.m;
    report["cyclic_swap"] = ledger.cyclic_swap;
    report["formation"] = ledger.formation;
    report["combination"] = ledger.combination;
    report["branch_swap"] = ledger.branch_swap;
    report["scaling"] = ledger.scaling;
    report["total"] = ledger.total;
    report["note"] = "counting model; multi-controlled gates assume one reusable work qubit";
    emit(report, opts);
    return 0;
}

int cmd_compare(const std::vector<int>& ns, const std::vector<int>& bs, const CommonOpts& opts) {
    const auto rows = compare_report(ns, bs);
    ordered_json report;
    report["schema"] = kSchema;
    report["command"] = "compare";
    ordered_json table = ordered_json::array();
    for (const auto& row : rows)
        table.push_back(ordered_json{{"n", row.n},
                                     {"b", row.b},
                                     {"quantum", row.quantum},
                                     {"classical", row.classical},
                                     {"ratio", row.ratio},
                                     {"quantum_wins", row.quantum_wins}});
    report["table"] = std::move(table);
    emit(report, opts);
    return 0;
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool wants_poly) {
    if (wants_poly) {
        cmd->add_option("--coeffs", opts.coeffs, "coefficients a0,a1,...,an (low degree first)");
        cmd->add_option("--coeffs-file", opts.coeffs_file, "file with a JSON array or comma list");
    }
    cmd->add_flag("--json", opts.json_out, "JSON output (default)");
    cmd->add_flag("--text", opts.text_out, "aligned text output");
    cmd->add_option("--tolerance", opts.tolerance, "residual tolerance (default: auto)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polynomial root finder driven by a simulated phase-estimation circuit"};
    app.require_subcommand(1);
    CommonOpts opts;

    auto* roots = app.add_subcommand("roots", "run the full estimation and deflation pipeline");
    add_common(roots, opts, true);
    roots->add_option("--bits", opts.bits, "phase bit precision b");
    roots->add_option("--mode", opts.mode, "auto, x or recip");
    roots->add_flag("--exact", opts.exact, "exact probabilities (default)");
    roots->add_option("--shots", opts.shots, "sampled measurement with this many shots")
        ->check(CLI::PositiveNumber);
    roots->add_option("--seed", opts.seed, "sampling seed");
    roots->add_option("--init", opts.init, "mixed or eigenstate");

    auto* oracle = app.add_subcommand("oracle", "classical root finder only");
    add_common(oracle, opts, true);
    oracle->add_option("--max-iter", opts.oracle_max_iter, "iteration cap");

    auto* prc = app.add_subcommand("prc-verify", "extract and check the post-selected operator");
    add_common(prc, opts, true);
    prc->add_option("--mode", opts.mode, "auto, x or recip");

    int gates_m = 1;
    auto* gates = app.add_subcommand("gates", "basic-operation counts for one circuit application");
    add_common(gates, opts, false);
    gates->add_option("--m", gates_m, "number of main qubits")->required();

    std::vector<int> compare_n, compare_b;
    auto* compare = app.add_subcommand("compare", "quantum vs classical operation-count model");
    add_common(compare, opts, false);
    compare->add_option("--n", compare_n, "polynomial degrees (powers of two)")
        ->required()
        ->delimiter(',');
    compare->add_option("--b", compare_b, "bit precisions")->required()->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (roots->parsed()) return cmd_roots(opts);
        if (oracle->parsed()) return cmd_oracle(opts);
        if (prc->parsed()) return cmd_prc_verify(opts);
        if (gates->parsed()) return cmd_gates(gates_m, opts);
        if (compare->parsed()) return cmd_compare(compare_n, compare_b, opts);
    } catch (const InvalidConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ZeroPolynomialError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConstantPolynomialError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

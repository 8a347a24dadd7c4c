#include "qinvert/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qinvert/clock.hpp"
#include "qinvert/io.hpp"
#include "qinvert/observables.hpp"
#include "qinvert/phase_est.hpp"
#include "qinvert/pipeline.hpp"

namespace qinvert::cli {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Flat JSON object with insertion-ordered keys and 17-significant-digit
/// floats, so identical runs serialize byte-identically.
class JsonWriter {
public:
    void field(const std::string& key, double v) { add(key, fmt17(v)); }
    void field(const std::string& key, long v) { add(key, std::to_string(v)); }
    void field(const std::string& key, bool v) { add(key, v ? "true" : "false"); }
    void field(const std::string& key, const std::string& v) { add(key, '"' + v + '"'); }

    std::string str() const { return body_.empty() ? "{}\n" : "{" + body_ + "\n}\n"; }

private:
    void add(const std::string& key, const std::string& value) {
        body_ += body_.empty() ? "\n" : ",\n";
        body_ += "  \"" + key + "\": " + value;
    }
    std::string body_;
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    out << text;
    if (!path.empty()) {
        std::ofstream f(path);
        if (!f) throw ParseError("cannot write '" + path + "'", 0);
        f << text;
    }
}

FilterMode parse_mode(const std::string& mode) {
    if (mode == "filtered") return FilterMode::kFiltered;
    if (mode == "simple") return FilterMode::kSimple;
    throw DomainError("mode must be 'filtered' or 'simple'");
}

SolveConfig build_config(double kappa, double epsilon, double t0_const, double t0_override,
                         Index clock_override, const std::string& mode) {
    const FilterMode fm = parse_mode(mode);
    if (t0_override > 0.0 && clock_override > 0) {
        return SolveConfig::with_clock(kappa, t0_override, clock_override, t0_const, fm);
    }
    if (t0_override > 0.0) {
        return SolveConfig::with_time(kappa, t0_override, t0_const, fm);
    }
    return SolveConfig::make(kappa, epsilon, t0_const, fm);
}

void add_solve_fields(JsonWriter& j, const SolveReport& rep) {
    j.field("kappa", rep.kappa);
    j.field("mode", rep.mode);
    j.field("t0", rep.t0);
    j.field("clock_dim", rep.clock_dim);
    j.field("distance", rep.distance);
    j.field("distance_well_ill", rep.distance_well_ill);
    j.field("distance_no_postselect", rep.distance_no_postselect);
    j.field("p_tilde", rep.p_tilde);
    j.field("p_exact", rep.p_exact);
    j.field("p_tilde_well_ill", rep.p_tilde_well_ill);
    j.field("p_exact_well_ill", rep.p_exact_well_ill);
    j.field("ill_weight_raw", rep.ill_weight_raw);
    j.field("ill_weight_estimate", rep.ill_weight_estimate);
    j.field("repetitions", rep.repetitions);
    j.field("amplified", rep.amplified);
    j.field("amplify_success", rep.amplify_success);
}

void dump_state_file(const QuantumState& state, const std::string& path) {
    if (path.empty()) return;
    std::ofstream f(path);
    if (!f) throw ParseError("cannot write '" + path + "'", 0);
    dump_state(state, f);
}

struct CsvWriter {
    std::string text;
    void header(const std::string& h) { text += h + "\n"; }
    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) text += ",";
            text += fmt17(values[i]);
        }
        text += "\n";
    }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact statevector laboratory for quantum matrix inversion"};
    app.name("qinvert");
    app.require_subcommand(1);
    std::function<void()> action;

    // ---- solve ----------------------------------------------------------
    {
        auto* cmd = app.add_subcommand(
            "solve", "invert a Hermitian system and compare with the exact filter oracle");
        auto matrix = std::make_shared<std::string>();
        auto rhs = std::make_shared<std::string>();
        auto report = std::make_shared<std::string>();
        auto dump = std::make_shared<std::string>();
        auto mode = std::make_shared<std::string>("filtered");
        auto kappa = std::make_shared<double>(0.0);
        auto epsilon = std::make_shared<double>(0.1);
        auto t0_const = std::make_shared<double>(10.0);
        auto t0 = std::make_shared<double>(0.0);
        auto clock = std::make_shared<Index>(0);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto amplify = std::make_shared<bool>(false);
        cmd->add_option("--matrix", *matrix, "system matrix (sparse Hermitian format)")
            ->required();
        cmd->add_option("--rhs", *rhs, "right-hand side (vector format)")->required();
        cmd->add_option("--kappa", *kappa, "condition number cutoff")->required();
        cmd->add_option("--epsilon", *epsilon, "target error (sets t0 = t0-const * kappa / epsilon)");
        cmd->add_option("--t0-const", *t0_const, "constant in the t0 derivation");
        cmd->add_option("--t0", *t0, "explicit evolution time (overrides --epsilon)");
        cmd->add_option("--T", *clock, "explicit clock dimension (power of two)");
        cmd->add_option("--mode", *mode, "rotation family: filtered | simple");
        cmd->add_option("--seed", *seed, "random seed")->required();
        cmd->add_option("--report", *report, "write the JSON report here");
        cmd->add_option("--dump-state", *dump, "write the post-selected state dump here");
        cmd->add_flag("--amplify", *amplify, "run the amplitude-amplification schedule");
        cmd->callback([=, &out]() {
            const SparseHermitianMatrix a = load_sparse_matrix(*matrix);
            const ComplexVector b = load_vector(*rhs);
            SolveConfig cfg = build_config(*kappa, *epsilon, *t0_const, *t0, *clock, *mode);
            cfg.seed = *seed;
            cfg.run_amplification = *amplify;
            const SolveReport rep = solve(a, b, cfg);
            JsonWriter j;
            j.field("command", std::string("solve"));
            j.field("matrix", *matrix);
            j.field("rhs", *rhs);
            j.field("seed", static_cast<long>(*seed));
            j.field("epsilon", cfg.epsilon);
            j.field("t0_const", cfg.t0_const);
            add_solve_fields(j, rep);
            emit(j.str(), *report, out);
            dump_state_file(rep.x_tilde, *dump);
        });
    }

    // ---- solve-general --------------------------------------------------
    {
        auto* cmd = app.add_subcommand(
            "solve-general",
            "minimum-norm solve of a rectangular or non-Hermitian system (exact spectral route)");
        auto matrix = std::make_shared<std::string>();
        auto rhs = std::make_shared<std::string>();
        auto report = std::make_shared<std::string>();
        auto dump = std::make_shared<std::string>();
        auto mode = std::make_shared<std::string>("filtered");
        auto kappa = std::make_shared<double>(0.0);
        cmd->add_option("--matrix", *matrix, "system matrix (dense format)")->required();
        cmd->add_option("--rhs", *rhs, "right-hand side (vector format)")->required();
        cmd->add_option("--kappa", *kappa, "cutoff (default: cover all nonzero singular values)");
        cmd->add_option("--mode", *mode, "rotation family: filtered | simple");
        cmd->add_option("--report", *report, "write the JSON report here");
        cmd->add_option("--dump-state", *dump, "write the solution state dump here");
        cmd->callback([=, &out]() {
            const ComplexMatrix a = load_dense_matrix(*matrix);
            const ComplexVector b = load_vector(*rhs);
            GeneralSolveOptions options;
            if (*kappa > 0.0) options.kappa = *kappa;
            options.mode = parse_mode(*mode);
            const SolveReport rep = solve_general(a, b, options);
            JsonWriter j;
            j.field("command", std::string("solve-general"));
            j.field("matrix", *matrix);
            j.field("rhs", *rhs);
            j.field("rows", a.rows());
            j.field("cols", a.cols());
            add_solve_fields(j, rep);
            emit(j.str(), *report, out);
            if (!dump->empty()) {
                dump_state_file(
                    QuantumState(RegisterLayout({{kSystemRegister, a.cols()}}),
                                 rep.x_exact_system),
                    *dump);
            }
        });
    }

    // ---- phase-scan ------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("phase-scan",
                                       "tabulate the phase-estimation coefficient kernel");
        auto clock = std::make_shared<Index>(128);
        auto dmin = std::make_shared<double>(0.0);
        auto dmax = std::make_shared<double>(0.0);
        auto steps = std::make_shared<long>(100);
        auto path = std::make_shared<std::string>();
        cmd->add_option("--T", *clock, "clock dimension")->required();
        cmd->add_option("--delta-min", *dmin, "start of the detuning grid")->required();
        cmd->add_option("--delta-max", *dmax, "end of the detuning grid")->required();
        cmd->add_option("--steps", *steps, "number of grid points");
        cmd->add_option("--out", *path, "write the CSV here");
        cmd->callback([=, &out]() {
            if (*steps < 1) throw DomainError("steps must be positive");
            CsvWriter csv;
            csv.header("delta,T,re_alpha,im_alpha,alpha_sq,bound");
            for (long i = 0; i < *steps; ++i) {
                const double frac = (*steps == 1) ? 0.0
                                                  : static_cast<double>(i) /
                                                        static_cast<double>(*steps - 1);
                const double delta = *dmin + (*dmax - *dmin) * frac;
                const Complex alpha = alpha_kernel(delta, *clock);
                const double bound =
                    64.0 * M_PI * M_PI / (delta * delta * delta * delta);
                csv.row({delta, static_cast<double>(*clock), alpha.real(), alpha.imag(),
                         std::norm(alpha), bound});
            }
            emit(csv.text, *path, out);
        });
    }

    // ---- filter-scan -----------------------------------------------------
    {
        auto* cmd = app.add_subcommand("filter-scan", "tabulate the filter pair f, g");
        auto kappa = std::make_shared<double>(0.0);
        auto mode = std::make_shared<std::string>("filtered");
        auto lmin = std::make_shared<double>(0.0);
        auto lmax = std::make_shared<double>(1.0);
        auto steps = std::make_shared<long>(200);
        auto path = std::make_shared<std::string>();
        cmd->add_option("--kappa", *kappa, "condition number cutoff")->required();
        cmd->add_option("--mode", *mode, "rotation family: filtered | simple");
        cmd->add_option("--lambda-min", *lmin, "start of the eigenvalue grid");
        cmd->add_option("--lambda-max", *lmax, "end of the eigenvalue grid");
        cmd->add_option("--steps", *steps, "number of grid points");
        cmd->add_option("--out", *path, "write the CSV here");
        cmd->callback([=, &out]() {
            if (*steps < 2) throw DomainError("steps must be at least 2");
            const FilterSpec spec = parse_mode(*mode) == FilterMode::kFiltered
                                        ? FilterSpec::filtered(*kappa)
                                        : FilterSpec::simple(*kappa);
            CsvWriter csv;
            csv.header("lambda,f,g,fsq_plus_gsq,h_prime_norm");
            const double h = 1e-6;
            for (long i = 0; i < *steps; ++i) {
                const double lam = *lmin + (*lmax - *lmin) * static_cast<double>(i) /
                                               static_cast<double>(*steps - 1);
                const double f = filter_f(lam, spec);
                const double g = filter_g(lam, spec);
                const double hp = (flag_state(lam + h, spec).amplitudes -
                                   flag_state(lam - h, spec).amplitudes)
                                      .norm() /
                                  (2.0 * h);
                csv.row({lam, f, g, f * f + g * g, hp});
            }
            emit(csv.text, *path, out);
        });
    }

    // ---- error-scan ------------------------------------------------------
    {
        auto* cmd = app.add_subcommand(
            "error-scan", "distance to the exact filter oracle over a list of evolution times");
        auto matrix = std::make_shared<std::string>();
        auto rhs = std::make_shared<std::string>();
        auto kappa = std::make_shared<double>(0.0);
        auto mode = std::make_shared<std::string>("filtered");
        auto t0_list = std::make_shared<std::vector<double>>();
        auto path = std::make_shared<std::string>();
        cmd->add_option("--matrix", *matrix, "system matrix (sparse Hermitian format)")
            ->required();
        cmd->add_option("--rhs", *rhs, "right-hand side (vector format)")->required();
        cmd->add_option("--kappa", *kappa, "condition number cutoff")->required();
        cmd->add_option("--t0", *t0_list, "comma-separated evolution times")
            ->required()
            ->delimiter(',');
        cmd->add_option("--mode", *mode, "rotation family: filtered | simple");
        cmd->add_option("--out", *path, "write the CSV here");
        cmd->callback([=, &out]() {
            const SparseHermitianMatrix a = load_sparse_matrix(*matrix);
            const ComplexVector b = load_vector(*rhs);
            CsvWriter csv;
            csv.header(
                "t0,clock_dim,distance,distance_well_ill,distance_no_postselect,p_exact,p_tilde");
            for (double t0 : *t0_list) {
                SolveConfig cfg =
                    SolveConfig::with_time(*kappa, t0, 10.0, parse_mode(*mode));
                const SolveReport rep = solve(a, b, cfg);
                csv.row({t0, static_cast<double>(rep.clock_dim), rep.distance,
                         rep.distance_well_ill, rep.distance_no_postselect, rep.p_exact,
                         rep.p_tilde});
            }
            emit(csv.text, *path, out);
        });
    }

    // ---- reduce ----------------------------------------------------------
    {
        auto* cmd = app.add_subcommand(
            "reduce", "build the clock-inversion matrices of a circuit");
        auto circuit_path = std::make_shared<std::string>();
        auto emit_what = std::make_shared<std::string>("stats");
        auto path = std::make_shared<std::string>();
        auto matrix_out = std::make_shared<std::string>();
        auto rhs_out = std::make_shared<std::string>();
        cmd->add_option("--circuit", *circuit_path, "circuit file")->required();
        cmd->add_option("--emit", *emit_what, "matrix | stats")
            ->check(CLI::IsMember({"matrix", "stats"}));
        cmd->add_option("--out", *path, "write the JSON here");
        cmd->add_option("--out-matrix", *matrix_out,
                        "write the normalized Hermitian wrapper (sparse format) here");
        cmd->add_option("--out-rhs", *rhs_out, "write the matching right-hand side here");
        cmd->callback([=, &out]() {
            const ClockCircuit circuit = load_circuit(*circuit_path);
            const ClockMatrices mats = build_inversion_matrix(circuit);
            const Index t_count = circuit.gate_count();
            if (*emit_what == "matrix") {
                const double scale = spectral_norm(mats.hermitian);
                const SparseHermitianMatrix scaled =
                    SparseHermitianMatrix::from_dense(mats.hermitian / scale);
                std::ostringstream matrix_text;
                write_sparse_matrix(scaled, matrix_text);
                if (matrix_out->empty()) {
                    out << matrix_text.str();
                } else {
                    emit(matrix_text.str(), *matrix_out, out);
                }
                if (!rhs_out->empty()) {
                    ComplexVector rhs = ComplexVector::Zero(mats.hermitian.rows());
                    rhs[0] = 1.0;
                    std::ofstream f(*rhs_out);
                    if (!f) throw ParseError("cannot write '" + *rhs_out + "'", 0);
                    write_vector(rhs, f);
                }
                JsonWriter j;
                j.field("command", std::string("reduce"));
                j.field("emit", std::string("matrix"));
                j.field("dim", mats.hermitian.rows());
                j.field("scale", scale);
                j.field("kappa", mats.kappa);
                emit(j.str(), *path, out);
            } else {
                Rng rng(0);
                const ClockSimulationStats stats =
                    simulate_via_inversion(circuit, 0, rng, /*with_embedding=*/true);
                const FirstQubitEmbedding emb = build_first_qubit_embedding(circuit);
                JsonWriter j;
                j.field("command", std::string("reduce"));
                j.field("emit", std::string("stats"));
                j.field("qubits", static_cast<long>(circuit.qubits));
                j.field("gates", t_count);
                j.field("clock_dim", 3 * t_count);
                j.field("unitary_dim", mats.clock_unitary.rows());
                j.field("hermitian_dim", mats.hermitian.rows());
                j.field("embedding_dim", emb.c_hermitian.rows());
                j.field("kappa_hermitian", mats.kappa);
                j.field("kappa_embedding", emb.kappa);
                j.field("two_t_bound", 2.0 * static_cast<double>(t_count));
                j.field("p_window_exact", stats.p_window_exact);
                j.field("conditional_fidelity", stats.conditional_fidelity);
                j.field("first_qubit_one_exact", stats.first_qubit_one_exact);
                j.field("first_qubit_one_direct", stats.first_qubit_one_direct);
                j.field("embedding_accept_exact", stats.embedding_accept_exact);
                emit(j.str(), *path, out);
            }
        });
    }

    // ---- simulate-circuit -------------------------------------------------
    {
        auto* cmd = app.add_subcommand(
            "simulate-circuit", "simulate a circuit by matrix inversion and sample the output");
        auto circuit_path = std::make_shared<std::string>();
        auto shots = std::make_shared<long>(10000);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto report = std::make_shared<std::string>();
        cmd->add_option("--circuit", *circuit_path, "circuit file")->required();
        cmd->add_option("--shots", *shots, "number of samples");
        cmd->add_option("--seed", *seed, "random seed")->required();
        cmd->add_option("--report", *report, "write the JSON report here");
        cmd->callback([=, &out]() {
            const ClockCircuit circuit = load_circuit(*circuit_path);
            Rng rng(*seed);
            const ClockSimulationStats stats =
                simulate_via_inversion(circuit, *shots, rng, /*with_embedding=*/true);
            JsonWriter j;
            j.field("command", std::string("simulate-circuit"));
            j.field("circuit", *circuit_path);
            j.field("shots", *shots);
            j.field("seed", static_cast<long>(*seed));
            j.field("p_window_exact", stats.p_window_exact);
            j.field("conditional_fidelity", stats.conditional_fidelity);
            j.field("first_qubit_one_exact", stats.first_qubit_one_exact);
            j.field("first_qubit_one_direct", stats.first_qubit_one_direct);
            j.field("m0_rate_sampled", stats.m0_rate_sampled);
            j.field("window_hits", stats.window_hits);
            j.field("embedding_accept_exact", stats.embedding_accept_exact);
            emit(j.str(), *report, out);
        });
    }

    // ---- swap-test ---------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("swap-test",
                                       "overlap estimate between two state dumps");
        auto state_a = std::make_shared<std::string>();
        auto state_b = std::make_shared<std::string>();
        auto shots = std::make_shared<long>(10000);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto report = std::make_shared<std::string>();
        cmd->add_option("--state-a", *state_a, "first state dump")->required();
        cmd->add_option("--state-b", *state_b, "second state dump")->required();
        cmd->add_option("--shots", *shots, "number of samples");
        cmd->add_option("--seed", *seed, "random seed")->required();
        cmd->add_option("--report", *report, "write the JSON report here");
        cmd->callback([=, &out]() {
            std::ifstream fa(*state_a), fb(*state_b);
            if (!fa) throw ParseError("cannot open '" + *state_a + "'", 0);
            if (!fb) throw ParseError("cannot open '" + *state_b + "'", 0);
            const QuantumState a = load_state(fa);
            const QuantumState b = load_state(fb);
            Rng rng(*seed);
            const SwapTestResult res = swap_test(a, b, *shots, rng);
            JsonWriter j;
            j.field("command", std::string("swap-test"));
            j.field("shots", res.shots);
            j.field("seed", static_cast<long>(*seed));
            j.field("overlap_sq_exact", res.overlap_sq_exact);
            j.field("accept_prob_exact", res.accept_prob_exact);
            j.field("accept_frequency", res.accept_frequency);
            j.field("overlap_sq_estimate", res.overlap_sq_estimate);
            emit(j.str(), *report, out);
        });
    }

    // ---- observe -----------------------------------------------------------
    {
        auto* cmd = app.add_subcommand(
            "observe", "solve, then estimate an observable on the solution state");
        auto matrix = std::make_shared<std::string>();
        auto rhs = std::make_shared<std::string>();
        auto m_path = std::make_shared<std::string>();
        auto first_qubit = std::make_shared<bool>(false);
        auto kappa = std::make_shared<double>(0.0);
        auto epsilon = std::make_shared<double>(0.1);
        auto t0_const = std::make_shared<double>(10.0);
        auto t0 = std::make_shared<double>(0.0);
        auto mode = std::make_shared<std::string>("filtered");
        auto shots = std::make_shared<long>(10000);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto report = std::make_shared<std::string>();
        cmd->add_option("--matrix", *matrix, "system matrix (sparse Hermitian format)")
            ->required();
        cmd->add_option("--rhs", *rhs, "right-hand side (vector format)")->required();
        cmd->add_option("--M", *m_path, "observable (dense matrix format)");
        cmd->add_flag("--M-first-qubit", *first_qubit,
                      "use the canonical first-qubit projector");
        cmd->add_option("--kappa", *kappa, "condition number cutoff")->required();
        cmd->add_option("--epsilon", *epsilon, "target error");
        cmd->add_option("--t0-const", *t0_const, "constant in the t0 derivation");
        cmd->add_option("--t0", *t0, "explicit evolution time");
        cmd->add_option("--mode", *mode, "rotation family: filtered | simple");
        cmd->add_option("--shots", *shots, "number of samples");
        cmd->add_option("--seed", *seed, "random seed")->required();
        cmd->add_option("--report", *report, "write the JSON report here");
        cmd->callback([=, &out]() {
            const SparseHermitianMatrix a = load_sparse_matrix(*matrix);
            const ComplexVector b = load_vector(*rhs);
            if (m_path->empty() == !*first_qubit) {
                throw DomainError("choose exactly one of --M and --M-first-qubit");
            }
            const ComplexMatrix m =
                *first_qubit ? first_qubit_projector(a.dim()) : load_dense_matrix(*m_path);
            SolveConfig cfg = build_config(*kappa, *epsilon, *t0_const, *t0, 0, *mode);
            cfg.seed = *seed;
            const SolveReport rep = solve(a, b, cfg);
            Rng rng(*seed);
            const ObservableEstimate est =
                estimate_observable(rep.x_tilde, kSystemRegister, m, *shots, rng);
            const ObservableEstimate exact_route =
                estimate_observable(rep.x_exact_system, m, 0, rng);
            JsonWriter j;
            j.field("command", std::string("observe"));
            j.field("shots", est.shots);
            j.field("seed", static_cast<long>(*seed));
            j.field("expectation_exact", est.exact);
            j.field("expectation_estimate", est.estimate);
            j.field("expectation_stderr", est.stderr_est);
            j.field("expectation_oracle", exact_route.exact);
            j.field("solve_distance", rep.distance);
            j.field("p_tilde", rep.p_tilde);
            emit(j.str(), *report, out);
        });
    }

    // ---- cost-model ---------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("cost-model",
                                       "analytic sparse-simulation cost evaluator");
        auto n_dim = std::make_shared<double>(0.0);
        auto sparsity = std::make_shared<double>(0.0);
        auto t0 = std::make_shared<double>(0.0);
        auto eps_h = std::make_shared<double>(0.0);
        auto report = std::make_shared<std::string>();
        cmd->add_option("--N", *n_dim, "matrix dimension")->required();
        cmd->add_option("--s", *sparsity, "row sparsity")->required();
        cmd->add_option("--t0", *t0, "evolution time")->required();
        cmd->add_option("--epsH", *eps_h, "simulation error budget")->required();
        cmd->add_option("--report", *report, "write the JSON report here");
        cmd->callback([=, &out]() {
            const double cost = hamiltonian_sim_cost(*n_dim, *sparsity, *t0, *eps_h);
            JsonWriter j;
            j.field("command", std::string("cost-model"));
            j.field("N", *n_dim);
            j.field("s", *sparsity);
            j.field("t0", *t0);
            j.field("epsH", *eps_h);
            j.field("cost", cost);
            emit(j.str(), *report, out);
        });
    }

    // subcommand callbacks run inside parse(), so every error funnels through here
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        return 0;
    } catch (const CLI::CallForHelp&) {
        const auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help());
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace qinvert::cli

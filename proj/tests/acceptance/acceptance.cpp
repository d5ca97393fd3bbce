// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "../unit/helpers.hpp"
#include "setbal/brute_force.hpp"
#include "setbal/entropy.hpp"
#include "setbal/harness.hpp"
#include "setbal/qaoa.hpp"
#include "setbal/qwoa.hpp"

using namespace setbal;
using testutil::DenseMatrix;

namespace {

int failures = 0;

void run_criterion(int number, const std::string& label, const std::function<bool(std::string&)>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %s  %s (%.1fs)%s%s\n", number, ok ? "PASS" : "FAIL", label.c_str(),
                seconds, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string run_cli(const std::string& args) {
    const std::string out_path = "/tmp/setbal_acceptance_out.txt";
    const std::string cmd = std::string(SETBAL_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
    if (std::system(cmd.c_str()) != 0) return "";
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main() {
    const SetBalancingInstance clinical = testutil::clinical_15x10();
    const SetBalancingInstance walk = testutil::walk_10x10();

    run_criterion(1, "golden QUBO coefficients (36, 64, constant 415)", [&](std::string&) {
        const BinaryProgram bp = to_binary_program(build_qubo(clinical));
        return bp.constant == 415.0 && bp.diagonal_coefficient(0) == 36.0 &&
               bp.cross_coefficient(0, 1) == 64.0;
    });

    run_criterion(2, "golden spectrum (min 4 with the known bicoloring)", [&](std::string& detail) {
        const Spectrum spec = enumerate_spectrum(walk);
        const std::uint64_t known = encode(testutil::walk_10x10_solution());
        const bool in_set = std::find(spec.argmin_indices.begin(), spec.argmin_indices.end(),
                                      known) != spec.argmin_indices.end();
        // Same answer through the CLI surface.
        const std::string out = run_cli(std::string("brute ") + SETBAL_DATA_DIR + "/walk_10x10.json");
        bool cli_ok = false;
        if (!out.empty()) {
            const auto j = nlohmann::json::parse(out);
            cli_ok = j["min_value"].get<double>() == 4.0;
        }
        detail = "argmins=" + std::to_string(spec.argmin_indices.size());
        return spec.min_value == 4.0 && in_set && cli_ok;
    });

    run_criterion(3, "QAOA samples energy <= 11 in >= 4 of 5 seeds", [&](std::string& detail) {
        const CostDiagonal diag = cost_diagonal(clinical);
        double uniform_mean = 0;
        for (double v : diag.values) uniform_mean += v;
        uniform_mean /= static_cast<double>(diag.dim());
        int hits = 0;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            OptimizerConfig config;  // 500 evals, initial angles all 0.5
            config.seed = seed;
            const QaoaRun run = optimize_qaoa(diag, MixerSpec{}, 3, config);
            if (run.distribution.expectation > uniform_mean) return false;
            double best = std::numeric_limits<double>::infinity();
            for (const auto& [x, count] : sample(run.distribution, 10000, derive_seed(seed, 101)))
                best = std::min(best, diag.values[x]);
            if (best <= 11.0) ++hits;
        }
        detail = "hits=" + std::to_string(hits) + "/5";
        return hits >= 4;
    });

    run_criterion(4, "mixer layers match dense generator products (both modes)", [&](std::string&) {
        std::mt19937_64 rng(404);
        for (MixerFamily family :
             {MixerFamily::X, MixerFamily::XY, MixerFamily::FullSwap, MixerFamily::RingSwap,
              MixerFamily::Grover, MixerFamily::WarmStart}) {
            for (MixerRealization mode :
                 {MixerRealization::GateDecomposition, MixerRealization::PauliExponential}) {
                for (int angle = 0; angle < 20; ++angle) {
                    const int n = 2 + static_cast<int>(rng() % 3);
                    const double beta = (uniform01(rng) - 0.5) * 6.28;
                    MixerSpec spec;
                    spec.family = family;
                    spec.realization = mode;
                    if (family == MixerFamily::WarmStart) {
                        Bicoloring sol;
                        sol.values.assign(n, 1);
                        spec.warm_start_solution = sol;
                    }
                    const DenseMatrix circuit = testutil::unitary_of(n, [&](StateVector st) {
                        return mixer_layer(std::move(st), beta, spec);
                    });
                    const DenseMatrix oracle = testutil::oracle_mixer_unitary(family, n, beta);
                    if (testutil::unitary_fidelity(circuit, oracle, std::size_t{1} << n) <= 1 - 1e-9)
                        return false;
                    if (family == MixerFamily::Grover) {
                        // The subset circuits must also reproduce the generator.
                        const DenseMatrix fig = testutil::unitary_of(n, [&](StateVector st) {
                            return grover_subset_circuit(std::move(st), beta, mode);
                        });
                        if (testutil::unitary_fidelity(fig, oracle, std::size_t{1} << n) <= 1 - 1e-9)
                            return false;
                    }
                }
            }
        }
        return true;
    });

    run_criterion(5, "200 compiled Pauli exponentials match dense exp(-i theta sigma)", [&](std::string&) {
        std::mt19937_64 rng(505);
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 1 + static_cast<int>(rng() % 4);
            PauliString sigma;
            sigma.n_qubits = n;
            for (int q = 0; q < n; ++q) sigma.letters.push_back(static_cast<Pauli>(rng() % 4));
            if (sigma.is_identity()) sigma.letters[static_cast<int>(rng() % n)] = Pauli::Z;
            const double theta = (uniform01(rng) - 0.5) * 6.28;
            const std::size_t dim = std::size_t{1} << n;
            const DenseMatrix circuit = testutil::unitary_of(n, [&](StateVector st) {
                return apply_pauli_exponential(std::move(st), sigma, theta);
            });
            const DenseMatrix dense =
                testutil::exp_involution(testutil::pauli_string_matrix(sigma), dim, -theta);
            if (testutil::unitary_fidelity(circuit, dense, dim) <= 1 - 1e-9) return false;
            const auto [cnots, singles] = gate_count(compile_pauli_exponential(sigma));
            if (cnots != 2 * (sigma.weight() - 1)) return false;
        }
        return true;
    });

    run_criterion(6, "closed-form walk equals dense Laplacian exponential", [&](std::string&) {
        std::mt19937_64 rng(606);
        for (int trial = 0; trial < 30; ++trial) {
            const int n = 2 + static_cast<int>(rng() % 3);
            const std::size_t dim = std::size_t{1} << n;
            WalkSpace space;
            space.n_qubits = n;
            space.feasible.assign(dim, 0);
            space.M = 0;
            for (auto& b : space.feasible) {
                b = uniform01(rng) < 0.5 ? 1 : 0;
                space.M += b;
            }
            if (space.M == 0) {
                space.feasible[0] = 1;
                space.M = 1;
            }
            DenseMatrix l(dim * dim, cplx(0, 0));
            for (std::size_t x = 0; x < dim; ++x)
                for (std::size_t y = 0; y < dim; ++y) {
                    if (!space.feasible[x] || !space.feasible[y]) continue;
                    l[x * dim + y] =
                        x == y ? cplx(static_cast<double>(space.M) - 1, 0) : cplx(-1, 0);
                }
            for (int rep = 0; rep < 20; ++rep) {
                const double t = uniform01(rng) * 2.0;
                DenseMatrix itl(l.size());
                for (std::size_t k = 0; k < l.size(); ++k) itl[k] = cplx(0, -t) * l[k];
                const DenseMatrix u = testutil::expm(itl, dim);
                const StateVector psi = testutil::random_state(n, rng);
                const StateVector closed = walk_unitary(psi, t, space);
                const auto dense = testutil::matvec(u, psi.amplitudes);
                for (std::size_t x = 0; x < dim; ++x)
                    if (std::abs(closed.amplitudes[x] - dense[x]) > 1e-9) return false;
            }
            const StateVector fixed = uniform_feasible_state(space);
            const StateVector moved = walk_unitary(fixed, uniform01(rng) * 3, space);
            for (std::size_t x = 0; x < dim; ++x)
                if (std::abs(moved.amplitudes[x] - fixed.amplitudes[x]) > 1e-9) return false;
        }
        return true;
    });

    run_criterion(7, "QWOA depth trend (P[f=4] grows, > 0.5 at depth 60)", [&](std::string& detail) {
        const CostDiagonal diag = cost_diagonal(walk);
        const WalkSpace space = WalkSpace::full(10);
        const std::vector<int> depths = {5, 8, 12, 16, 20, 50, 60};
        int over_half = 0;
        bool trend_ok = true;
        std::ostringstream note;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            double p5 = 0, p60 = 0;
            for (int depth : depths) {
                OptimizerConfig config;
                config.max_evals = qwoa_default_max_evals(depth);
                const QwoaRun run = optimize_qwoa(diag, space, depth, config, 4, seed);
                double pmin = 0;
                for (std::uint64_t x = 0; x < diag.dim(); ++x)
                    if (diag.values[x] == 4.0) pmin += run.distribution.probabilities[x];
                if (depth == 5) p5 = pmin;
                if (depth == 60) p60 = pmin;
            }
            if (p60 <= p5) trend_ok = false;
            if (p60 > 0.5) ++over_half;
            note << (seed > 1 ? " " : "") << "seed" << seed << ":P5=" << std::fixed
                 << std::setprecision(3) << p5 << ",P60=" << p60;
        }
        detail = note.str();
        return trend_ok && over_half >= 3;
    });

    run_criterion(8, "mixer sweep mean alpha >= 0.95 at sizes 6, 8, 10", [&](std::string& detail) {
        ExperimentConfig config;
        config.sizes = {{6, 6}, {8, 8}, {10, 10}};
        config.trials = 20;
        config.depth = 3;
        config.mixers = {MixerFamily::X};
        config.master_seed = 8;
        const auto rows = run_compare(config, 2);
        std::ostringstream note;
        bool ok = true;
        for (const auto& row : rows) {
            note << row.size_n << ":" << std::fixed << std::setprecision(3) << row.mean_alpha << " ";
            if (row.mean_alpha < 0.95 || row.failures > 0) ok = false;
        }
        detail = note.str();
        return ok;
    });

    run_criterion(9, "entropy module golden values and selector recomputation", [&](std::string&) {
        BinarySubmatrix quarter{1, 4, {1, 0, 0, 0}};
        if (std::abs(row_entropy(quarter) - 0.811278) > 1e-6) return false;
        for (int k = 0; k <= 200; ++k) {
            const double h = binary_entropy(k / 200.0);
            if (h < 0 || h > 1.0 + 1e-12) return false;
        }
        std::mt19937_64 rng(909);
        for (int trial = 0; trial < 20; ++trial) {
            const auto inst = testutil::random_instance(6, 6, rng);
            const Spectrum spec = enumerate_spectrum(inst);
            const auto candidates = spec.argmins(inst.n);
            const ScoreResult scores = score_candidates(inst, candidates);
            // Negation symmetry must be exact.
            for (const auto& b : candidates) {
                const ScoreResult pair = score_candidates(inst, {b, b.negated()});
                if (pair.reports[0].E != pair.reports[1].E) return false;
                if (pair.reports[0].D != pair.reports[1].D) return false;
                if (pair.reports[0].J != pair.reports[1].J) return false;
            }
            // Independent recomputation of the three selectors.
            std::size_t best_ratio = 0, best_radial = 0, best_combined = 0;
            double rmin = 1e300, dmin = 1e300, cmin = 1e300;
            bool any = false;
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                const auto part = partition_columns(inst, candidates[i]);
                const double h1 = row_entropy(part.positive), h2 = row_entropy(part.negative);
                const double e = h1 + h2, d = std::abs(h1 - h2);
                const double jv = objective(inst, candidates[i]);
                if (e <= 0) continue;
                any = true;
                const double ratio = d / e;
                const double radial = std::sqrt(jv * jv + d * d + 1.0 / (e * e));
                const double combined = std::sqrt(jv * jv + ratio * ratio);
                auto better = [&](double v, double cur, std::size_t cur_i) {
                    return v < cur ||
                           (v == cur && encode(candidates[i]) < encode(candidates[cur_i]));
                };
                if (better(ratio, rmin, best_ratio)) { rmin = ratio; best_ratio = i; }
                if (better(radial, dmin, best_radial)) { dmin = radial; best_radial = i; }
                if (better(combined, cmin, best_combined)) { cmin = combined; best_combined = i; }
            }
            if (!any) continue;
            if (scores.best_ratio != best_ratio || scores.best_radial != best_radial ||
                scores.best_combined != best_combined)
                return false;
        }
        return true;
    });

    run_criterion(10, "cost diagonal multiset equals brute-force histogram (50 instances)",
                  [&](std::string&) {
        std::mt19937_64 rng(1010);
        for (int trial = 0; trial < 50; ++trial) {
            const int n = 2 + static_cast<int>(rng() % 11);
            const int m = 1 + static_cast<int>(rng() % 10);
            const auto inst = testutil::random_instance(m, n, rng);
            const Spectrum spec = enumerate_spectrum(inst);
            const CostDiagonal diag = cost_diagonal(inst);
            std::map<double, std::uint64_t> hist;
            for (double v : diag.values) hist[v] += 1;
            if (hist != spec.histogram) return false;
            int odd_rows = 0;
            for (int i = 0; i < m; ++i) {
                int s = 0;
                for (int j = 0; j < n; ++j) s += inst.entry(i, j);
                odd_rows += s % 2;
            }
            if (spec.min_value < odd_rows) return false;
        }
        return true;
    });

    if (failures) {
        std::printf("%d criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}

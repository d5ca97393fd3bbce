#pragma once

// Quantum Walk Optimization Algorithm over the complete graph on feasible
// bicolorings, full-space or threshold-restricted (the modified method).
//
// The walk unitary uses the closed form of exp(-i*t*L) with
// L = M(I_F - |s_F><s_F|): no dense exponential at runtime. The optimizer
// loss runs in an exact energy-level compression (amplitudes of states with
// equal objective stay equal throughout the dynamics), and restart 0 starts
// from a deterministic greedy per-round construction; see optimize_qwoa.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <json.hpp>

#include "setbal/qaoa.hpp"

namespace setbal {

struct WalkSpace {
    int n_qubits = 0;
    std::vector<std::uint8_t> feasible;  // 2^n mask
    std::uint64_t M = 0;                 // number of feasible states

    static WalkSpace full(int n) {
        check_qubit_count(n);
        WalkSpace s;
        s.n_qubits = n;
        s.feasible.assign(std::uint64_t{1} << n, 1);
        s.M = std::uint64_t{1} << n;
        return s;
    }
    void validate() const {
        require(feasible.size() == (std::uint64_t{1} << n_qubits), "walk space: mask size");
        std::uint64_t count = 0;
        for (std::uint8_t b : feasible) count += b;
        require(count == M && M >= 1, "walk space: M inconsistent or empty");
    }
};

struct QwoaParams {
    std::vector<double> gammas;
    std::vector<double> times;

    int rounds() const { return static_cast<int>(gammas.size()); }
    void validate() const {
        require(gammas.size() == times.size(), "qwoa params: gammas and times length mismatch");
        for (double t : times) require(t >= 0, "qwoa params: times must be >= 0");
    }
};

/// U_Q(gamma): a_x <- a_x * exp(-i*gamma*f(x)) on every basis state; the
/// feasibility restriction lives in the walk, not the phase.
inline StateVector phase_unitary(StateVector state, double gamma, const CostDiagonal& diag,
                                 const WalkSpace&) {
    return cost_layer(std::move(state), gamma, diag);
}

/// U_W(t) = exp(-i*t*L) = |s_F><s_F| + e^{-i t M}(P_F - |s_F><s_F|) + (I - P_F).
inline StateVector walk_unitary(StateVector state, double t, const WalkSpace& space) {
    require(t >= 0, "walk: t must be >= 0");
    require(state.dim() == space.feasible.size(), "walk: shape mismatch");
    cplx mean(0, 0);
    for (std::uint64_t x = 0; x < state.amplitudes.size(); ++x)
        if (space.feasible[x]) mean += state.amplitudes[x];
    mean /= static_cast<double>(space.M);
    const cplx rot = std::polar(1.0, -t * static_cast<double>(space.M));
    const cplx keep = (1.0 - rot) * mean;
    for (std::uint64_t x = 0; x < state.amplitudes.size(); ++x)
        if (space.feasible[x]) state.amplitudes[x] = rot * state.amplitudes[x] + keep;
    return state;
}

/// |s_F>: uniform superposition over the feasible set.
inline StateVector uniform_feasible_state(const WalkSpace& space) {
    StateVector st;
    st.n_qubits = space.n_qubits;
    st.amplitudes.assign(space.feasible.size(), cplx(0, 0));
    const double amp = 1.0 / std::sqrt(static_cast<double>(space.M));
    for (std::uint64_t x = 0; x < st.amplitudes.size(); ++x)
        if (space.feasible[x]) st.amplitudes[x] = cplx(amp, 0);
    return st;
}

inline StateVector qwoa_state(const CostDiagonal& diag, const WalkSpace& space,
                              const QwoaParams& params) {
    params.validate();
    StateVector state = uniform_feasible_state(space);
    for (int j = 0; j < params.rounds(); ++j) {
        state = phase_unitary(std::move(state), params.gammas[j], diag, space);
        state = walk_unitary(std::move(state), params.times[j], space);
    }
    return state;
}

inline EnergyDistribution run_qwoa(const CostDiagonal& diag, const WalkSpace& space,
                                   const QwoaParams& params) {
    return make_distribution(qwoa_state(diag, space, params), diag);
}

inline EnergyDistribution run_qwoa(const SetBalancingInstance& inst, const WalkSpace& space,
                                   const QwoaParams& params) {
    return run_qwoa(cost_diagonal(inst), space, params);
}

/// Feasible set {x : f(x) <= threshold}.
inline WalkSpace threshold_subspace(const CostDiagonal& diag, double threshold) {
    WalkSpace space;
    space.n_qubits = diag.n_qubits;
    space.feasible.assign(diag.dim(), 0);
    for (std::uint64_t x = 0; x < diag.dim(); ++x) {
        if (diag.values[x] <= threshold) {
            space.feasible[x] = 1;
            ++space.M;
        }
    }
    if (space.M == 0)
        throw std::invalid_argument("threshold subspace: no state has objective <= threshold");
    return space;
}

enum class GroverPrepMode { Exact, Iterative };

struct GroverPrepResult {
    StateVector state;
    int iterations = 0;
    double overlap = 1.0;  // |<s_F | state>|
};

/// Prepare |s_F>. Iterative mode runs floor((pi/4)*sqrt(2^n / M)) textbook
/// amplitude-amplification iterations with the membership oracle; exact mode
/// (the engine default) writes the state directly.
inline GroverPrepResult grover_prepare(const WalkSpace& space,
                                       GroverPrepMode mode = GroverPrepMode::Exact) {
    GroverPrepResult result;
    if (mode == GroverPrepMode::Exact) {
        result.state = uniform_feasible_state(space);
        return result;
    }
    const double dim = static_cast<double>(space.feasible.size());
    result.iterations =
        static_cast<int>(std::floor((3.14159265358979323846 / 4.0) * std::sqrt(dim / space.M)));
    StateVector st = uniform_state(space.n_qubits);
    for (int it = 0; it < result.iterations; ++it) {
        for (std::uint64_t x = 0; x < st.amplitudes.size(); ++x)
            if (space.feasible[x]) st.amplitudes[x] = -st.amplitudes[x];
        cplx mean(0, 0);
        for (const cplx& a : st.amplitudes) mean += a;
        mean /= dim;
        for (cplx& a : st.amplitudes) a = 2.0 * mean - a;  // 2|s><s| - I
    }
    result.overlap = std::abs(inner_product(uniform_feasible_state(space), st));
    result.state = std::move(st);
    return result;
}

// ---- optimizer internals: exact energy-level compression ----

namespace detail {

// States with equal objective keep equal amplitudes under U_Q and U_W, so the
// dynamics closes on the distinct feasible objective values.
struct LevelSpace {
    std::vector<double> values;       // ascending distinct objectives
    std::vector<double> sqrt_weight;  // sqrt(multiplicity / M)
    std::uint64_t M = 0;
    double gamma_unit = 1.0;  // effective period of gamma (see below)
    double time_unit = 1.0;   // 2*pi / M, the period of the walk phase
};

inline LevelSpace build_level_space(const CostDiagonal& diag, const WalkSpace& space) {
    std::map<double, std::uint64_t> mult;
    for (std::uint64_t x = 0; x < diag.dim(); ++x)
        if (space.feasible[x]) mult[diag.values[x]] += 1;
    LevelSpace ls;
    ls.M = space.M;
    for (const auto& [v, m] : mult) {
        ls.values.push_back(v);
        ls.sqrt_weight.push_back(std::sqrt(static_cast<double>(m) / space.M));
    }
    const double two_pi = 2.0 * 3.14159265358979323846;
    ls.time_unit = two_pi / static_cast<double>(space.M);
    // gamma*f only matters mod 2*pi. Integer-valued objectives make gamma
    // periodic with period 2*pi / gcd(level gaps); otherwise fall back to the
    // level spread.
    bool integral = true;
    for (double v : ls.values)
        if (std::abs(v - std::round(v)) > 1e-9) integral = false;
    if (ls.values.size() < 2) {
        ls.gamma_unit = 1.0;
    } else if (integral) {
        std::int64_t g = 0;
        const std::int64_t base = static_cast<std::int64_t>(std::llround(ls.values.front()));
        for (double v : ls.values) {
            std::int64_t d = static_cast<std::int64_t>(std::llround(v)) - base;
            while (d) {
                const std::int64_t r = g % d;
                g = d;
                d = r;
            }
        }
        ls.gamma_unit = g > 0 ? two_pi / static_cast<double>(g) : 1.0;
    } else {
        ls.gamma_unit = two_pi / (ls.values.back() - ls.values.front());
    }
    return ls;
}

/// One QWOA round on level amplitudes; parameters already in raw radians.
inline void level_round(const LevelSpace& ls, std::vector<cplx>& psi, double gamma, double t) {
    cplx overlap(0, 0);
    for (std::size_t l = 0; l < psi.size(); ++l) {
        psi[l] *= std::polar(1.0, -gamma * ls.values[l]);
        overlap += ls.sqrt_weight[l] * psi[l];
    }
    const cplx rot = std::polar(1.0, -t * static_cast<double>(ls.M));
    const cplx keep = (1.0 - rot) * overlap;
    for (std::size_t l = 0; l < psi.size(); ++l)
        psi[l] = rot * psi[l] + keep * ls.sqrt_weight[l];
}

/// Run all rounds from |s_F>; u holds rescaled units [g_1, t_1, g_2, t_2, ...].
inline std::vector<cplx> level_state(const LevelSpace& ls, std::span<const double> u) {
    std::vector<cplx> psi(ls.sqrt_weight.size());
    for (std::size_t l = 0; l < psi.size(); ++l) psi[l] = cplx(ls.sqrt_weight[l], 0);
    for (std::size_t j = 0; 2 * j + 1 < u.size(); ++j)
        level_round(ls, psi, u[2 * j] * ls.gamma_unit, std::abs(u[2 * j + 1]) * ls.time_unit);
    return psi;
}

inline double level_expectation(const LevelSpace& ls, const std::vector<cplx>& psi) {
    double acc = 0;
    for (std::size_t l = 0; l < psi.size(); ++l) acc += std::norm(psi[l]) * ls.values[l];
    return acc;
}

/// Deterministic initial point for restart 0: grow the schedule one round at
/// a time, choosing each (gamma, t) to maximize the probability of the
/// minimum level (coarse grid, then a short 2-D simplex refinement).
/// Random-start simplex search alone stalls far from the deep-schedule
/// optimum, so one restart always begins here.
inline std::vector<double> greedy_init(const LevelSpace& ls, int rounds) {
    std::vector<double> u;
    std::vector<cplx> prefix(ls.sqrt_weight.size());
    for (std::size_t l = 0; l < prefix.size(); ++l) prefix[l] = cplx(ls.sqrt_weight[l], 0);

    for (int j = 0; j < rounds; ++j) {
        auto pmin_after = [&](double g, double t) {
            std::vector<cplx> psi = prefix;
            level_round(ls, psi, g * ls.gamma_unit, std::abs(t) * ls.time_unit);
            return std::norm(psi[0]);
        };
        double best_g = 0, best_t = 0.5, best_p = -1;
        for (int gi = 0; gi < 26; ++gi) {
            const double g = gi / 26.0;
            for (int ti = 1; ti <= 19; ++ti) {
                const double t = ti / 20.0;
                const double p = pmin_after(g, t);
                if (p > best_p) {
                    best_p = p;
                    best_g = g;
                    best_t = t;
                }
            }
        }
        OptimizerConfig refine;
        refine.max_evals = 120;
        refine.initial_point = {best_g, best_t};
        refine.simplex_scale = 0.02;
        refine.tolerance = 1e-12;
        const OptimizeResult res = minimize(
            [&](std::span<const double> p) { return -pmin_after(p[0], p[1]); }, 2, refine);
        u.push_back(res.point[0]);
        u.push_back(res.point[1]);
        level_round(ls, prefix, res.point[0] * ls.gamma_unit,
                    std::abs(res.point[1]) * ls.time_unit);
    }
    return u;
}

}  // namespace detail

struct QwoaRun {
    QwoaParams params;
    EnergyDistribution distribution;
    std::vector<double> trace;
    int restart_index = 0;
};

/// Suggested evaluation budget for a 2r-dimensional QWOA polish.
inline int qwoa_default_max_evals(int rounds) { return std::max(500, 200 * rounds); }

/// Multistart Nelder-Mead minimization of the expectation <psi|Q|psi>.
/// Restart 0 starts from the deterministic greedy construction, the rest
/// from seeded random points; the best restart by expectation wins. The
/// optimizer works in rescaled units (gamma period, walk-phase period) and
/// enforces t >= 0 via |t|.
inline QwoaRun optimize_qwoa(const CostDiagonal& diag, const WalkSpace& space, int rounds,
                             OptimizerConfig config, int restarts, std::uint64_t seed) {
    require(rounds >= 1, "optimize_qwoa: rounds must be >= 1");
    require(restarts >= 1, "optimize_qwoa: restarts must be >= 1");
    space.validate();
    const detail::LevelSpace ls = detail::build_level_space(diag, space);
    const int dim = 2 * rounds;
    const LossFn loss = [&](std::span<const double> u) {
        return detail::level_expectation(ls, detail::level_state(ls, u));
    };

    std::vector<double> best_point;
    double best_value = std::numeric_limits<double>::infinity();
    std::vector<double> best_trace;
    int best_restart = 0;

    for (int k = 0; k < restarts; ++k) {
        OptimizerConfig cfg = config;
        if (k == 0) {
            cfg.initial_point = detail::greedy_init(ls, rounds);
        } else {
            std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
            cfg.initial_point.assign(dim, 0.0);
            for (double& v : cfg.initial_point) v = uniform01(rng);
        }
        const OptimizeResult res = minimize(loss, dim, cfg);
        if (res.value < best_value) {
            best_value = res.value;
            best_point = res.point;
            best_trace = res.trace;
            best_restart = k;
        }
    }

    QwoaRun run;
    for (int j = 0; j < rounds; ++j) {
        run.params.gammas.push_back(best_point[2 * j] * ls.gamma_unit);
        run.params.times.push_back(std::abs(best_point[2 * j + 1]) * ls.time_unit);
    }
    run.distribution = run_qwoa(diag, space, run.params);
    run.trace = std::move(best_trace);
    run.restart_index = best_restart;
    return run;
}

inline WalkSpace threshold_subspace(const SetBalancingInstance& inst, double threshold) {
    return threshold_subspace(cost_diagonal(inst), threshold);
}

inline QwoaRun optimize_qwoa(const SetBalancingInstance& inst, const WalkSpace& space, int rounds,
                             OptimizerConfig config, int restarts, std::uint64_t seed) {
    return optimize_qwoa(cost_diagonal(inst), space, rounds, std::move(config), restarts, seed);
}

struct ModifiedQwoaRun {
    double threshold = 0;
    WalkSpace space;
    GroverPrepResult preparation;
    QwoaRun run;
};

/// The three-step modified method: a depth-p_seed QAOA run supplies the
/// threshold x (minimum objective among outcomes with probability above
/// 1/(4*shots)), the walk is restricted to {f <= x} prepared via
/// grover_prepare, and QWOA runs in the reduced subspace.
inline ModifiedQwoaRun run_modified_qwoa(const CostDiagonal& diag, int rounds,
                                         OptimizerConfig config, int restarts, int shots,
                                         std::uint64_t seed, int p_seed = 1,
                                         GroverPrepMode prep_mode = GroverPrepMode::Exact) {
    MixerSpec mixer;  // the step-1 run is standard QAOA: X mixer, gate circuits
    OptimizerConfig qaoa_cfg;
    qaoa_cfg.max_evals = config.max_evals;
    const QaoaRun seed_run = optimize_qaoa(diag, mixer, p_seed, qaoa_cfg);

    const double floor = 1.0 / (4.0 * shots);
    double threshold = std::numeric_limits<double>::infinity();
    for (const auto& e : seed_run.distribution.entries(floor))
        threshold = std::min(threshold, e.objective);

    ModifiedQwoaRun out;
    out.threshold = threshold;
    out.space = threshold_subspace(diag, threshold);
    out.preparation = grover_prepare(out.space, prep_mode);
    out.run = optimize_qwoa(diag, out.space, rounds, std::move(config), restarts, seed);
    return out;
}

/// Histogram of probability mass per objective value for one depth.
inline nlohmann::json qwoa_histogram_json(int depth, const EnergyDistribution& dist,
                                          double min_probability = 1e-12) {
    std::map<double, double> mass;
    for (std::uint64_t x = 0; x < dist.probabilities.size(); ++x)
        mass[dist.objectives[x]] += dist.probabilities[x];
    auto hist = nlohmann::json::array();
    for (const auto& [v, p] : mass)
        if (p > min_probability) hist.push_back({{"objective", v}, {"probability", p}});
    return nlohmann::json{{"depth", depth}, {"histogram", std::move(hist)}};
}

}  // namespace setbal

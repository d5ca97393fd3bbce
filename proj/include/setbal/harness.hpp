#pragma once

// Experiment harness behind the CLI: random instance generation and the
// mixer-comparison sweep (mean approximation ratio per size/mixer cell).
// Cells are seeded from the master seed by cell and trial index, so results
// do not depend on the number of worker threads.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "setbal/brute_force.hpp"
#include "setbal/qaoa.hpp"

namespace setbal {

/// Each entry is 1 with the given density, independently.
inline SetBalancingInstance gen_instance(int rows, int cols, double density, std::uint64_t seed) {
    require(rows >= 1 && cols >= 1, "gen: rows and cols must be >= 1");
    require(density > 0 && density < 1, "gen: density must be in (0, 1)");
    std::mt19937_64 rng(seed);
    SetBalancingInstance inst;
    inst.m = rows;
    inst.n = cols;
    inst.matrix.resize(static_cast<std::size_t>(rows) * cols);
    for (auto& e : inst.matrix) e = uniform01(rng) < density ? 1 : 0;
    return inst;
}

struct ExperimentConfig {
    std::vector<std::pair<int, int>> sizes;  // (m, n)
    int trials = 20;
    int depth = 5;
    std::vector<MixerFamily> mixers{MixerFamily::X};
    MixerRealization realization = MixerRealization::GateDecomposition;
    double density = 0.5;
    int shots = 10000;
    int max_evals = 500;
    std::uint64_t master_seed = 1;

    void validate() const {
        require(trials >= 1, "experiment: trials must be >= 1");
        require(!sizes.empty(), "experiment: at least one size required");
        require(!mixers.empty(), "experiment: at least one mixer required");
        for (auto [m, n] : sizes) {
            require(m >= 1 && n >= 1, "experiment: sizes must be positive");
            if (n > max_enumeration_qubits)
                throw size_cap_error("experiment: size exceeds the enumeration cap");
        }
    }
};

struct CompareRow {
    int size_m = 0, size_n = 0;
    MixerFamily mixer = MixerFamily::X;
    MixerRealization realization = MixerRealization::GateDecomposition;
    int depth = 0;
    double mean_alpha = 0;
    double std_alpha = 0;
    double mean_cnots = 0;
    int failures = 0;
};

inline CompareRow run_compare_cell(const ExperimentConfig& config, std::size_t cell_index,
                                   std::pair<int, int> size, MixerFamily family) {
    CompareRow row;
    row.size_m = size.first;
    row.size_n = size.second;
    row.mixer = family;
    row.realization = config.realization;
    row.depth = config.depth;
    row.mean_cnots =
        static_cast<double>(config.depth) *
        static_cast<double>(mixer_layer_cnot_count(family, config.realization, size.second));

    std::vector<double> alphas;
    for (int t = 0; t < config.trials; ++t) {
        const std::uint64_t trial_seed =
            derive_seed(config.master_seed, cell_index * 1000003ull + static_cast<std::uint64_t>(t));
        try {
            const SetBalancingInstance inst =
                gen_instance(size.first, size.second, config.density, trial_seed);
            const Spectrum spectrum = enumerate_spectrum(inst);
            const CostDiagonal diag = cost_diagonal(inst);

            MixerSpec spec;
            spec.family = family;
            spec.realization = config.realization;
            if (family == MixerFamily::WarmStart)
                spec.warm_start_solution = local_search(inst, derive_seed(trial_seed, 77));

            OptimizerConfig opt;
            opt.max_evals = config.max_evals;
            const QaoaRun run = optimize_qaoa(diag, spec, config.depth, opt);

            double found = std::numeric_limits<double>::infinity();
            for (const auto& [x, count] : sample(run.distribution, config.shots,
                                                 derive_seed(trial_seed, 101)))
                found = std::min(found, diag.values[x]);
            alphas.push_back(approximation_ratio(spectrum.min_value, found));
        } catch (const std::exception&) {
            row.failures += 1;
        }
    }
    if (!alphas.empty()) {
        double sum = 0;
        for (double a : alphas) sum += a;
        row.mean_alpha = sum / alphas.size();
        double var = 0;
        for (double a : alphas) var += (a - row.mean_alpha) * (a - row.mean_alpha);
        row.std_alpha = std::sqrt(var / alphas.size());
    }
    return row;
}

/// Sweep every (size, mixer) cell; cells may run on up to `jobs` threads.
/// Output order is fixed (sizes outer, mixers inner) regardless of jobs.
inline std::vector<CompareRow> run_compare(const ExperimentConfig& config, int jobs = 1,
                                           const std::function<void(const CompareRow&)>& log = {}) {
    config.validate();
    struct Cell {
        std::pair<int, int> size;
        MixerFamily family;
    };
    std::vector<Cell> cells;
    for (auto size : config.sizes)
        for (MixerFamily family : config.mixers) cells.push_back({size, family});

    std::vector<CompareRow> rows(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) break;
            rows[i] = run_compare_cell(config, i, cells[i].size, cells[i].family);
        }
    };
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(cells.size())));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (log)
        for (const CompareRow& row : rows) log(row);
    return rows;
}

inline std::string compare_csv(const std::vector<CompareRow>& rows) {
    std::ostringstream oss;
    oss << "size,mixer,mode,depth,mean_alpha,std_alpha,mean_cnots\r\n";
    for (const CompareRow& r : rows) {
        oss << r.size_m << 'x' << r.size_n << ',' << mixer_family_name(r.mixer) << ','
            << (r.realization == MixerRealization::GateDecomposition ? "gates" : "pauli") << ','
            << r.depth << ',' << r.mean_alpha << ',' << r.std_alpha << ',' << r.mean_cnots
            << "\r\n";
    }
    return oss.str();
}

}  // namespace setbal

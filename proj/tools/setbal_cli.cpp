// Command-line surface: instance generation, brute-force spectra, single
// QAOA/QWOA runs, mixer-comparison sweeps and entropy ranking. Every command
// is deterministic given --seed. Exit codes: 0 success, 2 validation,
// 3 runtime/optimizer failure, 4 size cap exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "setbal/brute_force.hpp"
#include "setbal/entropy.hpp"
#include "setbal/harness.hpp"
#include "setbal/problem.hpp"
#include "setbal/qaoa.hpp"
#include "setbal/qwoa.hpp"

namespace {

using nlohmann::json;

setbal::SetBalancingInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open instance file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("instance file " + path + ": " + e.what());
    }
    return setbal::instance_from_json(j);
}

void write_output(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file: " + out_path);
    out << payload;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) values.push_back(std::stoi(item));
    }
    if (values.empty()) throw std::invalid_argument("expected a comma-separated integer list");
    return values;
}

setbal::MixerRealization realization_from_name(const std::string& name) {
    if (name == "gates") return setbal::MixerRealization::GateDecomposition;
    if (name == "pauli") return setbal::MixerRealization::PauliExponential;
    throw std::invalid_argument("unknown realization '" + name + "' (valid: gates, pauli)");
}

int default_jobs() {
    if (const char* env = std::getenv("SETBAL_JOBS")) {
        const int j = std::atoi(env);
        if (j >= 1) return j;
    }
    return 1;
}

struct QaoaArgs {
    std::string instance_path, mixer = "x", impl = "gates", out;
    int depth = 3, shots = 10000, max_evals = 500;
    std::uint64_t seed = 1;
    double warm_epsilon = 0.25;
};

int cmd_qaoa(const QaoaArgs& args) {
    const auto inst = load_instance(args.instance_path);
    const auto diag = setbal::cost_diagonal(inst);

    setbal::MixerSpec spec;
    spec.family = setbal::mixer_family_from_name(args.mixer);
    spec.realization = realization_from_name(args.impl);
    if (spec.family == setbal::MixerFamily::WarmStart) {
        spec.warm_start_solution = setbal::local_search(inst, setbal::derive_seed(args.seed, 77));
        spec.warm_start_epsilon = args.warm_epsilon;
    }

    setbal::QaoaRun run;
    if (args.depth == 0) {
        run.distribution = setbal::run_qaoa(diag, spec, {});
    } else {
        setbal::OptimizerConfig config;
        config.max_evals = args.max_evals;
        config.seed = args.seed;
        run = setbal::optimize_qaoa(diag, spec, args.depth, config);
    }

    double best_sampled = std::numeric_limits<double>::infinity();
    for (const auto& [x, count] :
         setbal::sample(run.distribution, args.shots, setbal::derive_seed(args.seed, 101)))
        best_sampled = std::min(best_sampled, diag.values[x]);

    std::optional<double> alpha;
    if (inst.n <= setbal::max_enumeration_qubits)
        alpha = setbal::approximation_ratio(setbal::enumerate_spectrum(inst).min_value, best_sampled);

    write_output(args.out, setbal::qaoa_result_to_json(run, alpha, best_sampled).dump(2));
    return 0;
}

struct QwoaArgs {
    std::string instance_path, depths = "5", out;
    int restarts = 4, max_evals = 0, shots = 10000;
    bool modified = false;
    std::uint64_t seed = 1;
};

int cmd_qwoa(const QwoaArgs& args) {
    const auto inst = load_instance(args.instance_path);
    const auto diag = setbal::cost_diagonal(inst);
    const auto space = setbal::WalkSpace::full(inst.n);

    json series = json::array();
    for (int depth : parse_int_list(args.depths)) {
        setbal::require(depth >= 0, "qwoa: depth must be >= 0");
        setbal::OptimizerConfig config;
        config.max_evals = args.max_evals > 0 ? args.max_evals : setbal::qwoa_default_max_evals(depth);
        config.seed = args.seed;
        setbal::EnergyDistribution dist;
        if (depth == 0) {
            dist = setbal::run_qwoa(diag, space, {});
        } else if (args.modified) {
            dist = setbal::run_modified_qwoa(diag, depth, config, args.restarts, args.shots,
                                             args.seed)
                       .run.distribution;
        } else {
            dist = setbal::optimize_qwoa(diag, space, depth, config, args.restarts, args.seed)
                       .distribution;
        }
        series.push_back(setbal::qwoa_histogram_json(depth, dist));
    }
    write_output(args.out, series.dump(2));
    return 0;
}

struct EntropyArgs {
    std::string instance_path, candidates = "oracle", out;
    int top = 0, depth = 1, shots = 10000, max_evals = 500;
    std::uint64_t seed = 1;
};

int cmd_entropy(const EntropyArgs& args) {
    const auto inst = load_instance(args.instance_path);
    std::vector<setbal::Bicoloring> candidates;
    if (args.candidates == "oracle") {
        const auto spectrum = setbal::enumerate_spectrum(inst);
        candidates = spectrum.argmins(inst.n);
    } else if (args.candidates == "qaoa") {
        const auto diag = setbal::cost_diagonal(inst);
        setbal::OptimizerConfig config;
        config.max_evals = args.max_evals;
        const auto run = setbal::optimize_qaoa(diag, setbal::MixerSpec{}, args.depth, config);
        const double floor = 1.0 / (4.0 * args.shots);
        for (const auto& e : run.distribution.entries(floor))
            candidates.push_back(setbal::decode(e.index, inst.n));
    } else {
        throw std::invalid_argument("entropy: --candidates must be 'oracle' or 'qaoa'");
    }
    if (candidates.empty()) throw std::invalid_argument("entropy: candidate set is empty");

    const auto scores = setbal::score_candidates(inst, candidates);

    // Rank under each selector (NaN scores last, ties by basis index).
    auto order_by = [&](double setbal::EntropyReport::* field) {
        std::vector<std::size_t> order(scores.reports.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const double va = scores.reports[a].*field, vb = scores.reports[b].*field;
            if (std::isnan(va) != std::isnan(vb)) return std::isnan(vb);
            if (va != vb) return va < vb;
            return scores.reports[a].basis_index < scores.reports[b].basis_index;
        });
        return order;
    };
    const auto by_ratio = order_by(&setbal::EntropyReport::ratio);
    const auto by_radial = order_by(&setbal::EntropyReport::radial);
    const auto by_combined = order_by(&setbal::EntropyReport::combined);
    std::vector<std::size_t> rank_radial(scores.reports.size()), rank_combined(scores.reports.size());
    for (std::size_t r = 0; r < by_radial.size(); ++r) rank_radial[by_radial[r]] = r + 1;
    for (std::size_t r = 0; r < by_combined.size(); ++r) rank_combined[by_combined[r]] = r + 1;

    std::ostringstream oss;
    oss << "rank_ratio,rank_radial,rank_combined,bitstring,J,E,D,D/E,radial,combined\r\n";
    const std::size_t limit = args.top > 0
                                  ? std::min<std::size_t>(args.top, by_ratio.size())
                                  : by_ratio.size();
    for (std::size_t r = 0; r < limit; ++r) {
        const std::size_t i = by_ratio[r];
        const auto& rep = scores.reports[i];
        oss << (r + 1) << ',' << rank_radial[i] << ',' << rank_combined[i] << ','
            << setbal::bitstring(rep.basis_index, inst.n) << ',' << rep.J << ',' << rep.E << ','
            << rep.D << ',' << rep.ratio << ',' << rep.radial << ',' << rep.combined << "\r\n";
    }
    write_output(args.out, oss.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Set balancing via simulated variational quantum algorithms"};
    app.require_subcommand(1);

    // gen
    int gen_rows = 10, gen_cols = 10;
    double gen_density = 0.5;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Generate a random instance file");
    gen->add_option("--rows", gen_rows, "Attribute rows (m)");
    gen->add_option("--cols", gen_cols, "Subjects / columns (n)");
    gen->add_option("--density", gen_density, "Ones density in (0,1)");
    gen->add_option("--seed", gen_seed, "Generator seed");
    gen->add_option("--out", gen_out, "Output path (default stdout)");

    // brute
    std::string brute_path, brute_out;
    auto* brute = app.add_subcommand("brute", "Exhaustive spectrum of an instance");
    brute->add_option("instance", brute_path, "Instance JSON file")->required();
    brute->add_option("--out", brute_out, "Output path (default stdout)");

    // qaoa
    QaoaArgs qa;
    auto* qaoa = app.add_subcommand("qaoa", "Optimize and sample a QAOA run");
    qaoa->add_option("instance", qa.instance_path, "Instance JSON file")->required();
    qaoa->add_option("--mixer", qa.mixer, "x | xy | full-swap | ring-swap | grover | warm-start");
    qaoa->add_option("--impl", qa.impl, "gates | pauli (mixer realization)");
    qaoa->add_option("--depth", qa.depth, "Number of QAOA layers");
    qaoa->add_option("--shots", qa.shots, "Measurement shots");
    qaoa->add_option("--max-evals", qa.max_evals, "Optimizer evaluation budget");
    qaoa->add_option("--seed", qa.seed, "Master seed");
    qaoa->add_option("--warm-epsilon", qa.warm_epsilon, "Warm-start epsilon in (0, 0.5]");
    qaoa->add_option("--out", qa.out, "Output path (default stdout)");

    // qwoa
    QwoaArgs qw;
    auto* qwoa = app.add_subcommand("qwoa", "Optimize QWOA at one or more depths");
    qwoa->add_option("instance", qw.instance_path, "Instance JSON file")->required();
    qwoa->add_option("--depth", qw.depths, "Depth or comma-separated depth list");
    qwoa->add_option("--restarts", qw.restarts, "Optimizer restarts per depth");
    qwoa->add_option("--max-evals", qw.max_evals, "Evaluation budget (0 = auto)");
    qwoa->add_option("--shots", qw.shots, "Shots (threshold floor for --modified)");
    qwoa->add_flag("--modified", qw.modified, "Use the threshold-restricted modified method");
    qwoa->add_option("--seed", qw.seed, "Master seed");
    qwoa->add_option("--out", qw.out, "Output path (default stdout)");

    // compare
    std::string cmp_sizes = "6,8,10", cmp_mixers = "x", cmp_impl = "gates", cmp_out;
    setbal::ExperimentConfig cmp;
    int cmp_jobs = default_jobs();
    auto* compare = app.add_subcommand("compare", "Mixer sweep: mean approximation ratio CSV");
    compare->add_option("--sizes", cmp_sizes, "Comma-separated square sizes (k means k x k)");
    compare->add_option("--trials", cmp.trials, "Trials per cell");
    compare->add_option("--depth", cmp.depth, "QAOA depth");
    compare->add_option("--mixers", cmp_mixers, "Comma-separated mixer families");
    compare->add_option("--impl", cmp_impl, "gates | pauli");
    compare->add_option("--density", cmp.density, "Instance density");
    compare->add_option("--shots", cmp.shots, "Shots per run");
    compare->add_option("--max-evals", cmp.max_evals, "Optimizer budget per run");
    compare->add_option("--seed", cmp.master_seed, "Master seed");
    compare->add_option("--jobs", cmp_jobs, "Worker threads (env SETBAL_JOBS)");
    compare->add_option("--out", cmp_out, "Output path (default stdout)");

    // plan
    std::string plan_letters, plan_out;
    auto* plan = app.add_subcommand("plan", "Dump the compiled gate list for a Pauli exponential");
    plan->add_option("pauli", plan_letters, "Pauli string, e.g. XIZY (index 0 = qubit 0)")->required();
    plan->add_option("--out", plan_out, "Output path (default stdout)");

    // entropy
    EntropyArgs en;
    auto* entropy = app.add_subcommand("entropy", "Rank degenerate optima by row entropy");
    entropy->add_option("instance", en.instance_path, "Instance JSON file")->required();
    entropy->add_option("--candidates", en.candidates, "oracle | qaoa");
    entropy->add_option("--top", en.top, "Keep only the top k rows (0 = all)");
    entropy->add_option("--depth", en.depth, "QAOA depth for --candidates qaoa");
    entropy->add_option("--shots", en.shots, "Shots (probability floor = 1/(4*shots))");
    entropy->add_option("--max-evals", en.max_evals, "Optimizer budget for --candidates qaoa");
    entropy->add_option("--seed", en.seed, "Master seed");
    entropy->add_option("--out", en.out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) {
            const auto inst = setbal::gen_instance(gen_rows, gen_cols, gen_density, gen_seed);
            write_output(gen_out, setbal::instance_to_json(inst).dump(2));
            return 0;
        }
        if (brute->parsed()) {
            const auto inst = load_instance(brute_path);
            const auto spectrum = setbal::enumerate_spectrum(inst);
            write_output(brute_out, setbal::spectrum_to_json(spectrum, inst.n).dump(2));
            return 0;
        }
        if (qaoa->parsed()) return cmd_qaoa(qa);
        if (qwoa->parsed()) return cmd_qwoa(qw);
        if (compare->parsed()) {
            for (int k : parse_int_list(cmp_sizes)) cmp.sizes.emplace_back(k, k);
            cmp.mixers.clear();
            std::stringstream ss(cmp_mixers);
            std::string name;
            while (std::getline(ss, name, ','))
                if (!name.empty()) cmp.mixers.push_back(setbal::mixer_family_from_name(name));
            cmp.realization = realization_from_name(cmp_impl);
            const auto rows = setbal::run_compare(cmp, cmp_jobs, [](const setbal::CompareRow& r) {
                std::cerr << "cell " << r.size_m << "x" << r.size_n << " "
                          << setbal::mixer_family_name(r.mixer) << ": mean_alpha=" << r.mean_alpha
                          << (r.failures ? " failures=" + std::to_string(r.failures) : "") << "\n";
            });
            write_output(cmp_out, setbal::compare_csv(rows));
            return 0;
        }
        if (plan->parsed()) {
            const auto compiled =
                setbal::compile_pauli_exponential(setbal::PauliString::parse(plan_letters));
            write_output(plan_out, setbal::plan_to_json(compiled).dump(2));
            return 0;
        }
        if (entropy->parsed()) return cmd_entropy(en);
    } catch (const setbal::size_cap_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

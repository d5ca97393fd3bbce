#pragma once

// Exhaustive ground truth: objective spectrum over all 2^n bicolorings via
// Gray-code incremental updates, plus the greedy single-flip descent used as
// the warm-start provider.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <json.hpp>

#include "setbal/problem.hpp"

namespace setbal {

struct Spectrum {
    double min_value = 0;
    std::vector<std::uint64_t> argmin_indices;  // ascending basis index
    std::map<double, std::uint64_t> histogram;  // objective -> count

    std::vector<Bicoloring> argmins(int n) const {
        std::vector<Bicoloring> out;
        out.reserve(argmin_indices.size());
        for (std::uint64_t x : argmin_indices) out.push_back(decode(x, n));
        return out;
    }
};

inline Spectrum enumerate_spectrum(const SetBalancingInstance& inst) {
    inst.validate();
    if (inst.n > max_enumeration_qubits)
        throw size_cap_error("enumerate: n exceeds the enumeration cap of " +
                             std::to_string(max_enumeration_qubits));

    std::vector<std::vector<int>> rows_of(inst.n);
    for (int i = 0; i < inst.m; ++i)
        for (int j = 0; j < inst.n; ++j)
            if (inst.entry(i, j)) rows_of[j].push_back(i);

    std::vector<double> c(inst.m);
    double f = 0;
    for (int i = 0; i < inst.m; ++i) {
        double row = 0;
        for (int j = 0; j < inst.n; ++j) row += inst.entry(i, j);
        c[i] = inst.weight(i) * row;
        f += c[i] * c[i];
    }

    Spectrum spec;
    spec.min_value = f;
    spec.argmin_indices = {0};
    spec.histogram[f] = 1;

    std::vector<int> spin(inst.n, 1);
    const std::uint64_t total = std::uint64_t{1} << inst.n;
    for (std::uint64_t i = 1; i < total; ++i) {
        const int k = std::countr_zero(i);
        const double step = -2.0 * spin[k];
        spin[k] = -spin[k];
        for (int r : rows_of[k]) {
            const double d = step * inst.weight(r);
            f += d * (2.0 * c[r] + d);
            c[r] += d;
        }
        const std::uint64_t x = i ^ (i >> 1);
        spec.histogram[f] += 1;
        if (f < spec.min_value) {
            spec.min_value = f;
            spec.argmin_indices.assign(1, x);
        } else if (f == spec.min_value) {
            spec.argmin_indices.push_back(x);
        }
    }
    std::sort(spec.argmin_indices.begin(), spec.argmin_indices.end());
    return spec;
}

/// Greedy best-improvement single-flip descent from a seeded random start.
/// The returned point is 1-flip-optimal; ties pick the lowest index.
inline Bicoloring local_search(const SetBalancingInstance& inst, std::uint64_t seed) {
    inst.validate();
    std::mt19937_64 rng(seed);
    Bicoloring b;
    b.values.resize(inst.n);
    for (int j = 0; j < inst.n; ++j) b.values[j] = uniform01(rng) < 0.5 ? 1 : -1;

    std::vector<double> c = imbalance(inst, b);
    while (true) {
        int best_j = -1;
        double best_delta = -1e-12;  // strictly improving flips only
        for (int j = 0; j < inst.n; ++j) {
            double delta = 0;
            for (int i = 0; i < inst.m; ++i) {
                if (!inst.entry(i, j)) continue;
                const double d = -2.0 * b.values[j] * inst.weight(i);
                delta += d * (2.0 * c[i] + d);
            }
            if (delta < best_delta) {
                best_delta = delta;
                best_j = j;
            }
        }
        if (best_j < 0) break;
        for (int i = 0; i < inst.m; ++i)
            if (inst.entry(i, best_j)) c[i] += -2.0 * b.values[best_j] * inst.weight(i);
        b.values[best_j] = -b.values[best_j];
    }
    return b;
}

inline nlohmann::json spectrum_to_json(const Spectrum& spec, int n,
                                       std::size_t max_listed_argmins = 64) {
    nlohmann::json j;
    j["min_value"] = spec.min_value;
    j["argmin_count"] = spec.argmin_indices.size();
    auto mins = nlohmann::json::array();
    for (std::size_t i = 0; i < spec.argmin_indices.size() && i < max_listed_argmins; ++i) {
        const Bicoloring b = decode(spec.argmin_indices[i], n);
        mins.push_back({{"bitstring", bitstring(spec.argmin_indices[i], n)},
                        {"bicoloring", b.values}});
    }
    j["argmins"] = std::move(mins);
    auto hist = nlohmann::json::array();
    for (const auto& [value, count] : spec.histogram)
        hist.push_back({{"objective", value}, {"count", count}});
    j["histogram"] = std::move(hist);
    return j;
}

}  // namespace setbal

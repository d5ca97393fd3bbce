#pragma once

// Derivative-free simplex minimization with the standard coefficients
// (reflection 1, expansion 2, contraction 0.5, shrink 0.5). Fully
// deterministic: no randomness, evaluation budget counted exactly.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <sstream>
#include <vector>

#include "setbal/common.hpp"

namespace setbal {

enum class OptMethod { NelderMead };

struct OptimizerConfig {
    OptMethod method = OptMethod::NelderMead;
    int max_evals = 500;
    std::vector<double> initial_point;  // empty -> all 0.5 at the loss dimension
    double simplex_scale = 0.25;
    double tolerance = 1e-6;
    std::uint64_t seed = 0;
};

struct OptimizeResult {
    std::vector<double> point;
    double value = 0;
    std::vector<double> trace;  // best-so-far after each evaluation
    int evals = 0;
};

using LossFn = std::function<double(std::span<const double>)>;

inline OptimizeResult minimize(const LossFn& loss, int dim, const OptimizerConfig& config) {
    require(dim >= 1, "minimize: dimension must be >= 1");
    require(config.max_evals >= dim + 1, "minimize: max_evals must be >= dimension + 1");
    std::vector<double> x0 = config.initial_point;
    if (x0.empty()) x0.assign(dim, 0.5);
    require(static_cast<int>(x0.size()) == dim, "minimize: initial point dimension mismatch");

    OptimizeResult result;
    double best = std::numeric_limits<double>::infinity();
    auto evaluate = [&](const std::vector<double>& x) {
        const double v = loss(x);
        ++result.evals;
        if (!std::isfinite(v)) {
            std::ostringstream oss;
            oss << "minimize: non-finite loss at point (";
            for (std::size_t i = 0; i < x.size(); ++i) oss << (i ? ", " : "") << x[i];
            oss << ")";
            throw std::runtime_error(oss.str());
        }
        best = std::min(best, v);
        result.trace.push_back(best);
        return v;
    };

    // Initial simplex: x0 plus one perturbed vertex per coordinate.
    std::vector<std::vector<double>> pts(dim + 1, x0);
    for (int i = 0; i < dim; ++i) pts[i + 1][i] += config.simplex_scale;
    std::vector<double> fv(dim + 1);
    for (int i = 0; i <= dim; ++i) fv[i] = evaluate(pts[i]);

    std::vector<int> order(dim + 1);
    while (result.evals < config.max_evals) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        {
            std::vector<std::vector<double>> p2(dim + 1);
            std::vector<double> f2(dim + 1);
            for (int i = 0; i <= dim; ++i) {
                p2[i] = std::move(pts[order[i]]);
                f2[i] = fv[order[i]];
            }
            pts = std::move(p2);
            fv = std::move(f2);
        }
        // Converged only when both the value spread and the simplex extent
        // are inside the tolerance; either alone stalls on flat or symmetric
        // configurations.
        double extent = 0;
        for (int v = 1; v <= dim; ++v)
            for (int i = 0; i < dim; ++i)
                extent = std::max(extent, std::abs(pts[v][i] - pts[0][i]));
        if (fv[dim] - fv[0] < config.tolerance && extent < config.tolerance) break;

        std::vector<double> centroid(dim, 0.0);
        for (int i = 0; i < dim; ++i) {
            for (int v = 0; v < dim; ++v) centroid[i] += pts[v][i];
            centroid[i] /= dim;
        }
        auto blend = [&](double coef) {
            std::vector<double> p(dim);
            for (int i = 0; i < dim; ++i) p[i] = centroid[i] + coef * (centroid[i] - pts[dim][i]);
            return p;
        };

        std::vector<double> xr = blend(1.0);
        const double fr = evaluate(xr);
        if (fr < fv[0] && result.evals < config.max_evals) {
            std::vector<double> xe = blend(2.0);
            const double fe = evaluate(xe);
            if (fe < fr) {
                pts[dim] = std::move(xe);
                fv[dim] = fe;
            } else {
                pts[dim] = std::move(xr);
                fv[dim] = fr;
            }
        } else if (fr < fv[dim - 1]) {
            pts[dim] = std::move(xr);
            fv[dim] = fr;
        } else if (result.evals < config.max_evals) {
            const bool outside = fr < fv[dim];
            std::vector<double> xc(dim);
            for (int i = 0; i < dim; ++i) {
                const double toward = outside ? xr[i] : pts[dim][i];
                xc[i] = centroid[i] + 0.5 * (toward - centroid[i]);
            }
            const double fc = evaluate(xc);
            if (fc < std::min(fr, fv[dim])) {
                pts[dim] = std::move(xc);
                fv[dim] = fc;
            } else {
                // Shrink toward the best vertex; a vertex moves only if its
                // new value can still be evaluated within the budget.
                for (int v = 1; v <= dim; ++v) {
                    if (result.evals >= config.max_evals) break;
                    for (int i = 0; i < dim; ++i)
                        pts[v][i] = pts[0][i] + 0.5 * (pts[v][i] - pts[0][i]);
                    fv[v] = evaluate(pts[v]);
                }
            }
        }
    }

    int ibest = 0;
    for (int i = 1; i <= dim; ++i)
        if (fv[i] < fv[ibest]) ibest = i;
    result.point = pts[ibest];
    result.value = fv[ibest];
    return result;
}

}  // namespace setbal

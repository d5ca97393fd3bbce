#pragma once

// Row-wise Shannon-entropy post-selection among degenerate low-energy
// bicolorings. Each candidate b splits the columns into two submatrices; per
// row the binary entropy of the feature density is summed, and candidates are
// ranked by D/E, by the radial score sqrt(J^2 + D^2 + (1/E)^2), and by the
// combined score sqrt(J^2 + (D/E)^2).

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "setbal/problem.hpp"

namespace setbal {

struct BinarySubmatrix {
    int m = 0;
    int cols = 0;
    std::vector<std::uint8_t> data;  // row-major m x cols

    std::uint8_t entry(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
};

struct ColumnPartition {
    BinarySubmatrix positive;  // columns with b_j = +1
    BinarySubmatrix negative;  // columns with b_j = -1
};

inline ColumnPartition partition_columns(const SetBalancingInstance& inst, const Bicoloring& b) {
    require(b.size() == inst.n, "partition: bicoloring length mismatch");
    ColumnPartition part;
    part.positive.m = part.negative.m = inst.m;
    for (int j = 0; j < inst.n; ++j)
        (b.values[j] == 1 ? part.positive.cols : part.negative.cols) += 1;
    part.positive.data.reserve(static_cast<std::size_t>(inst.m) * part.positive.cols);
    part.negative.data.reserve(static_cast<std::size_t>(inst.m) * part.negative.cols);
    for (int i = 0; i < inst.m; ++i)
        for (int j = 0; j < inst.n; ++j)
            (b.values[j] == 1 ? part.positive : part.negative).data.push_back(inst.entry(i, j));
    return part;
}

/// Binary entropy with the 0*log(0) = 0 convention.
inline double binary_entropy(double p) {
    double h = 0;
    if (p > 0) h -= p * std::log2(p);
    if (p < 1) h -= (1 - p) * std::log2(1 - p);
    return h;
}

/// Sum over rows of the binary entropy of the row's ones density; an empty
/// submatrix contributes 0.
inline double row_entropy(const BinarySubmatrix& sub) {
    if (sub.cols == 0) return 0;
    double total = 0;
    for (int i = 0; i < sub.m; ++i) {
        int ones = 0;
        for (int j = 0; j < sub.cols; ++j) ones += sub.entry(i, j);
        total += binary_entropy(static_cast<double>(ones) / sub.cols);
    }
    return total;
}

struct EntropyReport {
    std::uint64_t basis_index = 0;
    double J = 0;  // objective ||Ab||_2^2
    double E = 0;  // total row entropy over both partitions
    double D = 0;  // |H_row(A1) - H_row(A2)|
    // NaN when E == 0 (an all-one-color candidate); such candidates rank last.
    double ratio = 0;     // D / E
    double radial = 0;    // sqrt(J^2 + D^2 + (1/E)^2)
    double combined = 0;  // sqrt(J^2 + (D/E)^2)
};

struct ScoreResult {
    std::vector<EntropyReport> reports;  // one per candidate, input order
    std::size_t best_ratio = 0;
    std::size_t best_radial = 0;
    std::size_t best_combined = 0;
};

inline ScoreResult score_candidates(const SetBalancingInstance& inst,
                                    const std::vector<Bicoloring>& candidates) {
    require(!candidates.empty(), "score: candidate set is empty");
    ScoreResult result;
    for (const Bicoloring& b : candidates) {
        const ColumnPartition part = partition_columns(inst, b);
        EntropyReport r;
        r.basis_index = encode(b);
        r.J = objective(inst, b);
        const double h1 = row_entropy(part.positive);
        const double h2 = row_entropy(part.negative);
        r.E = h1 + h2;
        r.D = std::abs(h1 - h2);
        if (r.E > 0) {
            r.ratio = r.D / r.E;
            r.radial = std::sqrt(r.J * r.J + r.D * r.D + 1.0 / (r.E * r.E));
            r.combined = std::sqrt(r.J * r.J + r.ratio * r.ratio);
        } else {
            r.ratio = r.radial = r.combined = std::numeric_limits<double>::quiet_NaN();
        }
        result.reports.push_back(r);
    }
    // Arg-min with NaN ranked last; ties break toward the lower basis index.
    auto argmin = [&](double EntropyReport::* field) {
        std::size_t best = 0;
        bool have = false;
        for (std::size_t i = 0; i < result.reports.size(); ++i) {
            const double v = result.reports[i].*field;
            if (std::isnan(v)) continue;
            if (!have || v < result.reports[best].*field ||
                (v == result.reports[best].*field &&
                 result.reports[i].basis_index < result.reports[best].basis_index)) {
                best = i;
                have = true;
            }
        }
        return best;  // all-NaN sets fall back to candidate 0
    };
    result.best_ratio = argmin(&EntropyReport::ratio);
    result.best_radial = argmin(&EntropyReport::radial);
    result.best_combined = argmin(&EntropyReport::combined);
    return result;
}

/// RFC-4180 CSV, one row per candidate.
inline std::string entropy_csv(const ScoreResult& scores, int n_qubits,
                               const std::vector<std::size_t>* row_order = nullptr) {
    std::ostringstream oss;
    oss << "bitstring,J,E,D,D/E,radial,combined\r\n";
    auto emit = [&](std::size_t i) {
        const EntropyReport& r = scores.reports[i];
        oss << bitstring(r.basis_index, n_qubits) << ',' << r.J << ',' << r.E << ',' << r.D << ','
            << r.ratio << ',' << r.radial << ',' << r.combined << "\r\n";
    };
    if (row_order) {
        for (std::size_t i : *row_order) emit(i);
    } else {
        for (std::size_t i = 0; i < scores.reports.size(); ++i) emit(i);
    }
    return oss.str();
}

}  // namespace setbal

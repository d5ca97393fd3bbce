#pragma once

// Set-balancing instances, bicolorings, imbalance metrics, the QUBO form
// Q = A^T A, the spin->binary program, and the 2^n objective table shared by
// both engines. Unweighted objectives are computed in integer arithmetic so
// golden-test equality is exact.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "setbal/common.hpp"

namespace setbal {

struct SetBalancingInstance {
    int m = 0;                         // attribute rows
    int n = 0;                         // subjects / columns
    std::vector<std::uint8_t> matrix;  // row-major, entries 0/1
    std::vector<double> weights;       // per-row weights; empty = all 1

    std::uint8_t entry(int i, int j) const { return matrix[static_cast<std::size_t>(i) * n + j]; }
    bool weighted() const { return !weights.empty(); }
    double weight(int i) const { return weights.empty() ? 1.0 : weights[i]; }

    void validate() const {
        require(m >= 1 && n >= 1, "instance: m and n must be >= 1");
        require(matrix.size() == static_cast<std::size_t>(m) * n, "instance: matrix size mismatch");
        for (std::uint8_t v : matrix) require(v == 0 || v == 1, "instance: entries must be 0 or 1");
        if (!weights.empty()) {
            require(weights.size() == static_cast<std::size_t>(m), "instance: weights length != m");
            for (double w : weights) require(w > 0, "instance: weights must be positive");
        }
    }
};

struct Bicoloring {
    std::vector<int> values;  // entries in {-1, +1}

    int size() const { return static_cast<int>(values.size()); }
    void validate() const {
        for (int v : values) require(v == 1 || v == -1, "bicoloring: entries must be +1 or -1");
    }
    Bicoloring negated() const {
        Bicoloring out = *this;
        for (int& v : out.values) v = -v;
        return out;
    }
};

/// bit k = 1 <-> b_k = -1 (the global convention).
inline std::uint64_t encode(const Bicoloring& b) {
    std::uint64_t x = 0;
    for (int k = 0; k < b.size(); ++k)
        if (b.values[k] == -1) x |= std::uint64_t{1} << k;
    return x;
}

inline Bicoloring decode(std::uint64_t x, int n) {
    Bicoloring b;
    b.values.resize(n);
    for (int k = 0; k < n; ++k) b.values[k] = (x >> k) & 1 ? -1 : 1;
    return b;
}

/// Signed per-row imbalance c = A_K b.
inline std::vector<double> imbalance(const SetBalancingInstance& inst, const Bicoloring& b) {
    require(b.size() == inst.n, "imbalance: bicoloring length mismatch");
    std::vector<double> c(inst.m, 0.0);
    for (int i = 0; i < inst.m; ++i) {
        double acc = 0;
        for (int j = 0; j < inst.n; ++j) acc += inst.entry(i, j) * b.values[j];
        c[i] = inst.weight(i) * acc;
    }
    return c;
}

/// ||A_K b||_2^2, the quantity both engines minimize.
inline double objective(const SetBalancingInstance& inst, const Bicoloring& b) {
    require(b.size() == inst.n, "objective: bicoloring length mismatch");
    if (!inst.weighted()) {
        std::int64_t acc = 0;
        for (int i = 0; i < inst.m; ++i) {
            std::int64_t row = 0;
            for (int j = 0; j < inst.n; ++j)
                if (inst.entry(i, j)) row += b.values[j];
            acc += row * row;
        }
        return static_cast<double>(acc);
    }
    double acc = 0;
    for (double ci : imbalance(inst, b)) acc += ci * ci;
    return acc;
}

/// ||A_K b||_inf.
inline double infinity_imbalance(const SetBalancingInstance& inst, const Bicoloring& b) {
    double worst = 0;
    for (double ci : imbalance(inst, b)) worst = std::max(worst, std::abs(ci));
    return worst;
}

struct QuboMatrix {
    int n = 0;
    std::vector<double> q;  // row-major n x n, symmetric PSD

    double at(int j, int k) const { return q[static_cast<std::size_t>(j) * n + k]; }
};

/// Q = A_K^T A_K. Unit-weight entries count rows containing both columns.
inline QuboMatrix build_qubo(const SetBalancingInstance& inst) {
    QuboMatrix out;
    out.n = inst.n;
    out.q.assign(static_cast<std::size_t>(inst.n) * inst.n, 0.0);
    for (int i = 0; i < inst.m; ++i) {
        const double w2 = inst.weight(i) * inst.weight(i);
        for (int j = 0; j < inst.n; ++j) {
            if (!inst.entry(i, j)) continue;
            for (int k = 0; k < inst.n; ++k)
                if (inst.entry(i, k)) out.q[static_cast<std::size_t>(j) * inst.n + k] += w2;
        }
    }
    return out;
}

// Binary program over x in {0,1}^n obtained from b = 2x - 1:
//   value(x) = x^T quadratic x + linear . x + constant
// with quadratic = 4Q, linear = -4 Q 1, constant = 1^T Q 1.
struct BinaryProgram {
    int n = 0;
    std::vector<double> quadratic;  // row-major n x n
    std::vector<double> linear;
    double constant = 0;

    double quad_at(int j, int k) const { return quadratic[static_cast<std::size_t>(j) * n + k]; }
    /// Coefficient of x_j^2 in the printed-listing sense.
    double diagonal_coefficient(int j) const { return quad_at(j, j); }
    /// Coefficient of x_j x_k (j != k) in the printed-listing sense.
    double cross_coefficient(int j, int k) const { return quad_at(j, k) + quad_at(k, j); }

    double evaluate(const std::vector<int>& x) const {
        double acc = constant;
        for (int j = 0; j < n; ++j) {
            if (!x[j]) continue;
            acc += linear[j];
            for (int k = 0; k < n; ++k)
                if (x[k]) acc += quad_at(j, k);
        }
        return acc;
    }
};

inline BinaryProgram to_binary_program(const QuboMatrix& q) {
    for (int j = 0; j < q.n; ++j)
        for (int k = j + 1; k < q.n; ++k)
            require(q.at(j, k) == q.at(k, j), "binary program: Q must be symmetric");
    BinaryProgram bp;
    bp.n = q.n;
    bp.quadratic.resize(q.q.size());
    bp.linear.assign(q.n, 0.0);
    for (int j = 0; j < q.n; ++j) {
        double rowsum = 0;
        for (int k = 0; k < q.n; ++k) {
            bp.quadratic[static_cast<std::size_t>(j) * q.n + k] = 4.0 * q.at(j, k);
            rowsum += q.at(j, k);
        }
        bp.linear[j] = -4.0 * rowsum;
        bp.constant += rowsum;
    }
    return bp;
}

// values[x] = objective(decode(x)); doubles as the QAOA cost diagonal and the
// QWOA quality operator.
struct CostDiagonal {
    int n_qubits = 0;
    std::vector<double> values;

    std::uint64_t dim() const { return std::uint64_t{1} << n_qubits; }
    double min_value() const {
        double best = values[0];
        for (double v : values) best = std::min(best, v);
        return best;
    }
};

/// Tabulate the objective over all 2^n bicolorings with Gray-code updates of
/// the imbalance vector (O(m) per step).
inline CostDiagonal cost_diagonal(const SetBalancingInstance& inst) {
    inst.validate();
    check_qubit_count(inst.n);
    CostDiagonal diag;
    diag.n_qubits = inst.n;
    diag.values.assign(std::uint64_t{1} << inst.n, 0.0);

    // Rows touching each column, for incremental updates.
    std::vector<std::vector<int>> rows_of(inst.n);
    for (int i = 0; i < inst.m; ++i)
        for (int j = 0; j < inst.n; ++j)
            if (inst.entry(i, j)) rows_of[j].push_back(i);

    std::vector<double> c(inst.m);
    double f = 0;
    for (int i = 0; i < inst.m; ++i) {
        double row = 0;
        for (int j = 0; j < inst.n; ++j) row += inst.entry(i, j);
        c[i] = inst.weight(i) * row;  // b = all +1 at x = 0
        f += c[i] * c[i];
    }
    diag.values[0] = f;

    std::vector<int> spin(inst.n, 1);
    const std::uint64_t total = diag.dim();
    for (std::uint64_t i = 1; i < total; ++i) {
        const int k = std::countr_zero(i);  // flipped variable in Gray order
        const double step = -2.0 * spin[k];
        spin[k] = -spin[k];
        for (int r : rows_of[k]) {
            const double d = step * inst.weight(r);
            f += d * (2.0 * c[r] + d);
            c[r] += d;
        }
        diag.values[i ^ (i >> 1)] = f;
    }
    return diag;
}

// ---- JSON (instance schema) ----

inline nlohmann::json instance_to_json(const SetBalancingInstance& inst) {
    nlohmann::json j;
    j["m"] = inst.m;
    j["n"] = inst.n;
    auto rows = nlohmann::json::array();
    for (int i = 0; i < inst.m; ++i) {
        auto row = nlohmann::json::array();
        for (int k = 0; k < inst.n; ++k) row.push_back(static_cast<int>(inst.entry(i, k)));
        rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
    if (inst.weighted()) j["weights"] = inst.weights;
    return j;
}

/// Strict parse: required keys m/n/matrix, optional weights, anything else rejected.
inline SetBalancingInstance instance_from_json(const nlohmann::json& j) {
    require(j.is_object(), "instance json: not an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        require(key == "m" || key == "n" || key == "matrix" || key == "weights",
                "instance json: unknown key '" + key + "'");
    }
    require(j.contains("m") && j.contains("n") && j.contains("matrix"),
            "instance json: m, n and matrix are required");
    require(j["m"].is_number_integer() && j["n"].is_number_integer(),
            "instance json: m and n must be integers");
    SetBalancingInstance inst;
    inst.m = j["m"].get<int>();
    inst.n = j["n"].get<int>();
    require(inst.m >= 1 && inst.n >= 1, "instance json: m and n must be >= 1");
    require(j["matrix"].is_array() && j["matrix"].size() == static_cast<std::size_t>(inst.m),
            "instance json: matrix must have m rows");
    for (const auto& row : j["matrix"]) {
        require(row.is_array() && row.size() == static_cast<std::size_t>(inst.n),
                "instance json: each row must have n entries");
        for (const auto& v : row) {
            require(v.is_number_integer(), "instance json: entries must be integers");
            const int e = v.get<int>();
            require(e == 0 || e == 1, "instance json: entries must be 0 or 1");
            inst.matrix.push_back(static_cast<std::uint8_t>(e));
        }
    }
    if (j.contains("weights")) {
        require(j["weights"].is_array() && j["weights"].size() == static_cast<std::size_t>(inst.m),
                "instance json: weights must have m entries");
        for (const auto& v : j["weights"]) {
            require(v.is_number(), "instance json: weights must be numbers");
            inst.weights.push_back(v.get<double>());
        }
    }
    inst.validate();
    return inst;
}

/// Render a basis index as bitstring text, most significant variable first.
inline std::string bitstring(std::uint64_t x, int n) {
    std::string s(n, '0');
    for (int k = 0; k < n; ++k)
        if ((x >> k) & 1) s[n - 1 - k] = '1';
    return s;
}

}  // namespace setbal

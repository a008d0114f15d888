#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace segeval {

/// Dense non-negative integer matrix, row-major.
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::int64_t> values;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), values(std::size_t(r) * c, 0) {}
    IntMatrix(int r, int c, std::vector<std::int64_t> v)
        : rows(r), cols(c), values(std::move(v)) {
        if (values.size() != std::size_t(rows) * cols)
            throw std::invalid_argument("matrix storage does not match its dimensions");
    }

    std::int64_t at(int r, int c) const { return values[std::size_t(r) * cols + c]; }
    std::int64_t& at(int r, int c) { return values[std::size_t(r) * cols + c]; }
    bool empty() const { return rows == 0 || cols == 0; }
};

struct AssignmentResult {
    std::int64_t total = 0;
    std::vector<std::pair<int, int>> matched_pairs;  // (row, column), an optimal witness
};

/// Maximum achievable sum selecting at most one entry per row and at most one
/// per column. Exact: augmenting-path assignment with potentials, run on the
/// matrix padded square with zeros so unmatched rows/columns cost nothing.
inline AssignmentResult max_assignment_total(const IntMatrix& sub) {
    AssignmentResult result;
    if (sub.empty()) return result;

    for (std::int64_t v : sub.values)
        if (v < 0) throw std::invalid_argument("assignment requires non-negative entries");

    const int k = std::max(sub.rows, sub.cols);
    constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

    // cost = -value, 1-based, padded with zeros; minimising cost maximises value.
    std::vector<std::int64_t> cost(std::size_t(k + 1) * (k + 1), 0);
    for (int r = 0; r < sub.rows; ++r)
        for (int c = 0; c < sub.cols; ++c)
            cost[std::size_t(r + 1) * (k + 1) + (c + 1)] = -sub.at(r, c);

    std::vector<std::int64_t> u(k + 1, 0), v(k + 1, 0);
    std::vector<int> match(k + 1, 0), way(k + 1, 0);  // match[j] = row held by column j
    for (int i = 1; i <= k; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<std::int64_t> min_slack(k + 1, kInf);
        std::vector<char> used(k + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = match[j0];
            int j1 = 0;
            std::int64_t delta = kInf;
            for (int j = 1; j <= k; ++j) {
                if (used[j]) continue;
                const std::int64_t cur = cost[std::size_t(i0) * (k + 1) + j] - u[i0] - v[j];
                if (cur < min_slack[j]) {
                    min_slack[j] = cur;
                    way[j] = j0;
                }
                if (min_slack[j] < delta) {
                    delta = min_slack[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= k; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    for (int j = 1; j <= k; ++j) {
        const int i = match[j];
        if (i >= 1 && i <= sub.rows && j <= sub.cols) {
            result.total += sub.at(i - 1, j - 1);
            result.matched_pairs.emplace_back(i - 1, j - 1);
        }
    }
    return result;
}

/// Test oracle: enumerate every injective row-to-column matching of maximal
/// cardinality and return the best total. Factorial in min(rows, cols), so the
/// smaller dimension is capped at 9.
inline std::int64_t brute_force_assignment_total(const IntMatrix& sub) {
    if (sub.empty()) return 0;
    const bool transposed = sub.rows > sub.cols;
    const int nr = transposed ? sub.cols : sub.rows;
    const int nc = transposed ? sub.rows : sub.cols;
    if (nr > 9)
        throw std::invalid_argument("brute-force assignment limited to min dimension 9, got " +
                                    std::to_string(nr));

    const auto value = [&](int r, int c) { return transposed ? sub.at(c, r) : sub.at(r, c); };

    std::int64_t best = 0;
    std::vector<char> used(nc, 0);
    const auto recurse = [&](auto&& self, int r, std::int64_t sum) -> void {
        if (r == nr) {
            if (sum > best) best = sum;
            return;
        }
        for (int c = 0; c < nc; ++c) {
            if (used[c]) continue;
            used[c] = 1;
            self(self, r + 1, sum + value(r, c));
            used[c] = 0;
        }
    };
    recurse(recurse, 0, 0);
    return best;
}

}  // namespace segeval

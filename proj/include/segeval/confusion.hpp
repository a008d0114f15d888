#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "segeval/label_image.hpp"

namespace segeval {

/// Ordered list of the distinct labels of one image: background first (always
/// present, even when no pixel carries it), then the rest ascending.
struct RegionIndex {
    std::vector<Label> labels;

    std::size_t size() const { return labels.size(); }

    Label background() const { return labels.front(); }

    /// Number of non-background regions.
    std::size_t region_count() const { return labels.size() - 1; }

    /// Position of `value`, or -1 when absent.
    int index_of(Label value) const {
        if (value == labels.front()) return 0;
        const auto it = std::lower_bound(labels.begin() + 1, labels.end(), value);
        if (it != labels.end() && *it == value) return int(it - labels.begin());
        return -1;
    }
};

template <LabelGridLike Grid>
RegionIndex build_region_index(const Grid& image) {
    const std::size_t n = std::size_t(image.width) * std::size_t(image.height);
    std::unordered_set<Label> seen;
    Label last = image.background;  // runs of equal labels hash only once
    for (std::size_t i = 0; i < n; ++i) {
        const Label v = image.label_at(i);
        if (v != last) {
            seen.insert(v);
            last = v;
        }
    }
    seen.erase(image.background);

    RegionIndex index;
    index.labels.reserve(seen.size() + 1);
    index.labels.push_back(image.background);
    index.labels.insert(index.labels.end(), seen.begin(), seen.end());
    std::sort(index.labels.begin() + 1, index.labels.end());
    return index;
}

/// Pixel-classification confusion matrix between a truth image (rows) and a
/// test image (columns). Entry (r,c) counts pixel positions whose truth label
/// is truth_index.labels[r] and test label is test_index.labels[c]; (0,0) is
/// background in both.
struct ConfusionMatrix {
    RegionIndex truth_index;           // rows
    RegionIndex test_index;            // columns
    std::vector<std::int64_t> counts;  // rows()*cols(), row-major

    std::size_t rows() const { return truth_index.size(); }
    std::size_t cols() const { return test_index.size(); }

    std::int64_t at(std::size_t r, std::size_t c) const { return counts[r * cols() + c]; }

    std::int64_t total() const {
        return std::accumulate(counts.begin(), counts.end(), std::int64_t(0));
    }

    std::int64_t row_sum(std::size_t r) const {
        const std::int64_t* p = counts.data() + r * cols();
        return std::accumulate(p, p + cols(), std::int64_t(0));
    }

    std::int64_t col_sum(std::size_t c) const {
        std::int64_t sum = 0;
        for (std::size_t r = 0; r < rows(); ++r) sum += counts[r * cols() + c];
        return sum;
    }
};

/// Build the confusion matrix in two passes over each image: one to collect
/// the label lists, one to count pixel pairs.
template <LabelGridLike TruthGrid, LabelGridLike TestGrid>
ConfusionMatrix build_confusion(const TruthGrid& truth, const TestGrid& test) {
    if (truth.width != test.width || truth.height != test.height)
        throw std::invalid_argument("image dimensions differ: truth is " +
                                    std::to_string(truth.width) + "x" + std::to_string(truth.height) +
                                    ", test is " + std::to_string(test.width) + "x" +
                                    std::to_string(test.height));
    if (truth.background != test.background)
        throw std::invalid_argument("background labels differ: truth uses " +
                                    std::to_string(truth.background) + ", test uses " +
                                    std::to_string(test.background));

    ConfusionMatrix c;
    c.truth_index = build_region_index(truth);
    c.test_index = build_region_index(test);
    const std::size_t n_cols = c.test_index.size();
    c.counts.assign(c.truth_index.size() * n_cols, 0);

    const std::size_t n = std::size_t(truth.width) * std::size_t(truth.height);
    Label last_truth = truth.background;
    Label last_test = test.background;
    std::size_t row = 0, col = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Label tv = truth.label_at(i);
        if (tv != last_truth) {
            row = std::size_t(c.truth_index.index_of(tv));
            last_truth = tv;
        }
        const Label sv = test.label_at(i);
        if (sv != last_test) {
            col = std::size_t(c.test_index.index_of(sv));
            last_test = sv;
        }
        ++c.counts[row * n_cols + col];
    }
    return c;
}

}  // namespace segeval

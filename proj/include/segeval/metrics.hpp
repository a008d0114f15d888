#pragma once

#include <algorithm>
#include <cstdint>

#include "segeval/assignment.hpp"
#include "segeval/confusion.hpp"
#include "segeval/label_image.hpp"

namespace segeval {

/// Marginal pixel totals of a confusion matrix. S is the non-background pixel
/// set of the test image, T of the truth image; the margins satisfy
/// |S| + |T| = |S ∪ T| + |S ∩ T|.
struct PixelTotals {
    std::int64_t intersection = 0;  // non-background in both images
    std::int64_t set_union = 0;     // non-background in either image
    std::int64_t test_size = 0;     // |S|
    std::int64_t truth_size = 0;    // |T|
};

inline PixelTotals pixel_totals(const ConfusionMatrix& c) {
    PixelTotals t;
    for (std::size_t r = 1; r < c.rows(); ++r)
        for (std::size_t col = 1; col < c.cols(); ++col) t.intersection += c.at(r, col);
    t.set_union = c.total() - c.at(0, 0);
    for (std::size_t col = 1; col < c.cols(); ++col) t.test_size += c.col_sum(col);
    for (std::size_t r = 1; r < c.rows(); ++r) t.truth_size += c.row_sum(r);
    return t;
}

/// The non-background submatrix counts[1.., 1..]; rows are truth regions,
/// columns test regions.
inline IntMatrix object_submatrix(const ConfusionMatrix& c) {
    IntMatrix sub(int(c.rows()) - 1, int(c.cols()) - 1);
    for (int r = 0; r < sub.rows; ++r)
        for (int col = 0; col < sub.cols; ++col) sub.at(r, col) = c.at(r + 1, col + 1);
    return sub;
}

struct RegionCounts {
    int truth_regions = 0;
    int test_regions = 0;
    int difference = 0;  // truth minus test; negative means the test over-segments
};

inline RegionCounts region_counts(const ConfusionMatrix& c) {
    RegionCounts counts;
    counts.truth_regions = int(c.rows()) - 1;
    counts.test_regions = int(c.cols()) - 1;
    counts.difference = counts.truth_regions - counts.test_regions;
    return counts;
}

/// |S ∩ T| / |S ∪ T|; 1 when both images are entirely background.
inline double object_jaccard(const ConfusionMatrix& c) {
    const PixelTotals t = pixel_totals(c);
    if (t.set_union == 0) return 1.0;
    return double(t.intersection) / double(t.set_union);
}

/// I / |S ∪ T| where I is the best one-to-one region matching total.
inline double subset_matched_jaccard(const ConfusionMatrix& c) {
    const PixelTotals t = pixel_totals(c);
    if (t.set_union == 0) return 1.0;
    const std::int64_t assigned = max_assignment_total(object_submatrix(c)).total;
    return double(assigned) / double(t.set_union);
}

/// 2|S ∩ T| / (|S| + |T|); 1 when both images are entirely background.
inline double object_dice(const ConfusionMatrix& c) {
    const PixelTotals t = pixel_totals(c);
    if (t.test_size + t.truth_size == 0) return 1.0;
    return double(2 * t.intersection) / double(t.test_size + t.truth_size);
}

/// 2I / (|S| + |T|), the Dice analogue of the subset-matched Jaccard.
inline double subset_matched_dice(const ConfusionMatrix& c) {
    const PixelTotals t = pixel_totals(c);
    if (t.test_size + t.truth_size == 0) return 1.0;
    const std::int64_t assigned = max_assignment_total(object_submatrix(c)).total;
    return double(2 * assigned) / double(t.test_size + t.truth_size);
}

namespace detail {

// Mean over source regions of the best Dice against any destination region.
// by_rows: sources are matrix rows (truth regions), destinations columns.
inline double best_dice_one_way(const ConfusionMatrix& c, bool by_rows) {
    const std::size_t n_src = by_rows ? c.rows() : c.cols();
    const std::size_t n_dst = by_rows ? c.cols() : c.rows();
    std::vector<std::int64_t> src_size(n_src, 0), dst_size(n_dst, 0);
    for (std::size_t i = 1; i < n_src; ++i) src_size[i] = by_rows ? c.row_sum(i) : c.col_sum(i);
    for (std::size_t j = 1; j < n_dst; ++j) dst_size[j] = by_rows ? c.col_sum(j) : c.row_sum(j);

    double sum = 0.0;
    for (std::size_t i = 1; i < n_src; ++i) {
        // best 2*overlap/(|src|+|dst|), compared exactly by cross-multiplication
        std::int64_t best_num = 0, best_den = 1;
        for (std::size_t j = 1; j < n_dst; ++j) {
            const std::int64_t overlap = by_rows ? c.at(i, j) : c.at(j, i);
            const std::int64_t num = 2 * overlap;
            const std::int64_t den = src_size[i] + dst_size[j];
            if (num * best_den > best_num * den) {
                best_num = num;
                best_den = den;
            }
        }
        sum += double(best_num) / double(best_den);
    }
    return sum / double(n_src - 1);
}

}  // namespace detail

/// The comparison metric used by leaf-segmentation challenges: mean best Dice
/// per region, run in both directions, keeping the worse result. Regions may
/// be reused across matches, unlike the assignment-based scores.
inline double symmetric_best_dice(const ConfusionMatrix& c) {
    const std::size_t truth_regions = c.rows() - 1;
    const std::size_t test_regions = c.cols() - 1;
    if (truth_regions == 0 && test_regions == 0) return 1.0;
    if (truth_regions == 0 || test_regions == 0) return 0.0;
    return std::min(detail::best_dice_one_way(c, true), detail::best_dice_one_way(c, false));
}

/// Every per-pair score and count for one object comparison.
struct MetricsReport {
    int test_region_count = 0;
    int truth_region_count = 0;
    int count_difference = 0;  // negative means the test image is over-segmented
    double object_jaccard = 0.0;
    double subset_jaccard = 0.0;
    double object_dice = 0.0;
    double subset_dice = 0.0;
    double symmetric_best_dice = 0.0;
};

inline MetricsReport metrics_from_confusion(const ConfusionMatrix& c) {
    MetricsReport report;
    const RegionCounts counts = region_counts(c);
    report.truth_region_count = counts.truth_regions;
    report.test_region_count = counts.test_regions;
    report.count_difference = counts.difference;

    const PixelTotals t = pixel_totals(c);
    const std::int64_t assigned =
        (t.set_union == 0) ? 0 : max_assignment_total(object_submatrix(c)).total;
    const std::int64_t sizes = t.test_size + t.truth_size;
    report.object_jaccard = t.set_union == 0 ? 1.0 : double(t.intersection) / double(t.set_union);
    report.subset_jaccard = t.set_union == 0 ? 1.0 : double(assigned) / double(t.set_union);
    report.object_dice = sizes == 0 ? 1.0 : double(2 * t.intersection) / double(sizes);
    report.subset_dice = sizes == 0 ? 1.0 : double(2 * assigned) / double(sizes);
    report.symmetric_best_dice = symmetric_best_dice(c);
    return report;
}

/// Build the confusion matrix once and fill every report field from it.
template <LabelGridLike TruthGrid, LabelGridLike TestGrid>
MetricsReport evaluate_pair(const TruthGrid& truth, const TestGrid& test) {
    return metrics_from_confusion(build_confusion(truth, test));
}

}  // namespace segeval

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "segeval/metrics.hpp"

namespace segeval {

/// One result line of the full CSV: all per-pair scores plus the derived
/// agreement flag and over-/under-segmentation amounts. At most one of the
/// two amounts is populated; both are empty exactly when the counts agree.
struct FullRow {
    std::string cell_id;
    MetricsReport metrics;
    bool counts_agree = false;
    std::optional<int> over_segmentation;
    std::optional<int> under_segmentation;
};

inline FullRow make_full_row(std::string cell_id, const MetricsReport& report) {
    FullRow row;
    row.cell_id = std::move(cell_id);
    row.metrics = report;
    row.counts_agree = report.count_difference == 0;
    if (report.count_difference < 0) row.over_segmentation = -report.count_difference;
    if (report.count_difference > 0) row.under_segmentation = report.count_difference;
    return row;
}

/// One row per object, in input order. With no ids given, cells are numbered
/// "0", "1", ... by row-major grid position.
inline std::vector<FullRow> make_full_rows(const std::vector<MetricsReport>& reports,
                                           const std::vector<std::string>& cell_ids = {}) {
    if (!cell_ids.empty() && cell_ids.size() != reports.size())
        throw std::invalid_argument("cell id list does not match the number of reports");
    std::vector<FullRow> rows;
    rows.reserve(reports.size());
    for (std::size_t i = 0; i < reports.size(); ++i)
        rows.push_back(make_full_row(cell_ids.empty() ? std::to_string(i) : cell_ids[i],
                                     reports[i]));
    return rows;
}

/// Aggregate statistics over a set of objects. The over/under means cover
/// only the objects with a populated amount, so over- and under-segmentation
/// of different objects cannot cancel out; score means cover every object.
struct SummaryReport {
    int object_count = 0;
    int agree_count = 0;
    int over_count = 0;
    int under_count = 0;
    std::optional<double> mean_over;
    std::optional<double> mean_under;
    double mean_object_jaccard = 0.0;
    double mean_subset_jaccard = 0.0;
    double mean_object_dice = 0.0;
    double mean_subset_dice = 0.0;
    double mean_symmetric_best_dice = 0.0;
};

inline SummaryReport summarize(const std::vector<FullRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("cannot summarize zero objects");
    SummaryReport s;
    s.object_count = int(rows.size());
    double over_sum = 0.0, under_sum = 0.0;
    for (const FullRow& row : rows) {
        if (row.counts_agree) ++s.agree_count;
        if (row.over_segmentation) {
            ++s.over_count;
            over_sum += *row.over_segmentation;
        }
        if (row.under_segmentation) {
            ++s.under_count;
            under_sum += *row.under_segmentation;
        }
        s.mean_object_jaccard += row.metrics.object_jaccard;
        s.mean_subset_jaccard += row.metrics.subset_jaccard;
        s.mean_object_dice += row.metrics.object_dice;
        s.mean_subset_dice += row.metrics.subset_dice;
        s.mean_symmetric_best_dice += row.metrics.symmetric_best_dice;
    }
    if (s.over_count > 0) s.mean_over = over_sum / s.over_count;
    if (s.under_count > 0) s.mean_under = under_sum / s.under_count;
    const double n = double(s.object_count);
    s.mean_object_jaccard /= n;
    s.mean_subset_jaccard /= n;
    s.mean_object_dice /= n;
    s.mean_subset_dice /= n;
    s.mean_symmetric_best_dice /= n;
    return s;
}

inline std::string format_ratio(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

inline constexpr const char* kFullCsvHeader =
    "cell_id,test_region_count,truth_region_count,count_difference,object_jaccard,"
    "subset_jaccard,object_dice,subset_dice,symmetric_best_dice,counts_agree,"
    "over_segmentation,under_segmentation";

inline constexpr const char* kSummaryCsvHeader =
    "object_count,agree_count,over_count,under_count,mean_over,mean_under,"
    "mean_object_jaccard,mean_subset_jaccard,mean_object_dice,mean_subset_dice,"
    "mean_symmetric_best_dice";

inline void write_full_csv(const std::vector<FullRow>& rows, std::ostream& out) {
    out << kFullCsvHeader << "\n";
    for (const FullRow& row : rows) {
        const MetricsReport& m = row.metrics;
        out << row.cell_id << ',' << m.test_region_count << ',' << m.truth_region_count << ','
            << m.count_difference << ',' << format_ratio(m.object_jaccard) << ','
            << format_ratio(m.subset_jaccard) << ',' << format_ratio(m.object_dice) << ','
            << format_ratio(m.subset_dice) << ',' << format_ratio(m.symmetric_best_dice) << ',';
        if (row.counts_agree) out << '1';
        out << ',';
        if (row.over_segmentation) out << *row.over_segmentation;
        out << ',';
        if (row.under_segmentation) out << *row.under_segmentation;
        out << "\n";
    }
}

inline void write_summary_csv(const SummaryReport& s, std::ostream& out) {
    out << kSummaryCsvHeader << "\n";
    out << s.object_count << ',' << s.agree_count << ',' << s.over_count << ',' << s.under_count
        << ',';
    if (s.mean_over) out << format_ratio(*s.mean_over);
    out << ',';
    if (s.mean_under) out << format_ratio(*s.mean_under);
    out << ',' << format_ratio(s.mean_object_jaccard) << ',' << format_ratio(s.mean_subset_jaccard)
        << ',' << format_ratio(s.mean_object_dice) << ',' << format_ratio(s.mean_subset_dice)
        << ',' << format_ratio(s.mean_symmetric_best_dice) << "\n";
}

namespace detail {

inline std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps line endings byte-stable
    if (!out) throw std::runtime_error("cannot open output file: " + path.string());
    return out;
}

}  // namespace detail

inline void write_full_csv(const std::vector<FullRow>& rows, const std::filesystem::path& path) {
    auto out = detail::open_csv(path);
    write_full_csv(rows, out);
    if (!out) throw std::runtime_error("failed writing: " + path.string());
}

inline void write_summary_csv(const SummaryReport& summary, const std::filesystem::path& path) {
    auto out = detail::open_csv(path);
    write_summary_csv(summary, out);
    if (!out) throw std::runtime_error("failed writing: " + path.string());
}

}  // namespace segeval

#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "segeval/label_image.hpp"
#include "segeval/metrics.hpp"
#include "segeval/png_io.hpp"
#include "segeval/report.hpp"

namespace segeval {

struct RunConfig {
    std::filesystem::path truth_path;  // file or directory
    std::filesystem::path test_path;   // same kind as truth_path
    std::optional<GridSpec> grid;
    Label background = 0;
    std::optional<std::filesystem::path> full_csv;
    std::optional<std::filesystem::path> summary_csv;
};

/// Parse "RxC" (cells down x cells across), e.g. "4x5".
inline GridSpec parse_grid_spec(const std::string& text) {
    const auto sep = text.find('x');
    if (sep == std::string::npos || sep == 0 || sep + 1 >= text.size())
        throw std::invalid_argument("grid must be given as RxC (rows down x cells across): " + text);
    GridSpec grid;
    try {
        std::size_t used = 0;
        grid.down = std::stoi(text.substr(0, sep), &used);
        if (used != sep) throw std::invalid_argument(text);
        grid.across = std::stoi(text.substr(sep + 1), &used);
        if (used != text.size() - sep - 1) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw std::invalid_argument("grid must be given as RxC (rows down x cells across): " + text);
    }
    if (grid.down < 1 || grid.across < 1)
        throw std::invalid_argument("grid cells must be at least 1x1: " + text);
    return grid;
}

/// Parse a background colour as six hex digits RRGGBB into a packed label.
inline Label parse_background_hex(const std::string& text) {
    if (text.size() != 6 ||
        !std::all_of(text.begin(), text.end(),
                     [](unsigned char ch) { return std::isxdigit(ch) != 0; }))
        throw std::invalid_argument("background colour must be six hex digits RRGGBB: " + text);
    return Label(std::stoul(text, nullptr, 16));
}

namespace detail {

inline void print_report(const MetricsReport& m, std::ostream& out) {
    out << "test_region_count: " << m.test_region_count << "\n"
        << "truth_region_count: " << m.truth_region_count << "\n"
        << "count_difference: " << m.count_difference << "\n"
        << "object_jaccard: " << format_ratio(m.object_jaccard) << "\n"
        << "subset_jaccard: " << format_ratio(m.subset_jaccard) << "\n"
        << "object_dice: " << format_ratio(m.object_dice) << "\n"
        << "subset_dice: " << format_ratio(m.subset_dice) << "\n"
        << "symmetric_best_dice: " << format_ratio(m.symmetric_best_dice) << "\n";
}

inline void print_summary(const SummaryReport& s, std::ostream& out) {
    out << "objects: " << s.object_count << "\n"
        << "counts_agree: " << s.agree_count << "\n"
        << "over_segmented: " << s.over_count << "\n"
        << "under_segmented: " << s.under_count << "\n"
        << "mean_over_segmentation: " << (s.mean_over ? format_ratio(*s.mean_over) : "n/a") << "\n"
        << "mean_under_segmentation: " << (s.mean_under ? format_ratio(*s.mean_under) : "n/a")
        << "\n"
        << "mean_object_jaccard: " << format_ratio(s.mean_object_jaccard) << "\n"
        << "mean_subset_jaccard: " << format_ratio(s.mean_subset_jaccard) << "\n"
        << "mean_object_dice: " << format_ratio(s.mean_object_dice) << "\n"
        << "mean_subset_dice: " << format_ratio(s.mean_subset_dice) << "\n"
        << "mean_symmetric_best_dice: " << format_ratio(s.mean_symmetric_best_dice) << "\n";
}

inline bool same_file_target(const std::filesystem::path& a, const std::filesystem::path& b) {
    std::error_code ec;
    const auto ca = std::filesystem::weakly_canonical(a, ec);
    const auto cb = std::filesystem::weakly_canonical(b, ec);
    return ca == cb;
}

inline void validate_config(const RunConfig& config) {
    for (const auto* output : {&config.full_csv, &config.summary_csv}) {
        if (!*output) continue;
        if (same_file_target(**output, config.truth_path) ||
            same_file_target(**output, config.test_path))
            throw std::invalid_argument("output path collides with an input: " +
                                        (*output)->string());
    }
    if (config.full_csv && config.summary_csv &&
        same_file_target(*config.full_csv, *config.summary_csv))
        throw std::invalid_argument("full and summary outputs point at the same file: " +
                                    config.full_csv->string());
}

/// Evaluate one loaded pair, appending one report per object (one per grid
/// cell when a grid is set). `id_prefix` is empty in single-pair mode.
inline void append_pair_reports(const LabelImage& truth, const LabelImage& test,
                                const std::optional<GridSpec>& grid, const std::string& id_prefix,
                                std::vector<MetricsReport>& reports,
                                std::vector<std::string>& cell_ids) {
    if (truth.width != test.width || truth.height != test.height)
        throw std::invalid_argument("image dimensions differ: truth is " +
                                    std::to_string(truth.width) + "x" +
                                    std::to_string(truth.height) + ", test is " +
                                    std::to_string(test.width) + "x" +
                                    std::to_string(test.height));
    if (grid) {
        const std::vector<LabelImage> truth_cells = crop_grid(truth, *grid);
        const std::vector<LabelImage> test_cells = crop_grid(test, *grid);
        for (std::size_t i = 0; i < truth_cells.size(); ++i) {
            reports.push_back(evaluate_pair(truth_cells[i], test_cells[i]));
            cell_ids.push_back(id_prefix.empty() ? std::to_string(i)
                                                 : id_prefix + ":" + std::to_string(i));
        }
    } else {
        reports.push_back(evaluate_pair(truth, test));
        cell_ids.push_back(id_prefix.empty() ? "0" : id_prefix);
    }
}

inline std::vector<std::string> png_names(const std::filesystem::path& dir) {
    std::vector<std::string> names;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char ch) { return char(std::tolower(ch)); });
        if (ext == ".png") names.push_back(entry.path().filename().string());
    }
    std::sort(names.begin(), names.end());
    return names;
}

}  // namespace detail

/// Drive one evaluation run. Single-pair mode prints the report to `out`;
/// grid and directory modes print the summary. CSV files are written when
/// their paths are set. Returns 0 on success, 1 with a diagnostic on `err`.
inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        detail::validate_config(config);

        const bool truth_is_dir = std::filesystem::is_directory(config.truth_path);
        const bool test_is_dir = std::filesystem::is_directory(config.test_path);
        if (truth_is_dir != test_is_dir)
            throw std::invalid_argument("inputs must both be files or both directories");

        std::vector<MetricsReport> reports;
        std::vector<std::string> cell_ids;

        if (truth_is_dir) {
            const std::vector<std::string> truth_names = detail::png_names(config.truth_path);
            const std::vector<std::string> test_names = detail::png_names(config.test_path);
            for (const std::string& name : truth_names)
                if (!std::binary_search(test_names.begin(), test_names.end(), name))
                    throw std::runtime_error("no matching test image for " +
                                             (config.truth_path / name).string());
            for (const std::string& name : test_names)
                if (!std::binary_search(truth_names.begin(), truth_names.end(), name))
                    throw std::runtime_error("no matching truth image for " +
                                             (config.test_path / name).string());
            if (truth_names.empty())
                throw std::runtime_error("no PNG files in " + config.truth_path.string());

            int uniform_width = 0, uniform_height = 0;
            for (const std::string& name : truth_names) {
                const LabelImage truth =
                    load_label_image(config.truth_path / name, config.background);
                const LabelImage test =
                    load_label_image(config.test_path / name, config.background);
                if (config.grid) {
                    if (uniform_width == 0) {
                        uniform_width = truth.width;
                        uniform_height = truth.height;
                    } else if (truth.width != uniform_width || truth.height != uniform_height) {
                        throw std::runtime_error(
                            "grid mode needs uniformly sized images, but " +
                            (config.truth_path / name).string() + " is " +
                            std::to_string(truth.width) + "x" + std::to_string(truth.height) +
                            " while earlier images are " + std::to_string(uniform_width) + "x" +
                            std::to_string(uniform_height));
                    }
                }
                try {
                    detail::append_pair_reports(truth, test, config.grid, name, reports, cell_ids);
                } catch (const std::exception& e) {
                    throw std::runtime_error(name + ": " + e.what());
                }
            }
        } else {
            const LabelImage truth = load_label_image(config.truth_path, config.background);
            const LabelImage test = load_label_image(config.test_path, config.background);
            detail::append_pair_reports(truth, test, config.grid, "", reports, cell_ids);
        }

        const std::vector<FullRow> rows = make_full_rows(reports, cell_ids);
        if (config.full_csv) write_full_csv(rows, *config.full_csv);
        if (config.summary_csv) write_summary_csv(summarize(rows), *config.summary_csv);

        if (reports.size() == 1 && !config.grid && !truth_is_dir)
            detail::print_report(reports.front(), out);
        else
            detail::print_summary(summarize(rows), out);
        return 0;
    } catch (const std::exception& e) {
        err << "segeval: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace segeval

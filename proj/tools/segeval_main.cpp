// Command-line driver: evaluate a segmentation label map (or a directory of
// them) against ground-truth annotations and report region-level scores.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "segeval/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "segeval - compare multi-region segmentation label maps against ground truth.\n"
        "Computes region counts, object and subset-matched Jaccard/Dice, and\n"
        "symmetric best Dice, with optional grid splitting and CSV reports."};

    std::string truth, test, grid_arg, background_arg = "000000", full_arg, summary_arg;
    app.add_option("--truth", truth, "ground-truth label map (PNG file or directory)")
        ->required();
    app.add_option("--test", test, "segmentation to evaluate (PNG file or directory)")
        ->required();
    app.add_option("--grid", grid_arg,
                   "split tray images into RxC cells (rows down x cells across), e.g. 4x5");
    app.add_option("--background", background_arg,
                   "background colour as hex RRGGBB (default 000000)");
    app.add_option("--full", full_arg, "write the per-object full CSV here");
    app.add_option("--summary", summary_arg, "write the aggregate summary CSV here");
    CLI11_PARSE(app, argc, argv);

    segeval::RunConfig config;
    config.truth_path = truth;
    config.test_path = test;
    try {
        if (!grid_arg.empty()) config.grid = segeval::parse_grid_spec(grid_arg);
        config.background = segeval::parse_background_hex(background_arg);
    } catch (const std::exception& e) {
        std::cerr << "segeval: " << e.what() << "\n";
        return 2;
    }
    if (!full_arg.empty()) config.full_csv = full_arg;
    if (!summary_arg.empty()) config.summary_csv = summary_arg;

    return segeval::run(config, std::cout, std::cerr);
}

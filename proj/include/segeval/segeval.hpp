#pragma once

// Region-level segmentation evaluation: confusion matrices, object and
// subset-matched Jaccard/Dice, symmetric best Dice, and CSV reporting.

#include "segeval/assignment.hpp"
#include "segeval/cli.hpp"
#include "segeval/confusion.hpp"
#include "segeval/label_image.hpp"
#include "segeval/metrics.hpp"
#include "segeval/png_io.hpp"
#include "segeval/report.hpp"

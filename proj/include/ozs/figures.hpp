#pragma once

#include "ozs/evaluate.hpp"
#include "ozs/series.hpp"

#include <filesystem>

namespace ozs {

// Figure set written by the comparison harness: each figure is a CSV of the
// plotted values plus a self-contained SVG. No plotting library involved.
//
//   fig5_series        first 500 days of the input series
//   fig6_comparison    per-model, per-split correlation bars
//   fig7_bel_scatter   BEL predicted vs observed, all splits
//   fig8_mlp_scatter   MLP predicted vs observed, all splits

void write_series_figure(const Series& series, const std::filesystem::path& dir);
void write_comparison_figure(const EvalReport& report, const std::filesystem::path& dir);
void write_scatter_figure(const ModelEval& eval, const std::string& stem,
                          const std::filesystem::path& dir);
void write_figures(const Series& series, const EvalReport& report,
                   const std::filesystem::path& dir);

} // namespace ozs

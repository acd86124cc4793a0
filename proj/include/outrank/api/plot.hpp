#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "outrank/json_codec.hpp"
#include "outrank/scenario/scenario.hpp"

namespace outrank::api {

enum class PlotKind { Points, Histogram };

struct PlotPoint {
  std::string id;
  std::string label;
  std::string display;  // net flow to 3 decimals
  double value = 0.0;   // same number as `display`
  std::size_t rank_class = 0;
};

/// Chart series in complete-ranking order, best first.
struct PlotData {
  PlotKind kind = PlotKind::Points;
  std::vector<PlotPoint> series;
};

PlotKind plot_kind_from_name(const std::string& name);
std::string plot_kind_name(PlotKind kind);

PlotData make_plot_data(const scenario::RankingReport& report, PlotKind kind);
Json plot_to_json(const PlotData& plot);

}  // namespace outrank::api

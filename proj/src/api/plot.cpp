#include "outrank/api/plot.hpp"

#include <string>

#include "outrank/error.hpp"

namespace outrank::api {

PlotKind plot_kind_from_name(const std::string& name) {
  if (name == "points") return PlotKind::Points;
  if (name == "histogram") return PlotKind::Histogram;
  throw usage_error("BAD_PLOT_KIND", "plot kind must be 'points' or 'histogram', got '" + name + "'");
}

std::string plot_kind_name(PlotKind kind) { return kind == PlotKind::Points ? "points" : "histogram"; }

PlotData make_plot_data(const scenario::RankingReport& report, PlotKind kind) {
  PlotData plot{kind, {}};
  const auto& alts = report.flows.alternatives;
  for (std::size_t c = 0; c < report.complete.classes.size(); ++c) {
    for (const auto& id : report.complete.classes[c]) {
      for (std::size_t i = 0; i < alts.size(); ++i) {
        if (alts[i].id != id) continue;
        const std::string& display = report.display_net[i];
        plot.series.push_back({id, alts[i].label, display, std::stod(display), c});
      }
    }
  }
  return plot;
}

Json plot_to_json(const PlotData& plot) {
  Json series = Json::array();
  for (const auto& p : plot.series) {
    series.push_back(
        {{"id", p.id}, {"label", p.label}, {"display", p.display}, {"value", p.value}, {"class", p.rank_class}});
  }
  return Json{{"kind", plot_kind_name(plot.kind)}, {"series", series}};
}

}  // namespace outrank::api

#include "outrank/scenario/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "outrank/error.hpp"

namespace outrank::scenario {

namespace {

std::vector<std::string> string_list(const Json& doc, const std::string& key) {
  const Json& arr = require_array(doc, key, "");
  std::vector<std::string> out;
  for (std::size_t n = 0; n < arr.size(); ++n) {
    if (!arr[n].is_string()) {
      throw data_error("SCHEMA", "expected a string id", key + "[" + std::to_string(n) + "]");
    }
    out.push_back(arr[n].get<std::string>());
  }
  return out;
}

Error with_context(const Error& e, const std::string& scenario) {
  return Error(e.kind(), e.code(), "scenario '" + scenario + "': " + e.what(), e.path());
}

void check_unique(const std::vector<std::string>& ids, const std::string& what) {
  std::set<std::string> seen;
  for (std::size_t n = 0; n < ids.size(); ++n) {
    if (!seen.insert(ids[n]).second) {
      throw data_error("DUPLICATE_ID", "duplicate " + what + " '" + ids[n] + "'",
                       what + "s[" + std::to_string(n) + "]");
    }
  }
}

}  // namespace

Scenario scenario_from_json(const Json& doc) {
  if (!doc.is_object()) throw data_error("SCHEMA", "scenario must be a JSON object");
  Scenario s;
  s.name = require_string(doc, "name", "");
  s.alternatives = string_list(doc, "alternatives");
  s.criteria = string_list(doc, "criteria");
  if (doc.contains("weights")) {
    for (const auto& [id, w] : require_object(doc, "weights", "").items()) {
      s.weights.emplace(id, rational_from_json(w, "weights." + id));
    }
  }
  if (doc.contains("functions")) {
    for (const auto& [id, f] : require_object(doc, "functions", "").items()) {
      s.functions.emplace(id, function_from_json(f, "functions." + id));
    }
  }
  if (doc.contains("directions")) {
    for (const auto& [id, d] : require_object(doc, "directions", "").items()) {
      if (!d.is_string()) throw data_error("SCHEMA", "expected a direction name", "directions." + id);
      s.directions.emplace(id, direction_from_name(d.get<std::string>(), "directions." + id));
    }
  }
  return s;
}

Json scenario_to_json(const Scenario& s) {
  Json doc{{"name", s.name}, {"alternatives", s.alternatives}, {"criteria", s.criteria}};
  if (!s.weights.empty()) {
    Json w = Json::object();
    for (const auto& [id, v] : s.weights) w[id] = rational_to_json(v);
    doc["weights"] = w;
  }
  if (!s.functions.empty()) {
    Json f = Json::object();
    for (const auto& [id, v] : s.functions) f[id] = function_to_json(v);
    doc["functions"] = f;
  }
  if (!s.directions.empty()) {
    Json d = Json::object();
    for (const auto& [id, v] : s.directions) d[id] = direction_name(v);
    doc["directions"] = d;
  }
  return doc;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::NotFound, "FILE_NOT_FOUND", "cannot open scenario '" + path.string() + "'",
                path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return scenario_from_json(parse_json(buffer.str(), "scenario " + path.string()));
}

void validate_scenario(const Scenario& s, const kb::KnowledgeBase& kb) {
  if (s.alternatives.size() < 2) {
    throw data_error("TOO_FEW_ALTERNATIVES", "ranking needs at least two alternatives", "alternatives");
  }
  if (s.criteria.empty()) throw data_error("NO_CRITERIA", "at least one criterion is required", "criteria");
  check_unique(s.alternatives, "alternative");
  check_unique(s.criteria, "criterion");
  for (const auto& id : s.alternatives) {
    if (!kb.find_instance(id)) throw Error(ErrorKind::NotFound, "UNKNOWN_ID", "unknown alternative '" + id + "'", id);
  }
  for (const auto& id : s.criteria) {
    if (!kb.find_criterion(id)) throw Error(ErrorKind::NotFound, "UNKNOWN_ID", "unknown criterion '" + id + "'", id);
  }
  auto check_override = [&s](const std::string& id, const std::string& key) {
    if (std::find(s.criteria.begin(), s.criteria.end(), id) == s.criteria.end()) {
      throw data_error("UNSELECTED_CRITERION", key + " override for criterion '" + id + "' which is not selected",
                       key + "." + id);
    }
  };
  for (const auto& [id, _] : s.weights) check_override(id, "weights");
  for (const auto& [id, _] : s.functions) check_override(id, "functions");
  for (const auto& [id, _] : s.directions) check_override(id, "directions");
}

std::string display_flow(const Rational& net) { return to_fixed(net, 3); }

RankingReport rank_table(std::string scenario_name, const PerformanceTable<Rational>& table) {
  auto credibility = preference_index(table);
  auto flow = flows(credibility);
  auto complete = rank_complete(flow);
  auto partial = rank_partial(flow);
  std::vector<std::string> display;
  for (Eigen::Index i = 0; i < flow.size(); ++i) display.push_back(display_flow(flow.net(i)));
  return RankingReport{std::move(scenario_name), table,           std::move(credibility), std::move(flow),
                       std::move(complete),      std::move(partial), std::move(display)};
}

RankingReport run_scenario(const Scenario& s, const kb::KnowledgeBase& kb) {
  try {
    validate_scenario(s, kb);
    std::vector<Rational> weights;
    for (const auto& id : s.criteria) {
      const auto it = s.weights.find(id);
      weights.push_back(it == s.weights.end() ? Rational{1} : it->second);
    }
    const auto base = kb::build_performance_table(kb, s.alternatives, s.criteria, weights);
    auto criteria = base.criteria();
    for (auto& c : criteria) {
      if (const auto f = s.functions.find(c.id); f != s.functions.end()) c.function = f->second;
      if (const auto d = s.directions.find(c.id); d != s.directions.end()) c.direction = d->second;
    }
    return rank_table(s.name, PerformanceTable<Rational>(base.alternatives(), std::move(criteria), base.scores()));
  } catch (const Error& e) {
    throw with_context(e, s.name);
  }
}

Json report_to_json(const RankingReport& report) {
  Json display = Json::array();
  for (std::size_t i = 0; i < report.display_net.size(); ++i) {
    display.push_back({{"id", report.flows.alternatives[i].id}, {"net", report.display_net[i]}});
  }
  return Json{{"scenario", report.scenario},
              {"table", table_to_json(report.table)},
              {"credibility", matrix_to_json(report.credibility.values)},
              {"flows", flows_to_json(report.flows)},
              {"complete_ranking", complete_to_json(report.complete)},
              {"partial_ranking", partial_to_json(report.partial)},
              {"net_flow_display", display}};
}

std::string serialize_report(const RankingReport& report) { return canonical(report_to_json(report)); }

RankingReport report_from_json(const Json& doc) {
  if (!doc.is_object()) throw data_error("SCHEMA", "report must be a JSON object");
  const std::string name = require_string(doc, "scenario", "");
  const auto table = table_from_json(require(doc, "table", ""), "table");
  const auto credibility = matrix_from_json(require(doc, "credibility", ""), "credibility");
  const auto flow = flows_from_json(require(doc, "flows", ""), "flows");
  const auto complete = complete_from_json(require(doc, "complete_ranking", ""), "complete_ranking");
  const auto partial = partial_from_json(require(doc, "partial_ranking", ""), "partial_ranking");
  const Json& display = require_array(doc, "net_flow_display", "");

  RankingReport recomputed = rank_table(name, table);
  auto mismatch = [](const std::string& what) {
    return data_error("INCONSISTENT_REPORT", "report " + what + " does not recompute from its inputs", what);
  };
  if (!(CredibilityMatrix<Rational>{table.alternatives(), credibility} == recomputed.credibility)) {
    throw mismatch("credibility");
  }
  if (!(flow == recomputed.flows)) throw mismatch("flows");
  if (!(complete == recomputed.complete)) throw mismatch("complete_ranking");
  if (!(partial == recomputed.partial)) throw mismatch("partial_ranking");
  if (display.size() != recomputed.display_net.size()) throw mismatch("net_flow_display");
  for (std::size_t i = 0; i < display.size(); ++i) {
    if (require_string(display[i], "net", "net_flow_display") != recomputed.display_net[i]) {
      throw mismatch("net_flow_display");
    }
  }
  return recomputed;
}

std::vector<AlternativeShift> RankDiff::changes() const {
  std::vector<AlternativeShift> out;
  std::copy_if(shared.begin(), shared.end(), std::back_inserter(out), [](const AlternativeShift& s) {
    return s.class_before != s.class_after || s.net_before != s.net_after;
  });
  return out;
}

RankDiff diff_rankings(const RankingReport& before, const RankingReport& after) {
  auto net_of = [](const RankingReport& r, const std::string& id) {
    for (Eigen::Index i = 0; i < r.flows.size(); ++i) {
      if (r.flows.alternatives[static_cast<std::size_t>(i)].id == id) return r.flows.net(i);
    }
    return Rational{0};
  };

  RankDiff diff;
  for (const auto& alt : before.table.alternatives()) {
    const auto after_class = after.complete.class_of(alt.id);
    if (!after_class) {
      diff.departed.push_back(alt.id);
      continue;
    }
    diff.shared.push_back({alt.id, *before.complete.class_of(alt.id), *after_class, net_of(before, alt.id),
                           net_of(after, alt.id)});
  }
  for (const auto& alt : after.table.alternatives()) {
    if (!before.complete.class_of(alt.id)) diff.entered.push_back(alt.id);
  }
  for (std::size_t a = 0; a < diff.shared.size(); ++a) {
    for (std::size_t b = a + 1; b < diff.shared.size(); ++b) {
      const auto& x = diff.shared[a];
      const auto& y = diff.shared[b];
      if (x.class_before < y.class_before && x.class_after > y.class_after) {
        diff.inversions.push_back({x.id, y.id});
      } else if (y.class_before < x.class_before && y.class_after > x.class_after) {
        diff.inversions.push_back({y.id, x.id});
      }
    }
  }
  return diff;
}

Json diff_to_json(const RankDiff& diff) {
  Json shared = Json::array();
  for (const auto& s : diff.shared) {
    shared.push_back({{"id", s.id},
                      {"class_before", s.class_before},
                      {"class_after", s.class_after},
                      {"class_delta", static_cast<long long>(s.class_after) - static_cast<long long>(s.class_before)},
                      {"net_before", rational_to_json(s.net_before)},
                      {"net_after", rational_to_json(s.net_after)},
                      {"net_delta", rational_to_json(s.net_after - s.net_before)}});
  }
  Json inversions = Json::array();
  for (const auto& inv : diff.inversions) {
    inversions.push_back({{"ahead_before", inv.ahead_before}, {"ahead_after", inv.ahead_after}});
  }
  return Json{{"shared", shared}, {"entered", diff.entered}, {"departed", diff.departed}, {"inversions", inversions}};
}

std::vector<SweepPoint> weight_sensitivity(const Scenario& s, const kb::KnowledgeBase& kb,
                                           const std::string& criterion, int steps) {
  if (std::find(s.criteria.begin(), s.criteria.end(), criterion) == s.criteria.end()) {
    throw usage_error("UNSELECTED_CRITERION", "criterion '" + criterion + "' is not part of scenario '" + s.name + "'",
                      criterion);
  }
  if (s.criteria.size() < 2) {
    throw usage_error("SINGLE_CRITERION", "weight sweep needs at least two criteria", criterion);
  }
  if (steps < 2) throw usage_error("BAD_STEPS", "steps must be at least 2");

  auto raw = [&s](const std::string& id) {
    const auto it = s.weights.find(id);
    return it == s.weights.end() ? Rational{1} : it->second;
  };
  Rational others{0};
  for (const auto& id : s.criteria) {
    if (id != criterion) others += raw(id);
  }
  if (others <= 0) {
    throw usage_error("ZERO_WEIGHTS", "the remaining criteria all weigh zero; rescaling is undefined", criterion);
  }

  std::vector<SweepPoint> points;
  for (int step = 0; step <= steps; ++step) {
    const Rational t = make_rational(step, steps);
    Scenario point = s;
    for (const auto& id : s.criteria) {
      point.weights[id] = id == criterion ? t : Rational(raw(id) * (1 - t) / others);
    }
    points.push_back({t, run_scenario(point, kb).complete});
  }
  return points;
}

std::vector<SweepPoint> collapse_adjacent(const std::vector<SweepPoint>& points) {
  std::vector<SweepPoint> out;
  for (const auto& p : points) {
    if (out.empty() || !(out.back().ranking == p.ranking)) out.push_back(p);
  }
  return out;
}

Json sweep_to_json(const std::vector<SweepPoint>& points) {
  Json out = Json::array();
  for (const auto& p : points) {
    out.push_back({{"weight", rational_to_json(p.weight)}, {"ranking", complete_to_json(p.ranking)}});
  }
  return out;
}

}  // namespace outrank::scenario

#pragma once

// What-if layer: a scenario selects alternatives, criteria and weights from
// the knowledge base; running it yields a self-consistent RankingReport.

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "outrank/json_codec.hpp"
#include "outrank/kb/knowledge_base.hpp"
#include "outrank/performance_table.hpp"
#include "outrank/promethee.hpp"
#include "outrank/rational.hpp"

namespace outrank::scenario {

struct Scenario {
  std::string name;
  std::vector<std::string> alternatives;
  std::vector<std::string> criteria;
  std::map<std::string, Rational> weights;  // raw, unlisted criteria weigh 1
  std::map<std::string, PreferenceFunction<Rational>> functions;
  std::map<std::string, Direction> directions;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

Scenario scenario_from_json(const Json& doc);
Json scenario_to_json(const Scenario& s);
Scenario load_scenario_file(const std::filesystem::path& path);

/// Throws unless the scenario has >= 2 alternatives, >= 1 criterion, and
/// every id (including override keys) resolves in `kb`.
void validate_scenario(const Scenario& s, const kb::KnowledgeBase& kb);

struct RankingReport {
  std::string scenario;
  PerformanceTable<Rational> table;
  CredibilityMatrix<Rational> credibility;
  FlowTable<Rational> flows;
  CompleteRanking complete;
  PartialRanking partial;
  std::vector<std::string> display_net;  // net flows to 3 decimals, table order

  friend bool operator==(const RankingReport&, const RankingReport&) = default;
};

/// Net flow rendered for presentation.
std::string display_flow(const Rational& net);

/// table -> preference index -> flows -> complete + partial ranking.
RankingReport rank_table(std::string scenario_name, const PerformanceTable<Rational>& table);

RankingReport run_scenario(const Scenario& s, const kb::KnowledgeBase& kb);

Json report_to_json(const RankingReport& report);
std::string serialize_report(const RankingReport& report);

/// Decodes a report and checks that every embedded component recomputes
/// from the one before it.
RankingReport report_from_json(const Json& doc);

struct AlternativeShift {
  std::string id;
  std::size_t class_before = 0;
  std::size_t class_after = 0;
  Rational net_before;
  Rational net_after;
  friend bool operator==(const AlternativeShift&, const AlternativeShift&) = default;
};

/// A shared pair whose strict order flipped between the two reports.
struct Inversion {
  std::string ahead_before;
  std::string ahead_after;
  friend bool operator==(const Inversion&, const Inversion&) = default;
};

struct RankDiff {
  std::vector<AlternativeShift> shared;
  std::vector<std::string> entered;
  std::vector<std::string> departed;
  std::vector<Inversion> inversions;

  /// Shared alternatives whose class index or net flow moved.
  std::vector<AlternativeShift> changes() const;
  friend bool operator==(const RankDiff&, const RankDiff&) = default;
};

RankDiff diff_rankings(const RankingReport& before, const RankingReport& after);
Json diff_to_json(const RankDiff& diff);

struct SweepPoint {
  Rational weight;
  CompleteRanking ranking;
  friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

/// Sweeps `criterion`'s weight over {0, 1/steps, ..., 1}, rescaling the
/// other weights proportionally so the total stays one.
std::vector<SweepPoint> weight_sensitivity(const Scenario& s, const kb::KnowledgeBase& kb,
                                           const std::string& criterion, int steps);

/// Drops points whose ranking equals the previous point's.
std::vector<SweepPoint> collapse_adjacent(const std::vector<SweepPoint>& points);

Json sweep_to_json(const std::vector<SweepPoint>& points);

}  // namespace outrank::scenario

#pragma once

// File-backed domain knowledge base: criterion families, criterion
// definitions, qualitative value scales, and technique instances.

#include <array>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "outrank/json_codec.hpp"
#include "outrank/performance_table.hpp"
#include "outrank/rational.hpp"

namespace outrank::kb {

inline constexpr int kMinScore = 0;
inline constexpr int kMaxScore = 4;
inline constexpr std::string_view kDefaultScaleId = "default";

struct Family {
  std::string_view id;
  std::string_view label;
};

/// The meta-family F and its five sub-families, in registry order.
const std::array<Family, 5>& families();

struct ScaleLevel {
  std::string label;
  int score = 0;
  friend bool operator==(const ScaleLevel&, const ScaleLevel&) = default;
};

struct ValueScale {
  std::string id;
  std::vector<ScaleLevel> levels;
  friend bool operator==(const ValueScale&, const ValueScale&) = default;
};

struct CriterionDef {
  std::string id;
  std::string family;
  std::string label;
  std::string scale_id;
  friend bool operator==(const CriterionDef&, const CriterionDef&) = default;
};

struct TechniqueInstance {
  std::string id;
  std::string label;
  std::map<std::string, std::string> values;  // criterion id -> qualitative label
  friend bool operator==(const TechniqueInstance&, const TechniqueInstance&) = default;
};

struct Metadata {
  std::string name;
  std::string version;
  std::string note;
  friend bool operator==(const Metadata&, const Metadata&) = default;
};

struct KnowledgeBase {
  Metadata meta;
  std::vector<ValueScale> scales;
  std::vector<CriterionDef> criteria;
  std::vector<TechniqueInstance> instances;

  const ValueScale* find_scale(std::string_view id) const;
  const CriterionDef* find_criterion(std::string_view id) const;
  const TechniqueInstance* find_instance(std::string_view id) const;

  friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;
};

struct Violation {
  std::string code;
  std::string path;
  std::string message;
  friend bool operator==(const Violation&, const Violation&) = default;
};

using ValidationReport = std::vector<Violation>;

/// Checks every structural and referential invariant. Violations are data;
/// an empty report means the KB is valid.
ValidationReport validate_kb(const KnowledgeBase& kb);
Json report_to_json(const ValidationReport& report);

/// Structural decoding only (no referential checks).
KnowledgeBase decode_kb(const Json& doc);
Json encode_kb(const KnowledgeBase& kb);

/// Parses and validates. Syntax errors carry line/column; the first
/// violation's code is raised when validation fails.
KnowledgeBase parse_kb(const std::string& text);
std::string serialize_kb(const KnowledgeBase& kb);

int qualitative_to_score(const std::string& label, const ValueScale& scale);

/// Scale used by `criterion`, throwing if it cannot be resolved.
const ValueScale& scale_for(const KnowledgeBase& kb, const CriterionDef& criterion);

/// (instance id, criterion id) pairs with no value assigned.
std::vector<std::pair<std::string, std::string>> find_gaps(
    const KnowledgeBase& kb, const std::vector<std::string>& alternatives,
    const std::vector<std::string>& criteria);

/// Scores every selected instance on every selected criterion. Weights
/// default to equal and are normalized to sum to one.
PerformanceTable<Rational> build_performance_table(
    const KnowledgeBase& kb, const std::vector<std::string>& alternatives,
    const std::vector<std::string>& criteria,
    const std::optional<std::vector<Rational>>& weights = std::nullopt);

KnowledgeBase add_instance(const KnowledgeBase& kb, TechniqueInstance instance);

/// Overwrites (or adds) the listed values of an existing instance.
KnowledgeBase update_instance_values(const KnowledgeBase& kb, const std::string& id,
                                     const std::map<std::string, std::string>& values);

/// Schema graph: root F, families, criteria, concept T, techniques.
Json export_graph(const KnowledgeBase& kb);

/// The fourteen-criterion registry with the five-level default scale and
/// no instances.
KnowledgeBase default_registry();

/// Registry plus six illustrative technique instances.
KnowledgeBase default_kb();

/// Value set for GIM, the technique added in the second experiment.
TechniqueInstance gim_instance();

KnowledgeBase load_kb_file(const std::filesystem::path& path);

/// Writes the canonical form to a sibling temp file and renames it over `path`.
void save_kb_file(const std::filesystem::path& path, const KnowledgeBase& kb);

/// Shared KB snapshot with serialized writers. Readers take an immutable
/// snapshot; mutations build a new KB, persist it, then publish it.
class KbStore {
 public:
  explicit KbStore(KnowledgeBase kb, std::optional<std::filesystem::path> path = std::nullopt);

  std::shared_ptr<const KnowledgeBase> snapshot() const;

  template <typename Mutation>
  std::shared_ptr<const KnowledgeBase> update(Mutation&& mutate) {
    std::lock_guard writer(write_mutex_);
    auto next = std::make_shared<const KnowledgeBase>(mutate(*snapshot()));
    if (path_) save_kb_file(*path_, *next);
    std::unique_lock lock(snapshot_mutex_);
    current_ = next;
    return next;
  }

 private:
  mutable std::shared_mutex snapshot_mutex_;
  std::mutex write_mutex_;
  std::shared_ptr<const KnowledgeBase> current_;
  std::optional<std::filesystem::path> path_;
};

}  // namespace outrank::kb

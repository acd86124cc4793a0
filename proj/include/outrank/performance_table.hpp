#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <unordered_set>
#include <utility>
#include <vector>

#include "outrank/error.hpp"
#include "outrank/preference_function.hpp"
#include "outrank/rational.hpp"

namespace outrank {

struct AlternativeId {
  std::string id;
  std::string label;
  friend bool operator==(const AlternativeId&, const AlternativeId&) = default;
};

enum class Direction { Maximize, Minimize };

template <typename Scalar>
struct CriterionSpec {
  std::string id;
  Scalar weight{1};
  Direction direction = Direction::Maximize;
  PreferenceFunction<Scalar> function = Usual{};
  friend bool operator==(const CriterionSpec&, const CriterionSpec&) = default;
};

/// Alternatives x criteria score matrix. Construction validates every
/// invariant, so a live table is always well-formed.
template <typename Scalar>
class PerformanceTable {
 public:
  PerformanceTable(std::vector<AlternativeId> alternatives,
                   std::vector<CriterionSpec<Scalar>> criteria,
                   Matrix<Scalar> scores)
      : alternatives_(std::move(alternatives)),
        criteria_(std::move(criteria)),
        scores_(std::move(scores)) {
    validate();
  }

  const std::vector<AlternativeId>& alternatives() const { return alternatives_; }
  const std::vector<CriterionSpec<Scalar>>& criteria() const { return criteria_; }
  const Matrix<Scalar>& scores() const { return scores_; }

  Eigen::Index alternative_count() const { return scores_.rows(); }
  Eigen::Index criterion_count() const { return scores_.cols(); }

  const Scalar& score(Eigen::Index alt, Eigen::Index crit) const {
    return scores_(alt, crit);
  }

  /// Weights scaled to sum to exactly one.
  Vector<Scalar> normalized_weights() const {
    Vector<Scalar> w(criterion_count());
    Scalar total{0};
    for (Eigen::Index j = 0; j < w.size(); ++j) {
      w(j) = criteria_[static_cast<std::size_t>(j)].weight;
      total += w(j);
    }
    return w.unaryExpr([&total](const Scalar& v) { return Scalar(v / total); });
  }

  /// Same table with the stored weights replaced by their normalized form.
  PerformanceTable with_normalized_weights() const {
    auto criteria = criteria_;
    const Vector<Scalar> w = normalized_weights();
    for (std::size_t j = 0; j < criteria.size(); ++j) {
      criteria[j].weight = w(static_cast<Eigen::Index>(j));
    }
    return PerformanceTable(alternatives_, std::move(criteria), scores_);
  }

  friend bool operator==(const PerformanceTable& a, const PerformanceTable& b) {
    return a.alternatives_ == b.alternatives_ && a.criteria_ == b.criteria_ &&
           exact_equal(a.scores_, b.scores_);
  }

 private:
  void validate() const {
    if (alternatives_.size() < 2) {
      throw usage_error("TOO_FEW_ALTERNATIVES",
                        "ranking needs at least two alternatives");
    }
    if (criteria_.empty()) {
      throw usage_error("NO_CRITERIA", "at least one criterion is required");
    }
    if (static_cast<std::size_t>(scores_.rows()) != alternatives_.size() ||
        static_cast<std::size_t>(scores_.cols()) != criteria_.size()) {
      throw data_error("DIMENSION_MISMATCH",
                       "score matrix is " + std::to_string(scores_.rows()) + "x" +
                           std::to_string(scores_.cols()) + " but table has " +
                           std::to_string(alternatives_.size()) +
                           " alternatives and " +
                           std::to_string(criteria_.size()) + " criteria");
    }
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < alternatives_.size(); ++i) {
      const auto& alt = alternatives_[i];
      const std::string path = "alternatives[" + std::to_string(i) + "]";
      if (alt.id.empty()) {
        throw data_error("EMPTY_ID", "alternative id must not be empty", path);
      }
      if (!seen.insert(alt.id).second) {
        throw data_error("DUPLICATE_ID", "duplicate alternative '" + alt.id + "'",
                         path);
      }
    }
    seen.clear();
    bool any_positive = false;
    for (std::size_t j = 0; j < criteria_.size(); ++j) {
      const auto& c = criteria_[j];
      const std::string path = "criteria[" + std::to_string(j) + "]";
      if (c.id.empty()) {
        throw data_error("EMPTY_ID", "criterion id must not be empty", path);
      }
      if (!seen.insert(c.id).second) {
        throw data_error("DUPLICATE_ID", "duplicate criterion '" + c.id + "'", path);
      }
      if (c.weight < Scalar{0}) {
        throw config_error("NEGATIVE_WEIGHT",
                           "criterion '" + c.id + "' has a negative weight", c.id);
      }
      if (c.weight > Scalar{0}) any_positive = true;
      validate_function(c.function, c.id);
    }
    if (!any_positive) {
      throw config_error("ZERO_WEIGHTS", "at least one criterion weight must be > 0");
    }
    if constexpr (std::is_floating_point_v<Scalar>) {
      if (!scores_.allFinite()) {
        throw data_error("NON_FINITE_SCORE", "all scores must be finite");
      }
    }
  }

  std::vector<AlternativeId> alternatives_;
  std::vector<CriterionSpec<Scalar>> criteria_;
  Matrix<Scalar> scores_;
};

}  // namespace outrank

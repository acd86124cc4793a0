#pragma once

// PROMETHEE I/II over a PerformanceTable: preference index, flows, and the
// complete and partial rankings derived from them.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "outrank/error.hpp"
#include "outrank/performance_table.hpp"
#include "outrank/preference_function.hpp"
#include "outrank/rational.hpp"

namespace outrank {

/// Pairwise preference indices. Entry (i, k) is the aggregated preference
/// of alternative i over alternative k; the diagonal is zero.
template <typename Scalar>
struct CredibilityMatrix {
  std::vector<AlternativeId> alternatives;
  Matrix<Scalar> values;

  Eigen::Index size() const { return values.rows(); }
  friend bool operator==(const CredibilityMatrix& a, const CredibilityMatrix& b) {
    return a.alternatives == b.alternatives && exact_equal(a.values, b.values);
  }
};

template <typename Scalar>
struct FlowTable {
  std::vector<AlternativeId> alternatives;
  Vector<Scalar> positive;
  Vector<Scalar> negative;
  Vector<Scalar> net;

  Eigen::Index size() const { return net.size(); }
  friend bool operator==(const FlowTable& a, const FlowTable& b) {
    return a.alternatives == b.alternatives && exact_equal(a.positive, b.positive) &&
           exact_equal(a.negative, b.negative) && exact_equal(a.net, b.net);
  }
};

/// Indifference classes in strictly decreasing net-flow order.
struct CompleteRanking {
  std::vector<std::vector<std::string>> classes;

  std::optional<std::size_t> class_of(const std::string& id) const {
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (std::find(classes[c].begin(), classes[c].end(), id) != classes[c].end()) {
        return c;
      }
    }
    return std::nullopt;
  }

  std::vector<std::string> order() const {
    std::vector<std::string> out;
    for (const auto& cls : classes) out.insert(out.end(), cls.begin(), cls.end());
    return out;
  }

  friend bool operator==(const CompleteRanking&, const CompleteRanking&) = default;
};

/// Row alternative's relation to the column alternative. PreferredBy is the
/// mirror image of Prefer.
enum class Relation { Prefer, PreferredBy, Indifferent, Incomparable, Self };

class PartialRanking {
 public:
  PartialRanking() = default;
  explicit PartialRanking(std::vector<std::string> alternatives)
      : alternatives_(std::move(alternatives)),
        relations_(alternatives_.size() * alternatives_.size(), Relation::Self) {}

  std::size_t size() const { return alternatives_.size(); }
  const std::vector<std::string>& alternatives() const { return alternatives_; }

  Relation operator()(std::size_t row, std::size_t col) const {
    return relations_[row * size() + col];
  }
  Relation& operator()(std::size_t row, std::size_t col) {
    return relations_[row * size() + col];
  }

  friend bool operator==(const PartialRanking&, const PartialRanking&) = default;

 private:
  std::vector<std::string> alternatives_;
  std::vector<Relation> relations_;
};

/// score(i, j) - score(k, j), sign-flipped for Minimize criteria.
template <typename Scalar>
Scalar directed_difference(const PerformanceTable<Scalar>& table, Eigen::Index j,
                           Eigen::Index i, Eigen::Index k) {
  const auto m = table.alternative_count();
  if (j < 0 || j >= table.criterion_count() || i < 0 || i >= m || k < 0 || k >= m) {
    throw usage_error("INDEX_OUT_OF_RANGE",
                      "index out of range (criterion " + std::to_string(j) +
                          ", alternatives " + std::to_string(i) + ", " +
                          std::to_string(k) + ")");
  }
  const auto& crit = table.criteria()[static_cast<std::size_t>(j)];
  return crit.direction == Direction::Maximize ? Scalar(table.score(i, j) - table.score(k, j))
                                               : Scalar(table.score(k, j) - table.score(i, j));
}

/// Per-criterion preference degrees P_j as an m x m matrix.
template <typename Scalar>
Matrix<Scalar> preference_degrees(const PerformanceTable<Scalar>& table, Eigen::Index j) {
  const auto m = table.alternative_count();
  const auto& fn = table.criteria()[static_cast<std::size_t>(j)].function;
  Matrix<Scalar> degrees = Matrix<Scalar>::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index k = 0; k < m; ++k) {
      if (i != k) degrees(i, k) = preference_degree(directed_difference(table, j, i, k), fn);
    }
  }
  return degrees;
}

/// Weighted sum of per-criterion degrees with normalized weights.
template <typename Scalar>
CredibilityMatrix<Scalar> preference_index(const PerformanceTable<Scalar>& table) {
  const auto m = table.alternative_count();
  const Vector<Scalar> weights = table.normalized_weights();
  Matrix<Scalar> pi = Matrix<Scalar>::Zero(m, m);
  for (Eigen::Index j = 0; j < table.criterion_count(); ++j) {
    const Scalar& w = weights(j);
    if (w == Scalar{0}) continue;
    pi += preference_degrees(table, j).unaryExpr(
        [&w](const Scalar& p) { return Scalar(w * p); });
  }
  return {table.alternatives(), std::move(pi)};
}

/// Outgoing, incoming and net flows averaged over the m - 1 opponents.
template <typename Scalar>
FlowTable<Scalar> flows(const CredibilityMatrix<Scalar>& pi) {
  const auto m = pi.size();
  if (m < 2) {
    throw usage_error("TOO_FEW_ALTERNATIVES", "ranking needs at least two alternatives");
  }
  if (pi.values.cols() != m || static_cast<Eigen::Index>(pi.alternatives.size()) != m) {
    throw data_error("DIMENSION_MISMATCH", "credibility matrix must be square and labelled");
  }
  const Scalar opponents = Scalar(static_cast<long long>(m - 1));
  auto average = [&opponents](const Scalar& v) { return Scalar(v / opponents); };

  FlowTable<Scalar> out;
  out.alternatives = pi.alternatives;
  out.positive = Vector<Scalar>(pi.values.rowwise().sum()).unaryExpr(average);
  out.negative = Vector<Scalar>(pi.values.colwise().sum().transpose()).unaryExpr(average);
  out.net = out.positive - out.negative;
  return out;
}

/// PROMETHEE II: decreasing net flow; exact ties share a class and keep input order.
template <typename Scalar>
CompleteRanking rank_complete(const FlowTable<Scalar>& flow) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(flow.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&flow](Eigen::Index a, Eigen::Index b) {
    return flow.net(a) > flow.net(b);
  });

  CompleteRanking ranking;
  for (std::size_t n = 0; n < order.size(); ++n) {
    const auto idx = order[n];
    if (n == 0 || flow.net(order[n - 1]) != flow.net(idx)) ranking.classes.emplace_back();
    ranking.classes.back().push_back(flow.alternatives[static_cast<std::size_t>(idx)].id);
  }
  return ranking;
}

/// PROMETHEE I: joint comparison of outgoing and incoming flows.
template <typename Scalar>
PartialRanking rank_partial(const FlowTable<Scalar>& flow) {
  const auto m = static_cast<std::size_t>(flow.size());
  std::vector<std::string> ids;
  ids.reserve(m);
  for (const auto& alt : flow.alternatives) ids.push_back(alt.id);

  PartialRanking partial(std::move(ids));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      const auto ia = static_cast<Eigen::Index>(a);
      const auto ib = static_cast<Eigen::Index>(b);
      const Scalar& pa = flow.positive(ia);
      const Scalar& pb = flow.positive(ib);
      const Scalar& na = flow.negative(ia);
      const Scalar& nb = flow.negative(ib);
      Relation r = Relation::Incomparable;
      if (pa == pb && na == nb) {
        r = Relation::Indifferent;
      } else if (pa >= pb && na <= nb) {
        r = Relation::Prefer;
      } else if (pb >= pa && nb <= na) {
        r = Relation::PreferredBy;
      }
      partial(a, b) = r;
    }
  }
  return partial;
}

}  // namespace outrank

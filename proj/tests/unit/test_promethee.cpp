#include <doctest.h>

#include "outrank/error.hpp"
#include "outrank/promethee.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace outrank;

namespace {

Rational r(std::int64_t n, std::int64_t d = 1) { return make_rational(n, d); }

CredibilityMatrix<Rational> matrix(const std::vector<std::vector<Rational>>& rows) {
  const auto m = static_cast<Eigen::Index>(rows.size());
  Matrix<Rational> values(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index k = 0; k < m; ++k) values(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
  }
  return {gen::alternatives(rows.size()), values};
}

FlowTable<Rational> flows_from(const std::vector<std::string>& ids, const std::vector<Rational>& plus,
                               const std::vector<Rational>& minus) {
  FlowTable<Rational> f;
  const auto m = static_cast<Eigen::Index>(ids.size());
  f.positive.resize(m);
  f.negative.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    f.alternatives.push_back({ids[static_cast<std::size_t>(i)], ids[static_cast<std::size_t>(i)]});
    f.positive(i) = plus[static_cast<std::size_t>(i)];
    f.negative(i) = minus[static_cast<std::size_t>(i)];
  }
  f.net = f.positive - f.negative;
  return f;
}

/// Flow table whose net flows are the given values.
FlowTable<Rational> net_flows(const std::vector<std::string>& ids, const std::vector<Rational>& net) {
  std::vector<Rational> plus;
  std::vector<Rational> minus;
  for (const auto& v : net) {
    plus.push_back((1 + v) / 2);
    minus.push_back((1 - v) / 2);
  }
  return flows_from(ids, plus, minus);
}

}  // namespace

TEST_CASE("directed difference honours direction") {
  auto t = gen::table({{3}, {1}});
  CHECK(directed_difference(t, 0, 0, 1) == 2);
  CHECK(directed_difference(t, 0, 1, 1) == 0);

  auto crits = t.criteria();
  crits[0].direction = Direction::Minimize;
  const PerformanceTable<Rational> minimized(t.alternatives(), crits, t.scores());
  CHECK(directed_difference(minimized, 0, 0, 1) == -2);

  CHECK_THROWS_AS(directed_difference(t, 1, 0, 1), Error);
  CHECK_THROWS_AS(directed_difference(t, 0, 0, 2), Error);
}

TEST_CASE("table construction rejects malformed input") {
  CHECK_THROWS_AS(gen::table({{1, 2}}), Error);
  auto t = gen::table({{1, 2}, {2, 1}});
  auto crits = t.criteria();
  crits[0].weight = 0;
  crits[1].weight = 0;
  try {
    PerformanceTable<Rational>(t.alternatives(), crits, t.scores());
    FAIL("all-zero weights accepted");
  } catch (const Error& e) {
    CHECK(e.code() == "ZERO_WEIGHTS");
  }
  crits[1].weight = -1;
  CHECK_THROWS_AS(PerformanceTable<Rational>(t.alternatives(), crits, t.scores()), Error);

  auto alts = t.alternatives();
  alts[1].id = alts[0].id;
  CHECK_THROWS_AS(PerformanceTable<Rational>(alts, t.criteria(), t.scores()), Error);

  CHECK_THROWS_AS(PerformanceTable<Rational>(t.alternatives(), t.criteria(), Matrix<Rational>::Zero(2, 3)), Error);
}

TEST_CASE("weights are normalized to sum to exactly one") {
  auto t = gen::table({{1, 2, 3}, {2, 1, 0}});
  auto crits = t.criteria();
  crits[0].weight = r(1, 3);
  crits[1].weight = 2;
  crits[2].weight = 0;
  const PerformanceTable<Rational> weighted(t.alternatives(), crits, t.scores());
  const Vector<Rational> w = weighted.normalized_weights();
  CHECK(w(0) == r(1, 7));
  CHECK(w(1) == r(6, 7));
  CHECK(w(2) == 0);
  CHECK(w.sum() == 1);
}

TEST_CASE("preference index on small tables") {
  SUBCASE("unanimous strict preference") {
    const auto pi = preference_index(gen::table({{3, 4}, {1, 2}}));
    CHECK(pi.values(0, 1) == 1);
    CHECK(pi.values(1, 0) == 0);
  }
  SUBCASE("split criteria, checked against the brute-force oracle") {
    const std::vector<std::vector<int>> s{{4, 1}, {2, 3}};
    const auto expected = oracle::brute_force(s);
    const auto pi = preference_index(gen::table(s));
    CHECK(pi.values(0, 1) == r(expected.wins[0][1], expected.criteria));
    CHECK(pi.values(1, 0) == r(expected.wins[1][0], expected.criteria));
    CHECK(pi.values(0, 1) == r(1, 2));
    CHECK(pi.values(1, 0) == r(1, 2));
  }
  SUBCASE("identical rows") {
    const auto pi = preference_index(gen::table({{2, 2, 2}, {2, 2, 2}}));
    CHECK(pi.values(0, 1) == 0);
    CHECK(pi.values(1, 0) == 0);
  }
  SUBCASE("diagonal is zero") {
    const auto pi = preference_index(gen::table({{0, 4}, {4, 0}, {2, 2}}));
    for (Eigen::Index i = 0; i < 3; ++i) CHECK(pi.values(i, i) == 0);
  }
}

TEST_CASE("flows from hand-built credibility matrices") {
  SUBCASE("total dominance") {
    const auto f = flows(matrix({{r(0), r(1)}, {r(0), r(0)}}));
    CHECK(f.net(0) == 1);
    CHECK(f.net(1) == -1);
  }
  SUBCASE("all zero") {
    const auto f = flows(matrix({{r(0), r(0), r(0)}, {r(0), r(0), r(0)}, {r(0), r(0), r(0)}}));
    for (Eigen::Index i = 0; i < 3; ++i) CHECK(f.net(i) == 0);
  }
  SUBCASE("three-cycle: each alternative wins once and loses once") {
    const auto f = flows(matrix({{r(0), r(1), r(0)}, {r(0), r(0), r(1)}, {r(1), r(0), r(0)}}));
    for (Eigen::Index i = 0; i < 3; ++i) {
      CHECK(f.positive(i) == r(1, 2));
      CHECK(f.negative(i) == r(1, 2));
      CHECK(f.net(i) == 0);
    }
  }
  SUBCASE("single alternative is rejected") {
    try {
      flows(matrix({{r(0)}}));
      FAIL("m = 1 accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Usage);
      CHECK(std::string(e.what()).find("at least two alternatives") != std::string::npos);
    }
  }
}

TEST_CASE("complete ranking groups exact ties") {
  CHECK(rank_complete(net_flows({"a", "b"}, {r(1), r(-1)})).classes ==
        std::vector<std::vector<std::string>>{{"a"}, {"b"}});
  CHECK(rank_complete(net_flows({"a", "b", "c"}, {r(0), r(0), r(0)})).classes ==
        std::vector<std::vector<std::string>>{{"a", "b", "c"}});

  const auto ranking = rank_complete(net_flows({"PERA", "GIM", "CIMOSA", "GERAM", "GRAI", "MERISE"},
                                               {r(78, 1000), r(33, 1000), r(-22, 1000), r(-22, 1000), r(-22, 1000),
                                                r(-45, 1000)}));
  CHECK(ranking.classes ==
        std::vector<std::vector<std::string>>{{"PERA"}, {"GIM"}, {"CIMOSA", "GERAM", "GRAI"}, {"MERISE"}});
  CHECK(ranking.class_of("GRAI") == 2u);
  CHECK_FALSE(ranking.class_of("GRAI2").has_value());
}

TEST_CASE("within a class members keep input order") {
  const auto ranking = rank_complete(net_flows({"z", "a", "m"}, {r(0), r(1, 3), r(0)}));
  CHECK(ranking.classes == std::vector<std::vector<std::string>>{{"a"}, {"z", "m"}});
}

TEST_CASE("partial ranking relations") {
  SUBCASE("dominance") {
    const auto p = rank_partial(flows_from({"a", "b"}, {r(1), r(0)}, {r(0), r(1)}));
    CHECK(p(0, 1) == Relation::Prefer);
    CHECK(p(1, 0) == Relation::PreferredBy);
    CHECK(p(0, 0) == Relation::Self);
  }
  SUBCASE("crossed flows are incomparable") {
    const auto p = rank_partial(flows_from({"a", "b"}, {r(3, 4), r(1, 4)}, {r(1, 2), r(1, 4)}));
    CHECK(p(0, 1) == Relation::Incomparable);
    CHECK(p(1, 0) == Relation::Incomparable);
  }
  SUBCASE("identical flow pairs are indifferent") {
    const auto p = rank_partial(flows_from({"a", "b"}, {r(1, 3), r(1, 3)}, {r(1, 5), r(1, 5)}));
    CHECK(p(0, 1) == Relation::Indifferent);
    CHECK(p(1, 0) == Relation::Indifferent);
  }
  SUBCASE("one equal comparison and one strict is still a preference") {
    const auto p = rank_partial(flows_from({"a", "b"}, {r(1, 2), r(1, 2)}, {r(1, 5), r(2, 5)}));
    CHECK(p(0, 1) == Relation::Prefer);
  }
}

TEST_CASE("relation matrix symmetry on random tables") {
  gen::Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = gen::uniform(rng, 2, 6);
    const auto p = rank_partial(flows(preference_index(gen::rich_table(rng, gen::scores(rng, m, gen::uniform(rng, 1, 8))))));
    for (std::size_t a = 0; a < p.size(); ++a) {
      CHECK(p(a, a) == Relation::Self);
      for (std::size_t b = 0; b < p.size(); ++b) {
        if (a == b) continue;
        switch (p(a, b)) {
          case Relation::Prefer: CHECK(p(b, a) == Relation::PreferredBy); break;
          case Relation::PreferredBy: CHECK(p(b, a) == Relation::Prefer); break;
          case Relation::Indifferent: CHECK(p(b, a) == Relation::Indifferent); break;
          case Relation::Incomparable: CHECK(p(b, a) == Relation::Incomparable); break;
          case Relation::Self: FAIL("self off the diagonal"); break;
        }
      }
    }
  }
}

TEST_CASE("double instantiation agrees with the exact kernel") {
  gen::Rng rng(5);
  const auto s = gen::scores(rng, 5, 7);
  const auto exact = flows(preference_index(gen::table(s)));

  Matrix<double> scores(5, 7);
  for (Eigen::Index i = 0; i < 5; ++i) {
    for (Eigen::Index j = 0; j < 7; ++j) scores(i, j) = s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  std::vector<CriterionSpec<double>> crits;
  for (int j = 0; j < 7; ++j) crits.push_back({"c" + std::to_string(j), 1.0});
  const PerformanceTable<double> approx(gen::alternatives(5), crits, scores);
  const auto f = flows(preference_index(approx));
  for (Eigen::Index i = 0; i < 5; ++i) CHECK(f.net(i) == doctest::Approx(to_double(exact.net(i))));
}

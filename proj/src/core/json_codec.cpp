#include "outrank/json_codec.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <variant>

#include "outrank/error.hpp"

namespace outrank {

namespace {

std::string at(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string at(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

Json bigint_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max()) {
    return v.convert_to<std::int64_t>();
  }
  return v.str();
}

BigInt bigint_from_json(const Json& v, const std::string& path) {
  if (v.is_number_integer()) {
    return v.is_number_unsigned() ? BigInt(v.get<std::uint64_t>()) : BigInt(v.get<std::int64_t>());
  }
  if (v.is_string()) {
    const auto text = v.get<std::string>();
    try {
      return BigInt(text);
    } catch (const std::exception&) {
      throw data_error("BAD_RATIONAL", "'" + text + "' is not an integer", path);
    }
  }
  throw data_error("BAD_RATIONAL", "expected an integer", path);
}

void expect_type(bool ok, const std::string& expected, const std::string& path) {
  if (!ok) throw data_error("SCHEMA", "expected " + expected, path);
}

}  // namespace

std::string canonical(const Json& doc) {
  return doc.dump(2, ' ', false, Json::error_handler_t::strict) + "\n";
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t n = 0; n < limit; ++n) {
      if (text[n] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw data_error("SYNTAX",
                     what + ": syntax error at line " + std::to_string(line) + ", column " +
                         std::to_string(column));
  }
}

const Json& require(const Json& obj, const std::string& key, const std::string& path) {
  expect_type(obj.is_object(), "an object", path);
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw data_error("SCHEMA", "missing key '" + key + "'", at(path, key));
  }
  return *it;
}

std::string require_string(const Json& obj, const std::string& key, const std::string& path) {
  const Json& v = require(obj, key, path);
  expect_type(v.is_string(), "a string", at(path, key));
  return v.get<std::string>();
}

const Json& require_array(const Json& obj, const std::string& key, const std::string& path) {
  const Json& v = require(obj, key, path);
  expect_type(v.is_array(), "an array", at(path, key));
  return v;
}

const Json& require_object(const Json& obj, const std::string& key, const std::string& path) {
  const Json& v = require(obj, key, path);
  expect_type(v.is_object(), "an object", at(path, key));
  return v;
}

Json rational_to_json(const Rational& value) {
  return Json{{"num", bigint_to_json(numerator_of(value))},
              {"den", bigint_to_json(denominator_of(value))},
              {"decimal", to_fixed(value, 6)}};
}

Rational rational_from_json(const Json& value, const std::string& path) {
  if (value.is_number_integer()) return Rational{bigint_from_json(value, path)};
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const Error& e) {
      throw data_error(e.code(), e.what(), path);
    }
  }
  if (value.is_object()) {
    const BigInt num = bigint_from_json(require(value, "num", path), at(path, "num"));
    const BigInt den = bigint_from_json(require(value, "den", path), at(path, "den"));
    if (den <= 0) throw data_error("BAD_RATIONAL", "denominator must be positive", at(path, "den"));
    return Rational{num, den};
  }
  throw data_error("BAD_RATIONAL", "expected a rational", path);
}

Json function_to_json(const PreferenceFunction<Rational>& f) {
  Json out{{"type", std::string(function_name(f))}};
  std::visit(
      [&out](const auto& fn) {
        using F = std::decay_t<decltype(fn)>;
        if constexpr (std::is_same_v<F, UShape<Rational>>) {
          out["q"] = rational_to_json(fn.q);
        } else if constexpr (std::is_same_v<F, VShape<Rational>>) {
          out["p"] = rational_to_json(fn.p);
        } else if constexpr (std::is_same_v<F, Level<Rational>> || std::is_same_v<F, Linear<Rational>>) {
          out["q"] = rational_to_json(fn.q);
          out["p"] = rational_to_json(fn.p);
        } else if constexpr (std::is_same_v<F, Gaussian<Rational>>) {
          out["s"] = rational_to_json(fn.s);
        }
      },
      f);
  return out;
}

PreferenceFunction<Rational> function_from_json(const Json& value, const std::string& path) {
  const std::string type = require_string(value, "type", path);
  auto param = [&](const char* key) { return rational_from_json(require(value, key, path), at(path, key)); };
  if (type == "usual") return Usual{};
  if (type == "ushape") return UShape<Rational>{param("q")};
  if (type == "vshape") return VShape<Rational>{param("p")};
  if (type == "level") return Level<Rational>{param("q"), param("p")};
  if (type == "linear") return Linear<Rational>{param("q"), param("p")};
  if (type == "gaussian") return Gaussian<Rational>{param("s")};
  throw data_error("UNKNOWN_FUNCTION", "unknown preference function '" + type + "'", at(path, "type"));
}

std::string direction_name(Direction d) {
  return d == Direction::Maximize ? "maximize" : "minimize";
}

Direction direction_from_name(const std::string& name, const std::string& path) {
  if (name == "maximize") return Direction::Maximize;
  if (name == "minimize") return Direction::Minimize;
  throw data_error("SCHEMA", "direction must be 'maximize' or 'minimize'", path);
}

std::string relation_name(Relation r) {
  switch (r) {
    case Relation::Prefer: return "prefer";
    case Relation::PreferredBy: return "preferred_by";
    case Relation::Indifferent: return "indifferent";
    case Relation::Incomparable: return "incomparable";
    case Relation::Self: return "self";
  }
  return "self";
}

Relation relation_from_name(const std::string& name, const std::string& path) {
  for (Relation r : {Relation::Prefer, Relation::PreferredBy, Relation::Indifferent,
                     Relation::Incomparable, Relation::Self}) {
    if (relation_name(r) == name) return r;
  }
  throw data_error("SCHEMA", "unknown relation '" + name + "'", path);
}

Json table_to_json(const PerformanceTable<Rational>& table) {
  Json alts = Json::array();
  for (const auto& a : table.alternatives()) alts.push_back({{"id", a.id}, {"label", a.label}});
  Json crits = Json::array();
  for (const auto& c : table.criteria()) {
    crits.push_back({{"id", c.id},
                     {"weight", rational_to_json(c.weight)},
                     {"direction", direction_name(c.direction)},
                     {"function", function_to_json(c.function)}});
  }
  return Json{{"alternatives", alts}, {"criteria", crits}, {"scores", matrix_to_json(table.scores())}};
}

PerformanceTable<Rational> table_from_json(const Json& value, const std::string& path) {
  std::vector<AlternativeId> alts;
  const std::string apath = at(path, "alternatives");
  const Json& aj = require_array(value, "alternatives", path);
  for (std::size_t i = 0; i < aj.size(); ++i) {
    alts.push_back({require_string(aj[i], "id", at(apath, i)), require_string(aj[i], "label", at(apath, i))});
  }
  std::vector<CriterionSpec<Rational>> crits;
  const std::string cpath = at(path, "criteria");
  const Json& cj = require_array(value, "criteria", path);
  for (std::size_t j = 0; j < cj.size(); ++j) {
    const std::string p = at(cpath, j);
    CriterionSpec<Rational> c;
    c.id = require_string(cj[j], "id", p);
    c.weight = rational_from_json(require(cj[j], "weight", p), at(p, "weight"));
    c.direction = direction_from_name(require_string(cj[j], "direction", p), at(p, "direction"));
    c.function = function_from_json(require(cj[j], "function", p), at(p, "function"));
    crits.push_back(std::move(c));
  }
  return PerformanceTable<Rational>(std::move(alts), std::move(crits),
                                    matrix_from_json(require(value, "scores", path), at(path, "scores")));
}

Json matrix_to_json(const Matrix<Rational>& values) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < values.cols(); ++k) row.push_back(rational_to_json(values(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix<Rational> matrix_from_json(const Json& value, const std::string& path) {
  expect_type(value.is_array(), "an array of rows", path);
  const auto rows = static_cast<Eigen::Index>(value.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(value[0].size());
  Matrix<Rational> out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = value[static_cast<std::size_t>(i)];
    const std::string rpath = at(path, static_cast<std::size_t>(i));
    expect_type(row.is_array() && static_cast<Eigen::Index>(row.size()) == cols,
                "a row of " + std::to_string(cols) + " values", rpath);
    for (Eigen::Index k = 0; k < cols; ++k) {
      out(i, k) = rational_from_json(row[static_cast<std::size_t>(k)], at(rpath, static_cast<std::size_t>(k)));
    }
  }
  return out;
}

Json flows_to_json(const FlowTable<Rational>& flow) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < flow.size(); ++i) {
    const auto& alt = flow.alternatives[static_cast<std::size_t>(i)];
    out.push_back({{"id", alt.id},
                   {"label", alt.label},
                   {"positive", rational_to_json(flow.positive(i))},
                   {"negative", rational_to_json(flow.negative(i))},
                   {"net", rational_to_json(flow.net(i))}});
  }
  return out;
}

FlowTable<Rational> flows_from_json(const Json& value, const std::string& path) {
  expect_type(value.is_array(), "an array of flows", path);
  FlowTable<Rational> out;
  const auto m = static_cast<Eigen::Index>(value.size());
  out.positive.resize(m);
  out.negative.resize(m);
  out.net.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Json& row = value[static_cast<std::size_t>(i)];
    const std::string p = at(path, static_cast<std::size_t>(i));
    out.alternatives.push_back({require_string(row, "id", p), require_string(row, "label", p)});
    out.positive(i) = rational_from_json(require(row, "positive", p), at(p, "positive"));
    out.negative(i) = rational_from_json(require(row, "negative", p), at(p, "negative"));
    out.net(i) = rational_from_json(require(row, "net", p), at(p, "net"));
  }
  return out;
}

Json complete_to_json(const CompleteRanking& ranking) { return ranking.classes; }

CompleteRanking complete_from_json(const Json& value, const std::string& path) {
  expect_type(value.is_array(), "an array of classes", path);
  CompleteRanking out;
  for (std::size_t c = 0; c < value.size(); ++c) {
    const Json& cls = value[c];
    expect_type(cls.is_array() && !cls.empty(), "a non-empty class", at(path, c));
    auto& members = out.classes.emplace_back();
    for (std::size_t n = 0; n < cls.size(); ++n) {
      expect_type(cls[n].is_string(), "an alternative id", at(at(path, c), n));
      members.push_back(cls[n].get<std::string>());
    }
  }
  return out;
}

Json partial_to_json(const PartialRanking& ranking) {
  Json rows = Json::array();
  for (std::size_t a = 0; a < ranking.size(); ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < ranking.size(); ++b) row.push_back(relation_name(ranking(a, b)));
    rows.push_back(std::move(row));
  }
  return Json{{"alternatives", ranking.alternatives()}, {"relations", rows}};
}

PartialRanking partial_from_json(const Json& value, const std::string& path) {
  const Json& ids = require_array(value, "alternatives", path);
  std::vector<std::string> alts;
  for (std::size_t n = 0; n < ids.size(); ++n) {
    expect_type(ids[n].is_string(), "an alternative id", at(at(path, "alternatives"), n));
    alts.push_back(ids[n].get<std::string>());
  }
  PartialRanking out(alts);
  const Json& rows = require_array(value, "relations", path);
  const std::string rpath = at(path, "relations");
  expect_type(rows.size() == alts.size(), "one row per alternative", rpath);
  for (std::size_t a = 0; a < rows.size(); ++a) {
    expect_type(rows[a].is_array() && rows[a].size() == alts.size(), "a full row", at(rpath, a));
    for (std::size_t b = 0; b < alts.size(); ++b) {
      const Json& cell = rows[a][b];
      const std::string cpath = at(at(rpath, a), b);
      expect_type(cell.is_string(), "a relation name", cpath);
      out(a, b) = relation_from_name(cell.get<std::string>(), cpath);
    }
  }
  return out;
}

}  // namespace outrank

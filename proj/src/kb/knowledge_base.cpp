#include "outrank/kb/knowledge_base.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include "outrank/error.hpp"

namespace outrank::kb {

namespace {

std::string index_path(const std::string& collection, std::size_t i) {
  return collection + "[" + std::to_string(i) + "]";
}

bool is_family(std::string_view id) {
  const auto& fams = families();
  return std::any_of(fams.begin(), fams.end(), [id](const Family& f) { return f.id == id; });
}

}  // namespace

const std::array<Family, 5>& families() {
  static const std::array<Family, 5> fams{{
      {"f1", "model"},
      {"f2", "general"},
      {"f3", "structure"},
      {"f4", "resources"},
      {"f5", "views"},
  }};
  return fams;
}

const ValueScale* KnowledgeBase::find_scale(std::string_view id) const {
  auto it = std::find_if(scales.begin(), scales.end(), [id](const auto& s) { return s.id == id; });
  return it == scales.end() ? nullptr : &*it;
}

const CriterionDef* KnowledgeBase::find_criterion(std::string_view id) const {
  auto it = std::find_if(criteria.begin(), criteria.end(), [id](const auto& c) { return c.id == id; });
  return it == criteria.end() ? nullptr : &*it;
}

const TechniqueInstance* KnowledgeBase::find_instance(std::string_view id) const {
  auto it = std::find_if(instances.begin(), instances.end(), [id](const auto& t) { return t.id == id; });
  return it == instances.end() ? nullptr : &*it;
}

ValidationReport validate_kb(const KnowledgeBase& kb) {
  ValidationReport report;
  auto flag = [&report](std::string code, std::string path, std::string message) {
    report.push_back({std::move(code), std::move(path), std::move(message)});
  };

  std::set<std::string> scale_ids;
  for (std::size_t s = 0; s < kb.scales.size(); ++s) {
    const auto& scale = kb.scales[s];
    const std::string path = index_path("scales", s);
    if (scale.id.empty()) flag("EMPTY_ID", path + ".id", "scale id is empty");
    else if (!scale_ids.insert(scale.id).second) flag("DUPLICATE_ID", path + ".id", "duplicate scale '" + scale.id + "'");
    if (scale.levels.size() < 2) {
      flag("SCALE_TOO_SHORT", path + ".levels", "scale '" + scale.id + "' needs at least two levels");
    }
    std::set<std::string> labels;
    for (std::size_t l = 0; l < scale.levels.size(); ++l) {
      const auto& level = scale.levels[l];
      const std::string lpath = path + "." + index_path("levels", l);
      if (!labels.insert(level.label).second) {
        flag("DUPLICATE_LABEL", lpath + ".label", "label '" + level.label + "' repeated in scale '" + scale.id + "'");
      }
      if (level.score < kMinScore || level.score > kMaxScore) {
        flag("SCORE_OUT_OF_RANGE", lpath + ".score",
             "score " + std::to_string(level.score) + " outside " + std::to_string(kMinScore) + ".." +
                 std::to_string(kMaxScore));
      }
    }
  }

  std::set<std::string> criterion_ids;
  for (std::size_t c = 0; c < kb.criteria.size(); ++c) {
    const auto& crit = kb.criteria[c];
    const std::string path = index_path("criteria", c);
    if (crit.id.empty()) flag("EMPTY_ID", path + ".id", "criterion id is empty");
    else if (!criterion_ids.insert(crit.id).second) flag("DUPLICATE_ID", path + ".id", "duplicate criterion '" + crit.id + "'");
    if (!is_family(crit.family)) {
      flag("UNKNOWN_FAMILY", path + ".family", "unknown family '" + crit.family + "'");
    } else if (crit.id.size() <= crit.family.size() || crit.id.compare(0, crit.family.size(), crit.family) != 0) {
      flag("FAMILY_MISMATCH", path + ".family", "criterion '" + crit.id + "' does not belong to family '" + crit.family + "'");
    }
    if (!kb.find_scale(crit.scale_id)) {
      flag("UNKNOWN_SCALE", path + ".scale", "criterion '" + crit.id + "' references unknown scale '" + crit.scale_id + "'");
    }
  }

  std::set<std::string> instance_ids;
  for (std::size_t t = 0; t < kb.instances.size(); ++t) {
    const auto& inst = kb.instances[t];
    const std::string path = index_path("instances", t);
    if (inst.id.empty()) flag("EMPTY_ID", path + ".id", "instance id is empty");
    else if (!instance_ids.insert(inst.id).second) flag("DUPLICATE_ID", path + ".id", "duplicate instance '" + inst.id + "'");
    for (const auto& [criterion, label] : inst.values) {
      const std::string vpath = path + ".values." + criterion;
      const CriterionDef* def = kb.find_criterion(criterion);
      if (!def) {
        flag("UNKNOWN_CRITERION", vpath, "instance '" + inst.id + "' references unknown criterion '" + criterion + "'");
        continue;
      }
      const ValueScale* scale = kb.find_scale(def->scale_id);
      if (!scale) continue;
      const bool known = std::any_of(scale->levels.begin(), scale->levels.end(),
                                     [&label](const ScaleLevel& l) { return l.label == label; });
      if (!known) {
        flag("UNKNOWN_LABEL", vpath, "label '" + label + "' is not in scale '" + scale->id + "'");
      }
    }
  }
  return report;
}

Json report_to_json(const ValidationReport& report) {
  Json violations = Json::array();
  for (const auto& v : report) {
    violations.push_back({{"code", v.code}, {"path", v.path}, {"message", v.message}});
  }
  return Json{{"violations", violations}};
}

KnowledgeBase decode_kb(const Json& doc) {
  if (!doc.is_object()) throw data_error("SCHEMA", "knowledge base must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "meta" && key != "scales" && key != "criteria" && key != "instances") {
      throw data_error("SCHEMA", "unexpected top-level key '" + key + "'", key);
    }
  }
  KnowledgeBase kb;
  const Json& meta = require_object(doc, "meta", "");
  kb.meta.name = require_string(meta, "name", "meta");
  kb.meta.version = require_string(meta, "version", "meta");
  if (meta.contains("note")) kb.meta.note = require_string(meta, "note", "meta");

  const Json& scales = require_array(doc, "scales", "");
  for (std::size_t s = 0; s < scales.size(); ++s) {
    const std::string path = index_path("scales", s);
    ValueScale scale;
    scale.id = require_string(scales[s], "id", path);
    const Json& levels = require_array(scales[s], "levels", path);
    for (std::size_t l = 0; l < levels.size(); ++l) {
      const std::string lpath = path + "." + index_path("levels", l);
      const Json& score = require(levels[l], "score", lpath);
      if (!score.is_number_integer()) throw data_error("SCHEMA", "score must be an integer", lpath + ".score");
      scale.levels.push_back({require_string(levels[l], "label", lpath), score.get<int>()});
    }
    kb.scales.push_back(std::move(scale));
  }

  const Json& criteria = require_array(doc, "criteria", "");
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    const std::string path = index_path("criteria", c);
    kb.criteria.push_back({require_string(criteria[c], "id", path), require_string(criteria[c], "family", path),
                           require_string(criteria[c], "label", path), require_string(criteria[c], "scale", path)});
  }

  const Json& instances = require_array(doc, "instances", "");
  for (std::size_t t = 0; t < instances.size(); ++t) {
    const std::string path = index_path("instances", t);
    TechniqueInstance inst;
    inst.id = require_string(instances[t], "id", path);
    inst.label = require_string(instances[t], "label", path);
    const Json& values = require_object(instances[t], "values", path);
    for (const auto& [criterion, label] : values.items()) {
      if (!label.is_string()) throw data_error("SCHEMA", "value must be a string label", path + ".values." + criterion);
      inst.values.emplace(criterion, label.get<std::string>());
    }
    kb.instances.push_back(std::move(inst));
  }
  return kb;
}

Json encode_kb(const KnowledgeBase& kb) {
  Json meta{{"name", kb.meta.name}, {"version", kb.meta.version}};
  if (!kb.meta.note.empty()) meta["note"] = kb.meta.note;

  Json scales = Json::array();
  for (const auto& s : kb.scales) {
    Json levels = Json::array();
    for (const auto& l : s.levels) levels.push_back({{"label", l.label}, {"score", l.score}});
    scales.push_back({{"id", s.id}, {"levels", levels}});
  }
  Json criteria = Json::array();
  for (const auto& c : kb.criteria) {
    criteria.push_back({{"id", c.id}, {"family", c.family}, {"label", c.label}, {"scale", c.scale_id}});
  }
  Json instances = Json::array();
  for (const auto& t : kb.instances) {
    instances.push_back({{"id", t.id}, {"label", t.label}, {"values", Json(t.values)}});
  }
  return Json{{"meta", meta}, {"scales", scales}, {"criteria", criteria}, {"instances", instances}};
}

KnowledgeBase parse_kb(const std::string& text) {
  KnowledgeBase kb = decode_kb(parse_json(text, "knowledge base"));
  const auto report = validate_kb(kb);
  if (!report.empty()) {
    std::string message = report.front().message;
    if (report.size() > 1) message += " (+" + std::to_string(report.size() - 1) + " more)";
    throw data_error(report.front().code, message, report.front().path);
  }
  return kb;
}

std::string serialize_kb(const KnowledgeBase& kb) { return canonical(encode_kb(kb)); }

int qualitative_to_score(const std::string& label, const ValueScale& scale) {
  for (const auto& level : scale.levels) {
    if (level.label == label) return level.score;
  }
  throw data_error("UNKNOWN_LABEL", "label '" + label + "' is not in scale '" + scale.id + "'", scale.id);
}

const ValueScale& scale_for(const KnowledgeBase& kb, const CriterionDef& criterion) {
  const ValueScale* scale = kb.find_scale(criterion.scale_id);
  if (!scale) {
    throw data_error("UNKNOWN_SCALE",
                     "criterion '" + criterion.id + "' references unknown scale '" + criterion.scale_id + "'",
                     criterion.id);
  }
  return *scale;
}

std::vector<std::pair<std::string, std::string>> find_gaps(const KnowledgeBase& kb,
                                                           const std::vector<std::string>& alternatives,
                                                           const std::vector<std::string>& criteria) {
  std::vector<std::pair<std::string, std::string>> gaps;
  for (const auto& alt : alternatives) {
    const TechniqueInstance* inst = kb.find_instance(alt);
    for (const auto& crit : criteria) {
      if (!inst || !inst->values.contains(crit)) gaps.emplace_back(alt, crit);
    }
  }
  return gaps;
}

PerformanceTable<Rational> build_performance_table(const KnowledgeBase& kb,
                                                   const std::vector<std::string>& alternatives,
                                                   const std::vector<std::string>& criteria,
                                                   const std::optional<std::vector<Rational>>& weights) {
  if (alternatives.empty() || criteria.empty()) {
    throw usage_error("EMPTY_SELECTION", "select at least one alternative and one criterion");
  }
  if (weights && weights->size() != criteria.size()) {
    throw usage_error("WEIGHT_COUNT", "expected " + std::to_string(criteria.size()) + " weights, got " +
                                          std::to_string(weights->size()));
  }
  std::vector<AlternativeId> alts;
  for (const auto& id : alternatives) {
    const TechniqueInstance* inst = kb.find_instance(id);
    if (!inst) throw Error(ErrorKind::NotFound, "UNKNOWN_ID", "unknown alternative '" + id + "'", id);
    alts.push_back({inst->id, inst->label});
  }
  std::vector<const CriterionDef*> defs;
  for (const auto& id : criteria) {
    const CriterionDef* def = kb.find_criterion(id);
    if (!def) throw Error(ErrorKind::NotFound, "UNKNOWN_ID", "unknown criterion '" + id + "'", id);
    defs.push_back(def);
  }

  const auto gaps = find_gaps(kb, alternatives, criteria);
  if (!gaps.empty()) {
    std::string listing;
    for (const auto& [alt, crit] : gaps) {
      if (!listing.empty()) listing += ", ";
      listing += "(" + alt + ", " + crit + ")";
    }
    throw data_error("MISSING_VALUE", "missing values for " + listing, gaps.front().first + "." + gaps.front().second);
  }

  const auto m = static_cast<Eigen::Index>(alternatives.size());
  const auto n = static_cast<Eigen::Index>(criteria.size());
  Matrix<Rational> scores(m, n);
  std::vector<CriterionSpec<Rational>> specs;
  for (Eigen::Index j = 0; j < n; ++j) {
    const CriterionDef& def = *defs[static_cast<std::size_t>(j)];
    const ValueScale& scale = scale_for(kb, def);
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto& label = kb.find_instance(alternatives[static_cast<std::size_t>(i)])->values.at(def.id);
      scores(i, j) = Rational{qualitative_to_score(label, scale)};
    }
    CriterionSpec<Rational> spec;
    spec.id = def.id;
    spec.weight = weights ? (*weights)[static_cast<std::size_t>(j)] : Rational{1};
    specs.push_back(std::move(spec));
  }
  return PerformanceTable<Rational>(std::move(alts), std::move(specs), std::move(scores)).with_normalized_weights();
}

KnowledgeBase add_instance(const KnowledgeBase& kb, TechniqueInstance instance) {
  if (kb.find_instance(instance.id)) {
    throw Error(ErrorKind::Conflict, "DUPLICATE_ID", "instance '" + instance.id + "' already exists", instance.id);
  }
  KnowledgeBase next = kb;
  next.instances.push_back(std::move(instance));
  const auto report = validate_kb(next);
  if (!report.empty()) throw data_error(report.front().code, report.front().message, report.front().path);
  return next;
}

KnowledgeBase update_instance_values(const KnowledgeBase& kb, const std::string& id,
                                     const std::map<std::string, std::string>& values) {
  KnowledgeBase next = kb;
  auto it = std::find_if(next.instances.begin(), next.instances.end(), [&id](const auto& t) { return t.id == id; });
  if (it == next.instances.end()) {
    throw Error(ErrorKind::NotFound, "UNKNOWN_ID", "unknown instance '" + id + "'", id);
  }
  for (const auto& [criterion, label] : values) it->values[criterion] = label;
  const auto report = validate_kb(next);
  if (!report.empty()) throw data_error(report.front().code, report.front().message, report.front().path);
  return next;
}

Json export_graph(const KnowledgeBase& kb) {
  Json nodes = Json::array();
  Json edges = Json::array();
  nodes.push_back({{"id", "F"}, {"kind", "root"}, {"label", "criteria"}});
  for (const auto& fam : families()) {
    const bool used = std::any_of(kb.criteria.begin(), kb.criteria.end(),
                                  [&fam](const CriterionDef& c) { return c.family == fam.id; });
    if (!used) continue;
    const std::string node = "family:" + std::string(fam.id);
    nodes.push_back({{"id", node}, {"kind", "family"}, {"label", std::string(fam.label)}});
    edges.push_back({{"from", node}, {"to", "F"}, {"kind", "subfamily_of"}});
  }
  for (const auto& crit : kb.criteria) {
    const std::string node = "criterion:" + crit.id;
    nodes.push_back({{"id", node}, {"kind", "criterion"}, {"label", crit.label}});
    edges.push_back({{"from", node}, {"to", "family:" + crit.family}, {"kind", "member_of"}});
  }
  nodes.push_back({{"id", "T"}, {"kind", "concept"}, {"label", "technique"}});
  for (const auto& inst : kb.instances) {
    const std::string node = "technique:" + inst.id;
    nodes.push_back({{"id", node}, {"kind", "technique"}, {"label", inst.label}});
    edges.push_back({{"from", node}, {"to", "T"}, {"kind", "instance_of"}});
  }
  for (const auto& inst : kb.instances) {
    for (const auto& crit : kb.criteria) {
      const auto value = inst.values.find(crit.id);
      if (value == inst.values.end()) continue;
      edges.push_back({{"from", "technique:" + inst.id},
                       {"to", "criterion:" + crit.id},
                       {"kind", "value"},
                       {"label", value->second}});
    }
  }
  return Json{{"nodes", nodes}, {"edges", edges}};
}

KnowledgeBase load_kb_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::NotFound, "FILE_NOT_FOUND", "cannot open knowledge base '" + path.string() + "'",
                path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_kb(buffer.str());
}

void save_kb_file(const std::filesystem::path& path, const KnowledgeBase& kb) {
  auto temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw data_error("WRITE_FAILED", "cannot write '" + temp.string() + "'", temp.string());
    out << serialize_kb(kb);
    out.flush();
    if (!out) throw data_error("WRITE_FAILED", "cannot write '" + temp.string() + "'", temp.string());
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) throw data_error("WRITE_FAILED", "cannot replace '" + path.string() + "': " + ec.message(), path.string());
}

KbStore::KbStore(KnowledgeBase kb, std::optional<std::filesystem::path> path)
    : current_(std::make_shared<const KnowledgeBase>(std::move(kb))), path_(std::move(path)) {}

std::shared_ptr<const KnowledgeBase> KbStore::snapshot() const {
  std::shared_lock lock(snapshot_mutex_);
  return current_;
}

}  // namespace outrank::kb

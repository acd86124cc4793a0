#include <doctest.h>

#include <filesystem>
#include <functional>
#include <random>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "outrank/error.hpp"
#include "outrank/kb/knowledge_base.hpp"
#include "support/generators.hpp"

using namespace outrank;
using namespace outrank::kb;

namespace {

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string error_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

std::set<std::string> codes(const ValidationReport& report) {
  std::set<std::string> out;
  for (const auto& v : report) out.insert(v.code);
  return out;
}

const char* kMinimal = R"({
  "meta": {"name": "tiny", "version": "1", "note": ""},
  "scales": [{"id": "default", "levels": [{"label": "low", "score": 0}, {"label": "high", "score": 4}]}],
  "criteria": [
    {"id": "f11", "family": "f1", "label": "generic model", "scale": "default"},
    {"id": "f21", "family": "f2", "label": "learning", "scale": "default"}
  ],
  "instances": [
    {"id": "A", "label": "Alpha", "values": {"f11": "high", "f21": "low"}},
    {"id": "B", "label": "Beta", "values": {"f11": "low", "f21": "high"}}
  ]
})";

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("outrank-kb-" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("a minimal knowledge base parses and builds a table") {
  const auto kb = parse_kb(kMinimal);
  CHECK(kb.instances.size() == 2);
  const auto t = build_performance_table(kb, {"A", "B"}, {"f11", "f21"});
  CHECK(t.scores()(0, 0) == 4);
  CHECK(t.scores()(0, 1) == 0);
  CHECK(t.criteria()[0].weight == make_rational(1, 2));
  CHECK(t.criteria()[1].weight == make_rational(1, 2));
  CHECK(t.alternatives()[1] == AlternativeId{"B", "Beta"});
}

TEST_CASE("an unknown family is rejected by code") {
  std::string text = kMinimal;
  text.replace(text.find("\"family\": \"f2\""), 14, "\"family\": \"f9\"");
  CHECK(error_code([&] { parse_kb(text); }) == "UNKNOWN_FAMILY");
}

TEST_CASE("syntax and schema errors") {
  CHECK(error_code([] { parse_kb("{\"meta\": "); }) == "SYNTAX");
  CHECK(error_code([] { parse_kb("[]"); }) == "SCHEMA");
  std::string text = kMinimal;
  text.insert(1, "\"extra\": 1,");
  CHECK(error_code([&] { parse_kb(text); }) == "SCHEMA");
}

TEST_CASE("the default knowledge base validates and round-trips byte-stably") {
  const auto kb = default_kb();
  CHECK(validate_kb(kb).empty());
  CHECK(kb.criteria.size() == 14);
  CHECK(kb.instances.size() == 6);
  const std::string text = serialize_kb(kb);
  CHECK(parse_kb(text) == kb);
  CHECK(serialize_kb(parse_kb(text)) == text);
  CHECK(read_text(std::filesystem::path(OUTRANK_DATA_DIR) / "default_kb.json") == text);
}

TEST_CASE("random knowledge bases round-trip") {
  gen::Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto kb = gen::knowledge_base(rng);
    REQUIRE(validate_kb(kb).empty());
    const std::string text = serialize_kb(kb);
    CHECK(parse_kb(text) == kb);
    CHECK(serialize_kb(parse_kb(text)) == text);
  }
}

TEST_CASE("each violation class is reported with its code") {
  const auto base = parse_kb(kMinimal);
  auto expect = [](const KnowledgeBase& kb, const std::string& code) {
    CAPTURE(code);
    CHECK(codes(validate_kb(kb)).count(code) == 1);
  };
  auto kb = base;
  kb.instances[0].id = "";
  expect(kb, "EMPTY_ID");
  kb = base;
  kb.instances[1].id = "A";
  expect(kb, "DUPLICATE_ID");
  kb = base;
  kb.scales[0].levels[1].label = "low";
  expect(kb, "DUPLICATE_LABEL");
  kb = base;
  kb.scales[0].levels[1].score = 5;
  expect(kb, "SCORE_OUT_OF_RANGE");
  kb = base;
  kb.scales[0].levels.pop_back();
  expect(kb, "SCALE_TOO_SHORT");
  kb = base;
  kb.criteria[0].scale_id = "stars";
  expect(kb, "UNKNOWN_SCALE");
  kb = base;
  kb.criteria[0].family = "f7";
  expect(kb, "UNKNOWN_FAMILY");
  kb = base;
  kb.criteria[0].family = "f3";
  expect(kb, "FAMILY_MISMATCH");
  kb = base;
  kb.instances[0].values["f99"] = "low";
  expect(kb, "UNKNOWN_CRITERION");
  kb = base;
  kb.instances[0].values["f11"] = "medium";
  expect(kb, "UNKNOWN_LABEL");
}

TEST_CASE("violation reports are JSON with code and path") {
  auto kb = parse_kb(kMinimal);
  kb.instances[0].values["f11"] = "medium";
  const Json doc = report_to_json(validate_kb(kb));
  REQUIRE(doc["violations"].size() == 1);
  CHECK(doc["violations"][0]["code"] == "UNKNOWN_LABEL");
  CHECK(doc["violations"][0]["path"] == "instances[0].values.f11");
}

TEST_CASE("qualitative labels map to scores") {
  const auto kb = default_kb();
  const auto& scale = *kb.find_scale("default");
  CHECK(qualitative_to_score("unknown", scale) == 0);
  CHECK(qualitative_to_score("partial", scale) == 2);
  CHECK(qualitative_to_score("total", scale) == 4);
  CHECK(error_code([&] { qualitative_to_score("perfect", scale); }) == "UNKNOWN_LABEL");
}

TEST_CASE("missing values are all reported") {
  auto kb = parse_kb(kMinimal);
  kb.instances[0].values.erase("f21");
  kb.instances[1].values.clear();
  const auto gaps = find_gaps(kb, {"A", "B"}, {"f11", "f21"});
  CHECK(gaps == std::vector<std::pair<std::string, std::string>>{{"A", "f21"}, {"B", "f11"}, {"B", "f21"}});
  try {
    build_performance_table(kb, {"A", "B"}, {"f11", "f21"});
    FAIL("gaps accepted");
  } catch (const Error& e) {
    CHECK(e.code() == "MISSING_VALUE");
    const std::string msg = e.what();
    CHECK(msg.find("(A, f21)") != std::string::npos);
    CHECK(msg.find("(B, f11)") != std::string::npos);
    CHECK(msg.find("(B, f21)") != std::string::npos);
  }
}

TEST_CASE("selection errors") {
  const auto kb = default_kb();
  CHECK(error_code([&] { build_performance_table(kb, {}, {"f11"}); }) == "EMPTY_SELECTION");
  CHECK(error_code([&] { build_performance_table(kb, {"PERA"}, {}); }) == "EMPTY_SELECTION");
  CHECK(error_code([&] { build_performance_table(kb, {"PERA", "ZACHMAN"}, {"f11"}); }) == "UNKNOWN_ID");
  CHECK(error_code([&] { build_performance_table(kb, {"PERA", "GIM"}, {"f11"}, std::vector<Rational>{1, 2}); }) ==
        "WEIGHT_COUNT");
}

TEST_CASE("ten selected criteria get weight one tenth each") {
  const auto kb = default_kb();
  const std::vector<std::string> criteria{"f51", "f54", "f53", "f52", "f12", "f13", "f32", "f31", "f21", "f22"};
  const auto t = build_performance_table(kb, {"MERISE", "GRAI", "CIMOSA", "PERA", "GERAM"}, criteria);
  CHECK(t.scores().rows() == 5);
  CHECK(t.scores().cols() == 10);
  for (const auto& c : t.criteria()) CHECK(c.weight == make_rational(1, 10));
}

TEST_CASE("explicit weights are normalized") {
  const auto t = build_performance_table(default_kb(), {"PERA", "GIM"}, {"f11", "f12"}, std::vector<Rational>{1, 3});
  CHECK(t.criteria()[0].weight == make_rational(1, 4));
  CHECK(t.criteria()[1].weight == make_rational(3, 4));
}

TEST_CASE("adding an instance") {
  const auto full = default_kb();
  auto without_gim = full;
  std::erase_if(without_gim.instances, [](const auto& t) { return t.id == "GIM"; });
  REQUIRE(without_gim.instances.size() == 5);

  const auto restored = add_instance(without_gim, gim_instance());
  CHECK(restored.instances.size() == 6);
  CHECK(restored == full);
  CHECK(validate_kb(restored).empty());

  TechniqueInstance seventh{"IEM", "Integrated enterprise modeling", {}};
  for (const auto& c : full.criteria) seventh.values[c.id] = "good";
  const auto grown = add_instance(full, seventh);
  CHECK(grown.instances.size() == 7);
  CHECK(validate_kb(grown).empty());

  try {
    add_instance(full, gim_instance());
    FAIL("duplicate accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Conflict);
    CHECK(e.code() == "DUPLICATE_ID");
  }
  seventh.values["f11"] = "excellent";
  CHECK(error_code([&] { add_instance(full, seventh); }) == "UNKNOWN_LABEL");
}

TEST_CASE("updating instance values") {
  const auto kb = default_kb();
  const auto updated = update_instance_values(kb, "PERA", {{"f11", "total"}});
  CHECK(updated.find_instance("PERA")->values.at("f11") == "total");
  CHECK(updated.find_instance("PERA")->values.at("f12") == kb.find_instance("PERA")->values.at("f12"));
  try {
    update_instance_values(kb, "NOPE", {});
    FAIL("unknown instance accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotFound);
  }
  CHECK(error_code([&] { update_instance_values(kb, "PERA", {{"f99", "good"}}); }) == "UNKNOWN_CRITERION");
}

TEST_CASE("schema graph shape") {
  auto count = [](const Json& g, const std::string& kind) {
    std::size_t n = 0;
    for (const auto& e : g["edges"]) n += e["kind"] == kind ? 1 : 0;
    return n;
  };
  const Json registry = export_graph(default_registry());
  CHECK(registry["nodes"].size() == 21);
  CHECK(count(registry, "value") == 0);

  const Json full = export_graph(default_kb());
  CHECK(full["nodes"].size() == 27);
  CHECK(count(full, "subfamily_of") == 5);
  CHECK(count(full, "member_of") == 14);
  CHECK(count(full, "instance_of") == 6);
  CHECK(count(full, "value") == 84);

  const Json tiny = export_graph(parse_kb(kMinimal));
  // F, two used families, two criteria, T, two techniques.
  CHECK(tiny["nodes"].size() == 8);
  std::set<std::string> ids;
  for (const auto& n : full["nodes"]) ids.insert(n["id"].get<std::string>());
  for (const auto& e : full["edges"]) {
    CHECK(ids.count(e["from"].get<std::string>()) == 1);
    CHECK(ids.count(e["to"].get<std::string>()) == 1);
  }
}

TEST_CASE("saving is atomic and loadable") {
  TempDir dir;
  const auto file = dir.path / "kb.json";
  save_kb_file(file, default_kb());
  CHECK(load_kb_file(file) == default_kb());
  save_kb_file(file, default_registry());
  CHECK(load_kb_file(file) == default_registry());
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir.path)) ++entries;
  CHECK(entries == 1);
  CHECK(error_code([&] { load_kb_file(dir.path / "absent.json"); }) == "FILE_NOT_FOUND");
}

TEST_CASE("store publishes only persisted snapshots") {
  TempDir dir;
  const auto file = dir.path / "kb.json";
  save_kb_file(file, default_registry());
  KbStore store(default_registry(), file);
  const auto before = store.snapshot();

  std::vector<std::thread> writers;
  for (int w = 0; w < 4; ++w) {
    writers.emplace_back([&store, w] {
      TechniqueInstance t{"T" + std::to_string(w), "Technique", {}};
      store.update([&t](const KnowledgeBase& kb) { return add_instance(kb, t); });
    });
  }
  for (auto& t : writers) t.join();

  CHECK(before->instances.empty());
  CHECK(store.snapshot()->instances.size() == 4);
  CHECK(load_kb_file(file) == *store.snapshot());

  CHECK_THROWS_AS(store.update([](const KnowledgeBase& kb) { return add_instance(kb, {"T0", "dup", {}}); }), Error);
  CHECK(store.snapshot()->instances.size() == 4);
  CHECK(load_kb_file(file) == *store.snapshot());
}

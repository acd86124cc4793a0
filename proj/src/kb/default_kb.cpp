#include <array>
#include <string>

#include "outrank/kb/knowledge_base.hpp"

namespace outrank::kb {

namespace {

// Column order of the value rows below.
constexpr std::array<const char*, 14> kColumns{"f11", "f12", "f13", "f14", "f21", "f22", "f23",
                                               "f31", "f32", "f41", "f51", "f52", "f53", "f54"};

constexpr std::array<const char*, 5> kLevels{"unknown", "weak", "partial", "good", "total"};

TechniqueInstance technique(const char* id, const std::array<int, 14>& scores) {
  TechniqueInstance inst{id, id, {}};
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    inst.values.emplace(kColumns[c], kLevels[static_cast<std::size_t>(scores[c])]);
  }
  return inst;
}

}  // namespace

KnowledgeBase default_registry() {
  KnowledgeBase kb;
  kb.meta = {"enterprise-modeling-techniques", "1", ""};

  ValueScale scale{std::string(kDefaultScaleId), {}};
  for (std::size_t s = 0; s < kLevels.size(); ++s) scale.levels.push_back({kLevels[s], static_cast<int>(s)});
  kb.scales.push_back(std::move(scale));

  const std::string def{kDefaultScaleId};
  kb.criteria = {
      {"f11", "f1", "generic model", def},
      {"f12", "f1", "formalism", def},
      {"f13", "f1", "cycle of life", def},
      {"f14", "f1", "software support", def},
      {"f21", "f2", "learning", def},
      {"f22", "f2", "ease of use", def},
      {"f23", "f2", "time", def},
      {"f31", "f3", "decision flow", def},
      {"f32", "f3", "decision function", def},
      {"f41", "f4", "human resources", def},
      {"f51", "f5", "functional view", def},
      {"f52", "f5", "organizational view", def},
      {"f53", "f5", "resource view", def},
      {"f54", "f5", "informational view", def},
  };
  return kb;
}

TechniqueInstance gim_instance() {
  //                  f11 f12 f13 f14 f21 f22 f23 f31 f32 f41 f51 f52 f53 f54
  return technique("GIM", {2, 3, 3, 2, 2, 2, 3, 4, 4, 3, 3, 3, 2, 3});
}

KnowledgeBase default_kb() {
  KnowledgeBase kb = default_registry();
  kb.meta.note = "illustrative values authored from the technique descriptions; not measured data";
  // Scores index kLevels: 0 unknown, 1 weak, 2 partial, 3 good, 4 total.
  //                                  f11 f12 f13 f14 f21 f22 f23 f31 f32 f41 f51 f52 f53 f54
  kb.instances.push_back(technique("MERISE", {1, 3, 2, 3, 3, 3, 1, 1, 1, 1, 2, 1, 1, 4}));
  kb.instances.push_back(technique("GRAI",   {2, 3, 2, 2, 2, 2, 3, 4, 4, 3, 2, 2, 1, 2}));
  kb.instances.push_back(technique("CIMOSA", {4, 3, 3, 3, 1, 1, 2, 0, 2, 2, 4, 4, 4, 4}));
  kb.instances.push_back(technique("PERA",   {3, 2, 4, 2, 3, 3, 2, 2, 3, 4, 3, 3, 3, 3}));
  kb.instances.push_back(technique("GERAM",  {4, 2, 4, 1, 1, 1, 2, 2, 2, 3, 3, 3, 3, 3}));
  kb.instances.push_back(gim_instance());
  return kb;
}

}  // namespace outrank::kb

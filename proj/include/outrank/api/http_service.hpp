#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "outrank/kb/knowledge_base.hpp"
#include "outrank/scenario/scenario.hpp"

namespace httplib {
class Server;
}

namespace outrank::api {

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// Transport-independent request router for the workbench API. Every
/// request works on the KB snapshot taken when it starts.
class Service {
 public:
  explicit Service(kb::KbStore& store, std::map<std::string, scenario::Scenario> named_scenarios = {});

  Response handle(const std::string& method, const std::string& path, const std::string& body) const;

  /// Routes every request on `server` through handle().
  void mount(httplib::Server& server) const;

 private:
  Response get_criteria(const kb::KnowledgeBase& kb) const;
  Response post_instance(const std::string& body) const;
  Response put_values(const std::string& id, const std::string& body) const;
  Response post_rank(const kb::KnowledgeBase& kb, const std::string& body) const;
  Response post_diff(const kb::KnowledgeBase& kb, const std::string& body) const;

  kb::KbStore& store_;
  std::map<std::string, scenario::Scenario> named_;
};

/// Scenario files in `dir`, keyed by their "name" field.
std::map<std::string, scenario::Scenario> load_scenario_dir(const std::filesystem::path& dir);

/// {"code", "message", "path"} in canonical form.
std::string error_body(const std::string& code, const std::string& message, const std::string& path);

}  // namespace outrank::api

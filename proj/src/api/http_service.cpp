#include "outrank/api/http_service.hpp"

#include <httplib.h>

#include <algorithm>
#include <string_view>

#include "outrank/error.hpp"
#include "outrank/json_codec.hpp"

namespace outrank::api {

namespace {

constexpr std::string_view kInstancesPrefix = "/api/kb/instances/";
constexpr std::string_view kValuesSuffix = "/values";

int status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotFound: return 404;
    case ErrorKind::Conflict: return 409;
    case ErrorKind::Usage:
    case ErrorKind::Data:
    case ErrorKind::Config: return 422;
  }
  return 422;
}

Response json_response(int status, const Json& doc) { return {status, canonical(doc), "application/json"}; }

Response error_response(int status, const Error& e) {
  return {status, error_body(e.code(), e.what(), e.path()), "application/json"};
}

/// Errors raised while decoding a request body map to 400.
struct BadRequest {
  Error error;
};

template <typename Decode>
auto decode_or_400(Decode&& decode) -> decltype(decode()) {
  try {
    return decode();
  } catch (const Error& e) {
    throw BadRequest{e};
  } catch (const Json::exception& e) {
    throw BadRequest{data_error("SCHEMA", e.what())};
  }
}

}  // namespace

std::string error_body(const std::string& code, const std::string& message, const std::string& path) {
  return canonical(Json{{"code", code}, {"message", message}, {"path", path}});
}

Service::Service(kb::KbStore& store, std::map<std::string, scenario::Scenario> named_scenarios)
    : store_(store), named_(std::move(named_scenarios)) {}

Response Service::handle(const std::string& method, const std::string& path, const std::string& body) const {
  try {
    if (path == "/healthz" && method == "GET") return {200, "ok", "text/plain"};

    if (path == "/api/kb" && method == "GET") return {200, kb::serialize_kb(*store_.snapshot()), "application/json"};
    if (path == "/api/kb/graph" && method == "GET") return json_response(200, kb::export_graph(*store_.snapshot()));
    if (path == "/api/criteria" && method == "GET") return get_criteria(*store_.snapshot());
    if (path == "/api/kb/instances" && method == "POST") return post_instance(body);
    if (path == "/api/rank" && method == "POST") return post_rank(*store_.snapshot(), body);
    if (path == "/api/diff" && method == "POST") return post_diff(*store_.snapshot(), body);

    const std::string_view p{path};
    if (p.starts_with(kInstancesPrefix) && p.ends_with(kValuesSuffix) &&
        p.size() > kInstancesPrefix.size() + kValuesSuffix.size()) {
      const std::string id{p.substr(kInstancesPrefix.size(), p.size() - kInstancesPrefix.size() - kValuesSuffix.size())};
      if (id.find('/') == std::string::npos) {
        if (method == "PUT") return put_values(httplib::detail::decode_url(id, false), body);
        return {405, error_body("METHOD_NOT_ALLOWED", method + " not allowed on " + path, path), "application/json"};
      }
    }
    for (std::string_view known : {"/healthz", "/api/kb", "/api/kb/graph", "/api/criteria", "/api/kb/instances",
                                   "/api/rank", "/api/diff"}) {
      if (p == known) {
        return {405, error_body("METHOD_NOT_ALLOWED", method + " not allowed on " + path, path), "application/json"};
      }
    }
    return {404, error_body("NOT_FOUND", "no route for " + method + " " + path, path), "application/json"};
  } catch (const BadRequest& bad) {
    return error_response(400, bad.error);
  } catch (const Error& e) {
    return error_response(status_for(e.kind()), e);
  } catch (const std::exception& e) {
    return {500, error_body("INTERNAL", e.what(), path), "application/json"};
  }
}

Response Service::get_criteria(const kb::KnowledgeBase& kb) const {
  Json fams = Json::array();
  for (const auto& fam : kb::families()) {
    Json members = Json::array();
    for (const auto& c : kb.criteria) {
      if (c.family == fam.id) members.push_back({{"id", c.id}, {"label", c.label}, {"scale", c.scale_id}});
    }
    fams.push_back({{"id", std::string(fam.id)}, {"label", std::string(fam.label)}, {"criteria", members}});
  }
  return json_response(200, Json{{"families", fams}});
}

Response Service::post_instance(const std::string& body) const {
  const kb::TechniqueInstance inst = decode_or_400([&] {
    const Json doc = parse_json(body, "request body");
    kb::TechniqueInstance t;
    t.id = require_string(doc, "id", "");
    t.label = doc.contains("label") ? require_string(doc, "label", "") : t.id;
    if (doc.contains("values")) {
      for (const auto& [criterion, label] : require_object(doc, "values", "").items()) {
        if (!label.is_string()) throw data_error("SCHEMA", "value must be a string label", "values." + criterion);
        t.values.emplace(criterion, label.get<std::string>());
      }
    }
    return t;
  });
  if (inst.id.empty()) throw data_error("EMPTY_ID", "instance id is empty", "id");
  store_.update([&inst](const kb::KnowledgeBase& kb) { return kb::add_instance(kb, inst); });
  return json_response(201, Json{{"id", inst.id}, {"label", inst.label}, {"values", Json(inst.values)}});
}

Response Service::put_values(const std::string& id, const std::string& body) const {
  const auto values = decode_or_400([&] {
    const Json doc = parse_json(body, "request body");
    if (!doc.is_object()) throw data_error("SCHEMA", "expected an object of criterion -> label");
    std::map<std::string, std::string> out;
    for (const auto& [criterion, label] : doc.items()) {
      if (!label.is_string()) throw data_error("SCHEMA", "value must be a string label", criterion);
      out.emplace(criterion, label.get<std::string>());
    }
    return out;
  });
  const auto next =
      store_.update([&](const kb::KnowledgeBase& kb) { return kb::update_instance_values(kb, id, values); });
  const kb::TechniqueInstance& inst = *next->find_instance(id);
  return json_response(200, Json{{"id", inst.id}, {"label", inst.label}, {"values", Json(inst.values)}});
}

Response Service::post_rank(const kb::KnowledgeBase& kb, const std::string& body) const {
  const auto s = decode_or_400([&] { return scenario::scenario_from_json(parse_json(body, "request body")); });
  return {200, scenario::serialize_report(scenario::run_scenario(s, kb)), "application/json"};
}

Response Service::post_diff(const kb::KnowledgeBase& kb, const std::string& body) const {
  const Json doc = decode_or_400([&] {
    Json d = parse_json(body, "request body");
    require(d, "before", "");
    require(d, "after", "");
    return d;
  });
  auto resolve = [&](const std::string& key) {
    const Json& side = doc.at(key);
    if (side.is_string()) {
      const auto it = named_.find(side.get<std::string>());
      if (it == named_.end()) {
        throw Error(ErrorKind::NotFound, "UNKNOWN_SCENARIO", "unknown scenario '" + side.get<std::string>() + "'", key);
      }
      return scenario::run_scenario(it->second, kb);
    }
    if (side.is_object() && side.contains("table")) {
      return decode_or_400([&] {
        try {
          return scenario::report_from_json(side);
        } catch (const Error& e) {
          throw Error(e.kind(), e.code(), e.what(), key + "." + e.path());
        }
      });
    }
    throw BadRequest{data_error("SCHEMA", "expected a report object or a scenario name", key)};
  };
  const auto before = resolve("before");
  const auto after = resolve("after");
  return json_response(200, scenario::diff_to_json(scenario::diff_rankings(before, after)));
}

void Service::mount(httplib::Server& server) const {
  const auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
    const Response r = handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  server.Get(".*", dispatch);
  server.Post(".*", dispatch);
  server.Put(".*", dispatch);
  server.Patch(".*", dispatch);
  server.Delete(".*", dispatch);
  server.Options(".*", dispatch);
}

std::map<std::string, scenario::Scenario> load_scenario_dir(const std::filesystem::path& dir) {
  std::map<std::string, scenario::Scenario> out;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    auto s = scenario::load_scenario_file(f);
    out.emplace(s.name, std::move(s));
  }
  return out;
}

}  // namespace outrank::api

#include "outrank/api/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "outrank/api/http_service.hpp"
#include "outrank/api/plot.hpp"
#include "outrank/error.hpp"
#include "outrank/json_codec.hpp"
#include "outrank/kb/knowledge_base.hpp"
#include "outrank/scenario/scenario.hpp"

// After the Eigen-based headers: <resolv.h>, pulled in by httplib, defines
// a `_res` macro that collides with Eigen parameter names.
#include <CLI11.hpp>
#include <httplib.h>

namespace outrank::api {

namespace {

constexpr const char* kKbEnv = "WORKBENCH_KB_PATH";
constexpr const char* kDefaultAddr = "127.0.0.1:8080";

std::string read_file(const std::string& path, const std::string& what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::NotFound, "FILE_NOT_FOUND", "cannot open " + what + " '" + path + "'", path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string resolve_kb_path(const std::string& given) {
  if (!given.empty()) return given;
  if (const char* env = std::getenv(kKbEnv); env && *env) return env;
  throw usage_error("NO_KB", std::string("no knowledge base given and ") + kKbEnv + " is not set");
}

scenario::RankingReport load_report(const std::string& path) {
  return scenario::report_from_json(parse_json(read_file(path, "report"), "report " + path));
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string exact(const Rational& r) {
  std::string s = numerator_of(r).str();
  if (denominator_of(r) != 1) s += "/" + denominator_of(r).str();
  return s;
}

void write_csv(const scenario::RankingReport& report, std::ostream& out) {
  out << "class,id,label,positive,negative,net,net_display\n";
  for (std::size_t c = 0; c < report.complete.classes.size(); ++c) {
    for (const auto& id : report.complete.classes[c]) {
      for (std::size_t i = 0; i < report.flows.alternatives.size(); ++i) {
        const auto& alt = report.flows.alternatives[i];
        if (alt.id != id) continue;
        const auto row = static_cast<Eigen::Index>(i);
        out << c + 1 << ',' << csv_field(alt.id) << ',' << csv_field(alt.label) << ','
            << exact(report.flows.positive(row)) << ',' << exact(report.flows.negative(row)) << ','
            << exact(report.flows.net(row)) << ',' << report.display_net[i] << '\n';
      }
    }
  }
}

void write_table(const scenario::RankingReport& report, std::ostream& out) {
  std::size_t width = std::string("alternative").size();
  for (const auto& alt : report.flows.alternatives) width = std::max(width, alt.id.size());
  out << "scenario: " << report.scenario << "\n";
  out << std::left << std::setw(6) << "rank" << std::setw(static_cast<int>(width) + 2) << "alternative"
      << std::right << std::setw(9) << "phi+" << std::setw(9) << "phi-" << std::setw(9) << "phi" << "\n";
  for (std::size_t c = 0; c < report.complete.classes.size(); ++c) {
    for (const auto& id : report.complete.classes[c]) {
      for (std::size_t i = 0; i < report.flows.alternatives.size(); ++i) {
        if (report.flows.alternatives[i].id != id) continue;
        const auto row = static_cast<Eigen::Index>(i);
        out << std::left << std::setw(6) << c + 1 << std::setw(static_cast<int>(width) + 2) << id << std::right
            << std::setw(9) << to_fixed(report.flows.positive(row), 3) << std::setw(9)
            << to_fixed(report.flows.negative(row), 3) << std::setw(9) << report.display_net[i] << "\n";
      }
    }
  }
}

std::pair<std::string, int> parse_addr(const std::string& addr) {
  const auto colon = addr.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == addr.size()) {
    throw usage_error("BAD_ADDR", "address must look like host:port, got '" + addr + "'");
  }
  const std::string port_text = addr.substr(colon + 1);
  if (!std::all_of(port_text.begin(), port_text.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
      port_text.size() > 5) {
    throw usage_error("BAD_ADDR", "invalid port in '" + addr + "'");
  }
  const int port = std::stoi(port_text);
  if (port > 65535) throw usage_error("BAD_ADDR", "invalid port in '" + addr + "'");
  return {addr.substr(0, colon), port};
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Outranking workbench: knowledge base, scenarios and PROMETHEE rankings", "workbench"};
  app.require_subcommand(1);

  std::string kb_path;
  std::string scenario_path;
  std::string format = "json";
  std::string report_a;
  std::string report_b;
  std::string plot_kind;
  std::string addr = kDefaultAddr;
  std::string scenario_dir;
  std::string criterion;
  int steps = 10;

  auto* validate = app.add_subcommand("validate", "Validate a knowledge base and print the violation report");
  validate->add_option("kb", kb_path, "knowledge base file (default: $WORKBENCH_KB_PATH)");

  auto* rank = app.add_subcommand("rank", "Run a scenario and print the ranking report");
  rank->add_option("kb", kb_path, "knowledge base file (default: $WORKBENCH_KB_PATH)");
  rank->add_option("--scenario", scenario_path, "scenario file")->required();
  rank->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "table"}));

  auto* diff = app.add_subcommand("diff", "Compare two ranking reports");
  diff->add_option("before", report_a, "baseline report")->required();
  diff->add_option("after", report_b, "compared report")->required();

  auto* graph = app.add_subcommand("graph", "Export the knowledge base schema graph");
  graph->add_option("kb", kb_path, "knowledge base file (default: $WORKBENCH_KB_PATH)");

  auto* plot = app.add_subcommand("plot", "Export chart data for a ranking report");
  plot->add_option("report", report_a, "ranking report")->required();
  plot->add_option("--kind", plot_kind, "chart kind")->required()->check(CLI::IsMember({"points", "histogram"}));

  auto* sweep = app.add_subcommand("sweep", "Sweep one criterion's weight and print the ranking at each point");
  sweep->add_option("kb", kb_path, "knowledge base file (default: $WORKBENCH_KB_PATH)");
  sweep->add_option("--scenario", scenario_path, "scenario file")->required();
  sweep->add_option("--criterion", criterion, "criterion to sweep")->required();
  sweep->add_option("--steps", steps, "number of weight intervals");

  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  serve->add_option("kb", kb_path, "knowledge base file (default: $WORKBENCH_KB_PATH)");
  serve->add_option("--addr", addr, "listen address host:port");
  serve->add_option("--scenarios", scenario_dir, "directory of named scenario files for /api/diff");

  auto* export_default = app.add_subcommand("export-default", "Print the built-in illustrative knowledge base");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) {
      const std::string path = resolve_kb_path(kb_path);
      const auto kb = kb::decode_kb(parse_json(read_file(path, "knowledge base"), "knowledge base " + path));
      const auto report = kb::validate_kb(kb);
      out << canonical(kb::report_to_json(report));
      for (const auto& v : report) err << "violation [" << v.code << "] at " << v.path << ": " << v.message << "\n";
      return report.empty() ? kExitOk : kExitData;
    }
    if (*rank) {
      const auto kb = kb::load_kb_file(resolve_kb_path(kb_path));
      const auto report = scenario::run_scenario(scenario::load_scenario_file(scenario_path), kb);
      if (format == "csv") write_csv(report, out);
      else if (format == "table") write_table(report, out);
      else out << scenario::serialize_report(report);
      return kExitOk;
    }
    if (*diff) {
      out << canonical(scenario::diff_to_json(scenario::diff_rankings(load_report(report_a), load_report(report_b))));
      return kExitOk;
    }
    if (*graph) {
      out << canonical(kb::export_graph(kb::load_kb_file(resolve_kb_path(kb_path))));
      return kExitOk;
    }
    if (*plot) {
      out << canonical(plot_to_json(make_plot_data(load_report(report_a), plot_kind_from_name(plot_kind))));
      return kExitOk;
    }
    if (*sweep) {
      const auto kb = kb::load_kb_file(resolve_kb_path(kb_path));
      const auto s = scenario::load_scenario_file(scenario_path);
      out << canonical(scenario::sweep_to_json(scenario::weight_sensitivity(s, kb, criterion, steps)));
      return kExitOk;
    }
    if (*export_default) {
      out << kb::serialize_kb(kb::default_kb());
      return kExitOk;
    }
    if (*serve) {
      const std::string path = resolve_kb_path(kb_path);
      const auto [host, port] = parse_addr(addr);
      kb::KbStore store(kb::load_kb_file(path), path);
      Service service(store, scenario_dir.empty() ? std::map<std::string, scenario::Scenario>{}
                                                  : load_scenario_dir(scenario_dir));
      httplib::Server server;
      service.mount(server);
      err << "listening on " << host << ":" << port << "\n";
      if (!server.listen(host, port)) {
        err << "error [LISTEN_FAILED]: cannot listen on " << addr << "\n";
        return kExitData;
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error [" << e.code() << "]: " << e.what();
    if (!e.path().empty()) err << " (at " << e.path() << ")";
    err << "\n";
    return e.kind() == ErrorKind::Usage ? kExitUsage : kExitData;
  } catch (const std::exception& e) {
    err << "error [INTERNAL]: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace outrank::api

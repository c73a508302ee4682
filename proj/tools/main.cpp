#include "lotforge/catalog.hpp"
#include "lotforge/http_server.hpp"
#include "lotforge/metrics.hpp"
#include "lotforge/plan_render.hpp"
#include "lotforge/scene.hpp"
#include "lotforge/scene_codec.hpp"
#include "lotforge/service.hpp"
#include "lotforge/survey.hpp"

#include <CLI/CLI.hpp>
#include <nlohmann/json.hpp>

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <pthread.h>

namespace {

using namespace lotforge;

enum Exit : int { kOk = 0, kValidation = 1, kInput = 2, kInternal = 3 };

struct Globals {
  std::string catalog_path;
  std::string format = "text";
  bool quiet = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::NotFound, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorKind::Config, "cannot write '" + path + "'");
}

struct LoadedCatalog {
  std::optional<Catalog> owned;
  const Catalog* ptr = nullptr;
  const Catalog& get() const { return *ptr; }
};

LoadedCatalog load_catalog_from(const std::string& path) {
  LoadedCatalog c;
  if (path.empty()) {
    c.ptr = &builtin_catalog();
  } else {
    c.owned.emplace(load_catalog(read_file(path)));
    c.ptr = &*c.owned;
  }
  return c;
}

std::string issues_text(const std::vector<ValidationIssue>& issues) {
  std::string out;
  for (const ValidationIssue& i : issues) {
    out += std::string(to_string(i.severity)) + " " + i.code;
    if (i.instance_id) out += " " + *i.instance_id;
    out += ": " + i.message + "\n";
  }
  out += std::to_string(issues.size()) + (issues.size() == 1 ? " issue\n" : " issues\n");
  return out;
}

int cmd_validate(const Globals& g, const std::string& scene_path) {
  const auto catalog = load_catalog_from(g.catalog_path);
  const Scene scene = decode_scene(read_file(scene_path));
  const auto issues = validate_scene(scene, catalog.get());
  if (!g.quiet) {
    if (g.format == "json") {
      nlohmann::ordered_json j;
      j["valid"] = !has_errors(issues);
      j["issues"] = nlohmann::ordered_json::parse(issues_json(issues));
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << issues_text(issues);
    }
  }
  return has_errors(issues) ? kValidation : kOk;
}

int cmd_score(const Globals& g, const std::string& scene_path, const std::string& config_path, bool breakdown) {
  const auto catalog = load_catalog_from(g.catalog_path);
  const ScoreConfig config =
      config_path.empty() ? ScoreConfig{} : load_score_config(read_file(config_path));
  const Scene scene = decode_scene(read_file(scene_path));
  const auto issues = validate_scene(scene, catalog.get());
  if (has_errors(issues)) {
    std::cerr << issues_text(issues);
    return kValidation;
  }
  const ScoreResult result = score_scene(scene, catalog.get(), config);
  if (!g.quiet) {
    std::cout << (g.format == "json" ? score_report_json(result, config) : format_score_report(result, breakdown));
  }
  return kOk;
}

int cmd_render(const Globals& g, const std::string& scene_path, const std::string& out, bool shadows,
               const std::string& sun, bool legend) {
  const auto catalog = load_catalog_from(g.catalog_path);
  RenderOptions opts;
  opts.show_shadows = shadows || !sun.empty();
  opts.legend = legend;
  if (!sun.empty()) opts.sun = parse_sun(sun);
  const Scene scene = decode_scene(read_file(scene_path));
  const auto issues = validate_scene(scene, catalog.get());
  if (has_errors(issues)) {
    std::cerr << issues_text(issues);
    return kValidation;
  }
  write_output(out, render_plan(scene, catalog.get(), opts));
  return kOk;
}

int cmd_analyze(const Globals& g, const std::string& ratings_path, const std::string& designated,
                const std::string& responses_path, const std::string& out) {
  const auto catalog = load_catalog_from(designated.empty() ? g.catalog_path : designated);
  const RatingDataset ratings = ingest_ratings_csv(read_file(ratings_path));
  std::optional<std::vector<ResponseRecord>> responses;
  if (!responses_path.empty()) responses = ingest_responses_csv(read_file(responses_path));
  const AnalysisReport report = run_analysis(ratings, catalog.get(), responses ? &*responses : nullptr);
  const std::string text =
      g.format == "json" ? analysis_json(report, catalog.get()) : format_analysis_text(report, catalog.get());
  if (!out.empty()) {
    write_output(out, text);
  } else if (!g.quiet) {
    std::cout << text;
  }
  return kOk;
}

int cmd_serve(const Globals& g, int port, const std::string& host, const std::string& data_dir,
              const std::string& web_dir) {
  // Block termination signals before any thread exists so only sigwait sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  ServiceOptions opts = options_from_environment();
  if (!data_dir.empty()) opts.data_dir = data_dir;
  const auto catalog = load_catalog_from(g.catalog_path);
  opts.catalog = catalog.ptr;
  DesignService service(opts);
  HttpServer server(service, web_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(web_dir));
  const int bound = server.bind(host, port);
  if (!g.quiet) std::cout << "listening on http://" << host << ":" << bound << std::endl;

  std::thread worker([&] { server.run(); });
  int sig = 0;
  sigwait(&signals, &sig);
  server.stop();
  worker.join();
  if (!g.quiet) std::cout << "stopped" << std::endl;
  return kOk;
}

int default_port() {
  if (const char* p = std::getenv("LOTFORGE_PORT"); p && *p) return std::atoi(p);
  return 8080;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lotforge: compose, score and render lot designs; analyze rating surveys"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--catalog", g.catalog_path, "Catalog document (default: built-in v1)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("-q,--quiet", g.quiet, "Suppress normal output");

  std::string scene_path, config_path, out_path, sun, ratings_path, designated, responses_path, data_dir, web_dir;
  std::string host = "127.0.0.1";
  bool breakdown = false, shadows = false, legend = false;
  int port = default_port();

  auto* validate = app.add_subcommand("validate", "Check a scene document against the catalog");
  validate->add_option("scene", scene_path)->required();

  auto* score = app.add_subcommand("score", "Print the eight metric scores of a scene");
  score->add_option("scene", scene_path)->required();
  score->add_option("--config", config_path, "Score config document");
  score->add_flag("--breakdown", breakdown, "Also print intermediate features");

  auto* render = app.add_subcommand("render", "Write the plan view of a scene as SVG");
  render->add_option("scene", scene_path)->required();
  render->add_option("-o,--output", out_path, "Output file (default: stdout)");
  render->add_flag("--shadows", shadows, "Draw shadows");
  render->add_option("--sun", sun, "Sun position as altitude,azimuth in degrees");
  render->add_flag("--legend", legend, "Draw a category legend");

  auto* analyze = app.add_subcommand("analyze", "Aggregate a ratings CSV into per-scenario means");
  analyze->add_option("ratings", ratings_path)->required();
  analyze->add_option("--designated", designated, "Catalog holding the designated metrics");
  analyze->add_option("--responses", responses_path, "Free-text responses CSV");
  analyze->add_option("-o,--output", out_path, "Report file (default: stdout)");

  auto* serve = app.add_subcommand("serve", "Run the design service");
  serve->add_option("--port", port, "TCP port, 0 for any free port (env LOTFORGE_PORT)");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--data-dir", data_dir, "Record store directory (env LOTFORGE_DATA_DIR)");
  serve->add_option("--web-dir", web_dir, "Static files served at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*validate) return cmd_validate(g, scene_path);
    if (*score) return cmd_score(g, scene_path, config_path, breakdown);
    if (*render) return cmd_render(g, scene_path, out_path, shadows, sun, legend);
    if (*analyze) return cmd_analyze(g, ratings_path, designated, responses_path, out_path);
    if (*serve) return cmd_serve(g, port, host, data_dir, web_dir);
  } catch (const RowError& e) {
    std::cerr << "lotforge: row " << e.row() << ": " << e.what() << "\n";
    return kInput;
  } catch (const ParseError& e) {
    std::cerr << "lotforge: " << e.what();
    if (e.line()) std::cerr << " (line " << e.line() << ", column " << e.column() << ")";
    std::cerr << "\n";
    return kInput;
  } catch (const Error& e) {
    std::cerr << "lotforge: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return e.kind() == ErrorKind::Validation ? kValidation : kInput;
  } catch (const std::exception& e) {
    std::cerr << "lotforge: internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}

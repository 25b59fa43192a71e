#include <algorithm>
#include <chrono>
#include <csignal>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tce/tce.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kUnsat = 3 };

struct DataError : tce::Error {
  using tce::Error::Error;
};

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw DataError("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw DataError("cannot write " + p.string());
  out << text;
  if (!out) throw DataError("write failed for " + p.string());
}

std::string safe_name(const std::string& id) {
  std::string s = id;
  for (char& c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) c = '_';
  }
  return s.empty() ? "unnamed" : s;
}

constexpr const char* kManifestName = "run_manifest.json";

/// All TCE documents in a directory, sorted by file name.
std::vector<tce::TceInstance> load_instances(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw DataError(dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json" && e.path().filename() != kManifestName) {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<tce::TceInstance> out;
  for (const auto& f : files) {
    const tce::TceParseResult r = tce::parse_tce(read_file(f));
    if (!r.instance || !r.report.ok()) {
      std::string why = r.report.violations.empty() ? "unparseable" : r.report.violations.front().detail;
      throw DataError(f.string() + ": not a valid TCE document (" + why + ")");
    }
    out.push_back(*r.instance);
  }
  return out;
}

tce::Outline load_outline(const fs::path& path) {
  tce::json j;
  try {
    j = tce::json::parse(read_file(path));
  } catch (const tce::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  const tce::json* o = &j;
  if (j.is_object() && j.contains("target_outline")) o = &j["target_outline"];
  if (o->is_object() && o->contains("vertices")) o = &(*o)["vertices"];
  auto ring = tce::detail::json_ring(*o);
  if (!ring || ring->size() < 3) throw DataError(path.string() + ": no outline vertices");
  return tce::make_outline(tce::Polygon(*ring));
}

struct Manifest {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::optional<std::uint64_t> seed;
  tce::ordered_json config = tce::ordered_json::object();
  std::string started = utc_now();
  fs::path path = kManifestName;

  void write(int exit_code) const {
    tce::ordered_json j;
    j["subcommand"] = subcommand;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["seed"] = seed ? tce::ordered_json(*seed) : tce::ordered_json(nullptr);
    j["config"] = config;
    j["version"] = tce::kVersion;
    j["started"] = started;
    j["finished"] = utc_now();
    j["exit_code"] = exit_code;
    write_file(path, j.dump(2) + "\n");
  }
};

struct Options {
  std::string manifest;
  std::size_t threads = 0;

  std::string input;
  std::vector<std::string> inputs;
  std::string out;
  std::string truth;
  std::string report;
  std::string keys;
  std::string variant = "full";
  std::string gateway;
  std::string host = "127.0.0.1";
  std::optional<int> port;
  double tol = tce::kDefaultSnapTol;
  std::uint64_t seed = 0;
  std::size_t shots = 0;
  std::size_t count = 0;
  bool all = false;
  bool outline_only = false;
  bool allow_remote = false;
  std::uint64_t node_budget = tce::SolverConfig{}.node_budget;
  double time_budget = tce::SolverConfig{}.time_budget;

  std::size_t thread_count() const { return threads ? threads : tce::default_threads(); }
};

int run_normalize(const Options& o, Manifest& m) {
  const std::string text = read_file(o.input);
  const fs::path dir = o.out;
  fs::create_directories(dir);
  m.inputs = {o.input};
  m.config["tol"] = o.tol;
  std::istringstream lines(text);
  std::string line;
  std::size_t lineno = 0, accepted = 0, rejected = 0;
  std::string log;
  while (std::getline(lines, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    tce::ordered_json entry;
    entry["line"] = lineno;
    std::string id = "line-" + std::to_string(lineno);
    try {
      const tce::RawAssembly raw = tce::parse_raw(line);
      if (!raw.id.empty()) id = raw.id;
      entry["instance_id"] = id;
      const tce::FilterResult f = tce::filter_raw(raw, o.tol);
      if (!f.accepted()) {
        entry["status"] = "rejected";
        entry["reason"] = std::string(tce::reject_reason_name(f.reason));
        entry["detail"] = f.detail;
      } else {
        const tce::TceInstance inst = tce::normalize(raw, o.tol, id);
        const fs::path file = dir / (safe_name(id) + ".json");
        write_file(file, tce::serialize_tce(inst));
        m.outputs.push_back(file.string());
        entry["status"] = "accepted";
      }
    } catch (const tce::NormalizeError& e) {
      entry["instance_id"] = id;
      entry["status"] = "rejected";
      entry["reason"] = "verify-failed";
      entry["detail"] = e.what();
    } catch (const tce::Error& e) {
      entry["instance_id"] = id;
      entry["status"] = "rejected";
      entry["reason"] = "unparseable";
      entry["detail"] = e.what();
    }
    (entry["status"] == "accepted" ? accepted : rejected)++;
    log += entry.dump() + "\n";
  }
  const fs::path log_path = dir / "normalize_log.jsonl";
  write_file(log_path, log);
  m.outputs.push_back(log_path.string());
  std::cout << "accepted " << accepted << ", rejected " << rejected << "\n";
  return kOk;
}

int run_gen_task1(const Options& o, Manifest& m) {
  const auto instances = load_instances(o.input);
  m.inputs = {o.input};
  m.seed = o.seed;
  std::vector<tce::PoolEntry> pool;
  for (const auto& inst : instances) pool.push_back({inst.instance_id, inst.target_outline});
  const std::vector<tce::McItem> items = tce::gen_task1_batch(instances, pool, o.seed, o.thread_count());
  const fs::path dir = o.out;
  std::string keys;
  for (const auto& item : items) {
    const std::string stem = safe_name(item.instance_id);
    write_file(dir / (stem + ".svg"), tce::render_svg(item));
    write_file(dir / (stem + ".prompt.txt"), tce::task1_prompt(item));
    m.outputs.push_back((dir / (stem + ".svg")).string());
    m.outputs.push_back((dir / (stem + ".prompt.txt")).string());
    keys += tce::mc_sidecar(item).dump() + "\n";
  }
  write_file(dir / "keys.jsonl", keys);
  m.outputs.push_back((dir / "keys.jsonl").string());
  std::cout << items.size() << " items\n";
  return kOk;
}

tce::ordered_json bundle_json(const tce::PromptBundle& b) {
  tce::ordered_json j;
  j["instance_id"] = b.instance_id;
  j["variant"] = std::string(tce::variant_name(b.variant));
  j["exemplar_count"] = b.exemplar_count;
  j["text"] = b.text;
  j["image_svg"] = b.image_svg;
  return j;
}

tce::PromptBundle bundle_from_json(const tce::json& j) {
  tce::PromptBundle b;
  b.instance_id = j.at("instance_id").get<std::string>();
  auto v = tce::variant_from_name(j.at("variant").get<std::string>());
  if (!v) throw DataError("bundle " + b.instance_id + ": unknown variant");
  b.variant = *v;
  b.exemplar_count = j.value("exemplar_count", std::size_t{0});
  b.text = j.at("text").get<std::string>();
  b.image_svg = j.value("image_svg", std::string());
  return b;
}

int run_gen_task2(const Options& o, Manifest& m) {
  const auto variant = tce::variant_from_name(o.variant);
  if (!variant) throw CLI::ValidationError("--variant", "expected full or visual-centric");
  const auto instances = load_instances(o.input);
  if (o.shots > 0 && o.shots >= instances.size()) {
    throw DataError("--shots " + std::to_string(o.shots) + " needs more than that many instances");
  }
  m.inputs = {o.input};
  m.seed = o.seed;
  m.config["variant"] = std::string(tce::variant_name(*variant));
  m.config["shots"] = o.shots;
  std::vector<tce::PromptBundle> bundles(instances.size());
  tce::parallel_for(
      instances.size(),
      [&](std::size_t i) {
        std::vector<std::size_t> others;
        for (std::size_t k = 0; k < instances.size(); ++k) {
          if (k != i) others.push_back(k);
        }
        tce::Rng rng(tce::fnv1a64(instances[i].instance_id) ^ o.seed);
        rng.shuffle(others);
        std::vector<tce::TceInstance> exemplars;
        for (std::size_t k = 0; k < o.shots; ++k) exemplars.push_back(instances[others[k]]);
        bundles[i] = tce::gen_task2(instances[i], *variant, exemplars);
      },
      o.thread_count());
  const fs::path dir = o.out;
  std::string lines;
  for (const auto& b : bundles) {
    const std::string stem = safe_name(b.instance_id);
    write_file(dir / (stem + ".prompt.txt"), b.text);
    write_file(dir / (stem + ".svg"), b.image_svg);
    m.outputs.push_back((dir / (stem + ".prompt.txt")).string());
    m.outputs.push_back((dir / (stem + ".svg")).string());
    lines += bundle_json(b).dump() + "\n";
  }
  write_file(dir / "bundles.jsonl", lines);
  m.outputs.push_back((dir / "bundles.jsonl").string());
  std::cout << bundles.size() << " prompts\n";
  return kOk;
}

int run_query(const Options& o, Manifest& m) {
  const tce::GatewayConfig cfg = tce::gateway_config_from_json(tce::json::parse(read_file(o.gateway)));
  std::vector<tce::PromptBundle> bundles;
  std::istringstream lines(read_file(o.input));
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    bundles.push_back(bundle_from_json(tce::json::parse(line)));
  }
  m.inputs = {o.input, o.gateway};
  m.config["endpoint"] = cfg.endpoint;
  m.config["template"] = cfg.request_template;
  m.config["max_parallel"] = cfg.max_parallel;
  const auto records = tce::call_gateway(bundles, cfg);
  std::string out;
  std::size_t failed = 0;
  for (const auto& r : records) {
    out += tce::response_json(r).dump() + "\n";
    failed += !r.error.empty();
  }
  write_file(o.out, out);
  m.outputs = {o.out};
  std::cout << records.size() << " responses, " << failed << " failed\n";
  return kOk;
}

int run_verify(const Options& o, Manifest& m) {
  std::map<std::string, tce::TceInstance> truths;
  for (auto& inst : load_instances(o.truth)) {
    const std::string id = inst.instance_id;
    if (!truths.emplace(id, std::move(inst)).second) throw DataError("duplicate truth id " + id);
  }
  m.inputs = o.inputs;
  m.inputs.push_back(o.truth);
  std::vector<tce::ModelReport> reports;
  const fs::path report = o.report;
  for (const auto& path : o.inputs) {
    const std::string model = fs::path(path).stem().string();
    const auto responses = tce::read_responses(path);
    if (responses.empty()) throw DataError(path + ": no responses");
    const tce::Task2Run run = tce::run_task2(responses, truths, {}, o.thread_count());
    std::string records;
    for (const auto& r : run.records) records += tce::record_json(r).dump() + "\n";
    const fs::path rec_path = report.parent_path() / (model + ".records.jsonl");
    write_file(rec_path, records);
    m.outputs.push_back(rec_path.string());
    reports.emplace_back(model, run.report);
  }
  write_file(report, tce::report_csv(reports));
  m.outputs.push_back(report.string());
  std::cout << tce::report_table(reports);
  return kOk;
}

int run_score_task1(const Options& o, Manifest& m) {
  std::ifstream keys_in(o.keys);
  if (!keys_in) throw DataError("cannot read " + o.keys);
  const auto keys = tce::parse_keys(keys_in);
  const auto responses = tce::read_responses(o.input);
  const tce::Task1Score s = tce::score_task1(responses, keys);
  m.inputs = {o.input, o.keys};
  tce::ordered_json j;
  j["n"] = s.n;
  j["acc"] = s.acc;
  j["invalid"] = s.invalid_rate;
  j["correct"] = s.correct;
  j["wrong"] = s.wrong;
  j["verdicts"] = tce::ordered_json::object();
  for (const auto& [id, v] : s.verdicts) j["verdicts"][id] = std::string(tce::verdict_name(v));
  if (!o.out.empty()) {
    write_file(o.out, j.dump(2) + "\n");
    m.outputs = {o.out};
  }
  std::cout << "N=" << s.n << " Acc=" << tce::format_fixed(s.acc, 2)
            << " Invalid=" << tce::format_fixed(s.invalid_rate, 2) << "\n";
  return kOk;
}

int run_solve(const Options& o, Manifest& m) {
  const tce::Outline target = load_outline(o.input);
  tce::SolverConfig cfg;
  cfg.find_all = o.all;
  cfg.node_budget = o.node_budget;
  cfg.time_budget = o.time_budget;
  m.inputs = {o.input};
  m.config["all"] = o.all;
  m.config["node_budget"] = cfg.node_budget;
  m.config["time_budget"] = cfg.time_budget;
  const tce::SolveResult r = tce::solve(target, cfg);
  std::cout << tce::solve_status_name(r.status) << " solutions=" << r.solutions.size() << " nodes=" << r.nodes
            << "\n";
  const std::string base = fs::path(o.input).stem().string();
  if (!r.solutions.empty() && !o.out.empty()) {
    if (o.all) {
      std::string lines;
      for (std::size_t i = 0; i < r.solutions.size(); ++i) {
        const auto inst = tce::solution_instance(target, r.solutions[i], base + "-" + std::to_string(i));
        lines += tce::tce_json(inst).dump() + "\n";
      }
      write_file(o.out, lines);
    } else {
      write_file(o.out, tce::serialize_tce(tce::solution_instance(target, r.solutions.front(), base)));
    }
    m.outputs = {o.out};
  } else if (!r.solutions.empty()) {
    std::cout << tce::serialize_tce(tce::solution_instance(target, r.solutions.front(), base));
  }
  if (r.status == tce::SolveStatus::exhausted && !r.solutions.empty()) return kOk;
  return r.status == tce::SolveStatus::solved ? kOk : kUnsat;
}

int run_gen_corpus(const Options& o, Manifest& m) {
  tce::SolverConfig cfg;
  cfg.time_budget = o.time_budget;
  m.seed = o.seed;
  m.config["count"] = o.count;
  const tce::GenerateResult g = tce::generate_instances(o.count, o.seed, cfg, o.thread_count());
  const fs::path dir = o.out;
  fs::create_directories(dir);
  for (const auto& inst : g.instances) {
    const fs::path file = dir / (safe_name(inst.instance_id) + ".json");
    write_file(file, tce::serialize_tce(inst));
    m.outputs.push_back(file.string());
  }
  for (const auto& w : g.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << g.instances.size() << " instances\n";
  return kOk;
}

int run_render(const Options& o, Manifest& m) {
  const std::string text = read_file(o.input);
  tce::json j;
  try {
    j = tce::json::parse(text);
  } catch (const tce::json::exception& e) {
    throw DataError(o.input + ": " + e.what());
  }
  std::string svg;
  if (j.is_object() && j.contains("final_state") && !o.outline_only) {
    const tce::TceParseResult r = tce::parse_tce(text, tce::ParseMode::submission);
    if (!r.instance || r.instance->final_state.empty()) throw DataError(o.input + ": no pieces to render");
    svg = tce::render_svg(r.instance->final_state);
  } else {
    svg = tce::render_svg(load_outline(o.input));
  }
  write_file(o.out, svg);
  m.inputs = {o.input};
  m.outputs = {o.out};
  return kOk;
}

httplib::Server* g_server = nullptr;

void stop_server(int) {
  if (g_server) g_server->stop();
}

int run_serve(const Options& o, Manifest& m) {
  if (!tce::is_loopback(o.host) && !o.allow_remote) {
    std::cerr << "error: refusing to bind " << o.host << " without --allow-remote\n";
    return kUsage;
  }
  const int port = tce::service_port(o.port);
  m.config["host"] = o.host;
  m.config["port"] = port;
  httplib::Server server;
  g_server = &server;
  std::signal(SIGINT, stop_server);
  std::signal(SIGTERM, stop_server);
  std::cout << "serving on " << o.host << ":" << port << std::endl;
  tce::run_service(server, o.host, port, o.allow_remote);
  g_server = nullptr;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tangram construction toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML configuration; flags override it")->envname("TCE_CONFIG");
  app.set_version_flag("--version", tce::kVersion);
  Options o;
  app.add_option("--manifest", o.manifest, "Run manifest path (default: next to the outputs)");
  app.add_option("--threads", o.threads, "Worker threads (0 = hardware)");

  auto* normalize = app.add_subcommand("normalize", "Filter, snap and normalize raw assemblies");
  normalize->add_option("raw", o.input, "Raw assembly JSONL")->required();
  normalize->add_option("--out", o.out, "Output directory")->required();
  normalize->add_option("--tol", o.tol, "Snap tolerance")->check(CLI::PositiveNumber);

  auto* task1 = app.add_subcommand("gen-task1", "Outline-prediction items with answer keys");
  task1->add_option("tce_dir", o.input, "Directory of TCE documents")->required();
  task1->add_option("--seed", o.seed, "Seed")->required();
  task1->add_option("--out", o.out, "Output directory")->required();

  auto* task2 = app.add_subcommand("gen-task2", "End-to-end construction prompts");
  task2->add_option("tce_dir", o.input, "Directory of TCE documents")->required();
  task2->add_option("--variant", o.variant, "full | visual-centric");
  task2->add_option("--shots", o.shots, "Solved exemplars per prompt");
  task2->add_option("--seed", o.seed, "Exemplar selection seed");
  task2->add_option("--out", o.out, "Output directory")->required();

  auto* query = app.add_subcommand("query", "Send prompt bundles to a model gateway");
  query->add_option("bundles", o.input, "bundles.jsonl from gen-task2")->required();
  query->add_option("--gateway", o.gateway, "Gateway config JSON")->required();
  query->add_option("--out", o.out, "Responses JSONL")->required();

  auto* verify = app.add_subcommand("verify", "Score construction responses; one model per file");
  verify->add_option("responses", o.inputs, "Response JSONL files")->required();
  verify->add_option("--truth", o.truth, "Directory of ground-truth TCE documents")->required();
  verify->add_option("--report", o.report, "CSV report path")->required();

  auto* score1 = app.add_subcommand("score-task1", "Accuracy and invalid rate of choice responses");
  score1->add_option("responses", o.input, "Response JSONL")->required();
  score1->add_option("--keys", o.keys, "Answer keys")->required();
  score1->add_option("--out", o.out, "Score JSON");

  auto* solve = app.add_subcommand("solve", "Lattice exact-cover solve of an outline");
  solve->add_option("outline", o.input, "Outline or TCE JSON")->required();
  solve->add_flag("--all", o.all, "Enumerate every solution");
  solve->add_option("--out", o.out, "Solution TCE (JSONL with --all)");
  solve->add_option("--node-budget", o.node_budget);
  solve->add_option("--time-budget", o.time_budget);

  auto* corpus = app.add_subcommand("gen-corpus", "Generate verified lattice instances");
  corpus->add_option("--count", o.count, "Instances")->required();
  corpus->add_option("--seed", o.seed, "Seed")->required();
  corpus->add_option("--out", o.out, "Output directory")->required();
  corpus->add_option("--time-budget", o.time_budget);

  auto* render = app.add_subcommand("render", "SVG of a TCE document or outline");
  render->add_option("input", o.input, "TCE or outline JSON")->required();
  render->add_option("--out", o.out, "SVG path")->required();
  render->add_flag("--outline", o.outline_only, "Render the target outline of a TCE document");

  auto* serve = app.add_subcommand("serve", "Local JSON API");
  serve->add_option("--port", o.port, "Port (default TCE_SERVICE_PORT or 8765)");
  serve->add_option("--host", o.host, "Bind address");
  serve->add_flag("--allow-remote", o.allow_remote, "Permit a non-loopback bind address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const std::vector<std::pair<CLI::App*, int (*)(const Options&, Manifest&)>> table{
      {normalize, run_normalize}, {task1, run_gen_task1},   {task2, run_gen_task2},
      {query, run_query},         {verify, run_verify},     {score1, run_score_task1},
      {solve, run_solve},         {corpus, run_gen_corpus}, {render, run_render},
      {serve, run_serve}};
  for (const auto& [sub, fn] : table) {
    if (!sub->parsed()) continue;
    Manifest m;
    m.subcommand = sub->get_name();
    if (!o.manifest.empty()) {
      m.path = o.manifest;
    } else if (sub == normalize || sub == task1 || sub == task2 || sub == corpus) {
      m.path = fs::path(o.out) / kManifestName;
    } else if (sub == verify) {
      m.path = fs::path(o.report).parent_path() / kManifestName;
    } else if (!o.out.empty()) {
      m.path = fs::path(o.out).parent_path() / kManifestName;
    }
    int code = kOk;
    try {
      code = fn(o, m);
    } catch (const CLI::ParseError& e) {
      std::cerr << "error: " << e.what() << "\n";
      code = kUsage;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      code = kData;
    }
    try {
      m.write(code);
    } catch (const std::exception& e) {
      std::cerr << "error: manifest: " << e.what() << "\n";
      if (code == kOk) code = kData;
    }
    return code;
  }
  return kUsage;
}

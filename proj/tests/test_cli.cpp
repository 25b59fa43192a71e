#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace tce;
using namespace tce::test;

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("tce_cli_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliRun run(const std::string& args, const std::string& env = {}) {
    const std::string cmd = "cd '" + dir_.string() + "' && " + env + " '" + TCE_CLI_PATH + "' " + args +
                            " > stdout.txt 2> stderr.txt";
    const int status = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(dir_ / "stdout.txt");
    r.err = slurp(dir_ / "stderr.txt");
    return r;
  }

  json manifest(const fs::path& p) { return json::parse(slurp(dir_ / p)); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, VersionAndUsage) {
  const CliRun v = run("--version");
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find(kVersion), std::string::npos);
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("gen-corpus --seed 1").code, 1);
  EXPECT_EQ(run("normalize x.jsonl --out o --tol -1").code, 1);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, GenCorpusWritesInstancesAndManifest) {
  const CliRun r = run("--threads 2 gen-corpus --count 6 --seed 2 --out corpus");
  ASSERT_EQ(r.code, 0) << r.err;
  std::size_t docs = 0;
  for (const auto& e : fs::directory_iterator(dir_ / "corpus")) {
    if (e.path().filename() == "run_manifest.json") continue;
    const TceParseResult p = parse_tce(slurp(e.path()));
    ASSERT_TRUE(p.instance.has_value());
    EXPECT_TRUE(p.report.ok());
    ++docs;
  }
  EXPECT_EQ(docs, 6u);
  const json m = manifest("corpus/run_manifest.json");
  EXPECT_EQ(m["subcommand"], "gen-corpus");
  EXPECT_EQ(m["seed"], 2);
  EXPECT_EQ(m["exit_code"], 0);
  EXPECT_EQ(m["outputs"].size(), 6u);
  EXPECT_EQ(m["version"], kVersion);
  ASSERT_EQ(run("--threads 1 gen-corpus --count 6 --seed 2 --out again").code, 0);
  EXPECT_EQ(slurp(dir_ / "corpus/gen-2-3.json"), slurp(dir_ / "again/gen-2-3.json"));
}

TEST_F(Cli, ConfigFileAndEnvironment) {
  spit(dir_ / "c.toml", "[gen-corpus]\ncount = 3\nseed = 5\n");
  ASSERT_EQ(run("gen-corpus --out a", "TCE_CONFIG=c.toml").code, 0);
  EXPECT_EQ(manifest("a/run_manifest.json")["outputs"].size(), 3u);
  ASSERT_EQ(run("--config c.toml gen-corpus --out b --count 2").code, 0);
  const json m = manifest("b/run_manifest.json");
  EXPECT_EQ(m["outputs"].size(), 2u);
  EXPECT_EQ(m["seed"], 5);
}

TEST_F(Cli, NormalizeAcceptsAndRejects) {
  std::string raw = raw_to_json(to_raw(square_assembly(), "sq")) + "\n";
  raw += raw_to_json(to_raw(holey_assembly(), "holey")) + "\n";
  raw += "not json\n";
  RawAssembly off = to_raw(square_assembly(), "off");
  off.pieces[0].ring[0].x = 0.341;
  raw += raw_to_json(off) + "\n";
  spit(dir_ / "raw.jsonl", raw);
  const CliRun r = run("normalize raw.jsonl --out norm");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse_tce(slurp(dir_ / "norm/sq.json")).instance.value(), square_instance("sq"));
  const auto log = lines_of(slurp(dir_ / "norm/normalize_log.jsonl"));
  ASSERT_EQ(log.size(), 4u);
  EXPECT_EQ(json::parse(log[0])["status"], "accepted");
  EXPECT_EQ(json::parse(log[1])["reason"], "holes");
  EXPECT_EQ(json::parse(log[2])["status"], "rejected");
  EXPECT_EQ(json::parse(log[3])["reason"], "unsnappable");
  EXPECT_EQ(manifest("norm/run_manifest.json")["subcommand"], "normalize");
  EXPECT_EQ(run("normalize missing.jsonl --out norm2").code, 2);
}

TEST_F(Cli, TaskGeneration) {
  ASSERT_EQ(run("gen-corpus --count 8 --seed 3 --out corpus").code, 0);
  const CliRun t1 = run("gen-task1 corpus --seed 11 --out t1");
  ASSERT_EQ(t1.code, 0) << t1.err;
  const auto keys = lines_of(slurp(dir_ / "t1/keys.jsonl"));
  ASSERT_EQ(keys.size(), 8u);
  const json k0 = json::parse(keys[0]);
  EXPECT_TRUE(fs::exists(dir_ / "t1" / (k0["instance_id"].get<std::string>() + ".svg")));
  EXPECT_TRUE(fs::exists(dir_ / "t1" / (k0["instance_id"].get<std::string>() + ".prompt.txt")));
  ASSERT_EQ(run("gen-task1 corpus --seed 11 --out t1b").code, 0);
  EXPECT_EQ(slurp(dir_ / "t1/keys.jsonl"), slurp(dir_ / "t1b/keys.jsonl"));
  EXPECT_EQ(manifest("t1/run_manifest.json")["seed"], 11);

  const CliRun t2 = run("gen-task2 corpus --variant visual-centric --shots 3 --seed 1 --out t2");
  ASSERT_EQ(t2.code, 0) << t2.err;
  const auto bundles = lines_of(slurp(dir_ / "t2/bundles.jsonl"));
  ASSERT_EQ(bundles.size(), 8u);
  EXPECT_EQ(json::parse(bundles[0])["variant"], "visual-centric");
  EXPECT_EQ(run("gen-task2 corpus --variant nope --out t3").code, 1);
  EXPECT_EQ(run("gen-task1 nowhere --seed 1 --out t4").code, 2);
}

TEST_F(Cli, VerifyReportsPerModel) {
  ASSERT_EQ(run("gen-corpus --count 5 --seed 4 --out truth").code, 0);
  std::string good, bad;
  for (std::size_t i = 0; i < 5; ++i) {
    const std::string id = generated_id(4, i);
    const std::string doc = slurp(dir_ / "truth" / (id + ".json"));
    good += json({{"instance_id", id}, {"raw_text", "```json\n" + doc + "```"}}).dump() + "\n";
    const TceInstance inst = parse_tce(doc).instance.value();
    bad += json({{"instance_id", id}, {"raw_text", i < 2 ? doc : mutate_delete(inst, 1)}}).dump() + "\n";
  }
  spit(dir_ / "alpha.jsonl", good);
  spit(dir_ / "beta.jsonl", bad);
  fs::create_directories(dir_ / "out");
  const CliRun r = run("verify alpha.jsonl beta.jsonl --truth truth --report out/report.csv");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = lines_of(slurp(dir_ / "out/report.csv"));
  ASSERT_EQ(csv.size(), 3u);
  EXPECT_EQ(csv[0], "Model,TSE,RGE,PE,VPR,IoU,Hausdorff,Success");
  EXPECT_EQ(csv[1].substr(0, csv[1].find(',', 6) + 1), "alpha,0.00,");
  EXPECT_NE(csv[1].find(",100.00,100.00,0.0000,100.00"), std::string::npos);
  EXPECT_EQ(csv[2].substr(0, 12), "beta,60.00,0");
  EXPECT_EQ(lines_of(slurp(dir_ / "out/beta.records.jsonl")).size(), 5u);
  EXPECT_NE(r.out.find("Model"), std::string::npos);
  EXPECT_EQ(manifest("out/run_manifest.json")["subcommand"], "verify");
}

TEST_F(Cli, ScoreTask1Fixture) {
  const std::string fx = std::string(TCE_FIXTURES);
  const CliRun r = run("score-task1 '" + fx + "/task1_responses.jsonl' --keys '" + fx + "/task1_keys.jsonl' --out s.json");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Acc=65.00 Invalid=15.00"), std::string::npos);
  const json j = json::parse(slurp(dir_ / "s.json"));
  EXPECT_EQ(j["correct"], 13);
  EXPECT_EQ(j["verdicts"]["t19"], "invalid");
}

TEST_F(Cli, SolveExitCodes) {
  spit(dir_ / "square.json", pretty_json(outline_json(big_square_outline())));
  spit(dir_ / "seven.json", R"({"vertices": [["0","0"],["7","0"],["7","1"],["0","1"]]})");
  const CliRun ok = run("solve square.json --out sol.json");
  ASSERT_EQ(ok.code, 0) << ok.err;
  const TceInstance sol = parse_tce(slurp(dir_ / "sol.json")).instance.value();
  EXPECT_TRUE(evaluate(serialize_tce(sol), sol).success);
  const CliRun unsat = run("solve seven.json");
  EXPECT_EQ(unsat.code, 3);
  EXPECT_NE(unsat.out.find("unsat"), std::string::npos);
  const CliRun all = run("solve square.json --all --out all.jsonl");
  ASSERT_EQ(all.code, 0);
  EXPECT_GT(lines_of(slurp(dir_ / "all.jsonl")).size(), 1u);
  EXPECT_EQ(run("solve square.json --all --node-budget 1").code, 3);
  EXPECT_EQ(run("solve nothing.json").code, 2);
  EXPECT_EQ(manifest("run_manifest.json")["exit_code"], 2);
}

TEST_F(Cli, Render) {
  spit(dir_ / "sq.json", serialize_tce(square_instance()));
  ASSERT_EQ(run("render sq.json --out pieces.svg").code, 0);
  ASSERT_EQ(run("render sq.json --outline --out outline.svg").code, 0);
  EXPECT_EQ(slurp(dir_ / "pieces.svg"), render_svg(square_instance().final_state));
  EXPECT_EQ(slurp(dir_ / "outline.svg"), render_svg(square_instance().target_outline));
}

TEST_F(Cli, ServeRefusesRemoteBindWithoutFlag) {
  const CliRun r = run("serve --host 0.0.0.0 --port 0");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--allow-remote"), std::string::npos);
}

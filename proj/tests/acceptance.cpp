#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "mpfr_oracle.hpp"
#include "support.hpp"

using namespace tce;
using namespace tce::test;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(const std::string& name, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = seconds_since(t0);
  if (!o.pass) ++failures;
  std::printf("%s  %-28s %8.2fs  %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), secs, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const std::vector<TceInstance>& corpus() {
  static const std::vector<TceInstance> v = generate_instances(400, 2026).instances;
  return v;
}

Outcome exact_oracle() {
  const auto t0 = Clock::now();
  ValueFuzzer fuzz(31337);
  std::size_t ops = 0, agree = 0;
  while (ops < 100000) {
    const ExactValue a = fuzz.next(), b = fuzz.next();
    const Big ba(a), bb(b);
    agree += a.sign() == ba.sign();
    agree += close(Big(a + b), ba + bb);
    agree += close(Big(a - b), ba - bb);
    agree += close(Big(a * b), ba * bb);
    agree += b.is_zero() ? 1 : close(Big(a / b), ba / bb);
    agree += (a < b) == ((ba - bb).sign() < 0);
    ops += 6;
  }
  std::size_t roots = 0;
  for (int i = 0; i < 10000; ++i) {
    const ExactValue x = fuzz.next();
    const auto r = exact_sqrt(x * x);
    roots += r.has_value() && *r == x.abs();
  }
  const double secs = seconds_since(t0);
  return {agree == ops && roots == 10000 && secs < 30,
          std::to_string(agree) + "/" + std::to_string(ops) + " ops, " + std::to_string(roots) + "/10000 sqrt"};
}

Outcome verifier_soundness() {
  const auto t0 = Clock::now();
  const std::vector<TceInstance> truth(corpus().begin(), corpus().begin() + 200);
  std::vector<VerificationRecord> recs;
  double min_iou = 1, max_h = 0;
  for (const auto& inst : truth) {
    recs.push_back(evaluate(serialize_tce(inst), inst));
    min_iou = std::min(min_iou, recs.back().iou);
    max_h = std::max(max_h, recs.back().hausdorff);
  }
  const CorpusReport rep = aggregate(recs);
  const double secs = seconds_since(t0);
  return {truth.size() >= 200 && rep.vpr == 100.0 && min_iou >= 1 - 1e-9 && max_h <= 0.005 && secs < 120,
          "n=" + std::to_string(truth.size()) + fmt(" VPR=%.2f minIoU=%.12f maxH=%.4f", rep.vpr, min_iou, max_h)};
}

Outcome mutation_detection() {
  const auto t0 = Clock::now();
  const auto& c = corpus();
  std::size_t del = 0, scale = 0, overlap = 0, far = 0, overlap_made = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const TceInstance& inst = c[i];
    const std::size_t idx = i % 7;
    del += evaluate(mutate_delete(inst, idx), inst).tse;
    scale += evaluate(mutate_scale(inst, idx), inst).rge;
    for (std::size_t step = 1; step < 7; ++step) {
      auto [pieces, area] = overlap_pieces(inst, idx, (idx + step) % 7);
      if (!(area.to_double() > 1e-3)) continue;
      ++overlap_made;
      const VerificationRecord r = evaluate(with_final_state(inst, pieces), inst);
      overlap += r.pe && !r.physics.overlap_pairs.empty();
      break;
    }
    const VerificationRecord r = evaluate(mutate_far(inst, idx), inst);
    far += r.pe && r.physics.component_count >= 2;
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << "delete->TSE " << del << "/100, scale->RGE " << scale << "/100, overlap->PE " << overlap << "/"
    << overlap_made << ", far->PE " << far << "/100";
  return {del == 100 && scale == 100 && overlap_made == 100 && overlap == 100 && far == 100 && secs < 120, d.str()};
}

Outcome metric_fixtures() {
  const double i = iou({fsquare(0.5, 0.5, 1)}, fsquare(0, 0, 1));
  const double h = hausdorff(polygon_boundary(fsquare(0, 0, 1)), polygon_boundary(fsquare(3, 0, 1)));
  const std::array<ExactValue, 7> table{q(2), q(2), q(1), q(1, 2), q(1, 2), q(1), q(1)};
  std::size_t areas = 0;
  const auto pieces = canonical_pieces();
  for (std::size_t k = 0; k < 7; ++k) areas += polygon_area(exact_piece(pieces[k])) == table[k];
  return {std::abs(i - 1.0 / 7.0) <= 1e-9 && std::abs(h - 3.0) <= 0.005 && areas == 7,
          fmt("IoU=%.12f H=%.4f", i, h) + " areas " + std::to_string(areas) + "/7"};
}

Outcome task1_scoring() {
  const std::string dir = TCE_FIXTURES;
  std::ifstream keys_in(dir + "/task1_keys.jsonl");
  const Task1Score s = score_task1(read_responses(dir + "/task1_responses.jsonl"), parse_keys(keys_in));
  const std::string csv = report_csv({{"m", CorpusReport{}}});
  std::set<std::string> cols;
  std::istringstream header(csv.substr(0, csv.find('\n')));
  for (std::string col; std::getline(header, col, ',');) cols.insert(col);
  cols.erase("Model");
  const std::set<std::string> want{"TSE", "RGE", "PE", "VPR", "IoU", "Hausdorff", "Success"};
  const std::string acc = format_fixed(s.acc, 2), inv = format_fixed(s.invalid_rate, 2);
  return {s.n == 20 && acc == "65.00" && inv == "15.00" && cols == want,
          "Acc=" + acc + " Invalid=" + inv + " columns " + (cols == want ? "match" : "differ")};
}

Outcome pipeline_round_trip() {
  const auto& c = corpus();
  std::size_t accepted = 0, idempotent = 0, runs = 0;
  std::mt19937_64 gen(404);
  std::normal_distribution<double> noise(0.0, 1e-4);
  for (std::size_t i = 0; i < 100; ++i) {
    RawAssembly raw = raw_from_instance(c[i]);
    for (auto& p : raw.pieces) {
      for (auto& v : p.ring) {
        v.x += noise(gen);
        v.y += noise(gen);
      }
    }
    ++runs;
    try {
      const TceInstance n = normalize(raw);
      accepted += n == c[i];
      idempotent += normalize(raw_from_instance(n)) == n;
    } catch (const Error&) {
    }
  }
  std::size_t lattice = 0, inverted = 0;
  for (long d : {1L, 2L, 4L}) {
    for (long a = -64; a <= 64; ++a) {
      for (long b = -64; b <= 64; ++b) {
        const ExactValue v = val(a, b, d);
        ++lattice;
        try {
          inverted += snap_scalar(v.to_double()) == v;
        } catch (const SnapError&) {
        }
      }
    }
  }
  std::ostringstream d;
  d << "accepted " << accepted << "/" << runs << ", idempotent " << idempotent << "/" << runs << ", snap inverse "
    << inverted << "/" << lattice;
  return {accepted == runs && idempotent == runs && inverted == lattice, d.str()};
}

Outcome solver() {
  std::ostringstream d;
  bool ok = true;
  for (const auto& [name, target] : {std::pair{"square", big_square_outline()}, {"rect2x4", rectangle_outline(2, 4)}}) {
    const auto t0 = Clock::now();
    SolverConfig all;
    all.find_all = true;
    const SolveResult r = solve(target, all);
    const double secs = seconds_since(t0);
    std::size_t valid = 0;
    for (const auto& sol : r.solutions) {
      TceInstance truth;
      truth.instance_id = name;
      truth.target_outline = target;
      valid += evaluate(serialize_tce(solution_instance(target, sol, name)), truth).success;
    }
    ok = ok && r.status == SolveStatus::solved && !r.solutions.empty() && valid == r.solutions.size() && secs < 60;
    d << name << " " << valid << "/" << r.solutions.size() << fmt(" in %.2fs; ", secs);
  }
  double worst = 0;
  std::size_t unsat = 0, cases = 0;
  const std::vector<Outline> wrong{rectangle_outline(7, 1), rectangle_outline(3, 3), rectangle_outline(8, 1),
                                   rectangle_outline(1, 1), rectangle_outline(3, 4),
                                   outline_of({{q(0), q(0)}, {r2(3), q(0)}, {r2(3), r2(3)}, {q(0), r2(3)}})};
  for (const Outline& t : wrong) {
    const auto t0 = Clock::now();
    const SolveResult r = solve(t);
    worst = std::max(worst, seconds_since(t0));
    ++cases;
    unsat += r.status == SolveStatus::unsat;
  }
  ok = ok && unsat == cases && worst < 0.1;
  d << "unsat " << unsat << "/" << cases << fmt(" worst %.4fs", worst);
  return {ok, d.str()};
}

Outcome task1_generation() {
  const auto& c = corpus();
  std::vector<PoolEntry> pool;
  for (const auto& inst : c) pool.push_back({inst.instance_id, inst.target_outline});
  std::map<char, std::size_t> freq;
  std::size_t valid = 0;
  const std::vector<McItem> items = gen_task1_batch(c, pool, 400);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const McItem& item = items[i];
    ++freq[item.answer];
    const std::size_t ans = static_cast<std::size_t>(item.answer - 'A');
    bool ok = item.option_ids[ans] == c[i].instance_id &&
              std::set<std::string>(item.option_ids.begin(), item.option_ids.end()).size() == 4;
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = a + 1; b < 4; ++b) ok = ok && !congruent_silhouettes(item.options[a], item.options[b]);
    }
    valid += ok;
  }
  std::ostringstream d;
  bool balanced = true;
  d << "valid " << valid << "/400, labels";
  for (char l : kChoiceLetters) {
    const double pct = 100.0 * static_cast<double>(freq[l]) / 400.0;
    balanced = balanced && pct >= 20.0 && pct <= 30.0;
    d << " " << l << "=" << fmt("%.2f%%", pct);
  }
  return {items.size() == 400 && valid == 400 && balanced, d.str()};
}

}  // namespace

int main() {
  criterion("exact-arithmetic-oracle", exact_oracle);
  criterion("verifier-soundness", verifier_soundness);
  criterion("mutation-detection", mutation_detection);
  criterion("metric-fixtures", metric_fixtures);
  criterion("task1-scoring", task1_scoring);
  criterion("pipeline-round-trip", pipeline_round_trip);
  criterion("solver", solver);
  criterion("task1-generation", task1_generation);
  return failures == 0 ? 0 : 1;
}

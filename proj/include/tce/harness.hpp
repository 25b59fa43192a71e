#pragma once

// Offline scoring: Task-1 choice extraction and Acc/Invalid, Task-2 submission
// extraction and batch verification.

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tce/error.hpp"
#include "tce/parallel.hpp"
#include "tce/tangram.hpp"
#include "tce/verify.hpp"

namespace tce {

struct ResponseRecord {
  std::string instance_id;
  std::string raw_text;
  int task = 2;
  std::optional<double> latency_ms;
  int retries = 0;
  std::string error;  // transport failure, empty when fine
  bool cached = false;

  friend bool operator==(const ResponseRecord&, const ResponseRecord&) = default;
};

inline ordered_json response_json(const ResponseRecord& r) {
  ordered_json j;
  j["instance_id"] = r.instance_id;
  j["raw_text"] = r.raw_text;
  j["task"] = r.task;
  if (r.latency_ms) j["latency_ms"] = *r.latency_ms;
  j["retries"] = r.retries;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

inline ResponseRecord response_from_json(const json& j) {
  if (!j.is_object() || !j.contains("instance_id") || !j["instance_id"].is_string()) {
    throw Error("response record needs a string instance_id");
  }
  ResponseRecord r;
  r.instance_id = j["instance_id"].get<std::string>();
  if (j.contains("raw_text") && j["raw_text"].is_string()) r.raw_text = j["raw_text"].get<std::string>();
  if (j.contains("task") && j["task"].is_number_integer()) r.task = j["task"].get<int>();
  if (j.contains("latency_ms") && j["latency_ms"].is_number()) r.latency_ms = j["latency_ms"].get<double>();
  if (j.contains("retries") && j["retries"].is_number_integer()) r.retries = j["retries"].get<int>();
  if (j.contains("error") && j["error"].is_string()) r.error = j["error"].get<std::string>();
  return r;
}

/// Line-delimited {"instance_id","raw_text"} records; blank lines skipped.
inline std::vector<ResponseRecord> parse_responses(std::istream& in) {
  std::vector<ResponseRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(response_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw Error("responses line " + std::to_string(lineno) + ": " + e.what());
    } catch (const Error& e) {
      throw Error("responses line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

inline std::vector<ResponseRecord> read_responses(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return parse_responses(in);
}

// ---------------------------------------------------------------------------
// Task 1

enum class Verdict { correct, wrong, invalid };

inline std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::correct: return "correct";
    case Verdict::wrong: return "wrong";
    case Verdict::invalid: return "invalid";
  }
  return "invalid";
}

namespace detail {

inline const std::regex& answer_pattern() {
  static const std::regex re(
      "[Aa][Nn][Ss][Ww][Ee][Rr][^\\n]{0,30}?(?:[^A-Za-z])([ABCD])(?![A-Za-z])");
  return re;
}

inline const std::regex& option_pattern() {
  static const std::regex re("(?:^|[^A-Za-z])[Oo][Pp][Tt][Ii][Oo][Nn]\\s*[\\(\\[]?([ABCD])(?![A-Za-z])");
  return re;
}

inline const std::regex& letter_line_pattern() {
  static const std::regex re("^[^A-Za-z0-9]*([ABCD])[^A-Za-z0-9]*$");
  return re;
}

inline const std::regex& standalone_letter() {
  static const std::regex re("(?:^|[^A-Za-z])([ABCD])(?![A-Za-z])");
  return re;
}

}  // namespace detail

/// 'A'..'D', or nullopt when no option can be mapped. Rule 1: the last
/// explicit answer ("answer ... X", "option X", or a final line holding only
/// the letter). Rule 2: the only distinct standalone letter in the text.
inline std::optional<char> parse_choice(std::string_view text) {
  const std::string s(text);
  std::ptrdiff_t best_pos = -1;
  char best = 0;
  for (const std::regex* re : {&detail::answer_pattern(), &detail::option_pattern()}) {
    for (auto it = std::sregex_iterator(s.begin(), s.end(), *re); it != std::sregex_iterator(); ++it) {
      const auto pos = it->position(1);
      if (pos > best_pos) {
        best_pos = pos;
        best = it->str(1)[0];
      }
    }
  }
  std::size_t end = s.find_last_not_of(" \t\r\n");
  if (end != std::string::npos) {
    std::size_t begin = s.find_last_of('\n', end);
    begin = begin == std::string::npos ? 0 : begin + 1;
    const std::string last = s.substr(begin, end - begin + 1);
    std::smatch m;
    if (std::regex_match(last, m, detail::letter_line_pattern())) {
      const auto pos = static_cast<std::ptrdiff_t>(begin) + m.position(1);
      if (pos > best_pos) {
        best_pos = pos;
        best = m.str(1)[0];
      }
    }
  }
  if (best_pos >= 0) return best;
  std::set<char> letters;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), detail::standalone_letter()); it != std::sregex_iterator();
       ++it) {
    letters.insert(it->str(1)[0]);
  }
  if (letters.size() == 1) return *letters.begin();
  return std::nullopt;
}

struct Task1Score {
  std::size_t n = 0;
  std::size_t correct = 0, wrong = 0, invalid = 0;
  double acc = 0;          // percent
  double invalid_rate = 0; // percent
  std::vector<std::pair<std::string, Verdict>> verdicts;
};

/// Acc = 100 * |correct| / N, Invalid = 100 * |unmappable| / N. Throws Error
/// when a response has no key.
inline Task1Score score_task1(const std::vector<ResponseRecord>& responses, const std::map<std::string, char>& keys) {
  Task1Score s;
  s.n = responses.size();
  for (const auto& r : responses) {
    auto key = keys.find(r.instance_id);
    if (key == keys.end()) throw Error("score_task1: no answer key for " + r.instance_id);
    const auto choice = parse_choice(r.raw_text);
    Verdict v = !choice ? Verdict::invalid : (*choice == key->second ? Verdict::correct : Verdict::wrong);
    s.correct += v == Verdict::correct;
    s.wrong += v == Verdict::wrong;
    s.invalid += v == Verdict::invalid;
    s.verdicts.emplace_back(r.instance_id, v);
  }
  if (s.n) {
    s.acc = 100.0 * static_cast<double>(s.correct) / static_cast<double>(s.n);
    s.invalid_rate = 100.0 * static_cast<double>(s.invalid) / static_cast<double>(s.n);
  }
  return s;
}

/// Keys from McItem sidecars (one JSON object per line) or a single object
/// mapping instance ids to letters.
inline std::map<std::string, char> parse_keys(std::istream& in) {
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  std::map<std::string, char> keys;
  auto letter = [](const json& v) {
    if (!v.is_string() || v.get<std::string>().size() != 1) throw Error("answer must be a single letter");
    const char c = v.get<std::string>()[0];
    if (c < 'A' || c > 'D') throw Error("answer must be A, B, C or D");
    return c;
  };
  try {
    const json whole = json::parse(text);
    if (whole.is_object() && !whole.contains("answer")) {
      for (const auto& [id, v] : whole.items()) keys[id] = letter(v);
      return keys;
    }
  } catch (const json::exception&) {
  }
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(std::string("keys: ") + e.what());
    }
    if (!j.is_object() || !j.contains("instance_id") || !j.contains("answer")) {
      throw Error("keys: each line needs instance_id and answer");
    }
    keys[j["instance_id"].get<std::string>()] = letter(j["answer"]);
  }
  return keys;
}

// ---------------------------------------------------------------------------
// Task 2

/// Candidate TCE text: the longest fenced code block when any exists, else the
/// longest balanced-brace span, else empty.
inline std::string extract_submission(std::string_view text) {
  std::string best;
  std::size_t pos = 0;
  bool fenced = false;
  while ((pos = text.find("```", pos)) != std::string_view::npos) {
    const std::size_t line_end = text.find('\n', pos + 3);
    if (line_end == std::string_view::npos) break;
    const std::size_t close = text.find("```", line_end + 1);
    if (close == std::string_view::npos) break;
    const std::string_view body = text.substr(line_end + 1, close - line_end - 1);
    if (!fenced || body.size() > best.size()) best = std::string(body);
    fenced = true;
    pos = close + 3;
  }
  if (fenced) return best;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '{') continue;
    int depth = 0;
    bool in_string = false, escaped = false;
    std::size_t end = std::string_view::npos;
    for (std::size_t k = i; k < text.size(); ++k) {
      const char c = text[k];
      if (in_string) {
        if (escaped) {
          escaped = false;
        } else if (c == '\\') {
          escaped = true;
        } else if (c == '"') {
          in_string = false;
        }
        continue;
      }
      if (c == '"') {
        in_string = true;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}' && --depth == 0) {
        end = k;
        break;
      }
    }
    if (end == std::string_view::npos) continue;
    if (end - i + 1 > best.size()) best = std::string(text.substr(i, end - i + 1));
    i = end;
  }
  return best;
}

struct Task2Run {
  std::vector<VerificationRecord> records;  // sorted by instance_id
  CorpusReport report;
};

/// Extract, evaluate and aggregate. Throws Error on duplicate response ids or
/// ids without a ground truth.
inline Task2Run run_task2(const std::vector<ResponseRecord>& responses,
                          const std::map<std::string, TceInstance>& truths, const VerifyConfig& cfg = {},
                          std::size_t threads = default_threads()) {
  std::set<std::string> ids;
  for (const auto& r : responses) {
    if (!ids.insert(r.instance_id).second) throw Error("run_task2: duplicate instance id " + r.instance_id);
    if (!truths.count(r.instance_id)) throw Error("run_task2: no ground truth for " + r.instance_id);
  }
  std::vector<const ResponseRecord*> order;
  for (const auto& r : responses) order.push_back(&r);
  std::sort(order.begin(), order.end(),
            [](const ResponseRecord* a, const ResponseRecord* b) { return a->instance_id < b->instance_id; });
  Task2Run run;
  run.records.resize(order.size());
  parallel_for(
      order.size(),
      [&](std::size_t i) {
        const ResponseRecord& r = *order[i];
        run.records[i] = evaluate(extract_submission(r.raw_text), truths.at(r.instance_id), cfg);
      },
      threads);
  if (!run.records.empty()) run.report = aggregate(run.records);
  return run;
}

}  // namespace tce

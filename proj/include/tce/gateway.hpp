#pragma once

// Optional model gateway: chat-style JSON over HTTP, cache-first, bounded
// parallelism, exponential-backoff retries.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <httplib.h>

#include "tce/error.hpp"
#include "tce/harness.hpp"
#include "tce/parallel.hpp"
#include "tce/pipeline.hpp"

namespace tce {

struct GatewayConfig {
  std::string endpoint = "http://127.0.0.1:8000/v1/chat/completions";
  std::string request_template = "chat-completions";
  std::string model;
  std::string token_env;  // name of the variable holding the bearer token
  std::size_t max_parallel = 4;
  int max_retries = 3;
  double backoff_initial_s = 0.5;
  double timeout_s = 120;
  std::string cache_dir = ".tce_cache";
};

inline GatewayConfig gateway_config_from_json(const json& j) {
  GatewayConfig c;
  if (!j.is_object()) throw Error("gateway config must be an object");
  auto str = [&](const char* key, std::string& out) {
    if (j.contains(key)) out = j[key].get<std::string>();
  };
  str("endpoint", c.endpoint);
  str("template", c.request_template);
  str("model", c.model);
  str("token_env", c.token_env);
  str("cache_dir", c.cache_dir);
  if (j.contains("max_parallel")) c.max_parallel = j["max_parallel"].get<std::size_t>();
  if (j.contains("max_retries")) c.max_retries = j["max_retries"].get<int>();
  if (j.contains("backoff_initial_s")) c.backoff_initial_s = j["backoff_initial_s"].get<double>();
  if (j.contains("timeout_s")) c.timeout_s = j["timeout_s"].get<double>();
  if (c.max_parallel < 1) throw Error("gateway config: max_parallel must be at least 1");
  if (j.contains("token")) throw Error("gateway config: store the token in an environment variable, not the file");
  return c;
}

namespace detail {

inline std::string base64(std::string_view in) {
  static constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((in.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 2 < in.size(); i += 3) {
    const std::uint32_t v = (static_cast<unsigned char>(in[i]) << 16) | (static_cast<unsigned char>(in[i + 1]) << 8) |
                            static_cast<unsigned char>(in[i + 2]);
    out += kAlphabet[v >> 18 & 63];
    out += kAlphabet[v >> 12 & 63];
    out += kAlphabet[v >> 6 & 63];
    out += kAlphabet[v & 63];
  }
  if (i < in.size()) {
    std::uint32_t v = static_cast<unsigned char>(in[i]) << 16;
    if (i + 1 < in.size()) v |= static_cast<unsigned char>(in[i + 1]) << 8;
    out += kAlphabet[v >> 18 & 63];
    out += kAlphabet[v >> 12 & 63];
    out += i + 1 < in.size() ? kAlphabet[v >> 6 & 63] : '=';
    out += '=';
  }
  return out;
}

struct Url {
  std::string scheme;
  std::string host;
  int port = 80;
  std::string path = "/";
};

inline Url parse_url(const std::string& s) {
  Url u;
  const auto sep = s.find("://");
  if (sep == std::string::npos) throw Error("endpoint must start with http://");
  u.scheme = s.substr(0, sep);
  if (u.scheme != "http") throw Error("endpoint scheme '" + u.scheme + "' is not supported; use http");
  std::string rest = s.substr(sep + 3);
  const auto slash = rest.find('/');
  if (slash != std::string::npos) {
    u.path = rest.substr(slash);
    rest = rest.substr(0, slash);
  }
  const auto colon = rest.rfind(':');
  if (colon != std::string::npos) {
    u.port = std::stoi(rest.substr(colon + 1));
    rest = rest.substr(0, colon);
  }
  u.host = rest;
  if (u.host.empty()) throw Error("endpoint has no host");
  return u;
}

inline std::filesystem::path cache_path(const GatewayConfig& cfg, const PromptBundle& b) {
  const std::string key = b.instance_id + '\x1f' + cfg.request_template + '\x1f' + std::string(variant_name(b.variant));
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.json", static_cast<unsigned long long>(fnv1a64(key)));
  return std::filesystem::path(cfg.cache_dir) / name;
}

inline std::optional<std::string> cache_lookup(const GatewayConfig& cfg, const PromptBundle& b) {
  std::ifstream in(cache_path(cfg, b));
  if (!in) return std::nullopt;
  try {
    const json j = json::parse(in);
    if (j.value("instance_id", "") != b.instance_id || j.value("template", "") != cfg.request_template ||
        j.value("variant", "") != variant_name(b.variant)) {
      return std::nullopt;
    }
    return j.at("raw_text").get<std::string>();
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

inline void cache_store(const GatewayConfig& cfg, const PromptBundle& b, const std::string& text) {
  std::filesystem::create_directories(cfg.cache_dir);
  const auto path = cache_path(cfg, b);
  const auto tmp = path.string() + ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary);
    ordered_json j;
    j["instance_id"] = b.instance_id;
    j["template"] = cfg.request_template;
    j["variant"] = std::string(variant_name(b.variant));
    j["raw_text"] = text;
    out << j.dump() << "\n";
  }
  std::filesystem::rename(tmp, path);
}

inline std::string extract_reply(const json& body) {
  const json& content = body.at("choices").at(0).at("message").at("content");
  if (content.is_string()) return content.get<std::string>();
  std::string out;
  for (const auto& part : content) {
    if (part.value("type", "") == "text") out += part.value("text", "");
  }
  return out;
}

}  // namespace detail

/// Request body for a bundle. Only the "chat-completions" template exists.
inline json gateway_request(const GatewayConfig& cfg, const PromptBundle& b) {
  if (cfg.request_template != "chat-completions") {
    throw Error("unknown request template '" + cfg.request_template + "'");
  }
  json content = json::array();
  content.push_back({{"type", "text"}, {"text", b.text}});
  content.push_back(
      {{"type", "image_url"},
       {"image_url", {{"url", "data:image/svg+xml;base64," + detail::base64(b.image_svg)}}}});
  json body;
  if (!cfg.model.empty()) body["model"] = cfg.model;
  body["messages"] = json::array({{{"role", "user"}, {"content", content}}});
  return body;
}

/// One record per bundle, in bundle order. Cache hits make no request;
/// failures after all retries yield a record with empty text and `error` set.
inline std::vector<ResponseRecord> call_gateway(const std::vector<PromptBundle>& bundles, const GatewayConfig& cfg) {
  std::vector<ResponseRecord> out(bundles.size());
  std::optional<detail::Url> url;
  std::string url_error;
  try {
    url = detail::parse_url(cfg.endpoint);
  } catch (const std::exception& e) {
    url_error = e.what();
  }
  std::string token;
  if (!cfg.token_env.empty()) {
    if (const char* v = std::getenv(cfg.token_env.c_str())) token = v;
  }
  parallel_for(
      bundles.size(),
      [&](std::size_t i) {
        const PromptBundle& b = bundles[i];
        ResponseRecord& rec = out[i];
        rec.instance_id = b.instance_id;
        rec.task = 2;
        if (auto hit = detail::cache_lookup(cfg, b)) {
          rec.raw_text = *hit;
          rec.cached = true;
          return;
        }
        if (!url) {
          rec.error = url_error;
          return;
        }
        const std::string payload = gateway_request(cfg, b).dump();
        httplib::Client client(url->host, url->port);
        const auto timeout = std::chrono::duration<double>(cfg.timeout_s);
        client.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
        client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
        httplib::Headers headers;
        if (!token.empty()) headers.emplace("Authorization", "Bearer " + token);
        const auto t0 = std::chrono::steady_clock::now();
        for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
          if (attempt > 0) {
            rec.retries = attempt;
            std::this_thread::sleep_for(
                std::chrono::duration<double>(cfg.backoff_initial_s * static_cast<double>(1 << (attempt - 1))));
          }
          auto res = client.Post(url->path, headers, payload, "application/json");
          if (!res) {
            rec.error = "transport: " + httplib::to_string(res.error());
            continue;
          }
          if (res->status == 429 || res->status >= 500) {
            rec.error = "http " + std::to_string(res->status);
            continue;
          }
          if (res->status != 200) {
            rec.error = "http " + std::to_string(res->status);
            break;
          }
          try {
            rec.raw_text = detail::extract_reply(json::parse(res->body));
            rec.error.clear();
            detail::cache_store(cfg, b, rec.raw_text);
          } catch (const std::exception& e) {
            rec.error = std::string("bad reply: ") + e.what();
          }
          break;
        }
        rec.latency_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      },
      cfg.max_parallel);
  return out;
}

}  // namespace tce

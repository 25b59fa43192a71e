#pragma once

// Local JSON-over-HTTP facade: GET /pieces, POST /snap, /validate,
// /normalize, /render. Handlers are pure functions of the request body.

#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include <httplib.h>

#include "tce/error.hpp"
#include "tce/pipeline.hpp"
#include "tce/svg.hpp"
#include "tce/tangram.hpp"
#include "tce/verify.hpp"

namespace tce {

struct ApiResponse {
  int status = 200;
  std::string body;
};

namespace detail {

inline ApiResponse api_ok(ordered_json data) {
  ordered_json j;
  j["ok"] = true;
  j["data"] = std::move(data);
  return {200, j.dump()};
}

inline ApiResponse api_error(int status, std::string_view code, const std::string& message,
                             ordered_json detail = nullptr) {
  ordered_json j;
  j["ok"] = false;
  j["error"] = {{"code", std::string(code)}, {"message", message}, {"detail", std::move(detail)}};
  return {status, j.dump()};
}

inline ApiResponse bad_request(const std::string& message) { return api_error(400, "bad-request", message); }

inline std::optional<json> parse_body(std::string_view body) {
  if (body.find_first_not_of(" \t\r\n") == std::string_view::npos) return std::nullopt;
  try {
    return json::parse(body);
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

template <class Fn>
ApiResponse guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return api_error(500, "internal", e.what());
  } catch (...) {
    return api_error(500, "internal", "unknown failure");
  }
}

}  // namespace detail

inline ApiResponse handle_pieces() {
  return detail::guarded([] { return detail::api_ok(pieces_json(canonical_pieces(), false)); });
}

/// {"vertices": [[x, y], ...], "tol": t} -> per-vertex snapped strings and
/// residuals; failures are itemized, not fatal.
inline ApiResponse handle_snap(std::string_view body) {
  return detail::guarded([&] {
    auto j = detail::parse_body(body);
    if (!j || !j->is_object() || !j->contains("vertices") || !(*j)["vertices"].is_array()) {
      return detail::bad_request("expected {\"vertices\": [[x, y], ...]}");
    }
    double tol = kDefaultSnapTol;
    if (j->contains("tol")) {
      if (!(*j)["tol"].is_number() || !((*j)["tol"].get<double>() > 0)) return detail::bad_request("tol must be > 0");
      tol = (*j)["tol"].get<double>();
    }
    ordered_json vertices = ordered_json::array();
    ordered_json residuals = ordered_json::array();
    ordered_json errors = ordered_json::array();
    const auto& list = (*j)["vertices"];
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto& v = list[i];
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        return detail::bad_request("vertex " + std::to_string(i) + " is not a pair of numbers");
      }
      const double x = v[0].get<double>(), y = v[1].get<double>();
      try {
        const ExactValue sx = snap_scalar(x, tol), sy = snap_scalar(y, tol);
        vertices.push_back(ordered_json::array({format_latex(sx), format_latex(sy)}));
        residuals.push_back(ordered_json::array({std::abs(x - sx.to_double()), std::abs(y - sy.to_double())}));
      } catch (const SnapError& e) {
        vertices.push_back(nullptr);
        residuals.push_back(nullptr);
        errors.push_back({{"index", i}, {"message", e.what()}});
      }
    }
    ordered_json data;
    data["vertices"] = vertices;
    data["residuals"] = residuals;
    data["errors"] = errors;
    return detail::api_ok(data);
  });
}

/// TCE document -> verification record against its own target outline.
inline ApiResponse handle_validate(std::string_view body) {
  return detail::guarded([&] {
    if (!detail::parse_body(body)) return detail::bad_request("body is not a JSON document");
    const TceParseResult parsed = parse_tce(body, ParseMode::submission);
    if (!parsed.instance || parsed.instance->target_outline.vertices.size() < 3) {
      return detail::bad_request("document has no usable target_outline");
    }
    TceInstance truth;
    truth.instance_id = parsed.instance->instance_id;
    truth.target_outline = parsed.instance->target_outline;
    return detail::api_ok(record_json(evaluate(body, truth)));
  });
}

/// Raw assembly {"pieces": [...], "tol"?: t} or a TCE document -> normalized
/// TCE document.
inline ApiResponse handle_normalize(std::string_view body) {
  return detail::guarded([&] {
    auto j = detail::parse_body(body);
    if (!j || !j->is_object()) return detail::bad_request("body is not a JSON object");
    double tol = kDefaultSnapTol;
    if (j->contains("tol")) {
      if (!(*j)["tol"].is_number() || !((*j)["tol"].get<double>() > 0)) return detail::bad_request("tol must be > 0");
      tol = (*j)["tol"].get<double>();
    }
    RawAssembly raw;
    try {
      if (j->contains("final_state")) {
        const TceParseResult parsed = parse_tce(body, ParseMode::submission);
        if (!parsed.instance || !parsed.report.ok()) return detail::bad_request("TCE document has syntax errors");
        raw = raw_from_instance(*parsed.instance);
      } else {
        raw = parse_raw(body);
      }
    } catch (const Error& e) {
      return detail::bad_request(e.what());
    }
    const SnappedAssembly snapped = snap_assembly(raw, tol);
    if (!snapped.failures.empty()) {
      ordered_json items = ordered_json::array();
      for (const auto& f : snapped.failures) items.push_back({{"piece", f.piece}, {"vertex", f.vertex}});
      return detail::api_error(422, "snap-failed", "vertices have no lattice value within tolerance", items);
    }
    try {
      const TceInstance inst = normalize(raw, tol, raw.id.empty() ? "normalized" : raw.id);
      return detail::api_ok(tce_json(inst));
    } catch (const NormalizeError& e) {
      return detail::api_error(422, "verify-failed", e.what());
    }
  });
}

/// {"outline": {...}} | {"pieces": [...]} | TCE document -> {"svg": text}.
inline ApiResponse handle_render(std::string_view body) {
  return detail::guarded([&] {
    auto j = detail::parse_body(body);
    if (!j || !j->is_object()) return detail::bad_request("body is not a JSON object");
    if (j->contains("outline")) {
      const auto& o = (*j)["outline"];
      auto ring = o.is_object() && o.contains("vertices") ? detail::json_ring(o["vertices"]) : std::nullopt;
      if (!ring || ring->size() < 3) return detail::bad_request("outline needs at least 3 vertices");
      return detail::api_ok({{"svg", render_svg(make_outline(Polygon(*ring)))}});
    }
    const char* key = j->contains("final_state") ? "final_state" : (j->contains("pieces") ? "pieces" : nullptr);
    if (!key) return detail::bad_request("expected outline, pieces or a TCE document");
    ordered_json doc;
    doc["final_state"] = (*j)[key];
    const TceParseResult parsed = parse_tce(doc.dump(), ParseMode::submission);
    if (!parsed.instance || parsed.instance->final_state.empty()) return detail::bad_request("no renderable pieces");
    for (const auto& v : parsed.report.violations) {
      if (v.code != TseCode::bad_piece_count) return detail::bad_request(v.detail);
    }
    return detail::api_ok({{"svg", render_svg(parsed.instance->final_state)}});
  });
}

inline void install_routes(httplib::Server& server) {
  auto reply = [](httplib::Response& res, const ApiResponse& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server.Get("/pieces", [reply](const httplib::Request&, httplib::Response& res) { reply(res, handle_pieces()); });
  server.Post("/snap", [reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_snap(req.body));
  });
  server.Post("/validate", [reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_validate(req.body));
  });
  server.Post("/normalize", [reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_normalize(req.body));
  });
  server.Post("/render", [reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_render(req.body));
  });
  server.set_exception_handler([reply](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
    reply(res, detail::api_error(500, "internal", "unhandled exception"));
  });
}

inline constexpr int kDefaultServicePort = 8765;

/// --port wins, then TCE_SERVICE_PORT, then the default.
inline int service_port(std::optional<int> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("TCE_SERVICE_PORT")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw Error("TCE_SERVICE_PORT is not a port number");
    }
  }
  return kDefaultServicePort;
}

inline bool is_loopback(const std::string& host) {
  return host == "127.0.0.1" || host == "localhost" || host == "::1";
}

/// Blocks serving until the server stops. Throws when binding a
/// non-loopback host without `allow_remote`, or when the port is taken.
inline void run_service(httplib::Server& server, const std::string& host, int port, bool allow_remote) {
  if (!is_loopback(host) && !allow_remote) {
    throw Error("refusing to bind " + host + " without --allow-remote");
  }
  install_routes(server);
  if (!server.bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
  server.listen_after_bind();
}

}  // namespace tce

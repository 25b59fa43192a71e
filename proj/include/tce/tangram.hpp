#pragma once

// The seven-piece inventory and the TCE document model: instance, pieces,
// outline, adjacency graph, and the syntax-error taxonomy produced on parse.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "tce/error.hpp"
#include "tce/exactnum.hpp"
#include "tce/geom.hpp"

namespace tce {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Piece inventory

enum class PieceKind {
  large_triangle_1,
  large_triangle_2,
  medium_triangle,
  small_triangle_1,
  small_triangle_2,
  square,
  parallelogram,
};

inline constexpr std::array<PieceKind, 7> kAllKinds{
    PieceKind::large_triangle_1, PieceKind::large_triangle_2, PieceKind::medium_triangle,
    PieceKind::small_triangle_1, PieceKind::small_triangle_2, PieceKind::square,
    PieceKind::parallelogram};

/// Congruence class of a kind; the two large and the two small triangles share one.
enum class Shape { large_triangle, medium_triangle, small_triangle, square, parallelogram };

inline constexpr std::size_t index_of(PieceKind k) { return static_cast<std::size_t>(k); }

inline constexpr Shape shape_of(PieceKind k) {
  switch (k) {
    case PieceKind::large_triangle_1:
    case PieceKind::large_triangle_2: return Shape::large_triangle;
    case PieceKind::medium_triangle: return Shape::medium_triangle;
    case PieceKind::small_triangle_1:
    case PieceKind::small_triangle_2: return Shape::small_triangle;
    case PieceKind::square: return Shape::square;
    case PieceKind::parallelogram: return Shape::parallelogram;
  }
  return Shape::square;
}

inline std::string_view kind_name(PieceKind k) {
  static constexpr std::array<std::string_view, 7> kNames{
      "large_triangle_1", "large_triangle_2", "medium_triangle", "small_triangle_1",
      "small_triangle_2", "square",           "parallelogram"};
  return kNames[index_of(k)];
}

/// Short label used in adjacency graphs.
inline std::string_view kind_label(PieceKind k) {
  static constexpr std::array<std::string_view, 7> kLabels{"LT1", "LT2", "MT", "ST1", "ST2", "SQ", "PG"};
  return kLabels[index_of(k)];
}

inline std::optional<PieceKind> kind_from_label(std::string_view s) {
  for (PieceKind k : kAllKinds) {
    if (kind_label(k) == s) return k;
  }
  return std::nullopt;
}

inline std::optional<PieceKind> kind_from_name(std::string_view s) {
  for (PieceKind k : kAllKinds) {
    if (kind_name(k) == s || kind_label(k) == s) return k;
  }
  return std::nullopt;
}

/// Shape named without an index ("large_triangle", "small_triangle").
inline std::optional<Shape> generic_shape(std::string_view s) {
  if (s == "large_triangle" || s == "LT") return Shape::large_triangle;
  if (s == "small_triangle" || s == "ST") return Shape::small_triangle;
  return std::nullopt;
}

struct PieceSpec {
  PieceKind kind;
  ExactPolygon canonical;
  ExactValue area;
  ExactValue perimeter;
  std::vector<ExactValue> squared_edges;  // sorted
  bool reflection_allowed;
};

namespace detail {

inline std::vector<ExactValue> sorted_squared_edges(const ExactPolygon& p) {
  std::vector<ExactValue> out;
  for (std::size_t i = 0; i < p.size(); ++i) out.push_back(squared_length(p[i], p.vertex(i + 1)));
  std::sort(out.begin(), out.end());
  return out;
}

inline PieceSpec make_spec(PieceKind kind, std::vector<ExactPoint> ring) {
  ExactPolygon poly(std::move(ring));
  PieceSpec spec{kind, poly, polygon_area(poly), polygon_perimeter(poly).exact(),
                 sorted_squared_edges(poly), kind == PieceKind::parallelogram};
  return spec;
}

}  // namespace detail

/// Canonical vertex rings: large (0,0),(2,0),(0,2); medium (0,0),(r2,0),(0,r2);
/// small (0,0),(1,0),(0,1); unit square; parallelogram
/// (0,0),(r2,0),(3r2/2,r2/2),(r2/2,r2/2). Areas sum to 8.
inline const PieceSpec& piece_spec(PieceKind k) {
  static const std::array<PieceSpec, 7> kSpecs = [] {
    const ExactValue r2 = ExactValue::sqrt2();
    const ExactValue h(Rational(0), Rational(1, 2));
    const ExactValue h3(Rational(0), Rational(3, 2));
    auto large = [] { return std::vector<ExactPoint>{{0, 0}, {2, 0}, {0, 2}}; };
    auto small = [] { return std::vector<ExactPoint>{{0, 0}, {1, 0}, {0, 1}}; };
    return std::array<PieceSpec, 7>{
        detail::make_spec(PieceKind::large_triangle_1, large()),
        detail::make_spec(PieceKind::large_triangle_2, large()),
        detail::make_spec(PieceKind::medium_triangle, {{0, 0}, {r2, 0}, {0, r2}}),
        detail::make_spec(PieceKind::small_triangle_1, small()),
        detail::make_spec(PieceKind::small_triangle_2, small()),
        detail::make_spec(PieceKind::square, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}),
        detail::make_spec(PieceKind::parallelogram, {{0, 0}, {r2, 0}, {h3, h}, {h, h}}),
    };
  }();
  return kSpecs[index_of(k)];
}

// ---------------------------------------------------------------------------
// Document model

struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;
  Scalar length;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct PieceState {
  PieceKind kind = PieceKind::square;
  Polygon vertices;
  std::vector<Edge> edges;
  Point center;
  std::optional<RigidTransform> transform;

  friend bool operator==(const PieceState&, const PieceState&) = default;
};

struct Outline {
  Polygon vertices;
  std::vector<Edge> edges;

  friend bool operator==(const Outline&, const Outline&) = default;
};

using KindPair = std::pair<PieceKind, PieceKind>;

struct TceInstance {
  std::string instance_id;
  Outline target_outline;
  std::vector<PieceState> initial_state;
  std::vector<PieceState> final_state;
  std::vector<KindPair> adjacency_graph;  // sorted, first < second

  friend bool operator==(const TceInstance&, const TceInstance&) = default;
};

inline std::vector<Edge> ring_edges(const Polygon& poly) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const std::size_t j = (i + 1) % poly.size();
    edges.push_back({i, j, edge_length(poly[i], poly[j])});
  }
  return edges;
}

inline Point vertex_centroid(const Polygon& poly) {
  Scalar sx(0), sy(0);
  for (const auto& p : poly.vertices()) {
    sx += p.x;
    sy += p.y;
  }
  const Scalar n(static_cast<int>(poly.size()));
  return {sx / n, sy / n};
}

inline PieceState make_piece(PieceKind kind, Polygon vertices, std::optional<RigidTransform> transform = {}) {
  PieceState p;
  p.kind = kind;
  p.vertices = std::move(vertices);
  p.edges = ring_edges(p.vertices);
  p.center = vertex_centroid(p.vertices);
  p.transform = std::move(transform);
  return p;
}

/// Piece of `kind` moved by an exact rigid motion; vertices follow the
/// canonical ring.
inline PieceState place_piece(PieceKind kind, const RigidTransform& t) {
  return make_piece(kind, scalar_polygon(t.apply(piece_spec(kind).canonical)), t);
}

/// The seven pieces at their canonical coordinates, no transform.
inline std::vector<PieceState> canonical_pieces() {
  std::vector<PieceState> out;
  for (PieceKind k : kAllKinds) out.push_back(make_piece(k, scalar_polygon(piece_spec(k).canonical)));
  return out;
}

inline Outline make_outline(Polygon ring) {
  Outline o;
  o.vertices = std::move(ring);
  o.edges = ring_edges(o.vertices);
  return o;
}

inline KindPair ordered_pair(PieceKind a, PieceKind b) {
  return index_of(a) < index_of(b) ? KindPair{a, b} : KindPair{b, a};
}

// ---------------------------------------------------------------------------
// Syntax errors

enum class TseCode {
  unparseable_document,
  missing_field,
  bad_piece_count,
  unknown_piece_type,
  duplicate_kind,
  bad_coordinate,
  bad_edge_index,
};

inline std::string_view tse_code_name(TseCode c) {
  switch (c) {
    case TseCode::unparseable_document: return "unparseable-document";
    case TseCode::missing_field: return "missing-field";
    case TseCode::bad_piece_count: return "bad-piece-count";
    case TseCode::unknown_piece_type: return "unknown-piece-type";
    case TseCode::duplicate_kind: return "duplicate-kind";
    case TseCode::bad_coordinate: return "bad-coordinate";
    case TseCode::bad_edge_index: return "bad-edge-index";
  }
  return "unknown";
}

struct TseViolation {
  TseCode code;
  std::string detail;
};

struct TseReport {
  std::vector<TseViolation> violations;

  bool ok() const { return violations.empty(); }
  bool has(TseCode c) const {
    return std::any_of(violations.begin(), violations.end(), [c](const TseViolation& v) { return v.code == c; });
  }
  void add(TseCode c, std::string detail) { violations.push_back({c, std::move(detail)}); }
};

/// `document` requires every TCE field; `submission` only needs final_state
/// pieces with type and vertices (edges, centers and matrices are optional).
enum class ParseMode { document, submission };

struct TceParseResult {
  std::optional<TceInstance> instance;
  TseReport report;
};

namespace detail {

inline std::optional<Scalar> json_scalar(const json& v) {
  try {
    if (v.is_string()) return parse_scalar(v.get<std::string>());
    if (v.is_number_integer()) return Scalar(ExactValue(static_cast<long>(v.get<long long>())));
    if (v.is_number_unsigned()) return Scalar(ExactValue(static_cast<long>(v.get<unsigned long long>())));
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (std::isfinite(d)) return Scalar::approx(d);
    }
  } catch (const Error&) {
  }
  return std::nullopt;
}

inline std::optional<Point> json_point(const json& v) {
  if (!v.is_array() || v.size() != 2) return std::nullopt;
  auto x = json_scalar(v[0]);
  auto y = json_scalar(v[1]);
  if (!x || !y) return std::nullopt;
  return Point{*x, *y};
}

inline std::optional<std::vector<Point>> json_ring(const json& v) {
  if (!v.is_array()) return std::nullopt;
  std::vector<Point> ring;
  for (const auto& p : v) {
    auto pt = json_point(p);
    if (!pt) return std::nullopt;
    ring.push_back(*pt);
  }
  return ring;
}

inline bool lengths_agree(const Scalar& stated, const Scalar& actual) {
  if (stated.is_exact() && actual.is_exact()) return stated.exact() == actual.exact();
  return std::abs(stated.to_double() - actual.to_double()) <= 1e-6;
}

/// Validates an "edges" array against the ring as written.
inline void check_edges(const json& edges, const std::vector<Point>& ring, const std::string& where,
                        TseReport& report) {
  if (!edges.is_array()) {
    report.add(TseCode::bad_edge_index, where + ": edges is not an array");
    return;
  }
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() < 2 || e.size() > 3 || !e[0].is_number_integer() ||
        !e[1].is_number_integer()) {
      report.add(TseCode::bad_edge_index, where + ": malformed edge");
      continue;
    }
    const auto i = e[0].get<long long>();
    const auto j = e[1].get<long long>();
    const auto n = static_cast<long long>(ring.size());
    if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
      report.add(TseCode::bad_edge_index, where + ": edge index out of range");
      continue;
    }
    if (e.size() == 3) {
      auto stated = json_scalar(e[2]);
      if (!stated) {
        report.add(TseCode::bad_coordinate, where + ": unparseable edge length");
        continue;
      }
      const Scalar actual = edge_length(ring[static_cast<std::size_t>(i)], ring[static_cast<std::size_t>(j)]);
      if (!lengths_agree(*stated, actual)) {
        report.add(TseCode::bad_edge_index, where + ": edge length disagrees with vertices");
      }
    }
  }
}

inline std::optional<RigidTransform> json_transform(const json& v, bool strict, const std::string& where,
                                                    TseReport& report) {
  if (!v.is_array() || v.size() != 3) {
    report.add(TseCode::bad_coordinate, where + ": transform_matrix must be 3x3");
    return std::nullopt;
  }
  RigidTransform::Matrix m;
  for (std::size_t r = 0; r < 3; ++r) {
    if (!v[r].is_array() || v[r].size() != 3) {
      report.add(TseCode::bad_coordinate, where + ": transform_matrix must be 3x3");
      return std::nullopt;
    }
    for (std::size_t c = 0; c < 3; ++c) {
      auto s = json_scalar(v[r][c]);
      if (!s) {
        report.add(TseCode::bad_coordinate, where + ": unparseable matrix entry");
        return std::nullopt;
      }
      m[r][c] = *s;
    }
  }
  if (!RigidTransform::is_rigid(m)) {
    if (strict) report.add(TseCode::bad_coordinate, where + ": transform_matrix is not rigid");
    return std::nullopt;
  }
  return RigidTransform(m);
}

inline std::vector<PieceState> parse_pieces(const json& arr, bool final_state, ParseMode mode,
                                            const std::string& field, TseReport& report) {
  std::vector<PieceState> pieces;
  if (!arr.is_array()) {
    report.add(TseCode::missing_field, field + " is not an array");
    return pieces;
  }
  if (arr.size() != 7) {
    report.add(TseCode::bad_piece_count, field + " has " + std::to_string(arr.size()) + " pieces");
  }
  const bool strict = mode == ParseMode::document;
  std::array<bool, 7> seen{};
  for (std::size_t idx = 0; idx < arr.size(); ++idx) {
    const json& p = arr[idx];
    const std::string where = field + "[" + std::to_string(idx) + "]";
    if (!p.is_object()) {
      report.add(TseCode::missing_field, where + " is not an object");
      continue;
    }
    if (!p.contains("type") || !p["type"].is_string()) {
      report.add(TseCode::missing_field, where + ": missing type");
      continue;
    }
    const std::string type = p["type"].get<std::string>();
    std::optional<PieceKind> kind = kind_from_name(type);
    if (!kind) {
      if (auto shape = generic_shape(type)) {
        for (PieceKind k : kAllKinds) {
          if (shape_of(k) == *shape && !seen[index_of(k)]) {
            kind = k;
            break;
          }
        }
        if (!kind) {
          report.add(TseCode::duplicate_kind, where + ": too many " + type);
          kind = *shape == Shape::large_triangle ? PieceKind::large_triangle_2 : PieceKind::small_triangle_2;
        }
      } else if (type == "medium_triangle" || type == "square" || type == "parallelogram") {
        kind = kind_from_name(type);
      } else {
        report.add(TseCode::unknown_piece_type, where + ": unknown type '" + type + "'");
        continue;
      }
    } else if (seen[index_of(*kind)]) {
      report.add(TseCode::duplicate_kind, where + ": duplicate " + std::string(kind_name(*kind)));
    }
    seen[index_of(*kind)] = true;

    if (!p.contains("vertices")) {
      report.add(TseCode::missing_field, where + ": missing vertices");
      continue;
    }
    auto ring = json_ring(p["vertices"]);
    if (!ring || ring->size() < 3) {
      report.add(TseCode::bad_coordinate, where + ": bad vertices");
      continue;
    }
    if (p.contains("edges")) {
      check_edges(p["edges"], *ring, where, report);
    } else if (strict) {
      report.add(TseCode::missing_field, where + ": missing edges");
    }
    PieceState piece = make_piece(*kind, Polygon(*ring));
    if (p.contains("center")) {
      if (auto c = json_point(p["center"])) {
        piece.center = *c;
      } else {
        report.add(TseCode::bad_coordinate, where + ": bad center");
      }
    } else if (strict) {
      report.add(TseCode::missing_field, where + ": missing center");
    }
    if (final_state) {
      if (p.contains("transform_matrix")) {
        piece.transform = json_transform(p["transform_matrix"], strict, where, report);
      } else if (strict) {
        report.add(TseCode::missing_field, where + ": missing transform_matrix");
      }
    }
    pieces.push_back(std::move(piece));
  }
  return pieces;
}

}  // namespace detail

/// Lenient, total parse. Returns an instance whenever the text is a JSON
/// object, together with every violation found.
inline TceParseResult parse_tce(std::string_view doc, ParseMode mode = ParseMode::document) {
  TceParseResult out;
  json root;
  try {
    root = json::parse(doc);
  } catch (const json::exception& e) {
    out.report.add(TseCode::unparseable_document, e.what());
    return out;
  }
  if (!root.is_object()) {
    out.report.add(TseCode::unparseable_document, "top level is not an object");
    return out;
  }
  const bool strict = mode == ParseMode::document;
  TceInstance inst;
  TseReport& report = out.report;

  if (root.contains("instance_id") && root["instance_id"].is_string()) {
    inst.instance_id = root["instance_id"].get<std::string>();
  } else if (strict) {
    report.add(TseCode::missing_field, "instance_id");
  }

  if (root.contains("target_outline")) {
    const json& o = root["target_outline"];
    auto ring = o.is_object() && o.contains("vertices") ? detail::json_ring(o["vertices"]) : std::nullopt;
    if (!ring || ring->size() < 3) {
      report.add(TseCode::bad_coordinate, "target_outline: bad vertices");
    } else {
      if (o.contains("edges")) {
        detail::check_edges(o["edges"], *ring, "target_outline", report);
      } else if (strict) {
        report.add(TseCode::missing_field, "target_outline: missing edges");
      }
      inst.target_outline = make_outline(Polygon(*ring));
    }
  } else if (strict) {
    report.add(TseCode::missing_field, "target_outline");
  }

  if (root.contains("initial_state")) {
    inst.initial_state = detail::parse_pieces(root["initial_state"], false, mode, "initial_state", report);
  } else if (strict) {
    report.add(TseCode::missing_field, "initial_state");
  }

  if (root.contains("final_state")) {
    inst.final_state = detail::parse_pieces(root["final_state"], true, mode, "final_state", report);
  } else {
    report.add(TseCode::missing_field, "final_state");
  }

  if (root.contains("adjacency_graph")) {
    const json& g = root["adjacency_graph"];
    if (!g.is_array()) {
      report.add(TseCode::missing_field, "adjacency_graph is not an array");
    } else {
      for (const auto& e : g) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
          report.add(TseCode::unknown_piece_type, "adjacency_graph: malformed pair");
          continue;
        }
        auto a = kind_from_label(e[0].get<std::string>());
        auto b = kind_from_label(e[1].get<std::string>());
        if (!a || !b || *a == *b) {
          report.add(TseCode::unknown_piece_type, "adjacency_graph: unknown label");
          continue;
        }
        inst.adjacency_graph.push_back(ordered_pair(*a, *b));
      }
      std::sort(inst.adjacency_graph.begin(), inst.adjacency_graph.end());
      inst.adjacency_graph.erase(std::unique(inst.adjacency_graph.begin(), inst.adjacency_graph.end()),
                                 inst.adjacency_graph.end());
    }
  } else if (strict) {
    report.add(TseCode::missing_field, "adjacency_graph");
  }

  out.instance = std::move(inst);
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

namespace detail {

inline ordered_json point_json(const Point& p) {
  return ordered_json::array({format_scalar(p.x), format_scalar(p.y)});
}

inline ordered_json ring_json(const Polygon& poly) {
  ordered_json arr = ordered_json::array();
  for (const auto& p : poly.vertices()) arr.push_back(point_json(p));
  return arr;
}

inline ordered_json piece_json(const PieceState& p, bool with_transform) {
  ordered_json j;
  j["type"] = std::string(kind_name(p.kind));
  j["vertices"] = ring_json(p.vertices);
  ordered_json edges = ordered_json::array();
  for (const auto& e : p.edges) edges.push_back(ordered_json::array({e.from, e.to, format_scalar(e.length)}));
  j["edges"] = edges;
  j["center"] = point_json(p.center);
  if (with_transform && p.transform) {
    ordered_json m = ordered_json::array();
    for (const auto& row : p.transform->matrix()) {
      m.push_back(ordered_json::array({format_scalar(row[0]), format_scalar(row[1]), format_scalar(row[2])}));
    }
    j["transform_matrix"] = m;
  }
  return j;
}

inline bool is_leaf_array(const ordered_json& j) {
  if (!j.is_array()) return false;
  return std::all_of(j.begin(), j.end(), [](const ordered_json& e) {
    return e.is_primitive() || (e.is_array() && std::all_of(e.begin(), e.end(), [](const ordered_json& x) {
                                  return x.is_primitive();
                                }));
  });
}

/// Objects one key per line; arrays of scalars or of scalar tuples inline.
inline void write_pretty(std::ostringstream& os, const ordered_json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string inner(static_cast<std::size_t>(indent + 2), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) os << ",\n";
      first = false;
      os << inner << ordered_json(key).dump() << ": ";
      write_pretty(os, value, indent + 2);
    }
    os << "\n" << pad << "}";
  } else if (j.is_array() && !j.empty() && !is_leaf_array(j)) {
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) os << ",\n";
      os << inner;
      write_pretty(os, j[i], indent + 2);
    }
    os << "\n" << pad << "]";
  } else {
    std::string s = j.dump();
    os << s;
  }
}

}  // namespace detail

inline ordered_json outline_json(const Outline& o) {
  ordered_json j;
  j["vertices"] = detail::ring_json(o.vertices);
  ordered_json edges = ordered_json::array();
  for (const auto& e : o.edges) edges.push_back(ordered_json::array({e.from, e.to}));
  j["edges"] = edges;
  return j;
}

inline ordered_json pieces_json(const std::vector<PieceState>& pieces, bool with_transform) {
  ordered_json arr = ordered_json::array();
  for (const auto& p : pieces) arr.push_back(detail::piece_json(p, with_transform));
  return arr;
}

inline ordered_json tce_json(const TceInstance& inst) {
  ordered_json j;
  j["instance_id"] = inst.instance_id;
  j["target_outline"] = outline_json(inst.target_outline);
  j["initial_state"] = pieces_json(inst.initial_state, false);
  j["final_state"] = pieces_json(inst.final_state, true);
  ordered_json adj = ordered_json::array();
  for (const auto& [a, b] : inst.adjacency_graph) {
    adj.push_back(ordered_json::array({std::string(kind_label(a)), std::string(kind_label(b))}));
  }
  j["adjacency_graph"] = adj;
  return j;
}

inline std::string pretty_json(const ordered_json& j) {
  std::ostringstream os;
  detail::write_pretty(os, j, 0);
  os << "\n";
  return os.str();
}

/// Canonical document text: fixed key order, value strings, trailing newline.
inline std::string serialize_tce(const TceInstance& inst) { return pretty_json(tce_json(inst)); }

// ---------------------------------------------------------------------------
// Congruence of silhouettes

/// True iff one of the 16 lattice symmetries plus a translation maps a's ring
/// onto b's. Collinear vertices are ignored. Throws NotExact on approximate input.
inline bool congruent_silhouettes(const Outline& a, const Outline& b) {
  auto ea = exact_polygon(a.vertices);
  auto eb = exact_polygon(b.vertices);
  if (!ea || !eb) throw NotExact("congruent_silhouettes requires exact outlines");
  const ExactPolygon pa(detail::clean_ring(ea->vertices()));
  const ExactPolygon pb(detail::clean_ring(eb->vertices()));
  if (pa.size() != pb.size() || pa.size() < 3) return false;
  if (polygon_area(pa) != polygon_area(pb)) return false;
  const std::size_t n = pa.size();
  for (int k = 0; k < 8; ++k) {
    for (bool reflect : {false, true}) {
      const ExactPolygon image = RigidTransform::compose(k, reflect, ExactPoint{}).apply(pa);
      for (std::size_t shift = 0; shift < n; ++shift) {
        const ExactPoint t = pb[shift] - image[0];
        bool match = true;
        for (std::size_t i = 0; i < n && match; ++i) match = image[i] + t == pb.vertex(shift + i);
        if (match) return true;
      }
    }
  }
  return false;
}

}  // namespace tce

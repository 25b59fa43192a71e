#pragma once

// Data construction: raw-assembly filtering, lattice snapping, normalization
// into exact TCE instances, Task-1 multiple-choice items and Task-2 prompts.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tce/error.hpp"
#include "tce/exactnum.hpp"
#include "tce/geom.hpp"
#include "tce/parallel.hpp"
#include "tce/svg.hpp"
#include "tce/tangram.hpp"
#include "tce/verify.hpp"

namespace tce {

// ---------------------------------------------------------------------------
// Seeded randomness

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// mt19937_64 with a bounded draw and shuffle whose output is fixed across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw Error("Rng::below: empty range");
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - (max % n + 1) % n;
    for (;;) {
      const std::uint64_t v = engine_();
      if (v <= limit) return v % n;
    }
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Raw assemblies

struct RawPiece {
  PieceKind kind = PieceKind::square;
  std::vector<FloatPoint> ring;
};

struct RawAssembly {
  std::string id;  // optional
  std::vector<RawPiece> pieces;
};

/// Parses one line {"pieces":[{"type","vertices":[[x,y],...]},...]}.
/// Generic names ("large_triangle") take the next free index.
inline RawAssembly parse_raw(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw Error(std::string("raw assembly: ") + e.what());
  }
  if (!j.is_object() || !j.contains("pieces") || !j["pieces"].is_array()) {
    throw Error("raw assembly: expected an object with a pieces array");
  }
  RawAssembly out;
  for (const char* key : {"instance_id", "id"}) {
    if (j.contains(key) && j[key].is_string()) {
      out.id = j[key].get<std::string>();
      break;
    }
  }
  std::array<bool, 7> seen{};
  for (const auto& p : j["pieces"]) {
    if (!p.is_object() || !p.contains("type") || !p["type"].is_string() || !p.contains("vertices")) {
      throw Error("raw assembly: piece needs type and vertices");
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
      }
    }
    if (!kind) throw Error("raw assembly: unknown or surplus piece type '" + type + "'");
    seen[index_of(*kind)] = true;
    RawPiece piece{*kind, {}};
    if (!p["vertices"].is_array()) throw Error("raw assembly: vertices must be an array");
    for (const auto& v : p["vertices"]) {
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw Error("raw assembly: vertex must be a pair of numbers");
      }
      const double x = v[0].get<double>(), y = v[1].get<double>();
      if (!std::isfinite(x) || !std::isfinite(y)) throw Error("raw assembly: non-finite coordinate");
      piece.ring.push_back({x, y});
    }
    out.pieces.push_back(std::move(piece));
  }
  return out;
}

inline std::string raw_to_json(const RawAssembly& raw) {
  ordered_json j;
  if (!raw.id.empty()) j["instance_id"] = raw.id;
  ordered_json pieces = ordered_json::array();
  for (const auto& p : raw.pieces) {
    ordered_json verts = ordered_json::array();
    for (const auto& v : p.ring) verts.push_back(ordered_json::array({v.x, v.y}));
    pieces.push_back({{"type", std::string(kind_name(p.kind))}, {"vertices", verts}});
  }
  j["pieces"] = pieces;
  return j.dump();
}

inline RawAssembly raw_from_pieces(const std::vector<PieceState>& pieces, std::string id = {}) {
  RawAssembly raw;
  raw.id = std::move(id);
  for (const auto& p : pieces) {
    RawPiece r{p.kind, {}};
    for (const auto& v : p.vertices.vertices()) r.ring.push_back(float_point(v));
    raw.pieces.push_back(std::move(r));
  }
  return raw;
}

inline RawAssembly raw_from_instance(const TceInstance& inst) {
  return raw_from_pieces(inst.final_state, inst.instance_id);
}

// ---------------------------------------------------------------------------
// Snapping

inline constexpr int kSnapCoeffBound = 64;
inline constexpr double kDefaultSnapTol = 1e-3;

/// Nearest (a + b sqrt2) / d with |a|, |b| <= 64 and d in {1, 2, 4}; ties go to
/// smaller d, then smaller |b|. Throws SnapError when the residual exceeds tol.
inline ExactValue snap_scalar(double x, double tol = kDefaultSnapTol) {
  if (!(tol > 0)) throw Error("snap_scalar: tolerance must be positive");
  if (!std::isfinite(x)) throw SnapError("snap_scalar: non-finite input");
  const double r2 = std::sqrt(2.0);
  double best_err = std::numeric_limits<double>::infinity();
  long best_a = 0, best_b = 0, best_d = 1;
  for (long d : {1L, 2L, 4L}) {
    for (long mag = 0; mag <= kSnapCoeffBound; ++mag) {
      for (long b : {mag, -mag}) {
        if (mag == 0 && b < 0) continue;
        const double target = static_cast<double>(d) * x - static_cast<double>(b) * r2;
        long a = std::lround(target);
        a = std::clamp(a, -static_cast<long>(kSnapCoeffBound), static_cast<long>(kSnapCoeffBound));
        const double value = (static_cast<double>(a) + static_cast<double>(b) * r2) / static_cast<double>(d);
        const double err = std::abs(x - value);
        if (err < best_err - 1e-15) {
          best_err = err;
          best_a = a;
          best_b = b;
          best_d = d;
        }
      }
    }
  }
  if (best_err > tol) {
    throw SnapError("no lattice value within " + format_fixed(tol, 6) + " of " + format_fixed(x, 9));
  }
  return ExactValue(Rational(best_a, best_d), Rational(best_b, best_d));
}

struct SnapFailure {
  std::size_t piece = 0;
  std::size_t vertex = 0;
  double value = 0;
};

struct SnappedAssembly {
  std::vector<PieceKind> kinds;
  std::vector<ExactPolygon> polygons;
  std::vector<SnapFailure> failures;
};

/// Translates so the float minimum x and y are zero, then snaps every vertex.
inline SnappedAssembly snap_assembly(const RawAssembly& raw, double tol = kDefaultSnapTol) {
  double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
  for (const auto& p : raw.pieces) {
    for (const auto& v : p.ring) {
      min_x = std::min(min_x, v.x);
      min_y = std::min(min_y, v.y);
    }
  }
  SnappedAssembly out;
  for (std::size_t pi = 0; pi < raw.pieces.size(); ++pi) {
    std::vector<ExactPoint> ring;
    bool ok = true;
    for (std::size_t vi = 0; vi < raw.pieces[pi].ring.size(); ++vi) {
      const FloatPoint& v = raw.pieces[pi].ring[vi];
      try {
        ring.push_back({snap_scalar(v.x - min_x, tol), snap_scalar(v.y - min_y, tol)});
      } catch (const SnapError&) {
        out.failures.push_back({pi, vi, std::abs(v.x - min_x) > std::abs(v.y - min_y) ? v.x : v.y});
        ok = false;
      }
    }
    out.kinds.push_back(raw.pieces[pi].kind);
    out.polygons.push_back(ok ? ExactPolygon(std::move(ring)) : ExactPolygon());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Filtering

enum class RejectReason { none, incomplete, unsnappable, degenerate, disconnected, holes };

inline std::string_view reject_reason_name(RejectReason r) {
  switch (r) {
    case RejectReason::none: return "accepted";
    case RejectReason::incomplete: return "incomplete";
    case RejectReason::unsnappable: return "unsnappable";
    case RejectReason::degenerate: return "degenerate";
    case RejectReason::disconnected: return "disconnected";
    case RejectReason::holes: return "holes";
  }
  return "unknown";
}

struct FilterResult {
  RejectReason reason = RejectReason::none;
  std::string detail;

  bool accepted() const { return reason == RejectReason::none; }
};

namespace detail {

inline bool complete_inventory(const std::vector<PieceKind>& kinds) {
  if (kinds.size() != 7) return false;
  std::array<bool, 7> seen{};
  for (PieceKind k : kinds) {
    if (seen[index_of(k)]) return false;
    seen[index_of(k)] = true;
  }
  return true;
}

inline std::string failure_list(const std::vector<SnapFailure>& failures) {
  std::string out;
  for (const auto& f : failures) {
    if (!out.empty()) out += ", ";
    out += "piece " + std::to_string(f.piece) + " vertex " + std::to_string(f.vertex);
  }
  return out;
}

inline FilterResult filter_snapped(const SnappedAssembly& s) {
  if (!complete_inventory(s.kinds)) return {RejectReason::incomplete, "expected one piece of each of the 7 kinds"};
  if (!s.failures.empty()) return {RejectReason::unsnappable, failure_list(s.failures)};
  std::vector<Polygon> polys;
  for (const auto& p : s.polygons) {
    if (p.size() < 3 || sign(signed_area2<ExactValue>(p.vertices())) == 0) {
      return {RejectReason::degenerate, "piece with no area"};
    }
    polys.push_back(scalar_polygon(p));
  }
  const UnionInfo info = union_info(polys);
  if (info.components != 1) {
    return {RejectReason::disconnected, std::to_string(info.components) + " components"};
  }
  if (info.holes != 0) return {RejectReason::holes, std::to_string(info.holes) + " holes"};
  return {};
}

}  // namespace detail

/// Accepts iff all 7 kinds are present, every vertex snaps, and the snapped
/// union is one component without holes.
inline FilterResult filter_raw(const RawAssembly& raw, double tol = kDefaultSnapTol) {
  std::vector<PieceKind> kinds;
  for (const auto& p : raw.pieces) kinds.push_back(p.kind);
  if (!detail::complete_inventory(kinds)) return {RejectReason::incomplete, "expected one piece of each of the 7 kinds"};
  return detail::filter_snapped(snap_assembly(raw, tol));
}

// ---------------------------------------------------------------------------
// Normalization

/// Exact motion taking the canonical ring of `kind` onto `placed` (collinear
/// vertices ignored), or nullopt. Unreflected motions and smaller angles first.
inline std::optional<RigidTransform> match_transform(PieceKind kind, const ExactPolygon& placed) {
  const ExactPolygon& canon = piece_spec(kind).canonical;
  const auto ring = detail::clean_ring(placed.vertices());
  if (ring.size() != canon.size()) return std::nullopt;
  const std::size_t n = ring.size();
  for (bool reflect : {false, true}) {
    for (int k = 0; k < 8; ++k) {
      const ExactPolygon image = RigidTransform::compose(k, reflect, ExactPoint{}).apply(canon);
      for (std::size_t s = 0; s < n; ++s) {
        const ExactPoint t = ring[s] - image[0];
        bool match = true;
        for (std::size_t i = 1; i < n && match; ++i) match = image[i] + t == ring[(s + i) % n];
        if (match) return RigidTransform::compose(k, reflect, t);
      }
    }
  }
  return std::nullopt;
}

namespace detail {

inline bool numeric_less(const ExactPoint& a, const ExactPoint& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

}  // namespace detail

/// Outer contour of an interior-disjoint exact assembly, collinear vertices
/// merged, starting at the smallest (x, then y) vertex, counterclockwise.
/// Throws GeometryError when the boundary is not a single simple loop.
inline ExactPolygon extract_outline(const std::vector<ExactPolygon>& pieces) {
  const EdgeArrangement arr = arrange_edges(pieces);
  if (arr.boundary.empty()) throw GeometryError("outline: empty boundary");
  std::map<ExactPoint, std::vector<ExactPoint>, PointLess> next;
  for (const auto& s : arr.boundary) next[s.a].push_back(s.b);
  for (const auto& [from, to] : next) {
    if (to.size() != 1) throw GeometryError("outline: boundary touches itself at a vertex");
  }
  std::vector<ExactPoint> loop;
  ExactPoint cur = arr.boundary.front().a;
  for (std::size_t steps = 0; steps <= arr.boundary.size(); ++steps) {
    loop.push_back(cur);
    auto it = next.find(cur);
    if (it == next.end()) throw GeometryError("outline: open boundary");
    cur = it->second.front();
    if (cur == loop.front()) break;
  }
  if (loop.size() != arr.boundary.size()) throw GeometryError("outline: boundary has more than one loop");
  loop = detail::clean_ring(std::move(loop));
  if (loop.size() < 3) throw GeometryError("outline: degenerate");
  if (sign(signed_area2<ExactValue>(loop)) <= 0) throw GeometryError("outline: boundary is not counterclockwise");
  const auto start = std::min_element(loop.begin(), loop.end(), detail::numeric_less);
  std::rotate(loop.begin(), start, loop.end());
  return ExactPolygon(std::move(loop));
}

inline std::vector<KindPair> extract_adjacency(const std::vector<PieceKind>& kinds,
                                               const std::vector<ExactPolygon>& polys) {
  std::vector<KindPair> out;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (std::size_t j = i + 1; j < polys.size(); ++j) {
      if (shared_boundary(polys[i], polys[j]).positive) out.push_back(ordered_pair(kinds[i], kinds[j]));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Builds a verified instance from exact pieces: canonical placement (min x
/// and min y zero), transforms, outline and adjacency. Throws NormalizeError.
inline TceInstance normalize_exact(const std::vector<PieceKind>& kinds, std::vector<ExactPolygon> polys,
                                   std::string id) {
  if (!detail::complete_inventory(kinds) || polys.size() != kinds.size()) {
    throw NormalizeError("normalize: expected one piece of each of the 7 kinds");
  }
  std::optional<ExactValue> min_x, min_y;
  for (const auto& p : polys) {
    for (const auto& v : p.vertices()) {
      if (!min_x || v.x < *min_x) min_x = v.x;
      if (!min_y || v.y < *min_y) min_y = v.y;
    }
  }
  if (!min_x) throw NormalizeError("normalize: empty assembly");
  const ExactPoint shift{-*min_x, -*min_y};

  std::vector<std::pair<PieceKind, RigidTransform>> placed;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    std::vector<ExactPoint> ring;
    for (const auto& v : polys[i].vertices()) ring.push_back(v + shift);
    auto t = match_transform(kinds[i], ExactPolygon(std::move(ring)));
    if (!t) {
      throw NormalizeError("normalize: " + std::string(kind_name(kinds[i])) +
                           " is not a lattice motion of its canonical shape");
    }
    placed.emplace_back(kinds[i], *t);
  }
  std::sort(placed.begin(), placed.end(),
            [](const auto& a, const auto& b) { return index_of(a.first) < index_of(b.first); });

  TceInstance inst;
  inst.instance_id = std::move(id);
  inst.initial_state = canonical_pieces();
  std::vector<PieceKind> sorted_kinds;
  std::vector<ExactPolygon> exact;
  for (const auto& [kind, t] : placed) {
    inst.final_state.push_back(place_piece(kind, t));
    sorted_kinds.push_back(kind);
    exact.push_back(t.apply(piece_spec(kind).canonical));
  }
  try {
    inst.target_outline = make_outline(scalar_polygon(extract_outline(exact)));
  } catch (const GeometryError& e) {
    throw NormalizeError(std::string("normalize: ") + e.what());
  }
  inst.adjacency_graph = extract_adjacency(sorted_kinds, exact);

  const VerificationRecord rec = evaluate(serialize_tce(inst), inst);
  if (!rec.vpr_pass) {
    std::string why;
    if (rec.tse) why += " tse";
    if (rec.rge) why += " rge";
    if (rec.physics.component_count != 1) why += " components=" + std::to_string(rec.physics.component_count);
    for (const auto& [a, b] : rec.physics.overlap_pairs) {
      why += " overlap(" + std::string(kind_label(a)) + "," + std::string(kind_label(b)) + ")";
    }
    throw NormalizeError("normalize: snapped assembly fails verification:" + why);
  }
  if (polygon_area(exact_polygon(inst.target_outline.vertices).value()) != ExactValue(8)) {
    throw NormalizeError("normalize: outline area is not 8");
  }
  return inst;
}

/// Snap, translate and rebuild a raw assembly as an exact instance.
inline TceInstance normalize(const RawAssembly& raw, double tol = kDefaultSnapTol, std::string id = {}) {
  const SnappedAssembly s = snap_assembly(raw, tol);
  const FilterResult f = detail::filter_snapped(s);
  if (!f.accepted()) {
    throw NormalizeError("normalize: rejected (" + std::string(reject_reason_name(f.reason)) + "): " + f.detail);
  }
  if (id.empty()) id = raw.id;
  return normalize_exact(s.kinds, s.polygons, std::move(id));
}

// ---------------------------------------------------------------------------
// Task 1: outline prediction

struct PoolEntry {
  std::string id;
  Outline outline;
};

struct McItem {
  std::string instance_id;
  std::array<std::string, 4> option_ids;
  std::array<Outline, 4> options;
  char answer = 'A';
  std::uint64_t seed = 0;
};

inline constexpr std::array<char, 4> kChoiceLetters{'A', 'B', 'C', 'D'};

/// Seeded item: the true outline plus three pool outlines that are pairwise
/// and truth-wise non-congruent, shuffled. Throws Error when the pool cannot
/// supply three distractors.
/// `answer_slot`, when set, pins the true outline to that option index.
inline McItem gen_task1(const TceInstance& inst, const std::vector<PoolEntry>& pool, std::uint64_t seed,
                        std::optional<std::size_t> answer_slot = std::nullopt) {
  Rng rng(seed);
  std::vector<std::size_t> order(pool.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<const PoolEntry*> chosen;
  for (std::size_t idx : order) {
    if (chosen.size() == 3) break;
    const PoolEntry& cand = pool[idx];
    if (cand.id == inst.instance_id) continue;
    if (congruent_silhouettes(cand.outline, inst.target_outline)) continue;
    bool distinct = true;
    for (const PoolEntry* c : chosen) distinct = distinct && !congruent_silhouettes(cand.outline, c->outline);
    if (distinct) chosen.push_back(&cand);
  }
  if (chosen.size() < 3) {
    throw Error("gen_task1: pool has fewer than 3 distinct non-congruent outlines for " + inst.instance_id);
  }
  std::vector<std::pair<std::string, const Outline*>> options{{inst.instance_id, &inst.target_outline}};
  for (const PoolEntry* c : chosen) options.emplace_back(c->id, &c->outline);
  rng.shuffle(options);
  if (answer_slot) {
    if (*answer_slot >= 4) throw Error("gen_task1: answer slot out of range");
    const auto truth = std::find_if(options.begin(), options.end(),
                                    [&](const auto& o) { return o.second == &inst.target_outline; });
    std::iter_swap(truth, options.begin() + static_cast<std::ptrdiff_t>(*answer_slot));
  }
  McItem item;
  item.instance_id = inst.instance_id;
  item.seed = seed;
  for (std::size_t i = 0; i < 4; ++i) {
    item.option_ids[i] = options[i].first;
    item.options[i] = *options[i].second;
    if (options[i].second == &inst.target_outline) item.answer = kChoiceLetters[i];
  }
  return item;
}

/// One item per instance. Answer letters are dealt from a seeded shuffle of
/// a round-robin deck, so every letter appears floor(n/4) or ceil(n/4) times.
inline std::vector<McItem> gen_task1_batch(const std::vector<TceInstance>& instances,
                                           const std::vector<PoolEntry>& pool, std::uint64_t seed,
                                           std::size_t threads = default_threads()) {
  std::vector<std::size_t> slots(instances.size());
  for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = i % 4;
  Rng(seed).shuffle(slots);
  std::vector<McItem> items(instances.size());
  parallel_for(
      instances.size(),
      [&](std::size_t i) { items[i] = gen_task1(instances[i], pool, fnv1a64(instances[i].instance_id) ^ seed, slots[i]); },
      threads);
  return items;
}

inline std::string render_svg(const McItem& item, const SvgStyle& style = {}) {
  return render_grid_svg(std::vector<Outline>(item.options.begin(), item.options.end()), {"A", "B", "C", "D"}, style);
}

inline ordered_json mc_sidecar(const McItem& item) {
  ordered_json j;
  j["instance_id"] = item.instance_id;
  j["answer"] = std::string(1, item.answer);
  j["seed"] = item.seed;
  j["options"] = ordered_json::array();
  for (const auto& id : item.option_ids) j["options"].push_back(id);
  return j;
}

inline std::string task1_prompt(const McItem& item) {
  return "The image shows four candidate silhouettes labelled A, B, C and D. Exactly one of them is the outline "
         "formed by the tangram assembly of instance " +
         item.instance_id +
         ". Study the assembly and reply with the letter of the matching silhouette, in the form "
         "\"Answer: X\".\n";
}

// ---------------------------------------------------------------------------
// Task 2: end-to-end construction prompts

enum class PromptVariant { full, visual_centric };

inline std::string_view variant_name(PromptVariant v) {
  return v == PromptVariant::full ? "full" : "visual-centric";
}

inline std::optional<PromptVariant> variant_from_name(std::string_view s) {
  if (s == "full") return PromptVariant::full;
  if (s == "visual-centric" || s == "visual_centric") return PromptVariant::visual_centric;
  return std::nullopt;
}

struct PromptBundle {
  std::string instance_id;
  PromptVariant variant = PromptVariant::full;
  std::string text;
  std::string image_svg;
  std::size_t exemplar_count = 0;
};

inline constexpr std::string_view kTask2Preamble =
    "You are given the seven tangram pieces and a target silhouette. Construct a complete assembly that exactly "
    "fills the silhouette. Every piece must keep its shape (rotations by multiples of 45 degrees, translations "
    "and a reflection of the parallelogram only), pieces must not overlap, and together they must form one "
    "connected shape. Coordinates are exact values such as \\frac{\\sqrt{2}}{2} or 2\\sqrt{2}.\n"
    "Output the complete Tangram Construction Expression (TCE) as one JSON object with the keys instance_id, "
    "target_outline, initial_state, final_state and adjacency_graph. Every final_state piece carries type, "
    "vertices, edges, center and transform_matrix.\n";

inline PromptBundle gen_task2(const TceInstance& inst, PromptVariant variant,
                              const std::vector<TceInstance>& exemplars = {}) {
  PromptBundle b;
  b.instance_id = inst.instance_id;
  b.variant = variant;
  b.exemplar_count = exemplars.size();
  std::string text(kTask2Preamble);
  for (std::size_t i = 0; i < exemplars.size(); ++i) {
    text += "\n### Example " + std::to_string(i + 1) + "\n";
    text += "Solved instance:\n" + serialize_tce(exemplars[i]);
  }
  text += "\n### Query\n";
  text += "instance_id: " + inst.instance_id + "\n";
  if (variant == PromptVariant::full) {
    text += "Target outline (vertices and edge relations):\n" + pretty_json(outline_json(inst.target_outline));
  } else {
    text += "The target outline is shown in the attached image, with its vertex coordinates annotated.\n";
  }
  text += "Initial pieces:\n" + pretty_json(pieces_json(inst.initial_state, false));
  text += "Respond with the TCE JSON for this instance.\n";
  b.text = std::move(text);
  SvgStyle style;
  style.annotate_vertices = variant == PromptVariant::visual_centric;
  b.image_svg = render_svg(inst.target_outline, style);
  return b;
}

}  // namespace tce

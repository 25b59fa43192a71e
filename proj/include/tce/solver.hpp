#pragma once

// Exact tangram solver on the half-square triangle lattice.
//
// A target is lattice-aligned when, relative to its first vertex, every vertex
// has integer coordinates in one of two frames: the axis frame, or the frame
// rotated by 45 degrees. Each local unit square splits into four quarters
// (0 bottom, 1 right, 2 top, 3 left) by its diagonals; an area-8 target covers
// exactly 32 of them and each piece covers a fixed quarter pattern. Search is
// exact cover over those 32 quarters.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tce/error.hpp"
#include "tce/exactnum.hpp"
#include "tce/geom.hpp"
#include "tce/parallel.hpp"
#include "tce/pipeline.hpp"
#include "tce/tangram.hpp"

namespace tce {

enum class Family { axis, diagonal };

/// Half of a local unit square (i, j): the isosceles right triangle whose
/// right angle sits at `corner` (0 bottom-left, 1 bottom-right, 2 top-right,
/// 3 top-left). Covers quarters `corner` and (corner + 3) % 4.
struct TriCell {
  long i = 0;
  long j = 0;
  int corner = 0;

  friend auto operator<=>(const TriCell&, const TriCell&) = default;
};

/// Cells of one lattice frame. `origin` is the world position of local (0, 0).
struct CellSet {
  Family family = Family::axis;
  ExactPoint origin;
  std::vector<TriCell> cells;  // sorted
};

struct Placement {
  PieceKind kind = PieceKind::square;
  int rotation_deg = 0;
  bool reflected = false;
  Point translation;
  std::vector<TriCell> cells;

  RigidTransform transform() const {
    return RigidTransform::compose(rotation_deg / 45, reflected,
                                   ExactPoint{translation.x.exact(), translation.y.exact()});
  }
};

struct SolverConfig {
  std::uint64_t node_budget = 10'000'000;
  double time_budget = 60.0;  // seconds
  bool find_all = false;
  bool deterministic = true;
  std::size_t max_solutions = 100000;
};

enum class SolveStatus { solved, unsat, exhausted };

inline std::string_view solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::solved: return "solved";
    case SolveStatus::unsat: return "unsat";
    case SolveStatus::exhausted: return "exhausted";
  }
  return "unknown";
}

struct SolveResult {
  SolveStatus status = SolveStatus::unsat;
  std::vector<std::vector<PieceState>> solutions;  // final states, kind order
  std::uint64_t nodes = 0;
};

namespace detail {

struct Quarter {
  long i = 0;
  long j = 0;
  int q = 0;

  friend auto operator<=>(const Quarter&, const Quarter&) = default;
};

using IPoint = std::pair<long long, long long>;

/// Interior sample of quarter q, scaled by 4. Never on a lattice line.
inline IPoint quarter_probe(const Quarter& c) {
  static constexpr std::array<std::pair<int, int>, 4> kOffset{{{2, 1}, {3, 2}, {2, 3}, {1, 2}}};
  return {4 * c.i + kOffset[static_cast<std::size_t>(c.q)].first,
          4 * c.j + kOffset[static_cast<std::size_t>(c.q)].second};
}

/// Crossing parity; `ring` is scaled by 4 and `p` is never on an edge.
inline bool inside_scaled(const std::vector<IPoint>& ring, const IPoint& p) {
  bool in = false;
  for (std::size_t k = 0; k < ring.size(); ++k) {
    const IPoint& a = ring[k];
    const IPoint& b = ring[(k + 1) % ring.size()];
    if ((a.second > p.second) != (b.second > p.second)) {
      // x of the crossing > p.x  <=>  (b.x - a.x)(p.y - a.y) / (b.y - a.y) + a.x > p.x
      const long long lhs = (b.first - a.first) * (p.second - a.second);
      const long long rhs = (p.first - a.first) * (b.second - a.second);
      if ((b.second > a.second) ? lhs > rhs : lhs < rhs) in = !in;
    }
  }
  return in;
}

/// Quarters inside an integer polygon (unscaled local coordinates).
inline std::vector<Quarter> quarters_of(const std::vector<IPoint>& ring) {
  long long x0 = ring[0].first, x1 = x0, y0 = ring[0].second, y1 = y0;
  for (const auto& [x, y] : ring) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  std::vector<IPoint> scaled;
  for (const auto& [x, y] : ring) scaled.emplace_back(4 * x, 4 * y);
  std::vector<Quarter> out;
  for (long long i = x0; i < x1; ++i) {
    for (long long j = y0; j < y1; ++j) {
      for (int q = 0; q < 4; ++q) {
        const Quarter c{static_cast<long>(i), static_cast<long>(j), q};
        if (inside_scaled(scaled, quarter_probe(c))) out.push_back(c);
      }
    }
  }
  return out;
}

inline ExactPoint rotate45(const ExactPoint& p) {
  const ExactValue h(Rational(0), Rational(1, 2));
  return {h * (p.x - p.y), h * (p.x + p.y)};
}

inline ExactPoint rotate_minus45(const ExactPoint& p) {
  const ExactValue h(Rational(0), Rational(1, 2));
  return {h * (p.x + p.y), h * (p.y - p.x)};
}

inline ExactPoint to_local_vector(Family f, const ExactPoint& w) { return f == Family::axis ? w : rotate_minus45(w); }
inline ExactPoint to_world_vector(Family f, const ExactPoint& l) { return f == Family::axis ? l : rotate45(l); }

inline std::optional<long long> as_integer(const ExactValue& v) {
  if (!v.is_integer()) return std::nullopt;
  const mpz_class n = v.rat().get_num();
  if (!n.fits_slong_p()) return std::nullopt;
  return n.get_si();
}

inline std::optional<IPoint> as_ipoint(const ExactPoint& p) {
  auto x = as_integer(p.x);
  auto y = as_integer(p.y);
  if (!x || !y) return std::nullopt;
  return IPoint{*x, *y};
}

inline std::vector<TriCell> cells_from_quarters(const std::vector<Quarter>& quarters, bool* ok = nullptr) {
  std::map<std::pair<long, long>, int> per_cell;
  for (const auto& q : quarters) per_cell[{q.i, q.j}] |= 1 << q.q;
  std::vector<TriCell> out;
  bool good = true;
  for (const auto& [ij, bits] : per_cell) {
    if (bits == 0xF) {
      out.push_back({ij.first, ij.second, 1});
      out.push_back({ij.first, ij.second, 3});
      continue;
    }
    bool matched = false;
    for (int c = 0; c < 4 && !matched; ++c) {
      if (bits == ((1 << c) | (1 << ((c + 3) % 4)))) {
        out.push_back({ij.first, ij.second, c});
        matched = true;
      }
    }
    good = good && matched;
  }
  std::sort(out.begin(), out.end());
  if (ok) *ok = good;
  return out;
}

inline std::vector<Quarter> quarters_from_cells(const std::vector<TriCell>& cells) {
  std::set<Quarter> qs;
  for (const auto& c : cells) {
    qs.insert({c.i, c.j, c.corner});
    qs.insert({c.i, c.j, (c.corner + 3) % 4});
  }
  return {qs.begin(), qs.end()};
}

struct Orientation {
  int steps = 0;  // rotation in 45-degree steps
  bool reflected = false;
  std::vector<IPoint> ring;         // local, piece vertex 0 at the origin
  std::vector<Quarter> quarters;    // at zero translation
};

/// Orientations of `kind` whose vertices are integral in frame `f`.
inline const std::vector<Orientation>& orientations(PieceKind kind, Family f) {
  static const auto table = [] {
    std::array<std::array<std::vector<Orientation>, 2>, 7> t;
    for (PieceKind k : kAllKinds) {
      for (Family fam : {Family::axis, Family::diagonal}) {
        auto& list = t[index_of(k)][fam == Family::axis ? 0 : 1];
        for (int steps = 0; steps < 8; ++steps) {
          for (bool refl : {false, true}) {
            if (refl && !piece_spec(k).reflection_allowed) continue;
            const ExactPolygon img = RigidTransform::compose(steps, refl, ExactPoint{}).apply(piece_spec(k).canonical);
            Orientation o{steps, refl, {}, {}};
            bool integral = true;
            for (const auto& v : img.vertices()) {
              auto ip = as_ipoint(to_local_vector(fam, v));
              if (!ip) {
                integral = false;
                break;
              }
              o.ring.push_back(*ip);
            }
            if (!integral) continue;
            o.quarters = quarters_of(o.ring);
            list.push_back(std::move(o));
          }
        }
      }
    }
    return t;
  }();
  return table[index_of(kind)][f == Family::axis ? 0 : 1];
}

struct Region {
  Family family = Family::axis;
  ExactPoint origin;
  std::vector<Quarter> quarters;  // sorted
  std::map<Quarter, int> index;
};

inline Region region_from_quarters(Family f, const ExactPoint& origin, std::vector<Quarter> qs) {
  Region r;
  r.family = f;
  r.origin = origin;
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  r.quarters = std::move(qs);
  for (std::size_t k = 0; k < r.quarters.size(); ++k) r.index[r.quarters[k]] = static_cast<int>(k);
  return r;
}

/// Lattice frame and quarter set of an exact outline, or nullopt when the
/// outline is not lattice-aligned or its area is not 8.
inline std::optional<Region> target_region(const Outline& t) {
  auto exact = exact_polygon(t.vertices);
  if (!exact) throw NotExact("solver requires an exact outline");
  const auto ring = clean_ring(exact->vertices());
  if (ring.size() < 3) return std::nullopt;
  const ExactPolygon poly(ring);
  if (polygon_area(poly) != ExactValue(8)) return std::nullopt;
  for (Family f : {Family::axis, Family::diagonal}) {
    std::vector<IPoint> local;
    bool ok = true;
    for (const auto& v : poly.vertices()) {
      auto ip = as_ipoint(to_local_vector(f, v - poly[0]));
      if (!ip) {
        ok = false;
        break;
      }
      local.push_back(*ip);
    }
    if (!ok) continue;
    for (std::size_t k = 0; k < local.size() && ok; ++k) {
      const auto& a = local[k];
      const auto& b = local[(k + 1) % local.size()];
      const long long dx = b.first - a.first, dy = b.second - a.second;
      ok = dx == 0 || dy == 0 || dx == dy || dx == -dy;
    }
    if (!ok) continue;
    auto qs = quarters_of(local);
    if (qs.size() != 32) return std::nullopt;
    return region_from_quarters(f, poly[0], std::move(qs));
  }
  return std::nullopt;
}

struct RawPlacement {
  IPoint t;
  int steps = 0;
  bool reflected = false;
  std::uint64_t mask = 0;
};

/// All placements of `kind` inside the region; ordered by translation, then
/// rotation, then reflection; placements covering identical quarters keep the
/// first occurrence.
inline std::vector<RawPlacement> raw_placements(PieceKind kind, const Region& r) {
  std::vector<RawPlacement> out;
  if (r.quarters.empty()) return out;
  long rx0 = r.quarters.front().i, rx1 = rx0, ry0 = r.quarters.front().j, ry1 = ry0;
  for (const auto& q : r.quarters) {
    rx0 = std::min(rx0, q.i);
    rx1 = std::max(rx1, q.i);
    ry0 = std::min(ry0, q.j);
    ry1 = std::max(ry1, q.j);
  }
  for (const auto& o : orientations(kind, r.family)) {
    long ox0 = o.quarters.front().i, ox1 = ox0, oy0 = o.quarters.front().j, oy1 = oy0;
    for (const auto& q : o.quarters) {
      ox0 = std::min(ox0, q.i);
      ox1 = std::max(ox1, q.i);
      oy0 = std::min(oy0, q.j);
      oy1 = std::max(oy1, q.j);
    }
    for (long tx = rx0 - ox0; tx <= rx1 - ox1; ++tx) {
      for (long ty = ry0 - oy0; ty <= ry1 - oy1; ++ty) {
        std::uint64_t mask = 0;
        bool fits = true;
        for (const auto& q : o.quarters) {
          auto it = r.index.find(Quarter{q.i + tx, q.j + ty, q.q});
          if (it == r.index.end()) {
            fits = false;
            break;
          }
          mask |= std::uint64_t{1} << it->second;
        }
        if (fits) out.push_back({{tx, ty}, o.steps, o.reflected, mask});
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const RawPlacement& a, const RawPlacement& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.steps != b.steps) return a.steps < b.steps;
    return a.reflected < b.reflected;
  });
  std::set<std::uint64_t> seen;
  std::vector<RawPlacement> unique;
  for (const auto& p : out) {
    if (seen.insert(p.mask).second) unique.push_back(p);
  }
  return unique;
}

inline Placement to_placement(PieceKind kind, const RawPlacement& p, const Region& r) {
  Placement out;
  out.kind = kind;
  out.rotation_deg = 45 * p.steps;
  out.reflected = p.reflected;
  const ExactPoint t = r.origin + to_world_vector(r.family, ExactPoint{ExactValue(static_cast<long>(p.t.first)),
                                                                        ExactValue(static_cast<long>(p.t.second))});
  out.translation = scalar_point(t);
  std::vector<Quarter> qs;
  for (std::size_t k = 0; k < r.quarters.size(); ++k) {
    if (p.mask >> k & 1) qs.push_back(r.quarters[k]);
  }
  out.cells = cells_from_quarters(qs);
  return out;
}

/// Quarters sharing an edge with c: the two in the same square, then the one
/// across the square's side.
inline std::array<Quarter, 3> quarter_neighbours(const Quarter& c) {
  static constexpr std::array<std::array<int, 3>, 4> kAcross{{{0, -1, 2}, {1, 0, 3}, {0, 1, 0}, {-1, 0, 1}}};
  const auto& a = kAcross[static_cast<std::size_t>(c.q)];
  return {Quarter{c.i, c.j, (c.q + 1) % 4}, Quarter{c.i, c.j, (c.q + 3) % 4},
          Quarter{c.i + a[0], c.j + a[1], a[2]}};
}

enum Shape5 { kLT, kMT, kST, kSQ, kPG };

inline constexpr std::array<PieceKind, 5> kShapeKind{PieceKind::large_triangle_1, PieceKind::medium_triangle,
                                                     PieceKind::small_triangle_1, PieceKind::square,
                                                     PieceKind::parallelogram};
inline constexpr std::array<int, 5> kShapeCount{2, 1, 2, 1, 1};
inline constexpr std::array<int, 5> kShapeQuarters{8, 4, 2, 4, 4};

class CoverSearch {
 public:
  CoverSearch(const Region& region, const SolverConfig& cfg) : region_(region), cfg_(cfg) {
    for (int s = 0; s < 5; ++s) {
      for (const auto& p : raw_placements(kShapeKind[static_cast<std::size_t>(s)], region_)) {
        cands_.push_back({p, s});
      }
    }
    const std::size_t n = region_.quarters.size();
    covering_.resize(n);
    for (std::size_t c = 0; c < cands_.size(); ++c) {
      for (std::size_t b = 0; b < n; ++b) {
        if (cands_[c].raw.mask >> b & 1) covering_[b].push_back(c);
      }
    }
    neighbours_.assign(n, 0);
    for (std::size_t b = 0; b < n; ++b) {
      const auto nb = quarter_neighbours(region_.quarters[b]);
      for (std::size_t k = 0; k < 3; ++k) {
        auto it = region_.index.find(nb[k]);
        if (it != region_.index.end()) neighbours_[b] |= std::uint64_t{1} << it->second;
      }
    }
  }

  SolveResult run() {
    start_ = std::chrono::steady_clock::now();
    const std::uint64_t full = region_.quarters.size() == 64 ? ~std::uint64_t{0}
                                                             : (std::uint64_t{1} << region_.quarters.size()) - 1;
    std::array<int, 5> remaining = kShapeCount;
    dfs(full, remaining);
    SolveResult r;
    r.nodes = nodes_;
    for (const auto& chosen : found_) r.solutions.push_back(to_pieces(chosen));
    if (aborted_ && (cfg_.find_all || r.solutions.empty())) {
      r.status = SolveStatus::exhausted;
    } else {
      r.status = r.solutions.empty() ? SolveStatus::unsat : SolveStatus::solved;
    }
    return r;
  }

 private:
  struct Cand {
    RawPlacement raw;
    int shape;
  };

  bool feasible(std::uint64_t uncovered, const std::array<int, 5>& remaining) const {
    std::uint64_t sums = 1;  // bit k set: k quarters achievable
    for (int s = 0; s < 5; ++s) {
      for (int c = 0; c < remaining[static_cast<std::size_t>(s)]; ++c) {
        sums |= sums << kShapeQuarters[static_cast<std::size_t>(s)];
      }
    }
    std::uint64_t left = uncovered;
    while (left) {
      std::uint64_t comp = left & (~left + 1);
      std::uint64_t frontier = comp;
      while (frontier) {
        std::uint64_t grow = 0;
        std::uint64_t f = frontier;
        while (f) {
          const int b = std::countr_zero(f);
          f &= f - 1;
          grow |= neighbours_[static_cast<std::size_t>(b)];
        }
        grow &= uncovered & ~comp;
        comp |= grow;
        frontier = grow;
      }
      left &= ~comp;
      const int size = std::popcount(comp);
      if (size >= 64 || !(sums >> size & 1)) return false;
    }
    return true;
  }

  bool budget_hit() {
    if (aborted_) return true;
    if (nodes_ >= cfg_.node_budget) {
      aborted_ = true;
    } else if ((nodes_ & 1023) == 0) {
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
      if (dt.count() > cfg_.time_budget) aborted_ = true;
    }
    return aborted_;
  }

  /// Returns true to stop the search.
  bool dfs(std::uint64_t uncovered, std::array<int, 5>& remaining) {
    if (uncovered == 0) {
      std::vector<std::size_t> key = path_;
      std::sort(key.begin(), key.end());
      if (seen_.insert(key).second) found_.push_back(path_);
      return !cfg_.find_all || found_.size() >= cfg_.max_solutions;
    }
    ++nodes_;
    if (budget_hit()) return true;
    if (!feasible(uncovered, remaining)) return false;
    int best_bit = -1;
    std::size_t best_count = SIZE_MAX;
    std::uint64_t u = uncovered;
    while (u) {
      const int b = std::countr_zero(u);
      u &= u - 1;
      std::size_t count = 0;
      for (std::size_t c : covering_[static_cast<std::size_t>(b)]) {
        const Cand& cand = cands_[c];
        if (remaining[static_cast<std::size_t>(cand.shape)] > 0 && (cand.raw.mask & ~uncovered) == 0) ++count;
        if (count >= best_count) break;
      }
      if (count < best_count) {
        best_count = count;
        best_bit = b;
        if (count == 0) return false;
      }
    }
    for (std::size_t c : covering_[static_cast<std::size_t>(best_bit)]) {
      const Cand& cand = cands_[c];
      auto& left = remaining[static_cast<std::size_t>(cand.shape)];
      if (left == 0 || (cand.raw.mask & ~uncovered) != 0) continue;
      --left;
      path_.push_back(c);
      const bool stop = dfs(uncovered & ~cand.raw.mask, remaining);
      path_.pop_back();
      ++left;
      if (stop) return true;
    }
    return false;
  }

  std::vector<PieceState> to_pieces(const std::vector<std::size_t>& chosen) const {
    std::vector<std::size_t> order = chosen;
    std::sort(order.begin(), order.end());
    std::array<int, 5> used{};
    std::vector<PieceState> pieces;
    for (std::size_t c : order) {
      const Cand& cand = cands_[c];
      PieceKind kind = kShapeKind[static_cast<std::size_t>(cand.shape)];
      if (used[static_cast<std::size_t>(cand.shape)]++ == 1) {
        kind = cand.shape == kLT ? PieceKind::large_triangle_2 : PieceKind::small_triangle_2;
      }
      pieces.push_back(place_piece(kind, to_placement(kind, cand.raw, region_).transform()));
    }
    std::sort(pieces.begin(), pieces.end(),
              [](const PieceState& a, const PieceState& b) { return index_of(a.kind) < index_of(b.kind); });
    return pieces;
  }

  const Region& region_;
  SolverConfig cfg_;
  std::vector<Cand> cands_;
  std::vector<std::vector<std::size_t>> covering_;
  std::vector<std::uint64_t> neighbours_;
  std::vector<std::size_t> path_;
  std::vector<std::vector<std::size_t>> found_;
  std::set<std::vector<std::size_t>> seen_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

/// The 16 half-square cells covering a lattice-aligned area-8 outline; nullopt
/// when the area is not 8 or the outline is off the lattice. Throws NotExact
/// for approximate outlines.
inline std::optional<CellSet> decompose_target(const Outline& t) {
  auto region = detail::target_region(t);
  if (!region) return std::nullopt;
  bool ok = false;
  auto cells = detail::cells_from_quarters(region->quarters, &ok);
  if (!ok) return std::nullopt;
  return CellSet{region->family, region->origin, std::move(cells)};
}

/// Every placement of `kind` whose cells lie inside `cells`, ordered by
/// translation, then rotation, then reflection. Rotations are 45-degree
/// multiples; only the parallelogram is reflected.
inline std::vector<Placement> enumerate_placements(PieceKind kind, const CellSet& cells) {
  std::vector<Placement> out;
  if (cells.cells.empty()) return out;
  const detail::Region region =
      detail::region_from_quarters(cells.family, cells.origin, detail::quarters_from_cells(cells.cells));
  if (region.quarters.size() > 64) throw Error("enumerate_placements: more than 64 quarters");
  for (const auto& p : detail::raw_placements(kind, region)) out.push_back(detail::to_placement(kind, p, region));
  return out;
}

/// Exact-cover solve. `unsat` means proven impossible on the lattice (area
/// not 8, off-lattice target, or search space exhausted without a solution);
/// `exhausted` means a budget ran out first.
inline SolveResult solve(const Outline& t, const SolverConfig& cfg = {}) {
  auto region = detail::target_region(t);
  if (!region) return {SolveStatus::unsat, {}, 0};
  detail::CoverSearch search(*region, cfg);
  return search.run();
}

/// TCE document for one solution, keeping the target's own coordinates.
inline TceInstance solution_instance(const Outline& target, const std::vector<PieceState>& pieces, std::string id) {
  TceInstance inst;
  inst.instance_id = std::move(id);
  inst.target_outline = target;
  inst.initial_state = canonical_pieces();
  inst.final_state = pieces;
  std::vector<PieceKind> kinds;
  std::vector<ExactPolygon> exact;
  for (const auto& p : pieces) {
    kinds.push_back(p.kind);
    auto e = exact_polygon(p.vertices);
    if (!e) throw NotExact("solution_instance: piece is not exact");
    exact.push_back(std::move(*e));
  }
  inst.adjacency_graph = extract_adjacency(kinds, exact);
  return inst;
}

// ---------------------------------------------------------------------------
// Instance generation

struct GenerateResult {
  std::vector<TceInstance> instances;
  std::vector<std::string> warnings;
};

namespace detail {

inline bool has_hole(const std::set<Quarter>& occupied) {
  long x0 = occupied.begin()->i, x1 = x0, y0 = occupied.begin()->j, y1 = y0;
  for (const auto& q : occupied) {
    x0 = std::min(x0, q.i);
    x1 = std::max(x1, q.i);
    y0 = std::min(y0, q.j);
    y1 = std::max(y1, q.j);
  }
  --x0, --y0, ++x1, ++y1;
  std::set<Quarter> seen;
  std::vector<Quarter> stack{{x0, y0, 0}};
  seen.insert(stack.back());
  while (!stack.empty()) {
    const Quarter c = stack.back();
    stack.pop_back();
    const auto nb = quarter_neighbours(c);
    for (std::size_t k = 0; k < 3; ++k) {
      const Quarter& n = nb[k];
      if (n.i < x0 || n.i > x1 || n.j < y0 || n.j > y1) continue;
      if (occupied.count(n) || seen.count(n)) continue;
      seen.insert(n);
      stack.push_back(n);
    }
  }
  const std::size_t box = static_cast<std::size_t>((x1 - x0 + 1) * (y1 - y0 + 1) * 4);
  return seen.size() + occupied.size() != box;
}

struct Grown {
  Family family;
  std::vector<PieceKind> kinds;
  std::vector<ExactPolygon> polygons;
};

inline std::optional<Grown> grow_assembly(Rng& rng) {
  const Family fam = rng.below(2) == 0 ? Family::axis : Family::diagonal;
  std::vector<PieceKind> order(kAllKinds.begin(), kAllKinds.end());
  rng.shuffle(order);
  std::set<Quarter> occupied;
  Grown g{fam, {}, {}};
  long x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  for (std::size_t n = 0; n < order.size(); ++n) {
    const PieceKind kind = order[n];
    const auto& orients = orientations(kind, fam);
    struct Option {
      const Orientation* o;
      long tx, ty;
    };
    std::vector<Option> options;
    if (n == 0) {
      for (const auto& o : orients) options.push_back({&o, 0, 0});
    } else {
      for (const auto& o : orients) {
        for (long tx = x0 - 4; tx <= x1 + 4; ++tx) {
          for (long ty = y0 - 4; ty <= y1 + 4; ++ty) {
            bool clash = false, touch = false;
            for (const auto& q : o.quarters) {
              const Quarter s{q.i + tx, q.j + ty, q.q};
              if (occupied.count(s)) {
                clash = true;
                break;
              }
              const auto nb = quarter_neighbours(s);
              for (std::size_t k = 0; k < 3 && !touch; ++k) touch = occupied.count(nb[k]) > 0;
            }
            if (!clash && touch) options.push_back({&o, tx, ty});
          }
        }
      }
    }
    if (options.empty()) return std::nullopt;
    const Option& pick = options[static_cast<std::size_t>(rng.below(options.size()))];
    std::vector<ExactPoint> ring;
    for (const auto& [x, y] : pick.o->ring) {
      const ExactPoint local{ExactValue(static_cast<long>(x + pick.tx)), ExactValue(static_cast<long>(y + pick.ty))};
      ring.push_back(to_world_vector(fam, local));
    }
    for (const auto& q : pick.o->quarters) {
      const Quarter s{q.i + pick.tx, q.j + pick.ty, q.q};
      occupied.insert(s);
      if (n == 0 && &q == &pick.o->quarters.front()) {
        x0 = x1 = s.i;
        y0 = y1 = s.j;
      }
      x0 = std::min(x0, s.i);
      x1 = std::max(x1, s.i);
      y0 = std::min(y0, s.j);
      y1 = std::max(y1, s.j);
    }
    g.kinds.push_back(kind);
    g.polygons.emplace_back(std::move(ring));
  }
  if (has_hole(occupied)) return std::nullopt;
  return g;
}

}  // namespace detail

inline std::string generated_id(std::uint64_t seed, std::size_t index) {
  return "gen-" + std::to_string(seed) + "-" + std::to_string(index);
}

/// Seeded corpus of lattice assemblies grown by edge adjacency. Each instance
/// draws from its own generator, so results do not depend on thread count.
inline GenerateResult generate_instances(std::size_t count, std::uint64_t seed, const SolverConfig& cfg = {},
                                         std::size_t threads = default_threads(),
                                         std::size_t attempts_per_instance = 500) {
  std::vector<std::optional<TceInstance>> slots(count);
  const auto start = std::chrono::steady_clock::now();
  parallel_for(
      count,
      [&](std::size_t i) {
        const std::string id = generated_id(seed, i);
        Rng rng(fnv1a64(id) ^ seed);
        for (std::size_t attempt = 0; attempt < attempts_per_instance; ++attempt) {
          const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
          if (dt.count() > cfg.time_budget) return;
          auto grown = detail::grow_assembly(rng);
          if (!grown) continue;
          try {
            slots[i] = normalize_exact(grown->kinds, std::move(grown->polygons), id);
            return;
          } catch (const NormalizeError&) {
          }
        }
      },
      threads);
  GenerateResult out;
  for (std::size_t i = 0; i < count; ++i) {
    if (slots[i]) {
      out.instances.push_back(std::move(*slots[i]));
    } else {
      out.warnings.push_back("no valid assembly for " + generated_id(seed, i) + " within budget");
    }
  }
  return out;
}

}  // namespace tce

#pragma once

// Planar geometry over either number track. Algorithms are templated on the
// coordinate type T, which is ExactValue (exact predicates) or double.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "tce/error.hpp"
#include "tce/exactnum.hpp"

namespace tce {

inline int sign(double d) { return (d > 0) - (d < 0); }

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, ExactValue>;

template <class T>
T abs_value(const T& v) {
  return sign(v) < 0 ? T(-v) : v;
}

/// Geometric coincidence tolerance on the approximate track.
inline constexpr double kCoincidenceTol = 1e-9;

// ---------------------------------------------------------------------------
// Points, segments, polygons

template <class T>
struct BasicPoint {
  T x{};
  T y{};

  friend BasicPoint operator+(const BasicPoint& a, const BasicPoint& b) { return {a.x + b.x, a.y + b.y}; }
  friend BasicPoint operator-(const BasicPoint& a, const BasicPoint& b) { return {a.x - b.x, a.y - b.y}; }
  friend BasicPoint operator*(const T& s, const BasicPoint& a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const BasicPoint& a, const BasicPoint& b) { return a.x == b.x && a.y == b.y; }
};

using Point = BasicPoint<Scalar>;
using ExactPoint = BasicPoint<ExactValue>;
using FloatPoint = BasicPoint<double>;

template <class T>
T cross(const BasicPoint<T>& a, const BasicPoint<T>& b) {
  return a.x * b.y - a.y * b.x;
}
template <class T>
T dot(const BasicPoint<T>& a, const BasicPoint<T>& b) {
  return a.x * b.x + a.y * b.y;
}
/// Twice the signed area of triangle (a, b, c); positive when counterclockwise.
template <class T>
T orient(const BasicPoint<T>& a, const BasicPoint<T>& b, const BasicPoint<T>& c) {
  return cross(BasicPoint<T>(b - a), BasicPoint<T>(c - a));
}

/// Lexicographic order on the representation; a strict weak order usable in maps.
struct PointLess {
  bool operator()(const ExactPoint& a, const ExactPoint& b) const {
    ReprLess less;
    if (less(a.x, b.x)) return true;
    if (less(b.x, a.x)) return false;
    return less(a.y, b.y);
  }
  bool operator()(const FloatPoint& a, const FloatPoint& b) const {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }
};

template <class T>
struct BasicSegment {
  BasicPoint<T> a;
  BasicPoint<T> b;
};

template <class T>
using BasicSegmentSet = std::vector<BasicSegment<T>>;
using SegmentSet = BasicSegmentSet<double>;

template <class T>
T signed_area2(std::span<const BasicPoint<T>> ring) {
  T sum(0);
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const auto& p = ring[i];
    const auto& q = ring[(i + 1) % ring.size()];
    sum += p.x * q.y - q.x * p.y;
  }
  return sum;
}

/// Vertex ring stored counterclockwise with no repeated consecutive vertices.
/// Rings that are degenerate (fewer than three distinct vertices or zero area)
/// are kept as given; measuring them throws.
template <class T>
class BasicPolygon {
 public:
  using point_type = BasicPoint<T>;

  BasicPolygon() = default;
  explicit BasicPolygon(std::vector<point_type> ring) : ring_(std::move(ring)) {
    ring_.erase(std::unique(ring_.begin(), ring_.end()), ring_.end());
    while (ring_.size() > 1 && ring_.front() == ring_.back()) ring_.pop_back();
    if (ring_.size() >= 3 && sign(signed_area2<T>(ring_)) < 0) reverse_keep_first(ring_);
  }

  const std::vector<point_type>& vertices() const noexcept { return ring_; }
  std::size_t size() const noexcept { return ring_.size(); }
  const point_type& operator[](std::size_t i) const { return ring_[i]; }
  const point_type& vertex(std::size_t i) const { return ring_[i % ring_.size()]; }

  friend bool operator==(const BasicPolygon& a, const BasicPolygon& b) { return a.ring_ == b.ring_; }

  /// v0, v(n-1), ..., v1: the same ring walked the other way from the same start.
  static void reverse_keep_first(std::vector<point_type>& ring) {
    if (ring.size() > 2) std::reverse(ring.begin() + 1, ring.end());
  }

 private:
  std::vector<point_type> ring_;
};

using Polygon = BasicPolygon<Scalar>;
using ExactPolygon = BasicPolygon<ExactValue>;
using FloatPolygon = BasicPolygon<double>;

// ---------------------------------------------------------------------------
// Track conversion

inline std::optional<ExactPoint> exact_point(const Point& p) {
  if (!p.x.is_exact() || !p.y.is_exact()) return std::nullopt;
  return ExactPoint{p.x.exact(), p.y.exact()};
}
inline FloatPoint float_point(const Point& p) { return {p.x.to_double(), p.y.to_double()}; }
inline FloatPoint float_point(const ExactPoint& p) { return {p.x.to_double(), p.y.to_double()}; }
inline Point scalar_point(const ExactPoint& p) { return {Scalar(p.x), Scalar(p.y)}; }

inline std::optional<ExactPolygon> exact_polygon(const Polygon& poly) {
  std::vector<ExactPoint> ring;
  ring.reserve(poly.size());
  for (const auto& p : poly.vertices()) {
    auto e = exact_point(p);
    if (!e) return std::nullopt;
    ring.push_back(std::move(*e));
  }
  return ExactPolygon(std::move(ring));
}
inline FloatPolygon float_polygon(const Polygon& poly) {
  std::vector<FloatPoint> ring;
  for (const auto& p : poly.vertices()) ring.push_back(float_point(p));
  return FloatPolygon(std::move(ring));
}
inline FloatPolygon float_polygon(const ExactPolygon& poly) {
  std::vector<FloatPoint> ring;
  for (const auto& p : poly.vertices()) ring.push_back(float_point(p));
  return FloatPolygon(std::move(ring));
}
inline Polygon scalar_polygon(const ExactPolygon& poly) {
  std::vector<Point> ring;
  for (const auto& p : poly.vertices()) ring.push_back(scalar_point(p));
  return Polygon(std::move(ring));
}
inline bool is_exact(const Polygon& poly) {
  return std::all_of(poly.vertices().begin(), poly.vertices().end(),
                     [](const Point& p) { return p.x.is_exact() && p.y.is_exact(); });
}

template <class T>
BasicSegmentSet<T> polygon_boundary(const BasicPolygon<T>& poly) {
  BasicSegmentSet<T> out;
  for (std::size_t i = 0; i < poly.size(); ++i) out.push_back({poly[i], poly.vertex(i + 1)});
  return out;
}

inline SegmentSet to_float(const BasicSegmentSet<ExactValue>& segs) {
  SegmentSet out;
  for (const auto& s : segs) out.push_back({float_point(s.a), float_point(s.b)});
  return out;
}

// ---------------------------------------------------------------------------
// Measures

template <class T>
void require_nondegenerate(const BasicPolygon<T>& p) {
  if (p.size() < 3) throw GeometryError("degenerate polygon: fewer than three vertices");
}

/// Shoelace area, 1/2 |sum (x_k y_k+1 - x_k+1 y_k)|.
template <class T>
T polygon_area(const BasicPolygon<T>& p) {
  require_nondegenerate(p);
  const T a2 = signed_area2<T>(p.vertices());
  return abs_value(a2) / T(2);
}

template <class T>
T squared_length(const BasicPoint<T>& a, const BasicPoint<T>& b) {
  const BasicPoint<T> d = b - a;
  return dot(d, d);
}

/// Edge length; exact when the square root stays in Q(sqrt 2).
inline Scalar edge_length(const ExactPoint& a, const ExactPoint& b) {
  const ExactValue sq = squared_length(a, b);
  if (auto r = exact_sqrt(sq)) return Scalar(*r);
  return Scalar::approx(std::sqrt(sq.to_double()));
}
inline Scalar edge_length(const Point& a, const Point& b) {
  auto ea = exact_point(a);
  auto eb = exact_point(b);
  if (ea && eb) return edge_length(*ea, *eb);
  const FloatPoint fa = float_point(a), fb = float_point(b);
  return Scalar::approx(std::hypot(fb.x - fa.x, fb.y - fa.y));
}

inline Scalar polygon_perimeter(const ExactPolygon& p) {
  require_nondegenerate(p);
  Scalar sum(0);
  for (std::size_t i = 0; i < p.size(); ++i) sum += edge_length(p[i], p.vertex(i + 1));
  return sum;
}
inline double polygon_perimeter(const FloatPolygon& p) {
  require_nondegenerate(p);
  double sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto d = p.vertex(i + 1) - p[i];
    sum += std::hypot(d.x, d.y);
  }
  return sum;
}

inline Scalar polygon_area(const Polygon& p) {
  if (auto e = exact_polygon(p)) return Scalar(polygon_area(*e));
  return Scalar::approx(polygon_area(float_polygon(p)));
}
inline Scalar polygon_perimeter(const Polygon& p) {
  if (auto e = exact_polygon(p)) return polygon_perimeter(*e);
  return Scalar::approx(polygon_perimeter(float_polygon(p)));
}

// ---------------------------------------------------------------------------
// Predicates

enum class Location { inside, boundary, outside };

template <class T>
bool on_segment(const BasicPoint<T>& p, const BasicPoint<T>& a, const BasicPoint<T>& b) {
  if (sign(orient(a, b, p)) != 0) return false;
  return sign(dot(BasicPoint<T>(p - a), BasicPoint<T>(b - a))) >= 0 &&
         sign(dot(BasicPoint<T>(p - b), BasicPoint<T>(a - b))) >= 0;
}

/// Crossing-parity classification; exact when T is exact.
template <class T>
Location point_in_polygon(const BasicPoint<T>& pt, const BasicPolygon<T>& poly) {
  const std::size_t n = poly.size();
  bool inside = false;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = poly[i];
    const auto& b = poly.vertex(i + 1);
    if (on_segment(pt, a, b)) return Location::boundary;
    const bool a_above = sign(a.y - pt.y) > 0;
    const bool b_above = sign(b.y - pt.y) > 0;
    if (a_above == b_above) continue;
    // The edge straddles the horizontal line through pt; count it if it lies to the right.
    const int s = sign(orient(a, b, pt));
    if ((b_above && s > 0) || (!b_above && s < 0)) inside = !inside;
  }
  return inside ? Location::inside : Location::outside;
}

inline Location point_in_polygon(const Point& pt, const Polygon& poly) {
  auto ep = exact_point(pt);
  auto epoly = exact_polygon(poly);
  if (ep && epoly) return point_in_polygon(*ep, *epoly);
  return point_in_polygon(float_point(pt), float_polygon(poly));
}

template <class T>
bool is_convex(const BasicPolygon<T>& p) {
  if (p.size() < 3) return false;
  bool positive = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const int s = sign(orient(p[i], p.vertex(i + 1), p.vertex(i + 2)));
    if (s < 0) return false;
    positive = positive || s > 0;
  }
  return positive;
}

// ---------------------------------------------------------------------------
// Convex clipping and area of intersection

namespace detail {

template <class T>
std::vector<BasicPoint<T>> clean_ring(std::vector<BasicPoint<T>> ring) {
  ring.erase(std::unique(ring.begin(), ring.end()), ring.end());
  while (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();
  // Drop collinear vertices.
  bool changed = true;
  while (changed && ring.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const auto& prev = ring[(i + ring.size() - 1) % ring.size()];
      const auto& next = ring[(i + 1) % ring.size()];
      if (sign(orient(prev, ring[i], next)) == 0) {
        ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return ring;
}

}  // namespace detail

/// Intersection of two convex polygons (Sutherland-Hodgman), or nullopt when
/// they are interior-disjoint.
template <class T>
std::optional<BasicPolygon<T>> convex_clip(const BasicPolygon<T>& a, const BasicPolygon<T>& b) {
  if (!is_convex(a) || !is_convex(b)) throw GeometryError("convex_clip: non-convex input");
  std::vector<BasicPoint<T>> out = a.vertices();
  for (std::size_t i = 0; i < b.size() && !out.empty(); ++i) {
    const auto& e0 = b[i];
    const auto& e1 = b.vertex(i + 1);
    std::vector<BasicPoint<T>> in = std::move(out);
    out.clear();
    for (std::size_t k = 0; k < in.size(); ++k) {
      const auto& p = in[k];
      const auto& q = in[(k + 1) % in.size()];
      const T sp = orient(e0, e1, p);
      const T sq = orient(e0, e1, q);
      const bool p_in = sign(sp) >= 0;
      const bool q_in = sign(sq) >= 0;
      if (p_in) out.push_back(p);
      if (p_in != q_in && sign(sp) != 0 && sign(sq) != 0) {
        const T t = sp / (sp - sq);
        out.push_back(p + t * BasicPoint<T>(q - p));
      }
    }
  }
  out = detail::clean_ring(std::move(out));
  if (out.size() < 3) return std::nullopt;
  BasicPolygon<T> poly(std::move(out));
  const T area2 = signed_area2<T>(poly.vertices());
  if constexpr (is_exact_v<T>) {
    if (sign(area2) <= 0) return std::nullopt;
  } else {
    if (!(area2 > 1e-18)) return std::nullopt;
  }
  return poly;
}

/// Measure of the set of points whose per-group membership satisfies `pred`.
/// Each group is the union of its polygons (even-odd per polygon). Exact when T
/// is exact: within each vertical slab between consecutive event abscissae no
/// two edges cross, so the covered length is linear in x and the midpoint rule
/// integrates it exactly.
template <class T, class Pred>
T region_measure(const std::vector<std::vector<BasicPolygon<T>>>& groups, Pred pred) {
  struct Edge {
    BasicPoint<T> a, b;
    std::size_t group, poly;
  };
  std::vector<Edge> edges;
  std::vector<T> xs;
  std::size_t poly_id = 0;
  std::vector<std::size_t> poly_group;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (const auto& poly : groups[g]) {
      for (std::size_t i = 0; i < poly.size(); ++i) {
        edges.push_back({poly[i], poly.vertex(i + 1), g, poly_id});
        xs.push_back(poly[i].x);
      }
      poly_group.push_back(g);
      ++poly_id;
    }
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const auto r = edges[i].b - edges[i].a;
      const auto s = edges[j].b - edges[j].a;
      const T den = cross(r, s);
      if (sign(den) == 0) continue;
      const auto ca = edges[j].a - edges[i].a;
      const T t = cross(ca, s) / den;
      const T u = cross(ca, r) / den;
      if (sign(t) > 0 && sign(T(1) - t) > 0 && sign(u) > 0 && sign(T(1) - u) > 0) {
        xs.push_back(edges[i].a.x + t * r.x);
      }
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  T total(0);
  std::vector<std::vector<T>> crossings(poly_id);
  std::vector<T> breaks;
  std::vector<char> member(groups.size());
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const T& x0 = xs[k];
    const T& x1 = xs[k + 1];
    const T width = x1 - x0;
    if (sign(width) <= 0) continue;
    const T xm = (x0 + x1) / T(2);
    for (auto& c : crossings) c.clear();
    breaks.clear();
    for (const auto& e : edges) {
      const auto& lo = sign(e.a.x - e.b.x) <= 0 ? e.a : e.b;
      const auto& hi = sign(e.a.x - e.b.x) <= 0 ? e.b : e.a;
      if (sign(lo.x - hi.x) == 0) continue;
      if (sign(lo.x - x0) > 0 || sign(hi.x - x1) < 0) continue;
      const T y = lo.y + (hi.y - lo.y) * (xm - lo.x) / (hi.x - lo.x);
      crossings[e.poly].push_back(y);
      breaks.push_back(y);
    }
    for (auto& c : crossings) std::sort(c.begin(), c.end());
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    T covered(0);
    for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
      const T ym = (breaks[b] + breaks[b + 1]) / T(2);
      std::fill(member.begin(), member.end(), 0);
      for (std::size_t p = 0; p < crossings.size(); ++p) {
        const auto& c = crossings[p];
        const auto below = std::lower_bound(c.begin(), c.end(), ym) - c.begin();
        if (below % 2 == 1) member[poly_group[p]] = 1;
      }
      if (pred(std::span<const char>(member))) covered += breaks[b + 1] - breaks[b];
    }
    total += width * covered;
  }
  return total;
}

/// Area of a intersect b; simple non-convex inputs are allowed.
template <class T>
T intersection_area(const BasicPolygon<T>& a, const BasicPolygon<T>& b) {
  require_nondegenerate(a);
  require_nondegenerate(b);
  if (is_convex(a) && is_convex(b)) {
    auto c = convex_clip(a, b);
    return c ? polygon_area(*c) : T(0);
  }
  const std::vector<std::vector<BasicPolygon<T>>> groups{std::vector<BasicPolygon<T>>{a},
                                                          std::vector<BasicPolygon<T>>{b}};
  return region_measure<T>(groups, [](std::span<const char> m) { return m[0] && m[1]; });
}

inline Scalar intersection_area(const Polygon& a, const Polygon& b) {
  auto ea = exact_polygon(a);
  auto eb = exact_polygon(b);
  if (ea && eb) return Scalar(intersection_area(*ea, *eb));
  return Scalar::approx(intersection_area(float_polygon(a), float_polygon(b)));
}

/// Area of the union of possibly overlapping polygons.
template <class T>
T union_area(const std::vector<BasicPolygon<T>>& polys) {
  const std::vector<std::vector<BasicPolygon<T>>> groups{polys};
  return region_measure<T>(groups, [](std::span<const char> m) { return m[0] != 0; });
}

// ---------------------------------------------------------------------------
// Shared boundary between polygons

struct SharedBoundary {
  bool positive = false;
  double length = 0;
};

/// Collinear overlap between two segments. Exact track: positive iff the
/// overlap has nonzero length. Approximate track: segments within `tol` of
/// each other's line and overlapping by more than `tol`.
template <class T>
SharedBoundary segment_overlap(const BasicSegment<T>& e, const BasicSegment<T>& f, double tol) {
  const BasicPoint<T> d = e.b - e.a;
  const T len2 = dot(d, d);
  if (sign(len2) == 0) return {};
  if constexpr (is_exact_v<T>) {
    if (sign(orient(e.a, e.b, f.a)) != 0 || sign(orient(e.a, e.b, f.b)) != 0) return {};
    const T t0 = dot(BasicPoint<T>(f.a - e.a), d);
    const T t1 = dot(BasicPoint<T>(f.b - e.a), d);
    const T lo = std::max(T(0), std::min(t0, t1));
    const T hi = std::min(len2, std::max(t0, t1));
    if (sign(hi - lo) <= 0) return {};
    return {true, (hi - lo).to_double() / std::sqrt(len2.to_double())};
  } else {
    const double len = std::sqrt(len2);
    if (std::abs(orient(e.a, e.b, f.a)) / len > tol || std::abs(orient(e.a, e.b, f.b)) / len > tol) return {};
    const double t0 = dot(BasicPoint<T>(f.a - e.a), d) / len;
    const double t1 = dot(BasicPoint<T>(f.b - e.a), d) / len;
    const double lo = std::max(0.0, std::min(t0, t1));
    const double hi = std::min(len, std::max(t0, t1));
    const double overlap = hi - lo;
    return {overlap > tol, std::max(0.0, overlap)};
  }
}

template <class T>
SharedBoundary shared_boundary(const BasicPolygon<T>& a, const BasicPolygon<T>& b, double tol = 0) {
  SharedBoundary out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const BasicSegment<T> e{a[i], a.vertex(i + 1)};
    for (std::size_t j = 0; j < b.size(); ++j) {
      const auto s = segment_overlap(e, BasicSegment<T>{b[j], b.vertex(j + 1)}, tol);
      if (s.positive) {
        out.positive = true;
        out.length += s.length;
      }
    }
  }
  return out;
}

namespace detail {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::size_t count() {
    std::size_t c = 0;
    for (std::size_t i = 0; i < parent.size(); ++i) c += find(i) == i;
    return c;
  }
  std::vector<std::size_t> parent;
};

}  // namespace detail

/// Number of components of the graph joining polygons whose shared boundary
/// has positive length.
template <class T>
std::size_t adjacency_components(const std::vector<BasicPolygon<T>>& polys, double tol = 0) {
  detail::DisjointSets sets(polys.size());
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (std::size_t j = i + 1; j < polys.size(); ++j) {
      if (shared_boundary(polys[i], polys[j], tol).positive) sets.unite(i, j);
    }
  }
  return sets.count();
}

// ---------------------------------------------------------------------------
// Union boundary and topology

struct UnionInfo {
  Scalar area;
  std::size_t components = 0;
  BasicSegmentSet<double> boundary;
  std::size_t holes = 0;
  /// Exact boundary fragments, present when the exact path ran.
  std::optional<BasicSegmentSet<ExactValue>> exact_boundary;
};

/// Boundary of a snapped exact assembly by edge cancellation. Every edge is
/// split at every vertex lying on it; coincident fragments with opposite
/// direction cancel. Survivors keep the counterclockwise orientation of the
/// region (holes run clockwise).
struct EdgeArrangement {
  BasicSegmentSet<ExactValue> boundary;
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  /// Pieces that touch in at least one point, as connected components.
  std::size_t touching_components = 0;
};

inline EdgeArrangement arrange_edges(const std::vector<ExactPolygon>& polys) {
  using Key = std::pair<ExactPoint, ExactPoint>;
  struct KeyLess {
    bool operator()(const Key& a, const Key& b) const {
      PointLess less;
      if (less(a.first, b.first)) return true;
      if (less(b.first, a.first)) return false;
      return less(a.second, b.second);
    }
  };
  std::vector<ExactPoint> all_vertices;
  for (const auto& p : polys) all_vertices.insert(all_vertices.end(), p.vertices().begin(), p.vertices().end());

  std::map<Key, int, KeyLess> directed;       // net directed multiplicity
  std::set<Key, KeyLess> undirected;          // distinct fragments
  std::map<ExactPoint, std::vector<std::size_t>, PointLess> owners;
  for (std::size_t pi = 0; pi < polys.size(); ++pi) {
    const auto& poly = polys[pi];
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const ExactPoint& a = poly[i];
      const ExactPoint& b = poly.vertex(i + 1);
      const ExactPoint d = b - a;
      std::vector<std::pair<ExactValue, ExactPoint>> cuts;
      for (const auto& v : all_vertices) {
        if (v == a || v == b) continue;
        if (sign(orient(a, b, v)) != 0) continue;
        const ExactValue t = dot(ExactPoint(v - a), d);
        if (sign(t) > 0 && sign(dot(ExactPoint(v - b), ExactPoint(a - b))) > 0) cuts.emplace_back(t, v);
      }
      std::sort(cuts.begin(), cuts.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      std::vector<ExactPoint> chain{a};
      for (auto& c : cuts) {
        if (!(chain.back() == c.second)) chain.push_back(c.second);
      }
      chain.push_back(b);
      for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        const ExactPoint& p = chain[k];
        const ExactPoint& q = chain[k + 1];
        owners[p].push_back(pi);
        const Key reverse{q, p};
        auto it = directed.find(reverse);
        if (it != directed.end() && it->second > 0) {
          if (--it->second == 0) directed.erase(it);
        } else {
          ++directed[Key{p, q}];
        }
        undirected.insert(PointLess{}(p, q) ? Key{p, q} : Key{q, p});
      }
    }
  }
  EdgeArrangement out;
  for (const auto& [key, count] : directed) {
    for (int c = 0; c < count; ++c) out.boundary.push_back({key.first, key.second});
  }
  out.vertex_count = owners.size();
  out.edge_count = undirected.size();
  detail::DisjointSets touching(polys.size());
  for (const auto& [pt, list] : owners) {
    for (std::size_t k = 1; k < list.size(); ++k) touching.unite(list[0], list[k]);
  }
  out.touching_components = touching.count();
  return out;
}

namespace detail {

inline bool inside_any(const FloatPoint& p, const std::vector<FloatPolygon>& polys) {
  for (const auto& poly : polys) {
    if (poly.size() >= 3 && point_in_polygon(p, poly) != Location::outside) return true;
  }
  return false;
}

}  // namespace detail

/// Boundary of the union of arbitrary float polygons. Every edge is split at
/// vertices within kCoincidenceTol and at proper crossings; a fragment is kept
/// when the points `probe` to its left and right differ in coverage, so seams
/// narrower than `probe` close up.
inline SegmentSet union_boundary(const std::vector<FloatPolygon>& polys, double probe = 1e-6) {
  struct Edge {
    FloatPoint a, b;
  };
  std::vector<Edge> edges;
  std::vector<FloatPoint> verts;
  for (const auto& poly : polys) {
    if (poly.size() < 2) continue;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      edges.push_back({poly[i], poly.vertex(i + 1)});
      verts.push_back(poly[i]);
    }
  }
  SegmentSet out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    const FloatPoint d = e.b - e.a;
    const double len = std::hypot(d.x, d.y);
    if (len <= kCoincidenceTol) continue;
    std::vector<double> ts{0.0, 1.0};
    for (const auto& v : verts) {
      const double dist = std::abs(orient(e.a, e.b, v)) / len;
      if (dist > kCoincidenceTol) continue;
      const double t = dot(FloatPoint(v - e.a), d) / (len * len);
      if (t > 0 && t < 1) ts.push_back(t);
    }
    for (std::size_t j = 0; j < edges.size(); ++j) {
      if (j == i) continue;
      const FloatPoint s = edges[j].b - edges[j].a;
      const double den = cross(d, s);
      if (std::abs(den) <= 1e-15 * len * std::hypot(s.x, s.y)) continue;
      const FloatPoint ca = edges[j].a - e.a;
      const double t = cross(ca, s) / den;
      const double u = cross(ca, d) / den;
      if (t > 0 && t < 1 && u >= 0 && u <= 1) ts.push_back(t);
    }
    std::sort(ts.begin(), ts.end());
    const FloatPoint normal{-d.y / len, d.x / len};
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
      if ((ts[k + 1] - ts[k]) * len <= 1e-12) continue;
      const FloatPoint p = e.a + ts[k] * d;
      const FloatPoint q = e.a + ts[k + 1] * d;
      const FloatPoint m = 0.5 * FloatPoint(p + q);
      const bool left = detail::inside_any(m + probe * normal, polys);
      const bool right = detail::inside_any(m - probe * normal, polys);
      if (left != right) out.push_back({p, q});
    }
  }
  return out;
}

/// Area, connectivity, boundary and hole count of an assembly. Exact,
/// interior-disjoint inputs use edge cancellation and the Euler characteristic
/// (holes = touching components - (V - E + F)); anything else runs on floats.
inline UnionInfo union_info(const std::vector<Polygon>& pieces) {
  if (pieces.empty()) throw GeometryError("union_info: empty piece list");
  std::vector<ExactPolygon> exact;
  for (const auto& p : pieces) {
    auto e = exact_polygon(p);
    if (!e) break;
    require_nondegenerate(*e);
    exact.push_back(std::move(*e));
  }
  UnionInfo info;
  if (exact.size() == pieces.size()) {
    ExactValue area(0);
    for (std::size_t i = 0; i < exact.size(); ++i) {
      area += polygon_area(exact[i]);
      for (std::size_t j = i + 1; j < exact.size(); ++j) area -= intersection_area(exact[i], exact[j]);
    }
    const EdgeArrangement arr = arrange_edges(exact);
    const long euler = static_cast<long>(arr.vertex_count) - static_cast<long>(arr.edge_count) +
                       static_cast<long>(exact.size());
    info.area = Scalar(area);
    info.components = adjacency_components(exact);
    info.holes = static_cast<std::size_t>(std::max(0L, static_cast<long>(arr.touching_components) - euler));
    info.boundary = to_float(arr.boundary);
    info.exact_boundary = arr.boundary;
    return info;
  }
  std::vector<FloatPolygon> floats;
  for (const auto& p : pieces) {
    floats.push_back(float_polygon(p));
    require_nondegenerate(floats.back());
  }
  info.area = Scalar::approx(union_area(floats));
  info.components = adjacency_components(floats, 1e-6);
  info.boundary = union_boundary(floats);
  // Loops of the boundary graph, endpoints merged on a 1e-7 grid.
  std::map<std::pair<long long, long long>, std::size_t> ids;
  auto id_of = [&](const FloatPoint& p) {
    const auto key = std::make_pair(std::llround(p.x * 1e7), std::llround(p.y * 1e7));
    return ids.try_emplace(key, ids.size()).first->second;
  };
  std::vector<std::pair<std::size_t, std::size_t>> links;
  for (const auto& s : info.boundary) links.emplace_back(id_of(s.a), id_of(s.b));
  detail::DisjointSets loops(ids.size());
  for (const auto& [a, b] : links) loops.unite(a, b);
  const std::size_t loop_count = loops.count();
  info.holes = loop_count > info.components ? loop_count - info.components : 0;
  return info;
}

// ---------------------------------------------------------------------------
// Shape-similarity metrics (always binary64)

/// mu(U n T) / mu(U u T); zero when the union has no area.
inline double iou(const std::vector<FloatPolygon>& u, const FloatPolygon& t) {
  if (u.empty()) throw GeometryError("iou: empty assembly");
  std::vector<std::vector<FloatPolygon>> groups{u, {t}};
  const double inter = region_measure<double>(groups, [](std::span<const char> m) { return m[0] && m[1]; });
  const double uni = region_measure<double>(groups, [](std::span<const char> m) { return m[0] || m[1]; });
  if (!(uni > 0)) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

inline double point_segment_distance(const FloatPoint& p, const BasicSegment<double>& s) {
  const FloatPoint d = s.b - s.a;
  const double len2 = dot(d, d);
  double t = len2 > 0 ? dot(FloatPoint(p - s.a), d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const FloatPoint c = s.a + t * d;
  return std::hypot(p.x - c.x, p.y - c.y);
}

/// sup over sampled points of `from` of the distance to `to`. Samples are at
/// most `resolution` apart along each segment.
inline double directed_hausdorff(const SegmentSet& from, const SegmentSet& to, double resolution) {
  double worst = 0;
  for (const auto& s : from) {
    const FloatPoint d = s.b - s.a;
    const double len = std::hypot(d.x, d.y);
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(len / resolution)));
    for (std::size_t k = 0; k <= steps; ++k) {
      const FloatPoint p = s.a + (static_cast<double>(k) / static_cast<double>(steps)) * d;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& t : to) {
        best = std::min(best, point_segment_distance(p, t));
        if (best <= worst) break;
      }
      worst = std::max(worst, best);
    }
  }
  return worst;
}

/// Symmetric Hausdorff distance between two boundaries; underestimates the
/// true value by at most resolution / 2.
inline double hausdorff(const SegmentSet& a, const SegmentSet& b, double resolution = 0.01) {
  if (a.empty() || b.empty()) throw GeometryError("hausdorff: empty segment set");
  if (!(resolution > 0)) throw GeometryError("hausdorff: resolution must be positive");
  return std::max(directed_hausdorff(a, b, resolution), directed_hausdorff(b, a, resolution));
}

// ---------------------------------------------------------------------------
// Rigid transforms

/// cos and sin of k * 45 degrees.
inline std::pair<ExactValue, ExactValue> lattice_rotation(int k) {
  const ExactValue h(Rational(0), Rational(1, 2));
  static const std::array<std::pair<int, int>, 8> kUnit{
      {{2, 0}, {1, 1}, {0, 2}, {-1, 1}, {-2, 0}, {-1, -1}, {0, -2}, {1, -1}}};
  const auto& [c, s] = kUnit[static_cast<std::size_t>(((k % 8) + 8) % 8)];
  auto value = [&](int u) -> ExactValue {
    if (u == 2) return ExactValue(1);
    if (u == -2) return ExactValue(-1);
    if (u == 0) return ExactValue(0);
    return u > 0 ? h : -h;
  };
  return {value(c), value(s)};
}

struct RigidDecomposition {
  int angle_deg = 0;  // multiple of 45 in [0, 360)
  bool reflected = false;
  Point translation;
};

/// 3x3 homogeneous rigid motion, row-major. The linear part is R(angle) * F
/// where F = diag(-1, 1) when reflected.
class RigidTransform {
 public:
  using Matrix = std::array<std::array<Scalar, 3>, 3>;

  RigidTransform() : m_{{{Scalar(1), Scalar(0), Scalar(0)}, {Scalar(0), Scalar(1), Scalar(0)},
                         {Scalar(0), Scalar(0), Scalar(1)}}} {}

  /// Validates the last row and orthogonality; throws GeometryError otherwise.
  explicit RigidTransform(Matrix m) : m_(std::move(m)) {
    if (!is_rigid(m_)) throw GeometryError("matrix is not a rigid motion");
  }

  static RigidTransform compose(int angle_steps, bool reflected, const ExactPoint& t) {
    const auto [c, s] = lattice_rotation(angle_steps);
    const ExactValue f = reflected ? ExactValue(-1) : ExactValue(1);
    RigidTransform out;
    out.m_ = {{{Scalar(c * f), Scalar(-s), Scalar(t.x)},
               {Scalar(s * f), Scalar(c), Scalar(t.y)},
               {Scalar(0), Scalar(0), Scalar(1)}}};
    return out;
  }

  const Matrix& matrix() const noexcept { return m_; }
  const Scalar& at(std::size_t r, std::size_t c) const { return m_[r][c]; }

  bool is_exact() const {
    for (const auto& row : m_) {
      for (const auto& v : row) {
        if (!v.is_exact()) return false;
      }
    }
    return true;
  }

  int determinant_sign() const { return (m_[0][0] * m_[1][1] - m_[0][1] * m_[1][0]).sign(); }

  Point apply(const Point& p) const {
    return {m_[0][0] * p.x + m_[0][1] * p.y + m_[0][2], m_[1][0] * p.x + m_[1][1] * p.y + m_[1][2]};
  }
  ExactPoint apply(const ExactPoint& p) const {
    const auto e = [&](std::size_t r, std::size_t c) -> const ExactValue& { return m_[r][c].exact(); };
    return {e(0, 0) * p.x + e(0, 1) * p.y + e(0, 2), e(1, 0) * p.x + e(1, 1) * p.y + e(1, 2)};
  }

  /// Image of a polygon. The image ring is re-walked counterclockwise from the
  /// image of vertex 0 when the motion reflects.
  template <class T>
  BasicPolygon<T> apply(const BasicPolygon<T>& poly) const {
    std::vector<BasicPoint<T>> ring;
    ring.reserve(poly.size());
    for (const auto& p : poly.vertices()) ring.push_back(apply(p));
    if (determinant_sign() < 0) BasicPolygon<T>::reverse_keep_first(ring);
    return BasicPolygon<T>(std::move(ring));
  }

  /// Angle (multiple of 45), reflection flag and translation. Throws
  /// NonCanonicalAngle when the rotation is off the 45-degree lattice.
  RigidDecomposition decompose() const {
    RigidDecomposition out;
    out.reflected = determinant_sign() < 0;
    // R = L * F^-1: flip the sign of the first column when reflected.
    const Scalar c = out.reflected ? -m_[0][0] : m_[0][0];
    const Scalar s = out.reflected ? -m_[1][0] : m_[1][0];
    bool found = false;
    for (int k = 0; k < 8 && !found; ++k) {
      const auto [ck, sk] = lattice_rotation(k);
      bool match;
      if (c.is_exact() && s.is_exact()) {
        match = c.exact() == ck && s.exact() == sk;
      } else {
        match = std::abs(c.to_double() - ck.to_double()) <= kCoincidenceTol &&
                std::abs(s.to_double() - sk.to_double()) <= kCoincidenceTol;
      }
      if (match) {
        out.angle_deg = 45 * k;
        found = true;
      }
    }
    if (!found) throw NonCanonicalAngle("rotation is not a multiple of 45 degrees");
    out.translation = {m_[0][2], m_[1][2]};
    return out;
  }

  friend bool operator==(const RigidTransform& a, const RigidTransform& b) { return a.m_ == b.m_; }

  static bool is_rigid(const Matrix& m) {
    auto near = [](const Scalar& v, int target) {
      if (v.is_exact()) return v.exact() == ExactValue(target);
      return std::abs(v.to_double() - target) <= kCoincidenceTol;
    };
    if (!near(m[2][0], 0) || !near(m[2][1], 0) || !near(m[2][2], 1)) return false;
    const Scalar a = m[0][0], b = m[0][1], c = m[1][0], d = m[1][1];
    return near(a * a + c * c, 1) && near(b * b + d * d, 1) && near(a * b + c * d, 0);
  }

 private:
  Matrix m_;
};

}  // namespace tce

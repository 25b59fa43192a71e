#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tce/tce.hpp"

namespace tce::test {

inline ExactValue q(long num, long den = 1) { return ExactValue::fraction(num, den); }
inline ExactValue r2(long num, long den = 1) { return ExactValue(Rational(0), detail::make_rational(num, den)); }
inline ExactValue val(long a, long b, long d = 1) {
  return ExactValue(detail::make_rational(a, d), detail::make_rational(b, d));
}

inline ExactPolygon epoly(std::vector<ExactPoint> pts) { return ExactPolygon(std::move(pts)); }

inline FloatPolygon fpoly(std::vector<FloatPoint> pts) { return FloatPolygon(std::move(pts)); }

inline FloatPolygon fsquare(double x0, double y0, double side) {
  return fpoly({{x0, y0}, {x0 + side, y0}, {x0 + side, y0 + side}, {x0, y0 + side}});
}

struct Assembly {
  std::vector<PieceKind> kinds;
  std::vector<ExactPolygon> polys;
};

/// The classic seven-piece square of side 2 sqrt 2, laid out by hand.
inline Assembly square_assembly() {
  const ExactValue h = r2(1), s = r2(2), h2 = r2(1, 2), h32 = r2(3, 2);
  Assembly a;
  auto add = [&](PieceKind k, std::vector<ExactPoint> pts) {
    a.kinds.push_back(k);
    a.polys.push_back(epoly(std::move(pts)));
  };
  add(PieceKind::large_triangle_1, {{q(0), q(0)}, {s, q(0)}, {h, h}});
  add(PieceKind::large_triangle_2, {{q(0), q(0)}, {h, h}, {q(0), s}});
  add(PieceKind::medium_triangle, {{s, s}, {h, s}, {s, h}});
  add(PieceKind::small_triangle_1, {{s, q(0)}, {s, h}, {h32, h2}});
  add(PieceKind::small_triangle_2, {{h, h}, {h32, h32}, {h2, h32}});
  add(PieceKind::square, {{h, h}, {h32, h2}, {s, h}, {h32, h32}});
  add(PieceKind::parallelogram, {{h2, h32}, {h32, h32}, {h, s}, {q(0), s}});
  return a;
}

/// Seven pieces, edge-connected and non-overlapping, enclosing the
/// triangular gap (2,1),(3,1),(3,2).
inline Assembly holey_assembly() {
  Assembly a;
  auto add = [&](PieceKind k, std::vector<std::pair<int, int>> pts) {
    std::vector<ExactPoint> ring;
    for (auto [x, y] : pts) ring.push_back({q(x), q(y)});
    a.kinds.push_back(k);
    a.polys.push_back(epoly(std::move(ring)));
  };
  add(PieceKind::large_triangle_1, {{0, 0}, {2, 0}, {0, 2}});
  add(PieceKind::large_triangle_2, {{2, 0}, {4, 0}, {4, 2}});
  add(PieceKind::medium_triangle, {{1, 1}, {2, 0}, {3, 1}});
  add(PieceKind::small_triangle_1, {{0, 2}, {1, 1}, {1, 2}});
  add(PieceKind::small_triangle_2, {{3, 1}, {4, 2}, {3, 2}});
  add(PieceKind::square, {{2, 2}, {3, 2}, {3, 3}, {2, 3}});
  add(PieceKind::parallelogram, {{1, 1}, {2, 1}, {3, 2}, {2, 2}});
  return a;
}

inline std::vector<Polygon> scalar_polys(const Assembly& a) {
  std::vector<Polygon> out;
  for (const auto& p : a.polys) out.push_back(scalar_polygon(p));
  return out;
}

inline std::vector<FloatPolygon> float_polys(const Assembly& a) {
  std::vector<FloatPolygon> out;
  for (const auto& p : a.polys) out.push_back(float_polygon(p));
  return out;
}

inline RawAssembly to_raw(const Assembly& a, std::string id = {}) {
  RawAssembly raw;
  raw.id = std::move(id);
  for (std::size_t i = 0; i < a.polys.size(); ++i) {
    RawPiece p;
    p.kind = a.kinds[i];
    for (const auto& v : a.polys[i].vertices()) p.ring.push_back({v.x.to_double(), v.y.to_double()});
    raw.pieces.push_back(std::move(p));
  }
  return raw;
}

inline TceInstance square_instance(std::string id = "square") {
  const Assembly a = square_assembly();
  return normalize_exact(a.kinds, a.polys, std::move(id));
}

inline Outline outline_of(std::vector<std::pair<ExactValue, ExactValue>> pts) {
  std::vector<Point> ring;
  for (auto& [x, y] : pts) ring.push_back({Scalar(x), Scalar(y)});
  return make_outline(Polygon(std::move(ring)));
}

inline Outline big_square_outline() {
  const ExactValue s = r2(2);
  return outline_of({{q(0), q(0)}, {s, q(0)}, {s, s}, {q(0), s}});
}

inline Outline rectangle_outline(long w, long h) {
  return outline_of({{q(0), q(0)}, {q(w), q(0)}, {q(w), q(h)}, {q(0), q(h)}});
}

// ---------------------------------------------------------------------------
// Mutants of a verified instance, as submission text.

inline ExactPolygon exact_piece(const PieceState& p) { return exact_polygon(p.vertices).value(); }

inline ExactPoint exact_centroid(const ExactPolygon& p) {
  ExactPoint c{q(0), q(0)};
  for (const auto& v : p.vertices()) c = c + v;
  const ExactValue n = q(static_cast<long>(p.size()));
  return {c.x / n, c.y / n};
}

inline std::string with_final_state(TceInstance inst, std::vector<PieceState> pieces) {
  inst.final_state = std::move(pieces);
  return serialize_tce(inst);
}

inline std::string mutate_delete(const TceInstance& inst, std::size_t idx) {
  auto pieces = inst.final_state;
  pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(idx));
  return with_final_state(inst, std::move(pieces));
}

/// Piece `idx` scaled by num/den about its vertex centroid.
inline std::string mutate_scale(const TceInstance& inst, std::size_t idx, long num = 11, long den = 10) {
  auto pieces = inst.final_state;
  const ExactPolygon poly = exact_piece(pieces[idx]);
  const ExactPoint c = exact_centroid(poly);
  std::vector<ExactPoint> ring;
  for (const auto& v : poly.vertices()) ring.push_back(c + q(num, den) * (v - c));
  pieces[idx] = make_piece(pieces[idx].kind, scalar_polygon(ExactPolygon(std::move(ring))));
  return with_final_state(inst, std::move(pieces));
}

inline std::vector<PieceState> translated(const std::vector<PieceState>& pieces, std::size_t idx,
                                          const ExactPoint& d) {
  auto out = pieces;
  const ExactPolygon poly = exact_piece(out[idx]);
  std::vector<ExactPoint> ring;
  for (const auto& v : poly.vertices()) ring.push_back(v + d);
  out[idx] = make_piece(out[idx].kind, scalar_polygon(ExactPolygon(std::move(ring))));
  return out;
}

/// Piece `idx` moved so its centroid lands on the centroid of piece `onto`.
/// Returns the pieces and the exact area of the new overlap.
inline std::pair<std::vector<PieceState>, ExactValue> overlap_pieces(const TceInstance& inst, std::size_t idx,
                                                                     std::size_t onto) {
  const ExactPolygon a = exact_piece(inst.final_state[idx]);
  const ExactPolygon b = exact_piece(inst.final_state[onto]);
  auto pieces = translated(inst.final_state, idx, exact_centroid(b) - exact_centroid(a));
  return {pieces, intersection_area(exact_piece(pieces[idx]), b)};
}

inline std::string mutate_far(const TceInstance& inst, std::size_t idx, long dx = 10) {
  return with_final_state(inst, translated(inst.final_state, idx, {q(dx), q(0)}));
}

}  // namespace tce::test

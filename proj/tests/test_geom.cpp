#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace tce;
using namespace tce::test;

namespace {

ExactPolygon unit_square() { return epoly({{q(0), q(0)}, {q(1), q(0)}, {q(1), q(1)}, {q(0), q(1)}}); }

ExactPolygon exact_square(long x0, long y0, long side) {
  return epoly({{q(x0), q(y0)}, {q(x0 + side), q(y0)}, {q(x0 + side), q(y0 + side)}, {q(x0), q(y0 + side)}});
}

ExactPolygon canonical_pg() {
  return epoly({{q(0), q(0)}, {r2(1), q(0)}, {r2(3, 2), r2(1, 2)}, {r2(1, 2), r2(1, 2)}});
}

/// Dense-sampling directed distance, independent of the library's
/// subdivision scheme.
double sampled_directed(const SegmentSet& from, const SegmentSet& to, int samples) {
  double worst = 0;
  for (const auto& s : from) {
    for (int i = 0; i <= samples; ++i) {
      const double t = static_cast<double>(i) / samples;
      const FloatPoint p{s.a.x + t * (s.b.x - s.a.x), s.a.y + t * (s.b.y - s.a.y)};
      double best = INFINITY;
      for (const auto& e : to) {
        for (int k = 0; k <= samples; ++k) {
          const double u = static_cast<double>(k) / samples;
          best = std::min(best, std::hypot(p.x - (e.a.x + u * (e.b.x - e.a.x)), p.y - (e.a.y + u * (e.b.y - e.a.y))));
        }
      }
      worst = std::max(worst, best);
    }
  }
  return worst;
}

}  // namespace

TEST(Area, Examples) {
  EXPECT_EQ(polygon_area(unit_square()), ExactValue(1));
  EXPECT_EQ(polygon_area(epoly({{q(0), q(0)}, {q(2), q(0)}, {q(0), q(2)}})), ExactValue(2));
  EXPECT_EQ(polygon_area(canonical_pg()), ExactValue(1));
}

TEST(Area, ClockwiseInputIsReoriented) {
  const ExactPolygon cw = epoly({{q(0), q(0)}, {q(0), q(1)}, {q(1), q(1)}, {q(1), q(0)}});
  EXPECT_EQ(polygon_area(cw), ExactValue(1));
  EXPECT_EQ(cw.vertices().front(), (ExactPoint{q(0), q(0)}));
}

TEST(Perimeter, Examples) {
  EXPECT_EQ(polygon_perimeter(unit_square()).exact(), ExactValue(4));
  EXPECT_EQ(polygon_perimeter(epoly({{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}})).exact(), val(2, 1));
  EXPECT_EQ(polygon_perimeter(canonical_pg()).exact(), val(2, 2));
}

TEST(Transform, RotationWithTranslation) {
  const RigidTransform t = RigidTransform::compose(1, false, {q(2), q(0)});
  EXPECT_EQ(t.apply(ExactPoint{q(1), q(0)}), (ExactPoint{q(2) + r2(1, 2), r2(1, 2)}));
  EXPECT_EQ(format_scalar(t.at(0, 0)), "\\frac{\\sqrt{2}}{2}");
  EXPECT_EQ(format_scalar(t.at(0, 1)), "-\\frac{\\sqrt{2}}{2}");
  const RigidDecomposition d = t.decompose();
  EXPECT_EQ(d.angle_deg, 45);
  EXPECT_FALSE(d.reflected);
  EXPECT_EQ(d.translation.x.exact(), ExactValue(2));
  EXPECT_EQ(d.translation.y.exact(), ExactValue(0));
}

TEST(Transform, IdentityAndReflection) {
  const RigidTransform id;
  const ExactPoint p{r2(3, 2), q(-7, 4)};
  EXPECT_EQ(id.apply(p), p);
  const RigidDecomposition d0 = id.decompose();
  EXPECT_EQ(d0.angle_deg, 0);
  EXPECT_FALSE(d0.reflected);

  const RigidTransform flip = RigidTransform::compose(0, true, {q(0), q(0)});
  EXPECT_EQ(flip.at(0, 0).exact(), ExactValue(-1));
  EXPECT_EQ(flip.at(1, 1).exact(), ExactValue(1));
  const RigidDecomposition d1 = flip.decompose();
  EXPECT_EQ(d1.angle_deg, 0);
  EXPECT_TRUE(d1.reflected);
  EXPECT_EQ(polygon_area(flip.apply(unit_square())), ExactValue(1));
}

TEST(Transform, NonRigidAndOffLattice) {
  RigidTransform::Matrix scaled{{{Scalar(2), Scalar(0), Scalar(0)},
                                 {Scalar(0), Scalar(2), Scalar(0)},
                                 {Scalar(0), Scalar(0), Scalar(1)}}};
  EXPECT_THROW(RigidTransform{scaled}, GeometryError);
  const double c = std::cos(0.3), s = std::sin(0.3);
  RigidTransform::Matrix rot{{{Scalar::approx(c), Scalar::approx(-s), Scalar(0)},
                              {Scalar::approx(s), Scalar::approx(c), Scalar(0)},
                              {Scalar(0), Scalar(0), Scalar(1)}}};
  EXPECT_THROW(RigidTransform(rot).decompose(), NonCanonicalAngle);
}

TEST(Transform, RigidInvariance) {
  for (const auto& piece : canonical_pieces()) {
    const ExactPolygon p = exact_polygon(piece.vertices).value();
    for (int k = 0; k < 8; ++k) {
      for (bool refl : {false, true}) {
        const RigidTransform t = RigidTransform::compose(k, refl, {val(3, -1, 2), r2(5, 4)});
        const ExactPolygon moved = t.apply(p);
        ASSERT_EQ(polygon_area(moved), polygon_area(p));
        ASSERT_EQ(polygon_perimeter(moved).exact(), polygon_perimeter(p).exact());
      }
    }
  }
}

TEST(PointLocation, Examples) {
  EXPECT_EQ(point_in_polygon(ExactPoint{q(1, 2), q(1, 2)}, unit_square()), Location::inside);
  EXPECT_EQ(point_in_polygon(ExactPoint{q(0), q(0)}, unit_square()), Location::boundary);
  EXPECT_EQ(point_in_polygon(ExactPoint{q(5), q(5)}, unit_square()), Location::outside);
  EXPECT_EQ(point_in_polygon(ExactPoint{q(1), q(1, 3)}, unit_square()), Location::boundary);
}

TEST(ConvexClip, Examples) {
  const auto a = fsquare(0, 0, 1);
  const auto b = fsquare(0.5, 0.5, 1);
  const auto c = convex_clip(a, b);
  ASSERT_TRUE(c.has_value());
  EXPECT_NEAR(polygon_area(*c), 0.25, 1e-12);
  EXPECT_FALSE(convex_clip(a, fsquare(5, 5, 1)).has_value());
  const auto self = convex_clip(unit_square(), unit_square());
  ASSERT_TRUE(self.has_value());
  EXPECT_EQ(polygon_area(*self), ExactValue(1));
}

TEST(IntersectionArea, Examples) {
  const ExactPolygon lt = epoly({{q(0), q(0)}, {q(2), q(0)}, {q(0), q(2)}});
  EXPECT_EQ(intersection_area(lt, lt), ExactValue(2));
  EXPECT_EQ(intersection_area(exact_square(0, 0, 1), exact_square(1, 0, 1)), ExactValue(0));
  EXPECT_NEAR(intersection_area(fsquare(0, 0, 1), fsquare(0.5, 0.5, 1)), 0.25, 1e-12);
}

TEST(IntersectionArea, NonConvexAndSymmetric) {
  // L-shaped hexagon against a square straddling its notch.
  const ExactPolygon ell = epoly({{q(0), q(0)}, {q(2), q(0)}, {q(2), q(1)}, {q(1), q(1)}, {q(1), q(2)}, {q(0), q(2)}});
  const ExactPolygon sq = epoly({{q(1, 2), q(1, 2)}, {q(3, 2), q(1, 2)}, {q(3, 2), q(3, 2)}, {q(1, 2), q(3, 2)}});
  EXPECT_EQ(intersection_area(ell, sq), q(3, 4));
  EXPECT_EQ(intersection_area(sq, ell), q(3, 4));
  EXPECT_EQ(intersection_area(ell, ell), polygon_area(ell));
}

TEST(UnionInfo, SquareAssembly) {
  const UnionInfo info = union_info(scalar_polys(square_assembly()));
  EXPECT_EQ(info.area.exact(), ExactValue(8));
  EXPECT_EQ(info.components, 1u);
  EXPECT_EQ(info.holes, 0u);
  const ExactPolygon outline = extract_outline(square_assembly().polys);
  EXPECT_EQ(outline.size(), 4u);
  EXPECT_EQ(polygon_area(outline), ExactValue(8));
}

TEST(UnionInfo, FarApartPieces) {
  const UnionInfo info =
      union_info({scalar_polygon(exact_square(0, 0, 1)), scalar_polygon(exact_square(10, 0, 1))});
  EXPECT_EQ(info.components, 2u);
  EXPECT_EQ(info.area.exact(), ExactValue(2));
}

TEST(UnionInfo, RingEnclosesUnitHole) {
  std::vector<Polygon> ring;
  for (long i = 0; i < 3; ++i) {
    for (long j = 0; j < 3; ++j) {
      if (i != 1 || j != 1) ring.push_back(scalar_polygon(exact_square(i, j, 1)));
    }
  }
  const UnionInfo info = union_info(ring);
  EXPECT_EQ(info.holes, 1u);
  EXPECT_EQ(info.components, 1u);
  EXPECT_EQ(info.area.exact(), ExactValue(8));

  std::vector<Polygon> approx;
  for (const auto& p : ring) approx.push_back(scalar_polygon(exact_polygon(p).value()));
  for (auto& p : approx) {
    std::vector<Point> pts;
    for (const auto& v : p.vertices()) pts.push_back({Scalar::approx(v.x.to_double()), Scalar::approx(v.y.to_double())});
    p = Polygon(pts);
  }
  const UnionInfo finfo = union_info(approx);
  EXPECT_EQ(finfo.holes, 1u);
  EXPECT_EQ(finfo.components, 1u);
  EXPECT_NEAR(finfo.area.to_double(), 8.0, 1e-9);
}

TEST(UnionInfo, HoleyTangramAssembly) {
  const UnionInfo info = union_info(scalar_polys(holey_assembly()));
  EXPECT_EQ(info.holes, 1u);
  EXPECT_EQ(info.components, 1u);
  EXPECT_EQ(info.area.exact(), ExactValue(8));
}

TEST(Iou, Examples) {
  const auto t = fsquare(0, 0, 1);
  EXPECT_DOUBLE_EQ(iou({t}, t), 1.0);
  EXPECT_DOUBLE_EQ(iou({fsquare(3, 3, 1)}, t), 0.0);
  EXPECT_NEAR(iou({fsquare(0.5, 0.5, 1)}, t), 1.0 / 7.0, 1e-9);
}

TEST(Iou, PiecewiseAssemblyEqualsTarget) {
  const auto pieces = float_polys(square_assembly());
  const double s = 2 * std::sqrt(2.0);
  EXPECT_NEAR(iou(pieces, fpoly({{0, 0}, {s, 0}, {s, s}, {0, s}})), 1.0, 1e-12);
}

TEST(Hausdorff, Examples) {
  const auto a = polygon_boundary(fsquare(0, 0, 1));
  EXPECT_DOUBLE_EQ(hausdorff(a, a), 0.0);
  EXPECT_NEAR(hausdorff(a, polygon_boundary(fsquare(3, 0, 1))), 3.0, 0.005);
  EXPECT_NEAR(hausdorff(a, polygon_boundary(fsquare(0, 0, 2))), std::sqrt(2.0), 0.005);
}

TEST(Hausdorff, AgreesWithDenseSampling) {
  const auto a = polygon_boundary(fsquare(0, 0, 1));
  const auto b = polygon_boundary(fsquare(3, 0, 1));
  const double oracle = std::max(sampled_directed(a, b, 200), sampled_directed(b, a, 200));
  EXPECT_NEAR(hausdorff(a, b), oracle, 0.005);
}

TEST(Hausdorff, SymmetricAndTranslationEqualsDistance) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-4, 4);
  for (int i = 0; i < 20; ++i) {
    const double dx = d(rng), dy = d(rng);
    const auto a = polygon_boundary(fsquare(0, 0, 1));
    const auto b = polygon_boundary(fsquare(dx, dy, 1));
    ASSERT_NEAR(hausdorff(a, b), hausdorff(b, a), 1e-12);
    ASSERT_NEAR(hausdorff(a, b), std::hypot(dx, dy), 0.005);
  }
}

TEST(SharedBoundary, EdgeContactVersusPointContact) {
  EXPECT_TRUE(shared_boundary(exact_square(0, 0, 1), exact_square(1, 0, 1)).positive);
  EXPECT_FALSE(shared_boundary(exact_square(0, 0, 1), exact_square(1, 1, 1)).positive);
  EXPECT_EQ(adjacency_components(std::vector<ExactPolygon>{exact_square(0, 0, 1), exact_square(1, 1, 1)}), 2u);
}

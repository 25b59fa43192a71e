#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace tce;
using namespace tce::test;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(TCE_FIXTURES) + "/" + name);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json square_doc() { return json::parse(fixture("square.tce.json")); }

TceParseResult parse(const json& j, ParseMode mode = ParseMode::document) { return parse_tce(j.dump(), mode); }

}  // namespace

TEST(Canonical, AreasAndPerimeters) {
  const auto pieces = canonical_pieces();
  ASSERT_EQ(pieces.size(), 7u);
  const std::vector<ExactValue> areas{q(2), q(2), q(1), q(1, 2), q(1, 2), q(1), q(1)};
  ExactValue total(0);
  for (std::size_t i = 0; i < 7; ++i) {
    const ExactPolygon p = exact_polygon(pieces[i].vertices).value();
    EXPECT_EQ(polygon_area(p), areas[i]) << kind_name(pieces[i].kind);
    total += polygon_area(p);
  }
  EXPECT_EQ(total, ExactValue(8));
  const ExactPolygon sq = exact_polygon(pieces[index_of(PieceKind::square)].vertices).value();
  EXPECT_EQ(polygon_perimeter(sq).exact(), ExactValue(4));
  const ExactPolygon lt = exact_polygon(pieces[0].vertices).value();
  EXPECT_EQ(polygon_perimeter(lt).exact(), val(4, 2));
}

TEST(Canonical, EdgeMultisetsDistinguishShapes) {
  for (PieceKind a : kAllKinds) {
    for (PieceKind b : kAllKinds) {
      const bool same = piece_spec(a).squared_edges == piece_spec(b).squared_edges;
      EXPECT_EQ(same, shape_of(a) == shape_of(b)) << kind_name(a) << " " << kind_name(b);
    }
  }
}

TEST(Canonical, Labels) {
  std::set<std::string> labels;
  for (PieceKind k : kAllKinds) {
    labels.insert(std::string(kind_label(k)));
    EXPECT_EQ(kind_from_label(kind_label(k)), k);
    EXPECT_EQ(kind_from_name(kind_name(k)), k);
  }
  EXPECT_EQ(labels, (std::set<std::string>{"LT1", "LT2", "MT", "ST1", "ST2", "SQ", "PG"}));
}

TEST(ParseTce, WellFormedDocument) {
  const TceParseResult r = parse(square_doc());
  ASSERT_TRUE(r.instance.has_value());
  EXPECT_TRUE(r.report.ok());
  EXPECT_EQ(r.instance->final_state.size(), 7u);
  EXPECT_EQ(r.instance->target_outline.vertices.size(), 4u);
  for (const auto& p : r.instance->final_state) {
    ASSERT_TRUE(p.transform.has_value());
    const ExactPolygon expect = p.transform->apply(piece_spec(p.kind).canonical);
    EXPECT_EQ(exact_polygon(p.vertices).value().vertices(), expect.vertices()) << kind_name(p.kind);
  }
}

TEST(ParseTce, EightPieces) {
  json j = square_doc();
  j["final_state"].push_back(j["final_state"][5]);
  const TceParseResult r = parse(j);
  EXPECT_TRUE(r.report.has(TseCode::bad_piece_count));
}

TEST(ParseTce, TruncatedText) {
  const std::string text = fixture("square.tce.json");
  const TceParseResult r = parse_tce(text.substr(0, text.size() / 2));
  EXPECT_FALSE(r.instance.has_value());
  EXPECT_TRUE(r.report.has(TseCode::unparseable_document));
}

TEST(ParseTce, UnknownTypeAndBadCoordinate) {
  json j = square_doc();
  j["final_state"][0]["type"] = "hexagon";
  EXPECT_TRUE(parse(j).report.has(TseCode::unknown_piece_type));
  j = square_doc();
  j["final_state"][0]["vertices"][0][0] = "\\sqrt{3}";
  EXPECT_TRUE(parse(j).report.has(TseCode::bad_coordinate));
  j = square_doc();
  j["final_state"][1]["type"] = "large_triangle_1";
  EXPECT_TRUE(parse(j).report.has(TseCode::duplicate_kind));
}

TEST(ParseTce, EdgeValidation) {
  json j = square_doc();
  j["final_state"][0]["edges"][0][1] = 7;
  EXPECT_TRUE(parse(j).report.has(TseCode::bad_edge_index));
  j = square_doc();
  j["final_state"][0]["edges"][0][2] = "3";
  EXPECT_TRUE(parse(j).report.has(TseCode::bad_edge_index));
  j = square_doc();
  j["final_state"][0]["edges"][0][2] = "2.0000001";
  EXPECT_TRUE(parse(j).report.ok());
}

TEST(ParseTce, MissingFields) {
  json j = square_doc();
  j.erase("adjacency_graph");
  EXPECT_TRUE(parse(j).report.has(TseCode::missing_field));
  EXPECT_TRUE(parse(j, ParseMode::submission).report.ok());
}

TEST(ParseTce, DecimalCoordinatesAreApproximate) {
  json j = square_doc();
  j["final_state"][5]["vertices"][0] = {"1.4142135623730951", "1.4142135623730951"};
  const TceParseResult r = parse(j, ParseMode::submission);
  ASSERT_TRUE(r.instance.has_value());
  EXPECT_FALSE(r.instance->final_state[5].vertices[0].x.is_exact());
}

TEST(SerializeTce, Conventions) {
  const std::string text = serialize_tce(square_instance());
  EXPECT_NE(text.find("\"vertices\": [[\"0\",\"0\"],[\"1\",\"0\"],[\"1\",\"1\"],[\"0\",\"1\"]]"), std::string::npos);
  EXPECT_NE(text.find("2\\\\sqrt{2}"), std::string::npos);
  TceInstance empty = square_instance();
  empty.adjacency_graph.clear();
  EXPECT_NE(serialize_tce(empty).find("\"adjacency_graph\": []"), std::string::npos);
  const json j = json::parse(text);
  std::set<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.insert(k);
  EXPECT_EQ(keys, (std::set<std::string>{"instance_id", "target_outline", "initial_state", "final_state",
                                         "adjacency_graph"}));
  EXPECT_TRUE(j["adjacency_graph"][0][0].is_string());
}

TEST(SerializeTce, RoundTrip) {
  const TceInstance inst = square_instance();
  const TceParseResult r = parse_tce(serialize_tce(inst));
  ASSERT_TRUE(r.instance.has_value());
  EXPECT_TRUE(r.report.ok());
  EXPECT_EQ(*r.instance, inst);
  EXPECT_EQ(serialize_tce(*r.instance), serialize_tce(inst));
}

TEST(Congruence, Examples) {
  const Outline sq = rectangle_outline(2, 4);
  const Outline rotated = outline_of({{q(0), q(0)}, {q(4), q(0)}, {q(4), q(2)}, {q(0), q(2)}});
  EXPECT_TRUE(congruent_silhouettes(sq, rotated));
  const Outline tri = outline_of({{q(0), q(0)}, {q(4), q(0)}, {q(0), q(4)}});
  EXPECT_FALSE(congruent_silhouettes(rectangle_outline(2, 4), tri));
  // An L-shape and its mirror image.
  const Outline ell = outline_of({{q(0), q(0)}, {q(3), q(0)}, {q(3), q(1)}, {q(1), q(1)}, {q(1), q(3)}, {q(0), q(3)}});
  const Outline mirror =
      outline_of({{q(0), q(0)}, {q(-3), q(0)}, {q(-3), q(1)}, {q(-1), q(1)}, {q(-1), q(3)}, {q(0), q(3)}});
  EXPECT_TRUE(congruent_silhouettes(ell, mirror));
  const Outline diag = outline_of({{q(0), q(0)}, {q(2), q(2)}, {q(0), q(4)}, {q(-2), q(2)}});
  EXPECT_TRUE(congruent_silhouettes(big_square_outline(), diag));
}

TEST(Congruence, CollinearVerticesIgnored) {
  const Outline plain = rectangle_outline(2, 4);
  const Outline split = outline_of({{q(0), q(0)}, {q(2), q(0)}, {q(2), q(2)}, {q(2), q(4)}, {q(0), q(4)}});
  EXPECT_TRUE(congruent_silhouettes(plain, split));
}

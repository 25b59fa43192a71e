#pragma once

// Two-stage evaluation of a Task-2 submission: constraint validation
// (TSE, RGE, PE) then silhouette similarity (IoU, Hausdorff).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "tce/geom.hpp"
#include "tce/tangram.hpp"

namespace tce {

struct VerifyConfig {
  double resolution = 0.01;       // Hausdorff sampling step
  double success_iou = 0.99;
  double success_hausdorff = 0.05;
  double rigid_rel_tol = 1e-4;    // approximate track only
  double overlap_tol = 1e-6;      // approximate track only
  double gap_tol = 1e-6;          // approximate track only
};

struct RigidDetail {
  PieceKind kind = PieceKind::square;
  bool pass = true;
  double area_delta = 0;       // measured minus canonical
  double perimeter_delta = 0;
};

struct PhysicsDetail {
  bool pe = false;
  std::vector<KindPair> overlap_pairs;
  std::size_t component_count = 0;
};

struct VerificationRecord {
  std::string instance_id;
  bool tse = false;
  TseReport tse_report;
  bool rge = false;
  std::vector<RigidDetail> rigid;
  bool pe = false;
  PhysicsDetail physics;
  bool vpr_pass = false;
  double iou = 0;
  double hausdorff = std::numeric_limits<double>::infinity();
  bool success = false;
};

struct CorpusReport {
  std::size_t n = 0;
  double tse = 0, rge = 0, pe = 0, vpr = 0, success = 0;  // percentages
  double mean_iou = 0;                                    // percent
  double mean_hausdorff = std::numeric_limits<double>::quiet_NaN();
  std::size_t hausdorff_count = 0;
};

namespace detail {

template <class T>
std::optional<BasicPolygon<T>> cleaned(const BasicPolygon<T>& p) {
  auto ring = clean_ring(p.vertices());
  if (ring.size() < 3) return std::nullopt;
  BasicPolygon<T> out(std::move(ring));
  if (sign(signed_area2<T>(out.vertices())) <= 0) return std::nullopt;
  return out;
}

inline std::optional<FloatPolygon> usable_float(const Polygon& p) {
  if (p.size() < 3) return std::nullopt;
  return cleaned(float_polygon(p));
}

}  // namespace detail

/// Rigid-geometry check of one piece against its canonical shape.
inline RigidDetail check_rigid(const PieceState& piece, const VerifyConfig& cfg = {}) {
  const PieceSpec& spec = piece_spec(piece.kind);
  RigidDetail d;
  d.kind = piece.kind;
  const double canon_area = spec.area.to_double();
  const double canon_perim = spec.perimeter.to_double();
  if (auto exact = exact_polygon(piece.vertices)) {
    auto poly = detail::cleaned(*exact);
    if (!poly) {
      d.pass = false;
      d.area_delta = -canon_area;
      d.perimeter_delta = -canon_perim;
      return d;
    }
    const ExactValue area = polygon_area(*poly);
    d.area_delta = (area - spec.area).to_double();
    d.perimeter_delta = polygon_perimeter(*poly).to_double() - canon_perim;
    d.pass = area == spec.area && detail::sorted_squared_edges(*poly) == spec.squared_edges;
    return d;
  }
  auto poly = detail::usable_float(piece.vertices);
  if (!poly) {
    d.pass = false;
    d.area_delta = -canon_area;
    d.perimeter_delta = -canon_perim;
    return d;
  }
  d.area_delta = polygon_area(*poly) - canon_area;
  d.perimeter_delta = polygon_perimeter(*poly) - canon_perim;
  d.pass = std::abs(d.area_delta) / canon_area <= cfg.rigid_rel_tol &&
           std::abs(d.perimeter_delta) / canon_perim <= cfg.rigid_rel_tol;
  return d;
}

/// Overlap and connectivity of an assembly. Exact when every vertex is exact.
inline PhysicsDetail check_physics(const std::vector<PieceState>& pieces, const VerifyConfig& cfg = {}) {
  PhysicsDetail out;
  std::vector<ExactPolygon> exact;
  std::vector<PieceKind> exact_kinds;
  bool all_exact = true;
  for (const auto& p : pieces) {
    auto e = exact_polygon(p.vertices);
    if (!e) {
      all_exact = false;
      break;
    }
    if (auto c = detail::cleaned(*e)) {
      exact.push_back(std::move(*c));
      exact_kinds.push_back(p.kind);
    }
  }
  if (all_exact) {
    for (std::size_t i = 0; i < exact.size(); ++i) {
      for (std::size_t j = i + 1; j < exact.size(); ++j) {
        if (sign(intersection_area(exact[i], exact[j])) > 0) {
          out.overlap_pairs.push_back(ordered_pair(exact_kinds[i], exact_kinds[j]));
        }
      }
    }
    out.component_count = exact.empty() ? 0 : adjacency_components(exact);
  } else {
    std::vector<FloatPolygon> floats;
    std::vector<PieceKind> kinds;
    for (const auto& p : pieces) {
      if (auto f = detail::usable_float(p.vertices)) {
        floats.push_back(std::move(*f));
        kinds.push_back(p.kind);
      }
    }
    for (std::size_t i = 0; i < floats.size(); ++i) {
      for (std::size_t j = i + 1; j < floats.size(); ++j) {
        if (intersection_area(floats[i], floats[j]) > cfg.overlap_tol) {
          out.overlap_pairs.push_back(ordered_pair(kinds[i], kinds[j]));
        }
      }
    }
    out.component_count = floats.empty() ? 0 : adjacency_components(floats, cfg.gap_tol);
  }
  out.pe = !out.overlap_pairs.empty() || out.component_count != 1;
  return out;
}

/// IoU and Hausdorff of a piece list against a target outline, in binary64.
inline std::pair<double, double> silhouette_metrics(const std::vector<PieceState>& pieces, const Outline& target,
                                                    double resolution) {
  std::vector<FloatPolygon> floats;
  for (const auto& p : pieces) {
    if (auto f = detail::usable_float(p.vertices)) floats.push_back(std::move(*f));
  }
  const FloatPolygon t = float_polygon(target.vertices);
  if (floats.empty() || t.size() < 3) return {0.0, std::numeric_limits<double>::infinity()};
  const double overlap = iou(floats, t);
  const SegmentSet ub = union_boundary(floats);
  if (ub.empty()) return {overlap, std::numeric_limits<double>::infinity()};
  return {overlap, hausdorff(ub, polygon_boundary(t), resolution)};
}

/// Full evaluation of a submission text against a ground-truth instance.
inline VerificationRecord evaluate(std::string_view submission, const TceInstance& truth,
                                   const VerifyConfig& cfg = {}) {
  VerificationRecord rec;
  rec.instance_id = truth.instance_id;
  TceParseResult parsed = parse_tce(submission, ParseMode::submission);
  rec.tse_report = std::move(parsed.report);
  rec.tse = !rec.tse_report.ok();
  const std::vector<PieceState> empty;
  const auto& pieces = parsed.instance ? parsed.instance->final_state : empty;
  if (!pieces.empty()) {
    for (const auto& p : pieces) {
      rec.rigid.push_back(check_rigid(p, cfg));
      rec.rge = rec.rge || !rec.rigid.back().pass;
    }
    rec.physics = check_physics(pieces, cfg);
    rec.pe = rec.physics.pe;
    std::tie(rec.iou, rec.hausdorff) = silhouette_metrics(pieces, truth.target_outline, cfg.resolution);
  } else {
    rec.tse = true;
  }
  rec.vpr_pass = !rec.tse && !rec.rge && !rec.pe;
  rec.success = rec.vpr_pass && rec.iou >= cfg.success_iou && rec.hausdorff <= cfg.success_hausdorff;
  return rec;
}

inline CorpusReport aggregate(const std::vector<VerificationRecord>& records) {
  if (records.empty()) throw Error("aggregate: empty record list");
  CorpusReport r;
  r.n = records.size();
  double iou_sum = 0, h_sum = 0;
  std::size_t tse = 0, rge = 0, pe = 0, vpr = 0, success = 0;
  for (const auto& rec : records) {
    tse += rec.tse;
    rge += rec.rge;
    pe += rec.pe;
    vpr += rec.vpr_pass;
    success += rec.success;
    iou_sum += rec.iou;
    if (std::isfinite(rec.hausdorff)) {
      h_sum += rec.hausdorff;
      ++r.hausdorff_count;
    }
  }
  const double n = static_cast<double>(r.n);
  r.tse = 100.0 * static_cast<double>(tse) / n;
  r.rge = 100.0 * static_cast<double>(rge) / n;
  r.pe = 100.0 * static_cast<double>(pe) / n;
  r.vpr = 100.0 * static_cast<double>(vpr) / n;
  r.success = 100.0 * static_cast<double>(success) / n;
  r.mean_iou = 100.0 * iou_sum / n;
  if (r.hausdorff_count) r.mean_hausdorff = h_sum / static_cast<double>(r.hausdorff_count);
  return r;
}

// ---------------------------------------------------------------------------
// Rendering

inline std::string format_fixed(double v, int decimals) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

inline const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> kColumns{"Model", "TSE", "RGE", "PE", "VPR", "IoU", "Hausdorff", "Success"};
  return kColumns;
}

inline std::vector<std::string> report_row(const std::string& model, const CorpusReport& r) {
  return {model,
          format_fixed(r.tse, 2),
          format_fixed(r.rge, 2),
          format_fixed(r.pe, 2),
          format_fixed(r.vpr, 2),
          format_fixed(r.mean_iou, 2),
          format_fixed(r.mean_hausdorff, 4),
          format_fixed(r.success, 2)};
}

using ModelReport = std::pair<std::string, CorpusReport>;

inline std::string report_csv(const std::vector<ModelReport>& reports) {
  std::ostringstream os;
  const auto& cols = report_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
  for (const auto& [model, r] : reports) {
    const auto row = report_row(model, r);
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "");
      if (row[i].find_first_of(",\"\n") != std::string::npos) {
        std::string q = row[i];
        std::size_t pos = 0;
        while ((pos = q.find('"', pos)) != std::string::npos) {
          q.insert(pos, 1, '"');
          pos += 2;
        }
        os << '"' << q << '"';
      } else {
        os << row[i];
      }
    }
    os << "\n";
  }
  return os.str();
}

inline std::string report_table(const std::vector<ModelReport>& reports) {
  std::vector<std::vector<std::string>> rows{report_columns()};
  for (const auto& [model, r] : reports) rows.push_back(report_row(model, r));
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::ostringstream os;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i == 0) {
        os << row[i] << std::string(width[i] - row[i].size(), ' ');
      } else {
        os << "  " << std::string(width[i] - row[i].size(), ' ') << row[i];
      }
    }
    os << "\n";
  }
  return os.str();
}

inline ordered_json record_json(const VerificationRecord& r) {
  ordered_json j;
  j["instance_id"] = r.instance_id;
  j["tse"] = r.tse;
  ordered_json violations = ordered_json::array();
  for (const auto& v : r.tse_report.violations) {
    violations.push_back({{"code", std::string(tse_code_name(v.code))}, {"detail", v.detail}});
  }
  j["tse_violations"] = violations;
  j["rge"] = r.rge;
  ordered_json rigid = ordered_json::array();
  for (const auto& d : r.rigid) {
    rigid.push_back({{"piece", std::string(kind_label(d.kind))},
                     {"pass", d.pass},
                     {"area_delta", d.area_delta},
                     {"perimeter_delta", d.perimeter_delta}});
  }
  j["rigid"] = rigid;
  j["pe"] = r.pe;
  ordered_json pairs = ordered_json::array();
  for (const auto& [a, b] : r.physics.overlap_pairs) {
    pairs.push_back(ordered_json::array({std::string(kind_label(a)), std::string(kind_label(b))}));
  }
  j["overlap_pairs"] = pairs;
  j["component_count"] = r.physics.component_count;
  j["vpr_pass"] = r.vpr_pass;
  j["iou"] = r.iou;
  if (std::isfinite(r.hausdorff)) {
    j["hausdorff"] = r.hausdorff;
  } else {
    j["hausdorff"] = nullptr;
  }
  j["success"] = r.success;
  return j;
}

}  // namespace tce

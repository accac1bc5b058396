#include "torelli_lab/io.hpp"

#include <fstream>
#include <sstream>

namespace torelli::io {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw DomainError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

Json form_to_json(const RationalForm& f) {
  Json arr = Json::array();
  for (const auto& c : f.coeffs()) arr.push_back(to_string(c));
  return arr;
}

RationalForm form_from_json(const Json& j, int degree) {
  if (!j.is_array() || static_cast<int>(j.size()) != degree + 1) {
    throw DomainError("form needs " + std::to_string(degree + 1) + " coefficients");
  }
  RationalForm f(degree);
  for (int k = 0; k <= degree; ++k) {
    f[k] = parse_rational(j.at(static_cast<std::size_t>(k)).get<std::string>());
  }
  return f;
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw DomainError("matrix must be a nonempty row list");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.at(0).size());
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw DomainError("ragged matrix rows");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      m(i, k) = complex_from_json(row.at(static_cast<std::size_t>(k)));
    }
  }
  require_finite(m, "matrix JSON");
  return m;
}

Json vector_to_json(const CVector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(complex_to_json(v(i)));
  return arr;
}

CVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("vector must be an array");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = complex_from_json(j.at(i));
  }
  return v;
}

Json point_to_json(const ProjectivePointP1& p) {
  if (p.is_infinity()) return "inf";
  return complex_to_json(p.affine_coordinate());
}

ProjectivePointP1 point_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "inf") throw DomainError("point must be [re, im] or \"inf\"");
    return ProjectivePointP1::infinity();
  }
  return ProjectivePointP1::affine(complex_from_json(j));
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j.at(0).is_number() || !j.at(1).is_number()) {
    throw DomainError("complex number must be [re, im]");
  }
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

Json surface_to_json(const WeierstrassSurface& s) {
  Json j;
  j["q"] = s.q();
  j["dL"] = s.dL();
  j["g4"] = form_to_json(s.g4());
  j["g6"] = form_to_json(s.g6());
  return j;
}

WeierstrassSurface surface_from_json(const Json& j) {
  return guarded("surface", [&] {
    const int q = j.value("q", 0);
    const int dL = j.at("dL").get<int>();
    if (dL < 1) throw DomainError("dL must be positive");
    return WeierstrassSurface(dL, form_from_json(j.at("g4"), 4 * dL),
                              form_from_json(j.at("g6"), 6 * dL), q);
  });
}

Json divisor_to_json(const DivisorP1& d) {
  Json pts = Json::array();
  for (const auto& p : d.points) {
    pts.push_back({{"z", point_to_json(p.point)}, {"mult", p.multiplicity}});
  }
  return {{"points", pts}, {"degree", d.degree()}};
}

Json presentation_to_json(const IVHSPresentation& w) {
  Json basis = Json::array();
  for (const auto& b : w.basis) basis.push_back(matrix_to_json(b));
  Json j = {{"h", w.h}, {"N", w.N}, {"basis", basis}};
  if (w.gram) j["gram"] = matrix_to_json(*w.gram);
  return j;
}

IVHSPresentation presentation_from_json(const Json& j) {
  return guarded("IVHS", [&] {
    IVHSPresentation w;
    w.h = j.at("h").get<int>();
    w.N = j.at("N").get<int>();
    for (const auto& m : j.at("basis")) w.basis.push_back(matrix_from_json(m));
    if (j.contains("gram")) w.gram = matrix_from_json(j.at("gram"));
    validate_presentation(w);
    return w;
  });
}

Json truth_to_json(const GroundTruth& t) {
  Json pts = Json::array();
  for (const auto& p : t.points) {
    pts.push_back({{"z", point_to_json(p.base_point)}, {"x", vector_to_json(p.x)}});
  }
  return {{"points", pts},
          {"lambdas", vector_to_json(t.lambdas)},
          {"y_frame", matrix_to_json(t.y_frame)},
          {"mixer", matrix_to_json(t.mixer)}};
}

GroundTruth truth_from_json(const Json& j) {
  return guarded("truth", [&] {
    GroundTruth t;
    for (const auto& p : j.at("points")) {
      t.points.push_back({point_from_json(p.at("z")), vector_from_json(p.at("x"))});
    }
    t.lambdas = vector_from_json(j.at("lambdas"));
    t.y_frame = matrix_from_json(j.at("y_frame"));
    t.mixer = matrix_from_json(j.at("mixer"));
    return t;
  });
}

Json jet_to_json(const JetCoefficients& b) {
  Json arr = Json::array();
  for (const auto& [mn, v] : b.b) arr.push_back(Json::array({mn.first, mn.second, to_string(v)}));
  return {{"b", arr}};
}

JetCoefficients jet_from_json(const Json& j) {
  return guarded("plumb", [&] {
    JetCoefficients b;
    int order = 0;
    for (const auto& e : j.at("b")) {
      order = std::max(order, e.at(0).get<int>() + e.at(1).get<int>());
    }
    b.max_order = std::max(order, j.value("max_order", 6));
    for (const auto& e : j.at("b")) {
      b.set(e.at(0).get<int>(), e.at(1).get<int>(),
            parse_rational(e.at(2).get<std::string>()));
    }
    return b;
  });
}

Json invariants_to_json(const Invariants& inv) {
  return {{"h", inv.h},
          {"q", inv.q},
          {"chi", inv.chi},
          {"N", inv.N},
          {"c2", inv.c2},
          {"deg_phi", inv.deg_phi},
          {"deg_canonical_curve", inv.deg_canonical_curve},
          {"h11", inv.h11()},
          {"inequality_gate", inv.inequality_gate},
          {"genus_bound", inv.genus_bound}};
}

Json fibers_to_json(const FiberReport& r) {
  Json fibers = Json::array();
  for (const auto& f : r.fibers) {
    fibers.push_back({{"z", point_to_json(f.point)},
                      {"delta_val", f.delta_val},
                      {"g4_val_zero", f.g4_val_zero},
                      {"kodaira", f.kodaira == KodairaKind::I_n
                                      ? "I" + std::to_string(f.delta_val)
                                      : std::string("additive_other")}});
  }
  return {{"fibers", fibers},
          {"all_I1", r.all_I1},
          {"I2_count", r.I2_count},
          {"total_delta", r.total_delta()}};
}

Json roundtrip_to_json(const RoundtripReport& r, bool with_timings) {
  Json j = {{"h", r.h},
            {"N", r.N},
            {"max_chordal", r.max_chordal},
            {"mean_chordal", r.mean_chordal},
            {"quadric_dim", r.quadric_dim},
            {"residual_max", r.residual_max},
            {"recovered_deg_L", r.recovered_deg_L},
            {"status", r.status}};
  if (with_timings) j["stage_timings_ms"] = r.stage_timings_ms;
  return j;
}

Json geometry_to_json(const RecoveredGeometry& g) {
  Json pts = Json::array();
  for (const auto& z : g.z_points) pts.push_back(vector_to_json(z));
  Json quads = Json::array();
  for (const auto& q : g.quadric_basis) quads.push_back(matrix_to_json(q));
  Json j = {{"z_points", pts},
            {"quadric_basis", quads},
            {"quadric_dim", g.quadric_dim},
            {"point_residual", g.point_residual}};
  if (g.match) {
    j["match"] = {{"perm", g.match->perm},
                  {"max_chordal", g.match->max_chordal},
                  {"mean_chordal", g.match->mean_chordal}};
  }
  return j;
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw DomainError("invalid JSON in " + path + ": " + e.what());
  }
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace torelli::io

#include "io.hpp"

#include <fstream>
#include <sstream>

namespace holoalg::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw SchemaError(what); }

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) fail(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + " must be a number");
  return j.get<double>();
}

std::vector<Element> parse_elements(const json& j, const AlgebraPtr& a, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be a list of elements");
  std::vector<Element> out;
  for (const auto& e : j) out.push_back(a->element(parse_vector(e, a->dim())));
  return out;
}

void require_list(const json& coeffs) {
  if (!coeffs.is_array() || coeffs.empty()) fail("coefficient list must be a non-empty array");
}

}  // namespace

json read_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) fail("cannot open " + file.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(file.string() + ": " + e.what());
  }
}

cd parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail("complex numbers are written [re, im], got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(cd z) { return json::array({z.real(), z.imag()}); }

Vector parse_vector(const json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) {
    std::ostringstream os;
    os << "expected an element with " << dim << " coordinates, got " << j.dump();
    fail(os.str());
  }
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) v[Eigen::Index(i)] = parse_complex(j[i]);
  return v;
}

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v[i]));
  return out;
}

json to_json(const Element& e) { return to_json(e.coords()); }

StructureTensor parse_tensor(const json& j) {
  const json& dim_j = field(j, "dim");
  if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1) fail("\"dim\" must be a positive integer");
  const auto n = dim_j.get<std::size_t>();
  std::vector<std::string> labels;
  if (j.contains("basis")) {
    const json& b = j.at("basis");
    if (!b.is_array() || b.size() != n) fail("\"basis\" must list one label per dimension");
    for (const auto& l : b) {
      if (!l.is_string()) fail("basis labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }
  const json& alpha = field(j, "alpha");
  if (!alpha.is_array() || alpha.size() != n) fail("\"alpha\" must be an n x n x n array");
  StructureTensor t(n, std::move(labels));
  for (std::size_t a = 0; a < n; ++a) {
    if (!alpha[a].is_array() || alpha[a].size() != n) fail("\"alpha\" must be an n x n x n array");
    for (std::size_t b = 0; b < n; ++b) {
      const Vector v = parse_vector(alpha[a][b], n);
      for (std::size_t i = 0; i < n; ++i) t(a, b, i) = v[Eigen::Index(i)];
    }
  }
  return t;
}

AlgebraPtr parse_algebra(const json& j) {
  std::string name;
  if (j.is_object() && j.contains("name")) {
    if (!j.at("name").is_string()) fail("\"name\" must be a string");
    name = j.at("name").get<std::string>();
  }
  return Algebra::build(parse_tensor(j), name);
}

json algebra_to_json(const Algebra& a) {
  const std::size_t n = a.dim();
  json alpha = json::array();
  for (std::size_t j = 0; j < n; ++j) {
    json row = json::array();
    for (std::size_t k = 0; k < n; ++k) {
      json v = json::array();
      for (std::size_t i = 0; i < n; ++i) v.push_back(to_json(a.tensor()(j, k, i)));
      row.push_back(v);
    }
    alpha.push_back(row);
  }
  json out = {{"name", a.name()}, {"dim", n}, {"alpha", alpha}};
  if (a.tensor().labels().size() == n) out["basis"] = a.tensor().labels();
  return out;
}

std::pair<std::string, std::string> morphism_names(const json& j) {
  const json& s = field(j, "source");
  const json& t = field(j, "target");
  if (!s.is_string() || !t.is_string()) fail("morphism \"source\" and \"target\" must be algebra names");
  return {s.get<std::string>(), t.get<std::string>()};
}

Morphism parse_morphism(const json& j, const AlgebraPtr& source, const AlgebraPtr& target) {
  const auto [s, t] = morphism_names(j);
  if (s != source->name()) fail("morphism source \"" + s + "\" does not match algebra \"" + source->name() + "\"");
  if (t != target->name()) fail("morphism target \"" + t + "\" does not match algebra \"" + target->name() + "\"");
  const json& rows = field(j, "matrix");
  const std::size_t m = target->dim(), n = source->dim();
  if (!rows.is_array() || rows.size() != m) fail("\"matrix\" must have one row per target dimension");
  Matrix mat = Matrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < m; ++i) mat.row(Eigen::Index(i)) = parse_vector(rows[i], n).transpose();
  return Morphism::build(source, target, mat);
}

json morphism_to_json(const Morphism& phi) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < phi.matrix().rows(); ++i) rows.push_back(to_json(Vector(phi.matrix().row(i).transpose())));
  return {{"source", phi.source()->name()}, {"target", phi.target()->name()}, {"matrix", rows}};
}

Element parse_point(const json& j, const AlgebraPtr& algebra) {
  if (j.is_object()) return algebra->element(parse_vector(field(j, "point"), algebra->dim()));
  return algebra->element(parse_vector(j, algebra->dim()));
}

PowerSeries parse_polynomial(const json& j, const Setting& setting) {
  const json& coeffs = field(j, "coeffs");
  require_list(coeffs);
  const AlgebraPtr& a = setting.phi.source();
  const Element center = j.contains("center") ? parse_point(j.at("center"), a) : a->zero();
  return PowerSeries(setting, center,
                     CoefficientSequence::finite(parse_elements(coeffs, setting.phi.target(), "\"coeffs\"")));
}

json polynomial_to_json(const PowerSeries& s) {
  json coeffs = json::array();
  for (std::size_t k = 0; k < s.coefficients().bound(); ++k) coeffs.push_back(to_json(s.coefficients().at(k)));
  return {{"type", "poly"}, {"center", to_json(s.center())}, {"coeffs", coeffs}};
}

CanonicalForm parse_canonical(const json& j, const Setting& setting) {
  const json& coeffs = field(j, "scalar_taylor");
  require_list(coeffs);
  ScalarSeries g{j.contains("center") ? parse_complex(j.at("center")) : cd(0.0),
                 CoefficientSequence::finite(parse_elements(coeffs, setting.phi.target(), "\"scalar_taylor\""))};
  CanonicalForm f(std::move(g), setting);
  if (j.contains("height")) {
    const json& h = j.at("height");
    if (!h.is_number_integer() || h.get<long long>() < 1) fail("\"height\" must be a positive integer");
    std::size_t nu = 1;
    for (std::size_t x : f.heights()) nu = std::max(nu, x);
    if (h.get<std::size_t>() != nu) {
      std::ostringstream os;
      os << "declared height " << h.get<std::size_t>() << " differs from the morphism height " << nu;
      fail(os.str());
    }
  }
  return f;
}

FunctionData parse_function(const json& j, const Setting& setting) {
  const json& type = field(j, "type");
  if (type == "poly") return parse_polynomial(j, setting);
  if (type == "canonical") return parse_canonical(j, setting);
  fail("unknown function type " + type.dump());
}

Path parse_path(const json& j, const AlgebraPtr& algebra) {
  const json& type = field(j, "type");
  if (type == "circle") {
    const Element center = j.contains("center") ? parse_point(j.at("center"), algebra) : algebra->zero();
    const double r = number(field(j, "radius"), "\"radius\"");
    int turns = 1;
    if (j.contains("turns")) {
      if (!j.at("turns").is_number_integer()) fail("\"turns\" must be an integer");
      turns = j.at("turns").get<int>();
    }
    const Element dir = j.contains("direction") ? parse_point(j.at("direction"), algebra) : algebra->one();
    return Path::circle(center, r, turns, dir);
  }
  if (type == "polyline") {
    const bool close = j.value("closed", false);
    return Path::polyline(parse_elements(field(j, "points"), algebra, "\"points\""), close);
  }
  if (type == "samples") {
    const bool smooth = j.value("smooth", false);
    return Path::samples(parse_elements(field(j, "points"), algebra, "\"points\""), smooth);
  }
  fail("unknown path type " + type.dump());
}

json path_to_json(const Path& p) {
  json segs = json::array();
  for (const auto& s : p.segments()) {
    if (s.kind() == Segment::Kind::kCircle) {
      segs.push_back({{"type", "circle"},
                      {"center", to_json(s.center())},
                      {"radius", s.radius()},
                      {"turns", s.turns()},
                      {"direction", to_json(s.direction())}});
    } else {
      const auto bp = s.breakpoints();
      json pts = json::array();
      for (double t : bp) pts.push_back(to_json(s.point(t)));
      segs.push_back({{"type", s.kind() == Segment::Kind::kLine ? "polyline" : "samples"}, {"points", pts}});
    }
  }
  return segs.size() == 1 ? segs[0] : json{{"segments", segs}};
}

Cycle parse_cycle(const json& j, const AlgebraPtr& algebra) {
  if (j.is_object() && j.contains("terms")) {
    const json& terms = j.at("terms");
    if (!terms.is_array() || terms.empty()) fail("\"terms\" must be a non-empty list");
    std::vector<CycleTerm> out;
    for (const auto& t : terms) {
      const json& mult = field(t, "mult");
      if (!mult.is_number_integer()) fail("\"mult\" must be an integer");
      out.push_back({mult.get<int>(), parse_path(field(t, "path"), algebra)});
    }
    return Cycle(std::move(out));
  }
  return Cycle(parse_path(j, algebra));
}

json decomposition_to_json(const Decomposition& d, const Profile& p) {
  json comps = json::array();
  for (std::size_t k = 0; k < d.count(); ++k) {
    const auto& cp = p.components[k];
    comps.push_back({{"idempotent", to_json(d.idempotents[k])},
                     {"sigma", to_json(Vector(d.spectral_rows.row(Eigen::Index(k)).transpose()))},
                     {"dim", d.component_dim(k)},
                     {"height", cp.height},
                     {"widths", cp.widths}});
  }
  return {{"components", comps}, {"count", d.count()}, {"nilradical_dim", d.nilradical.cols()}};
}

json pde_to_json(const PDESystem& s) {
  auto terms = [](const std::vector<PDETerm>& ts) {
    json out = json::array();
    for (const auto& t : ts)
      out.push_back({{"coefficient", to_json(t.coefficient)}, {"component", t.component + 1}, {"direction", t.direction + 1}});
    return out;
  };
  json eqs = json::array();
  for (const auto& e : s.equations) eqs.push_back({{"lhs", terms(e.lhs)}, {"rhs", terms(e.rhs)}});
  json gammas = json::array();
  for (const auto& g : s.gammas) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < g.rows(); ++i) rows.push_back(to_json(Vector(g.row(i).transpose())));
    gammas.push_back(rows);
  }
  json basis = json::array();
  for (Eigen::Index j = 0; j < s.change_of_basis.cols(); ++j) basis.push_back(to_json(Vector(s.change_of_basis.col(j))));
  return {{"form", std::string(to_string(s.form))},
          {"source_dim", s.source_dim},
          {"target_dim", s.target_dim},
          {"basis_labels", s.source_labels},
          {"rebased", s.rebased},
          {"basis", basis},
          {"gammas", gammas},
          {"equations", eqs}};
}

}  // namespace holoalg::io

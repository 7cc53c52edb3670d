#include "cli.hpp"

#include <cmath>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "holoalg/contour.hpp"
#include "holoalg/cr_system.hpp"
#include "holoalg/decomposition.hpp"
#include "io.hpp"

namespace holoalg::cli {

namespace {

using io::json;
namespace fs = std::filesystem;

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << (x == 0.0 ? 0.0 : x);
  return os.str();
}

std::string num(cd z) {
  const double re = z.real() == 0.0 ? 0.0 : z.real();
  const double im = z.imag() == 0.0 ? 0.0 : z.imag();
  if (im == 0.0) return num(re);
  if (re == 0.0) return num(im) + "i";
  return num(re) + (im < 0 ? "-" : "+") + num(std::abs(im)) + "i";
}

// Parts below 1e-12 of the vector's scale are printed as zero.
std::string num(const Vector& v) {
  const double floor = 1e-12 * std::max(1.0, v.cwiseAbs().maxCoeff());
  auto clean = [floor](double x) { return std::abs(x) < floor ? 0.0 : x; };
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(cd(clean(v[i].real()), clean(v[i].imag())));
  return s + ")";
}

std::string num(const Element& e) { return num(e.coords()); }

// Shared options of the subcommands that read an algebra and maybe a morphism.
struct Inputs {
  std::string algebra;
  std::string morphism;
  std::string target;
  std::uint64_t seed = 0;
  bool json = false;
};

AlgebraPtr load_algebra(const std::string& file) { return io::parse_algebra(io::read_json(file)); }

Morphism load_morphism(const Inputs& in, const AlgebraPtr& source) {
  if (in.morphism.empty()) return Morphism::identity(source);
  const json j = io::read_json(in.morphism);
  const auto [s, t] = io::morphism_names(j);
  AlgebraPtr target;
  if (!in.target.empty()) {
    target = load_algebra(in.target);
  } else if (t == source->name()) {
    target = source;
  } else {
    const fs::path guess = fs::path(in.morphism).parent_path() / (t + ".json");
    if (!fs::exists(guess)) throw io::SchemaError("target algebra \"" + t + "\" not found; pass --target");
    target = load_algebra(guess.string());
  }
  return io::parse_morphism(j, source, target);
}

FunctionSampler sampler(const io::FunctionData& f) {
  if (const auto* p = std::get_if<PowerSeries>(&f)) {
    return FunctionSampler([p = *p](const Element& z) { return evaluate_polynomial(p, z); });
  }
  return FunctionSampler([c = std::get<CanonicalForm>(f)](const Element& z) { return c(z); });
}

void add_common(CLI::App* cmd, Inputs& in, bool algebra_flag) {
  if (algebra_flag) {
    cmd->add_option("--algebra", in.algebra, "algebra file")->required()->check(CLI::ExistingFile);
  } else {
    cmd->add_option("algebra", in.algebra, "algebra file")->required()->check(CLI::ExistingFile);
  }
  cmd->add_option("--morphism", in.morphism, "morphism file (default: identity)")->check(CLI::ExistingFile);
  cmd->add_option("--target", in.target, "target algebra file of the morphism")->check(CLI::ExistingFile);
  cmd->add_option("--seed", in.seed, "seed for the decomposition")->capture_default_str();
  cmd->add_flag("--json", in.json, "machine-readable output");
}

// Index vector sum_l w_l J_l: a single integer when all w_l agree.
std::string format_index(const Element& index, const Setting& s) {
  std::vector<long> w;
  for (std::size_t l = 0; l < s.target.count(); ++l) w.push_back(std::lround(spectral_value(s.target, l, index).real()));
  bool uniform = true;
  for (long x : w) uniform = uniform && x == w.front();
  if (uniform) return std::to_string(w.front());
  std::string out = "[";
  for (std::size_t l = 0; l < w.size(); ++l) out += (l ? ", " : "") + std::to_string(w[l]);
  return out + "]";
}

std::string format_quadrature_index(const Element& q) {
  const Vector& u = q.algebra()->unit_coords();
  const cd c = u.dot(q.coords()) / u.squaredNorm();
  if ((q.coords() - c * u).norm() < 1e-6 && std::abs(c.imag()) < 1e-6) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(9) << c.real();
    return os.str();
  }
  return num(q);
}

json warnings_json(const std::vector<std::string>& w) { return json(w); }

int cmd_validate(const Inputs& in, std::ostream& out) {
  const AlgebraPtr a = load_algebra(in.algebra);
  if (in.json) {
    out << json{{"valid", true},
                {"commutative", true},
                {"associative", true},
                {"unit", io::to_json(a->unit_coords())},
                {"algebra", io::algebra_to_json(*a)}}
               .dump(2)
        << "\n";
  } else {
    out << "commutative, associative, unit=" << num(a->unit_coords()) << "\n";
  }
  return 0;
}

int cmd_decompose(const Inputs& in, std::ostream& out) {
  const AlgebraPtr a = load_algebra(in.algebra);
  DecompositionOptions opts;
  opts.seed = in.seed;
  const Decomposition d = artin_decompose(a, opts);
  const Profile p = profile(d);
  if (in.json) {
    out << io::decomposition_to_json(d, p).dump(2) << "\n";
    return 0;
  }
  out << d.count() << (d.count() == 1 ? " component" : " components") << ", nilradical dimension "
      << d.nilradical.cols() << "\n";
  for (std::size_t k = 0; k < d.count(); ++k) {
    const auto& c = p.components[k];
    out << "component " << k + 1 << ": dim " << d.component_dim(k) << ", height " << c.height << ", widths [";
    for (std::size_t i = 0; i < c.widths.size(); ++i) out << (i ? ", " : "") << c.widths[i];
    out << "]\n  idempotent " << num(d.idempotents[k]) << "\n  sigma " << num(Vector(d.spectral_rows.row(Eigen::Index(k)).transpose()))
        << "\n";
  }
  return 0;
}

int cmd_crgen(const Inputs& in, const std::string& format, const std::string& form, std::ostream& out) {
  const AlgebraPtr a = load_algebra(in.algebra);
  const Morphism phi = load_morphism(in, a);
  PDESystem s;
  if (form == "gcru") s = gcru_system(phi);
  if (form == "gucr") s = gucr_system(phi);
  if (form == "gcrs") s = gcrs_system(phi);
  if (in.json || format == "json") {
    out << io::pde_to_json(s).dump(2) << "\n";
  } else if (format == "latex") {
    out << render_latex(s);
  } else {
    out << render_text(s);
  }
  return 0;
}

int cmd_check(const Inputs& in, const std::string& function, const std::string& point, double step,
              std::ostream& out) {
  const AlgebraPtr a = load_algebra(in.algebra);
  const Setting s = make_setting(load_morphism(in, a), in.seed);
  const FunctionSampler f = sampler(io::parse_function(io::read_json(function), s));
  const Element z = io::parse_point(io::read_json(point), a);
  const double h = step > 0.0 ? step : default_step(z);
  const double gcru = gcru_residual(f, s.phi, z, h);
  const double dij = dij_residual(f, s.phi, z, h);
  const double ratio = residual_halving_ratio(f, s.phi, z, h);
  const HolomorphyVerdict v = verdict(gcru, h);
  const Element deriv = numeric_derivative(f, s.phi, z, h);
  std::optional<double> jac;
  if (s.phi.source() == s.phi.target()) jac = jacobian_consistency(f, s.phi, z, h);
  if (in.json) {
    json j{{"step", h},
           {"gcru_residual", gcru},
           {"dij_residual", dij},
           {"halving_ratio", ratio},
           {"verdict", std::string(to_string(v))},
           {"dij_verdict", std::string(to_string(verdict(dij, h)))},
           {"derivative", io::to_json(deriv)}};
    if (jac) j["jacobian_residual"] = *jac;
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "step " << num(h) << "\n"
      << "GCRU residual " << num(gcru) << " (halving ratio " << num(ratio) << ")\n"
      << "d_ij residual " << num(dij) << "\n";
  if (jac) out << "Jacobian residual " << num(*jac) << "\n";
  out << "f'(Z) = " << num(deriv) << "\n"
      << "verdict: " << to_string(v) << "\n";
  return 0;
}

int cmd_index(const Inputs& in, const std::string& path, const std::string& point, std::ostream& out) {
  const AlgebraPtr a = load_algebra(in.algebra);
  const Setting s = make_setting(load_morphism(in, a), in.seed);
  const Cycle c = io::parse_cycle(io::read_json(path), a);
  const Element z = io::parse_point(io::read_json(point), a);
  const AdmissibilityReport adm = admissibility(c, z, s);
  const Element spec = index_spectral(c, z, s);
  const Element quad = index_quadrature(c, z, s.phi);
  const double gap = (spec.coords() - quad.coords()).cwiseAbs().maxCoeff();
  if (in.json) {
    json clear = json::array();
    for (const auto& cl : adm.clearances) clear.push_back({{"component", cl.component + 1}, {"clearance", cl.clearance}});
    out << json{{"admissible", adm.admissible},
                {"clearances", clear},
                {"spectral", io::to_json(spec)},
                {"quadrature", io::to_json(quad)},
                {"difference", gap}}
               .dump(2)
        << "\n";
    return 0;
  }
  out << "Ind = " << format_index(spec, s) << " (spectral) / " << format_quadrature_index(quad) << " (quadrature)\n";
  return 0;
}

int cmd_cif(const Inputs& in, const std::string& function, const std::string& path, const std::string& point,
            std::size_t order, std::ostream& out) {
  const AlgebraPtr a = load_algebra(in.algebra);
  const Setting s = make_setting(load_morphism(in, a), in.seed);
  const FunctionSampler f = sampler(io::parse_function(io::read_json(function), s));
  const Cycle c = io::parse_cycle(io::read_json(path), a);
  const Element z = io::parse_point(io::read_json(point), a);
  const CifResult r = cif_derivative(f, c, z, order, s);
  std::optional<Element> value;
  try {
    value = solve(r, s);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kIndexNotInvertible) throw;
  }
  if (in.json) {
    json j{{"order", order},
           {"integral", io::to_json(r.integral)},
           {"index", io::to_json(r.index)},
           {"warnings", warnings_json(r.warnings)}};
    j["value"] = value ? io::to_json(*value) : json(nullptr);
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "integral = " << num(r.integral) << "\n"
      << "Ind = " << format_index(r.index, s) << "\n";
  if (value) {
    out << (order == 0 ? std::string("f(Z0)") : "f^(" + std::to_string(order) + ")(Z0)") << " = " << num(*value)
        << "\n";
  } else {
    out << "index is not invertible; the value is not determined\n";
  }
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  return 0;
}

int cmd_series(const Inputs& in, const std::string& function, const std::string& point, std::ostream& out) {
  const AlgebraPtr a = load_algebra(in.algebra);
  const Setting s = make_setting(load_morphism(in, a), in.seed);
  const io::FunctionData fd = io::parse_function(io::read_json(function), s);
  const Element z = io::parse_point(io::read_json(point), a);
  if (const auto* c = std::get_if<CanonicalForm>(&fd)) {
    const Element v = extend_to_cylinder(*c, z);
    if (in.json) {
      out << json{{"scalar_radius", std::isinf(c->scalar_radius()) ? json("inf") : json(c->scalar_radius())},
                  {"heights", c->heights()},
                  {"value", io::to_json(v)}}
                 .dump(2)
          << "\n";
    } else {
      out << "scalar radius " << num(c->scalar_radius()) << "\nvalue " << num(v) << "\n";
    }
    return 0;
  }
  const PowerSeries& p = std::get<PowerSeries>(fd);
  const RadiusEstimate& r = p.radius();
  const SeriesValue v = evaluate(p, z);
  auto radius_json = [](double x) { return std::isinf(x) ? json("inf") : json(x); };
  if (in.json) {
    json comps = json::array();
    for (double x : r.component_radii) comps.push_back(radius_json(x));
    json j{{"radius", radius_json(r.radius)},
           {"component_radii", comps},
           {"status", std::string(to_string(v.status))},
           {"spectral_radii", v.spectral_radii}};
    j["value"] = v.value ? io::to_json(*v.value) : json(nullptr);
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "radius " << num(r.radius) << " (components";
  for (double x : r.component_radii) out << " " << num(x);
  out << ")\nstatus " << to_string(v.status) << "\n";
  if (v.value) out << "value " << num(*v.value) << "\n";
  return 0;
}

int cmd_invert(const Inputs& in, const std::string& function, const std::string& value, const std::string& guess,
               std::ostream& out) {
  const AlgebraPtr a = load_algebra(in.algebra);
  const Setting s = make_setting(load_morphism(in, a), in.seed);
  const io::FunctionData fd = io::parse_function(io::read_json(function), s);
  const auto* p = std::get_if<PowerSeries>(&fd);
  if (!p) throw io::SchemaError("invert needs a polynomial function file");
  const Element w = io::parse_point(io::read_json(value), s.phi.target());
  const Element g = guess.empty() ? a->element(w.coords()) : io::parse_point(io::read_json(guess), a);
  NewtonOptions opts;
  opts.seed = in.seed;
  const NewtonResult r = newton_invert_map(*p, w, g, opts);
  if (in.json) {
    out << json{{"solution", io::to_json(r.solution)},
                {"steps", r.steps},
                {"residual", r.residual},
                {"warnings", warnings_json(r.warnings)}}
               .dump(2)
        << "\n";
    return 0;
  }
  out << "Z = " << num(r.solution) << "\nsteps " << r.steps << ", residual " << num(r.residual) << "\n";
  for (const auto& w2 : r.warnings) out << "warning: " << w2 << "\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-dimensional commutative algebras and phi-holomorphic functions"};
  app.name("holoalg");
  app.require_subcommand(1);

  Inputs in;
  std::string function, point, path, value, guess, format = "text", form = "gcru";
  double step = 0.0;
  std::size_t order = 0;

  auto* validate = app.add_subcommand("validate", "check a structure tensor and report its unit");
  validate->add_option("algebra", in.algebra, "algebra file")->required()->check(CLI::ExistingFile);
  validate->add_flag("--json", in.json, "machine-readable output");
  validate->add_option("--seed", in.seed, "unused; accepted for uniformity");

  auto* decompose = app.add_subcommand("decompose", "Artin decomposition and local profiles");
  decompose->add_option("algebra", in.algebra, "algebra file")->required()->check(CLI::ExistingFile);
  decompose->add_option("--seed", in.seed, "seed for the generic element")->capture_default_str();
  decompose->add_flag("--json", in.json, "machine-readable output");

  auto* crgen = app.add_subcommand("crgen", "generalized Cauchy-Riemann equations of a morphism");
  add_common(crgen, in, false);
  crgen->add_option("--format", format, "text, latex or json")
      ->check(CLI::IsMember({"text", "latex", "json"}))
      ->capture_default_str();
  crgen->add_option("--form", form, "gcru, gucr or gcrs")
      ->check(CLI::IsMember({"gcru", "gucr", "gcrs"}))
      ->capture_default_str();

  auto* check = app.add_subcommand("check", "finite-difference holomorphy test at a point");
  add_common(check, in, false);
  check->add_option("--function", function, "function file")->required()->check(CLI::ExistingFile);
  check->add_option("--point", point, "point file")->required()->check(CLI::ExistingFile);
  check->add_option("--step", step, "difference step (default 1e-5 (1 + |Z|))");

  auto* index = app.add_subcommand("index", "generalized index of a cycle around a point");
  add_common(index, in, true);
  index->add_option("--path", path, "path or cycle file")->required()->check(CLI::ExistingFile);
  index->add_option("--point", point, "point file")->required()->check(CLI::ExistingFile);

  auto* cif = app.add_subcommand("cif", "Cauchy integral formula for a value or derivative");
  add_common(cif, in, true);
  cif->add_option("--function", function, "function file")->required()->check(CLI::ExistingFile);
  cif->add_option("--path", path, "path or cycle file")->required()->check(CLI::ExistingFile);
  cif->add_option("--point", point, "point file")->required()->check(CLI::ExistingFile);
  cif->add_option("--order", order, "derivative order")->capture_default_str();

  auto* series = app.add_subcommand("series", "radius of convergence and evaluation");
  add_common(series, in, true);
  series->add_option("--function", function, "series or canonical-form file")->required()->check(CLI::ExistingFile);
  series->add_option("--point", point, "point file")->required()->check(CLI::ExistingFile);

  auto* invert = app.add_subcommand("invert", "Newton inversion of a polynomial map");
  add_common(invert, in, true);
  invert->add_option("--function", function, "polynomial file")->required()->check(CLI::ExistingFile);
  invert->add_option("--value", value, "target value file")->required()->check(CLI::ExistingFile);
  invert->add_option("--guess", guess, "initial guess file (default: the target value)")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*validate) return cmd_validate(in, out);
    if (*decompose) return cmd_decompose(in, out);
    if (*crgen) return cmd_crgen(in, format, form, out);
    if (*check) return cmd_check(in, function, point, step, out);
    if (*index) return cmd_index(in, path, point, out);
    if (*cif) return cmd_cif(in, function, path, point, order, out);
    if (*series) return cmd_series(in, function, point, out);
    if (*invert) return cmd_invert(in, function, value, guess, out);
  } catch (const io::SchemaError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    if (in.json) {
      out << json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump(2) << "\n";
    } else {
      out << "invalid: " << e.what() << "\n";
    }
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace holoalg::cli

#pragma once

// JSON file formats for algebras, morphisms, functions, paths and points.
// Complex numbers are [re, im]; an element is a list of n complex numbers.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "holoalg/contour.hpp"
#include "holoalg/decomposition.hpp"
#include "holoalg/morphism.hpp"
#include "holoalg/series.hpp"

namespace holoalg::io {

using json = nlohmann::json;

// Malformed input (as opposed to a mathematically invalid one, which raises
// holoalg::Error).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_json(const std::filesystem::path& file);

cd parse_complex(const json& j);
json to_json(cd z);

Vector parse_vector(const json& j, std::size_t dim);
json to_json(const Vector& v);
json to_json(const Element& e);

StructureTensor parse_tensor(const json& j);
AlgebraPtr parse_algebra(const json& j);
json algebra_to_json(const Algebra& a);

Morphism parse_morphism(const json& j, const AlgebraPtr& source, const AlgebraPtr& target);
json morphism_to_json(const Morphism& phi);
// The "source" and "target" names of a morphism file.
std::pair<std::string, std::string> morphism_names(const json& j);

// A bare element list or {"point": [...]}.
Element parse_point(const json& j, const AlgebraPtr& algebra);

// {"type":"poly","center":[elem],"coeffs":[[elem of B], ...]}.
PowerSeries parse_polynomial(const json& j, const Setting& setting);
json polynomial_to_json(const PowerSeries& s);

// {"type":"canonical","scalar_taylor":[[elem of B], ...],"center":[re,im],"height":nu}.
CanonicalForm parse_canonical(const json& j, const Setting& setting);

using FunctionData = std::variant<PowerSeries, CanonicalForm>;
FunctionData parse_function(const json& j, const Setting& setting);

Path parse_path(const json& j, const AlgebraPtr& algebra);
json path_to_json(const Path& p);
// A cycle file {"terms": [...]} or a single closed path.
Cycle parse_cycle(const json& j, const AlgebraPtr& algebra);

json decomposition_to_json(const Decomposition& d, const Profile& p);
json pde_to_json(const PDESystem& s);

}  // namespace holoalg::io

#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "mackeykit/ktheory.hpp"
#include "mackeykit/spectral.hpp"

namespace mackeykit {

using Json = nlohmann::ordered_json;

/// Malformed input (bad JSON shape, unknown labels, wrong dimensions).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json load_json_file(const std::string& path);

/// A group: a built-in name, {"kind": "table", "table": [[...]]} or
/// {"kind": "perm", "degree": n, "generators": [[...]]}.
GroupPtr group_from_json(const Json& j);
Json group_to_json(const GroupPtr& g);
/// A built-in name or the path of a JSON file holding a group.
GroupPtr resolve_group(const std::string& arg);

/// Integer matrices are lists of rows.  Empty dimensions accept [] too.
Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);
Json matrix_to_json(const Matrix& m);
Vector vector_from_json(const Json& j, std::size_t n);
Json vector_to_json(const Vector& v);
/// Moduli of the generators, 0 standing for Z.
Json abgroup_to_json(const AbGroup& a);
AbGroup abgroup_from_json(const Json& j);

/// "pt", a subgroup-class label (the orbit G/H), {"orbits": [[label, mult], ...]}
/// or {"size": n, "action": [[image of each point] per element]}.  A
/// "group" key overrides the default group.
GSet gset_from_json(const Json& j, const GroupPtr& g);
Json gset_to_json(const GSet& x);
/// A GSet given inline as a label or as a path to a JSON file.
GSet resolve_gset(const std::string& arg, const GroupPtr& g);

/// {"source": X, "target": Y, "terms": [{"class": label, "point": p, "coefficient": c}]}
BurnsideElement span_from_json(const Json& j, const GroupPtr& g);
Json span_to_json(const BurnsideElement& e);

Representation representation_from_json(const Json& j, const GroupPtr& g);

/// Mackey functors: {"kind": "mackey", "group", "levels": {label: moduli},
/// "maps": [{"source", "target", "point", "res", "tr"}]} over the generating
/// maps, or one of the shortcuts "burnside", "representable", "fixed_point",
/// "k0".
/// A "group" key may be omitted when `fallback` is given.
MackeyFunctor mackey_from_json(const Json& j, const ValidationOptions& opts = {Validation::kStructural, 0, 1},
                               const GroupPtr& fallback = nullptr);
Json mackey_to_json(const MackeyFunctor& m);
/// Level invariants keyed by label.
Json mackey_levels_json(const MackeyFunctor& m);
Json morphism_to_json(const MackeyMorphism& f);
std::vector<Matrix> components_from_json(const Json& j, const MackeyFunctor& source, const MackeyFunctor& target);

/// The raw pieces of a Green functor file, before validation.
struct GreenData {
  MackeyFunctor underlying;
  std::vector<Matrix> tables;
  std::vector<Vector> units;
};
GreenData green_data_from_json(const Json& j, const GroupPtr& fallback = nullptr);
/// {"kind": "green", "mackey", "tables": {label: matrix}, "units": {label: vector}}
/// or "burnside_green", "fixed_point_green" (with "modulus"), "k0_green".
GreenFunctor green_from_json(const Json& j, const GroupPtr& fallback = nullptr);
/// A ring together with the kind it was built from, which decides how plain
/// Mackey functors become modules over it.
struct RingInput {
  GreenFunctor ring;
  std::string kind;
};
RingInput ring_from_json(const Json& j, const GroupPtr& fallback = nullptr);
Json green_to_json(const GreenFunctor& r);

/// {"kind": "module", "ring", "mackey", "tables"} or "regular", "burnside_module",
/// "scalar", "free" (with "orbits").  When `ring` is given it replaces the
/// file's ring, and a plain Mackey functor is accepted over the Burnside ring
/// (every Mackey functor) or a fixed-point ring (as a scalar module).
GreenModule module_from_json(const Json& j, const RingInput* ring = nullptr);
Json module_to_json(const GreenModule& m);

/// {"kind": "filtered_complex", "group", "summands": [{"degree", "weight", "mackey"}],
/// "blocks": [{"from", "to", "components": {label: matrix}}]} or
/// {"kind": "tor_skeletal", "ring", "left", "right", "pmax"}.
FilteredComplex filtered_complex_from_json(const Json& j);
Json filtered_complex_to_json(const FilteredComplex& f);

}  // namespace mackeykit

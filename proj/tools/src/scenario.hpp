#pragma once

// Scenario files: one JSON object per analysis, or an array of them.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "aqt/ccr_gaussian.hpp"
#include "aqt/free_field.hpp"
#include "aqt/qubit_chain.hpp"

namespace aqt::cli {

enum class Kind { gns, equiv, qubit, group, ccr, field, symmetry };

std::string to_string(Kind k);
std::optional<Kind> kind_from_string(const std::string& s);
const std::vector<Kind>& all_kinds();

/// Schema or syntax violation with the offending location: a JSON pointer
/// for schema errors, line:column for syntax errors.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string source, std::string location, const std::string& message);
  const std::string& source() const { return source_; }
  const std::string& location() const { return location_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string source_;
  std::string location_;
  std::string detail_;
};

struct StateSpec {
  std::vector<std::size_t> blocks;
  std::vector<Matrix> densities;
};

struct GnsParams {
  StateSpec state;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
};

struct EquivParams {
  std::vector<std::size_t> blocks;
  std::vector<Matrix> first;
  std::vector<Matrix> second;
};

struct QubitParams {
  QubitConfig first;
  QubitConfig second;
  std::size_t window = kDefectWindow;
  std::size_t csv_sites = 50;
};

struct GroupParams {
  enum class Source { cyclic, symmetric, table };
  Source source = Source::cyclic;
  std::size_t n = 2;
  std::vector<std::vector<std::size_t>> table;
  enum class Function { delta, constant, values, character };
  Function function = Function::delta;
  std::size_t element = 0;    // delta
  std::size_t character = 0;  // character index
  Complex constant = 1.0;
  std::vector<Complex> values;
};

struct CcrParams {
  RealMatrix gram;
  RealMatrix k;
  std::size_t max_order = 4;
  std::size_t samples = 10;
  std::size_t cocycle_samples = 100;
  std::uint64_t seed = 1;
  std::size_t max_occupation = kDefaultMaxOccupation;
  std::optional<VacuumShift> shift;
  std::optional<RealVector> shift_probe;
  std::optional<ModeFamily> family;
};

struct FieldParams {
  GridSpec grid;  // cutoff defaults to 6 * mass
  std::size_t pairs = 20;
  std::uint64_t seed = 1;
  double kg_step = 0.05;
  Point4 kg_point{0.4, 0.3, -0.2, 0.5};
  std::optional<double> witness_mass;
  std::optional<EuclideanSpec> euclidean;
  double profile_step = 0.1;
  std::size_t profile_count = 30;
};

struct AutomorphismSpec {
  std::vector<Matrix> unitary;
  std::vector<std::size_t> permutation;
};

struct SymmetryParams {
  StateSpec state;
  std::vector<AutomorphismSpec> group;
  bool multipliers = false;
  struct Flow {
    std::vector<Matrix> generator;
    std::vector<Matrix> element;
    double step = 1e-3;
  };
  std::optional<Flow> flow;
};

using Params = std::variant<GnsParams, EquivParams, QubitParams, GroupParams, CcrParams, FieldParams, SymmetryParams>;

struct Scenario {
  Kind kind = Kind::gns;
  std::string name;
  std::string source;  // file name or demo label, for diagnostics
  Params params;
  std::map<std::string, double> tolerances;  // scenario overrides
  std::optional<std::string> report_path;
  std::optional<std::string> csv_dir;
};

/// Tolerance keys each kind accepts, with their defaults.
const std::map<std::string, double>& default_tolerances(Kind k);

/// Parses a document holding one scenario object or an array of them.
/// Names default to the file stem, or "<stem>.<index>" inside an array.
std::vector<Scenario> parse_scenarios(const std::string& text, const std::string& source);

/// Parses a document that must hold exactly one scenario.
Scenario parse_scenario(const std::string& text, const std::string& source = "<input>");

}  // namespace aqt::cli

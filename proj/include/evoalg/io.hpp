#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "evoalg/algebra.hpp"
#include "evoalg/cell_space.hpp"
#include "evoalg/graph.hpp"
#include "evoalg/measure.hpp"
#include "evoalg/structure.hpp"
#include "evoalg/thermo.hpp"

namespace evoalg {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// A finite scenario: labelled graph, state space and measure descriptor.
/// Weight measures are resolved at load time; Hamiltonian measures lazily,
/// so budget checks on the algebra can run before any enumeration.
struct Scenario {
  std::vector<std::string> vertex_labels;
  Graph graph{1};
  StateSpace states{{"1"}};
  std::optional<Measure> weights;
  std::optional<Hamiltonian> hamiltonian;
  Json analyses = Json::object();

  Vertex vertex_index(std::string_view label) const;
  CellSpace cell_space() const { return CellSpace(graph.vertex_count(), states.size()); }
  /// The explicit weights, or the Gibbs measure of the Hamiltonian.
  Measure measure() const;
};

/// Throws ValidationError naming the offending field.
Scenario parse_scenario(const Json& doc);
Json load_json(const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

/// Limit sweep over beta values and lattice boxes.
struct LimitScenario {
  VolumeScheme scheme;  // scheme.beta is overwritten per sweep entry
  std::vector<double> betas;
  std::vector<std::pair<TailPair, TailPair>> pairs;  // (phi, psi)
  StateSpace states{{"1"}};
};

LimitScenario parse_limit_scenario(const Json& doc);

void write_matrix_csv(std::ostream& out, const HeredityMatrix& m);
/// Reads "row,col,value" triples (header optional). Throws ValidationError.
HeredityMatrix read_matrix_csv(std::istream& in);
Json matrix_json(const EvolutionAlgebra& e);
HeredityMatrix read_matrix_json(const Json& doc);

Json summary_json(const EvolutionAlgebra& e);
Json hierarchy_json(const EvolutionAlgebra& e, const Hierarchy& h, const std::optional<StructureCounts>& counts);
std::string hierarchy_text(const EvolutionAlgebra& e, const Hierarchy& h, const std::optional<StructureCounts>& counts);
Json counts_json(const StructureCounts& c);
Json iso_json(const IsoVerdict& v);
Json low_temp_json(const LowTempReport& r, const StateSpace& states);

/// Deterministic rendering: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace evoalg

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evoalg/cell_space.hpp"
#include "evoalg/graph.hpp"
#include "evoalg/measure.hpp"

namespace evoalg {

using Site = std::array<int, 2>;

/// A lattice configuration equal to a single tail state outside a finite pattern.
/// A constant cell has an empty pattern.
struct TailCell {
  State tail = 0;
  std::vector<std::pair<Site, State>> pattern;

  static TailCell constant(State s) { return TailCell{s, {}}; }
  /// Smallest box radius containing every pattern site (0 for constant cells).
  int pattern_radius() const;
  /// The configuration on box; throws ValidationError if the pattern leaves it.
  Cell restrict_to(const LatticeBox& box, const CellSpace& space) const;
  /// "[1]" for a constant cell, "[1|0:2;3:2]" with sites "x" or "x,y".
  std::string label(const StateSpace& states) const;
  bool operator==(const TailCell&) const = default;
};

struct TailPair {
  TailCell first;
  TailCell second;
  std::string label(const StateSpace& states) const;
  bool operator==(const TailPair&) const = default;
};

/// Potts model on nested boxes {-n..n}^d with a common beta and J. A fixed
/// boundary state emulates the extreme measure for that ground state through
/// site fields on the box border; std::nullopt means free boundary.
struct VolumeScheme {
  int dimension = 1;
  std::size_t q = 2;
  double coupling_j = 1.0;
  double beta = 1.0;
  std::vector<int> radii;
  std::optional<State> boundary;

  /// Checks dimension, q, strictly increasing nonnegative radii, beta, and the
  /// enumeration budget of the largest box (BudgetError).
  void validate() const;
};

/// Number of cells q^{(2r+1)^d}, saturating above kGibbsCellBudget.
std::uint64_t box_cell_count(int dimension, std::size_t q, int radius);

Hamiltonian volume_hamiltonian(const VolumeScheme& scheme, const LatticeBox& box);

/// Gibbs measure on one box, ready to evaluate heredity coefficients of
/// restricted pair cells.
class FiniteVolume {
 public:
  FiniteVolume(const VolumeScheme& scheme, int radius);

  const LatticeBox& box() const { return box_; }
  const CellSpace& cells() const { return cells_; }
  const Measure& measure() const { return measure_; }

  PairCell restrict(const TailPair& p) const;
  double coefficient(const TailPair& phi, const TailPair& psi) const;
  /// Sum of the heredity row of phi over the restricted cell space.
  double row_sum(const TailPair& phi) const;

 private:
  LatticeBox box_;
  CellSpace cells_;
  ComponentPartition parts_;
  Measure measure_;
};

double finite_volume_coeff(const VolumeScheme& scheme, int radius, const TailPair& phi, const TailPair& psi);

inline constexpr double kConvergenceGap = 1e-6;

struct CoefficientSequence {
  std::vector<int> radii;
  std::vector<double> values;
  double limit_estimate = 0.0;
  bool converged = false;
};

/// Coefficients over every radius of the scheme; converged when the last two
/// values differ by less than kConvergenceGap.
CoefficientSequence coefficient_sequence(const VolumeScheme& scheme, const TailPair& phi, const TailPair& psi);

struct CandidateTrend {
  State state = 0;
  /// Generator index of (sigma_i, sigma_i) in the largest box.
  std::size_t generator = 0;
  /// mass[b][r]: product-measure mass of (sigma_i, sigma_i) at betas[b], radii[r].
  std::vector<std::vector<double>> mass;
  bool monotone_in_beta = false;
};

struct LowTempReport {
  int dimension = 1;
  std::size_t q = 2;
  double coupling_j = 1.0;
  std::optional<State> boundary;
  std::vector<int> radii;
  std::vector<double> betas;
  std::vector<CandidateTrend> candidates;
  bool distinct_generators = false;
};

/// Tracks how the mass of each constant diagonal pair (sigma_i, sigma_i) grows
/// with beta; betas must be strictly increasing and nonnegative.
LowTempReport low_temp_limit_algebras(int dimension, std::size_t q, const std::vector<int>& radii,
                                      const std::vector<double>& betas, double coupling_j = 1.0,
                                      std::optional<State> boundary = std::nullopt);

}  // namespace evoalg

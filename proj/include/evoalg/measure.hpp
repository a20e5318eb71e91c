#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "evoalg/cell_space.hpp"
#include "evoalg/graph.hpp"

namespace evoalg {

/// Strictly positive probability vector over the cells of a finite cell space,
/// indexed by canonical cell index.
class Measure {
 public:
  /// Normalizes raw to sum 1. Rejects empty input and nonpositive or non-finite entries.
  static Measure from_weights(std::span<const double> raw);

  std::size_t size() const { return weights_.size(); }
  double operator()(Cell c) const { return weights_.at(c.index); }
  std::span<const double> weights() const { return weights_; }

 private:
  explicit Measure(std::vector<double> w) : weights_(std::move(w)) {}
  std::vector<double> weights_;
};

/// Entries below this after normalization make a measure unusable.
inline constexpr double kPositivityFloor = 1e-300;
/// Largest cell space gibbs_measure will enumerate.
inline constexpr std::uint64_t kGibbsCellBudget = 1'000'000;

/// Pairwise (cascade) summation; the reduction tree depends only on the length.
double pairwise_sum(std::span<const double> values);

/// Single-site fields plus pair couplings on edges, at inverse temperature beta.
/// Energies are H(sigma) = sum_x field[x][sigma_x] + sum_{<x,y>} coupling[e][sigma_x][sigma_y].
class Hamiltonian {
 public:
  /// All couplings and fields start at zero. beta must be finite and >= 0.
  Hamiltonian(Graph graph, std::size_t k, double beta);

  /// H = -J sum_{<x,y>} delta(sigma_x, sigma_y).
  static Hamiltonian potts(Graph graph, std::size_t q, double coupling_j, double beta);

  const Graph& graph() const { return graph_; }
  std::size_t states() const { return k_; }
  double beta() const { return beta_; }
  CellSpace cell_space() const { return CellSpace(graph_.vertex_count(), k_); }

  /// matrix is k*k, row-major in (state at edge.a, state at edge.b).
  void set_pair_coupling(std::size_t edge_index, std::span<const double> matrix);
  void set_site_field(Vertex v, std::span<const double> field);
  void add_site_field(Vertex v, State s, double energy);

  double coupling(std::size_t edge_index, State at_a, State at_b) const {
    return pair_[edge_index][at_a * k_ + at_b];
  }
  double field(Vertex v, State s) const { return site_[v][s]; }

  double energy(std::span<const State> assignment) const;
  double energy(const CellSpace& space, Cell c) const { return energy(space.decode(c)); }
  /// Sum of the potentials touching the domain; sites outside it read their
  /// values from the same assignment (the boundary condition).
  double conditional_energy(std::span<const State> assignment, const std::vector<bool>& in_domain) const;

 private:
  Graph graph_;
  std::size_t k_;
  double beta_;
  std::vector<std::vector<double>> pair_;
  std::vector<std::vector<double>> site_;
};

/// Boltzmann measure exp(-beta H)/Z on the full cell space, free boundary.
/// Throws BudgetError above kGibbsCellBudget cells, ValidationError if a weight
/// underflows kPositivityFloor.
Measure gibbs_measure(const Hamiltonian& h);

/// Conditioning domain D with a boundary assignment on its complement.
struct ConditionalSpec {
  VertexSet domain;
  SubCell boundary;
};

/// Conditional probability of sd on D given the boundary, using the conditional Hamiltonian.
double conditional_prob(const Hamiltonian& h, const ConditionalSpec& spec, const SubCell& sd);

struct DlrResult {
  double lhs = 0.0;  // marginal of the Gibbs measure
  double rhs = 0.0;  // boundary-averaged conditional probability
  double gap = 0.0;
};

/// Compares both sides of the DLR equation for one domain and local configuration.
DlrResult dlr_check(const Hamiltonian& h, const VertexSet& domain, const SubCell& sd);
/// Same, reusing a measure already computed with gibbs_measure(h).
DlrResult dlr_check(const Hamiltonian& h, const Measure& mu, const VertexSet& domain, const SubCell& sd);

/// Product-measure mass sum mu(first) mu(second) over the given pair cells.
double product_mass(const Measure& mu, std::span<const PairCell> pairs);

}  // namespace evoalg

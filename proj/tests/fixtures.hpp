#pragma once

#include <random>
#include <string>
#include <vector>

#include "evoalg/algebra.hpp"
#include "evoalg/cell_space.hpp"
#include "evoalg/graph.hpp"
#include "evoalg/measure.hpp"

namespace fixtures {

using namespace evoalg;

/// The two-vertex graphs of the worked examples: one edge, or none.
inline Graph edge_graph() { return Graph(2, {{0, 1}}); }
inline Graph edgeless_pair() { return Graph(2); }
inline StateSpace alleles() { return StateSpace({"a", "A"}); }

/// Cells in the examples' numbering: sigma_1..4 = (a,a), (a,A), (A,a), (A,A),
/// written vertex 1 first.
inline Cell sigma(int i) {
  static const char* labels[] = {"(a,a)", "(a,A)", "(A,a)", "(A,A)"};
  return parse_cell_label(CellSpace(2, 2), alleles(), labels[i - 1]);
}

/// Generator phi_ij = (sigma_i, sigma_j).
inline std::size_t phi(int i, int j) { return CellSpace(2, 2).pair_index(PairCell{sigma(i), sigma(j)}); }

/// mu(sigma_i) = p[i-1], laid out by canonical index.
inline Measure example_measure(const std::vector<double>& p) {
  std::vector<double> raw(4);
  for (int i = 1; i <= 4; ++i) raw[sigma(i).index] = p[i - 1];
  return Measure::from_weights(raw);
}

inline const std::vector<double>& example_p() {
  static const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
  return p;
}

inline EvolutionAlgebra example1(const std::vector<double>& p = example_p()) {
  return build_algebra(edge_graph(), alleles(), example_measure(p));
}
inline EvolutionAlgebra example2(const std::vector<double>& p = example_p()) {
  return build_algebra(edgeless_pair(), alleles(), example_measure(p));
}

inline Measure random_measure(std::size_t cells, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> raw(cells);
  for (double& x : raw) x = u(rng);
  return Measure::from_weights(raw);
}

/// Every graph on n vertices, one per subset of the possible edges.
inline std::vector<Graph> all_graphs(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> possible;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) possible.emplace_back(a, b);
  std::vector<Graph> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << possible.size()); ++mask) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t i = 0; i < possible.size(); ++i)
      if (mask >> i & 1U) edges.push_back(possible[i]);
    out.emplace_back(n, edges);
  }
  return out;
}

inline std::vector<std::pair<std::size_t, std::size_t>> edge_list(const Graph& g) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& e : g.edges()) out.emplace_back(e.a, e.b);
  return out;
}

}  // namespace fixtures

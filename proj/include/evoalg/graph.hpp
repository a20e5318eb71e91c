#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <utility>
#include <vector>

namespace evoalg {

using Vertex = std::size_t;
using VertexSet = std::vector<Vertex>;

struct Edge {
  Vertex a;
  Vertex b;
  auto operator<=>(const Edge&) const = default;
};

/// Finite simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  /// Throws ValidationError on loops, repeated edges or out-of-range endpoints.
  explicit Graph(std::size_t vertex_count, const std::vector<std::pair<Vertex, Vertex>>& edges = {});

  std::size_t vertex_count() const { return vertex_count_; }
  /// Edges normalized to a < b and sorted.
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_.at(v); }
  bool has_edge(Vertex x, Vertex y) const;

  bool operator==(const Graph& other) const {
    return vertex_count_ == other.vertex_count_ && edges_ == other.edges_;
  }

 private:
  std::size_t vertex_count_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

/// Maximal connected subgraphs, ordered by smallest vertex label.
struct ComponentPartition {
  std::vector<VertexSet> blocks;      // each sorted ascending
  std::vector<std::size_t> block_of;  // vertex -> block index

  std::size_t size() const { return blocks.size(); }
};

ComponentPartition components(const Graph& g);

/// Box {-n..n}^d with nearest-neighbour edges. Site i has coordinate coords[i];
/// the first coordinate varies fastest.
struct LatticeBox {
  int dimension = 1;
  int radius = 0;
  Graph graph{1};
  std::vector<std::array<int, 2>> coords;

  std::size_t site_count() const { return coords.size(); }
  bool contains(const std::array<int, 2>& x) const;
  Vertex site_at(const std::array<int, 2>& x) const;
  /// Number of Z^d neighbours of site v lying outside the box.
  int outside_neighbors(Vertex v) const;
};

LatticeBox lattice_box(int dimension, int radius);

}  // namespace evoalg

#include "evoalg/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "evoalg/errors.hpp"

namespace evoalg {

Graph::Graph(std::size_t vertex_count, const std::vector<std::pair<Vertex, Vertex>>& edges)
    : vertex_count_(vertex_count), adjacency_(vertex_count) {
  if (vertex_count == 0) throw ValidationError("graph must have at least one vertex");
  edges_.reserve(edges.size());
  for (auto [x, y] : edges) {
    if (x >= vertex_count || y >= vertex_count) {
      throw ValidationError("edge endpoint out of range: <" + std::to_string(x) + "," +
                            std::to_string(y) + ">");
    }
    if (x == y) throw ValidationError("loop edge at vertex " + std::to_string(x));
    edges_.push_back(Edge{std::min(x, y), std::max(x, y)});
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw ValidationError("repeated edge <" + std::to_string(dup->a) + "," + std::to_string(dup->b) +
                          ">");
  }
  for (const auto& e : edges_) {
    adjacency_[e.a].push_back(e.b);
    adjacency_[e.b].push_back(e.a);
  }
  for (auto& row : adjacency_) std::sort(row.begin(), row.end());
}

bool Graph::has_edge(Vertex x, Vertex y) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{std::min(x, y), std::max(x, y)});
}

ComponentPartition components(const Graph& g) {
  const std::size_t n = g.vertex_count();
  ComponentPartition parts;
  parts.block_of.assign(n, n);
  std::vector<Vertex> stack;
  // Seeds are visited in increasing label order, so blocks come out ordered by
  // their smallest vertex.
  for (Vertex seed = 0; seed < n; ++seed) {
    if (parts.block_of[seed] != n) continue;
    const std::size_t id = parts.blocks.size();
    VertexSet block;
    stack.push_back(seed);
    parts.block_of[seed] = id;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      block.push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (parts.block_of[w] == n) {
          parts.block_of[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(block.begin(), block.end());
    parts.blocks.push_back(std::move(block));
  }
  return parts;
}

bool LatticeBox::contains(const std::array<int, 2>& x) const {
  for (int i = 0; i < dimension; ++i) {
    if (x[i] < -radius || x[i] > radius) return false;
  }
  for (int i = dimension; i < 2; ++i) {
    if (x[i] != 0) return false;
  }
  return true;
}

Vertex LatticeBox::site_at(const std::array<int, 2>& x) const {
  if (!contains(x)) {
    throw ValidationError("site (" + std::to_string(x[0]) + "," + std::to_string(x[1]) +
                          ") outside box of radius " + std::to_string(radius));
  }
  const int side = 2 * radius + 1;
  Vertex v = static_cast<Vertex>(x[0] + radius);
  if (dimension == 2) v += static_cast<Vertex>(side) * static_cast<Vertex>(x[1] + radius);
  return v;
}

int LatticeBox::outside_neighbors(Vertex v) const {
  return 2 * dimension - static_cast<int>(graph.neighbors(v).size());
}

LatticeBox lattice_box(int dimension, int radius) {
  if (dimension != 1 && dimension != 2) {
    throw ValidationError("lattice dimension must be 1 or 2, got " + std::to_string(dimension));
  }
  if (radius < 0) throw ValidationError("lattice radius must be nonnegative");
  LatticeBox box;
  box.dimension = dimension;
  box.radius = radius;
  const int side = 2 * radius + 1;
  const int ny = dimension == 2 ? side : 1;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < side; ++i) {
      box.coords.push_back({i - radius, dimension == 2 ? j - radius : 0});
    }
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v < box.coords.size(); ++v) {
    for (int axis = 0; axis < dimension; ++axis) {
      auto next = box.coords[v];
      ++next[axis];
      if (box.contains(next)) edges.emplace_back(v, box.site_at(next));
    }
  }
  box.graph = Graph(box.coords.size(), edges);
  return box;
}

}  // namespace evoalg

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evoalg/graph.hpp"

namespace evoalg {

/// Zero-based state index; StateSpace carries the printable labels.
using State = std::uint32_t;

class StateSpace {
 public:
  explicit StateSpace(std::vector<std::string> labels);
  /// States labelled "1".."k".
  static StateSpace numbered(std::size_t k);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(State s) const { return labels_.at(s); }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Throws ValidationError for an unknown label.
  State index_of(std::string_view label) const;

  bool operator==(const StateSpace&) const = default;

 private:
  std::vector<std::string> labels_;
};

/// A total assignment vertices -> states, stored as its canonical base-k index
/// (vertex 0 is the least significant digit).
struct Cell {
  std::uint64_t index = 0;
  auto operator<=>(const Cell&) const = default;
};

/// Ordered pair of parents (first, second).
struct PairCell {
  Cell first;
  Cell second;
  auto operator<=>(const PairCell&) const = default;
  bool is_diagonal() const { return first == second; }
};

/// Partial assignment on an explicit list of sites.
struct SubCell {
  VertexSet sites;
  std::vector<State> states;
  bool operator==(const SubCell&) const = default;
};

/// The cell space Phi^Lambda for a fixed vertex count and number of states.
class CellSpace {
 public:
  /// Throws BudgetError when k^n does not fit the enumeration limit.
  CellSpace(std::size_t vertex_count, std::size_t k);

  static constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 31;

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t states() const { return k_; }
  std::uint64_t cell_count() const { return cell_count_; }
  /// k^{2n}; saturates at UINT64_MAX instead of wrapping.
  std::uint64_t pair_count() const;
  std::uint64_t place_value(Vertex v) const { return powers_.at(v); }

  Cell encode(std::span<const State> assignment) const;
  std::vector<State> decode(Cell c) const;
  State state_at(Cell c, Vertex v) const;

  std::size_t pair_index(PairCell p) const {
    return static_cast<std::size_t>(p.first.index * cell_count_ + p.second.index);
  }
  PairCell pair_at(std::size_t index) const {
    return PairCell{Cell{index / cell_count_}, Cell{index % cell_count_}};
  }

  bool operator==(const CellSpace& o) const { return vertex_count_ == o.vertex_count_ && k_ == o.k_; }

 private:
  std::size_t vertex_count_;
  std::size_t k_;
  std::uint64_t cell_count_;
  std::vector<std::uint64_t> powers_;
};

/// Restriction of c to block. Throws ValidationError for out-of-range or repeated vertices.
SubCell restrict(const CellSpace& space, Cell c, const VertexSet& block);

/// Number of components on which the two parents disagree.
std::size_t differing_components(const CellSpace& space, PairCell theta, const ComponentPartition& parts);

/// Children set: cells that agree, component by component, with one of the parents.
/// Sorted by index; 1 to 2^m elements.
std::vector<Cell> children_set(const CellSpace& space, PairCell theta, const ComponentPartition& parts);

/// Pairs of children, Omega_sigma x Omega_sigma, sorted by pair index.
std::vector<PairCell> pair_children(const CellSpace& space, PairCell sigma, const ComponentPartition& parts);

std::string cell_label(const CellSpace& space, const StateSpace& states, Cell c);
std::string pair_label(const CellSpace& space, const StateSpace& states, PairCell p);
/// Parses "(a,A)"; tolerates surrounding whitespace. Throws ValidationError.
Cell parse_cell_label(const CellSpace& space, const StateSpace& states, std::string_view text);

}  // namespace evoalg

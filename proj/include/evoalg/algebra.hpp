#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "evoalg/cell_space.hpp"
#include "evoalg/graph.hpp"
#include "evoalg/measure.hpp"

namespace evoalg {

/// Largest generator count (k^{2n}) build_algebra accepts.
inline constexpr std::uint64_t kAlgebraBudget = 65536;

/// One row of the heredity matrix; cols ascending, values strictly positive.
struct SparseRow {
  std::vector<std::size_t> cols;
  std::vector<double> values;

  double at(std::size_t col) const;
  double sum() const;
  bool operator==(const SparseRow&) const = default;
};

class HeredityMatrix {
 public:
  HeredityMatrix() = default;
  explicit HeredityMatrix(std::vector<SparseRow> rows) : rows_(std::move(rows)) {}

  std::size_t dimension() const { return rows_.size(); }
  /// Throws ValidationError for an out-of-range index.
  const SparseRow& row(std::size_t i) const;
  double at(std::size_t r, std::size_t c) const { return row(r).at(c); }
  std::size_t nonzeros() const;
  /// True iff both matrices have the same dimension and identical nonzero patterns.
  bool same_support(const HeredityMatrix& other) const;

 private:
  std::vector<SparseRow> rows_;
};

/// Heredity coefficient for parents -> child pair: mu^2(child) / mu^2(children of parents),
/// or 0 when child is not a pair of children of the parents.
double heredity_coefficient(const CellSpace& space, const ComponentPartition& parts, const Measure& mu,
                            PairCell parents, PairCell child);

/// The full heredity row for one pair of parents.
SparseRow heredity_row(const CellSpace& space, const ComponentPartition& parts, const Measure& mu, PairCell parents);

/// Evolution algebra over the generator set Omega^2 of a finite graph, state
/// space and strictly positive measure. Immutable once built.
class EvolutionAlgebra {
 public:
  EvolutionAlgebra(Graph graph, StateSpace states, Measure mu);

  const Graph& graph() const { return graph_; }
  const StateSpace& states() const { return states_; }
  const Measure& measure() const { return measure_; }
  const CellSpace& cells() const { return cells_; }
  const ComponentPartition& parts() const { return parts_; }
  const HeredityMatrix& matrix() const { return matrix_; }

  std::size_t dimension() const { return matrix_.dimension(); }
  std::size_t index(PairCell p) const { return cells_.pair_index(p); }
  PairCell generator(std::size_t i) const { return cells_.pair_at(i); }
  const SparseRow& row(std::size_t i) const { return matrix_.row(i); }
  const SparseRow& row(PairCell p) const { return matrix_.row(index(p)); }
  std::string label(std::size_t i) const { return pair_label(cells_, states_, generator(i)); }

 private:
  Graph graph_;
  StateSpace states_;
  Measure measure_;
  CellSpace cells_;
  ComponentPartition parts_;
  HeredityMatrix matrix_;
};

/// Throws BudgetError when k^{2n} > kAlgebraBudget, ValidationError when the
/// measure does not live on k^n cells.
EvolutionAlgebra build_algebra(const Graph& g, const StateSpace& states, const Measure& mu);

/// Sparse linear combination of generators. Coefficients with magnitude below
/// kDropThreshold are removed after every operation.
class AlgebraElement {
 public:
  static constexpr double kDropThreshold = 1e-15;

  AlgebraElement() = default;
  static AlgebraElement generator(std::size_t index, double coefficient = 1.0);

  double coefficient(std::size_t index) const;
  const std::map<std::size_t, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator*=(double alpha);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator*(double alpha, AlgebraElement a) { return a *= alpha; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a += -1.0 * b; }

  /// Adds value to one coefficient without pruning; call prune() when done.
  void accumulate(std::size_t index, double value) { terms_[index] += value; }
  void prune();

 private:
  std::map<std::size_t, double> terms_;
};

/// Largest coefficient-wise absolute difference.
double max_abs_diff(const AlgebraElement& a, const AlgebraElement& b);

/// (sum a_i e_i)^2 = sum a_i^2 e_i^2.
AlgebraElement square(const EvolutionAlgebra& e, const AlgebraElement& x);
/// x . y = sum a_i b_i e_i^2; products of distinct generators vanish.
AlgebraElement multiply(const EvolutionAlgebra& e, const AlgebraElement& x, const AlgebraElement& y);

}  // namespace evoalg

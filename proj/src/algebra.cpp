#include "evoalg/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evoalg/errors.hpp"

namespace evoalg {

double SparseRow::at(std::size_t col) const {
  auto it = std::lower_bound(cols.begin(), cols.end(), col);
  if (it == cols.end() || *it != col) return 0.0;
  return values[static_cast<std::size_t>(it - cols.begin())];
}

double SparseRow::sum() const { return pairwise_sum(values); }

const SparseRow& HeredityMatrix::row(std::size_t i) const {
  if (i >= rows_.size()) {
    throw ValidationError("generator index " + std::to_string(i) + " out of range (dimension " +
                          std::to_string(rows_.size()) + ")");
  }
  return rows_[i];
}

std::size_t HeredityMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.cols.size();
  return n;
}

bool HeredityMatrix::same_support(const HeredityMatrix& other) const {
  if (rows_.size() != other.rows_.size()) return false;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].cols != other.rows_[i].cols) return false;
  }
  return true;
}

namespace {

// Sum of mu over the children set; mu^2 of the pair-children set is its square.
double children_mass(const Measure& mu, const std::vector<Cell>& kids) {
  std::vector<double> m;
  m.reserve(kids.size());
  for (Cell c : kids) m.push_back(mu(c));
  return pairwise_sum(m);
}

}  // namespace

double heredity_coefficient(const CellSpace& space, const ComponentPartition& parts, const Measure& mu,
                            PairCell parents, PairCell child) {
  const auto kids = children_set(space, parents, parts);
  const bool inside = std::binary_search(kids.begin(), kids.end(), child.first) &&
                      std::binary_search(kids.begin(), kids.end(), child.second);
  if (!inside) return 0.0;
  const double s = children_mass(mu, kids);
  return (mu(child.first) / s) * (mu(child.second) / s);
}

SparseRow heredity_row(const CellSpace& space, const ComponentPartition& parts, const Measure& mu, PairCell parents) {
  const auto kids = children_set(space, parents, parts);
  const double s = children_mass(mu, kids);
  std::vector<double> share;
  share.reserve(kids.size());
  for (Cell c : kids) share.push_back(mu(c) / s);
  SparseRow row;
  row.cols.reserve(kids.size() * kids.size());
  row.values.reserve(kids.size() * kids.size());
  for (std::size_t a = 0; a < kids.size(); ++a) {
    for (std::size_t b = 0; b < kids.size(); ++b) {
      row.cols.push_back(space.pair_index(PairCell{kids[a], kids[b]}));
      row.values.push_back(share[a] * share[b]);
    }
  }
  return row;
}

EvolutionAlgebra::EvolutionAlgebra(Graph graph, StateSpace states, Measure mu)
    : graph_(std::move(graph)),
      states_(std::move(states)),
      measure_(std::move(mu)),
      cells_(graph_.vertex_count(), states_.size()),
      parts_(components(graph_)) {
  if (cells_.pair_count() > kAlgebraBudget) {
    throw BudgetError("algebra dimension " + std::to_string(states_.size()) + "^(2*" +
                      std::to_string(graph_.vertex_count()) + ") exceeds budget of " + std::to_string(kAlgebraBudget));
  }
  if (measure_.size() != cells_.cell_count()) {
    throw ValidationError("measure has " + std::to_string(measure_.size()) + " entries, cell space has " +
                          std::to_string(cells_.cell_count()));
  }
  std::vector<SparseRow> rows;
  rows.reserve(cells_.pair_count());
  for (std::size_t i = 0; i < cells_.pair_count(); ++i) {
    rows.push_back(heredity_row(cells_, parts_, measure_, cells_.pair_at(i)));
  }
  matrix_ = HeredityMatrix(std::move(rows));
}

EvolutionAlgebra build_algebra(const Graph& g, const StateSpace& states, const Measure& mu) {
  return EvolutionAlgebra(g, states, mu);
}

AlgebraElement AlgebraElement::generator(std::size_t index, double coefficient) {
  AlgebraElement x;
  x.terms_[index] = coefficient;
  x.prune();
  return x;
}

double AlgebraElement::coefficient(std::size_t index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? 0.0 : it->second;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  for (const auto& [i, v] : other.terms_) terms_[i] += v;
  prune();
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(double alpha) {
  for (auto& [i, v] : terms_) v *= alpha;
  prune();
  return *this;
}

void AlgebraElement::prune() {
  std::erase_if(terms_, [](const auto& kv) { return !(std::abs(kv.second) >= kDropThreshold); });
}

double max_abs_diff(const AlgebraElement& a, const AlgebraElement& b) {
  double worst = 0.0;
  for (const auto& [i, v] : a.terms()) worst = std::max(worst, std::abs(v - b.coefficient(i)));
  for (const auto& [i, v] : b.terms()) worst = std::max(worst, std::abs(v - a.coefficient(i)));
  return worst;
}

namespace {

void add_scaled_row(const SparseRow& row, double weight, AlgebraElement& out) {
  for (std::size_t j = 0; j < row.cols.size(); ++j) out.accumulate(row.cols[j], weight * row.values[j]);
}

}  // namespace

AlgebraElement square(const EvolutionAlgebra& e, const AlgebraElement& x) { return multiply(e, x, x); }

AlgebraElement multiply(const EvolutionAlgebra& e, const AlgebraElement& x, const AlgebraElement& y) {
  AlgebraElement out;
  // Walk the shorter operand; only shared generators contribute.
  const auto& small = x.terms().size() <= y.terms().size() ? x : y;
  const auto& large = &small == &x ? y : x;
  for (const auto& [i, a] : small.terms()) {
    const double b = large.coefficient(i);
    if (b == 0.0) continue;
    add_scaled_row(e.row(i), a * b, out);
  }
  out.prune();
  return out;
}

}  // namespace evoalg

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "evoalg/algebra.hpp"
#include "evoalg/errors.hpp"

namespace evoalg {

/// Generator indices closed under taking row supports.
struct Subalgebra {
  std::vector<std::size_t> basis;  // ascending
  std::size_t dimension() const { return basis.size(); }
  bool contains(std::size_t generator) const;
  bool includes(const Subalgebra& other) const;
  bool operator==(const Subalgebra&) const = default;
};

/// Least support-closed set containing seed. Throws ValidationError on an empty seed.
Subalgebra generated_subalgebra(const EvolutionAlgebra& e, const std::vector<std::size_t>& seed);

/// tau precedes sigma iff the heredity coefficient sigma -> tau is positive.
bool precedes(const EvolutionAlgebra& e, std::size_t tau, std::size_t sigma);

/// Chain tau_1, ..., tau_n below sigma ending at a diagonal pair (whose children
/// set is itself). Each step moves to a pair with a strictly smaller children
/// set, preferring non-diagonal pairs, lowest index first. A diagonal sigma
/// yields [sigma].
std::vector<std::size_t> descent_chain(const EvolutionAlgebra& e, std::size_t sigma);

/// Leveled decomposition into blocks of mutually reachable generators.
/// Level 0 holds the diagonal singletons; a block's level is one more than the
/// highest level its flows reach.
struct Hierarchy {
  std::vector<std::vector<std::size_t>> blocks;           // sorted members; ordered by (level, first member)
  std::vector<std::size_t> level_of_block;
  std::vector<std::vector<std::size_t>> levels;           // block ids per level
  std::vector<std::pair<std::size_t, std::size_t>> flows; // (from block, to block), from != to, sorted

  std::size_t level_count() const { return levels.size(); }
  std::size_t block_of(std::size_t generator) const;
  bool operator==(const Hierarchy&) const = default;
};

Hierarchy build_hierarchy(const EvolutionAlgebra& e);

struct StructureCounts {
  std::size_t dimension = 0;
  std::size_t one_dimensional = 0;
  std::size_t four_dimensional = 0;
  bool operator==(const StructureCounts&) const = default;
};

/// Counts of the subalgebras generated by one diagonal pair and by the children
/// of one off-diagonal pair (unordered). Connected graphs only; throws
/// ValidationError otherwise.
StructureCounts structure_counts(const EvolutionAlgebra& e);

inline constexpr const char* kIsomorphicVerdict = "isomorphic-per-theorem";
inline constexpr const char* kNotIsomorphicVerdict = "not-isomorphic-per-theorem";

struct IsoVerdict {
  bool support_equal = false;
  bool skeleton_equal = false;
  std::string verdict;
};

/// Compares zero patterns and hierarchy skeletons of two algebras over the same
/// graph and state space. Throws ValidationError when those differ.
IsoVerdict iso_check(const EvolutionAlgebra& a, const EvolutionAlgebra& b);

/// Raised when a proposed symmetry collapse is not consistent.
class CollapseError : public ValidationError {
 public:
  CollapseError(const std::string& what, std::size_t class_index)
      : ValidationError(what), class_index_(class_index) {}
  std::size_t class_index() const { return class_index_; }

 private:
  std::size_t class_index_;
};

inline constexpr double kCollapseTolerance = 1e-10;

/// Squaring table on class representatives: rows[c][d] is the total heredity
/// coefficient from a member of class c into class d.
struct CollapseTable {
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::vector<double>> rows;
};

/// classes must partition the generator set; every member of a class must have
/// the same aggregated row within kCollapseTolerance, else CollapseError.
CollapseTable collapse_by_symmetry(const EvolutionAlgebra& e, const std::vector<std::vector<std::size_t>>& classes);

/// "e3^2 = 0.25 e1 + 0.5 e3 + 0.25 e6", one line per class; names default to e1, e2, ...
std::vector<std::string> format_relations(const CollapseTable& table, const std::vector<std::string>& names = {});

}  // namespace evoalg

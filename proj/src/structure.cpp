#include "evoalg/structure.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "evoalg/format.hpp"

namespace evoalg {

bool Subalgebra::contains(std::size_t generator) const {
  return std::binary_search(basis.begin(), basis.end(), generator);
}

bool Subalgebra::includes(const Subalgebra& other) const {
  return std::includes(basis.begin(), basis.end(), other.basis.begin(), other.basis.end());
}

Subalgebra generated_subalgebra(const EvolutionAlgebra& e, const std::vector<std::size_t>& seed) {
  if (seed.empty()) throw ValidationError("subalgebra seed must be nonempty");
  std::vector<bool> in(e.dimension(), false);
  std::vector<std::size_t> frontier;
  for (std::size_t s : seed) {
    e.row(s);  // range check
    if (!in[s]) {
      in[s] = true;
      frontier.push_back(s);
    }
  }
  while (!frontier.empty()) {
    std::size_t g = frontier.back();
    frontier.pop_back();
    for (std::size_t c : e.row(g).cols) {
      if (!in[c]) {
        in[c] = true;
        frontier.push_back(c);
      }
    }
  }
  Subalgebra out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i]) out.basis.push_back(i);
  }
  return out;
}

bool precedes(const EvolutionAlgebra& e, std::size_t tau, std::size_t sigma) {
  e.row(tau);
  return e.row(sigma).at(tau) > 0.0;
}

std::vector<std::size_t> descent_chain(const EvolutionAlgebra& e, std::size_t sigma) {
  std::vector<std::size_t> chain;
  std::size_t current = sigma;
  if (e.row(current).cols.size() == 1) return {sigma};
  while (e.row(current).cols.size() > 1) {
    const auto& support = e.row(current).cols;
    std::size_t best_wide = e.dimension();
    std::size_t best_single = e.dimension();
    for (std::size_t tau : support) {  // ascending
      const std::size_t size = e.row(tau).cols.size();
      if (size >= support.size()) continue;
      if (size > 1 && best_wide == e.dimension()) best_wide = tau;
      if (size == 1 && best_single == e.dimension()) best_single = tau;
    }
    current = best_wide != e.dimension() ? best_wide : best_single;
    chain.push_back(current);
  }
  return chain;
}

std::size_t Hierarchy::block_of(std::size_t generator) const {
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (std::binary_search(blocks[b].begin(), blocks[b].end(), generator)) return b;
  }
  throw ValidationError("generator " + std::to_string(generator) + " not in hierarchy");
}

namespace {

// Iterative Tarjan over the support digraph. Components are emitted in reverse
// topological order: every component is emitted after all components it reaches.
std::vector<std::vector<std::size_t>> strongly_connected(const EvolutionAlgebra& e) {
  const std::size_t n = e.dimension();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  std::size_t counter = 0;

  struct Frame {
    std::size_t node;
    std::size_t next_edge;
  };
  std::vector<Frame> calls;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    calls.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!calls.empty()) {
      Frame& f = calls.back();
      const auto& cols = e.row(f.node).cols;
      if (f.next_edge < cols.size()) {
        std::size_t w = cols[f.next_edge++];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          calls.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      const std::size_t v = f.node;
      calls.pop_back();
      if (!calls.empty()) low[calls.back().node] = std::min(low[calls.back().node], low[v]);
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
    }
  }
  return out;
}

}  // namespace

Hierarchy build_hierarchy(const EvolutionAlgebra& e) {
  const auto sccs = strongly_connected(e);
  std::vector<std::size_t> comp_of(e.dimension());
  for (std::size_t c = 0; c < sccs.size(); ++c) {
    for (std::size_t g : sccs[c]) comp_of[g] = c;
  }
  std::vector<std::size_t> level(sccs.size(), 0);
  std::vector<std::set<std::size_t>> targets(sccs.size());
  for (std::size_t c = 0; c < sccs.size(); ++c) {
    for (std::size_t g : sccs[c]) {
      for (std::size_t t : e.row(g).cols) {
        if (comp_of[t] != c) targets[c].insert(comp_of[t]);
      }
    }
    // Targets were emitted earlier, so their levels are final.
    for (std::size_t t : targets[c]) level[c] = std::max(level[c], level[t] + 1);
  }

  std::vector<std::size_t> order(sccs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::pair(level[a], sccs[a].front()) < std::pair(level[b], sccs[b].front());
  });
  std::vector<std::size_t> rank(sccs.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

  Hierarchy h;
  for (std::size_t c : order) {
    h.blocks.push_back(sccs[c]);
    h.level_of_block.push_back(level[c]);
    if (h.levels.size() <= level[c]) h.levels.resize(level[c] + 1);
    h.levels[level[c]].push_back(h.blocks.size() - 1);
    for (std::size_t t : targets[c]) h.flows.emplace_back(rank[c], rank[t]);
  }
  std::sort(h.flows.begin(), h.flows.end());
  return h;
}

StructureCounts structure_counts(const EvolutionAlgebra& e) {
  if (e.parts().size() != 1) {
    throw ValidationError("structure counts require a connected graph; this one has " +
                          std::to_string(e.parts().size()) + " components");
  }
  StructureCounts out;
  out.dimension = e.dimension();
  std::set<std::vector<std::size_t>> ones, fours;
  const auto cells = e.cells().cell_count();
  for (std::uint64_t a = 0; a < cells; ++a) {
    auto diag = generated_subalgebra(e, {e.index(PairCell{Cell{a}, Cell{a}})});
    if (diag.dimension() == 1) ones.insert(diag.basis);
    for (std::uint64_t b = a + 1; b < cells; ++b) {
      auto sub = generated_subalgebra(e, {e.index(PairCell{Cell{a}, Cell{b}})});
      if (sub.dimension() == 4) fours.insert(sub.basis);
    }
  }
  out.one_dimensional = ones.size();
  out.four_dimensional = fours.size();
  return out;
}

IsoVerdict iso_check(const EvolutionAlgebra& a, const EvolutionAlgebra& b) {
  if (!(a.graph() == b.graph())) throw ValidationError("isocheck: algebras are built over different graphs");
  if (!(a.states() == b.states())) throw ValidationError("isocheck: algebras use different state spaces");
  IsoVerdict v;
  v.support_equal = a.matrix().same_support(b.matrix());
  v.skeleton_equal = build_hierarchy(a) == build_hierarchy(b);
  v.verdict = v.support_equal && v.skeleton_equal ? kIsomorphicVerdict : kNotIsomorphicVerdict;
  return v;
}

CollapseTable collapse_by_symmetry(const EvolutionAlgebra& e, const std::vector<std::vector<std::size_t>>& classes) {
  const std::size_t n = e.dimension();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> class_of(n, kUnset);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].empty()) throw ValidationError("collapse class " + std::to_string(c + 1) + " is empty");
    for (std::size_t g : classes[c]) {
      if (g >= n) throw ValidationError("collapse class " + std::to_string(c + 1) + " names an unknown generator");
      if (class_of[g] != kUnset) throw ValidationError("generator " + e.label(g) + " appears in two collapse classes");
      class_of[g] = c;
    }
  }
  for (std::size_t g = 0; g < n; ++g) {
    if (class_of[g] == kUnset) throw ValidationError("generator " + e.label(g) + " is in no collapse class");
  }

  auto aggregate = [&](std::size_t g) {
    std::vector<double> out(classes.size(), 0.0);
    const auto& r = e.row(g);
    for (std::size_t j = 0; j < r.cols.size(); ++j) out[class_of[r.cols[j]]] += r.values[j];
    return out;
  };

  CollapseTable table;
  table.classes = classes;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    auto rep = aggregate(classes[c].front());
    for (std::size_t m = 1; m < classes[c].size(); ++m) {
      auto other = aggregate(classes[c][m]);
      double gap = 0.0;
      for (std::size_t d = 0; d < rep.size(); ++d) gap = std::max(gap, std::abs(rep[d] - other[d]));
      if (gap > kCollapseTolerance) {
        throw CollapseError("collapse class " + std::to_string(c + 1) + ": squares of " + e.label(classes[c].front()) +
                                " and " + e.label(classes[c][m]) + " differ by " + format_double(gap) +
                                " after aggregation",
                            c);
      }
    }
    table.rows.push_back(std::move(rep));
  }
  return table;
}

std::vector<std::string> format_relations(const CollapseTable& table, const std::vector<std::string>& names) {
  auto name = [&](std::size_t c) { return c < names.size() ? names[c] : "e" + std::to_string(c + 1); };
  std::vector<std::string> lines;
  for (std::size_t c = 0; c < table.rows.size(); ++c) {
    std::ostringstream line;
    line << name(c) << "^2 =";
    bool first = true;
    for (std::size_t d = 0; d < table.rows[c].size(); ++d) {
      if (table.rows[c][d] == 0.0) continue;
      line << (first ? " " : " + ") << format_double(table.rows[c][d]) << ' ' << name(d);
      first = false;
    }
    if (first) line << " 0";
    lines.push_back(line.str());
  }
  return lines;
}

}  // namespace evoalg

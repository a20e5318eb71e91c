#include "evoalg/cell_space.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "evoalg/errors.hpp"

namespace evoalg {

StateSpace::StateSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw ValidationError("state space must contain at least one state");
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw ValidationError("state label must be nonempty");
    if (l.find_first_of("(),") != std::string::npos) {
      throw ValidationError("state label '" + l + "' may not contain '(', ')' or ','");
    }
    if (!seen.insert(l).second) throw ValidationError("duplicate state label '" + l + "'");
  }
}

StateSpace StateSpace::numbered(std::size_t k) {
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= k; ++i) labels.push_back(std::to_string(i));
  return StateSpace(std::move(labels));
}

State StateSpace::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw ValidationError("unknown state label '" + std::string(label) + "'");
  return static_cast<State>(it - labels_.begin());
}

CellSpace::CellSpace(std::size_t vertex_count, std::size_t k) : vertex_count_(vertex_count), k_(k) {
  if (k == 0) throw ValidationError("state space must contain at least one state");
  std::uint64_t p = 1;
  powers_.reserve(vertex_count);
  for (std::size_t v = 0; v < vertex_count; ++v) {
    powers_.push_back(p);
    if (p > kMaxCells / k) {
      throw BudgetError("cell space " + std::to_string(k) + "^" + std::to_string(vertex_count) +
                        " exceeds enumeration limit");
    }
    p *= k;
  }
  cell_count_ = p;
}

std::uint64_t CellSpace::pair_count() const {
  if (cell_count_ > std::numeric_limits<std::uint32_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  return cell_count_ * cell_count_;
}

Cell CellSpace::encode(std::span<const State> assignment) const {
  if (assignment.size() != vertex_count_) throw ValidationError("assignment length does not match vertex count");
  std::uint64_t idx = 0;
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    if (assignment[v] >= k_) throw ValidationError("state index out of range");
    idx += assignment[v] * powers_[v];
  }
  return Cell{idx};
}

std::vector<State> CellSpace::decode(Cell c) const {
  std::vector<State> out(vertex_count_);
  std::uint64_t rest = c.index;
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    out[v] = static_cast<State>(rest % k_);
    rest /= k_;
  }
  return out;
}

State CellSpace::state_at(Cell c, Vertex v) const {
  return static_cast<State>((c.index / powers_.at(v)) % k_);
}

SubCell restrict(const CellSpace& space, Cell c, const VertexSet& block) {
  SubCell out;
  std::set<Vertex> seen;
  for (Vertex v : block) {
    if (v >= space.vertex_count()) throw ValidationError("vertex " + std::to_string(v) + " out of range");
    if (!seen.insert(v).second) throw ValidationError("vertex " + std::to_string(v) + " repeated in block");
    out.sites.push_back(v);
    out.states.push_back(space.state_at(c, v));
  }
  return out;
}

namespace {

// Signed index shift that replaces first's states on a block by second's.
std::int64_t block_delta(const CellSpace& space, Cell from, Cell to, const VertexSet& block) {
  std::int64_t delta = 0;
  for (Vertex v : block) {
    delta += (static_cast<std::int64_t>(space.state_at(to, v)) - static_cast<std::int64_t>(space.state_at(from, v))) *
             static_cast<std::int64_t>(space.place_value(v));
  }
  return delta;
}

}  // namespace

std::size_t differing_components(const CellSpace& space, PairCell theta, const ComponentPartition& parts) {
  std::size_t count = 0;
  for (const auto& block : parts.blocks) {
    if (block_delta(space, theta.first, theta.second, block) != 0) ++count;
  }
  return count;
}

std::vector<Cell> children_set(const CellSpace& space, PairCell theta, const ComponentPartition& parts) {
  std::vector<std::int64_t> deltas;
  for (const auto& block : parts.blocks) {
    if (auto d = block_delta(space, theta.first, theta.second, block); d != 0) deltas.push_back(d);
  }
  std::vector<Cell> out;
  out.reserve(std::size_t{1} << deltas.size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << deltas.size()); ++mask) {
    auto idx = static_cast<std::int64_t>(theta.first.index);
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      if (mask >> i & 1U) idx += deltas[i];
    }
    out.push_back(Cell{static_cast<std::uint64_t>(idx)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PairCell> pair_children(const CellSpace& space, PairCell sigma, const ComponentPartition& parts) {
  const auto kids = children_set(space, sigma, parts);
  std::vector<PairCell> out;
  out.reserve(kids.size() * kids.size());
  for (Cell a : kids) {
    for (Cell b : kids) out.push_back(PairCell{a, b});
  }
  return out;
}

std::string cell_label(const CellSpace& space, const StateSpace& states, Cell c) {
  std::string out = "(";
  for (std::size_t v = 0; v < space.vertex_count(); ++v) {
    if (v) out += ',';
    out += states.label(space.state_at(c, v));
  }
  out += ')';
  return out;
}

std::string pair_label(const CellSpace& space, const StateSpace& states, PairCell p) {
  return "(" + cell_label(space, states, p.first) + "," + cell_label(space, states, p.second) + ")";
}

Cell parse_cell_label(const CellSpace& space, const StateSpace& states, std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  std::string_view body = trim(text);
  if (body.size() < 2 || body.front() != '(' || body.back() != ')') {
    throw ValidationError("malformed cell label '" + std::string(text) + "'");
  }
  body = body.substr(1, body.size() - 2);
  std::vector<State> assignment;
  while (true) {
    auto comma = body.find(',');
    assignment.push_back(states.index_of(trim(body.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  if (assignment.size() != space.vertex_count()) {
    throw ValidationError("cell label '" + std::string(text) + "' has " + std::to_string(assignment.size()) +
                          " entries, expected " + std::to_string(space.vertex_count()));
  }
  return space.encode(assignment);
}

}  // namespace evoalg

#include "evoalg/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evoalg/errors.hpp"

namespace evoalg {

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

// Turns log-weights into normalized probabilities, subtracting the maximum first.
std::vector<double> normalize_log_weights(std::vector<double> logw) {
  const double top = *std::max_element(logw.begin(), logw.end());
  for (double& x : logw) x = std::exp(x - top);
  const double z = pairwise_sum(logw);
  for (double& x : logw) x /= z;
  return logw;
}

void check_beta(double beta) {
  if (!std::isfinite(beta) || beta < 0.0) {
    throw ValidationError("beta must be finite and nonnegative, got " + std::to_string(beta));
  }
}

}  // namespace

Measure Measure::from_weights(std::span<const double> raw) {
  if (raw.empty()) throw ValidationError("measure needs at least one cell");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!std::isfinite(raw[i]) || raw[i] <= 0.0) {
      throw ValidationError("weight " + std::to_string(i) + " must be positive and finite");
    }
  }
  std::vector<double> w(raw.begin(), raw.end());
  const double z = pairwise_sum(w);
  if (!std::isfinite(z)) throw ValidationError("weights overflow when summed");
  for (double& x : w) {
    x /= z;
    if (x < kPositivityFloor) throw ValidationError("normalized weight underflows positivity floor");
  }
  return Measure(std::move(w));
}

Hamiltonian::Hamiltonian(Graph graph, std::size_t k, double beta)
    : graph_(std::move(graph)),
      k_(k),
      beta_(beta),
      pair_(graph_.edges().size(), std::vector<double>(k * k, 0.0)),
      site_(graph_.vertex_count(), std::vector<double>(k, 0.0)) {
  if (k == 0) throw ValidationError("state space must contain at least one state");
  check_beta(beta);
}

Hamiltonian Hamiltonian::potts(Graph graph, std::size_t q, double coupling_j, double beta) {
  if (!std::isfinite(coupling_j)) throw ValidationError("Potts coupling J must be finite");
  Hamiltonian h(std::move(graph), q, beta);
  std::vector<double> matrix(q * q, 0.0);
  for (std::size_t s = 0; s < q; ++s) matrix[s * q + s] = -coupling_j;
  for (std::size_t e = 0; e < h.pair_.size(); ++e) h.set_pair_coupling(e, matrix);
  return h;
}

void Hamiltonian::set_pair_coupling(std::size_t edge_index, std::span<const double> matrix) {
  if (edge_index >= pair_.size()) throw ValidationError("edge index out of range");
  if (matrix.size() != k_ * k_) throw ValidationError("pair coupling must be a k x k matrix");
  for (double x : matrix) {
    if (!std::isfinite(x)) throw ValidationError("pair coupling must be finite");
  }
  pair_[edge_index].assign(matrix.begin(), matrix.end());
}

void Hamiltonian::set_site_field(Vertex v, std::span<const double> field) {
  if (v >= site_.size()) throw ValidationError("vertex out of range");
  if (field.size() != k_) throw ValidationError("site field must have k entries");
  for (double x : field) {
    if (!std::isfinite(x)) throw ValidationError("site field must be finite");
  }
  site_[v].assign(field.begin(), field.end());
}

void Hamiltonian::add_site_field(Vertex v, State s, double energy) {
  if (v >= site_.size() || s >= k_) throw ValidationError("site field index out of range");
  site_[v][s] += energy;
}

double Hamiltonian::energy(std::span<const State> assignment) const {
  double e = 0.0;
  for (Vertex v = 0; v < site_.size(); ++v) e += site_[v][assignment[v]];
  const auto& edges = graph_.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) e += coupling(i, assignment[edges[i].a], assignment[edges[i].b]);
  return e;
}

double Hamiltonian::conditional_energy(std::span<const State> assignment, const std::vector<bool>& in_domain) const {
  double e = 0.0;
  for (Vertex v = 0; v < site_.size(); ++v) {
    if (in_domain[v]) e += site_[v][assignment[v]];
  }
  const auto& edges = graph_.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (in_domain[edges[i].a] || in_domain[edges[i].b]) {
      e += coupling(i, assignment[edges[i].a], assignment[edges[i].b]);
    }
  }
  return e;
}

Measure gibbs_measure(const Hamiltonian& h) {
  const CellSpace space = h.cell_space();
  if (space.cell_count() > kGibbsCellBudget) {
    throw BudgetError("Gibbs enumeration over " + std::to_string(space.cell_count()) + " cells exceeds budget of " +
                      std::to_string(kGibbsCellBudget));
  }
  std::vector<double> logw(space.cell_count());
  std::vector<State> digits(space.vertex_count(), 0);
  for (std::uint64_t c = 0; c < space.cell_count(); ++c) {
    logw[c] = -h.beta() * h.energy(digits);
    // odometer step, vertex 0 fastest
    for (std::size_t v = 0; v < digits.size(); ++v) {
      if (++digits[v] < space.states()) break;
      digits[v] = 0;
    }
  }
  auto w = normalize_log_weights(std::move(logw));
  for (double x : w) {
    if (!(x >= kPositivityFloor)) {
      throw ValidationError("Gibbs weight underflows positivity floor; lower beta or the energy scale");
    }
  }
  return Measure::from_weights(w);
}

namespace {

std::vector<bool> domain_mask(std::size_t n, const VertexSet& domain) {
  if (domain.empty()) throw ValidationError("conditioning domain must be nonempty");
  std::vector<bool> mask(n, false);
  for (Vertex v : domain) {
    if (v >= n) throw ValidationError("domain vertex " + std::to_string(v) + " out of range");
    if (mask[v]) throw ValidationError("domain vertex " + std::to_string(v) + " repeated");
    mask[v] = true;
  }
  return mask;
}

// Writes a partial assignment into full, checking it covers exactly the sites
// selected by want (want[v] == true).
void place(const SubCell& part, const std::vector<bool>& want, std::size_t k, std::vector<State>& full,
           const char* what) {
  if (part.sites.size() != part.states.size()) throw ValidationError(std::string(what) + ": sites/states length mismatch");
  std::vector<bool> seen(want.size(), false);
  for (std::size_t i = 0; i < part.sites.size(); ++i) {
    Vertex v = part.sites[i];
    if (v >= want.size() || !want[v] || seen[v]) {
      throw ValidationError(std::string(what) + " is not defined exactly on its required sites");
    }
    if (part.states[i] >= k) throw ValidationError(std::string(what) + ": state out of range");
    seen[v] = true;
    full[v] = part.states[i];
  }
  if (std::count(seen.begin(), seen.end(), true) != std::count(want.begin(), want.end(), true)) {
    throw ValidationError(std::string(what) + " does not cover all of its required sites");
  }
}

}  // namespace

double conditional_prob(const Hamiltonian& h, const ConditionalSpec& spec, const SubCell& sd) {
  const std::size_t n = h.graph().vertex_count();
  const auto in_domain = domain_mask(n, spec.domain);
  std::vector<bool> outside(n);
  for (std::size_t v = 0; v < n; ++v) outside[v] = !in_domain[v];

  std::vector<State> full(n, 0);
  place(spec.boundary, outside, h.states(), full, "boundary condition");
  place(sd, in_domain, h.states(), full, "local configuration");

  const std::vector<State> target = full;
  VertexSet dom = spec.domain;
  std::sort(dom.begin(), dom.end());

  std::vector<double> logw;
  std::size_t target_slot = 0;
  for (Vertex v : dom) full[v] = 0;
  while (true) {
    bool is_target = std::all_of(dom.begin(), dom.end(), [&](Vertex v) { return full[v] == target[v]; });
    if (is_target) target_slot = logw.size();
    logw.push_back(-h.beta() * h.conditional_energy(full, in_domain));
    std::size_t i = 0;
    for (; i < dom.size(); ++i) {
      if (++full[dom[i]] < h.states()) break;
      full[dom[i]] = 0;
    }
    if (i == dom.size()) break;
  }
  return normalize_log_weights(std::move(logw))[target_slot];
}

DlrResult dlr_check(const Hamiltonian& h, const VertexSet& domain, const SubCell& sd) {
  return dlr_check(h, gibbs_measure(h), domain, sd);
}

DlrResult dlr_check(const Hamiltonian& h, const Measure& mu, const VertexSet& domain, const SubCell& sd) {
  const CellSpace space = h.cell_space();
  if (mu.size() != space.cell_count()) throw ValidationError("measure does not match the Hamiltonian's cell space");
  const std::size_t n = space.vertex_count();
  const auto in_domain = domain_mask(n, domain);
  std::vector<State> local(n, 0);
  place(sd, in_domain, h.states(), local, "local configuration");

  VertexSet complement;
  for (Vertex v = 0; v < n; ++v) {
    if (!in_domain[v]) complement.push_back(v);
  }

  std::vector<double> lhs_terms;
  std::vector<double> rhs_terms;
  lhs_terms.reserve(space.cell_count());
  rhs_terms.reserve(space.cell_count());
  for (std::uint64_t c = 0; c < space.cell_count(); ++c) {
    const Cell cell{c};
    const double m = mu(cell);
    const auto states = space.decode(cell);
    bool matches = true;
    for (Vertex v : sd.sites) matches = matches && states[v] == local[v];
    if (matches) lhs_terms.push_back(m);
    ConditionalSpec spec{domain, restrict(space, cell, complement)};
    rhs_terms.push_back(m * conditional_prob(h, spec, sd));
  }
  DlrResult r;
  r.lhs = pairwise_sum(lhs_terms);
  r.rhs = pairwise_sum(rhs_terms);
  r.gap = std::abs(r.lhs - r.rhs);
  return r;
}

double product_mass(const Measure& mu, std::span<const PairCell> pairs) {
  std::vector<double> terms;
  terms.reserve(pairs.size());
  for (const auto& p : pairs) terms.push_back(mu(p.first) * mu(p.second));
  return pairwise_sum(terms);
}

}  // namespace evoalg

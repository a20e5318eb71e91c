#include "evoalg/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

#include "evoalg/algebra.hpp"
#include "evoalg/errors.hpp"

namespace evoalg {

int TailCell::pattern_radius() const {
  int r = 0;
  for (const auto& [site, state] : pattern) r = std::max({r, std::abs(site[0]), std::abs(site[1])});
  return r;
}

Cell TailCell::restrict_to(const LatticeBox& box, const CellSpace& space) const {
  if (tail >= space.states()) throw ValidationError("tail state out of range");
  std::vector<State> assignment(box.site_count(), tail);
  for (const auto& [site, state] : pattern) {
    if (state >= space.states()) throw ValidationError("pattern state out of range");
    if (!box.contains(site)) {
      throw ValidationError("pattern radius " + std::to_string(pattern_radius()) + " exceeds box radius " +
                            std::to_string(box.radius));
    }
    assignment[box.site_at(site)] = state;
  }
  return space.encode(assignment);
}

std::string TailCell::label(const StateSpace& states) const {
  std::string out = "[" + states.label(tail);
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    out += i == 0 ? "|" : ";";
    out += std::to_string(pattern[i].first[0]);
    if (pattern[i].first[1] != 0) out += "," + std::to_string(pattern[i].first[1]);
    out += ":" + states.label(pattern[i].second);
  }
  return out + "]";
}

std::string TailPair::label(const StateSpace& states) const {
  return "(" + first.label(states) + "," + second.label(states) + ")";
}

std::uint64_t box_cell_count(int dimension, std::size_t q, int radius) {
  const std::uint64_t side = 2 * static_cast<std::uint64_t>(radius) + 1;
  const std::uint64_t sites = dimension == 2 ? side * side : side;
  std::uint64_t count = 1;
  for (std::uint64_t i = 0; i < sites; ++i) {
    count *= q;
    if (count > kGibbsCellBudget) return kGibbsCellBudget + 1;
  }
  return count;
}

void VolumeScheme::validate() const {
  if (dimension != 1 && dimension != 2) throw ValidationError("dimension must be 1 or 2");
  if (q < 1) throw ValidationError("q must be at least 1");
  if (!std::isfinite(coupling_j)) throw ValidationError("J must be finite");
  if (!std::isfinite(beta) || beta < 0.0) throw ValidationError("beta must be finite and nonnegative");
  if (radii.empty()) throw ValidationError("radii must be nonempty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] < 0) throw ValidationError("radii must be nonnegative");
    if (i > 0 && radii[i] <= radii[i - 1]) throw ValidationError("radii must be strictly increasing");
  }
  if (boundary && *boundary >= q) throw ValidationError("boundary state out of range");
  if (box_cell_count(dimension, q, radii.back()) > kGibbsCellBudget) {
    throw BudgetError("box of radius " + std::to_string(radii.back()) + " in d=" + std::to_string(dimension) +
                      " with q=" + std::to_string(q) + " exceeds the enumeration budget");
  }
}

Hamiltonian volume_hamiltonian(const VolumeScheme& scheme, const LatticeBox& box) {
  Hamiltonian h = Hamiltonian::potts(box.graph, scheme.q, scheme.coupling_j, scheme.beta);
  if (scheme.boundary) {
    for (Vertex v = 0; v < box.site_count(); ++v) {
      const int outside = box.outside_neighbors(v);
      if (outside > 0) h.add_site_field(v, *scheme.boundary, -scheme.coupling_j * outside);
    }
  }
  return h;
}

namespace {

LatticeBox checked_box(const VolumeScheme& scheme, int radius) {
  if (box_cell_count(scheme.dimension, scheme.q, radius) > kGibbsCellBudget) {
    throw BudgetError("box of radius " + std::to_string(radius) + " exceeds the enumeration budget");
  }
  return lattice_box(scheme.dimension, radius);
}

}  // namespace

FiniteVolume::FiniteVolume(const VolumeScheme& scheme, int radius)
    : box_(checked_box(scheme, radius)),
      cells_(box_.site_count(), scheme.q),
      parts_(components(box_.graph)),
      measure_(gibbs_measure(volume_hamiltonian(scheme, box_))) {}

PairCell FiniteVolume::restrict(const TailPair& p) const {
  return PairCell{p.first.restrict_to(box_, cells_), p.second.restrict_to(box_, cells_)};
}

double FiniteVolume::coefficient(const TailPair& phi, const TailPair& psi) const {
  return heredity_coefficient(cells_, parts_, measure_, restrict(phi), restrict(psi));
}

double FiniteVolume::row_sum(const TailPair& phi) const {
  return heredity_row(cells_, parts_, measure_, restrict(phi)).sum();
}

double finite_volume_coeff(const VolumeScheme& scheme, int radius, const TailPair& phi, const TailPair& psi) {
  scheme.validate();
  if (std::find(scheme.radii.begin(), scheme.radii.end(), radius) == scheme.radii.end()) {
    throw ValidationError("radius " + std::to_string(radius) + " is not part of the volume scheme");
  }
  return FiniteVolume(scheme, radius).coefficient(phi, psi);
}

CoefficientSequence coefficient_sequence(const VolumeScheme& scheme, const TailPair& phi, const TailPair& psi) {
  scheme.validate();
  CoefficientSequence seq;
  seq.radii = scheme.radii;
  for (int r : scheme.radii) seq.values.push_back(FiniteVolume(scheme, r).coefficient(phi, psi));
  seq.limit_estimate = seq.values.back();
  seq.converged = seq.values.size() >= 2 &&
                  std::abs(seq.values[seq.values.size() - 1] - seq.values[seq.values.size() - 2]) < kConvergenceGap;
  return seq;
}

LowTempReport low_temp_limit_algebras(int dimension, std::size_t q, const std::vector<int>& radii,
                                      const std::vector<double>& betas, double coupling_j,
                                      std::optional<State> boundary) {
  if (betas.empty()) throw ValidationError("beta list must be nonempty");
  for (std::size_t i = 1; i < betas.size(); ++i) {
    if (!(betas[i] > betas[i - 1])) throw ValidationError("beta list must be strictly increasing");
  }
  VolumeScheme scheme{dimension, q, coupling_j, betas.front(), radii, boundary};
  for (double b : betas) {
    scheme.beta = b;
    scheme.validate();
  }

  LowTempReport report;
  report.dimension = dimension;
  report.q = q;
  report.coupling_j = coupling_j;
  report.boundary = boundary;
  report.radii = radii;
  report.betas = betas;
  report.candidates.resize(q);
  for (State i = 0; i < q; ++i) {
    report.candidates[i].state = i;
    report.candidates[i].mass.assign(betas.size(), std::vector<double>(radii.size(), 0.0));
  }
  for (std::size_t b = 0; b < betas.size(); ++b) {
    scheme.beta = betas[b];
    for (std::size_t r = 0; r < radii.size(); ++r) {
      const FiniteVolume volume(scheme, radii[r]);
      for (State i = 0; i < q; ++i) {
        const Cell c = TailCell::constant(i).restrict_to(volume.box(), volume.cells());
        report.candidates[i].mass[b][r] = volume.measure()(c) * volume.measure()(c);
        if (b == 0 && r + 1 == radii.size()) report.candidates[i].generator = volume.cells().pair_index({c, c});
      }
    }
  }
  std::set<std::size_t> generators;
  for (auto& cand : report.candidates) {
    generators.insert(cand.generator);
    cand.monotone_in_beta = true;
    for (std::size_t r = 0; r < radii.size(); ++r) {
      for (std::size_t b = 1; b < betas.size(); ++b) {
        // relative slack for rounding in the normalization
        if (cand.mass[b][r] < cand.mass[b - 1][r] * (1.0 - 1e-12)) cand.monotone_in_beta = false;
      }
    }
  }
  report.distinct_generators = generators.size() == q;
  return report;
}

}  // namespace evoalg

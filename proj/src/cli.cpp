#include "evoalg/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "evoalg/algebra.hpp"
#include "evoalg/errors.hpp"
#include "evoalg/format.hpp"
#include "evoalg/io.hpp"
#include "evoalg/structure.hpp"
#include "evoalg/thermo.hpp"

namespace evoalg {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string scenario;
  std::string other;
  std::string out_dir = ".";
  bool to_stdout = false;
  std::string domain;
  bool domain_given = false;
};

class Sink {
 public:
  Sink(const Options& opt, std::ostream& out) : opt_(opt), out_(out) {}

  // With --stdout only the primary artifact is printed.
  void emit(const std::string& file, const std::string& content, bool primary) {
    if (opt_.to_stdout) {
      if (primary) out_ << content;
      return;
    }
    std::error_code ec;
    fs::create_directories(opt_.out_dir, ec);
    const fs::path path = fs::path(opt_.out_dir) / file;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("--out: cannot write '" + path.string() + "'");
    f << content;
  }

 private:
  const Options& opt_;
  std::ostream& out_;
};

void check_algebra_budget(const Scenario& s) {
  if (s.cell_space().pair_count() > kAlgebraBudget) {
    throw BudgetError("algebra dimension " + std::to_string(s.states.size()) + "^(2*" +
                      std::to_string(s.graph.vertex_count()) + ") exceeds budget of " + std::to_string(kAlgebraBudget));
  }
}

EvolutionAlgebra algebra_of(const Scenario& s) {
  check_algebra_budget(s);
  return build_algebra(s.graph, s.states, s.measure());
}

void cmd_build(const Options& opt, std::ostream& out, std::ostream& err) {
  const Scenario s = load_scenario(opt.scenario);
  const EvolutionAlgebra e = algebra_of(s);
  Sink sink(opt, out);
  std::ostringstream csv;
  write_matrix_csv(csv, e.matrix());
  sink.emit("heredity.csv", csv.str(), true);
  sink.emit("heredity.json", dump(matrix_json(e)), false);
  sink.emit("summary.json", dump(summary_json(e)), false);
  err << "built algebra: dimension " << e.dimension() << ", " << e.matrix().nonzeros() << " nonzeros\n";
}

void cmd_hierarchy(const Options& opt, std::ostream& out, std::ostream& err) {
  const Scenario s = load_scenario(opt.scenario);
  const EvolutionAlgebra e = algebra_of(s);
  const Hierarchy h = build_hierarchy(e);
  std::optional<StructureCounts> counts;
  if (e.parts().size() == 1) counts = structure_counts(e);
  Sink sink(opt, out);
  sink.emit("hierarchy.txt", hierarchy_text(e, h, counts), true);
  sink.emit("hierarchy.json", dump(hierarchy_json(e, h, counts)), false);
  err << "hierarchy: " << h.level_count() << " levels\n";
}

void cmd_isocheck(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.other.empty()) throw ValidationError("--other: second scenario is required for isocheck");
  const Scenario a = load_scenario(opt.scenario);
  const Scenario b = load_scenario(opt.other);
  if (!(a.graph == b.graph)) throw ValidationError("--other: scenarios use different graphs");
  if (!(a.states == b.states)) throw ValidationError("--other: scenarios use different state spaces");
  const IsoVerdict v = iso_check(algebra_of(a), algebra_of(b));
  Sink sink(opt, out);
  sink.emit("isocheck.json", dump(iso_json(v)), true);
  err << "isocheck: " << v.verdict << '\n';
}

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

void cmd_limits(const Options& opt, std::ostream& out, std::ostream& err) {
  const LimitScenario ls = parse_limit_scenario(load_json(opt.scenario));
  VolumeScheme scheme = ls.scheme;

  std::ostringstream csv;
  csv << "d,q,beta,radius,phi_label,psi_label,coefficient\n";
  Json sequences = Json::array();
  std::vector<std::vector<std::vector<double>>> values(ls.betas.size(),
                                                       std::vector<std::vector<double>>(ls.pairs.size()));
  for (std::size_t b = 0; b < ls.betas.size(); ++b) {
    scheme.beta = ls.betas[b];
    for (int r : scheme.radii) {
      const FiniteVolume volume(scheme, r);
      for (std::size_t p = 0; p < ls.pairs.size(); ++p) {
        const auto& [phi, psi] = ls.pairs[p];
        const double c = volume.coefficient(phi, psi);
        values[b][p].push_back(c);
        csv << scheme.dimension << ',' << scheme.q << ',' << format_double(scheme.beta) << ',' << r << ','
            << csv_quote(phi.label(ls.states)) << ',' << csv_quote(psi.label(ls.states)) << ',' << format_double(c)
            << '\n';
      }
    }
    for (std::size_t p = 0; p < ls.pairs.size(); ++p) {
      const auto& v = values[b][p];
      const bool converged = v.size() >= 2 && std::abs(v[v.size() - 1] - v[v.size() - 2]) < kConvergenceGap;
      sequences.push_back({{"beta", scheme.beta},
                           {"phi", ls.pairs[p].first.label(ls.states)},
                           {"psi", ls.pairs[p].second.label(ls.states)},
                           {"radii", scheme.radii},
                           {"values", v},
                           {"limit_estimate", v.back()},
                           {"converged", converged}});
    }
  }
  const LowTempReport report = low_temp_limit_algebras(scheme.dimension, scheme.q, scheme.radii, ls.betas,
                                                       scheme.coupling_j, scheme.boundary);
  Json doc = {{"sequences", std::move(sequences)}, {"low_temperature", low_temp_json(report, ls.states)}};
  Sink sink(opt, out);
  sink.emit("limits.csv", csv.str(), true);
  sink.emit("limits.json", dump(doc), false);
  err << "limits: " << ls.pairs.size() << " pairs x " << ls.betas.size() << " betas x " << scheme.radii.size()
      << " radii\n";
}

std::vector<std::string> split_labels(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<VertexSet> dlr_domains(const Options& opt, const Scenario& s) {
  auto to_set = [&](const std::vector<std::string>& labels, const std::string& field) {
    if (labels.empty()) throw ValidationError(field + ": domain must be nonempty");
    VertexSet d;
    for (const auto& l : labels) {
      try {
        d.push_back(s.vertex_index(l));
      } catch (const ValidationError& e) {
        throw ValidationError(field + ": " + e.what());
      }
    }
    std::sort(d.begin(), d.end());
    if (std::adjacent_find(d.begin(), d.end()) != d.end()) throw ValidationError(field + ": repeated vertex");
    return d;
  };
  if (opt.domain_given) return {to_set(split_labels(opt.domain), "--domain")};
  if (s.analyses.contains("dlr") && s.analyses["dlr"].contains("domains")) {
    std::vector<VertexSet> out;
    const Json& ds = s.analyses["dlr"]["domains"];
    if (!ds.is_array()) throw ValidationError("analyses.dlr.domains: expected an array");
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const std::string field = "analyses.dlr.domains[" + std::to_string(i) + "]";
      if (!ds[i].is_array()) throw ValidationError(field + ": expected an array of vertex labels");
      std::vector<std::string> labels;
      for (const auto& l : ds[i]) {
        if (!l.is_string()) throw ValidationError(field + ": expected vertex labels");
        labels.push_back(l.get<std::string>());
      }
      out.push_back(to_set(labels, field));
    }
    return out;
  }
  std::vector<VertexSet> out;
  const std::size_t n = s.graph.vertex_count();
  for (Vertex a = 0; a < n; ++a) out.push_back({a});
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) out.push_back({a, b});
  return out;
}

void cmd_dlr(const Options& opt, std::ostream& out, std::ostream& err) {
  const Scenario s = load_scenario(opt.scenario);
  if (!s.hamiltonian) throw ValidationError("measure: dlr needs a hamiltonian measure descriptor");
  const auto domains = dlr_domains(opt, s);
  const Hamiltonian& h = *s.hamiltonian;
  const Measure mu = gibbs_measure(h);

  Json checks = Json::array();
  double max_gap = 0.0;
  for (const auto& d : domains) {
    const CellSpace local(d.size(), s.states.size());
    for (std::uint64_t c = 0; c < local.cell_count(); ++c) {
      SubCell sd{d, local.decode(Cell{c})};
      const DlrResult r = dlr_check(h, mu, d, sd);
      max_gap = std::max(max_gap, r.gap);
      Json dom = Json::array();
      for (Vertex v : d) dom.push_back(s.vertex_labels[v]);
      checks.push_back({{"domain", std::move(dom)},
                        {"assignment", cell_label(local, s.states, Cell{c})},
                        {"lhs", r.lhs},
                        {"rhs", r.rhs},
                        {"gap", r.gap}});
    }
  }
  Json doc = {{"checks", std::move(checks)}, {"max_gap", max_gap}};
  Sink sink(opt, out);
  sink.emit("dlr.json", dump(doc), true);
  err << "dlr: max gap " << format_double(max_gap) << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evolution algebras of graphs, state spaces and Gibbs measures", "evoalg"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", opt.scenario, "Scenario JSON file")->required();
    cmd->add_option("--out", opt.out_dir, "Output directory (default: working directory)");
    cmd->add_flag("--stdout", opt.to_stdout, "Print the main report to standard output instead of writing files");
  };
  auto* build = app.add_subcommand("build", "Build the heredity matrix and export it");
  auto* hierarchy = app.add_subcommand("hierarchy", "Hierarchy, flows and structure counts");
  auto* isocheck = app.add_subcommand("isocheck", "Compare two algebras over the same graph");
  auto* limits = app.add_subcommand("limits", "Finite-volume coefficient sequences for the Potts model");
  auto* dlr = app.add_subcommand("dlr", "Check the DLR equation by exact enumeration");
  for (auto* cmd : {build, hierarchy, isocheck, limits, dlr}) add_common(cmd);
  isocheck->add_option("--other", opt.other, "Second scenario JSON file")->required();
  auto* domain_opt = dlr->add_option("--domain", opt.domain, "Comma-separated vertex labels of D");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  opt.domain_given = domain_opt->count() > 0;

  try {
    if (build->parsed()) cmd_build(opt, out, err);
    if (hierarchy->parsed()) cmd_hierarchy(opt, out, err);
    if (isocheck->parsed()) cmd_isocheck(opt, out, err);
    if (limits->parsed()) cmd_limits(opt, out, err);
    if (dlr->parsed()) cmd_dlr(opt, out, err);
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace evoalg

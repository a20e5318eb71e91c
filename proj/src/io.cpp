#include "evoalg/io.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "evoalg/errors.hpp"
#include "evoalg/format.hpp"

namespace evoalg {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw ValidationError(field + ": " + why);
}

const Json& require(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing");
  return *it;
}

double as_number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::string as_label(const Json& j, const std::string& path) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  fail(path, "expected a string label");
}

const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

void check_schema(const Json& doc) {
  if (!doc.is_object()) fail("scenario", "expected a JSON object");
  const Json& v = require(doc, "schema_version", "scenario");
  if (!v.is_number_integer() || v.get<int>() != kSchemaVersion) {
    fail("scenario.schema_version", "unsupported version (expected " + std::to_string(kSchemaVersion) + ")");
  }
}

std::vector<double> number_list(const Json& j, const std::string& path, std::size_t expected) {
  as_array(j, path);
  if (j.size() != expected) fail(path, "expected " + std::to_string(expected) + " entries");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<double> square_matrix(const Json& j, const std::string& path, std::size_t k) {
  as_array(j, path);
  if (j.size() != k) fail(path, "expected a " + std::to_string(k) + "x" + std::to_string(k) + " matrix");
  std::vector<double> out;
  for (std::size_t i = 0; i < k; ++i) {
    auto row = number_list(j[i], path + "[" + std::to_string(i) + "]", k);
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

Hamiltonian parse_hamiltonian(const Json& h, const std::string& path, const Scenario& s) {
  const std::size_t k = s.states.size();
  const double beta = as_number(require(h, "beta", path), path + ".beta");
  if (!(beta >= 0.0)) fail(path + ".beta", "must be nonnegative");
  const std::string model = h.contains("model") ? as_label(h["model"], path + ".model") : "general";
  if (model == "potts") {
    const double j = as_number(require(h, "J", path), path + ".J");
    return Hamiltonian::potts(s.graph, k, j, beta);
  }
  if (model != "general") fail(path + ".model", "unknown model '" + model + "'");

  Hamiltonian out(s.graph, k, beta);
  if (h.contains("pair_coupling")) {
    const Json& pc = h["pair_coupling"];
    const std::string pcp = path + ".pair_coupling";
    const auto& edges = s.graph.edges();
    if (pc.is_array() && !pc.empty() && pc[0].is_array()) {
      const auto matrix = square_matrix(pc, pcp, k);
      for (std::size_t e = 0; e < edges.size(); ++e) out.set_pair_coupling(e, matrix);
    } else {
      as_array(pc, pcp);
      for (std::size_t i = 0; i < pc.size(); ++i) {
        const std::string ip = pcp + "[" + std::to_string(i) + "]";
        const Json& edge = as_array(require(pc[i], "edge", ip), ip + ".edge");
        if (edge.size() != 2) fail(ip + ".edge", "expected two vertex labels");
        Vertex x = s.vertex_index(as_label(edge[0], ip + ".edge[0]"));
        Vertex y = s.vertex_index(as_label(edge[1], ip + ".edge[1]"));
        auto it = std::find(edges.begin(), edges.end(), Edge{std::min(x, y), std::max(x, y)});
        if (it == edges.end()) fail(ip + ".edge", "not an edge of the graph");
        auto matrix = square_matrix(require(pc[i], "matrix", ip), ip + ".matrix", k);
        if (x > y) {  // stored orientation is (smaller, larger)
          std::vector<double> t(k * k);
          for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) t[b * k + a] = matrix[a * k + b];
          matrix = std::move(t);
        }
        out.set_pair_coupling(static_cast<std::size_t>(it - edges.begin()), matrix);
      }
    }
  }
  if (h.contains("site_field")) {
    const Json& sf = h["site_field"];
    const std::string sfp = path + ".site_field";
    if (sf.is_array()) {
      const auto field = number_list(sf, sfp, k);
      for (Vertex v = 0; v < s.graph.vertex_count(); ++v) out.set_site_field(v, field);
    } else if (sf.is_object()) {
      for (const auto& [label, values] : sf.items()) {
        out.set_site_field(s.vertex_index(label), number_list(values, sfp + "." + label, k));
      }
    } else {
      fail(sfp, "expected an array or an object keyed by vertex");
    }
  }
  return out;
}

}  // namespace

Vertex Scenario::vertex_index(std::string_view label) const {
  auto it = std::find(vertex_labels.begin(), vertex_labels.end(), label);
  if (it == vertex_labels.end()) throw ValidationError("unknown vertex label '" + std::string(label) + "'");
  return static_cast<Vertex>(it - vertex_labels.begin());
}

Measure Scenario::measure() const {
  if (weights) return *weights;
  if (hamiltonian) return gibbs_measure(*hamiltonian);
  throw ValidationError("measure: scenario has no measure");
}

Scenario parse_scenario(const Json& doc) {
  check_schema(doc);
  Scenario s;

  const Json& g = require(doc, "graph", "scenario");
  const Json& vs = as_array(require(g, "vertices", "graph"), "graph.vertices");
  if (vs.empty()) fail("graph.vertices", "must be nonempty");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    auto label = as_label(vs[i], "graph.vertices[" + std::to_string(i) + "]");
    if (std::find(s.vertex_labels.begin(), s.vertex_labels.end(), label) != s.vertex_labels.end()) {
      fail("graph.vertices[" + std::to_string(i) + "]", "duplicate vertex label '" + label + "'");
    }
    s.vertex_labels.push_back(label);
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  if (g.contains("edges")) {
    const Json& es = as_array(g["edges"], "graph.edges");
    for (std::size_t i = 0; i < es.size(); ++i) {
      const std::string ep = "graph.edges[" + std::to_string(i) + "]";
      if (!es[i].is_array() || es[i].size() != 2) fail(ep, "expected a pair of vertex labels");
      try {
        edges.emplace_back(s.vertex_index(as_label(es[i][0], ep)), s.vertex_index(as_label(es[i][1], ep)));
      } catch (const ValidationError& e) {
        fail(ep, e.what());
      }
    }
  }
  try {
    s.graph = Graph(s.vertex_labels.size(), edges);
  } catch (const ValidationError& e) {
    fail("graph.edges", e.what());
  }

  const Json& st = require(doc, "states", "scenario");
  const Json& labels = st.is_object() ? require(st, "states", "states") : st;
  as_array(labels, "states.states");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < labels.size(); ++i) names.push_back(as_label(labels[i], "states.states[" + std::to_string(i) + "]"));
  try {
    s.states = StateSpace(names);
  } catch (const ValidationError& e) {
    fail("states.states", e.what());
  }

  const Json& m = require(doc, "measure", "scenario");
  if (!m.is_object()) fail("measure", "expected an object");
  if (m.contains("weights")) {
    const Json& w = m["weights"];
    if (!w.is_object()) fail("measure.weights", "expected an object keyed by cell label");
    const CellSpace space = s.cell_space();
    if (space.cell_count() > kGibbsCellBudget) throw BudgetError("measure.weights: cell space exceeds budget");
    std::vector<double> raw(space.cell_count(), 0.0);
    std::vector<bool> seen(raw.size(), false);
    for (const auto& [key, value] : w.items()) {
      Cell c;
      try {
        c = parse_cell_label(space, s.states, key);
      } catch (const ValidationError& e) {
        fail("measure.weights." + key, e.what());
      }
      if (seen[c.index]) fail("measure.weights." + key, "cell given twice");
      seen[c.index] = true;
      raw[c.index] = as_number(value, "measure.weights." + key);
    }
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (!seen[i]) fail("measure.weights", "missing weight for cell " + cell_label(space, s.states, Cell{i}));
    }
    try {
      s.weights = Measure::from_weights(raw);
    } catch (const ValidationError& e) {
      fail("measure.weights", e.what());
    }
  } else if (m.contains("hamiltonian")) {
    try {
      s.hamiltonian = parse_hamiltonian(m["hamiltonian"], "measure.hamiltonian", s);
    } catch (const BudgetError&) {
      throw;
    } catch (const ValidationError& e) {
      const std::string what = e.what();
      throw ValidationError(what.rfind("measure.", 0) == 0 ? what : "measure.hamiltonian: " + what);
    }
  } else if (m.contains("beta")) {
    s.hamiltonian = parse_hamiltonian(m, "measure", s);
  } else {
    fail("measure", "expected 'weights', 'hamiltonian', or pair_coupling/site_field/beta");
  }

  if (doc.contains("analyses")) {
    if (!doc["analyses"].is_object()) fail("analyses", "expected an object");
    s.analyses = doc["analyses"];
  }
  return s;
}

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("--scenario: cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("--scenario: '" + path.string() + "' is not valid JSON: " + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) { return parse_scenario(load_json(path)); }

namespace {

TailCell parse_tail(const Json& j, const std::string& path, const StateSpace& states, int dimension) {
  TailCell t;
  t.tail = states.index_of(as_label(require(j, "tail", path), path + ".tail"));
  if (j.contains("sites")) {
    const Json& sites = as_array(j["sites"], path + ".sites");
    for (std::size_t i = 0; i < sites.size(); ++i) {
      const std::string sp = path + ".sites[" + std::to_string(i) + "]";
      const Json& at = as_array(require(sites[i], "at", sp), sp + ".at");
      if (at.size() != static_cast<std::size_t>(dimension)) fail(sp + ".at", "expected " + std::to_string(dimension) + " coordinates");
      Site site{0, 0};
      for (int a = 0; a < dimension; ++a) site[a] = as_int(at[a], sp + ".at");
      t.pattern.emplace_back(site, states.index_of(as_label(require(sites[i], "state", sp), sp + ".state")));
    }
  }
  return t;
}

TailPair parse_tail_pair(const Json& j, const std::string& path, const StateSpace& states, int dimension) {
  as_array(j, path);
  if (j.size() != 2) fail(path, "expected [first, second] tail cells");
  return TailPair{parse_tail(j[0], path + "[0]", states, dimension), parse_tail(j[1], path + "[1]", states, dimension)};
}

}  // namespace

LimitScenario parse_limit_scenario(const Json& doc) {
  check_schema(doc);
  const Json& l = require(doc, "limits", "scenario");
  LimitScenario out;
  auto& sc = out.scheme;
  sc.dimension = as_int(require(l, "dimension", "limits"), "limits.dimension");
  if (sc.dimension != 1 && sc.dimension != 2) fail("limits.dimension", "must be 1 or 2");
  const int q = as_int(require(l, "q", "limits"), "limits.q");
  if (q < 1) fail("limits.q", "must be at least 1");
  sc.q = static_cast<std::size_t>(q);
  out.states = StateSpace::numbered(sc.q);
  sc.coupling_j = l.contains("J") ? as_number(l["J"], "limits.J") : 1.0;

  const Json& radii = as_array(require(l, "radii", "limits"), "limits.radii");
  for (std::size_t i = 0; i < radii.size(); ++i) sc.radii.push_back(as_int(radii[i], "limits.radii[" + std::to_string(i) + "]"));
  const Json& betas = as_array(require(l, "betas", "limits"), "limits.betas");
  for (std::size_t i = 0; i < betas.size(); ++i) out.betas.push_back(as_number(betas[i], "limits.betas[" + std::to_string(i) + "]"));
  if (out.betas.empty()) fail("limits.betas", "must be nonempty");
  for (std::size_t i = 1; i < out.betas.size(); ++i) {
    if (!(out.betas[i] > out.betas[i - 1])) fail("limits.betas", "must be strictly increasing");
  }
  sc.beta = out.betas.front();

  if (l.contains("boundary")) {
    const std::string b = as_label(l["boundary"], "limits.boundary");
    if (b != "free") {
      try {
        sc.boundary = out.states.index_of(b);
      } catch (const ValidationError&) {
        fail("limits.boundary", "expected \"free\" or a state label 1.." + std::to_string(sc.q));
      }
    }
  }

  if (l.contains("pairs")) {
    const Json& pairs = as_array(l["pairs"], "limits.pairs");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const std::string pp = "limits.pairs[" + std::to_string(i) + "]";
      try {
        out.pairs.emplace_back(parse_tail_pair(require(pairs[i], "phi", pp), pp + ".phi", out.states, sc.dimension),
                               parse_tail_pair(require(pairs[i], "psi", pp), pp + ".psi", out.states, sc.dimension));
      } catch (const ValidationError& e) {
        const std::string what = e.what();
        throw ValidationError(what.rfind("limits.", 0) == 0 ? what : pp + ": " + what);
      }
    }
  } else {
    // Default sweep: every constant parent pair against its first diagonal child.
    for (State i = 0; i < sc.q; ++i) {
      for (State j = 0; j < sc.q; ++j) {
        out.pairs.emplace_back(TailPair{TailCell::constant(i), TailCell::constant(j)},
                               TailPair{TailCell::constant(i), TailCell::constant(i)});
      }
    }
  }
  for (double b : out.betas) {
    sc.beta = b;
    try {
      sc.validate();
    } catch (const BudgetError&) {
      throw;
    } catch (const ValidationError& e) {
      fail("limits", e.what());
    }
  }
  return out;
}

void write_matrix_csv(std::ostream& out, const HeredityMatrix& m) {
  out << "row,col,value\n";
  for (std::size_t i = 0; i < m.dimension(); ++i) {
    const auto& r = m.row(i);
    for (std::size_t j = 0; j < r.cols.size(); ++j) out << i << ',' << r.cols[j] << ',' << format_double(r.values[j]) << '\n';
  }
}

HeredityMatrix read_matrix_csv(std::istream& in) {
  std::map<std::size_t, SparseRow> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t dimension = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || (line_no == 1 && line.rfind("row", 0) == 0)) continue;
    std::istringstream fields(line);
    std::string a, b, c;
    if (!std::getline(fields, a, ',') || !std::getline(fields, b, ',') || !std::getline(fields, c)) {
      throw ValidationError("matrix csv line " + std::to_string(line_no) + ": expected row,col,value");
    }
    std::size_t r = 0, col = 0;
    double v = 0.0;
    try {
      r = std::stoull(a);
      col = std::stoull(b);
      v = std::stod(c);
    } catch (const std::exception&) {
      throw ValidationError("matrix csv line " + std::to_string(line_no) + ": unparsable entry");
    }
    auto& row = rows[r];
    if (!row.cols.empty() && row.cols.back() >= col) {
      throw ValidationError("matrix csv line " + std::to_string(line_no) + ": columns must increase within a row");
    }
    row.cols.push_back(col);
    row.values.push_back(v);
    dimension = std::max({dimension, r + 1, col + 1});
  }
  std::vector<SparseRow> dense(dimension);
  for (auto& [r, row] : rows) dense[r] = std::move(row);
  return HeredityMatrix(std::move(dense));
}

Json matrix_json(const EvolutionAlgebra& e) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < e.dimension(); ++i) {
    Json entries = Json::array();
    const auto& r = e.row(i);
    for (std::size_t j = 0; j < r.cols.size(); ++j) {
      entries.push_back({{"col", r.cols[j]}, {"label", e.label(r.cols[j])}, {"value", r.values[j]}});
    }
    rows.push_back({{"row", i}, {"label", e.label(i)}, {"entries", std::move(entries)}});
  }
  return {{"dimension", e.dimension()}, {"rows", std::move(rows)}};
}

HeredityMatrix read_matrix_json(const Json& doc) {
  const std::size_t dimension = require(doc, "dimension", "matrix").get<std::size_t>();
  const Json& rows = as_array(require(doc, "rows", "matrix"), "matrix.rows");
  std::vector<SparseRow> out(dimension);
  for (const Json& r : rows) {
    const std::size_t i = require(r, "row", "matrix.rows").get<std::size_t>();
    if (i >= dimension) fail("matrix.rows", "row index out of range");
    for (const Json& entry : as_array(require(r, "entries", "matrix.rows"), "matrix.rows.entries")) {
      out[i].cols.push_back(require(entry, "col", "matrix.rows.entries").get<std::size_t>());
      out[i].values.push_back(as_number(require(entry, "value", "matrix.rows.entries"), "matrix.rows.entries.value"));
    }
  }
  return HeredityMatrix(std::move(out));
}

Json summary_json(const EvolutionAlgebra& e) {
  return {{"dimension", e.dimension()},
          {"nonzeros", e.matrix().nonzeros()},
          {"vertices", e.graph().vertex_count()},
          {"states", e.states().size()},
          {"components", e.parts().size()}};
}

Json counts_json(const StructureCounts& c) {
  return {{"dimension", c.dimension}, {"one_dimensional", c.one_dimensional}, {"four_dimensional", c.four_dimensional}};
}

namespace {

Json block_labels(const EvolutionAlgebra& e, const std::vector<std::size_t>& block) {
  Json out = Json::array();
  for (std::size_t g : block) out.push_back(e.label(g));
  return out;
}

std::string block_text(const EvolutionAlgebra& e, const std::vector<std::size_t>& block) {
  std::string out = "{";
  for (std::size_t i = 0; i < block.size(); ++i) out += (i ? ", " : "") + e.label(block[i]);
  return out + "}";
}

}  // namespace

Json hierarchy_json(const EvolutionAlgebra& e, const Hierarchy& h, const std::optional<StructureCounts>& counts) {
  Json levels = Json::array();
  for (const auto& level : h.levels) {
    Json blocks = Json::array();
    for (std::size_t b : level) blocks.push_back(block_labels(e, h.blocks[b]));
    levels.push_back(std::move(blocks));
  }
  Json flows = Json::array();
  for (auto [from, to] : h.flows) {
    flows.push_back({{"from", block_labels(e, h.blocks[from])}, {"to", block_labels(e, h.blocks[to])}});
  }
  Json out = {{"levels", std::move(levels)}, {"flows", std::move(flows)}, {"level_count", h.level_count()}};
  out["counts"] = counts ? counts_json(*counts) : Json(nullptr);
  return out;
}

std::string hierarchy_text(const EvolutionAlgebra& e, const Hierarchy& h, const std::optional<StructureCounts>& counts) {
  std::ostringstream out;
  out << h.level_count() << (h.level_count() == 1 ? " level: " : " levels: ");
  for (std::size_t l = 0; l < h.levels.size(); ++l) out << (l ? " + " : "") << h.levels[l].size();
  out << " blocks\n";
  for (std::size_t l = 0; l < h.levels.size(); ++l) {
    out << "level " << l << ":\n";
    for (std::size_t b : h.levels[l]) out << "  " << block_text(e, h.blocks[b]) << '\n';
  }
  out << "flows:\n";
  for (auto [from, to] : h.flows) out << "  " << block_text(e, h.blocks[from]) << " -> " << block_text(e, h.blocks[to]) << '\n';
  if (counts) {
    out << "counts: dimension " << counts->dimension << ", " << counts->one_dimensional << " one-dimensional, "
        << counts->four_dimensional << " four-dimensional\n";
  }
  return out.str();
}

Json iso_json(const IsoVerdict& v) {
  return {{"support_equal", v.support_equal}, {"skeleton_equal", v.skeleton_equal}, {"verdict", v.verdict}};
}

Json low_temp_json(const LowTempReport& r, const StateSpace& states) {
  Json candidates = Json::array();
  for (const auto& c : r.candidates) {
    candidates.push_back({{"state", states.label(c.state)},
                          {"generator", c.generator},
                          {"mass", c.mass},
                          {"monotone_in_beta", c.monotone_in_beta}});
  }
  return {{"dimension", r.dimension},
          {"q", r.q},
          {"J", r.coupling_j},
          {"boundary", r.boundary ? Json(states.label(*r.boundary)) : Json("free")},
          {"radii", r.radii},
          {"betas", r.betas},
          {"candidates", std::move(candidates)},
          {"distinct_generators", r.distinct_generators}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace evoalg

#include <gtest/gtest.h>

#include <sstream>

#include "evoalg/io.hpp"
#include "fixtures.hpp"

using namespace evoalg;

namespace {

Json edge_scenario() {
  return Json::parse(R"js({
    "schema_version": 1,
    "graph": {"vertices": ["1", "2"], "edges": [["1", "2"]]},
    "states": {"states": ["a", "A"]},
    "measure": {"weights": {"(a,a)": 0.1, "(a,A)": 0.2, "(A,a)": 0.3, "(A,A)": 0.4}}
  })js");
}

std::string error_of(const Json& doc) {
  try {
    parse_scenario(doc);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Scenario, ParsesWeights) {
  auto s = parse_scenario(edge_scenario());
  EXPECT_EQ(s.graph, fixtures::edge_graph());
  EXPECT_EQ(s.states, fixtures::alleles());
  auto mu = s.measure();
  for (int i = 1; i <= 4; ++i) EXPECT_NEAR(mu(fixtures::sigma(i)), fixtures::example_p()[i - 1], 1e-15);
  EXPECT_EQ(s.vertex_index("2"), 1u);
}

TEST(Scenario, ParsesHamiltonians) {
  auto doc = edge_scenario();
  doc["states"] = {"1", "2"};
  doc["measure"] = Json::parse(R"js({"hamiltonian": {"model": "potts", "J": 1.0, "beta": 0.5}})js");
  auto potts = parse_scenario(doc);
  ASSERT_TRUE(potts.hamiltonian.has_value());
  auto mu = potts.measure();
  // two agreeing cells, two disagreeing ones
  EXPECT_NEAR(mu(Cell{0}) / mu(Cell{1}), std::exp(0.5), 1e-12);

  doc["measure"] = Json::parse(R"js({"beta": 0.5, "pair_coupling": [[-1, 0], [0, -1]], "site_field": {"1": [0, 0.25]}})js");
  auto general = parse_scenario(doc);
  EXPECT_NEAR(general.hamiltonian->field(0, 1), 0.25, 0.0);
  EXPECT_NEAR(general.measure()(Cell{0}) / general.measure()(Cell{1}), std::exp(0.5 * 1.25), 1e-12);
}

TEST(Scenario, ValidationNamesTheField) {
  auto doc = edge_scenario();
  doc.erase("schema_version");
  EXPECT_NE(error_of(doc).find("schema_version"), std::string::npos);

  doc = edge_scenario();
  doc["schema_version"] = 2;
  EXPECT_NE(error_of(doc).find("schema_version"), std::string::npos);

  doc = edge_scenario();
  doc["graph"]["edges"] = Json::array({Json::array({"1", "3"})});
  EXPECT_NE(error_of(doc).find("graph.edges[0]"), std::string::npos);

  doc = edge_scenario();
  doc["graph"]["edges"] = Json::array({Json::array({"1", "1"})});
  EXPECT_NE(error_of(doc).find("graph.edges"), std::string::npos);

  doc = edge_scenario();
  doc["measure"]["weights"].erase("(A,A)");
  EXPECT_NE(error_of(doc).find("(A,A)"), std::string::npos);

  doc = edge_scenario();
  doc["measure"]["weights"]["(a,a)"] = -1.0;
  EXPECT_NE(error_of(doc).find("measure.weights"), std::string::npos);

  doc = edge_scenario();
  doc["states"]["states"] = {"a", "a"};
  EXPECT_NE(error_of(doc).find("states"), std::string::npos);

  doc = edge_scenario();
  doc["measure"] = Json::parse(R"js({"hamiltonian": {"model": "ising", "beta": 1}})js");
  EXPECT_NE(error_of(doc).find("measure.hamiltonian.model"), std::string::npos);
}

TEST(LimitScenario, DefaultsAndErrors) {
  auto doc = Json::parse(R"js({"schema_version": 1, "limits": {"dimension": 1, "q": 2, "radii": [1, 2], "betas": [1.0]}})js");
  auto ls = parse_limit_scenario(doc);
  EXPECT_EQ(ls.pairs.size(), 4u);
  EXPECT_FALSE(ls.scheme.boundary.has_value());
  EXPECT_EQ(ls.scheme.coupling_j, 1.0);

  doc["limits"]["boundary"] = "2";
  EXPECT_EQ(parse_limit_scenario(doc).scheme.boundary, State{1});
  doc["limits"]["boundary"] = "7";
  EXPECT_THROW(parse_limit_scenario(doc), ValidationError);
  doc["limits"]["boundary"] = "free";
  doc["limits"]["betas"] = {2.0, 1.0};
  EXPECT_THROW(parse_limit_scenario(doc), ValidationError);
  doc["limits"]["betas"] = {1.0};
  doc["limits"]["radii"] = {1, 10};
  EXPECT_THROW(parse_limit_scenario(doc), BudgetError);

  doc["limits"]["radii"] = {1, 2};
  doc["limits"]["pairs"] = Json::parse(R"js([{"phi": [{"tail": "1", "sites": [{"at": [0], "state": "2"}]}, {"tail": "2"}],
                                             "psi": [{"tail": "2"}, {"tail": "2"}]}])js");
  ls = parse_limit_scenario(doc);
  ASSERT_EQ(ls.pairs.size(), 1u);
  EXPECT_EQ(ls.pairs[0].first.label(ls.states), "([1|0:2],[2])");
}

TEST(MatrixIo, CsvRoundTrip) {
  auto e = fixtures::example1();
  std::ostringstream out;
  write_matrix_csv(out, e.matrix());
  EXPECT_EQ(out.str().substr(0, 16), "row,col,value\n0,");
  std::istringstream in(out.str());
  auto m = read_matrix_csv(in);
  ASSERT_EQ(m.dimension(), e.dimension());
  for (std::size_t i = 0; i < m.dimension(); ++i) {
    EXPECT_EQ(m.row(i).cols, e.row(i).cols);
    EXPECT_EQ(m.row(i).values, e.row(i).values);
  }
  std::istringstream bad("row,col,value\n0,x,1\n");
  EXPECT_THROW(read_matrix_csv(bad), ValidationError);
}

TEST(MatrixIo, JsonRoundTrip) {
  auto e = fixtures::example2();
  auto doc = matrix_json(e);
  EXPECT_EQ(doc["dimension"], 16);
  EXPECT_EQ(doc["rows"][0]["label"], e.label(0));
  auto m = read_matrix_json(Json::parse(dump(doc)));
  for (std::size_t i = 0; i < m.dimension(); ++i) EXPECT_EQ(m.row(i).values, e.row(i).values);
}

TEST(Reports, DeterministicAndLabelled) {
  auto e = fixtures::example1();
  auto h = build_hierarchy(e);
  auto counts = structure_counts(e);
  const std::string text = hierarchy_text(e, h, counts);
  EXPECT_EQ(text.substr(0, text.find('\n')), "2 levels: 4 + 6 blocks");
  EXPECT_NE(text.find("counts: dimension 16, 4 one-dimensional, 6 four-dimensional"), std::string::npos);
  EXPECT_EQ(dump(hierarchy_json(e, h, counts)), dump(hierarchy_json(fixtures::example1(), build_hierarchy(e), counts)));
  EXPECT_TRUE(hierarchy_json(e, h, std::nullopt)["counts"].is_null());
  auto summary = summary_json(e);
  EXPECT_EQ(summary["nonzeros"], 52);
  EXPECT_EQ(dump(Json{{"b", 1}, {"a", 2}}), "{\n  \"a\": 2,\n  \"b\": 1\n}\n");
}

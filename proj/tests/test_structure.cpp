#include <gtest/gtest.h>

#include <random>

#include "evoalg/structure.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace evoalg;
using fixtures::phi;

namespace {

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Six proposed symmetry classes over the edgeless two-vertex graph.
std::vector<std::vector<std::size_t>> six_classes() {
  return {{phi(4, 4)},
          {phi(1, 1)},
          {phi(2, 4), phi(4, 2), phi(3, 4), phi(4, 3)},
          {phi(1, 2), phi(2, 1), phi(1, 3), phi(3, 1)},
          {phi(1, 4), phi(4, 1)},
          {phi(2, 2), phi(3, 3), phi(2, 3), phi(3, 2)}};
}

}  // namespace

TEST(GeneratedSubalgebra, Examples) {
  auto e1 = fixtures::example1();
  EXPECT_EQ(generated_subalgebra(e1, {phi(2, 2)}).basis, std::vector<std::size_t>{phi(2, 2)});
  auto s = generated_subalgebra(e1, {phi(1, 2)});
  EXPECT_EQ(s.basis, sorted({phi(1, 1), phi(1, 2), phi(2, 1), phi(2, 2)}));
  EXPECT_EQ(generated_subalgebra(fixtures::example2(), {phi(1, 4)}).dimension(), 16u);
  EXPECT_THROW(generated_subalgebra(e1, {}), ValidationError);
  EXPECT_THROW(generated_subalgebra(e1, {99}), ValidationError);
}

TEST(GeneratedSubalgebra, SingleSeedGivesChildrenSet) {
  std::mt19937_64 rng(53);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const Graph& g : fixtures::all_graphs(n)) {
      auto e = build_algebra(g, StateSpace::numbered(2), fixtures::random_measure(oracle::ipow(2, n), rng));
      for (std::size_t s = 0; s < e.dimension(); ++s) {
        auto sub = generated_subalgebra(e, {s});
        EXPECT_EQ(sub.basis, oracle::pair_children(n, 2, fixtures::edge_list(g), s));
        for (std::size_t b : sub.basis) {
          for (std::size_t c : e.row(b).cols) EXPECT_TRUE(sub.contains(c));
        }
      }
    }
  }
}

TEST(Precedes, Examples) {
  auto e = fixtures::example1();
  EXPECT_TRUE(precedes(e, phi(1, 2), phi(1, 2)));
  EXPECT_TRUE(precedes(e, phi(1, 1), phi(1, 2)));
  EXPECT_FALSE(precedes(e, phi(3, 3), phi(1, 2)));
  EXPECT_FALSE(precedes(e, phi(1, 2), phi(1, 1)));
}

TEST(DescentChain, Examples) {
  auto e1 = fixtures::example1();
  EXPECT_EQ(descent_chain(e1, phi(3, 3)), std::vector<std::size_t>{phi(3, 3)});
  EXPECT_EQ(descent_chain(e1, phi(1, 2)), std::vector<std::size_t>{phi(1, 1)});

  auto e2 = fixtures::example2();
  auto chain = descent_chain(e2, phi(1, 4));
  ASSERT_EQ(chain.size(), 2u);
  // lowest-index admissible non-diagonal pair below phi_14 in canonical order
  EXPECT_EQ(chain[0], phi(1, 3));
  EXPECT_EQ(chain[1], phi(1, 1));
}

TEST(DescentChain, PropertyTerminatesAndNests) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const Graph& g : fixtures::all_graphs(n)) {
      auto e = build_algebra(g, StateSpace::numbered(2), Measure::from_weights(std::vector<double>(oracle::ipow(2, n), 1.0)));
      for (std::size_t s = 0; s < e.dimension(); ++s) {
        auto chain = descent_chain(e, s);
        ASSERT_FALSE(chain.empty());
        EXPECT_LE(chain.size(), e.row(s).cols.size());
        EXPECT_EQ(e.row(chain.back()).cols.size(), 1u);
        auto outer = generated_subalgebra(e, {s});
        for (std::size_t i = 0; i < chain.size(); ++i) {
          const std::size_t parent = i == 0 ? s : chain[i - 1];
          EXPECT_TRUE(precedes(e, chain[i], parent));
          auto inner = generated_subalgebra(e, {chain[i]});
          EXPECT_TRUE(outer.includes(inner));
          outer = inner;
          if (i + 1 < chain.size()) {
            EXPECT_GT(e.row(chain[i]).cols.size(), 2u);
          }
        }
      }
    }
  }
}

TEST(Hierarchy, Example1) {
  auto e = fixtures::example1();
  auto h = build_hierarchy(e);
  ASSERT_EQ(h.level_count(), 2u);
  EXPECT_EQ(h.levels[0].size(), 4u);
  EXPECT_EQ(h.levels[1].size(), 6u);
  for (std::size_t b : h.levels[0]) EXPECT_EQ(h.blocks[b].size(), 1u);
  for (int i = 1; i <= 4; ++i) {
    for (int j = i + 1; j <= 4; ++j) {
      const std::size_t b = h.block_of(phi(i, j));
      EXPECT_EQ(h.blocks[b], sorted({phi(i, j), phi(j, i)}));
      std::vector<std::size_t> targets;
      for (auto [from, to] : h.flows)
        if (from == b) targets.push_back(to);
      EXPECT_EQ(sorted(targets), sorted({h.block_of(phi(i, i)), h.block_of(phi(j, j))}));
    }
  }
}

TEST(Hierarchy, Example2) {
  auto e = fixtures::example2();
  auto h = build_hierarchy(e);
  ASSERT_EQ(h.level_count(), 3u);
  EXPECT_EQ(h.levels[0].size(), 4u);
  EXPECT_EQ(h.levels[1].size(), 4u);
  ASSERT_EQ(h.levels[2].size(), 1u);
  const std::size_t top = h.levels[2][0];
  EXPECT_EQ(h.blocks[top], sorted({phi(1, 4), phi(4, 1), phi(2, 3), phi(3, 2)}));
  std::size_t to_level1 = 0;
  for (auto [from, to] : h.flows) {
    EXPECT_GT(h.level_of_block[from], h.level_of_block[to]);
    if (from == top && h.level_of_block[to] == 1) ++to_level1;
  }
  EXPECT_EQ(to_level1, 4u);
}

TEST(Hierarchy, TrivialAndConnectedGraphs) {
  auto single = build_algebra(Graph(1), StateSpace::numbered(1), Measure::from_weights(std::vector<double>{1.0}));
  auto h = build_hierarchy(single);
  EXPECT_EQ(h.level_count(), 1u);
  EXPECT_EQ(h.blocks.size(), 1u);

  std::mt19937_64 rng(59);
  for (const Graph& g : fixtures::all_graphs(3)) {
    auto e = build_algebra(g, StateSpace::numbered(2), fixtures::random_measure(8, rng));
    auto hh = build_hierarchy(e);
    if (components(g).size() == 1) {
      EXPECT_EQ(hh.level_count(), 2u);
    }
    std::vector<int> seen(e.dimension(), 0);
    for (const auto& b : hh.blocks)
      for (std::size_t m : b) ++seen[m];
    for (int c : seen) EXPECT_EQ(c, 1);
    for (auto [from, to] : hh.flows) EXPECT_GT(hh.level_of_block[from], hh.level_of_block[to]);
  }
}

TEST(StructureCounts, Formulae) {
  EXPECT_EQ(structure_counts(fixtures::example1()), (StructureCounts{16, 4, 6}));
  auto one = [](std::size_t k) {
    return build_algebra(Graph(1), StateSpace::numbered(k), Measure::from_weights(std::vector<double>(k, 1.0)));
  };
  EXPECT_EQ(structure_counts(one(2)), (StructureCounts{4, 2, 1}));
  EXPECT_EQ(structure_counts(one(3)), (StructureCounts{9, 3, 3}));
  EXPECT_THROW(structure_counts(fixtures::example2()), ValidationError);
}

TEST(IsoCheck, Verdicts) {
  auto a = fixtures::example1();
  auto same = iso_check(a, a);
  EXPECT_TRUE(same.support_equal);
  EXPECT_TRUE(same.skeleton_equal);
  EXPECT_EQ(same.verdict, kIsomorphicVerdict);

  auto b = fixtures::example1({0.7, 0.1, 0.1, 0.1});
  EXPECT_EQ(iso_check(a, b).verdict, kIsomorphicVerdict);
  EXPECT_THROW(iso_check(a, fixtures::example2()), ValidationError);
  auto relabeled = build_algebra(fixtures::edge_graph(), StateSpace({"x", "y"}), fixtures::example_measure(fixtures::example_p()));
  EXPECT_THROW(iso_check(a, relabeled), ValidationError);
}

TEST(Collapse, TrivialPartitionReproducesTable) {
  auto e = fixtures::example1();
  std::vector<std::vector<std::size_t>> singletons;
  for (std::size_t i = 0; i < e.dimension(); ++i) singletons.push_back({i});
  auto t = collapse_by_symmetry(e, singletons);
  for (std::size_t i = 0; i < e.dimension(); ++i)
    for (std::size_t j = 0; j < e.dimension(); ++j) EXPECT_EQ(t.rows[i][j], e.row(i).at(j));
}

TEST(Collapse, RejectsNonPartitions) {
  auto e = fixtures::example2();
  auto classes = six_classes();
  classes.pop_back();
  EXPECT_THROW(collapse_by_symmetry(e, classes), ValidationError);
  classes = six_classes();
  classes[0].push_back(phi(1, 1));
  EXPECT_THROW(collapse_by_symmetry(e, classes), ValidationError);
}

// The remark's sixth class mixes phi_22 (idempotent) with phi_23, whose
// square spreads over all sixteen generators, so it never validates.
TEST(Collapse, SixClassesRejectedAtMixedClass) {
  auto e = fixtures::example2({0.1, 0.25, 0.25, 0.4});
  try {
    collapse_by_symmetry(e, six_classes());
    FAIL() << "expected CollapseError";
  } catch (const CollapseError& err) {
    EXPECT_EQ(err.class_index(), 5u);
  }
}

TEST(Collapse, SevenClassRelations) {
  const double p1 = 0.1, p2 = 0.25, p4 = 0.4;
  auto e = fixtures::example2({p1, p2, p2, p4});
  auto classes = six_classes();
  classes[5] = {phi(2, 2), phi(3, 3)};
  classes.push_back({phi(2, 3), phi(3, 2)});
  auto t = collapse_by_symmetry(e, classes);

  auto expect_row = [&](std::size_t c, std::vector<double> want) {
    ASSERT_EQ(t.rows[c].size(), want.size());
    for (std::size_t d = 0; d < want.size(); ++d) EXPECT_NEAR(t.rows[c][d], want[d], 1e-12) << "class " << c << " -> " << d;
  };
  const double s24 = (p2 + p4) * (p2 + p4), s12 = (p1 + p2) * (p1 + p2);
  expect_row(0, {1, 0, 0, 0, 0, 0, 0});
  expect_row(1, {0, 1, 0, 0, 0, 0, 0});
  expect_row(2, {p4 * p4 / s24, 0, 2 * p2 * p4 / s24, 0, 0, p2 * p2 / s24, 0});
  expect_row(3, {0, p1 * p1 / s12, 0, 2 * p1 * p2 / s12, 0, p2 * p2 / s12, 0});
  expect_row(4, {p4 * p4, p1 * p1, 4 * p2 * p4, 4 * p1 * p2, 2 * p1 * p4, 2 * p2 * p2, 2 * p2 * p2});
  expect_row(5, {0, 0, 0, 0, 0, 1, 0});
  expect_row(6, {p4 * p4, p1 * p1, 4 * p2 * p4, 4 * p1 * p2, 2 * p1 * p4, 2 * p2 * p2, 2 * p2 * p2});

  auto lines = format_relations(t);
  ASSERT_EQ(lines.size(), 7u);
  EXPECT_EQ(lines[0], "e1^2 = 1 e1");
}

TEST(Collapse, UnequalProbabilitiesRejectedAtThirdClass) {
  auto e = fixtures::example2();
  auto classes = six_classes();
  classes[5] = {phi(2, 2), phi(3, 3)};
  classes.push_back({phi(2, 3), phi(3, 2)});
  try {
    collapse_by_symmetry(e, classes);
    FAIL() << "expected CollapseError";
  } catch (const CollapseError& err) {
    EXPECT_EQ(err.class_index(), 2u);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gf/generators.hpp"
#include "gf/metrics.hpp"

using namespace gf;

TEST_CASE("lattice generation") {
  auto g1 = gen_lattice(1, 2.0);
  CHECK(g1.size() == 5);
  CHECK(g1.mu().minCoeff() == 2.0);
  CHECK(g1.mu().maxCoeff() == 2.0);
  CHECK(g1.edge_count() == 4);

  auto g2 = gen_lattice(2, 1.0);
  CHECK(g2.size() == 5);
  CHECK(g2.edge_count() == 4);
  CHECK(g2.mu().maxCoeff() == 4.0);

  // independent double-loop count of |x| <= R lattice points
  auto g = gen_lattice(2, 40.0);
  int count = 0;
  for (int ix = -40; ix <= 40; ++ix)
    for (int iy = -40; iy <= 40; ++iy)
      if (ix * ix + iy * iy <= 1600) ++count;
  CHECK(g.size() == count);
  CHECK(g.connected());
  CHECK_THROWS_AS(gen_lattice(0, 5.0), ParameterOutOfRange);
  CHECK_THROWS_AS(gen_lattice(1, 0.5), ParameterOutOfRange);
}

TEST_CASE("tree generation") {
  auto t1 = gen_tree(2, 1);
  CHECK(t1.size() == 4);  // root plus N+1 children

  auto t = gen_tree(2, 3);
  // level sizes N^k + N^(k-1): 3, 6, 12
  std::vector<int> level_count(4, 0);
  for (Index i = 0; i < t.size(); ++i) ++level_count[static_cast<size_t>(t.attrs()(i, 0))];
  CHECK(level_count[1] == 3);
  CHECK(level_count[2] == 6);
  CHECK(level_count[3] == 12);
  CHECK(t.size() == 1 + 3 + 6 + 12);

  for (int N : {2, 3}) {
    auto tt = gen_tree(N, 6);
    Index total = 1;
    for (int k = 1; k <= 6; ++k) {
      auto level = static_cast<Index>(std::pow(N, k) + std::pow(N, k - 1));
      total += level;
    }
    CHECK(tt.size() == total);
    CHECK(tt.mu().minCoeff() == double(N + 1));
    CHECK(tt.mu().maxCoeff() == double(N + 1));
    CHECK(row_sum_ratio(tt) == doctest::Approx(1.0 / (N + 1)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(gen_tree(1, 3), ParameterOutOfRange);
  CHECK_THROWS_AS(gen_tree(2, 0), ParameterOutOfRange);
}

TEST_CASE("cycle generation") {
  auto c3 = gen_cycle_group(3);
  CHECK(c3.size() == 3);
  CHECK(c3.edge_count() == 3);
  CHECK(c3.mu().maxCoeff() == 2.0);
  CHECK(c3.row_sum().maxCoeff() == 2.0);

  auto c10 = gen_cycle_group(10);
  CHECK(c10.size() == 10);
  CHECK(c10.edge_count() == 10);
  CHECK(rim_nodes(c10).empty());
  CHECK_THROWS_AS(gen_cycle_group(2), ParameterOutOfRange);
}

TEST_CASE("product generation") {
  auto p2 = gen_lattice(1, 1.0);  // three-node path
  auto c3 = gen_cycle_group(3);
  auto pg = gen_product(p2, c3, MeasureRule::max);
  CHECK(pg.size() == 9);
  CHECK(pg.connected());
  // edge count: |E1|*n2 + |E2|*n1 = 2*3 + 3*3
  CHECK(pg.edge_count() == 15);
  // max rule dominates both factor measures
  for (Index i = 0; i < pg.size(); ++i) {
    Index i1 = pg.attrs()(i, 0), i2 = pg.attrs()(i, 1);
    CHECK(pg.mu()[i] == std::max(p2.mu()[i1], c3.mu()[i2]));
  }

  auto ps = gen_product(p2, c3, MeasureRule::sum);
  CHECK(ps.mu().maxCoeff() == 4.0);

  // two-node path squared gives the four-cycle
  auto e2 = build_graph({{"a", 1.0}, {"b", 1.0}}, {{"a", "b", 1.0}});
  auto sq = gen_product(e2, e2, MeasureRule::max);
  CHECK(sq.size() == 4);
  CHECK(sq.edge_count() == 4);
  auto nat = PseudoMetric::natural(sq);
  CHECK(nat.distances_from(0).maxCoeff() == 2.0);
}

TEST_CASE("volume growth of lattice balls tracks the dimension") {
  for (int N : {1, 2}) {
    auto g = gen_lattice(N, 40.0);
    auto e = PseudoMetric::euclidean(g);
    Index x0 = g.index_of(N == 1 ? "0" : "0,0");
    Vector d = e.distances_from(x0);
    std::vector<double> lr, lv;
    for (double R : {10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0}) {
      double vol = 0.0;
      for (Index i = 0; i < g.size(); ++i)
        if (d[i] <= R) vol += g.mu()[i];
      lr.push_back(std::log(R));
      lv.push_back(std::log(vol));
    }
    double n = double(lr.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < lr.size(); ++i) {
      sx += lr[i];
      sy += lv[i];
      sxx += lr[i] * lr[i];
      sxy += lr[i] * lv[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope == doctest::Approx(double(N)).epsilon(0.1 / N));
  }
}

TEST_CASE("graph file round trip") {
  auto g = gen_lattice(2, 5.0);
  auto text = write_graph_text(g);
  auto h = parse_graph_text(text);
  REQUIRE(h.size() == g.size());
  CHECK(h.attrs() == g.attrs());  // coordinates re-derived from ids

  std::mt19937_64 rng(3);
  std::normal_distribution<double> dist;
  Vector f(g.size());
  for (Index i = 0; i < g.size(); ++i) f[i] = dist(rng);
  Vector lg = laplacian(g, f), lh = laplacian(h, f);
  CHECK((lg - lh).cwiseAbs().maxCoeff() == 0.0);

  // tree weights survive the text round trip bit for bit
  auto t = gen_tree(2, 3);
  auto t2 = parse_graph_text(write_graph_text(t));
  CHECK(t2.attrs() == t.attrs());  // levels re-derived from ids
  Vector ft(t.size());
  for (Index i = 0; i < t.size(); ++i) ft[i] = dist(rng);
  CHECK((laplacian(t, ft) - laplacian(t2, ft)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("graph file parse errors") {
  CHECK_THROWS_AS(parse_graph_text(""), EmptyGraph);
  CHECK_THROWS_AS(parse_graph_text("node a 1\nnode b 1\nedge a b\n"), SyntaxError);
  CHECK_THROWS_AS(parse_graph_text("vertex a 1\n"), SyntaxError);
  CHECK_THROWS_AS(parse_graph_text("node a 1\nnode b 1\nedge a b xyz\n"), SyntaxError);
  CHECK_THROWS_AS(parse_graph_text("node a 1\nnode a 2\nedge a a 1\n"), DuplicateNode);
  CHECK_THROWS_AS(parse_graph_text("node a 1\nnode b 1\n"), Disconnected);
  CHECK(parse_graph_text("node a 1\nnode b 1\n", true).size() == 2);

  try {
    parse_graph_text("node a 1\nbogus\n");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_graph_text("# only a comment\n"), EmptyGraph);
}

TEST_CASE("comments and blank lines are tolerated") {
  auto g = parse_graph_text("# header\n\nnode a 1.5 # trailing\nnode b 2\nedge a b 0.25\n");
  CHECK(g.size() == 2);
  CHECK(g.mu()[g.index_of("a")] == 1.5);
  CHECK(g.row_sum()[0] == 0.25);
}

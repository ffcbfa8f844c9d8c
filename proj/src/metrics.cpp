#include "gf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace gf {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// BFS hop counts from src; -1 marks unreachable nodes.
std::vector<Index> bfs_hops(const WeightedGraph& g, Index src, Index stop_at = -1) {
  std::vector<Index> hops(static_cast<size_t>(g.size()), -1);
  std::deque<Index> q{src};
  hops[static_cast<size_t>(src)] = 0;
  const auto& adj = g.adjacency();
  while (!q.empty()) {
    Index i = q.front();
    q.pop_front();
    if (i == stop_at) return hops;
    for (WeightedGraph::SparseAdj::InnerIterator it(adj, i); it; ++it) {
      if (hops[static_cast<size_t>(it.col())] < 0) {
        hops[static_cast<size_t>(it.col())] = hops[static_cast<size_t>(i)] + 1;
        q.push_back(it.col());
      }
    }
  }
  return hops;
}
}  // namespace

struct PseudoMetric::Impl {
  Kind kind;
  WeightedGraph g;
  double jump = 0.0;

  // euclidean
  Matrix coords;
  // product
  std::shared_ptr<const Impl> left, right;
  Eigen::VectorXi left_idx, right_idx;
  double alpha = 0.0;
  // custom_table
  std::function<double(Index, Index)> fn;
  mutable std::unordered_map<Index, Vector> rows;
  mutable std::mutex rows_mutex;

  Impl(Kind k, WeightedGraph graph) : kind(k), g(std::move(graph)) {}

  double at(Index x, Index y) const {
    switch (kind) {
      case Kind::natural: {
        if (x == y) return 0.0;
        auto hops = bfs_hops(g, x, y);
        Index h = hops[static_cast<size_t>(y)];
        if (h < 0) throw Unreachable("no path between nodes");
        return static_cast<double>(h);
      }
      case Kind::euclidean_coords:
        return (coords.row(x) - coords.row(y)).norm();
      case Kind::product:
        return product_distance(left->at(left_idx[x], left_idx[y]),
                                right->at(right_idx[x], right_idx[y]), alpha);
      case Kind::custom_table:
        return table_row(x)[y];
    }
    return 0.0;
  }

  const Vector& table_row(Index x) const {
    std::lock_guard<std::mutex> lock(rows_mutex);
    auto it = rows.find(x);
    if (it == rows.end()) {
      Vector row(g.size());
      for (Index y = 0; y < g.size(); ++y) row[y] = fn(x, y);
      it = rows.emplace(x, std::move(row)).first;
    }
    return it->second;
  }

  Vector bulk(Index x0) const {
    const Index n = g.size();
    Vector out(n);
    switch (kind) {
      case Kind::natural: {
        auto hops = bfs_hops(g, x0);
        for (Index i = 0; i < n; ++i)
          out[i] = hops[static_cast<size_t>(i)] < 0 ? kInf
                                                    : static_cast<double>(hops[static_cast<size_t>(i)]);
        return out;
      }
      case Kind::euclidean_coords: {
        for (Index i = 0; i < n; ++i) out[i] = (coords.row(i) - coords.row(x0)).norm();
        return out;
      }
      case Kind::product: {
        Vector dl = left->bulk(left_idx[x0]);
        Vector dr = right->bulk(right_idx[x0]);
        for (Index i = 0; i < n; ++i)
          out[i] = product_distance(dl[left_idx[i]], dr[right_idx[i]], alpha);
        return out;
      }
      case Kind::custom_table:
        return table_row(x0);
    }
    return out;
  }
};

PseudoMetric::Kind PseudoMetric::kind() const { return impl_->kind; }
const WeightedGraph& PseudoMetric::graph() const { return impl_->g; }
double PseudoMetric::jump() const { return impl_->jump; }

double PseudoMetric::operator()(Index x, Index y) const {
  const Index n = impl_->g.size();
  if (x < 0 || x >= n || y < 0 || y >= n)
    throw UnknownNode("metric: node index out of range");
  return impl_->at(x, y);
}

Vector PseudoMetric::distances_from(Index x0) const {
  if (x0 < 0 || x0 >= impl_->g.size())
    throw UnknownNode("metric: base index out of range");
  return impl_->bulk(x0);
}

namespace {
// Max of d over stored edges; adjacent nodes are always mutually reachable.
double edge_max(const PseudoMetric::Impl& impl) {
  const auto& g = impl.g;
  const auto& adj = g.adjacency();
  double m = 0.0;
  for (Index i = 0; i < g.size(); ++i)
    for (WeightedGraph::SparseAdj::InnerIterator it(adj, i); it; ++it)
      if (it.col() > i) m = std::max(m, impl.at(i, it.col()));
  return m;
}
}  // namespace

PseudoMetric PseudoMetric::natural(const WeightedGraph& g) {
  auto impl = std::make_shared<Impl>(Kind::natural, g);
  // Any positively weighted edge joins distinct nodes one hop apart.
  impl->jump = g.edge_count() > 0 ? 1.0 : 0.0;
  return PseudoMetric(std::move(impl));
}

PseudoMetric PseudoMetric::euclidean(const WeightedGraph& g) {
  if (g.attrs().cols() == 0)
    throw Error("euclidean metric requires coordinate attributes");
  auto impl = std::make_shared<Impl>(Kind::euclidean_coords, g);
  impl->coords = g.attrs().cast<double>();
  impl->jump = edge_max(*impl);
  return PseudoMetric(std::move(impl));
}

PseudoMetric PseudoMetric::product(const WeightedGraph& pg, PseudoMetric left,
                                   PseudoMetric right, double alpha) {
  if (alpha < 0.0 || alpha > 1.0)
    throw AlphaOutOfRange("product metric: alpha must lie in [0, 1]");
  if (pg.attrs().cols() != 2)
    throw Error("product metric requires factor index attributes");
  auto impl = std::make_shared<Impl>(Kind::product, pg);
  impl->left = left.impl_;
  impl->right = right.impl_;
  impl->alpha = alpha;
  impl->left_idx = pg.attrs().col(0);
  impl->right_idx = pg.attrs().col(1);
  impl->jump = edge_max(*impl);
  return PseudoMetric(std::move(impl));
}

PseudoMetric PseudoMetric::table(const WeightedGraph& g,
                                 std::function<double(Index, Index)> fn) {
  auto impl = std::make_shared<Impl>(Kind::custom_table, g);
  impl->fn = std::move(fn);
  impl->jump = edge_max(*impl);
  return PseudoMetric(std::move(impl));
}

Index natural_distance(const WeightedGraph& g, Index x, Index y) {
  if (x < 0 || x >= g.size() || y < 0 || y >= g.size())
    throw UnknownNode("natural_distance: node index out of range");
  if (x == y) return 0;
  auto hops = bfs_hops(g, x, y);
  Index h = hops[static_cast<size_t>(y)];
  if (h < 0) throw Unreachable("no path between nodes");
  return h;
}

double natural_distance(const WeightedGraph& g, const std::string& x, const std::string& y) {
  return static_cast<double>(natural_distance(g, g.index_of(x), g.index_of(y)));
}

double jump_size(const WeightedGraph& g, const PseudoMetric& d) {
  double m = 0.0;
  const auto& adj = g.adjacency();
  for (Index i = 0; i < g.size(); ++i)
    for (WeightedGraph::SparseAdj::InnerIterator it(adj, i); it; ++it)
      if (it.col() > i) m = std::max(m, d(i, it.col()));
  return m;
}

double product_distance(double d1, double d2, double alpha) {
  if (alpha < 0.0 || alpha > 1.0)
    throw AlphaOutOfRange("product_distance: alpha must lie in [0, 1]");
  const double p = 1.0 + alpha;
  if (d1 == 0.0) return d2;
  if (d2 == 0.0) return d1;
  return std::pow(std::pow(d1, p) + std::pow(d2, p), 1.0 / p);
}

std::vector<Index> ball(const WeightedGraph& g, const PseudoMetric& d, Index x0, double R) {
  if (R < 0.0) throw ParameterOutOfRange("ball: negative radius");
  Vector dist = d.distances_from(x0);
  std::vector<Index> out;
  for (Index i = 0; i < g.size(); ++i)
    if (dist[i] <= R) out.push_back(i);
  return out;
}

DistanceProfile laplacian_of_distance(const WeightedGraph& g, const PseudoMetric& d, Index x0) {
  DistanceProfile p;
  p.x0 = x0;
  p.d = d.distances_from(x0);
  p.lap_d = laplacian(g, p.d);
  p.jump = d.jump();
  p.d_max = p.d.maxCoeff();
  p.by_distance.resize(static_cast<size_t>(g.size()));
  for (Index i = 0; i < g.size(); ++i) p.by_distance[static_cast<size_t>(i)] = i;
  std::stable_sort(p.by_distance.begin(), p.by_distance.end(),
                   [&](Index a, Index b) { return p.d[a] < p.d[b]; });
  return p;
}

std::string DistanceProfile::to_csv(const WeightedGraph& g) const {
  std::ostringstream os;
  os.precision(17);
  os << "d,laplacian_d,node_id\n";
  for (Index i : by_distance)
    os << d[i] << "," << lap_d[i] << "," << g.id_of(i) << "\n";
  return os.str();
}

DistanceBoundFit fit_distance_bound(const DistanceProfile& p, double R0, double alpha) {
  if (alpha < 0.0 || alpha > 1.0)
    throw AlphaOutOfRange("fit_distance_bound: alpha must lie in [0, 1]");
  bool any_exterior = false;
  DistanceBoundFit fit;
  for (Index i = 0; i < p.d.size(); ++i) {
    if (!(p.d[i] > R0) || !std::isfinite(p.d[i])) continue;
    any_exterior = true;
    if (p.lap_d[i] <= 0.0) continue;
    double v = p.lap_d[i] * std::pow(p.d[i], alpha);
    if (v > fit.C_fit) {
      fit.C_fit = v;
      fit.argmax = i;
    }
  }
  if (!any_exterior) throw EmptyExterior("no nodes beyond R0");
  if (fit.argmax >= 0) fit.ok = p.d[fit.argmax] <= p.d_max - 2.0 * p.jump;
  return fit;
}

}  // namespace gf

#include "gf/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

namespace gf {

Index WeightedGraph::index_of(const std::string& id) const {
  auto it = d_->index.find(id);
  if (it == d_->index.end()) throw UnknownNode("unknown node id: " + id);
  return it->second;
}

WeightedGraph build_graph(const std::vector<NodeEntry>& nodes,
                          const std::vector<EdgeEntry>& edges,
                          bool allow_disconnected,
                          Eigen::MatrixXi attrs) {
  if (nodes.empty()) throw EmptyGraph("graph has no nodes");
  auto data = std::make_shared<WeightedGraph::Data>();
  const Index n = static_cast<Index>(nodes.size());
  data->ids.reserve(nodes.size());
  data->index.reserve(nodes.size());
  data->mu.resize(n);
  for (Index i = 0; i < n; ++i) {
    const auto& ne = nodes[static_cast<size_t>(i)];
    if (!(ne.mu > 0.0) || !std::isfinite(ne.mu))
      throw NonPositiveMeasure("node " + ne.id + ": mu must be positive and finite");
    if (!data->index.emplace(ne.id, i).second)
      throw DuplicateNode("duplicate node id: " + ne.id);
    data->ids.push_back(ne.id);
    data->mu[i] = ne.mu;
  }

  // Canonical unordered-pair map; repeated entries must agree in weight.
  std::map<std::pair<Index, Index>, double> pairs;
  for (const auto& e : edges) {
    auto ia = data->index.find(e.a);
    auto ib = data->index.find(e.b);
    if (ia == data->index.end()) throw UnknownNode("edge references unknown node: " + e.a);
    if (ib == data->index.end()) throw UnknownNode("edge references unknown node: " + e.b);
    if (ia->second == ib->second) throw SelfLoop("self loop on node: " + e.a);
    if (!(e.w > 0.0) || !std::isfinite(e.w))
      throw NonPositiveWeight("edge " + e.a + " " + e.b + ": weight must be positive and finite");
    auto key = std::minmax(ia->second, ib->second);
    auto [it, inserted] = pairs.emplace(std::pair<Index, Index>(key.first, key.second), e.w);
    if (!inserted && it->second != e.w)
      throw AsymmetricDuplicate("edge " + e.a + " " + e.b + ": conflicting weights");
  }

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(pairs.size() * 2);
  for (const auto& [key, w] : pairs) {
    trips.emplace_back(static_cast<int>(key.first), static_cast<int>(key.second), w);
    trips.emplace_back(static_cast<int>(key.second), static_cast<int>(key.first), w);
  }
  data->adj.resize(n, n);
  data->adj.setFromTriplets(trips.begin(), trips.end());
  data->adj.makeCompressed();

  data->row_sum.resize(n);
  for (Index i = 0; i < n; ++i) {
    double s = 0.0;
    for (WeightedGraph::SparseAdj::InnerIterator it(data->adj, i); it; ++it) s += it.value();
    data->row_sum[i] = s;
    Index deg = static_cast<Index>(data->adj.outerIndexPtr()[i + 1] - data->adj.outerIndexPtr()[i]);
    data->max_degree = std::max(data->max_degree, deg);
  }

  // BFS reachability from node 0.
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::deque<Index> q{0};
  seen[0] = 1;
  Index reached = 1;
  while (!q.empty()) {
    Index i = q.front();
    q.pop_front();
    for (WeightedGraph::SparseAdj::InnerIterator it(data->adj, i); it; ++it) {
      Index j = it.col();
      if (!seen[static_cast<size_t>(j)]) {
        seen[static_cast<size_t>(j)] = 1;
        ++reached;
        q.push_back(j);
      }
    }
  }
  data->connected = (reached == n);
  if (!data->connected && !allow_disconnected)
    throw Disconnected("graph is not connected");

  if (attrs.rows() > 0 && attrs.rows() != n)
    throw LengthMismatch("attrs row count != node count");
  data->attrs = std::move(attrs);
  return WeightedGraph(std::move(data));
}

double difference(const WeightedGraph& g, const NodeFunction& f, Index x, Index y) {
  if (f.size() != g.size()) throw LengthMismatch("difference: function length != node count");
  if (x < 0 || x >= g.size() || y < 0 || y >= g.size())
    throw UnknownNode("difference: node index out of range");
  return f[y] - f[x];
}

double difference(const WeightedGraph& g, const NodeFunction& f,
                  const std::string& x, const std::string& y) {
  return difference(g, f, g.index_of(x), g.index_of(y));
}

double ibp_residual(const WeightedGraph& g, const NodeFunction& f, const NodeFunction& h) {
  const Index n = g.size();
  if (f.size() != n || h.size() != n)
    throw LengthMismatch("ibp_residual: function length != node count");
  Vector lf = laplacian(g, f);
  double lhs = 0.0;
  for (Index i = 0; i < n; ++i) lhs += lf[i] * h[i] * g.mu()[i];
  double pair_sum = 0.0;  // runs over ordered pairs, hence the 1/2 below
  const auto& adj = g.adjacency();
  for (Index i = 0; i < n; ++i)
    for (WeightedGraph::SparseAdj::InnerIterator it(adj, i); it; ++it)
      pair_sum += it.value() * (f[it.col()] - f[i]) * (h[it.col()] - h[i]);
  return std::abs(lhs + 0.5 * pair_sum);
}

double volume(const WeightedGraph& g, std::span<const Index> subset) {
  double v = 0.0;
  for (Index i : subset) {
    if (i < 0 || i >= g.size()) throw UnknownNode("volume: node index out of range");
    v += g.mu()[i];
  }
  return v;
}

double volume_all(const WeightedGraph& g) { return g.mu().sum(); }

double row_sum_ratio(const WeightedGraph& g) {
  return (g.row_sum().array() / g.mu().array()).maxCoeff();
}

std::vector<Index> rim_nodes(const WeightedGraph& g) {
  std::vector<Index> rim;
  const Index dmax = g.max_degree();
  for (Index i = 0; i < g.size(); ++i)
    if (g.degree(i) < dmax) rim.push_back(i);
  return rim;
}

Eigen::Array<bool, Eigen::Dynamic, 1> near_rim_mask(const WeightedGraph& g, Index hops) {
  Eigen::Array<bool, Eigen::Dynamic, 1> mask(g.size());
  mask.setConstant(false);
  std::deque<std::pair<Index, Index>> q;
  for (Index i : rim_nodes(g)) {
    mask[i] = true;
    q.emplace_back(i, 0);
  }
  const auto& adj = g.adjacency();
  while (!q.empty()) {
    auto [i, depth] = q.front();
    q.pop_front();
    if (depth == hops) continue;
    for (WeightedGraph::SparseAdj::InnerIterator it(adj, i); it; ++it) {
      if (!mask[it.col()]) {
        mask[it.col()] = true;
        q.emplace_back(it.col(), depth + 1);
      }
    }
  }
  return mask;
}

}  // namespace gf

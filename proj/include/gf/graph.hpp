#pragma once

#include <Eigen/SparseCore>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "gf/types.hpp"

namespace gf {

// Weighted graph (V, omega, mu): symmetric nonnegative edge weights, no
// loops, strictly positive node measure.  Nodes are externally identified by
// strings and internally by dense indices 0..n-1.  Instances are immutable;
// copies share storage and are safe to read from any number of threads.
class WeightedGraph {
 public:
  using SparseAdj = Eigen::SparseMatrix<double, Eigen::RowMajor>;

  Index size() const { return d_->mu.size(); }
  const Vector& mu() const { return d_->mu; }
  const Vector& row_sum() const { return d_->row_sum; }
  const SparseAdj& adjacency() const { return d_->adj; }
  const std::vector<std::string>& ids() const { return d_->ids; }
  const std::string& id_of(Index i) const { return d_->ids.at(static_cast<size_t>(i)); }

  // Dense index for a node id; throws UnknownNode.
  Index index_of(const std::string& id) const;
  bool has_node(const std::string& id) const { return d_->index.count(id) > 0; }

  Index degree(Index i) const {
    return static_cast<Index>(d_->adj.outerIndexPtr()[i + 1] - d_->adj.outerIndexPtr()[i]);
  }
  Index max_degree() const { return d_->max_degree; }
  Index edge_count() const { return d_->adj.nonZeros() / 2; }
  bool connected() const { return d_->connected; }

  // Optional per-node integer attributes (lattice coordinates, tree levels,
  // product factor indices).  Zero columns when absent.
  const Eigen::MatrixXi& attrs() const { return d_->attrs; }

  struct Data {
    std::vector<std::string> ids;
    std::unordered_map<std::string, Index> index;
    Vector mu;
    Vector row_sum;
    SparseAdj adj;
    Eigen::MatrixXi attrs;
    Index max_degree = 0;
    bool connected = true;
  };

  explicit WeightedGraph(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

 private:
  std::shared_ptr<const Data> d_;
};

struct NodeEntry {
  std::string id;
  double mu;
};

struct EdgeEntry {
  std::string a, b;
  double w;
};

// Validates and assembles a graph.  Duplicate symmetric edge entries with
// equal weight are merged; unequal weights raise AsymmetricDuplicate.
// Connectivity is required unless allow_disconnected is set.
WeightedGraph build_graph(const std::vector<NodeEntry>& nodes,
                          const std::vector<EdgeEntry>& edges,
                          bool allow_disconnected = false,
                          Eigen::MatrixXi attrs = {});

// (Lf)(x) = (1/mu(x)) sum_y omega_xy (f(y) - f(x)).  Terms are accumulated
// per row in dense index order, so constants map to exact zero.
template <class Derived>
Vector laplacian(const WeightedGraph& g, const Eigen::MatrixBase<Derived>& f) {
  const Index n = g.size();
  if (f.size() != n) throw LengthMismatch("laplacian: function length != node count");
  Vector out(n);
  const auto& adj = g.adjacency();
  for (Index i = 0; i < n; ++i) {
    double acc = 0.0;
    const double fi = f[i];
    for (WeightedGraph::SparseAdj::InnerIterator it(adj, i); it; ++it)
      acc += it.value() * (f[it.col()] - fi);
    out[i] = acc / g.mu()[i];
  }
  return out;
}

// Difference operator along an ordered pair: f(y) - f(x).
double difference(const WeightedGraph& g, const NodeFunction& f, Index x, Index y);
double difference(const WeightedGraph& g, const NodeFunction& f,
                  const std::string& x, const std::string& y);

// |sum_x (Lf)(x) h(x) mu(x) + (1/2) sum_{x,y} omega_xy (f(y)-f(x)) (h(y)-h(x))|.
// Vanishes identically in exact arithmetic on finite graphs.
double ibp_residual(const WeightedGraph& g, const NodeFunction& f, const NodeFunction& h);

// sum of mu over a node subset (dense indices, range-checked).
double volume(const WeightedGraph& g, std::span<const Index> subset);
double volume_all(const WeightedGraph& g);

// sup_x sum_y omega_xy / mu(x).
double row_sum_ratio(const WeightedGraph& g);

// Truncation rim: nodes whose degree falls short of the maximum degree.
// Genuinely boundaryless graphs (cycles, complete products) yield an empty rim.
std::vector<Index> rim_nodes(const WeightedGraph& g);

// Nodes within the given hop count of any rim node (the rim itself included).
Eigen::Array<bool, Eigen::Dynamic, 1> near_rim_mask(const WeightedGraph& g, Index hops);

}  // namespace gf

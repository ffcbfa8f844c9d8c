#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gf/graph.hpp"
#include "gf/types.hpp"

namespace gf {

// Pseudo-metric on the node set of a fixed graph.  Kinds:
//   natural          hop-count distance from BFS
//   euclidean_coords L2 distance between integer coordinate attributes
//   product          (d1^(1+alpha) + d2^(1+alpha))^(1/(1+alpha)) on a product graph
//   custom_table     caller-supplied pairwise function, rows cached lazily
// Evaluators are immutable and safe for concurrent reads.
class PseudoMetric {
 public:
  enum class Kind { natural, euclidean_coords, product, custom_table };

  Kind kind() const;
  // Pairwise distance; throws Unreachable for nodes in different components.
  double operator()(Index x, Index y) const;
  // All distances from one base point (one BFS for the natural kind).
  // Unreachable nodes carry +inf.
  Vector distances_from(Index x0) const;
  // Jump size: sup of d over edges with positive weight.  Cached at build.
  double jump() const;
  const WeightedGraph& graph() const;

  static PseudoMetric natural(const WeightedGraph& g);
  static PseudoMetric euclidean(const WeightedGraph& g);
  // pg must carry two attribute columns holding factor indices.
  static PseudoMetric product(const WeightedGraph& pg, PseudoMetric left,
                              PseudoMetric right, double alpha);
  static PseudoMetric table(const WeightedGraph& g,
                            std::function<double(Index, Index)> fn);

  struct Impl;
  explicit PseudoMetric(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

 private:
  std::shared_ptr<const Impl> impl_;
};

// Hop distance between two nodes; throws UnknownNode / Unreachable.
double natural_distance(const WeightedGraph& g, const std::string& x, const std::string& y);
Index natural_distance(const WeightedGraph& g, Index x, Index y);

// Max of d over stored edges, by direct evaluation (cross-check for jump()).
double jump_size(const WeightedGraph& g, const PseudoMetric& d);

// Scalar combination rule behind the product kind.
double product_distance(double d1, double d2, double alpha);

// Closed ball {x : d(x0, x) <= R}, ascending dense indices.
std::vector<Index> ball(const WeightedGraph& g, const PseudoMetric& d, Index x0, double R);

// Distances from a base point together with the graph Laplacian of the
// distance function, plus the rim data needed to judge truncation effects.
struct DistanceProfile {
  Index x0 = 0;
  Vector d;          // dense node order
  Vector lap_d;      // dense node order
  std::vector<Index> by_distance;  // node indices sorted by d
  double jump = 0.0;
  double d_max = 0.0;

  // Columns: d laplacian_d node_id, sorted by d.
  std::string to_csv(const WeightedGraph& g) const;
};

DistanceProfile laplacian_of_distance(const WeightedGraph& g, const PseudoMetric& d, Index x0);

// Fit of (Ld)(x) <= C / d(x)^alpha outside the ball of radius R0:
// C_fit maximizes (Ld)(x) * d(x)^alpha over d(x) > R0, skipping nonpositive
// values.  ok reports whether the max is attained away from the truncation
// rim (margin two jump sizes); an empty exterior raises EmptyExterior.
struct DistanceBoundFit {
  double C_fit = 0.0;
  bool ok = true;
  Index argmax = -1;
};

DistanceBoundFit fit_distance_bound(const DistanceProfile& p, double R0, double alpha);

}  // namespace gf

#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "gf/graph.hpp"
#include "gf/metrics.hpp"
#include "gf/potential.hpp"

namespace gf {

// Space-time annulus around a base node: the set of (x, t) with
//   lo <= d(x0, x)^theta1 + t^theta2 <= hi.
// Both inequalities are closed, with a small relative tolerance so boundary
// points land inside regardless of rounding.
struct SpaceTimeRegion {
  Index x0 = 0;
  double theta1 = 2.0;  // >= 2
  double theta2 = 1.0;  // >= 1
  double lo = 0.0;
  double hi = 0.0;

  double shell(double dist, double t) const;
  bool contains(double dist, double t) const;

  // Largest t the region can reach (at dist = 0).
  double t_max() const;
  // Largest distance the region can reach (at t = 0).
  double spatial_reach() const;
};

// Shell where the scaled cutoff transitions: bounds [R^theta1, 2 R^theta1].
SpaceTimeRegion transition_annulus(Index x0, double theta1, double theta2,
                                   double R);
// Enlarged shell containing every node whose neighbourhood can touch the
// transition: bounds [(R/2)^theta1, (4R)^theta1].
SpaceTimeRegion halo_annulus(Index x0, double theta1, double theta2, double R);

bool region_membership(const SpaceTimeRegion& region, double dist, double t);
bool region_membership(const SpaceTimeRegion& region, const PseudoMetric& dist,
                       Index x, double t);

// Space-time integral of v(x, t)^(-q) over the region:
//   integral over t of  sum_x v(x, t)^(-q) 1_region(x, t) mu(x)  dt
// by composite midpoint quadrature with time step at most h_t.  Throws
// TruncationTooSmall when the region's spatial reach exceeds d_max - 2*jump,
// i.e. when the annulus is not safely interior to the truncated graph.
double hp_integral(const WeightedGraph& g, const PseudoMetric& dist,
                   const PotentialSpec& v, double q,
                   const SpaceTimeRegion& region, double h_t);

// Same integral starting at step h0, halved until the relative change drops
// below rel_tol.  If h_used is non-null it receives the final step.
double hp_integral_converged(const WeightedGraph& g, const PseudoMetric& dist,
                             const PotentialSpec& v, double q,
                             const SpaceTimeRegion& region, double h0,
                             double rel_tol = 0.01, double* h_used = nullptr);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;     // in log space
  double max_residual = 0.0;  // in log space
};

// Least-squares line through (log R, log value).  Requires at least 4
// samples, strictly increasing R > 0, and positive values.
FitResult fit_exponent(const std::vector<double>& R,
                       const std::vector<double>& value);

enum class Holds { yes, no, inconclusive };

const char* to_string(Holds h);

// Outcome of one empirical condition check.  Slope/target compare a fitted
// log-log exponent against an admissible bound; the verdict is yes when
// slope <= target + slack.  C_fit is exp of the fitted intercept where a fit
// was run.  Verdicts are finite-sample estimates, never proofs.
struct Verdict {
  std::string condition;
  Holds holds = Holds::inconclusive;
  double slope = std::numeric_limits<double>::quiet_NaN();
  double target = std::numeric_limits<double>::quiet_NaN();
  double slack = std::numeric_limits<double>::quiet_NaN();
  double C_fit = std::numeric_limits<double>::quiet_NaN();
  std::array<double, 2> R_range{std::numeric_limits<double>::quiet_NaN(),
                                std::numeric_limits<double>::quiet_NaN()};
  std::string notes;
  // Feasible (theta1, theta2) pair for checks that produce one.
  double witness_theta1 = std::numeric_limits<double>::quiet_NaN();
  double witness_theta2 = std::numeric_limits<double>::quiet_NaN();

  std::string to_json() const;
};

inline constexpr double kDefaultSlack = 0.1;

// Both integral growth conditions at fixed (theta1, theta2): the integral of
// v^(-1/(sigma-1)) over the transition annulus must grow no faster than
// R^(theta1 sigma / (theta2 (sigma-1))), and the integral of v^(-m/(sigma-m))
// no faster than R^((1+alpha) sigma / (sigma-m)).  Fitted over R_list; yes
// when both fitted slopes clear their targets within slack.  A truncation
// failure yields an inconclusive verdict, not an error.
Verdict check_theorem_hypotheses(const WeightedGraph& g,
                                 const PseudoMetric& dist, Index x0,
                                 const PotentialSpec& v, double sigma, double m,
                                 double alpha, double theta1, double theta2,
                                 const std::vector<double>& R_list,
                                 double slack = kDefaultSlack);

// Runs check_theorem_hypotheses over the (theta1, theta2) grid
// {2, 2.5, 3, 4} x {1, 1.5, 2, 3}; yes when some grid point passes.
Verdict check_theorem_grid(const WeightedGraph& g, const PseudoMetric& dist,
                           Index x0, const PotentialSpec& v, double sigma,
                           double m, double alpha,
                           const std::vector<double>& R_list,
                           double slack = kDefaultSlack);

// Feasibility of the exponent budget delta1..delta4 >= 0 attached to a
// factored lower bound f(t) g(x) on the potential:
//   (i)   delta1 <= sigma/(sigma-1) and delta4 <= (1+alpha) sigma/(sigma-m)
//   (ii)  delta1 at its cap forces delta2 = 0; delta4 at its cap forces
//         delta3 = 0
//   (iii) when delta2 and delta3 are both nonzero,
//         delta2 delta3 <= (sigma/(sigma-1) - delta1) *
//                          ((1+alpha) sigma/(sigma-m) - delta4)
// On yes, reports a witness (theta1, theta2) satisfying
//   (theta1/theta2) delta1 + delta2 <= (theta1/theta2) sigma/(sigma-1) and
//   (theta1/theta2) delta3 + delta4 <= (1+alpha) sigma/(sigma-m).
Verdict check_corollary1(double delta1, double delta2, double delta3,
                         double delta4, double sigma, double m, double alpha);

// Single-budget special case: delta (sigma-1) + delta_prime must lie in
// [0, (1+alpha) sigma / (sigma-m)].
Verdict check_corollary2(double delta, double delta_prime, double sigma,
                         double m, double alpha);

// Volume-growth condition: fitted slope of Vol(B_R(x0)) over R_list must not
// exceed (1+alpha)/(sigma-m) + slack.
Verdict check_corollary3(const WeightedGraph& g, const PseudoMetric& dist,
                         Index x0, double sigma, double m, double alpha,
                         const std::vector<double>& R_list,
                         double slack = kDefaultSlack);

// True when every sampled (d, t) point of the halo annulus lies in some
// transition annulus of radius 2^(k/theta1 - 1) R, 0 <= k <= l, with
// l = ceil(3 theta1) - 1.
bool verify_annulus_inclusion(
    double theta1, double theta2, double R,
    const std::vector<std::pair<double, double>>& dt_samples);
// Same check on n_samples random halo points plus the boundary probes.
bool verify_annulus_inclusion(double theta1, double theta2, double R,
                              std::size_t n_samples, std::uint64_t seed);

// Finite-graph growth condition: the integral over [T, 2T] of
// sum_x v^(-1/(sigma-1)) mu must grow no faster than T^(sigma/(sigma-1)).
// dist may be null; it is only consulted (falling back to hop distance from
// x0) when v varies in space.
Verdict check_finite_graph_condition(const WeightedGraph& g,
                                     const PotentialSpec& v, double sigma,
                                     const std::vector<double>& T_list,
                                     const PseudoMetric* dist = nullptr,
                                     Index x0 = 0,
                                     double slack = kDefaultSlack);

// Composite structural check for a graph/metric pair: pseudo-metric axioms
// on sampled triples, finite jump, and the distance-Laplacian decay bound
// C / d^alpha outside B_R0 with a rim-safe argmax.
Verdict check_assumption_a(const WeightedGraph& g, const PseudoMetric& dist,
                           Index x0, double R0, double alpha,
                           std::size_t n_samples = 1000,
                           std::uint64_t seed = 1);

}  // namespace gf

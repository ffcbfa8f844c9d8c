#pragma once

#include <string>
#include <vector>

#include "gf/graph.hpp"
#include "gf/hypotheses.hpp"
#include "gf/metrics.hpp"

namespace gf {

// C^2 plateau profile: exactly 1 on [0, 1], exactly 0 on [2, inf), joined by
// the quintic smoothstep on (1, 2).  Throws NegativeArgument for p < 0.
double cutoff_profile(double p);
double cutoff_profile_d1(double p);
double cutoff_profile_d2(double p);

// Scaled space-time cutoff attached to a graph metric and base point:
//   shell(x, t, R) = (d(x0, x)^theta1 + t^theta2) / R^theta1
//   value(x, t, R) = profile(shell)
//   dvalue_dt      = profile'(shell) * theta2 * t^(theta2-1) / R^theta1
// value is 1 near the base point, 0 once the shell coordinate passes 2, and
// transitions exactly over the transition annulus of radius R.
class CutoffFamily {
 public:
  CutoffFamily(WeightedGraph g, PseudoMetric dist, Index x0, double theta1,
               double theta2, double s = 1.0);

  double shell(Index x, double t, double R) const;
  double value(Index x, double t, double R) const;
  double dvalue_dt(Index x, double t, double R) const;

  // Support bounds: value(x, t, R) vanishes once d > reach or t > t_end.
  double support_reach(double R) const;  // 2^(1/theta1) R
  double support_t_end(double R) const;  // 2^(1/theta2) R^(theta1/theta2)

  const WeightedGraph& graph() const { return g_; }
  const PseudoMetric& metric() const { return dist_; }
  const Vector& distances() const { return d_; }
  Index x0() const { return x0_; }
  double theta1() const { return theta1_; }
  double theta2() const { return theta2_; }
  double s() const { return s_; }
  double jump() const { return jump_; }

  // Nodes ordered by distance from the base point, with the sorted distance
  // values; the prefix with d <= r covers every ball of radius r.
  const std::vector<Index>& by_distance() const { return order_; }
  const std::vector<double>& sorted_d() const { return sorted_d_; }
  // Cached d^theta1 per node, dense order.
  const Vector& shell_space() const { return w_; }

 private:
  WeightedGraph g_;
  PseudoMetric dist_;
  Index x0_;
  double theta1_, theta2_, s_;
  double jump_;
  Vector d_, w_;
  std::vector<Index> order_;
  std::vector<double> sorted_d_;
};

CutoffFamily make_cutoff(const WeightedGraph& g, const PseudoMetric& dist,
                         Index x0, double theta1, double theta2,
                         double s = 1.0);

struct EstEntry {
  double R = 0.0;
  double C_emp = 0.0;
  long support_violations = 0;
  long grid_size = 0;
};

struct EstReport {
  std::vector<EstEntry> entries;
  // max C_emp / min C_emp across the R list.
  double stability_ratio = 0.0;
  std::string to_json() const;
};

// Scans -laplacian(value) over every node and a refined t-grid per R:
// C_emp(R) is the largest positive part scaled by R^(1+alpha), and any
// positive part above 1e-12 outside the halo annulus counts as a support
// violation (the plateau structure forces an exact zero there once R is at
// least twice the jump size).  The t-grid starts at 512 midpoints and
// doubles until C_emp moves by less than 2%, capped at 4096.  Requires the
// truncation radius to be at least 5x the largest R.
EstReport verify_est1(const CutoffFamily& fam, const std::vector<double>& R_list,
                      double alpha);

// Same scan for the time derivative: C_emp(R) is the largest positive part
// of -dvalue_dt scaled by R^(theta1/theta2); support violations are counted
// outside the transition annulus.
EstReport verify_est2(const CutoffFamily& fam,
                      const std::vector<double>& R_list);

}  // namespace gf

#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gf/cutoff.hpp"
#include "gf/graph.hpp"
#include "gf/metrics.hpp"
#include "gf/potential.hpp"

namespace gf {

// Nonlinearity F driving u_t = laplacian(F(u)) + v u^sigma.  Kinds:
//   linear        F(p) = p
//   power         F(p) = p^m, m > 0
//   capped_power  F(p) = min(p^m, K), K > 0
//   table         caller-supplied F and F' with a declared growth exponent
// Every kind satisfies F(0) = 0, F nondecreasing, and F(p) <= C_F p^m; the
// constructor verifies the three properties on a log-spaced sample grid.
class Nonlinearity {
 public:
  enum class Kind { linear, power, capped_power, table };

  double operator()(double p) const;
  double deriv(double p) const;

  Kind kind() const { return kind_; }
  double m() const { return m_; }
  double cap() const { return cap_; }
  double C_F() const { return C_F_; }
  const std::string& text() const { return text_; }

  // "linear" | "power:<m>" | "capped:<m>,<K>"
  static Nonlinearity parse(std::string_view text);
  static Nonlinearity linear();
  static Nonlinearity power(double m);
  static Nonlinearity capped(double m, double K);
  static Nonlinearity table(std::function<double(double)> F,
                            std::function<double(double)> Fprime, double m,
                            double C_F, std::string label = "table");

  // Re-checks zero at zero, monotonicity, and the growth bound on the
  // log-spaced grid p in [1e-8, 1e8]; throws ParameterOutOfRange.
  void validate() const;

 private:
  Nonlinearity() = default;
  Kind kind_ = Kind::linear;
  double m_ = 1.0;
  double cap_ = 0.0;
  double C_F_ = 1.0;
  std::string text_ = "linear";
  std::function<double(double)> fn_, dfn_;
};

enum class RimPolicy { dirichlet_zero, reflecting };

enum class SimClass { blow_up, extinction, decay, steady, undecided };

std::string to_string(SimClass c);

// Initial data recipes: "const:<c>" | "bump:scale=<s>,radius=<r>" (value s on
// the hop ball of radius r around x0) | "random:lo=<a>,hi=<b>" (uniform per
// node, seeded).
Vector build_u0(const WeightedGraph& g, std::string_view spec, Index x0,
                unsigned long seed);

struct SimConfig {
  WeightedGraph graph;
  Nonlinearity F = Nonlinearity::linear();
  double sigma = 2.0;
  // Reaction term v(x, t) u^sigma; disabled entirely when reaction is false.
  bool reaction = true;
  PotentialSpec potential = PotentialSpec::constant(1.0);
  // Metric for spatially varying potentials and bump data; hop metric when absent.
  std::optional<PseudoMetric> metric;
  Index x0 = 0;
  Vector u0;
  double t_max = 10.0;
  double U_max = 1e12;
  double dt_min = 1e-14;
  double safety = 0.02;
  // > 0 switches to fixed steps with no adaptivity or rejection.
  double dt_fixed = 0.0;
  // Constant sink c >= 0 turns the dynamics into u_t = laplacian(F(u)) + v u^sigma - c,
  // a deliberate violation of the modelled inequality for sign probes.
  double sink = 0.0;
  RimPolicy rim_policy = RimPolicy::dirichlet_zero;
  unsigned long seed = 1;
  // Full-state snapshot times (ascending); steps land on them exactly.
  std::vector<double> snapshot_times;
  long series_cap = 2048;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
};

struct SimOutcome {
  SimClass cls = SimClass::undecided;
  // Threshold crossing time for blow_up / extinction, NaN otherwise.
  double t_event = std::numeric_limits<double>::quiet_NaN();
  // Decimated per-step series.
  std::vector<double> series_t, series_max, series_min, series_mass;
  long steps = 0;
  long rejected = 0;
  long clipped = 0;  // node-level clip events
  long stalled_steps = 0;
  bool clip_heavy = false;  // clip events above 0.1% of all node updates
  bool rim_influence = false;
  double rim_first_t = std::numeric_limits<double>::quiet_NaN();
  double peak_max = 0.0;
  double final_max = 0.0;
  double final_dt = std::numeric_limits<double>::quiet_NaN();
  double t_end = 0.0;
  std::string note;
  Trajectory trajectory;

  std::string summary_json() const;
  // Columns t,max_u,min_u,mass.
  std::string series_csv() const;
};

// One explicit Euler update u + dt (laplacian(F(u)) + v(., t) u^sigma - sink)
// clipped at zero from below, rim policy applied.  Clip events are added to
// *clipped when given.  Throws NonFiniteState on overflow.
NodeFunction step(const NodeFunction& state, double t, double dt,
                  const SimConfig& cfg, long* clipped = nullptr);

// Adaptive explicit integration with outcome classification.  The step size
// is safety * min(stability ceiling of the diffusion term, reaction time
// scale), halved on rejection (negative undershoot beyond the clip guard or
// over 20% single-step growth), floored at dt_min.  blow_up is declared only
// once max u >= U_max with the controller pinned at the floor; extinction
// only for m < 1 once max u <= 1e-12.  A floored controller without growth
// stops the run as undecided (stall note).  Deterministic given cfg.
SimOutcome integrate(const SimConfig& cfg);

// Blow-up time u0^(1-sigma)/(sigma-1) of the spatially constant problem
// u' = u^sigma, u(0) = u0.
double ode_blowup_time(double u0, double sigma);

// Quadrature of the weak form of the inequality against value(.,.,R)^s:
//   integral of sum_x [laplacian(F(u)) phi^s + v u^sigma phi^s
//                      + u s phi^(s-1) dphi/dt] mu dt
//   + sum_x u(x, 0) phi(x, 0)^s mu.
// Zero in the limit for equation-exact trajectories, nonpositive for
// solutions of the inequality, strictly positive for sink dynamics.
// Requires s > max(sigma/(sigma-1), sigma/(sigma-m)) and trajectory times
// reaching the time support of the cutoff (InsufficientCoverage).
double weak_residual(const Trajectory& traj, const CutoffFamily& fam, double R,
                     double s, double sigma, const Nonlinearity& F,
                     const PotentialSpec* v = nullptr);

struct SweepGrid {
  WeightedGraph graph;
  std::string family_label = "graph";
  int N = 1;
  std::vector<double> sigma_list;
  std::vector<double> m_list;
  std::vector<double> u0_scales;
  // Shape scaled by each u0_scale entry.
  std::string u0_shape = "const:1";
};

struct SweepRecord {
  double sigma = 0.0;
  double m = 0.0;
  double u0_scale = 0.0;
  SimClass cls = SimClass::undecided;
  double t_event = std::numeric_limits<double>::quiet_NaN();
  bool rim_flag = false;
  std::string note;
};

// One integrate per (sigma, m, u0_scale), nested in that order.  Cells run
// on a bounded worker pool; failures are recorded as undecided with the
// error text; output order is the grid order regardless of jobs.
std::vector<SweepRecord> sweep(const SweepGrid& grid, const SimConfig& defaults,
                               int jobs = 1);

// CSV with a header comment carrying every default that shaped the runs.
std::string sweep_csv(const SweepGrid& grid,
                      const std::vector<SweepRecord>& records,
                      const SimConfig& defaults);

// Long-form CSV t,node_id,u of full-state snapshots.
std::string trajectory_csv(const WeightedGraph& g, const Trajectory& traj);

}  // namespace gf

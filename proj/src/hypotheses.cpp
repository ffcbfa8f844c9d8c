#include "gf/hypotheses.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>

namespace gf {

namespace {

// Relative tolerance for closed region boundaries.
constexpr double kBoundaryEps = 1e-12;

void require(bool ok, const char* msg) {
  if (!ok) throw ParameterOutOfRange(msg);
}

// Shortest round-trip decimal form, for JSON output.
std::string num_str(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string short_str(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

// Node distances sorted ascending alongside prefix sums of a per-node
// weight, for O(log n) sums over distance slices.
struct SlicedSums {
  std::vector<double> d;       // sorted distances
  std::vector<double> prefix;  // prefix[i] = sum of weights of d[0..i)

  // Sum of weights over nodes with d in [d_lo, d_hi].
  double sum(double d_lo, double d_hi) const {
    auto lo = std::lower_bound(d.begin(), d.end(), d_lo);
    auto hi = std::upper_bound(d.begin(), d.end(), d_hi);
    return prefix[static_cast<std::size_t>(hi - d.begin())] -
           prefix[static_cast<std::size_t>(lo - d.begin())];
  }
};

template <typename WeightFn>
SlicedSums slice_by_distance(const Vector& dist, const Vector& mu,
                             WeightFn&& weight) {
  const auto n = static_cast<std::size_t>(dist.size());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (dist[static_cast<Index>(a)] != dist[static_cast<Index>(b)])
      return dist[static_cast<Index>(a)] < dist[static_cast<Index>(b)];
    return a < b;
  });
  SlicedSums out;
  out.d.resize(n);
  out.prefix.assign(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto node = static_cast<Index>(order[i]);
    out.d[i] = dist[node];
    out.prefix[i + 1] = out.prefix[i] + weight(dist[node], mu[node]);
  }
  return out;
}

void check_truncation(const SpaceTimeRegion& region, const Vector& dist,
                      double jump) {
  const double d_max = dist.maxCoeff();
  const double reach = region.spatial_reach();
  if (reach > d_max - 2.0 * jump) {
    throw TruncationTooSmall(
        "region reaches distance " + short_str(reach) +
        " but the graph is truncated at " + short_str(d_max) +
        " (need a margin of two jump sizes)");
  }
}

}  // namespace

double SpaceTimeRegion::shell(double dist, double t) const {
  return std::pow(dist, theta1) + std::pow(t, theta2);
}

bool SpaceTimeRegion::contains(double dist, double t) const {
  const double w = shell(dist, t);
  return w >= lo * (1.0 - kBoundaryEps) && w <= hi * (1.0 + kBoundaryEps);
}

double SpaceTimeRegion::t_max() const { return std::pow(hi, 1.0 / theta2); }

double SpaceTimeRegion::spatial_reach() const {
  return std::pow(hi, 1.0 / theta1);
}

SpaceTimeRegion transition_annulus(Index x0, double theta1, double theta2,
                                   double R) {
  require(theta1 >= 2.0, "annulus: theta1 must be >= 2");
  require(theta2 >= 1.0, "annulus: theta2 must be >= 1");
  require(R > 0.0, "annulus: R must be positive");
  const double w = std::pow(R, theta1);
  return SpaceTimeRegion{x0, theta1, theta2, w, 2.0 * w};
}

SpaceTimeRegion halo_annulus(Index x0, double theta1, double theta2,
                             double R) {
  require(theta1 >= 2.0, "annulus: theta1 must be >= 2");
  require(theta2 >= 1.0, "annulus: theta2 must be >= 1");
  require(R > 0.0, "annulus: R must be positive");
  return SpaceTimeRegion{x0, theta1, theta2, std::pow(R / 2.0, theta1),
                         std::pow(4.0 * R, theta1)};
}

bool region_membership(const SpaceTimeRegion& region, double dist, double t) {
  require(t >= 0.0, "region membership: t must be nonnegative");
  require(dist >= 0.0, "region membership: distance must be nonnegative");
  return region.contains(dist, t);
}

bool region_membership(const SpaceTimeRegion& region, const PseudoMetric& dist,
                       Index x, double t) {
  return region_membership(region, dist(region.x0, x), t);
}

double hp_integral(const WeightedGraph& g, const PseudoMetric& dist,
                   const PotentialSpec& v, double q,
                   const SpaceTimeRegion& region, double h_t) {
  require(q > 0.0, "hp_integral: q must be positive");
  require(h_t > 0.0, "hp_integral: h_t must be positive");
  require(region.hi > region.lo && region.lo >= 0.0,
          "hp_integral: region bounds must satisfy 0 <= lo < hi");

  const Vector d = dist.distances_from(region.x0);
  check_truncation(region, d, dist.jump());

  const SlicedSums sums =
      slice_by_distance(d, g.mu(), [&](double dd, double mu) {
        return std::pow(v.space_factor(dd), -q) * mu;
      });

  const double t_hi = region.t_max();
  const auto n_steps =
      std::max<long>(1, static_cast<long>(std::ceil(t_hi / h_t)));
  const double h = t_hi / static_cast<double>(n_steps);
  const double lo_eff = region.lo * (1.0 - kBoundaryEps);
  const double hi_eff = region.hi * (1.0 + kBoundaryEps);
  const double inv_theta1 = 1.0 / region.theta1;

  double total = 0.0;
  for (long j = 0; j < n_steps; ++j) {
    const double t = (static_cast<double>(j) + 0.5) * h;
    const double tth = std::pow(t, region.theta2);
    const double w_hi = hi_eff - tth;
    if (w_hi < 0.0) break;  // t^theta2 grows; later slices are empty too
    const double w_lo = lo_eff - tth;
    const double d_hi = std::pow(w_hi, inv_theta1);
    const double d_lo = w_lo <= 0.0 ? 0.0 : std::pow(w_lo, inv_theta1);
    const double s = sums.sum(d_lo, d_hi);
    if (s != 0.0) total += std::pow(v.time_factor(t), -q) * s;
  }
  return total * h;
}

double hp_integral_converged(const WeightedGraph& g, const PseudoMetric& dist,
                             const PotentialSpec& v, double q,
                             const SpaceTimeRegion& region, double h0,
                             double rel_tol, double* h_used) {
  require(rel_tol > 0.0, "hp_integral_converged: rel_tol must be positive");
  double h = h0;
  double value = hp_integral(g, dist, v, q, region, h);
  for (int level = 0; level < 8; ++level) {
    const double h_next = h / 2.0;
    const double refined = hp_integral(g, dist, v, q, region, h_next);
    const bool close = std::abs(refined - value) <=
                       rel_tol * std::max(std::abs(refined), 1e-300);
    h = h_next;
    value = refined;
    if (close) break;
  }
  if (h_used) *h_used = h;
  return value;
}

FitResult fit_exponent(const std::vector<double>& R,
                       const std::vector<double>& value) {
  if (R.size() != value.size())
    throw LengthMismatch("fit_exponent: R and value lengths differ");
  if (R.size() < 4) throw TooFewSamples("fit_exponent: need at least 4 samples");
  for (std::size_t i = 0; i < R.size(); ++i) {
    if (!(R[i] > 0.0) || !(value[i] > 0.0))
      throw NonPositiveValue("fit_exponent: samples must be positive");
    if (i > 0 && !(R[i] > R[i - 1]))
      throw ParameterOutOfRange("fit_exponent: R must be strictly increasing");
  }

  const auto n = static_cast<double>(R.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < R.size(); ++i) {
    const double x = std::log(R[i]);
    const double y = std::log(value[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  FitResult fit;
  const double denom = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  for (std::size_t i = 0; i < R.size(); ++i) {
    const double res = std::abs(std::log(value[i]) - fit.intercept -
                                fit.slope * std::log(R[i]));
    fit.max_residual = std::max(fit.max_residual, res);
  }
  return fit;
}

const char* to_string(Holds h) {
  switch (h) {
    case Holds::yes: return "yes";
    case Holds::no: return "no";
    case Holds::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string Verdict::to_json() const {
  std::ostringstream out;
  out << "{\"condition\": \"" << json_escape(condition) << "\""
      << ", \"holds\": \"" << to_string(holds) << "\""
      << ", \"slope\": " << num_str(slope)
      << ", \"target\": " << num_str(target)
      << ", \"slack\": " << num_str(slack)
      << ", \"C_fit\": " << num_str(C_fit)
      << ", \"R_range\": [" << num_str(R_range[0]) << ", "
      << num_str(R_range[1]) << "]"
      << ", \"notes\": \"" << json_escape(notes) << "\"";
  if (std::isfinite(witness_theta1) && std::isfinite(witness_theta2)) {
    out << ", \"witness_theta1\": " << num_str(witness_theta1)
        << ", \"witness_theta2\": " << num_str(witness_theta2);
  }
  out << "}";
  return out.str();
}

Verdict check_theorem_hypotheses(const WeightedGraph& g,
                                 const PseudoMetric& dist, Index x0,
                                 const PotentialSpec& v, double sigma, double m,
                                 double alpha, double theta1, double theta2,
                                 const std::vector<double>& R_list,
                                 double slack) {
  require(m > 0.0, "theorem check: m must be positive");
  require(sigma > std::max(1.0, m), "theorem check: need sigma > max(1, m)");
  require(theta1 >= 2.0, "theorem check: theta1 must be >= 2");
  require(theta2 >= 1.0, "theorem check: theta2 must be >= 1");
  require(alpha >= 0.0 && alpha <= 1.0, "theorem check: alpha must be in [0,1]");
  require(!R_list.empty(), "theorem check: R_list must be nonempty");

  const double q1 = 1.0 / (sigma - 1.0);
  const double q2 = m / (sigma - m);
  const double target1 = theta1 * sigma / (theta2 * (sigma - 1.0));
  const double target2 = (1.0 + alpha) * sigma / (sigma - m);

  Verdict out;
  out.condition = "theorem";
  out.slack = slack;
  out.R_range = {R_list.front(), R_list.back()};

  std::vector<double> vals1, vals2;
  vals1.reserve(R_list.size());
  vals2.reserve(R_list.size());
  try {
    for (double R : R_list) {
      const SpaceTimeRegion region = transition_annulus(x0, theta1, theta2, R);
      const double h0 = std::pow(R, theta1 / theta2) / 512.0;
      vals1.push_back(hp_integral_converged(g, dist, v, q1, region, h0));
      vals2.push_back(hp_integral_converged(g, dist, v, q2, region, h0));
    }
  } catch (const TruncationTooSmall& e) {
    out.holds = Holds::inconclusive;
    out.notes = std::string("inconclusive: ") + e.what();
    return out;
  }

  const FitResult fit1 = fit_exponent(R_list, vals1);
  const FitResult fit2 = fit_exponent(R_list, vals2);
  const bool ok1 = fit1.slope <= target1 + slack;
  const bool ok2 = fit2.slope <= target2 + slack;
  out.holds = ok1 && ok2 ? Holds::yes : Holds::no;

  const bool second_binds = fit2.slope - target2 > fit1.slope - target1;
  const FitResult& binding = second_binds ? fit2 : fit1;
  out.slope = binding.slope;
  out.target = second_binds ? target2 : target1;
  out.C_fit = std::exp(binding.intercept);
  out.notes = "theta1=" + short_str(theta1) + " theta2=" + short_str(theta2) +
              "; int1[q=1/(sigma-1)] slope " + short_str(fit1.slope) +
              " vs " + short_str(target1) + "; int2[q=m/(sigma-m)] slope " +
              short_str(fit2.slope) + " vs " + short_str(target2);
  if (out.holds == Holds::yes) {
    out.witness_theta1 = theta1;
    out.witness_theta2 = theta2;
  }
  return out;
}

Verdict check_theorem_grid(const WeightedGraph& g, const PseudoMetric& dist,
                           Index x0, const PotentialSpec& v, double sigma,
                           double m, double alpha,
                           const std::vector<double>& R_list, double slack) {
  static constexpr double kTheta1[] = {2.0, 2.5, 3.0, 4.0};
  static constexpr double kTheta2[] = {1.0, 1.5, 2.0, 3.0};

  Verdict out;
  out.condition = "theorem-grid";
  out.slack = slack;
  if (!R_list.empty()) out.R_range = {R_list.front(), R_list.back()};

  bool any_inconclusive = false;
  bool have_best = false;
  Verdict best;
  double best_excess = 0.0;
  std::string passing;
  int tried = 0;

  for (double t1 : kTheta1) {
    for (double t2 : kTheta2) {
      ++tried;
      const Verdict sub = check_theorem_hypotheses(g, dist, x0, v, sigma, m,
                                                   alpha, t1, t2, R_list, slack);
      if (sub.holds == Holds::inconclusive) {
        any_inconclusive = true;
        continue;
      }
      const double excess = sub.slope - sub.target;
      if (!have_best || excess < best_excess) {
        have_best = true;
        best = sub;
        best_excess = excess;
      }
      if (sub.holds == Holds::yes) {
        if (!passing.empty()) passing += ", ";
        passing += "(" + short_str(t1) + ", " + short_str(t2) + ")";
      }
    }
  }

  if (have_best) {
    out.slope = best.slope;
    out.target = best.target;
    out.C_fit = best.C_fit;
  }
  if (!passing.empty()) {
    out.holds = Holds::yes;
    out.witness_theta1 = best.witness_theta1;
    out.witness_theta2 = best.witness_theta2;
    out.notes = "passing (theta1, theta2): " + passing;
  } else if (any_inconclusive) {
    out.holds = Holds::inconclusive;
    out.notes = "no grid point passes; some were inconclusive (truncation)";
  } else {
    out.holds = Holds::no;
    out.notes = "none of " + std::to_string(tried) +
                " grid points satisfies both integral conditions; closest: " +
                (have_best ? best.notes : std::string("n/a"));
  }
  return out;
}

Verdict check_corollary1(double delta1, double delta2, double delta3,
                         double delta4, double sigma, double m, double alpha) {
  require(m > 0.0, "cor1: m must be positive");
  require(sigma > std::max(1.0, m), "cor1: need sigma > max(1, m)");
  require(alpha >= 0.0 && alpha <= 1.0, "cor1: alpha must be in [0,1]");
  for (double d : {delta1, delta2, delta3, delta4})
    require(d >= 0.0 && std::isfinite(d), "cor1: deltas must be >= 0");

  const double cap1 = sigma / (sigma - 1.0);
  const double cap4 = (1.0 + alpha) * sigma / (sigma - m);

  const bool cond_i = delta1 <= cap1 && delta4 <= cap4;
  const bool cond_ii = (delta1 != cap1 || delta2 == 0.0) &&
                       (delta4 != cap4 || delta3 == 0.0);
  const bool product_applies = delta2 != 0.0 && delta3 != 0.0;
  const bool cond_iii =
      !product_applies ||
      delta2 * delta3 <= (cap1 - delta1) * (cap4 - delta4);

  Verdict out;
  out.condition = "cor1";
  out.holds = cond_i && cond_ii && cond_iii ? Holds::yes : Holds::no;
  out.slope = delta2 * delta3;
  out.target = (cap1 - delta1) * (cap4 - delta4);
  out.slack = 0.0;
  out.notes = std::string("interval cap: ") + (cond_i ? "ok" : "violated") +
              "; cap boundary: " + (cond_ii ? "ok" : "violated") +
              "; product: " +
              (product_applies ? (cond_iii ? "ok" : "violated") : "vacuous");
  if (product_applies == false && (delta2 == 0.0) != (delta3 == 0.0))
    out.notes += " (mixed zero: product condition vacuous by its quantifier)";

  if (out.holds == Holds::yes) {
    // Feasible ratio rho = theta1/theta2 must satisfy
    // rho >= delta2 / (cap1 - delta1) and rho <= (cap4 - delta4) / delta3.
    const double rho_min = delta2 > 0.0 ? delta2 / (cap1 - delta1) : 0.0;
    const double rho_max = delta3 > 0.0
                               ? (cap4 - delta4) / delta3
                               : std::numeric_limits<double>::infinity();
    const double rho = std::min(std::max(2.0, rho_min), rho_max);
    if (rho >= 2.0) {
      out.witness_theta1 = rho;
      out.witness_theta2 = 1.0;
    } else {
      out.witness_theta1 = 2.0;
      out.witness_theta2 = 2.0 / rho;
    }
    out.notes += "; witness theta1=" + short_str(out.witness_theta1) +
                 " theta2=" + short_str(out.witness_theta2);
  }
  return out;
}

Verdict check_corollary2(double delta, double delta_prime, double sigma,
                         double m, double alpha) {
  require(m > 0.0, "cor2: m must be positive");
  require(sigma > std::max(1.0, m), "cor2: need sigma > max(1, m)");
  require(alpha >= 0.0 && alpha <= 1.0, "cor2: alpha must be in [0,1]");
  require(delta >= 0.0 && delta_prime >= 0.0, "cor2: deltas must be >= 0");

  const double value = delta * (sigma - 1.0) + delta_prime;
  const double cap = (1.0 + alpha) * sigma / (sigma - m);

  Verdict out;
  out.condition = "cor2";
  out.holds = value <= cap ? Holds::yes : Holds::no;
  out.slope = value;
  out.target = cap;
  out.slack = 0.0;
  out.notes = "delta (sigma-1) + delta' = " + short_str(value) +
              " vs cap " + short_str(cap);
  return out;
}

Verdict check_corollary3(const WeightedGraph& g, const PseudoMetric& dist,
                         Index x0, double sigma, double m, double alpha,
                         const std::vector<double>& R_list, double slack) {
  require(m > 0.0, "cor3: m must be positive");
  require(sigma > std::max(1.0, m), "cor3: need sigma > max(1, m)");
  require(alpha >= 0.0 && alpha <= 1.0, "cor3: alpha must be in [0,1]");
  require(!R_list.empty(), "cor3: R_list must be nonempty");

  const Vector d = dist.distances_from(x0);
  const double d_max = d.maxCoeff();
  const double jump = dist.jump();
  if (R_list.back() > d_max - 2.0 * jump) {
    throw TruncationTooSmall("cor3: largest ball radius " +
                             short_str(R_list.back()) +
                             " is too close to the truncation rim at " +
                             short_str(d_max));
  }

  const SlicedSums sums = slice_by_distance(
      d, g.mu(), [](double, double mu) { return mu; });
  std::vector<double> vols;
  vols.reserve(R_list.size());
  for (double R : R_list)
    vols.push_back(sums.sum(0.0, R * (1.0 + kBoundaryEps)));

  const FitResult fit = fit_exponent(R_list, vols);
  const double target = (1.0 + alpha) / (sigma - m);

  Verdict out;
  out.condition = "cor3";
  out.holds = fit.slope <= target + slack ? Holds::yes : Holds::no;
  out.slope = fit.slope;
  out.target = target;
  out.slack = slack;
  out.C_fit = std::exp(fit.intercept);
  out.R_range = {R_list.front(), R_list.back()};
  out.notes = "volume slope " + short_str(fit.slope) + " vs cap " +
              short_str(target) + " (max log residual " +
              short_str(fit.max_residual) + ")";
  return out;
}

bool verify_annulus_inclusion(
    double theta1, double theta2, double R,
    const std::vector<std::pair<double, double>>& dt_samples) {
  require(theta1 >= 2.0, "inclusion: theta1 must be >= 2");
  require(theta2 >= 1.0, "inclusion: theta2 must be >= 1");
  require(R > 0.0, "inclusion: R must be positive");

  const int l = static_cast<int>(std::ceil(3.0 * theta1)) - 1;
  std::vector<SpaceTimeRegion> covers;
  covers.reserve(static_cast<std::size_t>(l) + 1);
  for (int k = 0; k <= l; ++k) {
    const double Rk =
        std::pow(2.0, static_cast<double>(k) / theta1 - 1.0) * R;
    covers.push_back(transition_annulus(0, theta1, theta2, Rk));
  }

  for (const auto& [d, t] : dt_samples) {
    bool covered = false;
    for (const SpaceTimeRegion& region : covers) {
      if (region.contains(d, t)) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

bool verify_annulus_inclusion(double theta1, double theta2, double R,
                              std::size_t n_samples, std::uint64_t seed) {
  const SpaceTimeRegion halo = halo_annulus(0, theta1, theta2, R);
  std::vector<std::pair<double, double>> samples;
  samples.reserve(n_samples + 4);
  samples.emplace_back(std::pow(halo.lo, 1.0 / theta1), 0.0);
  samples.emplace_back(std::pow(halo.hi, 1.0 / theta1), 0.0);
  samples.emplace_back(0.0, std::pow(halo.lo, 1.0 / theta2));
  samples.emplace_back(0.0, std::pow(halo.hi, 1.0 / theta2));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double w = halo.lo + unif(rng) * (halo.hi - halo.lo);
    const double f = unif(rng);
    samples.emplace_back(std::pow(f * w, 1.0 / theta1),
                         std::pow((1.0 - f) * w, 1.0 / theta2));
  }
  return verify_annulus_inclusion(theta1, theta2, R, samples);
}

Verdict check_finite_graph_condition(const WeightedGraph& g,
                                     const PotentialSpec& v, double sigma,
                                     const std::vector<double>& T_list,
                                     const PseudoMetric* dist, Index x0,
                                     double slack) {
  require(sigma > 1.0, "finite-graph check: sigma must exceed 1");
  require(!T_list.empty(), "finite-graph check: T_list must be nonempty");
  for (double T : T_list)
    require(T > 0.0, "finite-graph check: T values must be positive");

  const double q = 1.0 / (sigma - 1.0);

  double spatial = 0.0;
  if (v.spatially_uniform()) {
    spatial = std::pow(v.space_factor(0.0), -q) * volume_all(g);
  } else {
    const Vector d = dist != nullptr
                         ? dist->distances_from(x0)
                         : PseudoMetric::natural(g).distances_from(x0);
    for (Index i = 0; i < g.size(); ++i)
      spatial += std::pow(v.space_factor(d[i]), -q) * g.mu()[i];
  }

  // Midpoint quadrature of the time factor over [T, 2T], refined until the
  // relative change drops below 1%.
  auto time_integral = [&](double T) {
    long n = 512;
    double value = 0.0;
    for (int level = 0;; ++level) {
      const double h = T / static_cast<double>(n);
      double sum = 0.0;
      for (long j = 0; j < n; ++j) {
        const double t = T + (static_cast<double>(j) + 0.5) * h;
        sum += std::pow(v.time_factor(t), -q);
      }
      const double refined = sum * h;
      const bool close =
          level > 0 && std::abs(refined - value) <=
                           0.01 * std::max(std::abs(refined), 1e-300);
      value = refined;
      if (close || level >= 6) break;
      n *= 2;
    }
    return value;
  };

  std::vector<double> vals;
  vals.reserve(T_list.size());
  for (double T : T_list) vals.push_back(spatial * time_integral(T));

  const FitResult fit = fit_exponent(T_list, vals);
  const double target = sigma / (sigma - 1.0);

  Verdict out;
  out.condition = "finite";
  out.holds = fit.slope <= target + slack ? Holds::yes : Holds::no;
  out.slope = fit.slope;
  out.target = target;
  out.slack = slack;
  out.C_fit = std::exp(fit.intercept);
  out.R_range = {T_list.front(), T_list.back()};
  out.notes = "window-integral slope " + short_str(fit.slope) + " vs cap " +
              short_str(target) + " over T in [" + short_str(T_list.front()) +
              ", " + short_str(T_list.back()) + "]";
  return out;
}

Verdict check_assumption_a(const WeightedGraph& g, const PseudoMetric& dist,
                           Index x0, double R0, double alpha,
                           std::size_t n_samples, std::uint64_t seed) {
  require(alpha >= 0.0 && alpha <= 1.0, "assumption check: alpha in [0,1]");
  require(R0 > 0.0, "assumption check: R0 must be positive");
  require(n_samples > 0, "assumption check: need at least one sample");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> pick(0, g.size() - 1);
  long violations = 0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const Index x = pick(rng), y = pick(rng), z = pick(rng);
    const double dxy = dist(x, y);
    const double dyx = dist(y, x);
    const double dxz = dist(x, z);
    const double dyz = dist(y, z);
    const double tol = 1e-12 * (1.0 + dxy + dyz);
    if (dxy < 0.0 || std::abs(dxy - dyx) > tol ||
        std::abs(dist(x, x)) > 1e-12 || dxz > dxy + dyz + tol)
      ++violations;
  }

  const double jump = dist.jump();
  const bool jump_ok = std::isfinite(jump) && jump > 0.0;

  const DistanceProfile profile = laplacian_of_distance(g, dist, x0);

  Verdict out;
  out.condition = "assumption-a";
  out.slack = 0.0;
  out.R_range = {R0, profile.d_max};

  bool fit_ran = false;
  DistanceBoundFit fit;
  try {
    fit = fit_distance_bound(profile, R0, alpha);
    fit_ran = true;
  } catch (const EmptyExterior&) {
  }

  if (violations > 0 || !jump_ok) {
    out.holds = Holds::no;
  } else if (!fit_ran || !fit.ok) {
    out.holds = Holds::inconclusive;
  } else {
    out.holds = Holds::yes;
    out.C_fit = fit.C_fit;
  }

  out.notes = std::to_string(violations) + " axiom violations on " +
              std::to_string(n_samples) + " triples; jump=" + short_str(jump);
  if (fit_ran) {
    out.C_fit = fit.C_fit;
    out.notes += "; decay fit C=" + short_str(fit.C_fit) + " (alpha=" +
                 short_str(alpha) + ", beyond R0=" + short_str(R0) + ")" +
                 (fit.ok ? "" : "; fit max sits at the truncation rim");
  } else {
    out.notes += "; no nodes beyond R0=" + short_str(R0);
  }
  return out;
}

}  // namespace gf

#include "gf/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <thread>
#include <utility>

namespace gf {

namespace {

constexpr double kStateReg = 1e-10;    // F' regularisation scale
constexpr double kExtinctTol = 1e-12;  // extinction threshold on max u
constexpr double kRimTol = 1e-10;      // support threshold for the rim flag

std::string num_str(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string json_num(double v) {
  if (!std::isfinite(v)) return "null";
  return num_str(v);
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  return out;
}

double parse_real(std::string_view s, const std::string& what) {
  std::string buf(s);
  if (buf.empty()) throw SyntaxError(what + ": empty number");
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || !std::isfinite(v))
    throw SyntaxError(what + ": bad number \"" + buf + "\"");
  return v;
}

// "a=1,b=2" -> ordered key/value pairs.
std::vector<std::pair<std::string, double>> parse_kv(std::string_view s,
                                                     const std::string& what) {
  std::vector<std::pair<std::string, double>> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    const size_t comma = std::min(s.find(',', pos), s.size());
    std::string_view item = s.substr(pos, comma - pos);
    const size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw SyntaxError(what + ": expected key=value, got \"" + std::string(item) + "\"");
    out.emplace_back(std::string(item.substr(0, eq)),
                     parse_real(item.substr(eq + 1), what));
    if (comma == s.size()) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

double Nonlinearity::operator()(double p) const {
  switch (kind_) {
    case Kind::linear: return p;
    case Kind::power: return std::pow(p, m_);
    case Kind::capped_power: return std::min(std::pow(p, m_), cap_);
    case Kind::table: return fn_(p);
  }
  return 0.0;
}

double Nonlinearity::deriv(double p) const {
  switch (kind_) {
    case Kind::linear: return 1.0;
    case Kind::power: return m_ * std::pow(p, m_ - 1.0);
    case Kind::capped_power:
      return std::pow(p, m_) < cap_ ? m_ * std::pow(p, m_ - 1.0) : 0.0;
    case Kind::table: return dfn_(p);
  }
  return 0.0;
}

void Nonlinearity::validate() const {
  const auto& F = *this;
  if (!(std::abs(F(0.0)) <= 1e-15))
    throw ParameterOutOfRange("nonlinearity " + text_ + ": F(0) != 0");
  const int n = 200;
  double prev = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double p = std::pow(10.0, -8.0 + 16.0 * i / n);
    const double f = F(p);
    if (!(f >= 0.0) || !std::isfinite(f))
      throw ParameterOutOfRange("nonlinearity " + text_ + ": negative or non-finite value");
    if (f < prev * (1.0 - 1e-12))
      throw ParameterOutOfRange("nonlinearity " + text_ + ": not nondecreasing");
    if (f > C_F_ * std::pow(p, m_) * (1.0 + 1e-9) + 1e-300)
      throw ParameterOutOfRange("nonlinearity " + text_ +
                                ": exceeds declared growth bound C_F p^m");
    prev = f;
  }
}

Nonlinearity Nonlinearity::linear() {
  Nonlinearity f;
  f.kind_ = Kind::linear;
  f.m_ = 1.0;
  f.C_F_ = 1.0;
  f.text_ = "linear";
  f.validate();
  return f;
}

Nonlinearity Nonlinearity::power(double m) {
  if (!(m > 0.0)) throw ParameterOutOfRange("nonlinearity: m must be positive");
  Nonlinearity f;
  f.kind_ = Kind::power;
  f.m_ = m;
  f.C_F_ = 1.0;
  f.text_ = "power:" + num_str(m);
  f.validate();
  return f;
}

Nonlinearity Nonlinearity::capped(double m, double K) {
  if (!(m > 0.0)) throw ParameterOutOfRange("nonlinearity: m must be positive");
  if (!(K > 0.0)) throw ParameterOutOfRange("nonlinearity: cap must be positive");
  Nonlinearity f;
  f.kind_ = Kind::capped_power;
  f.m_ = m;
  f.cap_ = K;
  f.C_F_ = 1.0;
  f.text_ = "capped:" + num_str(m) + "," + num_str(K);
  f.validate();
  return f;
}

Nonlinearity Nonlinearity::table(std::function<double(double)> F,
                                 std::function<double(double)> Fprime, double m,
                                 double C_F, std::string label) {
  if (!F || !Fprime) throw ParameterOutOfRange("nonlinearity: missing table functions");
  if (!(m > 0.0)) throw ParameterOutOfRange("nonlinearity: m must be positive");
  if (!(C_F > 0.0)) throw ParameterOutOfRange("nonlinearity: C_F must be positive");
  Nonlinearity f;
  f.kind_ = Kind::table;
  f.m_ = m;
  f.C_F_ = C_F;
  f.fn_ = std::move(F);
  f.dfn_ = std::move(Fprime);
  f.text_ = std::move(label);
  f.validate();
  return f;
}

Nonlinearity Nonlinearity::parse(std::string_view text) {
  if (text == "linear") return linear();
  const std::string what = "nonlinearity \"" + std::string(text) + "\"";
  if (text.rfind("power:", 0) == 0) return power(parse_real(text.substr(6), what));
  if (text.rfind("capped:", 0) == 0) {
    std::string_view rest = text.substr(7);
    const size_t comma = rest.find(',');
    if (comma == std::string_view::npos)
      throw SyntaxError(what + ": expected capped:<m>,<K>");
    return capped(parse_real(rest.substr(0, comma), what),
                  parse_real(rest.substr(comma + 1), what));
  }
  throw SyntaxError(what + ": unknown kind");
}

std::string to_string(SimClass c) {
  switch (c) {
    case SimClass::blow_up: return "blow_up";
    case SimClass::extinction: return "extinction";
    case SimClass::decay: return "decay";
    case SimClass::steady: return "steady";
    case SimClass::undecided: return "undecided";
  }
  return "undecided";
}

Vector build_u0(const WeightedGraph& g, std::string_view spec, Index x0,
                unsigned long seed) {
  const Index n = g.size();
  const std::string what = "initial data \"" + std::string(spec) + "\"";
  if (spec.rfind("const:", 0) == 0) {
    const double c = parse_real(spec.substr(6), what);
    if (c < 0.0) throw ParameterOutOfRange(what + ": negative level");
    return Vector::Constant(n, c);
  }
  if (spec.rfind("bump:", 0) == 0) {
    double scale = -1.0, radius = -1.0;
    for (const auto& [k, v] : parse_kv(spec.substr(5), what)) {
      if (k == "scale") scale = v;
      else if (k == "radius") radius = v;
      else throw SyntaxError(what + ": unknown key \"" + k + "\"");
    }
    if (scale < 0.0) throw ParameterOutOfRange(what + ": scale missing or negative");
    if (radius < 0.0) throw ParameterOutOfRange(what + ": radius missing or negative");
    if (x0 < 0 || x0 >= n) throw UnknownNode(what + ": base index out of range");
    const Vector d = PseudoMetric::natural(g).distances_from(x0);
    Vector u = Vector::Zero(n);
    for (Index i = 0; i < n; ++i)
      if (d[i] <= radius) u[i] = scale;
    return u;
  }
  if (spec.rfind("random:", 0) == 0) {
    double lo = -1.0, hi = -1.0;
    for (const auto& [k, v] : parse_kv(spec.substr(7), what)) {
      if (k == "lo") lo = v;
      else if (k == "hi") hi = v;
      else throw SyntaxError(what + ": unknown key \"" + k + "\"");
    }
    if (lo < 0.0 || hi < lo)
      throw ParameterOutOfRange(what + ": need 0 <= lo <= hi");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pick(lo, hi);
    Vector u(n);
    for (Index i = 0; i < n; ++i) u[i] = pick(rng);
    return u;
  }
  throw SyntaxError(what + ": unknown recipe");
}

namespace {

// Immutable per-run context shared by step and integrate.
struct RunContext {
  const SimConfig& cfg;
  Vector v_space;             // spatial potential factor, empty when reaction off
  double v_space_max = 0.0;
  bool v_uniform = true;
  std::vector<Index> rim;     // dirichlet targets
  std::vector<Index> watch;   // nodes within 2 hops of the rim
  double min_ratio = 0.0;     // min mu / row_sum (inf on edgeless graphs)

  explicit RunContext(const SimConfig& c) : cfg(c) {
    const WeightedGraph& g = c.graph;
    const Index n = g.size();
    if (!(c.sigma > 1.0)) throw ParameterOutOfRange("sim: sigma must exceed 1");
    if (!(c.t_max > 0.0)) throw ParameterOutOfRange("sim: t_max must be positive");
    if (!(c.U_max > 0.0)) throw ParameterOutOfRange("sim: U_max must be positive");
    if (!(c.dt_min > 0.0)) throw ParameterOutOfRange("sim: dt_min must be positive");
    if (!(c.safety > 0.0 && c.safety <= 1.0))
      throw ParameterOutOfRange("sim: safety must lie in (0, 1]");
    if (c.dt_fixed < 0.0) throw ParameterOutOfRange("sim: dt_fixed must be nonnegative");
    if (!(c.sink >= 0.0)) throw ParameterOutOfRange("sim: sink must be nonnegative");
    if (c.series_cap < 16) throw ParameterOutOfRange("sim: series cap too small");
    for (size_t i = 0; i < c.snapshot_times.size(); ++i) {
      const double s = c.snapshot_times[i];
      if (s < 0.0 || s > c.t_max * (1.0 + 1e-12))
        throw ParameterOutOfRange("sim: snapshot time outside [0, t_max]");
      if (i > 0 && s <= c.snapshot_times[i - 1])
        throw ParameterOutOfRange("sim: snapshot times must increase");
    }
    if (c.reaction) {
      if (c.potential.spatially_uniform()) {
        v_space = Vector::Constant(n, c.potential.space_factor(0.0));
      } else {
        if (c.x0 < 0 || c.x0 >= n) throw UnknownNode("sim: base index out of range");
        const Vector d = c.metric ? c.metric->distances_from(c.x0)
                                  : PseudoMetric::natural(g).distances_from(c.x0);
        v_space.resize(n);
        for (Index i = 0; i < n; ++i) v_space[i] = c.potential.space_factor(d[i]);
        v_uniform = false;
      }
      v_space_max = v_space.maxCoeff();
    }
    if (c.rim_policy == RimPolicy::dirichlet_zero) rim = rim_nodes(g);
    const auto mask = near_rim_mask(g, 2);
    for (Index i = 0; i < n; ++i)
      if (mask[i]) watch.push_back(i);
    min_ratio = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n; ++i)
      min_ratio = std::min(min_ratio, g.mu()[i] / g.row_sum()[i]);
  }

  // One Euler update into u_new; returns the most negative pre-clip value.
  double apply(const Vector& u, double t, double dt, Vector& w, Vector& u_new,
               long& clips) const {
    const WeightedGraph& g = cfg.graph;
    const Index n = g.size();
    const auto& adj = g.adjacency();
    for (Index i = 0; i < n; ++i) w[i] = cfg.F(u[i]);
    const double tf = cfg.reaction ? cfg.potential.time_factor(t) : 0.0;
    double min_pre = 0.0;
    for (Index i = 0; i < n; ++i) {
      double acc = 0.0;
      const double wi = w[i];
      for (WeightedGraph::SparseAdj::InnerIterator it(adj, i); it; ++it)
        acc += it.value() * (w[it.col()] - wi);
      double rate = acc / g.mu()[i] - cfg.sink;
      if (cfg.reaction) rate += v_space[i] * tf * std::pow(u[i], cfg.sigma);
      double val = u[i] + dt * rate;
      if (val < min_pre) min_pre = val;
      if (val < 0.0) {
        val = 0.0;
        ++clips;
      }
      u_new[i] = val;
    }
    for (Index i : rim) u_new[i] = 0.0;
    return min_pre;
  }

  // Largest F' over the regularised state scale.
  double fprime_max(const Vector& u, double umax) const {
    const double top = std::max(umax, kStateReg);
    switch (cfg.F.kind()) {
      case Nonlinearity::Kind::linear: return 1.0;
      case Nonlinearity::Kind::power:
      case Nonlinearity::Kind::capped_power:
        // Monotone derivative: for m >= 1 the top scale is exact; for m < 1
        // it is the deliberate estimate keeping steps proportional to the
        // state scale, with rejection as the safety net.
        return cfg.F.m() * std::pow(top, cfg.F.m() - 1.0);
      case Nonlinearity::Kind::table: {
        double fp = 0.0;
        for (Index i = 0; i < u.size(); ++i)
          fp = std::max(fp, cfg.F.deriv(std::max(u[i], kStateReg)));
        return fp;
      }
    }
    return 1.0;
  }

  // Largest v(x, t) u^(sigma-1) over nodes.
  double reaction_rate(const Vector& u, double umax, double tf) const {
    if (!cfg.reaction) return 0.0;
    if (v_uniform) return v_space_max * tf * std::pow(umax, cfg.sigma - 1.0);
    double r = 0.0;
    for (Index i = 0; i < u.size(); ++i)
      r = std::max(r, v_space[i] * std::pow(u[i], cfg.sigma - 1.0));
    return r * tf;
  }
};

void check_state(const Vector& u, Index n) {
  if (u.size() != n) throw LengthMismatch("sim: state length != node count");
  if (u.size() > 0 && u.minCoeff() < 0.0)
    throw ParameterOutOfRange("sim: state must be nonnegative");
}

}  // namespace

NodeFunction step(const NodeFunction& state, double t, double dt,
                  const SimConfig& cfg, long* clipped) {
  if (!(dt > 0.0)) throw ParameterOutOfRange("step: dt must be positive");
  if (t < 0.0) throw NegativeArgument("step: negative time");
  check_state(state, cfg.graph.size());
  RunContext ctx(cfg);
  Vector w(state.size()), out(state.size());
  long clips = 0;
  ctx.apply(state, t, dt, w, out, clips);
  if (!out.allFinite()) throw NonFiniteState("step: non-finite state after update");
  if (clipped) *clipped += clips;
  return out;
}

double ode_blowup_time(double u0, double sigma) {
  if (!(u0 > 0.0)) throw ParameterOutOfRange("blow-up time: u0 must be positive");
  if (!(sigma > 1.0)) throw ParameterOutOfRange("blow-up time: sigma must exceed 1");
  return std::pow(u0, 1.0 - sigma) / (sigma - 1.0);
}

SimOutcome integrate(const SimConfig& cfg) {
  RunContext ctx(cfg);
  const WeightedGraph& g = cfg.graph;
  const Index n = g.size();
  check_state(cfg.u0, n);

  Vector u = cfg.u0;
  for (Index i : ctx.rim) u[i] = 0.0;
  Vector w(n), u_next(n);

  SimOutcome out;
  double t = 0.0;
  double umax = n > 0 ? u.maxCoeff() : 0.0;
  double umin = n > 0 ? u.minCoeff() : 0.0;
  out.peak_max = umax;

  // Decimated series.
  long stride = 1, tick = 0;
  auto record = [&](double rt, double rmax, double rmin, double rmass) {
    if (tick % stride == 0) {
      out.series_t.push_back(rt);
      out.series_max.push_back(rmax);
      out.series_min.push_back(rmin);
      out.series_mass.push_back(rmass);
      if (static_cast<long>(out.series_t.size()) > 2 * cfg.series_cap) {
        auto thin = [](std::vector<double>& v) {
          for (size_t i = 0, j = 0; i < v.size(); i += 2) v[j++] = v[i];
          v.resize((v.size() + 1) / 2);
        };
        thin(out.series_t);
        thin(out.series_max);
        thin(out.series_min);
        thin(out.series_mass);
        stride *= 2;
      }
    }
    ++tick;
  };
  auto rim_check = [&](double rt) {
    if (out.rim_influence) return;
    for (Index i : ctx.watch)
      if (u[i] > kRimTol) {
        out.rim_influence = true;
        out.rim_first_t = rt;
        return;
      }
  };

  record(0.0, umax, umin, u.dot(g.mu()));
  rim_check(0.0);
  size_t sp = 0;
  while (sp < cfg.snapshot_times.size() && cfg.snapshot_times[sp] <= 1e-12) {
    out.trajectory.times.push_back(cfg.snapshot_times[sp]);
    out.trajectory.states.push_back(u);
    ++sp;
  }

  const double floor_band = cfg.dt_min * (1.0 + 1e-9);
  bool crossed = false;
  double t_cross = std::numeric_limits<double>::quiet_NaN();
  bool done = false;
  const long step_budget = 20000000;
  const long stall_budget = 300000;

  while (!done && t < cfg.t_max * (1.0 - 1e-15)) {
    // Step-size demand from the current state.
    const double tf_now = cfg.reaction ? cfg.potential.time_factor(t) : 0.0;
    double want;
    bool stalled = false;
    if (cfg.dt_fixed > 0.0) {
      want = cfg.dt_fixed;
    } else {
      const double dt_diff = ctx.min_ratio / std::max(ctx.fprime_max(u, umax), 1e-300);
      const double rr = ctx.reaction_rate(u, umax, tf_now);
      const double dt_reac = rr > 0.0 ? 1.0 / (cfg.sigma * rr)
                                      : std::numeric_limits<double>::infinity();
      double dt_sink = std::numeric_limits<double>::infinity();
      if (cfg.sink > 0.0) dt_sink = 0.5 * (umax > 0.0 ? umax : 1.0) / cfg.sink;
      want = cfg.safety * std::min(dt_diff, std::min(dt_reac, dt_sink));
      stalled = want < cfg.dt_min;
      if (stalled && crossed) {
        out.cls = SimClass::blow_up;
        out.t_event = t_cross;
        break;
      }
      want = std::max(want, cfg.dt_min);
    }

    const double cp = sp < cfg.snapshot_times.size() ? cfg.snapshot_times[sp] : cfg.t_max;
    if (cp - t <= want * (1.0 + 1e-9)) want = cp - t;
    if (!(want > 0.0)) want = cfg.dt_min;

    double dt = want;
    for (;;) {
      long clips = 0;
      const double min_pre = ctx.apply(u, t, dt, w, u_next, clips);
      if (!u_next.allFinite()) {
        if (crossed) {  // demanded step below any floor: overflow inside blow-up
          out.cls = SimClass::blow_up;
          out.t_event = t_cross;
          done = true;
          break;
        }
        throw NonFiniteState("integrate: non-finite state at t=" + num_str(t));
      }
      const double new_max = n > 0 ? u_next.maxCoeff() : 0.0;
      if (cfg.dt_fixed == 0.0 && dt > floor_band) {
        const bool undershoot = umax > 0.0 && min_pre < -0.01 * umax;
        const bool growth = umax > 0.0 && new_max > 1.2 * umax;
        if (undershoot || growth) {
          ++out.rejected;
          dt = std::max(dt * 0.5, cfg.dt_min);
          continue;
        }
      }
      out.clipped += clips;
      break;
    }
    if (done) break;

    u.swap(u_next);
    t += dt;
    ++out.steps;
    out.final_dt = dt;
    if (stalled && dt <= floor_band) ++out.stalled_steps;

    const double prev_max = umax;
    umax = n > 0 ? u.maxCoeff() : 0.0;
    umin = n > 0 ? u.minCoeff() : 0.0;
    out.peak_max = std::max(out.peak_max, umax);
    record(t, umax, umin, u.dot(g.mu()));
    rim_check(t);

    while (sp < cfg.snapshot_times.size() &&
           t >= cfg.snapshot_times[sp] - 1e-9 * std::max(1.0, cfg.snapshot_times[sp])) {
      out.trajectory.times.push_back(cfg.snapshot_times[sp]);
      out.trajectory.states.push_back(u);
      ++sp;
    }

    if (!crossed && umax >= cfg.U_max) {
      crossed = true;
      t_cross = t;
    }
    if (cfg.F.m() < 1.0 && umax <= kExtinctTol) {
      out.cls = SimClass::extinction;
      out.t_event = t;
      break;
    }
    if (stalled && !crossed && umax <= prev_max * (1.0 + 1e-12)) {
      out.cls = SimClass::undecided;
      out.note = "stall: step demand below dt_min without growth";
      break;
    }
    if (out.stalled_steps > stall_budget) {
      out.cls = SimClass::undecided;
      out.note = "stall: budget of floored steps exhausted";
      break;
    }
    if (out.steps > step_budget) {
      out.cls = SimClass::undecided;
      out.note = "step budget exhausted";
      break;
    }
  }

  out.t_end = t;
  out.final_max = umax;
  if (out.series_t.empty() || out.series_t.back() != t) {
    out.series_t.push_back(t);
    out.series_max.push_back(umax);
    out.series_min.push_back(umin);
    out.series_mass.push_back(u.dot(g.mu()));
  }
  const long updates = out.steps * std::max<Index>(n, 1);
  out.clip_heavy = out.clipped > updates / 1000;

  // End-of-horizon classification from the tail of the series.
  if (out.cls == SimClass::undecided && out.note.empty() && std::isnan(out.t_event)) {
    size_t lo = 0;
    while (lo < out.series_t.size() && out.series_t[lo] < 0.5 * t) ++lo;
    if (lo + 1 < out.series_t.size()) {
      double wmax = 0.0, wmin = std::numeric_limits<double>::infinity();
      bool nonincreasing = true;
      for (size_t i = lo; i < out.series_max.size(); ++i) {
        wmax = std::max(wmax, out.series_max[i]);
        wmin = std::min(wmin, out.series_max[i]);
        if (i > lo &&
            out.series_max[i] > out.series_max[i - 1] * (1.0 + 1e-9) + 1e-300)
          nonincreasing = false;
      }
      if (wmax - wmin <= 1e-6 * std::max(out.final_max, 1e-300)) {
        out.cls = SimClass::steady;
      } else if (out.final_max <= 0.5 * out.peak_max && nonincreasing) {
        out.cls = SimClass::decay;
      }
    }
  }
  return out;
}

double weak_residual(const Trajectory& traj, const CutoffFamily& fam, double R,
                     double s, double sigma, const Nonlinearity& F,
                     const PotentialSpec* v) {
  if (!(R > 0.0)) throw ParameterOutOfRange("weak residual: R must be positive");
  if (!(sigma > 1.0)) throw ParameterOutOfRange("weak residual: sigma must exceed 1");
  if (!(sigma > F.m()))
    throw ParameterOutOfRange("weak residual: sigma must exceed the growth exponent m");
  const double s_min = std::max(sigma / (sigma - 1.0), sigma / (sigma - F.m()));
  if (!(s > s_min))
    throw ParameterOutOfRange("weak residual: need s > max(sigma/(sigma-1), sigma/(sigma-m))");
  if (traj.times.size() != traj.states.size())
    throw LengthMismatch("weak residual: times and states differ in length");
  if (traj.times.size() < 2) throw TooFewSamples("weak residual: need at least 2 samples");
  const WeightedGraph& g = fam.graph();
  const Index n = g.size();
  for (const Vector& st : traj.states)
    if (st.size() != n) throw LengthMismatch("weak residual: state length != node count");
  for (size_t i = 1; i < traj.times.size(); ++i)
    if (!(traj.times[i] > traj.times[i - 1]))
      throw ParameterOutOfRange("weak residual: times must increase");
  const double t_sup = fam.support_t_end(R);
  if (traj.times.front() > 1e-9 * std::max(1.0, t_sup) ||
      traj.times.back() < t_sup * (1.0 - 1e-9))
    throw InsufficientCoverage(
        "weak residual: trajectory must span [0, " + num_str(t_sup) + "]");

  const Vector& d = fam.distances();
  const auto& adj = g.adjacency();
  Vector w(n);
  auto integrand = [&](const Vector& u, double t) {
    for (Index i = 0; i < n; ++i) w[i] = F(u[i]);
    const double tf = v ? v->time_factor(t) : 0.0;
    double total = 0.0;
    for (Index i = 0; i < n; ++i) {
      const double phi = fam.value(i, t, R);
      if (phi <= 0.0) continue;
      double acc = 0.0;
      const double wi = w[i];
      for (WeightedGraph::SparseAdj::InnerIterator it(adj, i); it; ++it)
        acc += it.value() * (w[it.col()] - wi);
      const double lap = acc / g.mu()[i];
      const double phis = std::pow(phi, s);
      double term = lap * phis;
      if (v) term += v->space_factor(d[i]) * tf * std::pow(u[i], sigma) * phis;
      term += u[i] * s * std::pow(phi, s - 1.0) * fam.dvalue_dt(i, t, R);
      total += term * g.mu()[i];
    }
    return total;
  };

  double res = 0.0;
  double prev = integrand(traj.states[0], traj.times[0]);
  for (size_t k = 1; k < traj.times.size(); ++k) {
    const double cur = integrand(traj.states[k], traj.times[k]);
    res += 0.5 * (prev + cur) * (traj.times[k] - traj.times[k - 1]);
    prev = cur;
  }
  for (Index i = 0; i < n; ++i) {
    const double phi = fam.value(i, traj.times.front(), R);
    if (phi > 0.0)
      res += traj.states[0][i] * std::pow(phi, s) * g.mu()[i];
  }
  return res;
}

std::string SimOutcome::summary_json() const {
  std::string js = "{";
  js += "\"class\": \"" + to_string(cls) + "\"";
  js += ", \"t_event\": " + json_num(t_event);
  js += ", \"t_end\": " + json_num(t_end);
  js += ", \"steps\": " + std::to_string(steps);
  js += ", \"rejected\": " + std::to_string(rejected);
  js += ", \"clipped\": " + std::to_string(clipped);
  js += ", \"stalled_steps\": " + std::to_string(stalled_steps);
  js += ", \"clip_heavy\": " + std::string(clip_heavy ? "true" : "false");
  js += ", \"rim_influence\": " + std::string(rim_influence ? "true" : "false");
  js += ", \"rim_first_t\": " + json_num(rim_first_t);
  js += ", \"peak_max\": " + json_num(peak_max);
  js += ", \"final_max\": " + json_num(final_max);
  js += ", \"final_dt\": " + json_num(final_dt);
  js += ", \"note\": \"" + json_escape(note) + "\"";
  js += "}";
  return js;
}

std::string SimOutcome::series_csv() const {
  std::string out = "t,max_u,min_u,mass\n";
  for (size_t i = 0; i < series_t.size(); ++i) {
    out += num_str(series_t[i]) + "," + num_str(series_max[i]) + "," +
           num_str(series_min[i]) + "," + num_str(series_mass[i]) + "\n";
  }
  return out;
}

std::vector<SweepRecord> sweep(const SweepGrid& grid, const SimConfig& defaults,
                               int jobs) {
  if (grid.sigma_list.empty() || grid.m_list.empty() || grid.u0_scales.empty())
    throw EmptyInput("sweep: empty grid axis");
  for (double s : grid.sigma_list)
    if (!(s > 1.0)) throw ParameterOutOfRange("sweep: sigma must exceed 1");
  for (double m : grid.m_list)
    if (!(m > 0.0)) throw ParameterOutOfRange("sweep: m must be positive");
  for (double c : grid.u0_scales)
    if (!(c > 0.0)) throw ParameterOutOfRange("sweep: u0 scale must be positive");
  const Vector base =
      build_u0(grid.graph, grid.u0_shape, defaults.x0, defaults.seed);

  struct Cell {
    double sigma, m, scale;
  };
  std::vector<Cell> cells;
  for (double s : grid.sigma_list)
    for (double m : grid.m_list)
      for (double c : grid.u0_scales) cells.push_back({s, m, c});
  std::vector<SweepRecord> records(cells.size());

  auto run_cell = [&](size_t k) {
    const Cell& c = cells[k];
    SweepRecord& rec = records[k];
    rec.sigma = c.sigma;
    rec.m = c.m;
    rec.u0_scale = c.scale;
    try {
      SimConfig cfg = defaults;
      cfg.graph = grid.graph;
      cfg.F = c.m == 1.0 ? Nonlinearity::linear() : Nonlinearity::power(c.m);
      cfg.sigma = c.sigma;
      cfg.u0 = base * c.scale;
      SimOutcome so = integrate(cfg);
      rec.cls = so.cls;
      rec.t_event = so.t_event;
      rec.rim_flag = so.rim_influence;
      rec.note = so.note;
    } catch (const std::exception& e) {
      rec.cls = SimClass::undecided;
      rec.note = e.what();
    }
  };

  const int workers = std::clamp(jobs, 1, 64);
  if (workers <= 1 || cells.size() <= 1) {
    for (size_t k = 0; k < cells.size(); ++k) run_cell(k);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    const size_t count = std::min<size_t>(workers, cells.size());
    pool.reserve(count);
    for (size_t i = 0; i < count; ++i)
      pool.emplace_back([&] {
        for (size_t k = next.fetch_add(1); k < cells.size(); k = next.fetch_add(1))
          run_cell(k);
      });
    for (auto& th : pool) th.join();
  }
  return records;
}

std::string sweep_csv(const SweepGrid& grid,
                      const std::vector<SweepRecord>& records,
                      const SimConfig& defaults) {
  std::string out;
  out += "# family=" + grid.family_label + " N=" + std::to_string(grid.N) +
         " nodes=" + std::to_string(grid.graph.size()) + "\n";
  out += "# defaults: t_max=" + num_str(defaults.t_max) +
         " safety=" + num_str(defaults.safety) +
         " U_max=" + num_str(defaults.U_max) +
         " dt_min=" + num_str(defaults.dt_min) + " rim=" +
         (defaults.rim_policy == RimPolicy::dirichlet_zero ? "dirichlet_zero"
                                                           : "reflecting") +
         " seed=" + std::to_string(defaults.seed) + " potential=" +
         (defaults.reaction ? defaults.potential.text() : "off") +
         " sink=" + num_str(defaults.sink) + "\n";
  out += "# grid: u0_shape=" + grid.u0_shape + "\n";
  out += "family,N,sigma,m,u0_scale,class,t_event,rim_flag\n";
  for (const SweepRecord& r : records) {
    out += grid.family_label + "," + std::to_string(grid.N) + "," +
           num_str(r.sigma) + "," + num_str(r.m) + "," + num_str(r.u0_scale) +
           "," + to_string(r.cls) + "," + num_str(r.t_event) + "," +
           (r.rim_flag ? "1" : "0") + "\n";
  }
  return out;
}

std::string trajectory_csv(const WeightedGraph& g, const Trajectory& traj) {
  if (traj.times.size() != traj.states.size())
    throw LengthMismatch("trajectory: times and states differ in length");
  std::string out = "t,node_id,u\n";
  for (size_t k = 0; k < traj.times.size(); ++k) {
    if (traj.states[k].size() != g.size())
      throw LengthMismatch("trajectory: state length != node count");
    for (Index i = 0; i < g.size(); ++i) {
      out += num_str(traj.times[k]) + ",\"" + g.id_of(i) + "\"," +
             num_str(traj.states[k][i]) + "\n";
    }
  }
  return out;
}

}  // namespace gf

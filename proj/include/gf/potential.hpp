#pragma once

#include <string>
#include <string_view>

#include "gf/types.hpp"

namespace gf {

// Strictly positive reaction coefficient v(x, t) = f(t) * g(d(x0, x)),
// described by a small text language:
//
//   "const:c"                       v = c                      (c > 0)
//   "power:lambda"                  g(d) = (1 + d)^lambda
//   "tree-exp:lambda=L,N=n[,C=c]"   g(d) = c * max(d,1)^L * n^(L*d)
//   "tpower:beta"                   f(t) = (1 + t)^beta
//   "sep:<time>;<space>"            product of a time form (const, tpower)
//                                   and a space form (const, power, tree-exp)
//
// The tree-exp form clamps d below by 1 so the value stays positive at the
// base point for L > 0.
class PotentialSpec {
 public:
  enum class TimeKind { constant, tpower };
  enum class SpaceKind { constant, power, tree_exp };

  // Parses the text language.  Throws SyntaxError on malformed input and
  // ParameterOutOfRange on non-positive scale constants or N < 2.
  static PotentialSpec parse(std::string_view text);

  // v identically equal to c.
  static PotentialSpec constant(double c);

  double time_factor(double t) const;
  double space_factor(double d) const;
  double operator()(double d, double t) const {
    return time_factor(t) * space_factor(d);
  }

  TimeKind time_kind() const { return time_kind_; }
  SpaceKind space_kind() const { return space_kind_; }
  bool time_dependent() const {
    return time_kind_ == TimeKind::tpower && beta_ != 0.0;
  }
  bool spatially_uniform() const { return space_kind_ == SpaceKind::constant; }

  // Canonical round-trip text.
  const std::string& text() const { return text_; }

 private:
  TimeKind time_kind_ = TimeKind::constant;
  SpaceKind space_kind_ = SpaceKind::constant;
  double time_value_ = 1.0;   // constant time factor
  double beta_ = 0.0;         // tpower exponent
  double space_value_ = 1.0;  // constant space factor
  double lambda_ = 0.0;       // power / tree-exp exponent
  double tree_n_ = 2.0;       // tree-exp base
  double tree_c_ = 1.0;       // tree-exp scale
  std::string text_;

  void rebuild_text();
};

}  // namespace gf

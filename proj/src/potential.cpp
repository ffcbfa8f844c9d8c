#include "gf/potential.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>
#include <vector>

namespace gf {

namespace {

[[noreturn]] void bad(std::string_view text, const std::string& why) {
  throw SyntaxError("potential \"" + std::string(text) + "\": " + why);
}

double parse_real(std::string_view text, std::string_view token) {
  std::string s(token);
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    bad(text, "bad number \"" + s + "\"");
  if (!std::isfinite(v)) bad(text, "non-finite number \"" + s + "\"");
  return v;
}

// Splits "a=1,b=2" into (key, value) pairs.
std::vector<std::pair<std::string, std::string>> parse_kv(std::string_view text,
                                                          std::string_view body) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t comma = body.find(',', pos);
    std::string_view item =
        body.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                         : comma - pos);
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos)
      bad(text, "expected key=value, got \"" + std::string(item) + "\"");
    out.emplace_back(std::string(item.substr(0, eq)),
                     std::string(item.substr(eq + 1)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

PotentialSpec PotentialSpec::constant(double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw ParameterOutOfRange("potential constant must be positive");
  PotentialSpec spec;
  spec.space_value_ = c;
  spec.rebuild_text();
  return spec;
}

PotentialSpec PotentialSpec::parse(std::string_view text) {
  PotentialSpec spec;

  auto parse_time = [&](std::string_view part) {
    std::size_t colon = part.find(':');
    if (colon == std::string_view::npos) bad(text, "missing ':'");
    std::string_view kind = part.substr(0, colon);
    std::string_view body = part.substr(colon + 1);
    if (kind == "const") {
      spec.time_kind_ = TimeKind::constant;
      spec.time_value_ = parse_real(text, body);
      if (!(spec.time_value_ > 0.0))
        throw ParameterOutOfRange("potential time constant must be positive");
    } else if (kind == "tpower") {
      spec.time_kind_ = TimeKind::tpower;
      spec.beta_ = parse_real(text, body);
    } else {
      bad(text, "unknown time form \"" + std::string(kind) + "\"");
    }
  };

  auto parse_space = [&](std::string_view part) {
    std::size_t colon = part.find(':');
    if (colon == std::string_view::npos) bad(text, "missing ':'");
    std::string_view kind = part.substr(0, colon);
    std::string_view body = part.substr(colon + 1);
    if (kind == "const") {
      spec.space_kind_ = SpaceKind::constant;
      spec.space_value_ = parse_real(text, body);
      if (!(spec.space_value_ > 0.0))
        throw ParameterOutOfRange("potential constant must be positive");
    } else if (kind == "power") {
      spec.space_kind_ = SpaceKind::power;
      spec.lambda_ = parse_real(text, body);
    } else if (kind == "tree-exp") {
      spec.space_kind_ = SpaceKind::tree_exp;
      bool saw_lambda = false, saw_n = false;
      for (const auto& [key, value] : parse_kv(text, body)) {
        if (key == "lambda") {
          spec.lambda_ = parse_real(text, value);
          saw_lambda = true;
        } else if (key == "N") {
          spec.tree_n_ = parse_real(text, value);
          saw_n = true;
        } else if (key == "C") {
          spec.tree_c_ = parse_real(text, value);
        } else {
          bad(text, "unknown key \"" + key + "\"");
        }
      }
      if (!saw_lambda || !saw_n) bad(text, "tree-exp needs lambda and N");
      if (!(spec.tree_n_ >= 2.0))
        throw ParameterOutOfRange("tree-exp base N must be >= 2");
      if (!(spec.tree_c_ > 0.0))
        throw ParameterOutOfRange("tree-exp scale C must be positive");
    } else {
      bad(text, "unknown space form \"" + std::string(kind) + "\"");
    }
  };

  if (text.rfind("sep:", 0) == 0) {
    std::string_view body = text.substr(4);
    std::size_t semi = body.find(';');
    if (semi == std::string_view::npos) bad(text, "sep needs \"<time>;<space>\"");
    parse_time(body.substr(0, semi));
    parse_space(body.substr(semi + 1));
  } else if (text.rfind("tpower:", 0) == 0) {
    parse_time(text);
  } else {
    parse_space(text);
  }

  spec.rebuild_text();
  return spec;
}

double PotentialSpec::time_factor(double t) const {
  switch (time_kind_) {
    case TimeKind::constant:
      return time_value_;
    case TimeKind::tpower:
      return std::pow(1.0 + t, beta_);
  }
  return 1.0;
}

double PotentialSpec::space_factor(double d) const {
  switch (space_kind_) {
    case SpaceKind::constant:
      return space_value_;
    case SpaceKind::power:
      return std::pow(1.0 + d, lambda_);
    case SpaceKind::tree_exp:
      return tree_c_ * std::pow(std::max(d, 1.0), lambda_) *
             std::pow(tree_n_, lambda_ * d);
  }
  return 1.0;
}

void PotentialSpec::rebuild_text() {
  std::string time_part;
  switch (time_kind_) {
    case TimeKind::constant:
      time_part = "const:" + fmt(time_value_);
      break;
    case TimeKind::tpower:
      time_part = "tpower:" + fmt(beta_);
      break;
  }
  std::string space_part;
  switch (space_kind_) {
    case SpaceKind::constant:
      space_part = "const:" + fmt(space_value_);
      break;
    case SpaceKind::power:
      space_part = "power:" + fmt(lambda_);
      break;
    case SpaceKind::tree_exp:
      space_part = "tree-exp:lambda=" + fmt(lambda_) + ",N=" + fmt(tree_n_) +
                   ",C=" + fmt(tree_c_);
      break;
  }
  if (time_kind_ == TimeKind::constant && time_value_ == 1.0)
    text_ = space_part;
  else if (space_kind_ == SpaceKind::constant && space_value_ == 1.0)
    text_ = time_part;
  else
    text_ = "sep:" + time_part + ";" + space_part;
}

}  // namespace gf

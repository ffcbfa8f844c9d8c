#include "gf/generators.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace gf {

namespace {
std::string coord_id(const Eigen::VectorXi& x) {
  std::string s;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(x[k]);
  }
  return s;
}
}  // namespace

WeightedGraph gen_lattice(int N, double R_tr) {
  if (N < 1) throw ParameterOutOfRange("gen_lattice: dimension must be >= 1");
  if (!(R_tr >= 1.0)) throw ParameterOutOfRange("gen_lattice: radius must be >= 1");
  const int B = static_cast<int>(std::floor(R_tr));
  double candidates = std::pow(2.0 * B + 1.0, N);
  if (candidates > 1e8) throw ParameterOutOfRange("gen_lattice: requested lattice too large");

  const double R2 = R_tr * R_tr;
  std::vector<NodeEntry> nodes;
  std::vector<Eigen::VectorXi> coords;
  std::unordered_map<std::string, Index> seen;

  Eigen::VectorXi x = Eigen::VectorXi::Constant(N, -B);
  while (true) {
    double n2 = 0.0;
    for (int k = 0; k < N; ++k) n2 += double(x[k]) * double(x[k]);
    if (n2 <= R2) {
      std::string id = coord_id(x);
      seen.emplace(id, static_cast<Index>(nodes.size()));
      nodes.push_back({std::move(id), 2.0 * N});
      coords.push_back(x);
    }
    int k = 0;
    for (; k < N; ++k) {
      if (x[k] < B) {
        ++x[k];
        break;
      }
      x[k] = -B;
    }
    if (k == N) break;
  }

  std::vector<EdgeEntry> edges;
  for (const auto& c : coords) {
    for (int k = 0; k < N; ++k) {
      Eigen::VectorXi y = c;
      ++y[k];
      std::string idy = coord_id(y);
      if (seen.count(idy)) edges.push_back({coord_id(c), std::move(idy), 1.0});
    }
  }

  Eigen::MatrixXi attrs(static_cast<Index>(coords.size()), N);
  for (size_t i = 0; i < coords.size(); ++i) attrs.row(static_cast<Index>(i)) = coords[i];
  return build_graph(nodes, edges, false, std::move(attrs));
}

WeightedGraph gen_tree(int N, int depth) {
  if (N < 2) throw ParameterOutOfRange("gen_tree: degree parameter must be >= 2");
  if (depth < 1) throw ParameterOutOfRange("gen_tree: depth must be >= 1");
  const double w = 1.0 / (N + 1);
  const double mu = N + 1;

  std::vector<NodeEntry> nodes{{"r", mu}};
  std::vector<EdgeEntry> edges;
  std::vector<int> levels{0};
  std::vector<std::string> frontier{"r"};
  for (int level = 1; level <= depth; ++level) {
    const int fanout = (level == 1) ? N + 1 : N;
    std::vector<std::string> next;
    next.reserve(frontier.size() * static_cast<size_t>(fanout));
    for (const auto& parent : frontier) {
      for (int c = 0; c < fanout; ++c) {
        std::string id = parent + "." + std::to_string(c);
        nodes.push_back({id, mu});
        levels.push_back(level);
        edges.push_back({parent, id, w});
        next.push_back(std::move(id));
      }
    }
    frontier = std::move(next);
  }

  Eigen::MatrixXi attrs(static_cast<Index>(levels.size()), 1);
  for (size_t i = 0; i < levels.size(); ++i) attrs(static_cast<Index>(i), 0) = levels[i];
  return build_graph(nodes, edges, false, std::move(attrs));
}

WeightedGraph gen_cycle_group(int n) {
  if (n < 3) throw ParameterOutOfRange("gen_cycle_group: order must be >= 3");
  std::vector<NodeEntry> nodes;
  std::vector<EdgeEntry> edges;
  Eigen::MatrixXi attrs(n, 1);
  for (int i = 0; i < n; ++i) {
    nodes.push_back({"g" + std::to_string(i), 2.0});
    attrs(i, 0) = i;
  }
  for (int i = 0; i < n; ++i)
    edges.push_back({"g" + std::to_string(i), "g" + std::to_string((i + 1) % n), 1.0});
  return build_graph(nodes, edges, false, std::move(attrs));
}

WeightedGraph gen_product(const WeightedGraph& g1, const WeightedGraph& g2,
                          MeasureRule rule) {
  const Index n1 = g1.size(), n2 = g2.size();
  if (double(n1) * double(n2) > 1e7)
    throw ProductTooLarge("gen_product: node count would exceed 1e7");

  auto pid = [&](Index i, Index j) { return g1.id_of(i) + "|" + g2.id_of(j); };
  std::vector<NodeEntry> nodes;
  nodes.reserve(static_cast<size_t>(n1 * n2));
  Eigen::MatrixXi attrs(n1 * n2, 2);
  for (Index i = 0; i < n1; ++i)
    for (Index j = 0; j < n2; ++j) {
      double mu = rule == MeasureRule::max ? std::max(g1.mu()[i], g2.mu()[j])
                                           : g1.mu()[i] + g2.mu()[j];
      attrs(static_cast<Index>(nodes.size()), 0) = static_cast<int>(i);
      attrs(static_cast<Index>(nodes.size()), 1) = static_cast<int>(j);
      nodes.push_back({pid(i, j), mu});
    }

  std::vector<EdgeEntry> edges;
  const auto& a1 = g1.adjacency();
  const auto& a2 = g2.adjacency();
  for (Index i = 0; i < n1; ++i)
    for (WeightedGraph::SparseAdj::InnerIterator it(a1, i); it; ++it) {
      if (it.col() <= i) continue;
      for (Index j = 0; j < n2; ++j)
        edges.push_back({pid(i, j), pid(it.col(), j), it.value()});
    }
  for (Index j = 0; j < n2; ++j)
    for (WeightedGraph::SparseAdj::InnerIterator it(a2, j); it; ++it) {
      if (it.col() <= j) continue;
      for (Index i = 0; i < n1; ++i)
        edges.push_back({pid(i, j), pid(i, it.col()), it.value()});
    }
  return build_graph(nodes, edges, false, std::move(attrs));
}

namespace {

bool parse_int(const std::string& s, int& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

// "a,-3,7" style ids shared by every node yield coordinate attributes;
// "r.0.2" style ids yield level attributes.
Eigen::MatrixXi infer_attrs(const std::vector<NodeEntry>& nodes) {
  int dim = -1;
  bool coords_ok = true;
  std::vector<std::vector<int>> coords;
  for (const auto& ne : nodes) {
    std::vector<int> c;
    std::stringstream ss(ne.id);
    std::string tok;
    bool ok = !ne.id.empty();
    while (ok && std::getline(ss, tok, ',')) {
      int v;
      if (!parse_int(tok, v)) {
        ok = false;
        break;
      }
      c.push_back(v);
    }
    if (!ok || c.empty() || (dim >= 0 && static_cast<int>(c.size()) != dim)) {
      coords_ok = false;
      break;
    }
    dim = static_cast<int>(c.size());
    coords.push_back(std::move(c));
  }
  if (coords_ok && dim > 0) {
    Eigen::MatrixXi attrs(static_cast<Index>(coords.size()), dim);
    for (size_t i = 0; i < coords.size(); ++i)
      for (int k = 0; k < dim; ++k) attrs(static_cast<Index>(i), k) = coords[i][static_cast<size_t>(k)];
    return attrs;
  }

  bool levels_ok = true;
  std::vector<int> levels;
  for (const auto& ne : nodes) {
    if (ne.id.empty() || ne.id[0] != 'r') {
      levels_ok = false;
      break;
    }
    int level = 0;
    size_t pos = 1;
    bool ok = true;
    while (pos < ne.id.size()) {
      if (ne.id[pos] != '.' || pos + 1 >= ne.id.size() || !std::isdigit(ne.id[pos + 1])) {
        ok = false;
        break;
      }
      pos += 2;
      while (pos < ne.id.size() && std::isdigit(ne.id[pos])) ++pos;
      ++level;
    }
    if (!ok) {
      levels_ok = false;
      break;
    }
    levels.push_back(level);
  }
  if (levels_ok) {
    Eigen::MatrixXi attrs(static_cast<Index>(levels.size()), 1);
    for (size_t i = 0; i < levels.size(); ++i) attrs(static_cast<Index>(i), 0) = levels[i];
    return attrs;
  }
  return {};
}

double parse_number(const std::string& tok, int line_no) {
  try {
    size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw SyntaxError("line " + std::to_string(line_no) + ": bad number '" + tok + "'");
  }
}

}  // namespace

WeightedGraph parse_graph_text(const std::string& text, bool allow_disconnected) {
  std::vector<NodeEntry> nodes;
  std::vector<EdgeEntry> edges;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(std::move(t));
    if (tok.empty()) continue;
    if (tok[0] == "node") {
      if (tok.size() != 3)
        throw SyntaxError("line " + std::to_string(line_no) + ": expected 'node <id> <mu>'");
      nodes.push_back({tok[1], parse_number(tok[2], line_no)});
    } else if (tok[0] == "edge") {
      if (tok.size() != 4)
        throw SyntaxError("line " + std::to_string(line_no) + ": expected 'edge <id1> <id2> <weight>'");
      edges.push_back({tok[1], tok[2], parse_number(tok[3], line_no)});
    } else {
      throw SyntaxError("line " + std::to_string(line_no) + ": unknown directive '" + tok[0] + "'");
    }
  }
  return build_graph(nodes, edges, allow_disconnected, infer_attrs(nodes));
}

WeightedGraph parse_graph_file(const std::string& path, bool allow_disconnected) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_graph_text(ss.str(), allow_disconnected);
}

std::string write_graph_text(const WeightedGraph& g) {
  std::ostringstream os;
  char buf[64];
  os << "# graph file: nodes then edges, one line per unordered pair\n";
  for (Index i = 0; i < g.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", g.mu()[i]);
    os << "node " << g.id_of(i) << " " << buf << "\n";
  }
  const auto& adj = g.adjacency();
  for (Index i = 0; i < g.size(); ++i)
    for (WeightedGraph::SparseAdj::InnerIterator it(adj, i); it; ++it)
      if (it.col() > i) {
        std::snprintf(buf, sizeof buf, "%.17g", it.value());
        os << "edge " << g.id_of(i) << " " << g.id_of(it.col()) << " " << buf << "\n";
      }
  return os.str();
}

void write_graph_file(const WeightedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open file for writing: " + path);
  out << write_graph_text(g);
  if (!out) throw Error("write failed: " + path);
}

}  // namespace gf

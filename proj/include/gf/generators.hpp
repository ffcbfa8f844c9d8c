#pragma once

#include <string>

#include "gf/graph.hpp"

namespace gf {

// Integer lattice of dimension N truncated to the Euclidean ball of radius
// R_tr: unit weights between Manhattan neighbours, mu = 2N on every node,
// rim included.  Node ids are comma-joined coordinates, attribute columns
// hold the coordinates.
WeightedGraph gen_lattice(int N, double R_tr);

// Homogeneous tree in which every vertex has N+1 neighbours: the root gets
// N+1 children, every other interior vertex N children, truncated at the
// given depth.  Weights 1/(N+1), mu = N+1 on every node, rim included.
// Node ids are root-path strings ("r", "r.0", "r.0.2", ...); the attribute
// column holds the level.
WeightedGraph gen_tree(int N, int depth);

// Cayley graph of the cyclic group of order n with generators +-1: an
// n-cycle with unit weights and mu = 2.  Ids "g0".."g{n-1}"; the attribute
// column holds the position.
WeightedGraph gen_cycle_group(int n);

enum class MeasureRule { max, sum };

// Cartesian-style product: an edge changes one factor at a time and keeps
// the factor weight; mu combines factor measures by max or sum, so the
// max rule dominates both factors.  Ids "left|right"; attribute columns
// hold the two factor indices.  Node count is capped at 1e7.
WeightedGraph gen_product(const WeightedGraph& g1, const WeightedGraph& g2,
                          MeasureRule rule);

// Text format: "node <id> <mu>" then "edge <id1> <id2> <weight>", one line
// per unordered pair, '#' starts a comment.  Lattice coordinates and tree
// levels are re-derived from ids when every id parses.
WeightedGraph parse_graph_file(const std::string& path, bool allow_disconnected = false);
WeightedGraph parse_graph_text(const std::string& text, bool allow_disconnected = false);
void write_graph_file(const WeightedGraph& g, const std::string& path);
std::string write_graph_text(const WeightedGraph& g);

}  // namespace gf

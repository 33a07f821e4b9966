#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace liftlab {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Base graph: vertices 0..n-1, edges stored as (i,j) with i<j, sorted
// lexicographically. q holds one positive weight per edge.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    Vec q;

    int m() const { return static_cast<int>(edges.size()); }
};

// Edge-extended objects: Ehat lists (edge index, endpoint vertex), with the
// lower endpoint first for each edge, so |Ehat| = 2|E|. S is the 0/1
// selection matrix with S((e,i), i) = 1.
struct FactorGraph {
    Graph base;
    std::vector<std::pair<int, int>> ehat;
    Mat S;
    Eigen::VectorXi deg;

    int n() const { return base.n; }
    int m2() const { return static_cast<int>(ehat.size()); }
};

Graph build_cycle(int n);
Graph build_torus(int k);
Graph build_barbell(int k);
Graph build_complete_minus_edge(int n);
// Two vertices joined by one edge; not reachable from the CLI grammar,
// kept for tests of degenerate behavior.
Graph build_single_edge(double q = 1.0);

FactorGraph factor_graph(const Graph& g);

bool is_connected(const Graph& g);

// Edge-list text format: "n m" header, then "i j q" per edge.
void write_edge_list(const Graph& g, std::ostream& os);
Graph read_edge_list(std::istream& is);

// cycle:N | torus:K | barbell:K | k4minus | file:PATH
Graph parse_graph_spec(const std::string& spec);

}  // namespace liftlab

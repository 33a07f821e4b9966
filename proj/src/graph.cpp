#include "liftlab/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "liftlab/io.hpp"

namespace liftlab {

namespace {

Graph finish(int n, std::vector<std::pair<int, int>> edges) {
    std::sort(edges.begin(), edges.end());
    Graph g;
    g.n = n;
    g.edges = std::move(edges);
    g.q = Vec::Ones(g.m());
    return g;
}

}  // namespace

Graph build_cycle(int n) {
    if (n < 3) throw std::invalid_argument("invalid-size: cycle needs n >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        edges.emplace_back(std::min(i, j), std::max(i, j));
    }
    return finish(n, std::move(edges));
}

Graph build_torus(int k) {
    if (k < 3) throw std::invalid_argument("invalid-size: torus needs k >= 3");
    auto id = [k](int r, int c) { return ((r % k + k) % k) * k + (c % k + k) % k; };
    std::vector<std::pair<int, int>> edges;
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) {
            int v = id(r, c);
            for (int w : {id(r, c + 1), id(r + 1, c)})
                edges.emplace_back(std::min(v, w), std::max(v, w));
        }
    return finish(k * k, std::move(edges));
}

Graph build_barbell(int k) {
    if (k < 3) throw std::invalid_argument("invalid-size: barbell needs k >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            edges.emplace_back(i, j);
            edges.emplace_back(k + i, k + j);
        }
    edges.emplace_back(0, k);
    return finish(2 * k, std::move(edges));
}

Graph build_complete_minus_edge(int n) {
    if (n < 4) throw std::invalid_argument("invalid-size: complete-minus-edge needs n >= 4");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    std::sort(edges.begin(), edges.end());
    edges.pop_back();
    return finish(n, std::move(edges));
}

Graph build_single_edge(double q) {
    if (q <= 0.0) throw std::invalid_argument("invalid-parameter: edge weight must be positive");
    Graph g;
    g.n = 2;
    g.edges = {{0, 1}};
    g.q = Vec::Constant(1, q);
    return g;
}

FactorGraph factor_graph(const Graph& g) {
    if (g.n <= 0 || g.q.size() != g.m())
        throw std::invalid_argument("invalid-input: malformed graph");
    FactorGraph fg;
    fg.base = g;
    fg.ehat.reserve(2 * g.edges.size());
    fg.S = Mat::Zero(2 * static_cast<int>(g.edges.size()), g.n);
    fg.deg = Eigen::VectorXi::Zero(g.n);
    for (int e = 0; e < g.m(); ++e) {
        auto [i, j] = g.edges[e];
        fg.ehat.emplace_back(e, i);
        fg.ehat.emplace_back(e, j);
        fg.S(2 * e, i) = 1.0;
        fg.S(2 * e + 1, j) = 1.0;
        fg.deg[i] += 1;
        fg.deg[j] += 1;
    }
    return fg;
}

bool is_connected(const Graph& g) {
    if (g.n <= 0) return false;
    std::vector<std::vector<int>> adj(g.n);
    for (auto [i, j] : g.edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    std::vector<char> seen(g.n, 0);
    std::queue<int> bfs;
    bfs.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                bfs.push(w);
            }
    }
    return reached == g.n;
}

void write_edge_list(const Graph& g, std::ostream& os) {
    os << g.n << ' ' << g.m() << '\n';
    for (int e = 0; e < g.m(); ++e)
        os << g.edges[e].first << ' ' << g.edges[e].second << ' ' << fmt_double(g.q[e]) << '\n';
}

Graph read_edge_list(std::istream& is) {
    int n = 0, m = 0;
    if (!(is >> n >> m) || n < 2 || m < 1)
        throw std::invalid_argument("invalid-input: bad edge-list header");
    std::vector<std::pair<int, int>> edges(m);
    Vec q(m);
    std::set<std::pair<int, int>> seen;
    for (int e = 0; e < m; ++e) {
        int i, j;
        double w;
        if (!(is >> i >> j >> w))
            throw std::invalid_argument("invalid-input: truncated edge list");
        if (i == j || i < 0 || j < 0 || i >= n || j >= n)
            throw std::invalid_argument("invalid-input: bad edge endpoints");
        if (w <= 0.0) throw std::invalid_argument("invalid-parameter: edge weight must be positive");
        auto key = std::minmax(i, j);
        if (!seen.insert({key.first, key.second}).second)
            throw std::invalid_argument("invalid-input: duplicate edge");
        edges[e] = {key.first, key.second};
        q[e] = w;
    }
    // re-sort edges lexicographically, carrying weights along
    std::vector<int> order(m);
    for (int e = 0; e < m; ++e) order[e] = e;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return edges[a] < edges[b]; });
    Graph g;
    g.n = n;
    g.q = Vec(m);
    for (int e = 0; e < m; ++e) {
        g.edges.push_back(edges[order[e]]);
        g.q[e] = q[order[e]];
    }
    return g;
}

Graph parse_graph_spec(const std::string& spec) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto as_int = [&](const std::string& s) {
        try {
            size_t pos = 0;
            int v = std::stoi(s, &pos);
            if (pos != s.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            throw std::invalid_argument("invalid-input: bad graph spec '" + spec + "'");
        }
    };
    if (head == "cycle") return build_cycle(as_int(arg));
    if (head == "torus") return build_torus(as_int(arg));
    if (head == "barbell") return build_barbell(as_int(arg));
    if (head == "k4minus" && arg.empty()) return build_complete_minus_edge(4);
    if (head == "file") {
        std::ifstream f(arg);
        if (!f) throw std::invalid_argument("invalid-input: cannot open graph file '" + arg + "'");
        return read_edge_list(f);
    }
    throw std::invalid_argument("invalid-input: unknown graph spec '" + spec + "'");
}

}  // namespace liftlab

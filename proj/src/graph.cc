// Copyright 2026 The bettiforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bettiforge/graph.h"

#include <algorithm>
#include <bit>
#include <cfloat>
#include <cmath>

#include "bettiforge/rng.h"

namespace bettiforge {

Graph::Graph(int n) : Graph(n, {}) {
}

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
    if (n < 0 || n > kMaxVertices) {
        throw std::invalid_argument("vertex count out of range: " + std::to_string(n));
    }
    for (auto &e : edges) {
        if (e.first > e.second) {
            std::swap(e.first, e.second);
        }
        if (e.first == e.second) {
            throw std::invalid_argument("self-loop at vertex " + std::to_string(e.first));
        }
        if (e.first < 0 || e.second >= n) {
            throw std::invalid_argument(
                "edge (" + std::to_string(e.first) + "," + std::to_string(e.second) + ") out of range");
        }
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
        throw std::invalid_argument("duplicate edge");
    }
    edges_ = std::move(edges);
    if (fits_mask()) {
        adj_.assign(n_, 0);
        for (const auto &[a, b] : edges_) {
            adj_[a] |= Mask{1} << b;
            adj_[b] |= Mask{1} << a;
        }
    }
}

bool Graph::has_edge(int i, int j) const {
    if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_) {
        return false;
    }
    if (fits_mask()) {
        return (adj_[i] >> j) & 1;
    }
    if (i > j) {
        std::swap(i, j);
    }
    return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(i, j));
}

Mask Graph::neighbors(int v) const {
    if (!fits_mask()) {
        throw DeskScaleError("adjacency masks need n <= 64, got n=" + std::to_string(n_));
    }
    return adj_[v];
}

const std::vector<Mask> &CliqueComplex::level(int s) const {
    if (!has_level(s)) {
        throw std::invalid_argument("clique complex has no level of size " + std::to_string(s));
    }
    return cliques[s];
}

int popcount(Mask m) {
    return std::popcount(m);
}

std::vector<int> mask_vertices(Mask m) {
    std::vector<int> out;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; i++) {
        r = r * (n - k + i) / i;
    }
    return r < 9e15 ? std::round(r) : r;
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) {
        return -INFINITY;
    }
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

Graph gen_kpartite(int m, int k) {
    if (m < 1 || k < 1) {
        throw std::invalid_argument("kpartite needs m >= 1 and k >= 1");
    }
    if ((long long)m * k > kMaxVertices) {
        throw std::invalid_argument("kpartite vertex count m*k overflows the vertex limit");
    }
    int n = m * k;
    std::vector<std::pair<int, int>> edges;
    edges.reserve((size_t)k * (k - 1) / 2 * m * m);
    for (int i = 0; i < n; i++) {
        for (int j = i + 1; j < n; j++) {
            if (i / m != j / m) {
                edges.emplace_back(i, j);
            }
        }
    }
    return Graph(n, std::move(edges));
}

Graph gen_erdos_renyi(int n, double p, uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("edge probability must lie in [0,1]");
    }
    if (n < 0 || n > 1 << 16) {
        throw std::invalid_argument("erdos-renyi vertex count out of range");
    }
    Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; i++) {
        for (int j = i + 1; j < n; j++) {
            if (rng.uniform() < p) {
                edges.emplace_back(i, j);
            }
        }
    }
    return Graph(n, std::move(edges));
}

Graph gen_complete(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; i++) {
        for (int j = i + 1; j < n; j++) {
            edges.emplace_back(i, j);
        }
    }
    return Graph(n, std::move(edges));
}

Graph graph_join(const Graph &a, const Graph &b) {
    std::vector<std::pair<int, int>> edges = a.edges();
    for (const auto &[i, j] : b.edges()) {
        edges.emplace_back(i + a.n(), j + a.n());
    }
    for (int i = 0; i < a.n(); i++) {
        for (int j = 0; j < b.n(); j++) {
            edges.emplace_back(i, a.n() + j);
        }
    }
    return Graph(a.n() + b.n(), std::move(edges));
}

Graph disjoint_union(const Graph &a, const Graph &b) {
    std::vector<std::pair<int, int>> edges = a.edges();
    for (const auto &[i, j] : b.edges()) {
        edges.emplace_back(i + a.n(), j + a.n());
    }
    return Graph(a.n() + b.n(), std::move(edges));
}

PointCloud gen_rips_points(int n, int k) {
    if (k < 1 || n < 2 * k || n % (2 * k) != 0) {
        throw std::invalid_argument("rips construction needs 2k to divide n");
    }
    int m = n / (2 * k);
    double theta = M_PI / k;
    double offset = std::pow((double)n, -4.0);
    PointCloud points;
    points.reserve(n);
    for (int j = 0; j < k; j++) {
        double c = std::cos(j * theta);
        double s = std::sin(j * theta);
        for (double side : {0.5, -0.5}) {
            for (int i = 1; i <= m; i++) {
                double x = side;
                double y = i * offset;
                if (j == 0) {
                    points.push_back({x, y});
                } else {
                    points.push_back({c * x - s * y, s * x + c * y});
                }
            }
        }
    }
    return points;
}

Graph rips_graph(const PointCloud &points, double threshold) {
    if (!(threshold >= 0.0)) {
        throw std::invalid_argument("rips threshold must be nonnegative");
    }
    for (const auto &p : points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw std::invalid_argument("point coordinates must be finite");
        }
    }
    double limit = threshold * threshold * (1.0 + 4.0 * DBL_EPSILON);
    std::vector<std::pair<int, int>> edges;
    int n = (int)points.size();
    for (int i = 0; i < n; i++) {
        for (int j = i + 1; j < n; j++) {
            double dx = points[i].x - points[j].x;
            double dy = points[i].y - points[j].y;
            if (dx * dx + dy * dy <= limit) {
                edges.emplace_back(i, j);
            }
        }
    }
    return Graph(n, std::move(edges));
}

bool is_clique(const Graph &g, Mask subset) {
    if (g.n() < 64 && (subset >> g.n()) != 0) {
        throw std::invalid_argument("subset mentions vertices outside the graph");
    }
    Mask rest = subset;
    while (rest) {
        int v = std::countr_zero(rest);
        rest &= rest - 1;
        if ((rest & ~g.neighbors(v)) != 0) {
            return false;
        }
    }
    return true;
}

namespace {

void extend_cliques(const Graph &g, Mask current, int size, Mask candidates, int max_size,
                    std::vector<std::vector<Mask>> &out) {
    out[size].push_back(current);
    if (size == max_size) {
        return;
    }
    while (candidates) {
        int v = std::countr_zero(candidates);
        candidates &= candidates - 1;
        extend_cliques(g, current | (Mask{1} << v), size + 1, candidates & g.neighbors(v), max_size, out);
    }
}

void require_mask_graph(const Graph &g) {
    if (!g.fits_mask()) {
        throw DeskScaleError("clique enumeration needs n <= 64, got n=" + std::to_string(g.n()));
    }
}

}  // namespace

CliqueComplex build_clique_complex(const Graph &g, int k_max) {
    require_mask_graph(g);
    if (k_max < 0) {
        throw std::invalid_argument("k_max must be nonnegative");
    }
    CliqueComplex cx;
    cx.n = g.n();
    cx.k_max = k_max;
    cx.cliques.assign(k_max + 2, {});
    for (int v = 0; v < g.n(); v++) {
        Mask higher = g.neighbors(v) & ~((Mask{2} << v) - 1);
        extend_cliques(g, Mask{1} << v, 1, higher, k_max + 1, cx.cliques);
    }
    for (auto &level : cx.cliques) {
        std::sort(level.begin(), level.end());
    }
    return cx;
}

std::vector<Mask> enumerate_cliques(const Graph &g, int s) {
    if (s < 1 || s > std::max(g.n(), 1)) {
        throw std::invalid_argument("clique size must lie in [1, n]");
    }
    require_mask_graph(g);
    std::vector<std::vector<Mask>> levels(s + 1);
    for (int v = 0; v < g.n(); v++) {
        Mask higher = g.neighbors(v) & ~((Mask{2} << v) - 1);
        extend_cliques(g, Mask{1} << v, 1, higher, s, levels);
    }
    std::sort(levels[s].begin(), levels[s].end());
    return levels[s];
}

}  // namespace bettiforge

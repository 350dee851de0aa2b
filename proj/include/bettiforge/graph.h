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

#ifndef BETTIFORGE_GRAPH_H
#define BETTIFORGE_GRAPH_H

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bettiforge {

using Mask = uint64_t;

// Raised when an exact or simulated computation would exceed the sizes this
// library is willing to handle densely.
class DeskScaleError : public std::runtime_error {
   public:
    explicit DeskScaleError(const std::string &what) : std::runtime_error(what) {
    }
};

constexpr int kMaxMaskVertices = 64;
constexpr int kMaxVertices = 1 << 20;

class Graph {
   public:
    Graph() = default;
    explicit Graph(int n);
    Graph(int n, std::vector<std::pair<int, int>> edges);

    int n() const {
        return n_;
    }
    size_t edge_count() const {
        return edges_.size();
    }
    // Sorted lexicographically, each pair with first < second.
    const std::vector<std::pair<int, int>> &edges() const {
        return edges_;
    }
    bool has_edge(int i, int j) const;
    // Only available when n <= 64.
    Mask neighbors(int v) const;
    bool fits_mask() const {
        return n_ <= kMaxMaskVertices;
    }

    bool operator==(const Graph &other) const {
        return n_ == other.n_ && edges_ == other.edges_;
    }

   private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<Mask> adj_;
};

struct Point2 {
    double x;
    double y;
};

using PointCloud = std::vector<Point2>;

// s-cliques for s = 1..k_max+1, each level sorted by mask value.
struct CliqueComplex {
    int n = 0;
    int k_max = 0;
    std::vector<std::vector<Mask>> cliques;  // index = clique size s; index 0 empty

    const std::vector<Mask> &level(int s) const;
    bool has_level(int s) const {
        return s >= 1 && s < (int)cliques.size();
    }
};

Graph gen_kpartite(int m, int k);
Graph gen_erdos_renyi(int n, double p, uint64_t seed);
Graph gen_complete(int n);
// Join: every vertex of a is adjacent to every vertex of b (b relabeled after a).
Graph graph_join(const Graph &a, const Graph &b);
Graph disjoint_union(const Graph &a, const Graph &b);

PointCloud gen_rips_points(int n, int k);
Graph rips_graph(const PointCloud &points, double threshold);

std::vector<Mask> enumerate_cliques(const Graph &g, int s);
bool is_clique(const Graph &g, Mask subset);
CliqueComplex build_clique_complex(const Graph &g, int k_max);

int popcount(Mask m);
std::vector<int> mask_vertices(Mask m);
double binomial(int n, int k);
double log_binomial(int n, int k);

}  // namespace bettiforge

#endif

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

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "bettiforge/graph.h"
#include "bettiforge/graph_io.h"

namespace bettiforge {
namespace {

std::vector<Mask> brute_cliques(const Graph &g, int s) {
    std::set<std::pair<int, int>> edges(g.edges().begin(), g.edges().end());
    std::vector<Mask> out;
    for (Mask m = 0; m < (Mask{1} << g.n()); m++) {
        if (__builtin_popcountll(m) != s) {
            continue;
        }
        bool ok = true;
        for (int i = 0; i < g.n() && ok; i++) {
            for (int j = i + 1; j < g.n() && ok; j++) {
                if ((m >> i & 1) && (m >> j & 1)) {
                    ok = edges.count({i, j}) > 0;
                }
            }
        }
        if (ok) {
            out.push_back(m);
        }
    }
    return out;
}

TEST(Graph, KpartiteEdgeCount) {
    for (int m = 1; m <= 4; m++) {
        for (int k = 1; k <= 4; k++) {
            Graph g = gen_kpartite(m, k);
            EXPECT_EQ(g.n(), m * k);
            EXPECT_EQ((int)g.edge_count(), k * (k - 1) / 2 * m * m);
        }
    }
}

TEST(Graph, KpartiteClustersAreIndependent) {
    Graph g = gen_kpartite(3, 3);
    int independent_pairs = 0;
    for (int i = 0; i < g.n(); i++) {
        for (int j = i + 1; j < g.n(); j++) {
            independent_pairs += !g.has_edge(i, j);
        }
    }
    EXPECT_EQ(independent_pairs, 3 * 3);
}

TEST(Graph, CliquesMatchBruteForce) {
    for (uint64_t seed = 1; seed <= 8; seed++) {
        Graph g = gen_erdos_renyi(10, 0.55, seed);
        for (int s = 1; s <= 5; s++) {
            auto got = enumerate_cliques(g, s);
            std::sort(got.begin(), got.end());
            EXPECT_EQ(got, brute_cliques(g, s)) << "seed " << seed << " s " << s;
        }
    }
}

TEST(Graph, ErdosRenyiDeterministicAndExtremes) {
    EXPECT_EQ(gen_erdos_renyi(30, 0.3, 9), gen_erdos_renyi(30, 0.3, 9));
    EXPECT_FALSE(gen_erdos_renyi(30, 0.3, 9) == gen_erdos_renyi(30, 0.3, 10));
    EXPECT_EQ(gen_erdos_renyi(12, 0.0, 1).edge_count(), 0u);
    EXPECT_EQ(gen_erdos_renyi(12, 1.0, 1), gen_complete(12));
    EXPECT_THROW(gen_erdos_renyi(5, 1.5, 1), std::invalid_argument);
}

TEST(Graph, ErdosRenyiEdgeFrequency) {
    int n = 200;
    double p = 0.1;
    Graph g = gen_erdos_renyi(n, p, 42);
    double pairs = n * (n - 1) / 2.0;
    double sigma = std::sqrt(pairs * p * (1 - p));
    EXPECT_NEAR((double)g.edge_count(), pairs * p, 4 * sigma);
}

TEST(Graph, RipsCrossPattern) {
    for (int k = 1; k <= 2; k++) {
        for (int m = 2; m <= 4; m++) {
            int n = 2 * m * k;
            Graph g = rips_graph(gen_rips_points(n, k), 1.0);
            for (int j = 0; j < k; j++) {
                for (int i = 0; i < m; i++) {
                    for (int l = 0; l < m; l++) {
                        int plus = j * 2 * m + i;
                        int minus = j * 2 * m + m + l;
                        EXPECT_EQ(g.has_edge(plus, minus), i == l) << m << " " << k;
                    }
                }
            }
        }
    }
}

TEST(Graph, JoinAndUnion) {
    Graph a = gen_complete(3);
    Graph b = gen_kpartite(2, 1);
    Graph u = disjoint_union(a, b);
    EXPECT_EQ(u.n(), 5);
    EXPECT_EQ(u.edge_count(), 3u);
    Graph j = graph_join(a, b);
    EXPECT_EQ(j.edge_count(), 3u + 6u);
}

TEST(GraphIo, RoundTripAndCanonicalForm) {
    Graph g = gen_erdos_renyi(9, 0.5, 3);
    std::string text = graph_to_json(g);
    EXPECT_EQ(graph_from_json(text), g);
    EXPECT_EQ(graph_to_json(Graph(3, {{0, 1}, {1, 2}})), "{\"edges\":[[0,1],[1,2]],\"n\":3}\n");
}

TEST(GraphIo, RejectsBadInput) {
    EXPECT_THROW(graph_from_json("{\"n\":3}"), std::invalid_argument);
    EXPECT_THROW(graph_from_json("{\"n\":3,\"edges\":[[0,3]]}"), std::invalid_argument);
    EXPECT_THROW(graph_from_json("{\"n\":3,\"edges\":[[1,1]]}"), std::invalid_argument);
    EXPECT_THROW(graph_from_json("not json"), std::invalid_argument);
    EXPECT_THROW(graph_from_spec("kpartite:3"), std::invalid_argument);
    EXPECT_THROW(graph_from_spec("mystery:3,2"), std::invalid_argument);
}

TEST(GraphIo, Specs) {
    EXPECT_EQ(graph_from_spec("kpartite:3,2"), gen_kpartite(3, 2));
    EXPECT_EQ(graph_from_spec("complete:5"), gen_complete(5));
    EXPECT_EQ(graph_from_spec("er:20,0.2,7"), gen_erdos_renyi(20, 0.2, 7));
    EXPECT_EQ(graph_from_spec("rips:8,2").n(), 8);
}

}  // namespace
}  // namespace bettiforge

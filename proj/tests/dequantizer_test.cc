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

#include <map>
#include <unsupported/Eigen/MatrixFunctions>

#include "bettiforge/dequantizer.h"
#include "bettiforge/homology.h"
#include "bettiforge/rng.h"

namespace bettiforge {
namespace {

Eigen::MatrixXd expm_sym(const Eigen::MatrixXd &h, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    return es.eigenvectors() * (-t * es.eigenvalues().array()).exp().matrix().asDiagonal() *
           es.eigenvectors().transpose();
}

TEST(Dequantizer, PenalizedKernelIsBetti) {
    for (uint64_t seed = 0; seed < 10; seed++) {
        Graph g = gen_erdos_renyi(7, 0.5, 300 + seed);
        for (int k = 1; k <= 3; k++) {
            if (enumerate_cliques(g, k).empty()) continue;
            PenalizedOperator op = penalized_operator(g, k);
            EXPECT_EQ(penalized_kernel_dimension(op), betti_exact(g, k));
            EXPECT_EQ(op.betti, betti_exact(g, k));
            EXPECT_DOUBLE_EQ(op.d_k, binomial(7, k));
        }
    }
}

TEST(Dequantizer, GapOfPenalizedOperator) {
    Graph g = gen_kpartite(2, 3);
    PenalizedOperator op = penalized_operator(g, 3);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.matrix);
    // nonclique states sit at gamma_pen or above, so the lowest nonzero level is gamma_min
    double lowest = 1e300;
    for (int i = 0; i < es.eigenvalues().size(); i++)
        if (es.eigenvalues()(i) > 1e-8) lowest = std::min(lowest, es.eigenvalues()(i));
    EXPECT_NEAR(lowest, op.gamma_min, 1e-9);
    EXPECT_NEAR(op.gamma_min, 2.0, 1e-9);
}

TEST(Dequantizer, OneSparseDecompositionRecomposes) {
    for (uint64_t seed = 0; seed < 5; seed++) {
        Graph g = gen_erdos_renyi(6, 0.6, seed);
        PenalizedOperator op = penalized_operator(g, 2);
        OneSparseDecomposition d = one_sparse_decompose(op.matrix);
        EXPECT_LT((recompose(d) - op.matrix).cwiseAbs().maxCoeff(), 1e-12);
        Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(d.dimension, d.dimension);
        EXPECT_LT((term_matrix(d.terms[0]) - eye).cwiseAbs().maxCoeff(), 1e-15);
        for (const auto &term : d.terms) {
            Eigen::MatrixXd m = term_matrix(term);
            EXPECT_LT((m * m - eye).cwiseAbs().maxCoeff(), 1e-15);
            EXPECT_LT((m - m.transpose()).cwiseAbs().maxCoeff(), 1e-15);
            for (int r = 0; r < m.rows(); r++) EXPECT_EQ((m.row(r).array() != 0).count(), 1);
            for (int label = 0; label < d.dimension; label++) {
                SparseVector v = term_eigenvector(term, label);
                Eigen::VectorXd dense = Eigen::VectorXd::Zero(d.dimension);
                for (int i = 0; i < v.size; i++) dense(v.index[i]) = v.amp[i];
                EXPECT_NEAR(dense.norm(), 1.0, 1e-15);
                EXPECT_LT((term.coeff * m * dense - term_eigenvalue(term, label) * dense).norm(), 1e-12);
            }
        }
    }
}

TEST(Dequantizer, TrotterProductConvergesAtSecondOrder) {
    Graph g = gen_kpartite(2, 3);
    PenalizedOperator op = penalized_operator(g, 3);
    OneSparseDecomposition d = one_sparse_decompose(op.matrix);
    double t = 0.4;
    Eigen::MatrixXd exact = expm_sym(op.matrix, t);
    double e1 = (trotter_product(d, t, 4) - exact).norm();
    double e2 = (trotter_product(d, t, 8) - exact).norm();
    EXPECT_GT(e1, 0.0);
    EXPECT_NEAR(e1 / e2, 4.0, 0.5);
}

TEST(Dequantizer, PathSumsEqualTrotterDiagonal) {
    Graph g = gen_kpartite(2, 2);
    PenalizedOperator op = penalized_operator(g, 2);
    OneSparseDecomposition d = one_sparse_decompose(op.matrix);
    for (int64_t r : {1, 2}) {
        double t = 1.3;
        PathModel model(d, t, r);
        Eigen::MatrixXd T = trotter_product(d, t, r);
        for (int s : op.sigma) {
            PathSums ps = path_sums(model, s);
            EXPECT_NEAR(ps.trace, T(s, s), 1e-12);
            double trace = 0, z = 0, w2 = 0;
            for (const PathSample &p : enumerate_paths(model, s, 1 << 16)) {
                trace += p.weight * std::exp(-p.eigen_sum * t / (2.0 * r));
                z += std::exp(stationary_log_prob(p, t, r));
                w2 += p.weight * p.weight;
            }
            EXPECT_NEAR(trace, ps.trace, 1e-12);
            EXPECT_NEAR(std::log(z), ps.log_z, 1e-10);
            EXPECT_NEAR(std::log(w2), ps.log_w2, 1e-10);
        }
    }
}

std::map<std::vector<int>, double> exact_law(const PathModel &model, int s, double t, int64_t r) {
    std::map<std::vector<int>, double> law;
    double z = std::exp(path_sums(model, s).log_z);
    for (const PathSample &p : enumerate_paths(model, s, 1 << 16)) law[p.labels] = std::exp(stationary_log_prob(p, t, r)) / z;
    return law;
}

TEST(Dequantizer, ExactSamplerFrequencies) {
    Graph g = gen_kpartite(2, 2);
    PenalizedOperator op = penalized_operator(g, 2);
    OneSparseDecomposition d = one_sparse_decompose(op.matrix);
    double t = 0.8;
    PathModel model(d, t, 1);
    int s = op.sigma[0];
    auto law = exact_law(model, s, t, 1);
    Rng rng(17);
    int draws = 40000;
    std::map<std::vector<int>, int> counts;
    for (int i = 0; i < draws; i++) counts[sample_path_exact(model, s, rng).labels]++;
    for (const auto &[labels, c] : counts) ASSERT_TRUE(law.count(labels));
    for (const auto &[labels, p] : law) {
        double sigma = std::sqrt(draws * p * (1 - p));
        EXPECT_NEAR(counts[labels], draws * p, 5 * sigma + 1);
    }
}

TEST(Dequantizer, ChainStationaryLaw) {
    Graph g = gen_kpartite(2, 2);
    PenalizedOperator op = penalized_operator(g, 2);
    OneSparseDecomposition d = one_sparse_decompose(op.matrix);
    double t = 0.8;
    PathModel model(d, t, 1);
    int s = op.sigma[1];
    auto law = exact_law(model, s, t, 1);
    auto chain = mh_chain(model, s, 200000, 5);
    std::map<std::vector<int>, int> counts;
    for (size_t i = 1000; i < chain.size(); i++) counts[chain[i].labels]++;
    double n = (double)(chain.size() - 1000);
    for (const auto &[labels, p] : law) EXPECT_NEAR(counts[labels] / n, p, 0.02 + 0.1 * p);
    // detailed balance on every pair
    std::vector<PathSample> paths = enumerate_paths(model, s, 1 << 16);
    for (size_t a = 0; a < paths.size(); a++)
        for (size_t b = a + 1; b < paths.size(); b++) {
            double lhs = law[paths[a].labels] * mh_transition_probability(model, paths[a], paths[b], 0);
            double rhs = law[paths[b].labels] * mh_transition_probability(model, paths[b], paths[a], 0);
            EXPECT_NEAR(lhs, rhs, 1e-14);
        }
}

TEST(Dequantizer, AutocorrelationTime) {
    Rng rng(3);
    std::vector<double> iid(50000), ar(50000);
    double x = 0;
    for (size_t i = 0; i < iid.size(); i++) {
        double g = std::sqrt(-2 * std::log(1 - rng.uniform())) * std::cos(2 * M_PI * rng.uniform());
        iid[i] = g;
        x = 0.8 * x + g;
        ar[i] = x;
    }
    EXPECT_NEAR(integrated_autocorr_time(iid), 1.0, 0.1);
    EXPECT_NEAR(integrated_autocorr_time(ar), 9.0, 1.5);
}

TEST(Dequantizer, ThermalMeanDecreasesToTarget) {
    Graph g = gen_kpartite(2, 3);
    PenalizedOperator op = penalized_operator(g, 3);
    double target = 1.0 / 20.0, prev = 1e300;
    for (double t : {0.1, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        double v = exact_thermal_mean(op, t);
        EXPECT_LT(v, prev);
        EXPECT_GT(v, target);
        prev = v;
    }
    EXPECT_NEAR(prev, target, 1e-6);
}

TEST(Dequantizer, EstimatorReproducibleAndUnbiased) {
    Graph g = gen_kpartite(2, 2);
    PIMCConfig cfg;
    cfg.t = std::log(1000.0) / 2.0;
    cfg.slices = 1;
    cfg.samples = 8000;
    cfg.seed = 11;
    PIMCResult a = estimate_normalized_betti(g, 2, cfg);
    PIMCResult b = estimate_normalized_betti(g, 2, cfg);
    EXPECT_EQ(a.estimate, b.estimate);
    EXPECT_NEAR(a.estimate, a.exact_mean, 4 * a.std_error);
    EXPECT_NEAR(a.target, 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(a.clique_acceptance, 4.0 / 6.0, 0.05);
    EXPECT_GT(a.acceptance_rate, 0.0);
}

}  // namespace
}  // namespace bettiforge

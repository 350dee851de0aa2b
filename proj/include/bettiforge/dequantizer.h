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

#ifndef BETTIFORGE_DEQUANTIZER_H
#define BETTIFORGE_DEQUANTIZER_H

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "bettiforge/graph.h"
#include "bettiforge/rng.h"

namespace bettiforge {

constexpr int kMaxPenalizedDimension = 4096;

// B_G^2 + gamma_pen (1 - P) over every bit string of Hamming weight
// k-1, k or k+1, where P projects onto clique states.
struct PenalizedOperator {
    int n = 0;
    int k = 0;
    std::vector<Mask> states;   // ambient basis, grouped by weight then sorted
    std::vector<bool> clique;   // per basis state
    std::vector<int> sigma;     // indices of the weight-k clique states
    Eigen::MatrixXd matrix;
    double gamma_pen = 0;
    double gamma_min = 0;  // smallest nonzero eigenvalue of B_G^2
    double gamma_max = 0;
    double d_k = 0;        // C(n, k)
    int64_t betti = 0;     // zero modes of B_G^2 on weight-k clique states
};

// With penalty_from_top the penalty is gamma_max instead of gamma_min.
PenalizedOperator penalized_operator(const Graph &g, int k, bool penalty_from_top = false);

// Nullity of the weight-k block of the penalized operator.
int64_t penalized_kernel_dimension(const PenalizedOperator &op);

// Hermitian involution with at most one nonzero per row. For index x,
// partner[x] == x means H e_x = value[x] e_x; otherwise
// H e_x = value[x] e_{partner[x]} with value[x] == value[partner[x]].
struct OneSparseTerm {
    double coeff = 0;
    std::vector<int> partner;
    std::vector<int8_t> value;
};

struct OneSparseDecomposition {
    int dimension = 0;
    std::vector<OneSparseTerm> terms;  // terms[0] is the identity
    int diagonal_levels = 0;           // distinct diagonal values
    int weight_groups = 0;             // distinct off-diagonal magnitudes
    int max_degree = 0;                // of the off-diagonal nonzero graph
    int D() const {
        return (int)terms.size();
    }
};

OneSparseDecomposition one_sparse_decompose(const Eigen::MatrixXd &op);
Eigen::MatrixXd recompose(const OneSparseDecomposition &decomp);
Eigen::MatrixXd term_matrix(const OneSparseTerm &term);

// Eigenvector `label` of a term: up to two (index, amplitude) entries.
struct SparseVector {
    int size = 0;
    int index[2] = {0, 0};
    double amp[2] = {0, 0};
};
SparseVector term_eigenvector(const OneSparseTerm &term, int label);
// Eigenvalue of coeff * H on that vector.
double term_eigenvalue(const OneSparseTerm &term, int label);

// r_T = ceil(t max{sqrt(4 e t alpha / eps_T), (4 / ln 2) sum_l ||H_l||}); t = 0 gives 0.
int64_t trotter_slices(double t, double commutator_bound, double eps_T, double term_norm_sum);
// Same with alpha <= 8 r_T D gamma^3 substituted and solved for r_T.
int64_t trotter_slices_bounded(double t, int D, double gamma, double eps_T, double term_norm_sum);
// sum over ordered triples of ||[c_a H_a, [c_b H_b, c_c H_c]]||_F, an upper
// bound on the nested commutator norm sum. Small decompositions only.
double commutator_alpha(const OneSparseDecomposition &decomp);
// Symmetric product over r_T slices, first-order halves in order 1..D then D..1.
Eigen::MatrixXd trotter_product(const OneSparseDecomposition &decomp, double t, int64_t r_T);

struct PathSite {
    int term = 0;
    int mult = 0;  // number of merged half-steps
};

// Closed paths through the Trotterized imaginary-time evolution. Adjacent
// half-steps of the same term are merged, so a slice holds 2D - 2 sites
// (one site of multiplicity 2 r_T when D = 1). Site 0 is the identity term,
// whose eigenbasis is the computational basis.
class PathModel {
   public:
    PathModel(const OneSparseDecomposition &decomp, double t, int64_t r_T);

    const OneSparseDecomposition &decomp() const {
        return *decomp_;
    }
    double t() const {
        return t_;
    }
    int64_t slices() const {
        return r_T_;
    }
    int dimension() const {
        return decomp_->dimension;
    }
    const std::vector<PathSite> &sites() const {
        return sites_;
    }
    int site_count() const {
        return (int)sites_.size();
    }
    double eigenvalue(int site, int label) const;
    // Overlap of the eigenvectors at adjacent sites (site + 1 wraps to 0).
    double overlap(int site, int label, int next_label) const;
    // Labels of site + 1 whose eigenvectors overlap the given one.
    int successors(int site, int label, int out[4]) const;
    // Labels of `site` overlapping both given neighbors.
    std::vector<int> candidates(int site, int prev_label, int next_label) const;

   private:
    const OneSparseDecomposition *decomp_;
    double t_;
    int64_t r_T_;
    std::vector<PathSite> sites_;
};

struct PathSample {
    std::vector<int> labels;  // one per site, labels[0] = starting state
    double weight = 0;        // W: product of overlaps around the cycle
    double eigen_sum = 0;     // sum over sites of mult * eigenvalue
};

PathSample make_path(const PathModel &model, std::vector<int> labels);

// Unnormalized log Pr: -eigen_sum * t / r_T on valid paths, -inf otherwise.
double stationary_log_prob(const PathSample &path, double t, int64_t r_T);

// Exact sums over closed paths from basis state sigma via transfer matrices.
struct PathSums {
    double log_z = -std::numeric_limits<double>::infinity();  // log of sum of Pr weights
    double trace = 0;  // sum of W * exp(-eigen_sum t / (2 r_T)) = <sigma|T|sigma>
    double log_w2 = -std::numeric_limits<double>::infinity();  // log of sum of W^2
};
PathSums path_sums(const PathModel &model, int sigma);

// Draws a path from Pr exactly (forward filtering, backward sampling).
PathSample sample_path_exact(const PathModel &model, int sigma, Rng &rng);

// All valid closed paths from sigma; throws when more than `limit` exist.
std::vector<PathSample> enumerate_paths(const PathModel &model, int sigma, int64_t limit);

// Metropolis-Hastings over closed paths with the start fixed. A move picks a
// window length L uniformly in [1, max_span] (max_span <= 0 means every site
// but the first), a window position uniformly, and refills the window
// uniformly among the fillings that keep every overlap nonzero. The proposal
// is symmetric, so the acceptance is min(1, Pr(b) / Pr(a)).
class PathChain {
   public:
    PathChain(const PathModel &model, PathSample start);
    bool step(Rng &rng, int max_span);
    const PathSample &state() const {
        return path_;
    }
    int64_t proposals() const {
        return proposals_;
    }
    int64_t accepted() const {
        return accepted_;
    }

   private:
    const PathModel *model_;
    PathSample path_;
    int64_t proposals_ = 0;
    int64_t accepted_ = 0;
};

std::vector<PathSample> mh_chain(const PathModel &model, int sigma, int64_t steps, uint64_t seed, int max_span = 0);

// Probability that one chain step moves path a to path b (a != b).
double mh_transition_probability(const PathModel &model, const PathSample &a, const PathSample &b, int max_span);

// Number of valid fillings of sites [first, first + length) given the
// labels around them.
double window_fillings(const PathModel &model, const std::vector<int> &labels, int first, int length);

struct PIMCConfig {
    double t = 0;
    int64_t slices = 0;  // r_T; 0 selects trotter_slices
    int64_t samples = 2000;
    int64_t burn_in = 50;
    int64_t thin = 10;
    int chains = 4;
    double commutator_bound = 0;  // alpha; <= 0 uses the closed-form bound
    double eps_T = 0.05;
    double eps_M = 0.05;
    uint64_t seed = 1;
    int max_span = 0;
    bool penalty_from_top = false;
};

struct PIMCResult {
    double estimate = 0;
    double std_error = 0;
    double naive_stderr = 0;
    double acceptance_rate = 0;
    double autocorr_time = 0;
    double clique_acceptance = 0;  // rejection-sampler acceptance frequency
    int D = 0;
    int64_t r_T = 0;
    int sites = 0;
    double t = 0;
    int64_t samples = 0;
    double target = 0;      // beta / d_k
    double exact_mean = 0;  // (1/d_k) sum over cliques of <sigma|T|sigma>
    double log_second_moment = 0;
    double sample_variance = 0;
    std::vector<double> values;
};

// E_q = (|Cl_k| / d_k) Z(sigma) W / f, with sigma uniform over Cl_k and the
// path drawn from Pr = f^2 / Z(sigma).
PIMCResult estimate_normalized_betti(const Graph &g, int k, const PIMCConfig &cfg);
PIMCResult estimate_normalized_betti(const PenalizedOperator &op, const OneSparseDecomposition &decomp,
                                     const PIMCConfig &cfg);

struct VarianceReport {
    double empirical_variance = 0;
    double exact_variance = 0;
    double log_analytic_bound = 0;  // natural log of the worst-case bound
    double log_ratio = 0;           // log(empirical / analytic)
    double autocorr_time = 0;
    double max_abs_eigenvalue = 0;
};

VarianceReport variance_report(const PenalizedOperator &op, const OneSparseDecomposition &decomp,
                               const PIMCResult &result);

// Integrated autocorrelation time with a self-consistent window.
double integrated_autocorr_time(const std::vector<double> &series);

// (1/d_k) sum over weight-k cliques of <sigma|exp(-t H)|sigma>.
double exact_thermal_mean(const PenalizedOperator &op, double t);
// Same with the Trotter product in place of the exponential.
double exact_trotter_mean(const PenalizedOperator &op, const OneSparseDecomposition &decomp, double t,
                          int64_t r_T);

}  // namespace bettiforge

#endif

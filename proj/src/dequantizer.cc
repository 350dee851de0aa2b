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

#include "bettiforge/dequantizer.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "bettiforge/homology.h"

namespace bettiforge {

namespace {

constexpr double kOverlapTolerance = 1e-12;
constexpr int64_t kMaxPathSites = 20000000;

double jw_sign(Mask x, int j) {
    Mask below = (Mask{1} << j) - 1;
    return (popcount(x & below) % 2 == 0) ? 1.0 : -1.0;
}

void append_weight(int n, int w, std::vector<Mask> &out) {
    if (w < 0 || w > n) {
        return;
    }
    if (w == 0) {
        out.push_back(0);
        return;
    }
    Mask m = (Mask{1} << w) - 1;
    Mask limit = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
    while (true) {
        out.push_back(m);
        if (m == (limit & ~((Mask{1} << (n - w)) - 1))) {
            break;
        }
        Mask c = m & (~m + 1);
        Mask r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
}

double log_sum_exp(double a, double b) {
    if (a == -INFINITY) {
        return b;
    }
    if (b == -INFINITY) {
        return a;
    }
    double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace

PenalizedOperator penalized_operator(const Graph &g, int k, bool penalty_from_top) {
    if (!g.fits_mask()) {
        throw DeskScaleError("penalized operator limited to 64 vertices");
    }
    if (k < 1 || k > g.n()) {
        throw std::invalid_argument("need 1 <= k <= n");
    }
    int n = g.n();
    double ambient = 0;
    for (int w = k - 1; w <= k + 1; w++) {
        if (w >= 1 && w <= n) {
            ambient += binomial(n, w);
        }
    }
    if (ambient > kMaxPenalizedDimension) {
        throw DeskScaleError("penalized operator dimension " + std::to_string((int64_t)ambient) + " exceeds " +
                             std::to_string(kMaxPenalizedDimension));
    }
    PenalizedOperator op;
    op.n = n;
    op.k = k;
    for (int w = std::max(1, k - 1); w <= k + 1; w++) {
        append_weight(n, w, op.states);
    }
    int dim = (int)op.states.size();
    std::unordered_map<Mask, int> index;
    for (int i = 0; i < dim; i++) {
        index[op.states[i]] = i;
        bool c = is_clique(g, op.states[i]);
        op.clique.push_back(c);
        if (c && popcount(op.states[i]) == k) {
            op.sigma.push_back(i);
        }
    }
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(dim, dim);
    for (int a = 0; a < dim; a++) {
        if (!op.clique[a]) {
            continue;
        }
        for (int j = 0; j < n; j++) {
            auto it = index.find(op.states[a] ^ (Mask{1} << j));
            if (it != index.end() && op.clique[it->second]) {
                b(it->second, a) += jw_sign(op.states[a], j);
            }
        }
    }

    std::vector<int> clique_idx;
    for (int i = 0; i < dim; i++) {
        if (op.clique[i]) {
            clique_idx.push_back(i);
        }
    }
    Eigen::MatrixXd bc(clique_idx.size(), clique_idx.size());
    for (size_t x = 0; x < clique_idx.size(); x++) {
        for (size_t y = 0; y < clique_idx.size(); y++) {
            bc(x, y) = b(clique_idx[x], clique_idx[y]);
        }
    }
    std::vector<double> sq;
    for (double e : symmetric_eigenvalues(bc)) {
        sq.push_back(e * e);
    }
    op.gamma_max = sq.empty() ? 0.0 : *std::max_element(sq.begin(), sq.end());
    op.gamma_min = 0.0;
    for (double v : sq) {
        if (!is_zero_eigenvalue(v, op.gamma_max) && (op.gamma_min == 0.0 || v < op.gamma_min)) {
            op.gamma_min = v;
        }
    }
    if (op.gamma_min == 0.0) {
        op.gamma_min = op.gamma_max = 1.0;
    }
    op.gamma_pen = penalty_from_top ? op.gamma_max : op.gamma_min;
    op.matrix = b * b;
    for (int i = 0; i < dim; i++) {
        if (!op.clique[i]) {
            op.matrix(i, i) += op.gamma_pen;
        }
    }
    op.d_k = binomial(n, k);
    op.betti = penalized_kernel_dimension(op);
    return op;
}

int64_t penalized_kernel_dimension(const PenalizedOperator &op) {
    std::vector<int> idx;
    for (int i = 0; i < (int)op.states.size(); i++) {
        if (popcount(op.states[i]) == op.k) {
            idx.push_back(i);
        }
    }
    Eigen::MatrixXd block(idx.size(), idx.size());
    for (size_t a = 0; a < idx.size(); a++) {
        for (size_t b = 0; b < idx.size(); b++) {
            block(a, b) = op.matrix(idx[a], idx[b]);
        }
    }
    return spectrum_of(block).nullity;
}

OneSparseDecomposition one_sparse_decompose(const Eigen::MatrixXd &op) {
    if (op.rows() != op.cols()) {
        throw std::invalid_argument("operator must be square");
    }
    double scale = std::max(1.0, op.cwiseAbs().maxCoeff());
    if ((op - op.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw std::invalid_argument("operator must be Hermitian");
    }
    int dim = (int)op.rows();
    OneSparseDecomposition out;
    out.dimension = dim;
    double tol = 1e-12 * scale;

    std::vector<double> levels;
    for (int i = 0; i < dim; i++) {
        levels.push_back(op(i, i));
    }
    std::sort(levels.begin(), levels.end());
    std::vector<double> distinct;
    for (double v : levels) {
        if (distinct.empty() || v - distinct.back() > tol) {
            distinct.push_back(v);
        }
    }
    out.diagonal_levels = (int)distinct.size();

    OneSparseTerm identity;
    identity.partner.resize(dim);
    identity.value.assign(dim, 1);
    for (int i = 0; i < dim; i++) {
        identity.partner[i] = i;
    }
    identity.coeff = distinct.empty() ? 0.0 : 0.5 * (distinct.front() + distinct.back());
    out.terms.push_back(identity);
    for (size_t j = 1; j < distinct.size(); j++) {
        OneSparseTerm refl = identity;
        refl.coeff = 0.5 * (distinct[j] - distinct[j - 1]);
        for (int i = 0; i < dim; i++) {
            refl.value[i] = op(i, i) >= distinct[j] - tol ? 1 : -1;
        }
        out.terms.push_back(refl);
    }

    struct Edge {
        int x, y;
        double v;
    };
    std::vector<Edge> edges;
    std::vector<int> degree(dim, 0);
    for (int y = 0; y < dim; y++) {
        for (int x = 0; x < y; x++) {
            if (std::abs(op(x, y)) > tol) {
                edges.push_back({x, y, op(x, y)});
                degree[x]++;
                degree[y]++;
            }
        }
    }
    out.max_degree = dim == 0 ? 0 : *std::max_element(degree.begin(), degree.end());
    std::stable_sort(edges.begin(), edges.end(),
                     [](const Edge &a, const Edge &b) { return std::abs(a.v) < std::abs(b.v); });

    size_t start = 0;
    while (start < edges.size()) {
        size_t end = start;
        double w = std::abs(edges[start].v);
        while (end < edges.size() && std::abs(edges[end].v) - w <= tol) {
            end++;
        }
        out.weight_groups++;
        std::vector<std::vector<bool>> used;
        std::vector<std::vector<size_t>> colors;
        for (size_t e = start; e < end; e++) {
            size_t c = 0;
            while (c < colors.size() && (used[c][edges[e].x] || used[c][edges[e].y])) {
                c++;
            }
            if (c == colors.size()) {
                used.emplace_back(dim, false);
                colors.emplace_back();
            }
            used[c][edges[e].x] = used[c][edges[e].y] = true;
            colors[c].push_back(e);
        }
        for (size_t c = 0; c < colors.size(); c++) {
            OneSparseTerm term;
            term.partner.resize(dim);
            term.value.assign(dim, 1);
            for (int i = 0; i < dim; i++) {
                term.partner[i] = i;
            }
            for (size_t e : colors[c]) {
                const Edge &ed = edges[e];
                int8_t s = ed.v > 0 ? 1 : -1;
                term.partner[ed.x] = ed.y;
                term.partner[ed.y] = ed.x;
                term.value[ed.x] = term.value[ed.y] = s;
            }
            bool perfect = 2 * colors[c].size() == (size_t)dim;
            if (perfect) {
                term.coeff = w;
                out.terms.push_back(term);
                continue;
            }
            term.coeff = 0.5 * w;
            OneSparseTerm minus = term;
            for (int i = 0; i < dim; i++) {
                if (minus.partner[i] == i) {
                    minus.value[i] = -1;
                }
            }
            out.terms.push_back(term);
            out.terms.push_back(minus);
        }
        start = end;
    }
    return out;
}

Eigen::MatrixXd term_matrix(const OneSparseTerm &term) {
    int dim = (int)term.partner.size();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int x = 0; x < dim; x++) {
        h(term.partner[x], x) = term.value[x];
    }
    return h;
}

Eigen::MatrixXd recompose(const OneSparseDecomposition &decomp) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(decomp.dimension, decomp.dimension);
    for (const OneSparseTerm &t : decomp.terms) {
        out += t.coeff * term_matrix(t);
    }
    return out;
}

SparseVector term_eigenvector(const OneSparseTerm &term, int label) {
    SparseVector v;
    int p = term.partner[label];
    if (p == label) {
        v.size = 1;
        v.index[0] = label;
        v.amp[0] = 1.0;
        return v;
    }
    int x = std::min(label, p);
    int y = std::max(label, p);
    double s = term.value[x];
    v.size = 2;
    v.index[0] = x;
    v.index[1] = y;
    v.amp[0] = M_SQRT1_2;
    v.amp[1] = (label == x ? s : -s) * M_SQRT1_2;
    return v;
}

double term_eigenvalue(const OneSparseTerm &term, int label) {
    int p = term.partner[label];
    if (p == label) {
        return term.value[label] * term.coeff;
    }
    return label < p ? term.coeff : -term.coeff;
}

int64_t trotter_slices(double t, double commutator_bound, double eps_T, double term_norm_sum) {
    if (!(eps_T > 0)) {
        throw std::invalid_argument("Trotter error budget must be positive");
    }
    if (t < 0 || commutator_bound < 0 || term_norm_sum < 0) {
        throw std::invalid_argument("t, alpha and the norm sum must be nonnegative");
    }
    if (t == 0) {
        return 0;
    }
    double a = std::sqrt(4.0 * M_E * t * commutator_bound / eps_T);
    double b = 4.0 / M_LN2 * term_norm_sum;
    return (int64_t)std::ceil(t * std::max(a, b));
}

int64_t trotter_slices_bounded(double t, int D, double gamma, double eps_T, double term_norm_sum) {
    if (!(eps_T > 0)) {
        throw std::invalid_argument("Trotter error budget must be positive");
    }
    if (t == 0) {
        return 0;
    }
    double a = 32.0 * M_E * t * t * t * D * gamma * gamma * gamma / eps_T;
    double b = t * 4.0 / M_LN2 * term_norm_sum;
    return (int64_t)std::ceil(std::max(a, b));
}

double commutator_alpha(const OneSparseDecomposition &decomp) {
    double D = decomp.D();
    double dim = decomp.dimension;
    if (D * D * D * dim * dim * dim > 2e9) {
        throw DeskScaleError("nested commutator sum limited to small decompositions");
    }
    std::vector<Eigen::MatrixXd> h;
    for (const OneSparseTerm &t : decomp.terms) {
        h.push_back(t.coeff * term_matrix(t));
    }
    double alpha = 0.0;
    for (size_t b = 0; b < h.size(); b++) {
        for (size_t c = 0; c < h.size(); c++) {
            Eigen::MatrixXd inner = h[b] * h[c] - h[c] * h[b];
            if (inner.cwiseAbs().maxCoeff() == 0.0) {
                continue;
            }
            for (size_t a = 0; a < h.size(); a++) {
                alpha += (h[a] * inner - inner * h[a]).norm();
            }
        }
    }
    return alpha;
}

Eigen::MatrixXd trotter_product(const OneSparseDecomposition &decomp, double t, int64_t r_T) {
    int dim = decomp.dimension;
    if (r_T <= 0) {
        return Eigen::MatrixXd::Identity(dim, dim);
    }
    std::vector<Eigen::MatrixXd> half;
    for (const OneSparseTerm &term : decomp.terms) {
        double x = term.coeff * t / (2.0 * (double)r_T);
        half.push_back(std::cosh(x) * Eigen::MatrixXd::Identity(dim, dim) - std::sinh(x) * term_matrix(term));
    }
    Eigen::MatrixXd slice = Eigen::MatrixXd::Identity(dim, dim);
    for (size_t p = 0; p < half.size(); p++) {
        slice = slice * half[p];
    }
    for (size_t p = half.size(); p-- > 0;) {
        slice = slice * half[p];
    }
    Eigen::MatrixXd out = Eigen::MatrixXd::Identity(dim, dim);
    for (int64_t s = 0; s < r_T; s++) {
        out = out * slice;
    }
    return out;
}

PathModel::PathModel(const OneSparseDecomposition &decomp, double t, int64_t r_T) : decomp_(&decomp), t_(t), r_T_(r_T) {
    if (r_T < 1) {
        throw std::invalid_argument("path model needs at least one Trotter slice");
    }
    if (t < 0) {
        throw std::invalid_argument("imaginary time must be nonnegative");
    }
    int D = decomp.D();
    if (D < 1) {
        throw std::invalid_argument("decomposition has no terms");
    }
    int64_t per_slice = D == 1 ? 1 : 2 * D - 2;
    if ((D == 1 ? 1 : r_T * per_slice) > kMaxPathSites) {
        throw DeskScaleError("path length exceeds " + std::to_string(kMaxPathSites) + " sites");
    }
    if (D == 1) {
        sites_.push_back({0, (int)(2 * r_T)});
        return;
    }
    for (int64_t s = 0; s < r_T; s++) {
        sites_.push_back({0, 2});
        for (int p = 1; p <= D - 2; p++) {
            sites_.push_back({p, 1});
        }
        sites_.push_back({D - 1, 2});
        for (int p = D - 2; p >= 1; p--) {
            sites_.push_back({p, 1});
        }
    }
}

double PathModel::eigenvalue(int site, int label) const {
    return term_eigenvalue(decomp_->terms[sites_[site].term], label);
}

double PathModel::overlap(int site, int label, int next_label) const {
    int next = (site + 1) % (int)sites_.size();
    SparseVector a = term_eigenvector(decomp_->terms[sites_[site].term], label);
    SparseVector b = term_eigenvector(decomp_->terms[sites_[next].term], next_label);
    double acc = 0.0;
    for (int i = 0; i < a.size; i++) {
        for (int j = 0; j < b.size; j++) {
            if (a.index[i] == b.index[j]) {
                acc += a.amp[i] * b.amp[j];
            }
        }
    }
    return acc;
}

int PathModel::successors(int site, int label, int out[4]) const {
    int next = (site + 1) % (int)sites_.size();
    const OneSparseTerm &q = decomp_->terms[sites_[next].term];
    SparseVector a = term_eigenvector(decomp_->terms[sites_[site].term], label);
    int count = 0;
    for (int i = 0; i < a.size; i++) {
        int idx = a.index[i];
        for (int cand : {idx, q.partner[idx]}) {
            bool seen = false;
            for (int c = 0; c < count; c++) {
                seen = seen || out[c] == cand;
            }
            if (!seen && std::abs(overlap(site, label, cand)) > kOverlapTolerance) {
                out[count++] = cand;
            }
        }
    }
    return count;
}

std::vector<int> PathModel::candidates(int site, int prev_label, int next_label) const {
    int S = (int)sites_.size();
    int prev = (site - 1 + S) % S;
    int succ[4];
    int count = successors(prev, prev_label, succ);
    std::vector<int> out;
    for (int c = 0; c < count; c++) {
        if (std::abs(overlap(site, succ[c], next_label)) > kOverlapTolerance) {
            out.push_back(succ[c]);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

PathSample make_path(const PathModel &model, std::vector<int> labels) {
    int S = model.site_count();
    if ((int)labels.size() != S) {
        throw std::invalid_argument("path length does not match the site count");
    }
    PathSample p;
    p.labels = std::move(labels);
    p.weight = 1.0;
    for (int i = 0; i < S; i++) {
        p.weight *= model.overlap(i, p.labels[i], p.labels[(i + 1) % S]);
        p.eigen_sum += model.sites()[i].mult * model.eigenvalue(i, p.labels[i]);
    }
    if (std::abs(p.weight) < kOverlapTolerance) {
        p.weight = 0.0;
    }
    return p;
}

double stationary_log_prob(const PathSample &path, double t, int64_t r_T) {
    if (path.weight == 0.0) {
        return -INFINITY;
    }
    return -path.eigen_sum * t / (double)r_T;
}

namespace {

// Forward pass over sites 0..S-1 from sigma; returns per-site normalized
// vectors (when keep is set) and the log scale of the last one.
template <class SiteWeight, class EdgeWeight>
double forward(const PathModel &model, int sigma, SiteWeight site_w, EdgeWeight edge_w,
               std::vector<std::vector<double>> *keep, std::vector<double> &last) {
    int S = model.site_count();
    int dim = model.dimension();
    std::vector<double> cur(dim, 0.0), nxt(dim, 0.0);
    cur[sigma] = site_w(0, sigma);
    double log_scale = 0.0;
    if (keep) {
        keep->assign(S, {});
        (*keep)[0] = cur;
    }
    int succ[4];
    for (int i = 1; i < S; i++) {
        std::fill(nxt.begin(), nxt.end(), 0.0);
        for (int l = 0; l < dim; l++) {
            if (cur[l] == 0.0) {
                continue;
            }
            int count = model.successors(i - 1, l, succ);
            for (int c = 0; c < count; c++) {
                nxt[succ[c]] += cur[l] * edge_w(model.overlap(i - 1, l, succ[c])) * site_w(i, succ[c]);
            }
        }
        double top = 0.0;
        for (double v : nxt) {
            top = std::max(top, std::abs(v));
        }
        if (top == 0.0) {
            last.assign(dim, 0.0);
            return -INFINITY;
        }
        for (double &v : nxt) {
            v /= top;
        }
        log_scale += std::log(top);
        std::swap(cur, nxt);
        if (keep) {
            (*keep)[i] = cur;
        }
    }
    last = cur;
    return log_scale;
}

}  // namespace

PathSums path_sums(const PathModel &model, int sigma) {
    int S = model.site_count();
    double tr = model.t() / (double)model.slices();
    const auto &sites = model.sites();
    PathSums out;
    std::vector<double> last;

    auto closing = [&](auto edge_w) {
        double acc = 0.0;
        for (int l = 0; l < model.dimension(); l++) {
            if (last[l] != 0.0) {
                double ov = model.overlap(S - 1, l, sigma);
                if (std::abs(ov) > kOverlapTolerance) {
                    acc += last[l] * edge_w(ov);
                }
            }
        }
        return acc;
    };

    auto ind = [](double ov) { return std::abs(ov) > kOverlapTolerance ? 1.0 : 0.0; };
    double ls = forward(
        model, sigma, [&](int i, int l) { return std::exp(-sites[i].mult * model.eigenvalue(i, l) * tr); }, ind,
        nullptr, last);
    double z = closing(ind);
    out.log_z = z > 0 ? ls + std::log(z) : -INFINITY;

    auto signed_ov = [](double ov) { return ov; };
    ls = forward(
        model, sigma, [&](int i, int l) { return std::exp(-0.5 * sites[i].mult * model.eigenvalue(i, l) * tr); },
        signed_ov, nullptr, last);
    out.trace = ls == -INFINITY ? 0.0 : closing(signed_ov) * std::exp(ls);

    auto sq = [](double ov) { return ov * ov; };
    ls = forward(model, sigma, [](int, int) { return 1.0; }, sq, nullptr, last);
    double w2 = closing(sq);
    out.log_w2 = w2 > 0 ? ls + std::log(w2) : -INFINITY;
    return out;
}

PathSample sample_path_exact(const PathModel &model, int sigma, Rng &rng) {
    int S = model.site_count();
    int dim = model.dimension();
    double tr = model.t() / (double)model.slices();
    const auto &sites = model.sites();
    std::vector<std::vector<double>> fwd;
    std::vector<double> last;
    auto ind = [](double ov) { return std::abs(ov) > kOverlapTolerance ? 1.0 : 0.0; };
    double ls = forward(
        model, sigma, [&](int i, int l) { return std::exp(-sites[i].mult * model.eigenvalue(i, l) * tr); }, ind,
        &fwd, last);
    if (ls == -INFINITY) {
        throw std::runtime_error("no valid closed path from the starting state");
    }
    std::vector<int> labels(S, sigma);
    std::vector<double> w(dim);
    int next_label = sigma;
    for (int i = S - 1; i >= 1; i--) {
        double total = 0.0;
        for (int l = 0; l < dim; l++) {
            w[l] = fwd[i][l] > 0 && std::abs(model.overlap(i, l, next_label)) > kOverlapTolerance ? fwd[i][l] : 0.0;
            total += w[l];
        }
        if (total <= 0) {
            throw std::runtime_error("no valid closed path from the starting state");
        }
        double u = rng.uniform() * total;
        int pick = -1;
        for (int l = 0; l < dim; l++) {
            if (w[l] > 0) {
                pick = l;
                u -= w[l];
                if (u < 0) {
                    break;
                }
            }
        }
        labels[i] = pick;
        next_label = pick;
    }
    return make_path(model, std::move(labels));
}

std::vector<PathSample> enumerate_paths(const PathModel &model, int sigma, int64_t limit) {
    int S = model.site_count();
    std::vector<PathSample> out;
    std::vector<int> labels(S, sigma);
    auto recurse = [&](auto &self, int site) -> void {
        if (site == S) {
            if (std::abs(model.overlap(S - 1, labels[S - 1], sigma)) > kOverlapTolerance) {
                if ((int64_t)out.size() >= limit) {
                    throw DeskScaleError("more than " + std::to_string(limit) + " closed paths");
                }
                out.push_back(make_path(model, labels));
            }
            return;
        }
        int succ[4];
        int count = model.successors(site - 1, labels[site - 1], succ);
        std::sort(succ, succ + count);
        for (int c = 0; c < count; c++) {
            labels[site] = succ[c];
            self(self, site + 1);
        }
    };
    recurse(recurse, 1);
    return out;
}

PathChain::PathChain(const PathModel &model, PathSample start) : model_(&model), path_(std::move(start)) {
    if (path_.weight == 0.0) {
        throw std::invalid_argument("chain must start on a valid closed path");
    }
}

namespace {

using Layer = std::vector<std::pair<int, double>>;

// Forward counts of valid fillings over the window, normalized per layer.
// Returns the log of the total count.
double window_layers(const PathModel &m, const std::vector<int> &lab, int first, int length,
                     std::vector<Layer> &layers) {
    int S = m.site_count();
    int next_label = lab[(first + length) % S];
    layers.assign(length, {});
    std::map<int, double> acc;
    int succ[4];
    int count = m.successors(first - 1, lab[first - 1], succ);
    for (int c = 0; c < count; c++) {
        acc[succ[c]] += 1.0;
    }
    double log_scale = 0.0;
    for (int j = 0; j < length; j++) {
        if (j > 0) {
            acc.clear();
            for (const auto &[l, w] : layers[j - 1]) {
                count = m.successors(first + j - 1, l, succ);
                for (int c = 0; c < count; c++) {
                    acc[succ[c]] += w;
                }
            }
        }
        double top = 0.0;
        for (const auto &kv : acc) {
            top = std::max(top, kv.second);
        }
        if (top == 0.0) {
            return -INFINITY;
        }
        log_scale += std::log(top);
        for (const auto &[l, w] : acc) {
            layers[j].push_back({l, w / top});
        }
    }
    double total = 0.0;
    for (const auto &[l, w] : layers[length - 1]) {
        if (std::abs(m.overlap(first + length - 1, l, next_label)) > kOverlapTolerance) {
            total += w;
        }
    }
    return total > 0 ? log_scale + std::log(total) : -INFINITY;
}

}  // namespace

double window_fillings(const PathModel &model, const std::vector<int> &labels, int first, int length) {
    int S = model.site_count();
    if (first < 1 || length < 1 || first + length > S) {
        throw std::invalid_argument("window must lie inside sites 1..S-1");
    }
    std::vector<Layer> layers;
    return std::exp(window_layers(model, labels, first, length, layers));
}

bool PathChain::step(Rng &rng, int max_span) {
    const PathModel &m = *model_;
    int S = m.site_count();
    if (S < 2) {
        return false;
    }
    proposals_++;
    int span = max_span <= 0 ? S - 1 : std::min(max_span, S - 1);
    int length = 1 + (int)rng.below(span);
    int first = 1 + (int)rng.below(S - length);
    std::vector<Layer> layers;
    window_layers(m, path_.labels, first, length, layers);

    std::vector<int> fill(length);
    int next_label = path_.labels[(first + length) % S];
    for (int j = length - 1; j >= 0; j--) {
        double total = 0.0;
        std::vector<double> w(layers[j].size());
        for (size_t c = 0; c < layers[j].size(); c++) {
            bool ok = std::abs(m.overlap(first + j, layers[j][c].first, next_label)) > kOverlapTolerance;
            w[c] = ok ? layers[j][c].second : 0.0;
            total += w[c];
        }
        double u = rng.uniform() * total;
        size_t pick = 0;
        for (size_t c = 0; c < w.size(); c++) {
            if (w[c] > 0) {
                pick = c;
                u -= w[c];
                if (u < 0) {
                    break;
                }
            }
        }
        fill[j] = layers[j][pick].first;
        next_label = fill[j];
    }

    double tr = m.t() / (double)m.slices();
    double delta = 0.0;
    bool same = true;
    for (int j = 0; j < length; j++) {
        int site = first + j;
        if (fill[j] != path_.labels[site]) {
            same = false;
            delta += m.sites()[site].mult * (m.eigenvalue(site, fill[j]) - m.eigenvalue(site, path_.labels[site]));
        }
    }
    double u = rng.uniform();
    if (same || std::log(u) < -delta * tr) {
        accepted_++;
        if (!same) {
            std::vector<int> labels = path_.labels;
            std::copy(fill.begin(), fill.end(), labels.begin() + first);
            path_ = make_path(m, std::move(labels));
        }
        return true;
    }
    return false;
}

std::vector<PathSample> mh_chain(const PathModel &model, int sigma, int64_t steps, uint64_t seed, int max_span) {
    Rng rng(seed);
    PathChain chain(model, sample_path_exact(model, sigma, rng));
    std::vector<PathSample> out;
    out.reserve(steps);
    for (int64_t s = 0; s < steps; s++) {
        chain.step(rng, max_span);
        out.push_back(chain.state());
    }
    return out;
}

double mh_transition_probability(const PathModel &model, const PathSample &a, const PathSample &b, int max_span) {
    int S = model.site_count();
    if (a.labels.size() != b.labels.size() || a.labels[0] != b.labels[0] || S < 2 || b.weight == 0.0) {
        return 0.0;
    }
    int lo = S, hi = -1;
    for (int i = 1; i < S; i++) {
        if (a.labels[i] != b.labels[i]) {
            lo = std::min(lo, i);
            hi = std::max(hi, i);
        }
    }
    if (hi < 0) {
        return 0.0;
    }
    double tr = model.t() / (double)model.slices();
    double accept = std::min(1.0, std::exp(-(b.eigen_sum - a.eigen_sum) * tr));
    int span = max_span <= 0 ? S - 1 : std::min(max_span, S - 1);
    double total = 0.0;
    for (int length = hi - lo + 1; length <= span; length++) {
        for (int first = std::max(1, hi - length + 1); first <= lo && first + length <= S; first++) {
            double fillings = window_fillings(model, a.labels, first, length);
            total += accept / (double)span / (double)(S - length) / fillings;
        }
    }
    return total;
}

double integrated_autocorr_time(const std::vector<double> &series) {
    size_t n = series.size();
    if (n < 4) {
        return 1.0;
    }
    double mean = 0.0;
    for (double v : series) {
        mean += v;
    }
    mean /= (double)n;
    double c0 = 0.0;
    for (double v : series) {
        c0 += (v - mean) * (v - mean);
    }
    c0 /= (double)n;
    if (std::sqrt(c0) <= 1e-9 * std::abs(mean)) {
        return 1.0;
    }
    double tau = 1.0;
    for (size_t lag = 1; lag < n; lag++) {
        double c = 0.0;
        for (size_t i = 0; i + lag < n; i++) {
            c += (series[i] - mean) * (series[i + lag] - mean);
        }
        tau += 2.0 * c / ((double)n * c0);
        if ((double)lag >= 5.0 * tau) {
            break;
        }
    }
    return tau;
}

namespace {

Mask random_subset(int n, int k, Rng &rng) {
    Mask m = 0;
    for (int j = n - k; j < n; j++) {
        int t = (int)rng.below(j + 1);
        m |= (m >> t) & 1 ? Mask{1} << j : Mask{1} << t;
    }
    return m;
}

struct WorkerOutput {
    std::vector<double> values;
    std::vector<std::vector<double>> series;
    int64_t proposals = 0;
    int64_t accepted = 0;
    int64_t attempts = 0;
};

}  // namespace

PIMCResult estimate_normalized_betti(const Graph &g, int k, const PIMCConfig &cfg) {
    PenalizedOperator op = penalized_operator(g, k, cfg.penalty_from_top);
    OneSparseDecomposition decomp = one_sparse_decompose(op.matrix);
    return estimate_normalized_betti(op, decomp, cfg);
}

PIMCResult estimate_normalized_betti(const PenalizedOperator &op, const OneSparseDecomposition &decomp,
                                     const PIMCConfig &cfg) {
    if (cfg.t < 0) {
        throw std::invalid_argument("imaginary time must be nonnegative");
    }
    if (cfg.samples < 2) {
        throw std::invalid_argument("need at least two samples");
    }
    if (cfg.chains < 1 || cfg.thin < 1 || cfg.burn_in < 0) {
        throw std::invalid_argument("need chains >= 1, thin >= 1 and burn_in >= 0");
    }
    if (op.sigma.empty()) {
        throw std::invalid_argument("graph has no k-cliques");
    }
    PIMCResult res;
    res.t = cfg.t;
    res.D = decomp.D();
    double norm_sum = 0.0;
    for (const OneSparseTerm &term : decomp.terms) {
        norm_sum += std::abs(term.coeff);
    }
    int64_t r_T = cfg.slices;
    if (r_T <= 0) {
        r_T = cfg.commutator_bound > 0 ? trotter_slices(cfg.t, cfg.commutator_bound, cfg.eps_T, norm_sum)
                                       : trotter_slices_bounded(cfg.t, res.D, op.gamma_max, cfg.eps_T, norm_sum);
    }
    res.r_T = std::max<int64_t>(1, r_T);
    PathModel model(decomp, cfg.t, res.r_T);
    res.sites = model.site_count();
    res.target = (double)op.betti / op.d_k;
    double tr = cfg.t / (double)res.r_T;

    int ncl = (int)op.sigma.size();
    std::vector<PathSums> sums(ncl);
    parallel_for((size_t)ncl, [&](size_t i) { sums[i] = path_sums(model, op.sigma[i]); });
    double log_second = -INFINITY;
    for (int i = 0; i < ncl; i++) {
        res.exact_mean += sums[i].trace / op.d_k;
        log_second = log_sum_exp(log_second, sums[i].log_z + sums[i].log_w2);
    }
    res.log_second_moment = std::log((double)ncl) - 2.0 * std::log(op.d_k) + log_second;

    std::unordered_map<Mask, int> sigma_of;
    for (int i = 0; i < ncl; i++) {
        sigma_of[op.states[op.sigma[i]]] = i;
    }
    double log_prefactor = std::log((double)ncl / op.d_k);

    std::vector<WorkerOutput> workers(cfg.chains);
    parallel_for((size_t)cfg.chains, [&](size_t w) {
        WorkerOutput &out = workers[w];
        Rng rng = Rng::derive(cfg.seed, w);
        int64_t quota = cfg.samples / cfg.chains + ((int64_t)w < cfg.samples % cfg.chains ? 1 : 0);
        std::map<int, PathChain> chains;
        std::map<int, size_t> series_of;
        for (int64_t s = 0; s < quota; s++) {
            int which = -1;
            while (which < 0) {
                out.attempts++;
                auto it = sigma_of.find(random_subset(op.n, op.k, rng));
                if (it != sigma_of.end()) {
                    which = it->second;
                }
            }
            auto it = chains.find(which);
            if (it == chains.end()) {
                it = chains.emplace(which, PathChain(model, sample_path_exact(model, op.sigma[which], rng))).first;
                for (int64_t b = 0; b < cfg.burn_in; b++) {
                    it->second.step(rng, cfg.max_span);
                }
                series_of[which] = out.series.size();
                out.series.emplace_back();
            } else {
                for (int64_t b = 0; b < cfg.thin; b++) {
                    it->second.step(rng, cfg.max_span);
                }
            }
            const PathSample &p = it->second.state();
            double value = 0.0;
            if (p.weight != 0.0) {
                double log_abs = log_prefactor + sums[which].log_z + std::log(std::abs(p.weight)) +
                                 0.5 * p.eigen_sum * tr;
                value = (p.weight > 0 ? 1.0 : -1.0) * std::exp(log_abs);
            }
            out.values.push_back(value);
            out.series[series_of[which]].push_back(value);
        }
        for (auto &kv : chains) {
            out.proposals += kv.second.proposals();
            out.accepted += kv.second.accepted();
        }
    });

    int64_t proposals = 0, accepted = 0, attempts = 0;
    double tau_weighted = 0.0;
    double tau_weight = 0.0;
    for (const WorkerOutput &w : workers) {
        res.values.insert(res.values.end(), w.values.begin(), w.values.end());
        proposals += w.proposals;
        accepted += w.accepted;
        attempts += w.attempts;
        for (const auto &s : w.series) {
            if (s.size() >= 10) {
                tau_weighted += integrated_autocorr_time(s) * (double)s.size();
                tau_weight += (double)s.size();
            }
        }
    }
    res.samples = (int64_t)res.values.size();
    double mean = 0.0;
    for (double v : res.values) {
        mean += v;
    }
    mean /= (double)res.samples;
    double var = 0.0;
    for (double v : res.values) {
        var += (v - mean) * (v - mean);
    }
    var /= (double)(res.samples - 1);
    res.estimate = mean;
    res.sample_variance = var;
    res.autocorr_time = tau_weight > 0 ? tau_weighted / tau_weight : 1.0;
    res.naive_stderr = std::sqrt(var / (double)res.samples);
    res.std_error = res.naive_stderr * std::sqrt(std::max(1.0, res.autocorr_time));
    res.acceptance_rate = proposals > 0 ? (double)accepted / (double)proposals : 1.0;
    res.clique_acceptance = (double)res.samples / (double)attempts;
    return res;
}

VarianceReport variance_report(const PenalizedOperator &op, const OneSparseDecomposition &decomp,
                               const PIMCResult &result) {
    VarianceReport rep;
    rep.empirical_variance = result.sample_variance;
    rep.exact_variance = std::exp(result.log_second_moment) - result.exact_mean * result.exact_mean;
    for (const OneSparseTerm &t : decomp.terms) {
        rep.max_abs_eigenvalue = std::max(rep.max_abs_eigenvalue, std::abs(t.coeff));
    }
    double D = decomp.D();
    rep.log_analytic_bound = 2.0 * (double)result.r_T * D * M_LN2 + 2.0 * D * rep.max_abs_eigenvalue * result.t -
                             std::log(op.d_k);
    rep.log_ratio = rep.empirical_variance > 0 ? std::log(rep.empirical_variance) - rep.log_analytic_bound : -INFINITY;
    rep.autocorr_time = result.autocorr_time;
    return rep;
}

double exact_thermal_mean(const PenalizedOperator &op, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.matrix);
    Eigen::VectorXd decay = (-t * solver.eigenvalues().array()).exp();
    double acc = 0.0;
    for (int s : op.sigma) {
        Eigen::VectorXd row = solver.eigenvectors().row(s).transpose();
        acc += row.cwiseProduct(row).dot(decay);
    }
    return acc / op.d_k;
}

double exact_trotter_mean(const PenalizedOperator &op, const OneSparseDecomposition &decomp, double t,
                          int64_t r_T) {
    Eigen::MatrixXd T = trotter_product(decomp, t, r_T);
    double acc = 0.0;
    for (int s : op.sigma) {
        acc += T(s, s);
    }
    return acc / op.d_k;
}

}  // namespace bettiforge

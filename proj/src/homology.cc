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

#include "bettiforge/homology.h"

#include <algorithm>
#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numeric>
#include <string>

namespace bettiforge {

namespace {

using BigInt = boost::multiprecision::cpp_int;

struct OverflowError {};

int clique_index(const std::vector<Mask> &level, Mask m) {
    auto it = std::lower_bound(level.begin(), level.end(), m);
    if (it == level.end() || *it != m) {
        throw std::invalid_argument("clique complex is not downward closed");
    }
    return (int)(it - level.begin());
}

// Maps size-s cliques to size-(s-1) cliques; s == 1 gives a map with no rows.
BoundaryMatrix boundary_down(const CliqueComplex &cx, int s) {
    BoundaryMatrix b;
    const auto &cols = cx.level(s);
    b.cols = (int)cols.size();
    b.columns.resize(cols.size());
    if (s == 1) {
        return b;
    }
    const auto &rows = cx.level(s - 1);
    b.rows = (int)rows.size();
    for (size_t c = 0; c < cols.size(); c++) {
        Mask simplex = cols[c];
        Mask rest = simplex;
        int i = 0;
        auto &col = b.columns[c];
        while (rest) {
            Mask bit = rest & (~rest + 1);
            rest ^= bit;
            col.emplace_back(clique_index(rows, simplex ^ bit), (i % 2 == 0) ? 1 : -1);
            i++;
        }
        std::sort(col.begin(), col.end());
    }
    return b;
}

void require_levels(const CliqueComplex &cx, int k) {
    if (k < 1) {
        throw std::invalid_argument("Hamming weight k must be at least 1");
    }
    if (!cx.has_level(k + 1)) {
        throw std::invalid_argument("clique complex must be built to size k+1 = " + std::to_string(k + 1));
    }
}

void require_dense(size_t dim) {
    if (dim > (size_t)kMaxDenseDimension) {
        throw DeskScaleError("dense operator dimension " + std::to_string(dim) + " exceeds the limit " +
                             std::to_string(kMaxDenseDimension));
    }
}

template <class T>
T checked_mul(const T &a, const T &b) {
    if constexpr (std::is_same_v<T, int64_t>) {
        int64_t out;
        if (__builtin_mul_overflow(a, b, &out)) {
            throw OverflowError{};
        }
        return out;
    } else {
        return a * b;
    }
}

template <class T>
T checked_sub(const T &a, const T &b) {
    if constexpr (std::is_same_v<T, int64_t>) {
        int64_t out;
        if (__builtin_sub_overflow(a, b, &out)) {
            throw OverflowError{};
        }
        return out;
    } else {
        return a - b;
    }
}

template <class T>
T abs_value(const T &a) {
    return a < 0 ? T(-a) : a;
}

template <class T>
T gcd_value(T a, T b) {
    a = abs_value(a);
    b = abs_value(b);
    while (b != 0) {
        T t = a % b;
        a = b;
        b = t;
    }
    return a;
}

template <class T>
struct SparseColumn {
    std::vector<int> idx;
    std::vector<T> val;
};

template <class T>
void normalize(SparseColumn<T> &c) {
    T g = 0;
    for (const auto &v : c.val) {
        g = gcd_value(g, v);
        if (g == 1) {
            break;
        }
    }
    if (g > 1) {
        for (auto &v : c.val) {
            v /= g;
        }
    }
}

// col <- b*col - a*piv, where a and b are the entries at the shared pivot row.
template <class T>
SparseColumn<T> eliminate(const SparseColumn<T> &col, const SparseColumn<T> &piv) {
    T a = col.val.back();
    T b = piv.val.back();
    T g = gcd_value(a, b);
    a /= g;
    b /= g;
    SparseColumn<T> out;
    size_t i = 0;
    size_t j = 0;
    while (i < col.idx.size() || j < piv.idx.size()) {
        int r;
        T v = 0;
        if (j >= piv.idx.size() || (i < col.idx.size() && col.idx[i] < piv.idx[j])) {
            r = col.idx[i];
            v = checked_mul(b, col.val[i]);
            i++;
        } else if (i >= col.idx.size() || piv.idx[j] < col.idx[i]) {
            r = piv.idx[j];
            v = checked_sub(T(0), checked_mul(a, piv.val[j]));
            j++;
        } else {
            r = col.idx[i];
            v = checked_sub(checked_mul(b, col.val[i]), checked_mul(a, piv.val[j]));
            i++;
            j++;
        }
        if (v != 0) {
            out.idx.push_back(r);
            out.val.push_back(v);
        }
    }
    normalize(out);
    return out;
}

template <class T>
int64_t rank_impl(const BoundaryMatrix &m) {
    std::vector<int> owner(m.rows, -1);
    std::vector<SparseColumn<T>> reduced;
    for (const auto &column : m.columns) {
        SparseColumn<T> col;
        for (const auto &[r, s] : column) {
            col.idx.push_back(r);
            col.val.push_back(T(s));
        }
        while (!col.idx.empty()) {
            int o = owner[col.idx.back()];
            if (o < 0) {
                break;
            }
            col = eliminate(col, reduced[o]);
        }
        if (!col.idx.empty()) {
            owner[col.idx.back()] = (int)reduced.size();
            reduced.push_back(std::move(col));
        }
    }
    return (int64_t)reduced.size();
}

}  // namespace

IntMatrix BoundaryMatrix::dense() const {
    IntMatrix out = IntMatrix::Zero(rows, cols);
    for (int c = 0; c < cols; c++) {
        for (const auto &[r, s] : columns[c]) {
            out(r, c) = s;
        }
    }
    return out;
}

BoundaryMatrix boundary_matrix(const CliqueComplex &cx, int dim) {
    if (dim < 0) {
        throw std::invalid_argument("boundary dimension must be nonnegative");
    }
    if (!cx.has_level(dim + 2)) {
        throw std::invalid_argument("clique complex must be built to size " + std::to_string(dim + 2));
    }
    return boundary_down(cx, dim + 2);
}

int64_t exact_rank(const BoundaryMatrix &m) {
    try {
        return rank_impl<int64_t>(m);
    } catch (const OverflowError &) {
        return rank_impl<BigInt>(m);
    }
}

IntMatrix laplacian(const CliqueComplex &cx, int k) {
    require_levels(cx, k);
    size_t dim = cx.level(k).size();
    require_dense(dim);
    IntMatrix lap = IntMatrix::Zero((Eigen::Index)dim, (Eigen::Index)dim);

    BoundaryMatrix down = boundary_down(cx, k);
    std::vector<std::vector<std::pair<int, int>>> by_row(down.rows);
    for (int c = 0; c < down.cols; c++) {
        for (const auto &[r, s] : down.columns[c]) {
            by_row[r].emplace_back(c, s);
        }
    }
    for (const auto &row : by_row) {
        for (const auto &[a, sa] : row) {
            for (const auto &[b, sb] : row) {
                lap(a, b) += sa * sb;
            }
        }
    }

    BoundaryMatrix up = boundary_down(cx, k + 1);
    for (const auto &col : up.columns) {
        for (const auto &[a, sa] : col) {
            for (const auto &[b, sb] : col) {
                lap(a, b) += sa * sb;
            }
        }
    }
    return lap;
}

DiracOperator dirac(const CliqueComplex &cx, int k) {
    require_levels(cx, k);
    DiracOperator d;
    d.sizes[0] = k >= 2 ? (int)cx.level(k - 1).size() : 0;
    d.sizes[1] = (int)cx.level(k).size();
    d.sizes[2] = (int)cx.level(k + 1).size();
    d.offsets[0] = 0;
    d.offsets[1] = d.sizes[0];
    d.offsets[2] = d.sizes[0] + d.sizes[1];
    d.dimension = d.sizes[0] + d.sizes[1] + d.sizes[2];
    require_dense(d.dimension);
    d.matrix = IntMatrix::Zero(d.dimension, d.dimension);

    if (k >= 2) {
        BoundaryMatrix down = boundary_down(cx, k);
        for (int c = 0; c < down.cols; c++) {
            for (const auto &[r, s] : down.columns[c]) {
                d.matrix(d.offsets[0] + r, d.offsets[1] + c) = s;
                d.matrix(d.offsets[1] + c, d.offsets[0] + r) = s;
            }
        }
    }
    BoundaryMatrix up = boundary_down(cx, k + 1);
    for (int c = 0; c < up.cols; c++) {
        for (const auto &[r, s] : up.columns[c]) {
            d.matrix(d.offsets[1] + r, d.offsets[2] + c) = s;
            d.matrix(d.offsets[2] + c, d.offsets[1] + r) = s;
        }
    }
    return d;
}

int64_t betti_exact(const CliqueComplex &cx, int k) {
    require_levels(cx, k);
    for (int s = std::max(1, k - 1); s <= k + 1; s++) {
        if (cx.level(s).size() > kMaxExactBasis) {
            throw DeskScaleError("clique basis of size " + std::to_string(s) + " has " +
                                 std::to_string(cx.level(s).size()) + " elements, above the exact-rank limit");
        }
    }
    int64_t dim = (int64_t)cx.level(k).size();
    int64_t down = k >= 2 ? exact_rank(boundary_down(cx, k)) : 0;
    int64_t up = exact_rank(boundary_down(cx, k + 1));
    return dim - down - up;
}

int64_t betti_exact(const Graph &g, int k) {
    if (k < 1) {
        throw std::invalid_argument("Hamming weight k must be at least 1");
    }
    return betti_exact(build_clique_complex(g, k), k);
}

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd &symmetric) {
    require_dense((size_t)symmetric.rows());
    std::vector<double> out;
    if (symmetric.rows() == 0) {
        return out;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("symmetric eigen-solve did not converge");
    }
    out.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(out.begin(), out.end());
    return out;
}

bool is_zero_eigenvalue(double value, double top) {
    return std::abs(value) < kZeroTolerance * std::max(1.0, std::abs(top));
}

SpectralSummary spectrum_of(const Eigen::MatrixXd &symmetric) {
    SpectralSummary s;
    s.eigenvalues = symmetric_eigenvalues(symmetric);
    s.dimension = (int)s.eigenvalues.size();
    if (s.dimension == 0) {
        return s;
    }
    s.top = s.eigenvalues.back();
    for (double ev : s.eigenvalues) {
        if (is_zero_eigenvalue(ev, s.top)) {
            s.nullity++;
        } else if (!s.has_gap || ev < s.gap) {
            if (ev > 0) {
                s.has_gap = true;
                s.gap = ev;
            }
        }
    }
    s.kappa = s.has_gap ? s.top / s.gap : 0.0;
    return s;
}

SpectralSummary spectrum(const Graph &g, int k) {
    CliqueComplex cx = build_clique_complex(g, k);
    return spectrum_of(laplacian(cx, k).cast<double>());
}

int64_t betti_delta_approx(const Graph &g, int k, double delta) {
    if (!(delta >= 0.0)) {
        throw std::invalid_argument("delta must be nonnegative");
    }
    SpectralSummary s = spectrum(g, k);
    int64_t count = 0;
    for (double ev : s.eigenvalues) {
        if (ev <= delta || is_zero_eigenvalue(ev, s.top)) {
            count++;
        }
    }
    return count;
}

std::vector<int64_t> kunneth_convolve(const std::vector<int64_t> &reduced_x, const std::vector<int64_t> &reduced_y) {
    std::vector<int64_t> out(reduced_x.size() + reduced_y.size(), 0);
    for (size_t i = 0; i < reduced_x.size(); i++) {
        for (size_t j = 0; j < reduced_y.size(); j++) {
            out[i + j + 1] += reduced_x[i] * reduced_y[j];
        }
    }
    return out;
}

std::vector<int64_t> to_reduced(std::vector<int64_t> regular) {
    if (!regular.empty()) {
        regular[0] -= 1;
    }
    return regular;
}

std::vector<int64_t> to_regular(std::vector<int64_t> reduced) {
    if (!reduced.empty()) {
        reduced[0] += 1;
    }
    return reduced;
}

std::vector<int64_t> betti_vector(const Graph &g, int max_degree) {
    CliqueComplex cx = build_clique_complex(g, max_degree + 1);
    std::vector<int64_t> out;
    for (int d = 0; d <= max_degree; d++) {
        out.push_back(betti_exact(cx, d + 1));
    }
    return out;
}

}  // namespace bettiforge

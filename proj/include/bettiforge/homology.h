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

#ifndef BETTIFORGE_HOMOLOGY_H
#define BETTIFORGE_HOMOLOGY_H

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "bettiforge/graph.h"

// Index convention: every function taking `k` uses the Hamming weight k of
// the chain basis Cl_k (k-vertex cliques) and refers to the Betti number
// beta_{k-1}. boundary_matrix alone takes a simplicial dimension.

namespace bettiforge {

using IntMatrix = Eigen::Matrix<int64_t, Eigen::Dynamic, Eigen::Dynamic>;

constexpr int kMaxDenseDimension = 4096;
constexpr size_t kMaxExactBasis = 2000000;
constexpr double kZeroTolerance = 1e-8;

// Sparse integer matrix with +-1 entries, stored by column.
struct BoundaryMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, int>>> columns;  // (row, sign), rows ascending

    IntMatrix dense() const;
};

struct SpectralSummary {
    std::vector<double> eigenvalues;  // ascending
    int dimension = 0;
    int nullity = 0;
    bool has_gap = false;
    double gap = 0.0;  // smallest nonzero eigenvalue
    double top = 0.0;  // largest eigenvalue
    double kappa = 0.0;
};

struct DiracOperator {
    int dimension = 0;
    int sizes[3] = {0, 0, 0};    // |Cl_{k-1}|, |Cl_k|, |Cl_{k+1}|
    int offsets[3] = {0, 0, 0};  // block starts
    IntMatrix matrix;
};

// Rows: (dim+1)-vertex cliques. Columns: (dim+2)-vertex cliques. The entry
// for removing the i-th vertex (counted from the lowest) is (-1)^i.
BoundaryMatrix boundary_matrix(const CliqueComplex &cx, int dim);

// Combinatorial Laplacian on the Cl_k basis (Hamming weight k).
IntMatrix laplacian(const CliqueComplex &cx, int k);

// Dirac operator over Cl_{k-1} + Cl_k + Cl_{k+1}.
DiracOperator dirac(const CliqueComplex &cx, int k);

// Exact rank over the rationals.
int64_t exact_rank(const BoundaryMatrix &m);

int64_t betti_exact(const Graph &g, int k);
int64_t betti_exact(const CliqueComplex &cx, int k);
int64_t betti_delta_approx(const Graph &g, int k, double delta);

SpectralSummary spectrum(const Graph &g, int k);
SpectralSummary spectrum_of(const Eigen::MatrixXd &symmetric);
std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd &symmetric);
bool is_zero_eigenvalue(double value, double top);

std::vector<int64_t> kunneth_convolve(const std::vector<int64_t> &reduced_x, const std::vector<int64_t> &reduced_y);
std::vector<int64_t> to_reduced(std::vector<int64_t> regular);
std::vector<int64_t> to_regular(std::vector<int64_t> reduced);

// Regular Betti numbers beta_0..beta_{max_degree}.
std::vector<int64_t> betti_vector(const Graph &g, int max_degree);

}  // namespace bettiforge

#endif

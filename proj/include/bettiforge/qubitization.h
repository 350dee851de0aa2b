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

#ifndef BETTIFORGE_QUBITIZATION_H
#define BETTIFORGE_QUBITIZATION_H

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "bettiforge/graph.h"

namespace bettiforge {

constexpr int kMaxQubitizationVertices = 8;

// Linear-combination-of-unitaries encoding of sum_j Z...Z X_j / n.
// Basis index = selector * 2^n + system mask; the selector register has
// ceil(log2 n) qubits and PREP is a real Householder reflection.
struct BlockEncoding {
    int n = 0;
    int k = 0;
    int selector_qubits = 0;
    int dimension = 0;
    double lambda = 0;
    Eigen::MatrixXd prep;  // on the selector register
    Eigen::MatrixXd V;
    // Clique states of weight k-1, k, k+1, ordered like the Dirac basis.
    std::vector<Mask> projected_states;
};

// Sum over j of Z_0 ... Z_{j-1} X_j on n qubits, bit j of the mask = qubit j.
Eigen::MatrixXd jordan_wigner_sum(int n);

BlockEncoding build_block_encoding(const Graph &g, int k);

// (<0| x P) V (|0> x P) restricted to projected_states.
Eigen::MatrixXd projected_block(const BlockEncoding &be);

// W = R V with R = i (2 |0><0| x P - I).
Eigen::MatrixXcd build_walk(const BlockEncoding &be);

struct WalkSpectrum {
    std::vector<double> hamiltonian_eigs;  // E_k of the projected block times lambda
    std::vector<std::complex<double>> walk_eigs;  // i E/lambda +- sqrt(1 - (E/lambda)^2)
    double max_relation_error = 0;   // W|0k> and W|0k_perp> against the closed forms
    double max_eigvec_error = 0;     // ||W x - mu x|| on the predicted eigenvectors
    double max_perp_leak = 0;        // ||(|0><0| x P)|0k_perp>||
    double max_full_spectrum_distance = -1;  // from a full eigen-solve, when requested
};

WalkSpectrum walk_spectrum(const BlockEncoding &be, const Eigen::MatrixXcd &W, bool full_eigensolve);

}  // namespace bettiforge

#endif

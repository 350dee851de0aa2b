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

#include "bettiforge/qubitization.h"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "bettiforge/resources.h"

namespace bettiforge {

namespace {

using cd = std::complex<double>;

double jw_sign(Mask x, int j) {
    Mask below = (Mask{1} << j) - 1;
    return (std::popcount(x & below) % 2 == 0) ? 1.0 : -1.0;
}

Eigen::MatrixXd householder_prep(int selector_qubits, int n) {
    int dim = 1 << selector_qubits;
    Eigen::VectorXd s = Eigen::VectorXd::Zero(dim);
    for (int j = 0; j < n; j++) {
        s(j) = 1.0 / std::sqrt((double)n);
    }
    Eigen::VectorXd u = -s;
    u(0) += 1.0;
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(dim, dim);
    double norm2 = u.squaredNorm();
    if (norm2 > 1e-30) {
        h -= 2.0 * u * u.transpose() / norm2;
    }
    return h;
}

}  // namespace

Eigen::MatrixXd jordan_wigner_sum(int n) {
    if (n < 1 || n > kMaxQubitizationVertices + 4) {
        throw DeskScaleError("Jordan-Wigner sum limited to 12 qubits");
    }
    int dim = 1 << n;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
    for (int x = 0; x < dim; x++) {
        for (int j = 0; j < n; j++) {
            out(x ^ (1 << j), x) += jw_sign((Mask)x, j);
        }
    }
    return out;
}

BlockEncoding build_block_encoding(const Graph &g, int k) {
    if (g.n() < 1 || g.n() > kMaxQubitizationVertices) {
        throw DeskScaleError("block encoding limited to 1 <= n <= 8, got n=" + std::to_string(g.n()));
    }
    if (k < 1 || k > g.n()) {
        throw std::invalid_argument("need 1 <= k <= n");
    }
    BlockEncoding be;
    be.n = g.n();
    be.k = k;
    be.selector_qubits = (int)ceil_log2(be.n);
    be.lambda = be.n;
    int sel_dim = 1 << be.selector_qubits;
    int sys_dim = 1 << be.n;
    be.dimension = sel_dim * sys_dim;
    be.prep = householder_prep(be.selector_qubits, be.n);

    be.V = Eigen::MatrixXd::Zero(be.dimension, be.dimension);
    for (int s = 0; s < sel_dim; s++) {
        Eigen::VectorXd h = be.prep.col(s);
        for (int j = 0; j < sel_dim; j++) {
            for (int jp = 0; jp < sel_dim; jp++) {
                double w = h(j) * h(jp);
                if (w == 0.0) {
                    continue;
                }
                for (int x = 0; x < sys_dim; x++) {
                    if (s < be.n) {
                        int y = x ^ (1 << s);
                        be.V(j * sys_dim + y, jp * sys_dim + x) += w * jw_sign((Mask)x, s);
                    } else {
                        be.V(j * sys_dim + x, jp * sys_dim + x) += w;
                    }
                }
            }
        }
    }

    CliqueComplex cx = build_clique_complex(g, k);
    for (int size = std::max(1, k - 1); size <= k + 1; size++) {
        for (Mask m : cx.level(size)) {
            be.projected_states.push_back(m);
        }
    }
    return be;
}

Eigen::MatrixXd projected_block(const BlockEncoding &be) {
    int d = (int)be.projected_states.size();
    Eigen::MatrixXd out(d, d);
    for (int a = 0; a < d; a++) {
        for (int b = 0; b < d; b++) {
            out(a, b) = be.V((int)be.projected_states[a], (int)be.projected_states[b]);
        }
    }
    return out;
}

Eigen::MatrixXcd build_walk(const BlockEncoding &be) {
    Eigen::VectorXcd r = Eigen::VectorXcd::Constant(be.dimension, cd(0.0, -1.0));
    for (Mask x : be.projected_states) {
        r((int)x) = cd(0.0, 1.0);
    }
    return r.asDiagonal() * be.V.cast<cd>();
}

WalkSpectrum walk_spectrum(const BlockEncoding &be, const Eigen::MatrixXcd &W, bool full_eigensolve) {
    WalkSpectrum out;
    Eigen::MatrixXd block = projected_block(be);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("projected block eigen-solve failed");
    }
    Eigen::MatrixXcd Vc = be.V.cast<cd>();
    const cd I(0.0, 1.0);
    for (int i = 0; i < (int)block.rows(); i++) {
        double e = solver.eigenvalues()(i);
        out.hamiltonian_eigs.push_back(e * be.lambda);
        double s = std::sqrt(std::max(0.0, 1.0 - e * e));
        out.walk_eigs.push_back(cd(s, e));
        out.walk_eigs.push_back(cd(-s, e));

        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(be.dimension);
        for (int a = 0; a < (int)block.rows(); a++) {
            v((int)be.projected_states[a]) = solver.eigenvectors()(a, i);
        }
        Eigen::VectorXcd Wv = W * v;
        if (s < 1e-9) {
            out.max_relation_error = std::max(out.max_relation_error, (Wv - I * e * v).norm());
            continue;
        }
        Eigen::VectorXcd perp = (Vc * v - e * v) / (I * s);
        double leak = 0.0;
        for (Mask x : be.projected_states) {
            leak += std::norm(perp((int)x));
        }
        out.max_perp_leak = std::max(out.max_perp_leak, std::sqrt(leak));

        Eigen::VectorXcd Wperp = W * perp;
        out.max_relation_error = std::max(out.max_relation_error, (Wv - (I * e * v + s * perp)).norm());
        out.max_relation_error = std::max(out.max_relation_error, (Wperp - (I * e * perp + s * v)).norm());

        for (double sign : {1.0, -1.0}) {
            Eigen::VectorXcd x = (v + sign * perp) / std::sqrt(2.0);
            cd mu(sign * s, e);
            out.max_eigvec_error = std::max(out.max_eigvec_error, (W * x - mu * x).norm());
        }
    }
    if (full_eigensolve) {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> full(W, false);
        if (full.info() != Eigen::Success) {
            throw std::runtime_error("walk eigen-solve failed");
        }
        out.max_full_spectrum_distance = 0.0;
        for (const cd &mu : out.walk_eigs) {
            double best = INFINITY;
            for (int i = 0; i < full.eigenvalues().size(); i++) {
                best = std::min(best, std::abs(full.eigenvalues()(i) - mu));
            }
            out.max_full_spectrum_distance = std::max(out.max_full_spectrum_distance, best);
        }
    }
    return out;
}

}  // namespace bettiforge

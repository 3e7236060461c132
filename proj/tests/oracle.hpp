// Copyright 2026 The qfmix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Brute-force reference: full 2^n x 2^n matrices assembled from Kronecker
// products of 2x2 blocks, independent of the in-place kernels.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qfmix/statevec.hpp"

namespace oracle {

using qfmix::cplx;

struct Dense {
    std::size_t dim = 0;
    std::vector<cplx> m;  // row-major

    explicit Dense(std::size_t d = 1, bool identity = true) : dim(d), m(d * d, 0.0) {
        if (identity)
            for (std::size_t i = 0; i < d; ++i) m[i * d + i] = 1.0;
    }
    cplx& at(std::size_t r, std::size_t c) { return m[r * dim + c]; }
    cplx at(std::size_t r, std::size_t c) const { return m[r * dim + c]; }
};

inline Dense kron(const Dense& a, const Dense& b) {
    Dense out(a.dim * b.dim, false);
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = 0; j < a.dim; ++j)
            for (std::size_t k = 0; k < b.dim; ++k)
                for (std::size_t l = 0; l < b.dim; ++l) out.at(i * b.dim + k, j * b.dim + l) = a.at(i, j) * b.at(k, l);
    return out;
}

inline Dense mul(const Dense& a, const Dense& b) {
    Dense out(a.dim, false);
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t k = 0; k < a.dim; ++k) {
            const cplx x = a.at(i, k);
            if (x == cplx(0)) continue;
            for (std::size_t j = 0; j < a.dim; ++j) out.at(i, j) += x * b.at(k, j);
        }
    return out;
}

inline Dense add(const Dense& a, const Dense& b, double sb = 1.0) {
    Dense out = a;
    for (std::size_t i = 0; i < out.m.size(); ++i) out.m[i] += sb * b.m[i];
    return out;
}

inline Dense two(cplx a, cplx b, cplx c, cplx d) {
    Dense o(2, false);
    o.m = {a, b, c, d};
    return o;
}

/// Tensor product over qubits 0..n-1 (qubit 0 leftmost = most significant).
inline Dense tensor(const std::vector<Dense>& per_qubit) {
    Dense out(1);
    for (const auto& d : per_qubit) out = kron(out, d);
    return out;
}

/// Full matrix of a gate placed on `qubits` in an n-qubit register:
///   U_full = I - P + P (I..U_target..I),  P = projector onto firing controls.
inline Dense embed(std::size_t n, const qfmix::Gate& g, const std::vector<std::size_t>& qubits) {
    const auto t = qfmix::target_matrix(g);
    const std::size_t nc = g.num_controls();
    std::vector<Dense> proj(n, Dense(2)), act(n, Dense(2));
    for (std::size_t i = 0; i < nc; ++i)
        proj[qubits[i]] = g.polarity[i] ? two(0, 0, 0, 1) : two(1, 0, 0, 0);
    act[qubits[nc]] = two(t[0], t[1], t[2], t[3]);
    const Dense P = tensor(proj), A = tensor(act);
    const Dense I(std::size_t{1} << n);
    return add(add(I, P, -1.0), mul(P, A));
}

inline Dense circuit_matrix(std::size_t n, const qfmix::CircuitFragment& c) {
    Dense u(std::size_t{1} << n);
    for (const auto& op : c.ops()) u = mul(embed(n, op.gate, op.qubits), u);
    return u;
}

inline std::vector<cplx> apply(const Dense& u, const std::vector<cplx>& v) {
    std::vector<cplx> out(u.dim, 0.0);
    for (std::size_t i = 0; i < u.dim; ++i)
        for (std::size_t j = 0; j < u.dim; ++j) out[i] += u.at(i, j) * v[j];
    return out;
}

}  // namespace oracle

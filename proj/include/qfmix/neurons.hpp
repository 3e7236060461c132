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

// The four neuron designs: circuit builders plus closed-form forward models.
// Every closed form here is checked against the simulator in the tests.

#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfmix/encoding.hpp"
#include "qfmix/statevec.hpp"

namespace qfmix {

enum class NeuronKind { V, U, P, N };

inline const char* to_string(NeuronKind k) {
    switch (k) {
    case NeuronKind::V: return "V";
    case NeuronKind::U: return "U";
    case NeuronKind::P: return "P";
    case NeuronKind::N: return "N";
    }
    return "?";
}

/// Operations a neuron performs on the qubits it consumes.
enum class ConsumerOp { ControlOnlyNoPhaseKickback, RXOnly, Other };

struct NeuronTraits {
    EncodingKind input;
    EncodingKind output;  // V may also expose a probability view
    bool reuses_input_qubits;
    bool output_entangled;  // for V this depends on width, see mixer
    ConsumerOp ops;
    bool requires_independent_inputs;
};

inline NeuronTraits traits(NeuronKind k) {
    using E = EncodingKind;
    switch (k) {
    case NeuronKind::V: return {E::Amplitude, E::Amplitude, true, true, ConsumerOp::Other, false};
    case NeuronKind::U: return {E::Amplitude, E::Probability, false, true, ConsumerOp::Other, false};
    case NeuronKind::P:
        return {E::Probability, E::Probability, false, true, ConsumerOp::ControlOnlyNoPhaseKickback, true};
    case NeuronKind::N: return {E::Probability, E::Probability, true, false, ConsumerOp::RXOnly, true};
    }
    throw std::invalid_argument("unknown neuron kind");
}

/// Vector of +1/-1 entries.
class BinaryWeights {
public:
    BinaryWeights() = default;
    explicit BinaryWeights(std::vector<int> w) : w_(std::move(w)) {
        for (int v : w_)
            if (v != 1 && v != -1) throw std::invalid_argument("binary weight must be +1 or -1");
    }
    static BinaryWeights from_latent(std::span<const double> latent) {
        std::vector<int> w(latent.size());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = latent[i] >= 0 ? 1 : -1;  // sign(0) = +1
        return BinaryWeights(std::move(w));
    }
    std::size_t size() const { return w_.size(); }
    int operator[](std::size_t i) const { return w_[i]; }
    const std::vector<int>& values() const { return w_; }

private:
    std::vector<int> w_;
};

// ---------------------------------------------------------------- V-NEU

/// RY layer, CX ring (i -> i+1 mod n, skipped for n = 1), RY layer.
inline CircuitFragment build_v_block(std::size_t n, std::span<const double> theta) {
    if (n == 0) throw std::invalid_argument("V block needs at least one qubit");
    if (theta.size() != 2 * n)
        throw std::invalid_argument("V block expects " + std::to_string(2 * n) + " angles, got " +
                                    std::to_string(theta.size()));
    CircuitFragment c(n);
    for (std::size_t i = 0; i < n; ++i) c.add(Gate::ry(theta[i]), {i});
    if (n > 1)
        for (std::size_t i = 0; i < n; ++i) c.add(Gate::cx(), {i, (i + 1) % n});
    for (std::size_t i = 0; i < n; ++i) c.add(Gate::ry(theta[n + i]), {i});
    return c;
}

namespace detail {

// In-place real kernels on a 2^n amplitude vector; qubit 0 is the MSB.
inline void ry_real(std::vector<double>& a, std::size_t n, std::size_t q, double theta) {
    const std::size_t t = std::size_t{1} << (n - 1 - q);
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    for (std::size_t base = 0; base < a.size(); base += 2 * t)
        for (std::size_t i = base; i < base + t; ++i) {
            const double x0 = a[i], x1 = a[i + t];
            a[i] = c * x0 - s * x1;
            a[i + t] = s * x0 + c * x1;
        }
}

// Apply the matrix dRY/dtheta (not unitary) in place.
inline void dry_real(std::vector<double>& a, std::size_t n, std::size_t q, double theta) {
    const std::size_t t = std::size_t{1} << (n - 1 - q);
    const double c = std::cos(theta / 2) / 2, s = std::sin(theta / 2) / 2;
    for (std::size_t base = 0; base < a.size(); base += 2 * t)
        for (std::size_t i = base; i < base + t; ++i) {
            const double x0 = a[i], x1 = a[i + t];
            a[i] = -s * x0 - c * x1;
            a[i + t] = c * x0 - s * x1;
        }
}

inline void cx_real(std::vector<double>& a, std::size_t n, std::size_t ctrl, std::size_t tgt) {
    const std::size_t cb = std::size_t{1} << (n - 1 - ctrl), tb = std::size_t{1} << (n - 1 - tgt);
    for (std::size_t i = 0; i < a.size(); ++i)
        if ((i & cb) && !(i & tb)) std::swap(a[i], a[i | tb]);
}

}  // namespace detail

/// Apply one V block to a real amplitude vector in place.
inline void v_block_apply(std::vector<double>& a, std::size_t n, std::span<const double> theta) {
    for (std::size_t i = 0; i < n; ++i) detail::ry_real(a, n, i, theta[i]);
    if (n > 1)
        for (std::size_t i = 0; i < n; ++i) detail::cx_real(a, n, i, (i + 1) % n);
    for (std::size_t i = 0; i < n; ++i) detail::ry_real(a, n, i, theta[n + i]);
}

/// U(theta) x for a stack of V blocks (theta: 2n angles per block, concatenated).
inline std::vector<double> v_forward(std::span<const double> x, std::span<const double> theta) {
    const std::size_t n = qubits_for(x.size());
    if (x.size() != (std::size_t{1} << n)) throw std::invalid_argument("v_forward expects 2^n amplitudes");
    if (theta.size() % (2 * n) != 0) throw std::invalid_argument("V angles must come in blocks of 2n");
    std::vector<double> a(x.begin(), x.end());
    for (std::size_t b = 0; b < theta.size(); b += 2 * n) v_block_apply(a, n, theta.subspan(b, 2 * n));
    return a;
}

// ---------------------------------------------------------------- U-NEU

/// Phase oracle flipping the sign of |k> iff w_k = -1, compiled exactly from
/// the algebraic normal form of the indicator into Z / CZ / MCZ gates.
inline CircuitFragment compile_sign_flips(std::size_t n, const BinaryWeights& w) {
    const std::size_t dim = std::size_t{1} << n;
    if (w.size() != dim)
        throw std::invalid_argument("sign flips expect " + std::to_string(dim) + " weights, got " +
                                    std::to_string(w.size()));
    std::vector<std::uint8_t> anf(dim);
    for (std::size_t k = 0; k < dim; ++k) anf[k] = w[k] < 0;
    for (std::size_t b = 1; b < dim; b <<= 1)  // Moebius transform over GF(2)
        for (std::size_t k = 0; k < dim; ++k)
            if (k & b) anf[k] ^= anf[k ^ b];
    CircuitFragment c(n);
    if (anf[0]) {  // global -1 = (ZX)^2
        for (int r = 0; r < 2; ++r) c.add(Gate::z(), {0}).add(Gate::x(), {0});
    }
    for (std::size_t mono = 1; mono < dim; ++mono) {
        if (!anf[mono]) continue;
        std::vector<std::size_t> qs;
        for (std::size_t q = 0; q < n; ++q)
            if (mono >> (n - 1 - q) & 1) qs.push_back(q);
        if (qs.size() == 1)
            c.add(Gate::z(), qs);
        else if (qs.size() == 2)
            c.add(Gate::cz(), qs);
        else
            c.add(Gate::mcz(std::vector<bool>(qs.size() - 1, true)), qs);
    }
    return c;
}

/// Inputs on qubits 0..n-1, output ancilla on qubit n.
inline CircuitFragment build_u_neuron(std::size_t n, const BinaryWeights& w) {
    CircuitFragment c = compile_sign_flips(n, w);
    for (std::size_t q = 0; q < n; ++q) c.add(Gate::h(), {q});
    std::vector<std::size_t> qs(n + 1);
    for (std::size_t q = 0; q <= n; ++q) qs[q] = q;
    c.add(Gate::mcx(std::vector<bool>(n, false)), qs);
    return c;
}

/// (sum_k w_k x_k)^2 / N.
inline double u_forward(std::span<const double> x, const BinaryWeights& w) {
    if (x.size() != w.size()) throw std::invalid_argument("u_forward: length mismatch");
    double s = 0;
    for (std::size_t k = 0; k < x.size(); ++k) s += w[k] * x[k];
    return s * s / static_cast<double>(x.size());
}

// ---------------------------------------------------------------- P-NEU

/// Selector width for m inputs: ceil(log2 m).
inline std::size_t selector_qubits(std::size_t m) {
    return m <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(m - 1));
}

/// Control-only P-NEU. Inputs on 0..m-1, selector on m..m+k-1, ancilla on m+k.
/// The selector is put in uniform superposition and input i (after the X
/// weight flip) toggles the ancilla when the selector reads i. Inputs are only
/// ever used as controls and are restored afterwards.
inline CircuitFragment build_p_neuron(std::size_t m, const BinaryWeights& w) {
    if (m == 0) throw std::invalid_argument("P neuron needs at least one input");
    if (w.size() != m)
        throw std::invalid_argument("P neuron expects " + std::to_string(m) + " weights, got " +
                                    std::to_string(w.size()));
    const std::size_t k = selector_qubits(m);
    const std::size_t anc = m + k;
    CircuitFragment flips(anc + 1);
    for (std::size_t i = 0; i < m; ++i)
        if (w[i] < 0) flips.add(Gate::x(), {i});
    CircuitFragment c = flips;
    for (std::size_t s = 0; s < k; ++s) c.add(Gate::h(), {m + s});
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<std::size_t> qs;
        std::vector<bool> pol;
        for (std::size_t s = 0; s < k; ++s) {
            qs.push_back(m + s);
            pol.push_back(i >> (k - 1 - s) & 1);
        }
        qs.push_back(i);
        pol.push_back(true);
        qs.push_back(anc);
        if (pol.size() == 1)
            c.add(Gate::cx(), qs);
        else
            c.add(Gate::mcx(pol), qs);
    }
    c.append(flips);
    return c;
}

/// sum_i q_i / 2^k with q_i = p_i (w_i = +1) or 1 - p_i (w_i = -1).
inline double p_forward(std::span<const double> p, const BinaryWeights& w) {
    if (p.size() != w.size()) throw std::invalid_argument("p_forward: length mismatch");
    if (p.empty()) throw std::invalid_argument("p_forward: empty input");
    double s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += w[i] > 0 ? p[i] : 1 - p[i];
    return s / static_cast<double>(std::size_t{1} << selector_qubits(p.size()));
}

/// Interfering aggregation: X flips, H on every input, anti-controlled MCX onto
/// the ancilla (qubit m), then undo H and X. Used as the counterexample
/// consumer: it reads input phases, so it is not a control-only gadget.
inline CircuitFragment build_interfering_p_neuron(std::size_t m, const BinaryWeights& w) {
    if (w.size() != m)
        throw std::invalid_argument("P neuron expects " + std::to_string(m) + " weights, got " +
                                    std::to_string(w.size()));
    CircuitFragment pre(m + 1);
    for (std::size_t i = 0; i < m; ++i)
        if (w[i] < 0) pre.add(Gate::x(), {i});
    for (std::size_t i = 0; i < m; ++i) pre.add(Gate::h(), {i});
    CircuitFragment c = pre;
    std::vector<std::size_t> qs(m + 1);
    for (std::size_t q = 0; q <= m; ++q) qs[q] = q;
    c.add(Gate::mcx(std::vector<bool>(m, false)), qs);
    c.append(pre.inverse());
    return c;
}

/// prod_i g(q_i), g(q) = (1 + 2 sqrt(q(1-q))) / 2; exact for independent inputs.
inline double interfering_p_forward(std::span<const double> p, const BinaryWeights& w) {
    if (p.size() != w.size()) throw std::invalid_argument("interfering_p_forward: length mismatch");
    double r = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double q = w[i] > 0 ? p[i] : 1 - p[i];
        r *= (1 + 2 * std::sqrt(std::max(0.0, q * (1 - q)))) / 2;
    }
    return r;
}

// ---------------------------------------------------------------- N-NEU

inline CircuitFragment build_n_neuron(double theta) {
    CircuitFragment c(1);
    c.add(Gate::rx(theta), {0});
    return c;
}

/// p cos^2(theta/2) + (1-p) sin^2(theta/2).
inline double n_forward(double p, double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return p * c * c + (1 - p) * s * s;
}

}  // namespace qfmix

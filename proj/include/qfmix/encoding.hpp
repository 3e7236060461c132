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

#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfmix/statevec.hpp"

namespace qfmix {

enum class EncodingKind { Amplitude, Probability };

inline const char* to_string(EncodingKind e) { return e == EncodingKind::Amplitude ? "A" : "P"; }

/// Qubits needed to hold n amplitudes (at least one).
inline std::size_t qubits_for(std::size_t n) {
    if (n <= 2) return 1;
    return static_cast<std::size_t>(std::bit_width(n - 1));
}

/// Zero-pad to 2^k and L2-normalise. Returns the norm used.
inline double normalize_padded(std::span<const double> data, std::vector<double>& out) {
    if (data.empty()) throw std::invalid_argument("amplitude encoding needs at least one value");
    double s = 0;
    for (double v : data) s += v * v;
    if (!std::isfinite(s)) throw std::invalid_argument("amplitude encoding needs finite values");
    if (!(s > 0)) throw std::invalid_argument("cannot amplitude-encode an all-zero vector");
    const double norm = std::sqrt(s);
    out.assign(std::size_t{1} << qubits_for(data.size()), 0.0);
    for (std::size_t i = 0; i < data.size(); ++i) out[i] = data[i] / norm;
    return norm;
}

struct AmplitudeEncoded {
    StateVector state;
    double scale = 1.0;
};

inline AmplitudeEncoded amplitude_encode(std::span<const double> data) {
    std::vector<double> v;
    const double scale = normalize_padded(data, v);
    AmplitudeEncoded r{new_state(qubits_for(data.size())), scale};
    for (std::size_t i = 0; i < v.size(); ++i) r.state.amps[i] = v[i];
    return r;
}

namespace detail {

inline std::size_t gray(std::size_t i) { return i ^ (i >> 1); }

// Uniformly controlled RY on `target` with controls[0..k) (controls[0] is the
// most significant bit of the pattern index). Realised with RY + CX only.
inline void uniformly_controlled_ry(CircuitFragment& c, const std::vector<double>& alpha,
                                    const std::vector<std::size_t>& controls, std::size_t target) {
    const std::size_t k = controls.size();
    const std::size_t m = std::size_t{1} << k;
    if (k == 0) {
        c.add(Gate::ry(alpha[0]), {target});
        return;
    }
    for (std::size_t i = 0; i < m; ++i) {
        double t = 0;
        for (std::size_t j = 0; j < m; ++j)
            t += (std::popcount(j & gray(i)) & 1 ? -1.0 : 1.0) * alpha[j];
        t /= static_cast<double>(m);
        c.add(Gate::ry(t), {target});
        const std::size_t diff = gray(i) ^ gray((i + 1) % m);
        const auto bit = static_cast<std::size_t>(std::countr_zero(diff));
        c.add(Gate::cx(), {controls[k - 1 - bit], target});
    }
}

}  // namespace detail

/// State preparation for a real vector (signs allowed): |0..0> -> sum_i v_i |i>.
/// The input is normalised (and padded) first; the circuit uses RY and CX only.
inline CircuitFragment amplitude_prep_circuit(std::span<const double> data) {
    std::vector<double> v;
    normalize_padded(data, v);
    const std::size_t n = qubits_for(data.size());
    CircuitFragment c(n);
    // level sums of squares: norms[l][p] over prefixes p of length l
    for (std::size_t level = 0; level < n; ++level) {
        const std::size_t np = std::size_t{1} << level;
        const std::size_t block = v.size() >> level;  // amplitudes under one prefix
        std::vector<double> alpha(np);
        for (std::size_t p = 0; p < np; ++p) {
            const std::size_t lo = p * block, mid = lo + block / 2;
            if (level + 1 == n) {
                alpha[p] = 2 * std::atan2(v[mid], v[lo]);
            } else {
                double s0 = 0, s1 = 0;
                for (std::size_t i = lo; i < mid; ++i) s0 += v[i] * v[i];
                for (std::size_t i = mid; i < lo + block; ++i) s1 += v[i] * v[i];
                alpha[p] = 2 * std::atan2(std::sqrt(s1), std::sqrt(s0));
            }
        }
        std::vector<std::size_t> controls(level);
        for (std::size_t q = 0; q < level; ++q) controls[q] = q;
        detail::uniformly_controlled_ry(c, alpha, controls, level);
    }
    return c;
}

inline double probability_angle(double d) {
    if (!(d >= 0.0 && d <= 1.0)) throw std::invalid_argument("probability datum outside [0,1]: " + std::to_string(d));
    return 2 * std::asin(std::sqrt(d));
}

struct ProbabilityEncoded {
    CircuitFragment circuit;
    StateVector state;
};

/// One RY per qubit: qubit i ends in sqrt(1-d_i)|0> + sqrt(d_i)|1>.
inline ProbabilityEncoded probability_encode(std::span<const double> data) {
    if (data.empty()) throw std::invalid_argument("probability encoding needs at least one value");
    ProbabilityEncoded r{CircuitFragment(data.size()), new_state(data.size())};
    for (std::size_t i = 0; i < data.size(); ++i) r.circuit.add(Gate::ry(probability_angle(data[i])), {i});
    run(r.state, r.circuit);
    return r;
}

inline std::vector<double> decode_probabilities(const StateVector& s, std::span<const std::size_t> qubits) {
    std::vector<double> out;
    out.reserve(qubits.size());
    for (auto q : qubits) out.push_back(marginal_prob_one(s, q));
    return out;
}

/// Per-qubit marginals of a real amplitude vector (qubit 0 = MSB).
inline std::vector<double> real_marginals(std::span<const double> y, std::size_t n) {
    std::vector<double> m(n, 0.0);
    for (std::size_t k = 0; k < y.size(); ++k) {
        const double p = y[k] * y[k];
        for (std::size_t q = 0; q < n; ++q)
            if (k >> (n - 1 - q) & 1) m[q] += p;
    }
    return m;
}

}  // namespace qfmix

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

// Dense state-vector simulator.
//
// Conventions: qubit 0 is the most significant bit of the basis index, so for
// an n-qubit register qubit q lives at bit position (n - 1 - q).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfmix/error.hpp"

namespace qfmix {

using cplx = std::complex<double>;
using Mat2 = std::array<cplx, 4>;  // row-major 2x2

inline constexpr std::size_t kDefaultQubitCap = 24;

enum class GateKind { H, X, Z, RX, RY, CX, CZ, MCX, MCZ, Measure };

inline const char* to_string(GateKind k) {
    switch (k) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::CX: return "CX";
    case GateKind::CZ: return "CZ";
    case GateKind::MCX: return "MCX";
    case GateKind::MCZ: return "MCZ";
    case GateKind::Measure: return "MEASURE";
    }
    return "?";
}

/// A gate without its placement. Controlled gates take their qubit list as
/// (controls..., target); `polarity[i]` says whether control i fires on |1>.
struct Gate {
    GateKind kind = GateKind::H;
    double theta = 0.0;
    std::vector<bool> polarity;

    static Gate h() { return {GateKind::H, 0.0, {}}; }
    static Gate x() { return {GateKind::X, 0.0, {}}; }
    static Gate z() { return {GateKind::Z, 0.0, {}}; }
    static Gate rx(double t) { return {GateKind::RX, t, {}}; }
    static Gate ry(double t) { return {GateKind::RY, t, {}}; }
    static Gate cx() { return {GateKind::CX, 0.0, {true}}; }
    static Gate cz() { return {GateKind::CZ, 0.0, {true}}; }
    static Gate mcx(std::vector<bool> pol) { return {GateKind::MCX, 0.0, std::move(pol)}; }
    static Gate mcz(std::vector<bool> pol) { return {GateKind::MCZ, 0.0, std::move(pol)}; }
    static Gate measure() { return {GateKind::Measure, 0.0, {}}; }

    std::size_t num_controls() const {
        switch (kind) {
        case GateKind::CX:
        case GateKind::CZ: return 1;
        case GateKind::MCX:
        case GateKind::MCZ: return polarity.size();
        default: return 0;
        }
    }
    std::size_t arity() const { return num_controls() + 1; }

    Gate inverse() const {
        Gate g = *this;
        if (kind == GateKind::RX || kind == GateKind::RY) g.theta = -theta;
        return g;
    }
};

/// 2x2 action on the target qubit (identity for the measurement marker).
inline Mat2 target_matrix(const Gate& g) {
    const double r = 1.0 / std::sqrt(2.0);
    const double c = std::cos(g.theta / 2), s = std::sin(g.theta / 2);
    switch (g.kind) {
    case GateKind::H: return {cplx(r), cplx(r), cplx(r), cplx(-r)};
    case GateKind::X:
    case GateKind::CX:
    case GateKind::MCX: return {cplx(0), cplx(1), cplx(1), cplx(0)};
    case GateKind::Z:
    case GateKind::CZ:
    case GateKind::MCZ: return {cplx(1), cplx(0), cplx(0), cplx(-1)};
    case GateKind::RX: return {cplx(c), cplx(0, -s), cplx(0, -s), cplx(c)};
    case GateKind::RY: return {cplx(c), cplx(-s), cplx(s), cplx(c)};
    case GateKind::Measure: return {cplx(1), cplx(0), cplx(0), cplx(1)};
    }
    return {};
}

struct Op {
    Gate gate;
    std::vector<std::size_t> qubits;
};

/// Ordered gate list over `qubit_span` qubits.
class CircuitFragment {
public:
    CircuitFragment() = default;
    explicit CircuitFragment(std::size_t span) : span_(span) {}

    std::size_t qubit_span() const { return span_; }
    const std::vector<Op>& ops() const { return ops_; }
    std::size_t size() const { return ops_.size(); }

    CircuitFragment& add(Gate g, std::vector<std::size_t> qubits) {
        if (qubits.size() != g.arity())
            throw std::invalid_argument(std::string("arity mismatch for ") + to_string(g.kind));
        for (auto q : qubits) span_ = std::max(span_, q + 1);
        ops_.push_back({std::move(g), std::move(qubits)});
        return *this;
    }

    /// Concatenate; the span is the max of both spans.
    CircuitFragment& append(const CircuitFragment& other) {
        span_ = std::max(span_, other.span_);
        ops_.insert(ops_.end(), other.ops_.begin(), other.ops_.end());
        return *this;
    }

    /// Relocate: qubit q becomes map[q].
    CircuitFragment mapped(std::span<const std::size_t> map) const {
        if (map.size() < span_) throw std::invalid_argument("qubit map shorter than fragment span");
        CircuitFragment out;
        for (const auto& op : ops_) {
            std::vector<std::size_t> qs;
            qs.reserve(op.qubits.size());
            for (auto q : op.qubits) qs.push_back(map[q]);
            out.add(op.gate, std::move(qs));
        }
        return out;
    }

    CircuitFragment inverse() const {
        CircuitFragment out(span_);
        for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) out.add(it->gate.inverse(), it->qubits);
        return out;
    }

    std::size_t count(GateKind k) const {
        return static_cast<std::size_t>(
            std::count_if(ops_.begin(), ops_.end(), [k](const Op& o) { return o.gate.kind == k; }));
    }

private:
    std::size_t span_ = 0;
    std::vector<Op> ops_;
};

inline CircuitFragment compose(const CircuitFragment& a, const CircuitFragment& b) {
    CircuitFragment out = a;
    out.append(b);
    return out;
}

struct StateVector {
    std::size_t n_qubits = 0;
    std::vector<cplx> amps;

    std::size_t dim() const { return amps.size(); }
    double norm2() const {
        double s = 0;
        for (const auto& a : amps) s += std::norm(a);
        return s;
    }
};

inline void check_qubit_cap(std::size_t n, std::size_t cap = kDefaultQubitCap) {
    if (n > cap) {
        // 16 bytes per complex amplitude
        double gib = std::ldexp(16.0, static_cast<int>(std::min<std::size_t>(n, 1000))) / (1u << 30);
        throw ResourceError("simulation needs " + std::to_string(n) + " qubits (2^" + std::to_string(n) +
                                " amplitudes, " + std::to_string(gib) + " GiB); cap is " + std::to_string(cap),
                            n);
    }
}

inline StateVector new_state(std::size_t n_qubits, std::size_t cap = kDefaultQubitCap) {
    if (n_qubits < 1) throw std::invalid_argument("state needs at least one qubit");
    check_qubit_cap(n_qubits, cap);
    StateVector s;
    s.n_qubits = n_qubits;
    s.amps.assign(std::size_t{1} << n_qubits, cplx(0));
    s.amps[0] = 1.0;
    return s;
}

namespace detail {

inline std::uint64_t bit_of(std::size_t n, std::size_t q) { return std::uint64_t{1} << (n - 1 - q); }

// Apply m to the target whenever (idx & cmask) == cval. Walks pairs (i0, i0|t)
// with the target bit clear, skipping the target stride in blocks.
inline void controlled_kernel(std::vector<cplx>& a, std::uint64_t tbit, std::uint64_t cmask, std::uint64_t cval,
                              const Mat2& m) {
    const std::uint64_t dim = a.size();
    const bool diag = m[1] == cplx(0) && m[2] == cplx(0);
    for (std::uint64_t base = 0; base < dim; base += 2 * tbit) {
        for (std::uint64_t i0 = base; i0 < base + tbit; ++i0) {
            if ((i0 & cmask) != cval) continue;
            const std::uint64_t i1 = i0 | tbit;
            const cplx x0 = a[i0], x1 = a[i1];
            if (diag) {
                a[i0] = m[0] * x0;
                a[i1] = m[3] * x1;
            } else {
                a[i0] = m[0] * x0 + m[1] * x1;
                a[i1] = m[2] * x0 + m[3] * x1;
            }
        }
    }
}

}  // namespace detail

inline void apply(StateVector& s, const Gate& g, std::span<const std::size_t> qubits) {
    if (qubits.size() != g.arity())
        throw std::invalid_argument(std::string("arity mismatch for ") + to_string(g.kind) + ": expected " +
                                    std::to_string(g.arity()) + " qubits, got " + std::to_string(qubits.size()));
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (qubits[i] >= s.n_qubits) throw std::out_of_range("qubit index out of range");
        for (std::size_t j = 0; j < i; ++j)
            if (qubits[i] == qubits[j]) throw std::invalid_argument("duplicate qubit index");
    }
    if (g.kind == GateKind::Measure) return;  // terminal marker; read-out happens via marginals
    const std::size_t nc = g.num_controls();
    std::uint64_t cmask = 0, cval = 0;
    for (std::size_t i = 0; i < nc; ++i) {
        const auto b = detail::bit_of(s.n_qubits, qubits[i]);
        cmask |= b;
        if (g.polarity[i]) cval |= b;
    }
    detail::controlled_kernel(s.amps, detail::bit_of(s.n_qubits, qubits[nc]), cmask, cval, target_matrix(g));
}

inline void apply(StateVector& s, const Gate& g, std::initializer_list<std::size_t> qubits) {
    apply(s, g, std::span<const std::size_t>(qubits.begin(), qubits.size()));
}

inline void run(StateVector& s, const CircuitFragment& c) {
    if (c.qubit_span() > s.n_qubits) throw std::invalid_argument("fragment spans more qubits than the state");
    for (const auto& op : c.ops()) apply(s, op.gate, op.qubits);
}

inline double marginal_prob_one(const StateVector& s, std::size_t qubit) {
    if (qubit >= s.n_qubits) throw std::out_of_range("qubit index out of range");
    const auto b = detail::bit_of(s.n_qubits, qubit);
    double p = 0;
    for (std::uint64_t i = 0; i < s.amps.size(); ++i)
        if (i & b) p += std::norm(s.amps[i]);
    return p;
}

/// Reduced 2x2 density matrix of one qubit: (rho00, rho11, rho01).
inline std::array<cplx, 3> reduced_density(const StateVector& s, std::size_t qubit) {
    if (qubit >= s.n_qubits) throw std::out_of_range("qubit index out of range");
    const auto b = detail::bit_of(s.n_qubits, qubit);
    double p0 = 0, p1 = 0;
    cplx c = 0;
    for (std::uint64_t i = 0; i < s.amps.size(); ++i) {
        if (i & b) continue;
        const cplx a0 = s.amps[i], a1 = s.amps[i | b];
        p0 += std::norm(a0);
        p1 += std::norm(a1);
        c += a0 * std::conj(a1);
    }
    return {cplx(p0), cplx(p1), c};
}

/// True iff the qubit's reduced state has purity >= 1 - tol.
inline bool is_product_qubit(const StateVector& s, std::size_t qubit, double tol = 1e-9) {
    const auto r = reduced_density(s, qubit);
    const double purity = r[0].real() * r[0].real() + r[1].real() * r[1].real() + 2 * std::norm(r[2]);
    return purity >= 1.0 - tol;
}

}  // namespace qfmix

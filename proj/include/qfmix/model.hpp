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

// Factorized (layer-by-layer) model of a mixed network, its exact gradients,
// and the end-measured circuit it stands for.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfmix/architecture.hpp"
#include "qfmix/encoding.hpp"
#include "qfmix/error.hpp"
#include "qfmix/neurons.hpp"
#include "qfmix/statevec.hpp"

namespace qfmix {

struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double v = 0.0) : rows(r), cols(c), data(r * c, v) {}
    std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
    std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// One post-amplitude stage of the network.
struct Stage {
    NeuronKind kind;  // N or P
    std::size_t in_width, out_width;
    bool shared_theta = false;
};

/// Architecture resolved into the shape the model evaluates.
struct Plan {
    bool amplitude_input = true;
    std::size_t input_dim = 0;
    std::size_t n = 0;  // qubits of the amplitude register
    std::size_t v_blocks = 0;
    bool has_u = false;
    std::size_t u_width = 0;
    std::vector<Stage> stages;
    std::size_t classes = 0;
    bool v_terminal = false;  // outputs are the first `classes` qubit marginals

    std::size_t dim() const { return std::size_t{1} << n; }
};

inline Plan make_plan(const ArchitectureSpec& a) {
    validate_structure(a);
    Plan p;
    p.input_dim = a.input_dim;
    p.classes = a.classes;
    p.amplitude_input = a.amplitude_input();
    p.n = p.amplitude_input ? qubits_for(a.input_dim) : 0;
    std::size_t width = p.amplitude_input ? p.n : a.input_dim;
    for (const auto& l : a.layers) {
        switch (l.kind) {
        case NeuronKind::V: p.v_blocks += l.repeat; break;
        case NeuronKind::U:
            p.has_u = true;
            p.u_width = l.width;
            width = l.width;
            break;
        case NeuronKind::N:
            p.stages.push_back({NeuronKind::N, width, width, l.theta == ThetaMode::Shared});
            break;
        case NeuronKind::P:
            p.stages.push_back({NeuronKind::P, width, l.width, false});
            width = l.width;
            break;
        }
    }
    p.v_terminal = p.amplitude_input && !p.has_u && p.stages.empty();
    return p;
}

/// Trainable parameters. Binary weights live as latent reals; the forward
/// pass uses sign(latent) with sign(0) = +1.
struct ParameterStore {
    std::vector<std::vector<double>> v_thetas;  // per V block, 2n angles
    Matrix uw_latent;                           // U neurons x 2^n
    std::vector<Matrix> pw_latent;              // per P layer: out x in
    std::vector<std::vector<double>> n_thetas;  // per N layer: width or 1

    /// Every parameter block, in a fixed order.
    std::vector<std::span<double>> blocks() {
        std::vector<std::span<double>> b;
        for (auto& v : v_thetas) b.emplace_back(v);
        b.emplace_back(uw_latent.data);
        for (auto& m : pw_latent) b.emplace_back(m.data);
        for (auto& v : n_thetas) b.emplace_back(v);
        return b;
    }
    std::vector<std::span<const double>> blocks() const {
        auto b = const_cast<ParameterStore*>(this)->blocks();
        return {b.begin(), b.end()};
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto s : blocks()) c += s.size();
        return c;
    }
    /// FNV-1a over all parameter bytes; ties traces to the parameters they used.
    std::uint64_t fingerprint() const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto s : blocks())
            for (double d : s) {
                std::uint64_t bits;
                std::memcpy(&bits, &d, sizeof bits);
                for (int i = 0; i < 8; ++i) {
                    h ^= (bits >> (8 * i)) & 0xff;
                    h *= 1099511628211ull;
                }
            }
        return h;
    }
};

/// Zero-valued store with the shape of `p`.
inline ParameterStore zeros_like(const ParameterStore& p) {
    ParameterStore z = p;
    for (auto s : z.blocks()) std::fill(s.begin(), s.end(), 0.0);
    return z;
}

/// V angles uniform in [-pi, pi); latent weights and N angles N(0, 0.1^2).
/// N angles start off zero because theta = 0 is a stationary point of RX.
inline ParameterStore init_params(const Plan& plan, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::normal_distribution<double> latent(0.0, 0.1);
    ParameterStore p;
    for (std::size_t b = 0; b < plan.v_blocks; ++b) {
        std::vector<double> t(2 * plan.n);
        for (auto& x : t) x = angle(rng);
        p.v_thetas.push_back(std::move(t));
    }
    if (plan.has_u) {
        p.uw_latent = Matrix(plan.u_width, plan.dim());
        for (auto& x : p.uw_latent.data) x = latent(rng);
    }
    for (const auto& s : plan.stages) {
        if (s.kind == NeuronKind::P) {
            Matrix m(s.out_width, s.in_width);
            for (auto& x : m.data) x = latent(rng);
            p.pw_latent.push_back(std::move(m));
        } else {
            std::vector<double> t(s.shared_theta ? 1 : s.in_width);
            for (auto& x : t) x = latent(rng);
            p.n_thetas.push_back(std::move(t));
        }
    }
    return p;
}

inline ParameterStore init_params(const ArchitectureSpec& a, std::uint64_t seed) {
    return init_params(make_plan(a), seed);
}

struct ForwardOptions {
    /// Use latent weights as real-valued weights instead of their signs.
    /// Only for checking the straight-through gradients.
    bool relaxed_weights = false;
};

struct ForwardTrace {
    std::vector<std::vector<double>> amps;   // encoded input, then after each V block
    std::vector<std::vector<double>> probs;  // probability stage inputs/outputs
    std::vector<double> output;              // per-class probabilities
    std::uint64_t fingerprint = 0;
    bool relaxed = false;
};

namespace detail {

inline double weight(double latent, bool relaxed) { return relaxed ? latent : (latent >= 0 ? 1.0 : -1.0); }

inline void check_shapes(const Plan& plan, const ParameterStore& p) {
    bool ok = p.v_thetas.size() == plan.v_blocks;
    for (const auto& v : p.v_thetas) ok = ok && v.size() == 2 * plan.n;
    if (plan.has_u) ok = ok && p.uw_latent.rows == plan.u_width && p.uw_latent.cols == plan.dim();
    std::size_t pi = 0, ni = 0;
    for (const auto& s : plan.stages) {
        if (s.kind == NeuronKind::P) {
            ok = ok && pi < p.pw_latent.size() && p.pw_latent[pi].rows == s.out_width &&
                 p.pw_latent[pi].cols == s.in_width;
            ++pi;
        } else {
            ok = ok && ni < p.n_thetas.size() && p.n_thetas[ni].size() == (s.shared_theta ? 1 : s.in_width);
            ++ni;
        }
    }
    ok = ok && pi == p.pw_latent.size() && ni == p.n_thetas.size();
    if (!ok) throw std::invalid_argument("parameter shapes do not match the architecture");
}

}  // namespace detail

inline ForwardTrace forward(const Plan& plan, const ParameterStore& params, std::span<const double> input,
                            ForwardOptions opt = {}) {
    detail::check_shapes(plan, params);
    if (input.size() != plan.input_dim)
        throw std::invalid_argument("input has " + std::to_string(input.size()) + " values, expected " +
                                    std::to_string(plan.input_dim));
    ForwardTrace t;
    t.fingerprint = params.fingerprint();
    t.relaxed = opt.relaxed_weights;
    std::vector<double> p0;
    if (plan.amplitude_input) {
        std::vector<double> a;
        normalize_padded(input, a);
        t.amps.push_back(a);
        for (const auto& th : params.v_thetas) {
            v_block_apply(a, plan.n, th);
            t.amps.push_back(a);
        }
        const auto& y = t.amps.back();
        if (plan.has_u) {
            p0.resize(plan.u_width);
            for (std::size_t j = 0; j < plan.u_width; ++j) {
                const auto w = params.uw_latent.row(j);
                double s = 0;
                for (std::size_t k = 0; k < y.size(); ++k) s += detail::weight(w[k], opt.relaxed_weights) * y[k];
                p0[j] = s * s / static_cast<double>(y.size());
            }
        } else {
            p0 = real_marginals(y, plan.n);
        }
    } else {
        for (double d : input)
            if (!(d >= 0.0 && d <= 1.0)) throw std::invalid_argument("probability input outside [0,1]");
        p0.assign(input.begin(), input.end());
    }
    t.probs.push_back(p0);
    std::size_t pi = 0, ni = 0;
    for (const auto& s : plan.stages) {
        const auto& in = t.probs.back();
        std::vector<double> out(s.out_width);
        if (s.kind == NeuronKind::N) {
            const auto& th = params.n_thetas[ni++];
            for (std::size_t c = 0; c < s.in_width; ++c) out[c] = n_forward(in[c], th[s.shared_theta ? 0 : c]);
        } else {
            const auto& W = params.pw_latent[pi++];
            const double inv = 1.0 / static_cast<double>(std::size_t{1} << selector_qubits(s.in_width));
            for (std::size_t j = 0; j < s.out_width; ++j) {
                double acc = 0;
                for (std::size_t i = 0; i < s.in_width; ++i) {
                    const double w = detail::weight(W(j, i), opt.relaxed_weights);
                    acc += (1 + w) / 2 * in[i] + (1 - w) / 2 * (1 - in[i]);
                }
                out[j] = acc * inv;
            }
        }
        t.probs.push_back(std::move(out));
    }
    t.output = t.probs.back();
    if (plan.v_terminal) t.output.resize(plan.classes);
    return t;
}

inline ForwardTrace forward(const ArchitectureSpec& a, const ParameterStore& params, std::span<const double> input,
                            ForwardOptions opt = {}) {
    return forward(make_plan(a), params, input, opt);
}

struct LossConfig {
    double temperature = 0.1;  // logits = outputs / temperature
};

/// Softmax cross-entropy over output / temperature.
inline double loss(std::span<const double> output, std::size_t label, LossConfig cfg = {}) {
    if (output.size() < 2) throw std::invalid_argument("loss needs at least two classes");
    if (label >= output.size()) throw std::out_of_range("label out of range");
    double mx = -INFINITY;
    for (double o : output) mx = std::max(mx, o / cfg.temperature);
    double z = 0;
    for (double o : output) z += std::exp(o / cfg.temperature - mx);
    return mx + std::log(z) - output[label] / cfg.temperature;
}

inline double loss(const ForwardTrace& t, std::size_t label, LossConfig cfg = {}) { return loss(t.output, label, cfg); }

/// dLoss/dOutput.
inline std::vector<double> loss_grad(std::span<const double> output, std::size_t label, LossConfig cfg = {}) {
    if (label >= output.size()) throw std::out_of_range("label out of range");
    double mx = -INFINITY;
    for (double o : output) mx = std::max(mx, o / cfg.temperature);
    std::vector<double> g(output.size());
    double z = 0;
    for (std::size_t i = 0; i < g.size(); ++i) z += (g[i] = std::exp(output[i] / cfg.temperature - mx));
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = (g[i] / z - (i == label ? 1.0 : 0.0)) / cfg.temperature;
    return g;
}

/// Reverse-mode gradients of the loss for one sample. Gradients of latent
/// weights are straight-through: the derivative with respect to the binary
/// weight, passed to its latent value unchanged.
inline ParameterStore backward(const Plan& plan, const ParameterStore& params, const ForwardTrace& t,
                               std::size_t label, LossConfig cfg = {}) {
    if (t.fingerprint != params.fingerprint())
        throw std::logic_error("stale trace: parameters changed since the forward pass");
    const bool relaxed = t.relaxed;
    ParameterStore g = zeros_like(params);
    std::vector<double> go = loss_grad(t.output, label, cfg);
    std::vector<double> gp;
    if (plan.v_terminal) {
        gp.assign(plan.n, 0.0);
        std::copy(go.begin(), go.end(), gp.begin());
    } else {
        gp = std::move(go);
    }
    std::size_t pi = params.pw_latent.size(), ni = params.n_thetas.size();
    for (std::size_t si = plan.stages.size(); si-- > 0;) {
        const auto& s = plan.stages[si];
        const auto& in = t.probs[si];
        std::vector<double> gin(s.in_width, 0.0);
        if (s.kind == NeuronKind::N) {
            --ni;
            const auto& th = params.n_thetas[ni];
            auto& gth = g.n_thetas[ni];
            for (std::size_t c = 0; c < s.in_width; ++c) {
                const std::size_t k = s.shared_theta ? 0 : c;
                gin[c] = gp[c] * std::cos(th[k]);
                gth[k] += gp[c] * std::sin(th[k]) * (0.5 - in[c]);
            }
        } else {
            --pi;
            const auto& W = params.pw_latent[pi];
            auto& gW = g.pw_latent[pi];
            const double inv = 1.0 / static_cast<double>(std::size_t{1} << selector_qubits(s.in_width));
            for (std::size_t j = 0; j < s.out_width; ++j)
                for (std::size_t i = 0; i < s.in_width; ++i) {
                    gin[i] += gp[j] * detail::weight(W(j, i), relaxed) * inv;
                    gW(j, i) += gp[j] * (in[i] - 0.5) * inv;
                }
        }
        gp = std::move(gin);
    }
    if (!plan.amplitude_input) return g;

    const auto& y = t.amps.back();
    const double N = static_cast<double>(y.size());
    std::vector<double> gy(y.size(), 0.0);
    if (plan.has_u) {
        for (std::size_t j = 0; j < plan.u_width; ++j) {
            const auto w = params.uw_latent.row(j);
            double s = 0;
            for (std::size_t k = 0; k < y.size(); ++k) s += detail::weight(w[k], relaxed) * y[k];
            const double c = gp[j] * 2 * s / N;
            auto gw = g.uw_latent.row(j);
            for (std::size_t k = 0; k < y.size(); ++k) {
                gy[k] += c * detail::weight(w[k], relaxed);
                gw[k] += c * y[k];
            }
        }
    } else {
        for (std::size_t k = 0; k < y.size(); ++k)
            for (std::size_t q = 0; q < plan.n; ++q)
                if (k >> (plan.n - 1 - q) & 1) gy[k] += gp[q] * 2 * y[k];
    }

    // Walk the V blocks backwards, undoing each gate on the state as we go.
    const std::size_t n = plan.n;
    std::vector<double> s, tmp;
    for (std::size_t b = plan.v_blocks; b-- > 0;) {
        s = t.amps[b + 1];
        const auto& th = params.v_thetas[b];
        auto& gth = g.v_thetas[b];
        auto ry_back = [&](std::size_t q, double theta, double& gtheta) {
            detail::ry_real(s, n, q, -theta);  // state before the gate
            tmp = s;
            detail::dry_real(tmp, n, q, theta);
            double acc = 0;
            for (std::size_t k = 0; k < s.size(); ++k) acc += gy[k] * tmp[k];
            gtheta += acc;
            detail::ry_real(gy, n, q, -theta);  // RY(theta)^T
        };
        for (std::size_t q = n; q-- > 0;) ry_back(q, th[n + q], gth[n + q]);
        if (n > 1)
            for (std::size_t i = n; i-- > 0;) {
                detail::cx_real(s, n, i, (i + 1) % n);
                detail::cx_real(gy, n, i, (i + 1) % n);
            }
        for (std::size_t q = n; q-- > 0;) ry_back(q, th[q], gth[q]);
    }
    return g;
}

inline ParameterStore backward(const ArchitectureSpec& a, const ParameterStore& params, const ForwardTrace& t,
                               std::size_t label, LossConfig cfg = {}) {
    return backward(make_plan(a), params, t, label, cfg);
}

// ------------------------------------------------------------ circuit view

struct InferenceCircuit {
    CircuitFragment circuit;
    std::vector<std::size_t> outputs;  // measured qubits, class order
    std::size_t n_qubits = 0;
};

/// The whole network as one circuit measured only at the end. Each U neuron
/// gets its own register holding a fresh copy of the encoded input; each P
/// neuron gets a selector register and an ancilla.
inline InferenceCircuit build_inference_circuit(const Plan& plan, const ParameterStore& params,
                                                std::span<const double> input) {
    detail::check_shapes(plan, params);
    if (input.size() != plan.input_dim) throw std::invalid_argument("input length does not match input_dim");
    InferenceCircuit ic;
    auto& c = ic.circuit;
    std::size_t next = 0;
    std::vector<std::size_t> cur;
    if (plan.amplitude_input) {
        const std::size_t n = plan.n;
        CircuitFragment reg = amplitude_prep_circuit(input);
        for (const auto& th : params.v_thetas) reg.append(build_v_block(n, th));
        if (plan.has_u) {
            for (std::size_t j = 0; j < plan.u_width; ++j) {
                CircuitFragment f = reg;
                f.append(build_u_neuron(n, BinaryWeights::from_latent(params.uw_latent.row(j))));
                std::vector<std::size_t> map(n + 1);
                for (std::size_t q = 0; q <= n; ++q) map[q] = next + q;
                c.append(f.mapped(map));
                cur.push_back(next + n);
                next += n + 1;
            }
        } else {
            c.append(reg);
            for (std::size_t q = 0; q < n; ++q) cur.push_back(q);
            next = n;
        }
    } else {
        for (std::size_t i = 0; i < input.size(); ++i) {
            c.add(Gate::ry(probability_angle(input[i])), {i});
            cur.push_back(i);
        }
        next = input.size();
    }
    std::size_t pi = 0, ni = 0;
    for (const auto& s : plan.stages) {
        if (s.kind == NeuronKind::N) {
            const auto& th = params.n_thetas[ni++];
            for (std::size_t ch = 0; ch < cur.size(); ++ch) {
                const std::size_t one[1] = {cur[ch]};
                c.append(build_n_neuron(th[s.shared_theta ? 0 : ch]).mapped(one));
            }
        } else {
            const auto& W = params.pw_latent[pi++];
            const std::size_t m = s.in_width, k = selector_qubits(m);
            std::vector<std::size_t> outs;
            for (std::size_t j = 0; j < s.out_width; ++j) {
                std::vector<std::size_t> map(cur);
                for (std::size_t q = 0; q <= k; ++q) map.push_back(next + q);
                c.append(build_p_neuron(m, BinaryWeights::from_latent(W.row(j))).mapped(map));
                outs.push_back(next + k);
                next += k + 1;
            }
            cur = std::move(outs);
        }
    }
    if (plan.v_terminal) cur.resize(plan.classes);
    for (auto q : cur) c.add(Gate::measure(), {q});
    ic.outputs = cur;
    ic.n_qubits = std::max(next, c.qubit_span());
    return ic;
}

/// Class probabilities from exact simulation of the end-measured circuit.
inline std::vector<double> circuit_inference(const Plan& plan, const ParameterStore& params,
                                             std::span<const double> input, std::size_t cap = kDefaultQubitCap) {
    const auto ic = build_inference_circuit(plan, params, input);
    check_qubit_cap(ic.n_qubits, cap);
    auto st = new_state(ic.n_qubits, cap);
    run(st, ic.circuit);
    return decode_probabilities(st, ic.outputs);
}

inline std::vector<double> circuit_inference(const ArchitectureSpec& a, const ParameterStore& params,
                                             std::span<const double> input, std::size_t cap = kDefaultQubitCap) {
    return circuit_inference(make_plan(a), params, input, cap);
}

inline std::size_t argmax(std::span<const double> v) {
    return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace qfmix

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

// Declarative network description and its line-oriented text format:
//
//   input_dim=16
//   classes=2
//   layer V width=4 r=2
//   layer U width=4
//   layer N width=4 theta=per-channel
//   layer P width=2

#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qfmix/encoding.hpp"
#include "qfmix/error.hpp"
#include "qfmix/neurons.hpp"

namespace qfmix {

enum class ThetaMode { PerChannel, Shared };
enum class VOutput { Auto, Amplitude, Probability };

struct LayerSpec {
    NeuronKind kind = NeuronKind::V;
    std::size_t width = 1;
    std::size_t repeat = 1;  // V blocks in this layer
    ThetaMode theta = ThetaMode::PerChannel;
    VOutput output = VOutput::Auto;
    std::size_t line = 0;
};

struct ArchitectureSpec {
    std::size_t input_dim = 0;
    std::size_t classes = 0;
    std::vector<LayerSpec> layers;

    std::size_t r1() const {
        std::size_t r = 0;
        for (const auto& l : layers)
            if (l.kind == NeuronKind::V) r += l.repeat;
        return r;
    }
    std::size_t r2() const {
        for (const auto& l : layers)
            if (l.kind == NeuronKind::U) return 1;
        return 0;
    }
    std::size_t r3() const {
        std::size_t r = 0;
        for (const auto& l : layers)
            if (l.kind == NeuronKind::P) ++r;
        return r;
    }
    bool amplitude_input() const { return !layers.empty() && traits(layers.front().kind).input == EncodingKind::Amplitude; }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline std::size_t parse_count(const std::string& v, const std::string& key, std::size_t line) {
    std::size_t pos = 0;
    unsigned long long x = 0;
    try {
        x = std::stoull(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != v.size() || v[0] == '-')
        throw ArchitectureError("expected a non-negative integer for '" + key + "', got '" + v + "'", line);
    return static_cast<std::size_t>(x);
}

}  // namespace detail

inline ArchitectureSpec parse_architecture(std::istream& in) {
    ArchitectureSpec a;
    bool have_dim = false, have_classes = false;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
        const std::string s = detail::trim(raw);
        if (s.empty()) continue;
        std::istringstream ls(s);
        std::string head;
        ls >> head;
        if (head == "layer") {
            std::string kind;
            if (!(ls >> kind)) throw ArchitectureError("layer line needs a kind (V, U, P or N)", line);
            LayerSpec l;
            l.line = line;
            if (kind == "V") l.kind = NeuronKind::V;
            else if (kind == "U") l.kind = NeuronKind::U;
            else if (kind == "P") l.kind = NeuronKind::P;
            else if (kind == "N") l.kind = NeuronKind::N;
            else throw ArchitectureError("unknown layer kind '" + kind + "'", line);
            bool have_width = false;
            std::string kv;
            while (ls >> kv) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) throw ArchitectureError("expected key=value, got '" + kv + "'", line);
                const std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
                if (k == "width") {
                    l.width = detail::parse_count(v, k, line);
                    have_width = true;
                } else if (k == "r") {
                    if (l.kind != NeuronKind::V) throw ArchitectureError("'r' only applies to V layers", line);
                    l.repeat = detail::parse_count(v, k, line);
                } else if (k == "theta") {
                    if (l.kind != NeuronKind::N) throw ArchitectureError("'theta' only applies to N layers", line);
                    if (v == "shared") l.theta = ThetaMode::Shared;
                    else if (v == "per-channel") l.theta = ThetaMode::PerChannel;
                    else throw ArchitectureError("theta must be shared or per-channel", line);
                } else if (k == "output") {
                    if (l.kind != NeuronKind::V) throw ArchitectureError("'output' only applies to V layers", line);
                    if (v == "auto") l.output = VOutput::Auto;
                    else if (v == "amplitude") l.output = VOutput::Amplitude;
                    else if (v == "probability") l.output = VOutput::Probability;
                    else throw ArchitectureError("output must be auto, amplitude or probability", line);
                } else {
                    throw ArchitectureError("unknown layer key '" + k + "'", line);
                }
            }
            if (!have_width) throw ArchitectureError("layer needs width=<n>", line);
            if (l.width == 0 || l.repeat == 0) throw ArchitectureError("width and r must be positive", line);
            a.layers.push_back(l);
        } else {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw ArchitectureError("expected 'layer ...' or key=value", line);
            const std::string k = detail::trim(s.substr(0, eq)), v = detail::trim(s.substr(eq + 1));
            if (k == "input_dim") {
                a.input_dim = detail::parse_count(v, k, line);
                have_dim = true;
            } else if (k == "classes") {
                a.classes = detail::parse_count(v, k, line);
                have_classes = true;
            } else {
                throw ArchitectureError("unknown header key '" + k + "'", line);
            }
        }
    }
    if (!have_dim) throw ArchitectureError("missing input_dim");
    if (!have_classes) throw ArchitectureError("missing classes");
    if (a.input_dim == 0) throw ArchitectureError("input_dim must be positive");
    if (a.classes < 1) throw ArchitectureError("classes must be at least 1");
    if (a.layers.empty()) throw ArchitectureError("architecture has no layers");
    return a;
}

inline ArchitectureSpec parse_architecture(const std::string& text) {
    std::istringstream in(text);
    return parse_architecture(in);
}

inline ArchitectureSpec load_architecture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open architecture file '" + path + "'");
    return parse_architecture(in);
}

inline std::string to_text(const ArchitectureSpec& a) {
    std::ostringstream o;
    o << "input_dim=" << a.input_dim << "\nclasses=" << a.classes << "\n";
    for (const auto& l : a.layers) {
        o << "layer " << to_string(l.kind) << " width=" << l.width;
        if (l.kind == NeuronKind::V && l.repeat != 1) o << " r=" << l.repeat;
        if (l.kind == NeuronKind::N) o << " theta=" << (l.theta == ThetaMode::Shared ? "shared" : "per-channel");
        if (l.kind == NeuronKind::V && l.output != VOutput::Auto)
            o << " output=" << (l.output == VOutput::Amplitude ? "amplitude" : "probability");
        o << "\n";
    }
    return o.str();
}

/// Short label such as "V2+U+N+P".
inline std::string short_name(const ArchitectureSpec& a) {
    std::string s;
    for (const auto& l : a.layers) {
        if (!s.empty()) s += "+";
        s += to_string(l.kind);
        if (l.kind == NeuronKind::V && l.repeat > 1) s += std::to_string(l.repeat);
    }
    return s;
}

/// Width rules and the layer grammar the trainable model supports:
///   amplitude input:   V+ [U] ([N] P)* [N]
///   probability input: ([N] P)* [N]   (starting with N or P)
/// N never directly follows N, the last layer has `classes` outputs (a
/// V-terminated network reads its first `classes` qubits).
inline void validate_structure(const ArchitectureSpec& a) {
    if (a.layers.empty()) throw ArchitectureError("architecture has no layers");
    if (a.classes < 1) throw ArchitectureError("classes must be at least 1");
    const auto& L = a.layers;
    std::size_t i = 0;
    std::size_t width = a.input_dim;
    if (L[0].kind == NeuronKind::V) {
        const std::size_t n = qubits_for(a.input_dim);
        while (i < L.size() && L[i].kind == NeuronKind::V) {
            if (L[i].width != n)
                throw ArchitectureError("V layer width must be log2(input_dim) = " + std::to_string(n), L[i].line);
            ++i;
        }
        width = n;
        if (i < L.size() && L[i].kind == NeuronKind::U) {
            width = L[i].width;
            ++i;
        }
    } else if (L[0].kind == NeuronKind::U) {
        width = L[0].width;
        i = 1;
    }
    bool prev_n = false;
    for (; i < L.size(); ++i) {
        const auto& l = L[i];
        switch (l.kind) {
        case NeuronKind::V:
            throw ArchitectureError("V layers must come first", l.line);
        case NeuronKind::U:
            throw ArchitectureError("a U layer may only follow the V stage (or open the network)", l.line);
        case NeuronKind::N:
            if (prev_n) throw ArchitectureError("an N layer cannot directly follow another N layer", l.line);
            if (l.width != width)
                throw ArchitectureError("N layer width must equal the previous width " + std::to_string(width),
                                        l.line);
            prev_n = true;
            break;
        case NeuronKind::P:
            width = l.width;
            prev_n = false;
            break;
        }
    }
    if (L.back().kind == NeuronKind::V) {
        if (a.classes > width)
            throw ArchitectureError("a V-only network reads one qubit per class; classes must be <= " +
                                    std::to_string(width));
    } else if (width != a.classes) {
        throw ArchitectureError("last layer width must equal classes (" + std::to_string(a.classes) + ")",
                                L.back().line);
    }
}

/// N-layer options of the QF-MixNN template.
enum class NLayers { None, PerChannel, Shared };

/// V x r1, then (if r2) a U layer, then r3 x ([N] P). Hidden layers use `hidden` neurons.
inline ArchitectureSpec make_template(std::size_t input_dim, std::size_t classes, std::size_t r1, std::size_t r2,
                                      std::size_t r3, std::size_t hidden, NLayers nl = NLayers::PerChannel) {
    if (r1 < 1) throw ArchitectureError("template needs at least one V block");
    if (r2 > 1) throw ArchitectureError("r2 must be 0 or 1");
    ArchitectureSpec a;
    a.input_dim = input_dim;
    a.classes = classes;
    const std::size_t n = qubits_for(input_dim);
    a.layers.push_back({NeuronKind::V, n, r1, ThetaMode::PerChannel, VOutput::Auto, 0});
    std::size_t width = n;
    if (r2) {
        width = r3 ? hidden : classes;
        a.layers.push_back({NeuronKind::U, width, 1, ThetaMode::PerChannel, VOutput::Auto, 0});
    }
    for (std::size_t j = 0; j < r3; ++j) {
        if (nl != NLayers::None)
            a.layers.push_back({NeuronKind::N, width, 1,
                                nl == NLayers::Shared ? ThetaMode::Shared : ThetaMode::PerChannel, VOutput::Auto, 0});
        width = j + 1 == r3 ? classes : hidden;
        a.layers.push_back({NeuronKind::P, width, 1, ThetaMode::PerChannel, VOutput::Auto, 0});
    }
    return a;
}

/// Qubits used by the single end-measured inference circuit.
inline std::size_t required_qubits(const ArchitectureSpec& a) {
    std::size_t total = 0, width = a.input_dim;
    bool v_stage = false;
    const std::size_t n = qubits_for(a.input_dim);
    for (const auto& l : a.layers) {
        switch (l.kind) {
        case NeuronKind::V:
            if (!v_stage) total += n;
            v_stage = true;
            width = n;
            break;
        case NeuronKind::U:
            // each U neuron gets its own copy of the register plus an ancilla
            total = (v_stage ? total - n : total) + l.width * (n + 1);
            width = l.width;
            break;
        case NeuronKind::N:
            if (total == 0) total = width;  // probability-encoded input
            break;
        case NeuronKind::P:
            if (total == 0) total = width;
            total += l.width * (selector_qubits(width) + 1);
            width = l.width;
            break;
        }
    }
    return total;
}

}  // namespace qfmix

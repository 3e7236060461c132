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

// Junction rule engine. A junction is classified by the producer's output
// encoding, whether the producer's outputs are entangled, and the consumer's
// input encoding:
//
//   path  entangled  out -> in   rule
//   1-4   no         any         feasible                           (P1)
//   5     yes        A   -> A    feasible                           (P2)
//   6     yes        A   -> P    infeasible                         (P3)
//   7     yes        P   -> A    feasible iff qubits are reused     (P4)
//   8     yes        P   -> P    feasible iff the consumer only uses
//                                the qubits as controls or via RX    (P5)

#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qfmix/architecture.hpp"
#include "qfmix/encoding.hpp"
#include "qfmix/neurons.hpp"

namespace qfmix {

inline const char* to_string(ConsumerOp op) {
    switch (op) {
    case ConsumerOp::ControlOnlyNoPhaseKickback: return "control-only";
    case ConsumerOp::RXOnly: return "rx-only";
    case ConsumerOp::Other: return "other";
    }
    return "?";
}

struct JunctionProfile {
    EncodingKind out_encoding = EncodingKind::Amplitude;
    bool out_entangled = false;
    bool reuses_input_qubits = false;
    EncodingKind in_encoding = EncodingKind::Amplitude;
    std::set<ConsumerOp> consumer_ops{ConsumerOp::Other};
    bool consumer_requires_independent_inputs = false;
};

enum class Feasibility { Feasible, ConditionallyFeasible, Infeasible };

inline const char* to_string(Feasibility f) {
    switch (f) {
    case Feasibility::Feasible: return "feasible";
    case Feasibility::ConditionallyFeasible: return "conditionally-feasible";
    case Feasibility::Infeasible: return "infeasible";
    }
    return "?";
}

struct ConnectionVerdict {
    int path_id = 0;
    Feasibility status = Feasibility::Feasible;
    int principle = 0;
    std::vector<std::string> conditions;  // set for ConditionallyFeasible
    std::string reason;
};

enum class PathColor { Green, Orange, Red };

inline const char* to_string(PathColor c) {
    switch (c) {
    case PathColor::Green: return "green";
    case PathColor::Orange: return "orange";
    case PathColor::Red: return "red";
    }
    return "?";
}

/// Static color of a path in the junction diagram: orange marks paths whose
/// feasibility carries a condition.
inline PathColor path_color(int path) {
    if (path == 6) return PathColor::Red;
    if (path == 7 || path == 8) return PathColor::Orange;
    return PathColor::Green;
}

inline int classify_path(const JunctionProfile& p) {
    const bool out_a = p.out_encoding == EncodingKind::Amplitude;
    const bool in_a = p.in_encoding == EncodingKind::Amplitude;
    if (!p.out_entangled) return out_a ? (in_a ? 1 : 2) : (in_a ? 3 : 4);
    return out_a ? (in_a ? 5 : 6) : (in_a ? 7 : 8);
}

inline int principle_for_path(int path) { return path <= 4 ? 1 : path - 3; }

inline ConnectionVerdict check_connection(const JunctionProfile& p) {
    ConnectionVerdict v;
    v.path_id = classify_path(p);
    v.principle = principle_for_path(v.path_id);
    switch (v.path_id) {
    case 1: case 2: case 3: case 4:
        v.reason = "outputs are not entangled";
        break;
    case 5:
        v.reason = "entangled amplitude output consumed as amplitudes";
        break;
    case 6:
        if (p.consumer_requires_independent_inputs) {
            v.status = Feasibility::Infeasible;
            v.reason = "entangled amplitude output cannot be read as independent probabilities";
        } else {
            v.status = Feasibility::ConditionallyFeasible;
            v.conditions.push_back("consumer tolerates correlated probability inputs");
            v.reason = "entangled amplitude output read as probabilities";
        }
        break;
    case 7:
        if (p.reuses_input_qubits) {
            v.reason = "producer outputs on its own input qubits, which still carry the amplitudes";
        } else {
            v.status = Feasibility::Infeasible;
            v.reason = "entangled probability output on fresh qubits cannot serve as amplitude input";
        }
        break;
    case 8: {
        bool ok = !p.consumer_ops.empty();
        for (auto op : p.consumer_ops)
            if (op == ConsumerOp::Other) ok = false;
        if (ok) {
            v.reason = "consumer uses the qubits only as controls without phase kickback or via RX";
        } else {
            v.status = Feasibility::Infeasible;
            v.reason = "consumer applies operations other than control-only or RX to entangled qubits";
        }
        break;
    }
    default: break;
    }
    return v;
}

struct JunctionReport {
    std::size_t from = 0;  // 0 = data encoding, i = layer i-1 otherwise
    std::size_t to = 0;    // layer index
    std::string from_name, to_name;
    JunctionProfile profile;
    ConnectionVerdict verdict;
    bool goal2_flag = false;  // producer output differs from consumer's canonical input
};

struct ArchitectureReport {
    std::vector<JunctionReport> junctions;
    bool pass = true;
    std::size_t mid_circuit_measurements = 0;
    std::vector<std::string> goal2_flags;
};

inline JunctionProfile consumer_side(NeuronKind k, JunctionProfile p) {
    const auto t = traits(k);
    p.in_encoding = t.input;
    p.consumer_ops = {t.ops};
    p.consumer_requires_independent_inputs = t.requires_independent_inputs;
    return p;
}

inline ArchitectureReport validate_architecture(const ArchitectureSpec& a) {
    if (a.layers.empty()) throw ArchitectureError("architecture has no layers");
    if (a.input_dim == 0) throw ArchitectureError("input_dim must be positive");
    ArchitectureReport r;
    const auto& L = a.layers;

    // Data encoding into the first layer: a fresh register, never entangled.
    {
        JunctionProfile p;
        p.out_encoding = traits(L[0].kind).input;
        p.out_entangled = false;
        p.reuses_input_qubits = false;
        JunctionReport j{0, 0, "input", to_string(L[0].kind), consumer_side(L[0].kind, p), {}, false};
        j.verdict = check_connection(j.profile);
        r.junctions.push_back(j);
    }
    bool entangled = false;  // entanglement of the current output qubits
    for (std::size_t i = 0; i < L.size(); ++i) {
        const auto& l = L[i];
        JunctionProfile p;
        switch (l.kind) {
        case NeuronKind::V:
            entangled = l.width > 1 || entangled;
            p.reuses_input_qubits = true;
            if (l.output == VOutput::Amplitude) p.out_encoding = EncodingKind::Amplitude;
            else if (l.output == VOutput::Probability) p.out_encoding = EncodingKind::Probability;
            else p.out_encoding = i + 1 < L.size() ? traits(L[i + 1].kind).input : EncodingKind::Probability;
            break;
        case NeuronKind::U:
        case NeuronKind::P:
            entangled = true;
            p.reuses_input_qubits = false;
            p.out_encoding = EncodingKind::Probability;
            break;
        case NeuronKind::N:
            p.reuses_input_qubits = true;
            p.out_encoding = EncodingKind::Probability;
            break;
        }
        p.out_entangled = entangled;
        if (i + 1 == L.size()) break;
        const auto& next = L[i + 1];
        JunctionReport j{i + 1, i + 1, to_string(l.kind), to_string(next.kind), consumer_side(next.kind, p), {},
                         false};
        j.verdict = check_connection(j.profile);
        if (p.out_encoding != traits(next.kind).input) {
            j.goal2_flag = true;
            r.goal2_flags.push_back("layer " + std::to_string(i + 2) + " (" + to_string(next.kind) + ") expects " +
                                    (traits(next.kind).input == EncodingKind::Amplitude ? "amplitude" : "probability") +
                                    " input but layer " + std::to_string(i + 1) + " (" + to_string(l.kind) +
                                    ") outputs " +
                                    (p.out_encoding == EncodingKind::Amplitude ? "amplitude" : "probability"));
        }
        r.junctions.push_back(j);
    }
    for (const auto& j : r.junctions)
        if (j.verdict.status != Feasibility::Feasible) r.pass = false;
    r.mid_circuit_measurements = 0;  // every gadget defers read-out to the end
    return r;
}

inline void write_report(std::ostream& o, const ArchitectureReport& r) {
    for (const auto& j : r.junctions) {
        o << "junction " << j.from_name << "(" << j.from << ") -> " << j.to_name << "(" << j.to + 1 << "): path "
          << j.verdict.path_id << " [" << to_string(path_color(j.verdict.path_id)) << "], principle "
          << j.verdict.principle << ", " << to_string(j.verdict.status);
        if (!j.verdict.reason.empty()) o << " - " << j.verdict.reason;
        for (const auto& c : j.verdict.conditions) o << " (if " << c << ")";
        o << "\n";
    }
    for (const auto& f : r.goal2_flags) o << "encoding mismatch: " << f << "\n";
    o << "mid-circuit measurements: " << r.mid_circuit_measurements << "\n";
    o << "overall: " << (r.pass ? "FEASIBLE" : "INFEASIBLE") << "\n";
}

inline nlohmann::json report_json(const ArchitectureReport& r) {
    nlohmann::json js;
    js["format"] = "qfmix-check";
    js["version"] = 1;
    js["pass"] = r.pass;
    js["mid_circuit_measurements"] = r.mid_circuit_measurements;
    js["encoding_mismatches"] = r.goal2_flags;
    auto& arr = js["junctions"] = nlohmann::json::array();
    for (const auto& j : r.junctions) {
        std::vector<std::string> ops;
        for (auto op : j.profile.consumer_ops) ops.emplace_back(to_string(op));
        arr.push_back({{"from", j.from_name},
                       {"from_layer", j.from},
                       {"to", j.to_name},
                       {"to_layer", j.to + 1},
                       {"path", j.verdict.path_id},
                       {"color", to_string(path_color(j.verdict.path_id))},
                       {"principle", j.verdict.principle},
                       {"status", to_string(j.verdict.status)},
                       {"reason", j.verdict.reason},
                       {"conditions", j.verdict.conditions},
                       {"out_encoding", to_string(j.profile.out_encoding)},
                       {"out_entangled", j.profile.out_entangled},
                       {"reuses_input_qubits", j.profile.reuses_input_qubits},
                       {"in_encoding", to_string(j.profile.in_encoding)},
                       {"consumer_ops", ops}});
    }
    return js;
}

}  // namespace qfmix

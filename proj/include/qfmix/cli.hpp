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

// Command implementations behind the qfmix tool. Each returns the process
// exit code: 0 success / feasible, 1 infeasible or refused, 2 usage or parse
// error. Flag parsing lives in tools/qfmix.cpp.

#pragma once

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qfmix/architecture.hpp"
#include "qfmix/checkpoint.hpp"
#include "qfmix/data.hpp"
#include "qfmix/mixer.hpp"
#include "qfmix/model.hpp"
#include "qfmix/train.hpp"

#ifndef QFMIX_VERSION
#define QFMIX_VERSION "dev"
#endif

namespace qfmix::cli {

inline constexpr int kOk = 0, kRefused = 1, kUsage = 2;
inline constexpr int kCsvSchema = 1;

struct RunConfig {
    std::string command;
    std::string arch;                 // file path or template name (vqc, v+u, v+p, v+u+p)
    std::string dataset = "mnist";    // mnist | xor
    std::string classes = "2";        // class count (default digits) or digit list "0,3,6,9"
    std::size_t resolution = 4;       // 4, 8 or 16
    std::size_t epochs = 30;
    double lr = 0.05;
    std::size_t batch = 32;
    std::uint64_t seed = 0;
    std::string out = "qfmix-out";
    std::size_t samples = 100;
    std::size_t r_min = 1, r_max = 5;
    std::string checkpoint;
    bool demo_path6 = false;
    // template knobs
    std::size_t r1 = 2;
    std::size_t hidden = 0;  // 0 = default for the class count
    std::string n_layers = "per-channel";  // none | per-channel | shared
    double temperature = 0.1;
    std::size_t limit = 0;  // cap on training samples, 0 = all

    nlohmann::json to_json() const {
        return {{"command", command},     {"arch", arch},         {"dataset", dataset},   {"classes", classes},
                {"resolution", resolution}, {"epochs", epochs},   {"lr", lr},             {"batch", batch},
                {"seed", seed},           {"out", out},           {"samples", samples},   {"r_min", r_min},
                {"r_max", r_max},         {"checkpoint", checkpoint}, {"demo_path6", demo_path6}, {"r1", r1},
                {"hidden", hidden},       {"n_layers", n_layers}, {"temperature", temperature}, {"limit", limit}};
    }
};

/// Usage-level failure (exit code 2).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

inline std::vector<int> parse_classes(const std::string& spec) {
    if (spec.find(',') == std::string::npos) {
        std::size_t k = 0;
        try {
            k = std::stoul(spec);
        } catch (const std::exception&) {
            throw UsageError("--classes expects a count or a comma-separated digit list, got '" + spec + "'");
        }
        try {
            return default_subset(k);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    std::vector<int> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw UsageError("bad class '" + tok + "' in --classes");
        }
    }
    return out;
}

inline NLayers parse_nlayers(const std::string& s) {
    if (s == "none") return NLayers::None;
    if (s == "per-channel") return NLayers::PerChannel;
    if (s == "shared") return NLayers::Shared;
    throw UsageError("--n-layers must be none, per-channel or shared");
}

inline bool is_template(const std::string& name) {
    const auto n = lower(name);
    return n == "vqc" || n == "v" || n == "v+u" || n == "v+p" || n == "v+u+p";
}

/// Template architecture for a dataset shape; `r1` overrides cfg.r1 when nonzero.
inline ArchitectureSpec template_arch(const std::string& name, std::size_t input_dim, std::size_t classes,
                                      const RunConfig& cfg, std::size_t r1 = 0) {
    const auto n = lower(name);
    const std::size_t hidden = cfg.hidden ? cfg.hidden : default_hidden(classes);
    const std::size_t r = r1 ? r1 : cfg.r1;
    const NLayers nl = parse_nlayers(cfg.n_layers);
    if (n == "vqc" || n == "v") return make_template(input_dim, classes, r, 0, 0, hidden, nl);
    if (n == "v+u") return make_template(input_dim, classes, r, 1, 0, hidden, nl);
    if (n == "v+p") return make_template(input_dim, classes, r, 0, 1, hidden, nl);
    if (n == "v+u+p") return make_template(input_dim, classes, r, 1, 1, hidden, nl);
    throw UsageError("unknown architecture template '" + name + "'");
}

struct LoadedData {
    Samples train, test;
    std::size_t input_dim = 0;
    std::size_t classes = 0;
    std::string name;  // e.g. mnist{3,6}
    std::size_t resolution = 0;
};

inline LoadedData load_data(const RunConfig& cfg, EncodingKind enc) {
    LoadedData d;
    const auto ds = lower(cfg.dataset);
    if (ds == "xor") {
        d.train = make_xor_dataset(2000, cfg.seed * 2 + 1);
        d.test = make_xor_dataset(1000, cfg.seed * 2 + 2);
        d.input_dim = 16;
        d.classes = 2;
        d.name = "xor";
        d.resolution = 0;
    } else if (ds == "mnist") {
        if (cfg.resolution != 4 && cfg.resolution != 8 && cfg.resolution != 16)
            throw UsageError("--resolution must be 4, 8 or 16");
        const auto classes = parse_classes(cfg.classes);
        auto prep = [&](const std::string& split) {
            auto raw = load_mnist(split);
            auto sub = classes.size() == 10 ? raw : select_subset(raw, classes);
            sub.num_classes = classes.size();
            return prepare(downsample(sub, cfg.resolution), enc).samples;
        };
        d.train = prep("train");
        d.test = prep("test");
        d.input_dim = cfg.resolution * cfg.resolution;
        d.classes = classes.size();
        std::string s = "mnist{";
        for (std::size_t i = 0; i < classes.size(); ++i) s += (i ? "," : "") + std::to_string(classes[i]);
        d.name = s + "}";
        d.resolution = cfg.resolution;
    } else {
        throw UsageError("--dataset must be mnist or xor");
    }
    if (cfg.limit && d.train.size() > cfg.limit) {
        const auto idx = shuffled_indices(d.train.size(), cfg.seed ^ 0x5eedULL);
        Samples s;
        s.num_classes = d.train.num_classes;
        for (std::size_t i = 0; i < cfg.limit; ++i) {
            s.x.push_back(d.train.x[idx[i]]);
            s.y.push_back(d.train.y[idx[i]]);
        }
        d.train = std::move(s);
    }
    return d;
}

/// Architecture from a file, or a template sized for the dataset.
inline ArchitectureSpec resolve_arch(const RunConfig& cfg, std::size_t input_dim, std::size_t classes) {
    if (cfg.arch.empty()) throw UsageError("--arch is required");
    if (is_template(cfg.arch) && !std::filesystem::exists(cfg.arch))
        return template_arch(cfg.arch, input_dim, classes, cfg);
    return load_architecture(cfg.arch);
}

/// Encoding the first layer expects; templates are always amplitude-first.
inline EncodingKind first_encoding(const RunConfig& cfg) {
    if (is_template(cfg.arch) && !std::filesystem::exists(cfg.arch)) return EncodingKind::Amplitude;
    return load_architecture(cfg.arch).amplitude_input() ? EncodingKind::Amplitude : EncodingKind::Probability;
}

inline std::filesystem::path ensure_out(const RunConfig& cfg) {
    std::filesystem::path p(cfg.out);
    std::filesystem::create_directories(p);
    return p;
}

inline void write_manifest(const RunConfig& cfg, const nlohmann::json& extra = nlohmann::json::object()) {
    const auto dir = ensure_out(cfg);
    nlohmann::json m{{"format", "qfmix-manifest"},
                     {"version", 1},
                     {"qfmix_version", QFMIX_VERSION},
                     {"seed", cfg.seed},
                     {"config", cfg.to_json()},
                     {"data_dir", data_dir()},
                     {"csv_schema", kCsvSchema}};
    for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = it.value();
    std::ofstream(dir / "manifest.json") << m.dump(2) << "\n";
}

inline std::string fmt(double v, int prec = 6) {
    std::ostringstream o;
    o << std::setprecision(prec) << std::fixed << v;
    return o.str();
}

// ------------------------------------------------------------------ check

inline int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    ArchitectureSpec a;
    try {
        if (cfg.arch.empty()) throw UsageError("--arch is required");
        a = load_architecture(cfg.arch);
    } catch (const ArchitectureError& e) {
        err << "error: " << cfg.arch << ": " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    const auto r = validate_architecture(a);
    out << "architecture: " << short_name(a) << " (input_dim=" << a.input_dim << ", classes=" << a.classes << ")\n";
    write_report(out, r);
    try {
        validate_structure(a);
    } catch (const ArchitectureError& e) {
        out << "note: not trainable by the model: " << e.what() << "\n";
    }
    const auto dir = ensure_out(cfg);
    std::ofstream(dir / "check.json") << report_json(r).dump(2) << "\n";
    write_manifest(cfg, {{"outputs", {"check.json"}}});
    return r.pass ? kOk : kRefused;
}

// ------------------------------------------------------------------ train / eval

inline void write_results_header(std::ostream& o) {
    o << "schema_version,architecture,dataset,classes,resolution,epochs,seed,train_accuracy,test_accuracy,test_loss\n";
}

inline void write_results_row(std::ostream& o, const std::string& arch, const LoadedData& d, std::size_t epochs,
                              std::uint64_t seed, double train_acc, double test_acc, double test_loss) {
    o << kCsvSchema << "," << arch << ",\"" << d.name << "\"," << d.classes << "," << d.resolution << "," << epochs
      << "," << seed << "," << fmt(train_acc) << "," << fmt(test_acc) << "," << fmt(test_loss) << "\n";
}

/// Refuse architectures the rule engine rejects; returns an exit code or -1 to continue.
inline int gate_architecture(const ArchitectureSpec& a, std::ostream& err) {
    const auto r = validate_architecture(a);
    if (!r.pass) {
        err << "refusing infeasible architecture " << short_name(a) << ":\n";
        write_report(err, r);
        return kRefused;
    }
    validate_structure(a);
    return -1;
}

struct TrainOutcome {
    ArchitectureSpec arch;
    ParameterStore params;
    std::vector<EpochMetrics> history;
    double seconds = 0;
};

inline TrainOutcome run_training(const RunConfig& cfg, const ArchitectureSpec& a, const LoadedData& d,
                                 std::ostream& log) {
    TrainOutcome o;
    o.arch = a;
    const auto plan = make_plan(a);
    o.params = init_params(plan, cfg.seed);
    TrainConfig tc;
    tc.epochs = cfg.epochs;
    tc.batch_size = cfg.batch;
    tc.lr = cfg.lr;
    tc.seed = cfg.seed;
    tc.loss.temperature = cfg.temperature;
    const auto t0 = std::chrono::steady_clock::now();
    o.history = train(plan, o.params, d.train, &d.test, tc, [&](const EpochMetrics& m) {
        log << "epoch " << m.epoch << ": train_loss " << fmt(m.train_loss, 4) << " train_acc "
            << fmt(m.train_accuracy, 4) << " test_acc " << fmt(m.test_accuracy, 4) << "\n";
    });
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return o;
}

inline int cmd_train(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const auto d = load_data(cfg, first_encoding(cfg));
        const auto a = resolve_arch(cfg, d.input_dim, d.classes);
        if (a.input_dim != d.input_dim || a.classes != d.classes)
            throw UsageError("architecture expects input_dim=" + std::to_string(a.input_dim) + ", classes=" +
                             std::to_string(a.classes) + " but the dataset has " + std::to_string(d.input_dim) +
                             " and " + std::to_string(d.classes));
        if (int rc = gate_architecture(a, err); rc >= 0) return rc;
        const auto dir = ensure_out(cfg);
        write_manifest(cfg, {{"architecture", to_text(a)},
                             {"outputs", {"metrics.csv", "results.csv", "checkpoint.json"}}});
        const auto o = run_training(cfg, a, d, err);
        std::ofstream mc(dir / "metrics.csv");
        mc << "schema_version,epoch,train_loss,train_accuracy,test_loss,test_accuracy\n";
        for (const auto& m : o.history)
            mc << kCsvSchema << "," << m.epoch << "," << fmt(m.train_loss, 8) << "," << fmt(m.train_accuracy, 8) << ","
               << fmt(m.test_loss, 8) << "," << fmt(m.test_accuracy, 8) << "\n";
        const auto& last = o.history.back();
        std::ofstream rc(dir / "results.csv");
        write_results_header(rc);
        write_results_row(rc, short_name(a), d, cfg.epochs, cfg.seed, last.train_accuracy, last.test_accuracy,
                          last.test_loss);
        Checkpoint ck{a, o.params, {{"dataset", d.name}, {"resolution", d.resolution}, {"seed", cfg.seed},
                                    {"epochs", cfg.epochs}, {"temperature", cfg.temperature}}};
        save_checkpoint((dir / "checkpoint.json").string(), ck);
        write_results_header(out);
        write_results_row(out, short_name(a), d, cfg.epochs, cfg.seed, last.train_accuracy, last.test_accuracy,
                          last.test_loss);
        return kOk;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ArchitectureError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kRefused;
    }
}

inline int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.checkpoint.empty()) throw UsageError("--checkpoint is required");
        const auto ck = load_checkpoint(cfg.checkpoint);
        if (int rc = gate_architecture(ck.arch, err); rc >= 0) return rc;
        const auto d = load_data(cfg, ck.arch.amplitude_input() ? EncodingKind::Amplitude : EncodingKind::Probability);
        if (ck.arch.input_dim != d.input_dim || ck.arch.classes != d.classes)
            throw UsageError("checkpoint does not match the dataset shape");
        const auto plan = make_plan(ck.arch);
        LossConfig lc{cfg.temperature};
        const auto r = evaluate(plan, ck.params, d.test, lc);
        const auto dir = ensure_out(cfg);
        write_manifest(cfg, {{"architecture", to_text(ck.arch)}, {"outputs", {"results.csv"}}});
        std::ofstream rc(dir / "results.csv");
        write_results_header(rc);
        write_results_row(rc, short_name(ck.arch), d, ck.meta.value("epochs", std::size_t{0}), cfg.seed, NAN,
                          r.accuracy, r.mean_loss);
        write_results_header(out);
        write_results_row(out, short_name(ck.arch), d, ck.meta.value("epochs", std::size_t{0}), cfg.seed, NAN,
                          r.accuracy, r.mean_loss);
        return kOk;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ArchitectureError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kRefused;
    }
}

// ------------------------------------------------------------------ verify

struct VerifyResult {
    std::vector<double> deviations;  // per sample max |factorized - circuit|
    std::vector<bool> argmax_agree;
    double max_deviation = 0;
    double agreement = 0;
};

/// Random test inputs: non-negative amplitudes or probabilities in [0,1].
inline std::vector<double> random_input(std::size_t dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(dim);
    for (auto& v : x) v = u(rng);
    return x;
}

/// Factorized forward vs. exact circuit on random inputs. N angles are
/// randomised too so the RX gates are exercised.
inline VerifyResult verify_model(const ArchitectureSpec& a, ParameterStore params, std::size_t samples,
                                 std::uint64_t seed, bool randomize_n = true) {
    const auto plan = make_plan(a);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
    if (randomize_n)
        for (auto& v : params.n_thetas)
            for (auto& t : v) t = ang(rng);
    VerifyResult r;
    std::size_t agree = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        const auto x = random_input(a.input_dim, rng);
        const auto f = forward(plan, params, x).output;
        const auto c = circuit_inference(plan, params, x);
        double dev = 0;
        for (std::size_t i = 0; i < f.size(); ++i) dev = std::max(dev, std::abs(f[i] - c[i]));
        const bool ok = argmax(f) == argmax(c);
        agree += ok;
        r.deviations.push_back(dev);
        r.argmax_agree.push_back(ok);
        r.max_deviation = std::max(r.max_deviation, dev);
    }
    r.agreement = samples ? static_cast<double>(agree) / static_cast<double>(samples) : 1.0;
    return r;
}

/// Entangled amplitude output of a two-qubit V block read as probabilities by
/// the interfering P gadget, which assumes independent inputs. Returns the
/// factorized and exact ancilla probabilities.
struct Path6Instance {
    double factorized = 0, exact = 0;
};

inline Path6Instance path6_instance(std::span<const double> x, std::span<const double> theta, const BinaryWeights& w) {
    const auto y = v_forward(x, theta);
    const auto marg = real_marginals(y, 2);
    Path6Instance r;
    r.factorized = interfering_p_forward(marg, w);
    auto st = new_state(3);
    for (std::size_t k = 0; k < 4; ++k) st.amps[k << 1] = y[k];  // ancilla (qubit 2) starts in |0>
    run(st, build_interfering_p_neuron(2, w));
    r.exact = marginal_prob_one(st, 2);
    return r;
}

inline VerifyResult verify_path6(std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
    VerifyResult r;
    std::size_t agree = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        std::vector<double> x = random_input(4, rng), th(4);
        double nn = 0;
        for (double v : x) nn += v * v;
        for (auto& v : x) v /= std::sqrt(nn);
        for (auto& t : th) t = ang(rng);
        const BinaryWeights w({rng() & 1 ? 1 : -1, rng() & 1 ? 1 : -1});
        const auto p = path6_instance(x, th, w);
        const double dev = std::abs(p.factorized - p.exact);
        const bool ok = (p.factorized >= 0.5) == (p.exact >= 0.5);
        agree += ok;
        r.deviations.push_back(dev);
        r.argmax_agree.push_back(ok);
        r.max_deviation = std::max(r.max_deviation, dev);
    }
    r.agreement = samples ? static_cast<double>(agree) / static_cast<double>(samples) : 1.0;
    return r;
}

inline constexpr double kVerifyTolerance = 1e-9;
inline constexpr double kPath6Threshold = 0.01;

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        VerifyResult r;
        std::string label;
        if (cfg.demo_path6) {
            r = verify_path6(cfg.samples, cfg.seed);
            label = "path-6 demo (V output=amplitude -> interfering P)";
        } else {
            ArchitectureSpec a;
            ParameterStore p;
            if (!cfg.checkpoint.empty()) {
                auto ck = load_checkpoint(cfg.checkpoint);
                a = ck.arch;
                p = ck.params;
            } else {
                if (cfg.arch.empty()) throw UsageError("--arch or --checkpoint is required");
                a = load_architecture(cfg.arch);
                p = init_params(a, cfg.seed);
            }
            if (int rc = gate_architecture(a, err); rc >= 0) return rc;
            check_qubit_cap(required_qubits(a));
            r = verify_model(a, p, cfg.samples, cfg.seed ^ 0x9e3779b97f4a7c15ULL);
            label = short_name(a);
        }
        const auto dir = ensure_out(cfg);
        write_manifest(cfg, {{"outputs", {"verify.csv"}}});
        std::ofstream csv(dir / "verify.csv");
        csv << "schema_version,sample,max_abs_deviation,argmax_agree\n";
        for (std::size_t i = 0; i < r.deviations.size(); ++i)
            csv << kCsvSchema << "," << i << "," << std::setprecision(17) << r.deviations[i] << ","
                << (r.argmax_agree[i] ? 1 : 0) << "\n";
        out << "verify " << label << ": samples " << r.deviations.size() << ", max deviation " << std::scientific
            << std::setprecision(3) << r.max_deviation << std::defaultfloat << ", argmax agreement "
            << fmt(100 * r.agreement, 2) << "%\n";
        if (cfg.demo_path6) {
            const bool shown = r.max_deviation > kPath6Threshold;
            out << (shown ? "counterexample reproduced: deviation exceeds " : "no deviation above ")
                << kPath6Threshold << "\n";
            return shown ? kOk : kRefused;
        }
        return r.max_deviation < kVerifyTolerance ? kOk : kRefused;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ArchitectureError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kRefused;
    }
}

// ------------------------------------------------------------------ sweep

inline int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.r_min < 1 || cfg.r_max < cfg.r_min) throw UsageError("need 1 <= --r-min <= --r-max");
        if (!is_template(cfg.arch))
            throw UsageError("sweep needs a template architecture (vqc, v+u, v+p, v+u+p)");
        const auto d = load_data(cfg, EncodingKind::Amplitude);
        const auto dir = ensure_out(cfg);
        write_manifest(cfg, {{"outputs", {"sweep.csv"}}});
        std::ofstream csv(dir / "sweep.csv");
        const char* header = "schema_version,r,architecture,dataset,classes,resolution,epochs,seed,train_accuracy,"
                             "test_accuracy,seconds\n";
        csv << header;
        out << header;
        for (std::size_t r = cfg.r_min; r <= cfg.r_max; ++r) {
            const auto a = template_arch(cfg.arch, d.input_dim, d.classes, cfg, r);
            if (int rc = gate_architecture(a, err); rc >= 0) return rc;
            TrainOutcome o;
            try {
                o = run_training(cfg, a, d, err);
            } catch (const std::exception& e) {
                err << "sweep aborted at r=" << r << ": " << e.what() << " (partial results in "
                    << (dir / "sweep.csv").string() << ")\n";
                return kRefused;
            }
            std::ostringstream row;
            row << kCsvSchema << "," << r << "," << short_name(a) << ",\"" << d.name << "\"," << d.classes << ","
                << d.resolution << "," << cfg.epochs << "," << cfg.seed << "," << fmt(o.history.back().train_accuracy)
                << "," << fmt(o.history.back().test_accuracy) << "," << fmt(o.seconds, 2) << "\n";
            csv << row.str() << std::flush;
            out << row.str() << std::flush;
        }
        return kOk;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ArchitectureError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kRefused;
    }
}

}  // namespace qfmix::cli

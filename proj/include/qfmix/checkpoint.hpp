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

// JSON checkpoint: {"format": "qfmix-checkpoint", "version": 1,
// "architecture": <architecture text>, "params": {...}, "meta": {...}}.

#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "qfmix/architecture.hpp"
#include "qfmix/model.hpp"

namespace qfmix {

inline constexpr int kCheckpointVersion = 1;

namespace detail {

inline nlohmann::json matrix_json(const Matrix& m) {
    return {{"rows", m.rows}, {"cols", m.cols}, {"data", m.data}};
}

inline Matrix matrix_from(const nlohmann::json& j) {
    Matrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    m.data = j.at("data").get<std::vector<double>>();
    if (m.data.size() != m.rows * m.cols) throw std::runtime_error("checkpoint matrix has the wrong size");
    return m;
}

}  // namespace detail

inline nlohmann::json params_json(const ParameterStore& p) {
    nlohmann::json pw = nlohmann::json::array();
    for (const auto& m : p.pw_latent) pw.push_back(detail::matrix_json(m));
    return {{"v_thetas", p.v_thetas},
            {"uw_latent", detail::matrix_json(p.uw_latent)},
            {"pw_latent", pw},
            {"n_thetas", p.n_thetas}};
}

inline ParameterStore params_from(const nlohmann::json& j) {
    ParameterStore p;
    p.v_thetas = j.at("v_thetas").get<std::vector<std::vector<double>>>();
    p.uw_latent = detail::matrix_from(j.at("uw_latent"));
    for (const auto& m : j.at("pw_latent")) p.pw_latent.push_back(detail::matrix_from(m));
    p.n_thetas = j.at("n_thetas").get<std::vector<std::vector<double>>>();
    return p;
}

struct Checkpoint {
    ArchitectureSpec arch;
    ParameterStore params;
    nlohmann::json meta = nlohmann::json::object();
};

inline void save_checkpoint(const std::string& path, const Checkpoint& c) {
    nlohmann::json j{{"format", "qfmix-checkpoint"},
                     {"version", kCheckpointVersion},
                     {"architecture", to_text(c.arch)},
                     {"params", params_json(c.params)},
                     {"meta", c.meta}};
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write checkpoint '" + path + "'");
    out << j.dump(1) << "\n";
}

inline Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open checkpoint '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("checkpoint '" + path + "' is not valid JSON: " + e.what());
    }
    if (j.value("format", "") != "qfmix-checkpoint") throw std::runtime_error("not a qfmix checkpoint: " + path);
    if (j.value("version", 0) != kCheckpointVersion)
        throw std::runtime_error("unsupported checkpoint version " + std::to_string(j.value("version", 0)));
    Checkpoint c;
    c.arch = parse_architecture(j.at("architecture").get<std::string>());
    c.params = params_from(j.at("params"));
    if (j.contains("meta")) c.meta = j["meta"];
    return c;
}

}  // namespace qfmix

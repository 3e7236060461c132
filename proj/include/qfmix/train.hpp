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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qfmix/data.hpp"
#include "qfmix/error.hpp"
#include "qfmix/model.hpp"

namespace qfmix {

struct TrainConfig {
    std::size_t epochs = 30;
    std::size_t batch_size = 32;
    double lr = 0.05;
    double momentum = 0.9;
    std::uint64_t seed = 0;
    LossConfig loss;
};

struct EpochMetrics {
    std::size_t epoch = 0;  // 1-based
    double train_loss = 0;  // running mean over the epoch
    double train_accuracy = 0;
    double test_loss = 0;
    double test_accuracy = 0;
};

struct EvalResult {
    double accuracy = 0;
    double mean_loss = 0;
    std::size_t correct = 0, total = 0;
};

inline EvalResult evaluate(const Plan& plan, const ParameterStore& params, const Samples& data, LossConfig cfg = {}) {
    EvalResult r;
    r.total = data.size();
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto t = forward(plan, params, data.x[i]);
        r.mean_loss += loss(t, data.y[i], cfg);
        if (argmax(t.output) == data.y[i]) ++r.correct;
    }
    if (r.total) {
        r.accuracy = static_cast<double>(r.correct) / static_cast<double>(r.total);
        r.mean_loss /= static_cast<double>(r.total);
    }
    return r;
}

/// Mini-batch SGD with momentum (v <- mu v + g; theta <- theta - lr v) on the
/// batch-mean gradient. Deterministic for a fixed seed.
inline std::vector<EpochMetrics> train(const Plan& plan, ParameterStore& params, const Samples& train_set,
                                       const Samples* test_set, const TrainConfig& cfg,
                                       const std::function<void(const EpochMetrics&)>& on_epoch = {}) {
    if (train_set.size() == 0) throw std::invalid_argument("training set is empty");
    if (cfg.batch_size == 0) throw std::invalid_argument("batch size must be positive");
    std::mt19937_64 rng(cfg.seed);
    std::vector<std::size_t> order(train_set.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    ParameterStore vel = zeros_like(params), acc = zeros_like(params);
    auto pb = params.blocks();
    auto vb = vel.blocks();
    auto ab = acc.blocks();
    std::vector<EpochMetrics> history;
    for (std::size_t e = 1; e <= cfg.epochs; ++e) {
        std::shuffle(order.begin(), order.end(), rng);
        EpochMetrics m;
        m.epoch = e;
        std::size_t correct = 0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const std::size_t end = std::min(order.size(), start + cfg.batch_size);
            for (auto s : ab) std::fill(s.begin(), s.end(), 0.0);
            for (std::size_t b = start; b < end; ++b) {
                const std::size_t i = order[b];
                const auto t = forward(plan, params, train_set.x[i]);
                const double l = loss(t, train_set.y[i], cfg.loss);
                if (!std::isfinite(l))
                    throw DivergenceError("non-finite loss at epoch " + std::to_string(e) + ", sample " +
                                          std::to_string(i) + "; try a smaller learning rate");
                m.train_loss += l;
                if (argmax(t.output) == train_set.y[i]) ++correct;
                const auto g = backward(plan, params, t, train_set.y[i], cfg.loss);
                const auto gb = g.blocks();
                for (std::size_t k = 0; k < ab.size(); ++k)
                    for (std::size_t j = 0; j < ab[k].size(); ++j) ab[k][j] += gb[k][j];
            }
            const double inv = 1.0 / static_cast<double>(end - start);
            for (std::size_t k = 0; k < pb.size(); ++k)
                for (std::size_t j = 0; j < pb[k].size(); ++j) {
                    vb[k][j] = cfg.momentum * vb[k][j] + ab[k][j] * inv;
                    pb[k][j] -= cfg.lr * vb[k][j];
                }
        }
        m.train_loss /= static_cast<double>(order.size());
        m.train_accuracy = static_cast<double>(correct) / static_cast<double>(order.size());
        if (test_set && test_set->size()) {
            const auto r = evaluate(plan, params, *test_set, cfg.loss);
            m.test_loss = r.mean_loss;
            m.test_accuracy = r.accuracy;
        }
        history.push_back(m);
        if (on_epoch) on_epoch(m);
    }
    return history;
}

}  // namespace qfmix

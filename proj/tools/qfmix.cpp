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

#include <iostream>

#include "CLI11.hpp"

#include "qfmix/cli.hpp"

namespace {

void add_common(CLI::App* sub, qfmix::cli::RunConfig& c) {
    sub->add_option("--out", c.out, "Output directory")->capture_default_str();
    sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
}

void add_data(CLI::App* sub, qfmix::cli::RunConfig& c) {
    sub->add_option("--dataset", c.dataset, "mnist or xor")->capture_default_str();
    sub->add_option("--classes", c.classes, "Class count (2,3,4,5,10) or digit list such as 0,3,6,9")
        ->capture_default_str();
    sub->add_option("--resolution", c.resolution, "Downsampled side length: 4, 8 or 16")->capture_default_str();
    sub->add_option("--temperature", c.temperature, "Softmax temperature of the loss")->capture_default_str();
}

void add_training(CLI::App* sub, qfmix::cli::RunConfig& c) {
    sub->add_option("--epochs", c.epochs, "Training epochs")->capture_default_str();
    sub->add_option("--lr", c.lr, "Learning rate")->capture_default_str();
    sub->add_option("--batch", c.batch, "Mini-batch size")->capture_default_str();
    sub->add_option("--r1", c.r1, "V blocks for template architectures")->capture_default_str();
    sub->add_option("--hidden", c.hidden, "Hidden width for templates (0 = default for the class count)")
        ->capture_default_str();
    sub->add_option("--n-layers", c.n_layers, "N layers in templates: none, per-channel, shared")
        ->capture_default_str();
    sub->add_option("--limit", c.limit, "Use at most this many training samples (0 = all)")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    using namespace qfmix::cli;
    CLI::App app{"qfmix: mixed quantum neural network simulator and trainer"};
    app.set_version_flag("--version", QFMIX_VERSION);
    app.require_subcommand(1);
    RunConfig cfg;

    auto* check = app.add_subcommand("check", "Check every junction of an architecture file");
    check->add_option("--arch", cfg.arch, "Architecture file")->required();
    add_common(check, cfg);

    auto* trn = app.add_subcommand("train", "Train an architecture and report test accuracy");
    trn->add_option("--arch", cfg.arch, "Architecture file or template (vqc, v+u, v+p, v+u+p)")->required();
    add_common(trn, cfg);
    add_data(trn, cfg);
    add_training(trn, cfg);

    auto* ev = app.add_subcommand("eval", "Evaluate a checkpoint on the test split");
    ev->add_option("--checkpoint", cfg.checkpoint, "Checkpoint written by train")->required();
    add_common(ev, cfg);
    add_data(ev, cfg);

    auto* ver = app.add_subcommand("verify", "Compare the factorized model with exact circuit simulation");
    ver->add_option("--arch", cfg.arch, "Architecture file");
    ver->add_option("--checkpoint", cfg.checkpoint, "Checkpoint to verify instead of random parameters");
    ver->add_option("--samples", cfg.samples, "Random inputs to test")->capture_default_str();
    ver->add_flag("--demo-path6", cfg.demo_path6, "Run the entangled-amplitude-to-probability counterexample");
    add_common(ver, cfg);

    auto* sw = app.add_subcommand("sweep", "Train a template for each V repetition count in a range");
    sw->add_option("--arch", cfg.arch, "Template: vqc, v+u, v+p, v+u+p")->required();
    sw->add_option("--r-min", cfg.r_min, "Smallest repetition count")->capture_default_str();
    sw->add_option("--r-max", cfg.r_max, "Largest repetition count")->capture_default_str();
    add_common(sw, cfg);
    add_data(sw, cfg);
    add_training(sw, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    if (check->parsed()) {
        cfg.command = "check";
        return cmd_check(cfg, std::cout, std::cerr);
    }
    if (trn->parsed()) {
        cfg.command = "train";
        return cmd_train(cfg, std::cout, std::cerr);
    }
    if (ev->parsed()) {
        cfg.command = "eval";
        return cmd_eval(cfg, std::cout, std::cerr);
    }
    if (ver->parsed()) {
        cfg.command = "verify";
        return cmd_verify(cfg, std::cout, std::cerr);
    }
    cfg.command = "sweep";
    return cmd_sweep(cfg, std::cout, std::cerr);
}

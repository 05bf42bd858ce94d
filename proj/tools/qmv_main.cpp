// Copyright 2026 The QMV Authors
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

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmv/bench.hpp"
#include "qmv/config.hpp"
#include "qmv/errors.hpp"
#include "qmv/lieb_robinson.hpp"
#include "qmv/mean_value.hpp"
#include "qmv/oracle.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitResource = 4;

int resolve_threads(int flag) {
    if (flag > 0) return flag;
    if (const char *env = std::getenv("QMV_THREADS")) {
        try {
            int v = std::stoi(env);
            if (v > 0) return v;
        } catch (const std::exception &) {
        }
        throw qmv::InputError("QMV_THREADS: expected a positive integer");
    }
    return 1;
}

std::vector<qmv::Method> parse_methods(const std::string &list) {
    std::vector<qmv::Method> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(qmv::parse_method(item));
    }
    if (out.empty()) throw qmv::InputError("--methods: no methods given");
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Lightcone mean-value estimator for 2D time-dependent lattice Hamiltonians"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    int threads = 0;

    auto *run = app.add_subcommand("run", "Estimate the mean value for a config");
    run->add_option("config", config_path, "Config file (JSON)")->required();
    run->add_option("-o,--out", out_path, "Result file (default stdout)");
    run->add_option("--threads", threads, "Worker threads (default QMV_THREADS or 1)");

    auto *oracle = app.add_subcommand("oracle", "Exact state-vector mean value for a config");
    oracle->add_option("config", config_path, "Config file (JSON)")->required();
    oracle->add_option("-o,--out", out_path, "Result file (default stdout)");

    double time = 0.0;
    double g = 0.0;
    int degree = 4;
    int sites = 1;
    double budget = 0.0;
    int cap = qmv::kDefaultLightconeCap;
    auto *radius = app.add_subcommand("radius", "Smallest lightcone radius meeting an error budget");
    radius->add_option("--time", time, "Evolution time T")->required();
    radius->add_option("--g", g, "Coupling bound g")->required();
    radius->add_option("--degree", degree, "Graph degree")->required();
    radius->add_option("--sites", sites, "Number of observable sites")->required();
    radius->add_option("--budget", budget, "Total lightcone error budget")->required();
    radius->add_option("--cap", cap, "Qubit cap for one lightcone");

    std::string methods = "trotter,rk4,dp5";
    auto *bench = app.add_subcommand("bench", "Benchmark the propagator solvers");
    bench->add_option("config", config_path, "Config file (JSON) with a bench section")->required();
    bench->add_option("--methods", methods, "Comma-separated subset of trotter,rk4,dp5");
    bench->add_option("-o,--out", out_path, "CSV file (default stdout)");

    auto *validate = app.add_subcommand("validate", "Check a config against the schema");
    validate->add_option("config", config_path, "Config file (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*run) {
            qmv::RunConfig cfg = qmv::load_config(config_path);
            cfg.options.threads = resolve_threads(threads);
            const qmv::MeanValueReport rep = qmv::mean_value(cfg.hamiltonian, cfg.observable, cfg.options);
            qmv::write_output(out_path, qmv::result_json(rep));
        } else if (*oracle) {
            const qmv::RunConfig cfg = qmv::load_config(config_path);
            qmv::OracleOptions opt;
            opt.cap = cfg.oracle_cap;
            const qmv::OracleResult res =
                qmv::oracle_mean_value(cfg.hamiltonian, cfg.observable, cfg.options.time, opt);
            qmv::write_output(out_path, qmv::oracle_json(res));
        } else if (*radius) {
            const int l = qmv::min_radius(time, g, degree, sites, budget, cap);
            std::printf("L* = %d\n", l);
            std::printf("%4s %24s %12s\n", "L", "epsilon_lr", "ball_qubits");
            for (int k = 1; k <= l + 2; ++k) {
                std::printf("%4d %24.6e %12lld\n", k, sites * qmv::lr_error(k, time, g, degree, 1, 1.0),
                            qmv::max_ball_size(k));
            }
        } else if (*bench) {
            const std::vector<qmv::Method> list = parse_methods(methods);
            const qmv::RunConfig cfg = qmv::load_config(config_path);
            qmv::write_output(out_path, qmv::bench_csv(qmv::run_bench(cfg.bench, list)));
        } else if (*validate) {
            qmv::load_config(config_path);
            std::printf("ok\n");
        }
    } catch (const qmv::InputError &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    } catch (const qmv::InfeasibleError &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const qmv::ResourceError &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitResource;
    } catch (const std::bad_alloc &) {
        std::fprintf(stderr, "error: out of memory\n");
        return kExitResource;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
    return kExitOk;
}

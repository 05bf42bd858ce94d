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

#include "qmv/config.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include "qmv/errors.hpp"

using namespace qmv;
using json = nlohmann::json;

namespace {

json minimal() {
    return json::parse(R"({"lattice": {"nx": 3, "ny": 2}, "time": 0.2})");
}

std::string error_of(const json &j) {
    try {
        parse_config(j.dump());
    } catch (const InputError &e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(Config, defaults) {
    RunConfig c = parse_config(minimal().dump());
    EXPECT_EQ(c.lattice().nx(), 3);
    EXPECT_EQ(c.lattice().ny(), 2);
    EXPECT_DOUBLE_EQ(c.options.time, 0.2);
    EXPECT_DOUBLE_EQ(c.options.delta, 0.1);
    EXPECT_TRUE(c.hamiltonian.terms().empty());
    EXPECT_DOUBLE_EQ(c.observable.at(0).c_z, 1.0);
    EXPECT_EQ(c.options.solver.method, Method::kTrotter);
    EXPECT_EQ(c.options.backend, Backend::kMps);
    EXPECT_EQ(c.options.lightcone_cap, 14);
    EXPECT_EQ(c.options.dense_cap, 20);
    EXPECT_EQ(c.oracle_cap, 20);
    EXPECT_EQ(c.bench.repetitions, 100);
    EXPECT_EQ(c.bench.instances, 20);
}

TEST(Config, full_document) {
    json j = minimal();
    j["delta"] = 0.05;
    j["hamiltonian"] = json::parse(R"({
        "terms": [
            {"edge": [[1, 0], [0, 0]], "pauli": {"XZ": 0.5, "YY": 0.25},
             "schedule": {"type": "harmonic", "a": 0.1, "b": 0.2, "omega": 3.0, "phi": 0.5}},
            {"edge": [[0, 0], [1, 0]], "pauli": {"ZZ": 1.0}}
        ],
        "default_term": {"pauli": {"XX": 0.3},
                         "schedule": {"type": "piecewise_linear", "knots": [[0, 0], [0.2, 1]]}}
    })");
    j["observable"] = json::parse(R"({"default": {"I": 0.5, "Z": 0.5},
                                      "sites": [{"site": [2, 1], "op": "X"}]})");
    j["solver"] = json::parse(R"({"method": "dp5", "tol": 1e-9, "sampling": "midpoint"})");
    j["backend"] = json::parse(R"({"contraction": "dense", "lightcone_cap": 10, "dense_cap": 16,
                                   "oracle_cap": 12, "lr_fraction": 0.3, "radius": 1, "truncation": 1e-13})");
    j["bench"] = json::parse(R"({"qubits": [2, 3], "instances": 4, "repetitions": 7, "trotter_steps": 12,
                                 "rk4_steps": 50, "dp5_tol": 1e-10, "time": 0.5, "seed": 3})");
    RunConfig c = parse_config(j.dump());
    EXPECT_EQ(c.lattice().edge_count(), 7u);
    ASSERT_EQ(c.hamiltonian.terms().size(), 7u);
    const EdgeTerm &first = c.hamiltonian.terms()[0];
    EXPECT_EQ(first.edge, (Edge{0, 1}));
    ASSERT_EQ(first.components.size(), 2u);
    // Listed as (1,0) -> (0,0): X on site 1, Z on site 0.
    EXPECT_DOUBLE_EQ(first.components[0].term.coeff(3, 1), 0.5);
    EXPECT_DOUBLE_EQ(first.components[0].term.coeff(2, 2), 0.25);
    EXPECT_DOUBLE_EQ(first.components[1].term.coeff(3, 3), 1.0);
    EXPECT_DOUBLE_EQ(c.hamiltonian.terms()[1].components[0].schedule.value(0.1), 0.5);
    EXPECT_DOUBLE_EQ(c.observable.at(0).c_i, 0.5);
    EXPECT_DOUBLE_EQ(c.observable.at(5).c_x, 1.0);
    EXPECT_EQ(c.options.solver.method, Method::kDp5);
    EXPECT_DOUBLE_EQ(*c.options.solver.tol, 1e-9);
    EXPECT_EQ(c.options.solver.sampling, TrotterSampling::kMidpoint);
    EXPECT_EQ(c.options.backend, Backend::kDense);
    EXPECT_EQ(c.options.lightcone_cap, 10);
    EXPECT_EQ(c.options.dense_cap, 16);
    EXPECT_EQ(c.oracle_cap, 12);
    EXPECT_DOUBLE_EQ(c.options.lr_fraction, 0.3);
    EXPECT_EQ(*c.options.radius, 1);
    EXPECT_DOUBLE_EQ(c.options.truncation.rel_cutoff, 1e-13);
    EXPECT_EQ(c.bench.qubits, (std::vector<int>{2, 3}));
    EXPECT_EQ(c.bench.repetitions, 7);
    EXPECT_EQ(c.bench.seed, 3u);
}

TEST(Config, errors_name_the_field) {
    EXPECT_NE(error_of(json::parse("{}")).find("lattice"), std::string::npos);
    {
        json j = minimal();
        j["lattice"]["nx"] = 0;
        EXPECT_EQ(error_of(j).rfind("lattice.nx:", 0), 0u);
    }
    {
        json j = minimal();
        j["colour"] = 1;
        EXPECT_EQ(error_of(j).rfind("colour: unknown field", 0), 0u);
    }
    {
        json j = minimal();
        j["hamiltonian"]["terms"] = json::parse(R"([{"edge": [[0, 0], [1, 1]], "pauli": {"XX": 1}}])");
        EXPECT_EQ(error_of(j).rfind("hamiltonian.terms[0].edge:", 0), 0u);
    }
    {
        json j = minimal();
        j["hamiltonian"]["terms"] = json::parse(R"([{"edge": [[0, 0], [5, 0]], "pauli": {"XX": 1}}])");
        EXPECT_EQ(error_of(j).rfind("hamiltonian.terms[0].edge[1]:", 0), 0u);
    }
    {
        json j = minimal();
        j["hamiltonian"]["terms"] = json::parse(R"([{"edge": [[0, 0], [1, 0]], "pauli": {"XQ": 1}}])");
        EXPECT_EQ(error_of(j).rfind("hamiltonian.terms[0].pauli.XQ:", 0), 0u);
    }
    {
        json j = minimal();
        j["hamiltonian"]["default_term"] = json::parse(R"({"pauli": {"XX": 1}, "schedule": {"type": "square"}})");
        EXPECT_EQ(error_of(j).rfind("hamiltonian.default_term.schedule.type:", 0), 0u);
    }
    {
        json j = minimal();
        j["observable"] = json::parse(R"({"sites": [{"site": [0, 0], "op": {"X": 0.8, "Z": 0.8}}]})");
        EXPECT_EQ(error_of(j).rfind("observable.sites[0].op:", 0), 0u);
    }
    {
        json j = minimal();
        j["solver"] = json::parse(R"({"method": "euler"})");
        EXPECT_EQ(error_of(j).rfind("solver.method:", 0), 0u);
    }
    {
        json j = minimal();
        j["delta"] = 0;
        EXPECT_EQ(error_of(j).rfind("delta:", 0), 0u);
    }
    {
        json j = minimal();
        j["backend"] = json::parse(R"({"lr_fraction": 1.5})");
        EXPECT_EQ(error_of(j).rfind("backend.lr_fraction:", 0), 0u);
    }
    EXPECT_NE(std::string([] {
                  try {
                      parse_config("{not json");
                  } catch (const InputError &e) {
                      return e.what();
                  }
                  return "";
              }())
                  .find("malformed JSON"),
              std::string::npos);
    EXPECT_THROW(load_config("/nonexistent/config.json"), InputError);
}

TEST(Config, result_document_fields) {
    MeanValueReport r;
    r.mu = 0.25;
    r.radius = 2;
    r.certified_lr = 1e-3;
    r.certified_cs = 2e-3;
    json j = json::parse(result_json(r));
    for (const char *key : {"mu_estimate", "im_residual", "lightcone_radius", "budget",
                            "per_stage_timings_seconds", "backend", "solver"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_DOUBLE_EQ(j["mu_estimate"].get<double>(), 0.25);
    EXPECT_DOUBLE_EQ(j["budget"]["lr"].get<double>(), 1e-3);
    EXPECT_DOUBLE_EQ(j["budget"]["cs"].get<double>(), 2e-3);
    EXPECT_DOUBLE_EQ(j["budget"]["ssc"].get<double>(), 0.0);

    OracleResult o;
    o.mu = -0.5;
    json k = json::parse(oracle_json(o));
    EXPECT_DOUBLE_EQ(k["mu_exact"].get<double>(), -0.5);
    EXPECT_TRUE(k.contains("norm_residual"));
}

// Copyright 2026 The qdleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qdleak/config.hpp"
#include "qdleak/errors.hpp"
#include "qdleak/experiments.hpp"

using namespace qdleak;

namespace {

const ResultRow *find_row(const std::vector<ResultRow> &rows, int nl, double eps, const std::string &stat,
                          std::optional<int> k = std::nullopt) {
    for (const auto &r : rows) {
        if (r.n_layers == nl && std::abs(r.epsilon - eps) < 1e-12 && r.statistic == stat && r.controlled_qubits == k) {
            return &r;
        }
    }
    return nullptr;
}

}  // namespace

TEST(ParseLists, Examples) {
    EXPECT_EQ(parse_int_list("1..4"), (std::vector<int>{1, 2, 3, 4}));
    EXPECT_EQ(parse_int_list(" 3, 5 ,7"), (std::vector<int>{3, 5, 7}));
    EXPECT_EQ(parse_int_list("1..2,6"), (std::vector<int>{1, 2, 6}));
    EXPECT_EQ(parse_double_list("0.5,0.7, 1"), (std::vector<double>{0.5, 0.7, 1.0}));
    EXPECT_THROW(parse_int_list("4..1"), ConfigError);
    EXPECT_THROW(parse_int_list("x"), ConfigError);
    EXPECT_THROW(parse_double_list("0.5,,1"), ConfigError);
    EXPECT_THROW(parse_double_list("inf"), ConfigError);
}

TEST(ExperimentNames, RoundTrip) {
    for (auto e : {Experiment::decoherence_sweep, Experiment::pguess_vs_epsilon, Experiment::partial_control_table,
                   Experiment::layers_table, Experiment::conjecture_check}) {
        EXPECT_EQ(parse_experiment(to_string(e)), e);
        EXPECT_NO_THROW(SweepConfig::defaults_for(e).validate());
    }
    EXPECT_FALSE(parse_experiment("table-3"));
}

TEST(SweepConfig, Defaults) {
    const auto layers = SweepConfig::defaults_for(Experiment::layers_table);
    EXPECT_EQ(layers.nl_grid, (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(layers.ne_grid, (std::vector<int>{2}));
    EXPECT_EQ(layers.eps_grid, (std::vector<double>{0.5, 0.7, 0.9}));
    EXPECT_EQ(layers.repetitions, 200);
    const auto deco = SweepConfig::defaults_for(Experiment::decoherence_sweep);
    EXPECT_EQ(deco.ne_grid.size(), 8u);
    EXPECT_EQ(deco.eps_grid.size(), 11u);
    EXPECT_EQ(SweepConfig::defaults_for(Experiment::pguess_vs_epsilon).eps_grid.size(), 21u);
}

TEST(SweepConfig, LoadText) {
    auto c = SweepConfig::defaults_for(Experiment::layers_table);
    c.load_text("# comment\nexperiment = layers-table\nreps = 7  # trailing\n\neps-grid = 0.1, 0.2\nseed=9\n"
                "control-mode = spectral\nhaar-style = layer-wide\nbranch0 = haar\njobs = 2\nout = x.csv\n");
    EXPECT_EQ(c.repetitions, 7);
    EXPECT_EQ(c.eps_grid, (std::vector<double>{0.1, 0.2}));
    EXPECT_EQ(c.base_seed, 9u);
    EXPECT_EQ(c.control_mode, ControlMode::spectral);
    EXPECT_EQ(c.haar_style, HaarLayerStyle::layer_wide);
    EXPECT_EQ(c.branch_zero, HaarBranchZero::haar);
    EXPECT_EQ(c.resolved_jobs(), 2u);
    EXPECT_EQ(c.output_path, "x.csv");
}

TEST(SweepConfig, Errors) {
    auto c = SweepConfig::defaults_for(Experiment::layers_table);
    EXPECT_THROW(c.set("colour", "red"), ConfigError);
    EXPECT_THROW(c.set("reps", "0"), ConfigError);
    EXPECT_THROW(c.set("reps", "12x"), ConfigError);
    EXPECT_THROW(c.set("control-mode", "most"), ConfigError);
    EXPECT_THROW(c.set("experiment", "decoherence-sweep"), ConfigError);
    EXPECT_THROW(c.load_text("reps 4\n"), ConfigError);
    try {
        c.load_text("reps = 3\nbogus = 1\n");
        FAIL();
    } catch (const ConfigError &e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
    EXPECT_THROW(c.load_file("/nonexistent/qdleak.cfg"), ConfigError);
}

TEST(SweepConfig, ValidateRejectsBadGrids) {
    auto c = SweepConfig::defaults_for(Experiment::layers_table);
    c.set("eps-grid", "0.5,1.5");
    EXPECT_THROW(c.validate(), ConfigError);
    c = SweepConfig::defaults_for(Experiment::layers_table);
    c.set("nl-grid", "4");
    c.set("ne-grid", "4");
    EXPECT_THROW(c.validate(), ConfigError);
    c = SweepConfig::defaults_for(Experiment::layers_table);
    c.set("eve-layer", "5");
    EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Seeds, IndependentOfSharedAxesAndAlternatingBases) {
    auto a = SweepConfig::defaults_for(Experiment::layers_table);
    auto b = a;
    b.eps_grid = {0.1};
    b.nl_grid = {5};
    EXPECT_EQ(repetition_seed(a, 2, 3), repetition_seed(b, 2, 3));
    EXPECT_NE(repetition_seed(a, 2, 3), repetition_seed(a, 3, 3));
    EXPECT_NE(repetition_seed(a, 2, 3), repetition_seed(a, 2, 4));
    b.base_seed = a.base_seed + 1;
    EXPECT_NE(repetition_seed(a, 2, 3), repetition_seed(b, 2, 3));
    EXPECT_EQ(repetition_basis(0), Basis::computational);
    EXPECT_EQ(repetition_basis(1), Basis::hadamard);
}

TEST(Experiments, LayersTableShape) {
    auto c = SweepConfig::defaults_for(Experiment::layers_table);
    c.repetitions = 6;
    c.jobs = 1;
    const auto rows = run_layers_table(c);
    EXPECT_EQ(rows.size(), 3u * 3u * 2u);
    for (const auto &r : rows) {
        EXPECT_EQ(r.experiment, "layers-table");
        EXPECT_EQ(r.repetitions, 6);
        EXPECT_EQ(r.eve_layer, 1);
        EXPECT_FALSE(r.skipped());
        if (r.statistic == "p_guess") {
            EXPECT_GE(r.mean, 0.5);
            EXPECT_LE(r.mean, 1.0);
        }
        const ResultRow *p = find_row(rows, r.n_layers, r.epsilon, "p_guess");
        const ResultRow *k = find_row(rows, r.n_layers, r.epsilon, "key_rate");
        ASSERT_TRUE(p && k);
    }
}

TEST(Experiments, ParallelRunsAreByteIdentical) {
    auto c = SweepConfig::defaults_for(Experiment::partial_control_table);
    c.repetitions = 8;
    c.ne_grid = {3, 4};
    c.jobs = 1;
    const std::string serial = to_csv(run_experiment(c));
    c.jobs = 4;
    EXPECT_EQ(to_csv(run_experiment(c)), serial);
    EXPECT_EQ(to_csv(run_experiment(c)), serial);
}

TEST(Experiments, PartialControlLayout) {
    auto c = SweepConfig::defaults_for(Experiment::partial_control_table);
    c.repetitions = 4;
    c.ne_grid = {3};
    c.jobs = 1;
    const auto rows = run_partial_control_table(c);
    ASSERT_EQ(rows.size(), 7u);
    int skipped = 0;
    for (const auto &r : rows) {
        ASSERT_TRUE(r.controlled_qubits);
        if (*r.controlled_qubits < 0) {
            EXPECT_EQ(r.skip_reason, "controlled_dimension_below_one");
            ++skipped;
        } else if (*r.controlled_qubits == 0) {
            EXPECT_NEAR(r.mean, 0.5, 1e-15);
        }
    }
    EXPECT_EQ(skipped, 3);
    const std::string csv = to_csv(rows);
    EXPECT_NE(csv.find(",p_guess,,,0,20240601,controlled_dimension_below_one"), std::string::npos);
}

TEST(Experiments, DecoherenceEndpoints) {
    auto c = SweepConfig::defaults_for(Experiment::decoherence_sweep);
    c.repetitions = 10;
    c.ne_grid = {1, 3};
    c.eps_grid = {0.0, 1.0};
    c.jobs = 1;
    const auto rows = run_decoherence_sweep(c);
    ASSERT_EQ(rows.size(), 4u);
    for (const auto &r : rows) {
        EXPECT_EQ(r.statistic, "gamma");
        if (r.epsilon == 1.0) {
            EXPECT_NEAR(r.mean, 1.0, 1e-12);
            EXPECT_NEAR(r.std, 0.0, 1e-12);
        } else {
            EXPECT_LT(r.mean, 1.0);
        }
    }
}

TEST(Experiments, ConjectureCheckSmall) {
    auto c = SweepConfig::defaults_for(Experiment::conjecture_check);
    c.nl_grid = {1, 2};
    c.eps_grid = {0.2, 0.8};
    c.alpha_grid = {0.0};
    const auto rows = run_conjecture_check(c);
    for (const auto &r : rows) {
        if (r.statistic == "deviation") {
            EXPECT_LE(r.mean, 1e-9);
        }
        if (r.statistic == "printed_single_layer_rate_deviation" && r.n_layers == 2) {
            EXPECT_EQ(r.skip_reason, "single_layer_only");
        }
    }
    ASSERT_TRUE(find_row(rows, 2, 0.8, "analytic_p_guess"));
}

TEST(Csv, HeaderAndFile) {
    EXPECT_EQ(csv_header(),
              "experiment,n_layers,qubits_per_layer,epsilon,alpha,controlled_qubits,eve_layer,statistic,mean,std,"
              "repetitions,seed,skip_reason\n");
    EXPECT_EQ(to_csv({}), csv_header());
    ResultRow r;
    r.experiment = "layers-table";
    r.statistic = "p_guess";
    r.mean = 0.75;
    r.repetitions = 2;
    r.seed = 11;
    EXPECT_EQ(to_csv({r}), csv_header() + "layers-table,1,1,0,0,,1,p_guess,0.75,0,2,11,\n");

    const auto path = std::filesystem::temp_directory_path() / "qdleak_csv_test.csv";
    write_csv({r}, path.string());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), to_csv({r}));
    std::filesystem::remove(path);
    EXPECT_THROW(write_csv({r}, "/nonexistent-dir/out.csv"), IoError);
}

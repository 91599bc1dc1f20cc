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

#ifndef QDLEAK_EXPERIMENTS_HPP
#define QDLEAK_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qdleak/config.hpp"

namespace qdleak {

/// One CSV line. Field order is the column order.
struct ResultRow {
    std::string experiment;
    int n_layers = 1;
    int qubits_per_layer = 1;
    double epsilon = 0.0;
    double alpha = 0.0;
    /// k for partial-control rows; unset (empty cell) elsewhere.
    std::optional<int> controlled_qubits;
    int eve_layer = 1;
    std::string statistic;
    double mean = 0.0;
    double std = 0.0;
    int repetitions = 0;
    std::uint64_t seed = 0;
    /// Non-empty for skipped rows, whose mean and std are left blank.
    std::string skip_reason;

    bool skipped() const { return !skip_reason.empty(); }
};

/// Seed of repetition `rep` of one grid cell. Independent of epsilon, alpha,
/// k and N_l so those axes share random draws; a chain of N_l + 1 links starts
/// with exactly the draws of the N_l chain.
std::uint64_t repetition_seed(const SweepConfig &config, int qubits_per_layer, int rep);

/// Basis of repetition `rep`: even reps are computational, odd ones Hadamard.
Basis repetition_basis(int rep);

std::vector<ResultRow> run_decoherence_sweep(const SweepConfig &config);
std::vector<ResultRow> run_pguess_vs_epsilon(const SweepConfig &config);
std::vector<ResultRow> run_partial_control_table(const SweepConfig &config);
std::vector<ResultRow> run_layers_table(const SweepConfig &config);
std::vector<ResultRow> run_conjecture_check(const SweepConfig &config);

/// Validates `config` and dispatches on config.experiment.
std::vector<ResultRow> run_experiment(const SweepConfig &config);

std::string csv_header();
std::string to_csv(const std::vector<ResultRow> &rows);
void write_csv(const std::vector<ResultRow> &rows, std::ostream &out);
/// Throws Error if the file cannot be written.
void write_csv(const std::vector<ResultRow> &rows, const std::string &path);

}  // namespace qdleak

#endif  // QDLEAK_EXPERIMENTS_HPP

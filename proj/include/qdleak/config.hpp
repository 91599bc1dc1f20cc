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

#ifndef QDLEAK_CONFIG_HPP
#define QDLEAK_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdleak/eavesdropper.hpp"
#include "qdleak/model.hpp"

namespace qdleak {

enum class Experiment { decoherence_sweep, pguess_vs_epsilon, partial_control_table, layers_table, conjecture_check };

/// Command names: "decoherence-sweep", "pguess-vs-epsilon", ...
std::string_view to_string(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view name);

inline constexpr std::uint64_t kDefaultBaseSeed = 20240601;

/// One experiment's grid and run settings.
///
/// File format: one `key = value` per line, `#` starts a comment, keys are the
/// command-line flag names without the leading dashes (`reps`, `eps-grid`, ...).
struct SweepConfig {
    Experiment experiment = Experiment::conjecture_check;
    std::vector<double> eps_grid;
    std::vector<double> alpha_grid;
    std::vector<int> nl_grid;
    std::vector<int> ne_grid;
    int repetitions = 200;
    std::uint64_t base_seed = kDefaultBaseSeed;
    std::string output_path;
    /// 1-based; unset means the experiment's default.
    std::optional<int> eve_layer;
    ControlMode control_mode = ControlMode::rank_limited;
    /// 0 means one worker per hardware thread.
    unsigned jobs = 0;
    HaarLayerStyle haar_style = HaarLayerStyle::per_qubit;
    HaarBranchZero branch_zero = HaarBranchZero::identity;

    /// Grid and defaults reproducing the corresponding table or figure.
    static SweepConfig defaults_for(Experiment e);

    /// Sets one key from its textual value. Throws ConfigError.
    void set(std::string_view key, std::string_view value);
    /// Applies every key of a config file. Throws ConfigError.
    void load_file(const std::string &path);
    void load_text(std::string_view text);

    /// Checks every grid point against the scenario invariants. Throws
    /// ConfigError.
    void validate() const;

    unsigned resolved_jobs() const;
};

std::vector<double> parse_double_list(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);

}  // namespace qdleak

#endif  // QDLEAK_CONFIG_HPP

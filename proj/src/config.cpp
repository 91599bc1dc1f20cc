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

#include "qdleak/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "qdleak/errors.hpp"

namespace qdleak {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
    text = trim(text);
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split_commas(std::string_view text) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(trim(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

std::vector<double> steps(double lo, double hi, int count) {
    std::vector<double> out;
    for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * i / (count - 1));
    return out;
}

std::vector<int> range(int lo, int hi) {
    std::vector<int> out;
    for (int i = lo; i <= hi; ++i) out.push_back(i);
    return out;
}

ControlMode parse_control_mode(std::string_view v) {
    if (v == "rank") return ControlMode::rank_limited;
    if (v == "subset") return ControlMode::qubit_subset;
    if (v == "spectral") return ControlMode::spectral;
    if (v == "full") return ControlMode::full;
    throw ConfigError("control-mode must be one of rank, subset, spectral, full");
}

}  // namespace

std::string_view to_string(Experiment e) {
    switch (e) {
        case Experiment::decoherence_sweep:
            return "decoherence-sweep";
        case Experiment::pguess_vs_epsilon:
            return "pguess-vs-epsilon";
        case Experiment::partial_control_table:
            return "partial-control-table";
        case Experiment::layers_table:
            return "layers-table";
        case Experiment::conjecture_check:
            return "conjecture-check";
    }
    return "?";
}

std::optional<Experiment> parse_experiment(std::string_view name) {
    for (auto e : {Experiment::decoherence_sweep, Experiment::pguess_vs_epsilon, Experiment::partial_control_table,
                   Experiment::layers_table, Experiment::conjecture_check}) {
        if (to_string(e) == name) return e;
    }
    return std::nullopt;
}

std::vector<double> parse_double_list(std::string_view text) {
    std::vector<double> out;
    for (auto item : split_commas(text)) {
        const double v = parse_number<double>(item, "number");
        if (!std::isfinite(v)) throw ConfigError("non-finite number in list");
        out.push_back(v);
    }
    return out;
}

std::vector<int> parse_int_list(std::string_view text) {
    std::vector<int> out;
    for (auto item : split_commas(text)) {
        // "a..b" expands to an inclusive range.
        if (const auto dots = item.find(".."); dots != std::string_view::npos) {
            const int lo = parse_number<int>(item.substr(0, dots), "range start");
            const int hi = parse_number<int>(item.substr(dots + 2), "range end");
            if (hi < lo) throw ConfigError("empty range '" + std::string(item) + "'");
            for (int i = lo; i <= hi; ++i) out.push_back(i);
        } else {
            out.push_back(parse_number<int>(item, "integer"));
        }
    }
    return out;
}

SweepConfig SweepConfig::defaults_for(Experiment e) {
    SweepConfig c;
    c.experiment = e;
    c.alpha_grid = {0.0};
    switch (e) {
        case Experiment::decoherence_sweep:
            c.ne_grid = range(1, 8);
            c.nl_grid = {1};
            c.eps_grid = steps(0.0, 1.0, 11);
            break;
        case Experiment::pguess_vs_epsilon:
            c.ne_grid = range(3, 7);
            c.nl_grid = {1};
            c.eps_grid = steps(0.0, 1.0, 21);
            break;
        case Experiment::partial_control_table:
            c.ne_grid = range(3, 7);
            c.nl_grid = {1};
            c.eps_grid = {0.0};
            break;
        case Experiment::layers_table:
            c.ne_grid = {2};
            c.nl_grid = {1, 2, 3};
            c.eps_grid = {0.5, 0.7, 0.9};
            break;
        case Experiment::conjecture_check:
            c.ne_grid = {1};
            c.nl_grid = range(1, 5);
            c.eps_grid = steps(0.0, 1.0, 11);
            c.alpha_grid = {0.0, std::numbers::pi / 6.0, std::numbers::pi / 4.0};
            c.repetitions = 1;
            break;
    }
    return c;
}

void SweepConfig::set(std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);
    if (key == "seed") {
        base_seed = parse_number<std::uint64_t>(value, "seed");
    } else if (key == "reps") {
        repetitions = parse_number<int>(value, "reps");
        if (repetitions < 1) throw ConfigError("reps must be at least 1");
    } else if (key == "jobs") {
        jobs = parse_number<unsigned>(value, "jobs");
    } else if (key == "out") {
        output_path = std::string(value);
    } else if (key == "alpha") {
        alpha_grid = parse_double_list(value);
    } else if (key == "eve-layer") {
        eve_layer = parse_number<int>(value, "eve-layer");
    } else if (key == "control-mode") {
        control_mode = parse_control_mode(value);
    } else if (key == "eps-grid") {
        eps_grid = parse_double_list(value);
    } else if (key == "ne-grid") {
        ne_grid = parse_int_list(value);
    } else if (key == "nl-grid") {
        nl_grid = parse_int_list(value);
    } else if (key == "haar-style") {
        if (value == "per-qubit") {
            haar_style = HaarLayerStyle::per_qubit;
        } else if (value == "layer-wide") {
            haar_style = HaarLayerStyle::layer_wide;
        } else {
            throw ConfigError("haar-style must be per-qubit or layer-wide");
        }
    } else if (key == "branch0") {
        if (value == "identity") {
            branch_zero = HaarBranchZero::identity;
        } else if (value == "haar") {
            branch_zero = HaarBranchZero::haar;
        } else {
            throw ConfigError("branch0 must be identity or haar");
        }
    } else if (key == "experiment") {
        const auto e = parse_experiment(value);
        if (!e) throw ConfigError("unknown experiment '" + std::string(value) + "'");
        if (*e != experiment) {
            throw ConfigError("config file is for " + std::string(value) + ", not " +
                              std::string(to_string(experiment)));
        }
    } else {
        throw ConfigError("unknown config key '" + std::string(key) + "'");
    }
}

void SweepConfig::load_text(std::string_view text) {
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        try {
            set(line.substr(0, eq), line.substr(eq + 1));
        } catch (const ConfigError &e) {
            throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void SweepConfig::load_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    load_text(buffer.str());
}

void SweepConfig::validate() const {
    if (repetitions < 1) throw ConfigError("reps must be at least 1");
    if (eps_grid.empty() || alpha_grid.empty() || nl_grid.empty() || ne_grid.empty()) {
        throw ConfigError("every grid must contain at least one value");
    }
    for (int nl : nl_grid) {
        for (int ne : ne_grid) {
            for (double eps : eps_grid) {
                ScenarioSpec spec;
                spec.n_layers = nl;
                spec.qubits_per_layer = ne;
                spec.epsilon = eps;
                spec.mode = experiment == Experiment::conjecture_check ? InteractionMode::analytic
                                                                        : InteractionMode::haar;
                // An explicit eavesdropper layer must exist in every grid point.
                spec.eve_layer = eve_layer;
                try {
                    spec.validate();
                } catch (const ArgumentError &e) {
                    throw ConfigError("grid point (N_l=" + std::to_string(nl) + ", N_E=" + std::to_string(ne) +
                                      ", eps=" + std::to_string(eps) + "): " + e.what());
                }
            }
        }
    }
}

unsigned SweepConfig::resolved_jobs() const {
    if (jobs > 0) return jobs;
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace qdleak

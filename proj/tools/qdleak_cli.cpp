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

// qdleak: runs one experiment sweep and writes its CSV.

#include <CLI11.hpp>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "qdleak/qdleak.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

const char *const kExperiments[] = {"decoherence-sweep", "pguess-vs-epsilon", "partial-control-table",
                                    "layers-table", "conjecture-check"};

struct Flag {
    const char *key;
    const char *help;
};

// Every config key is also a flag; values are passed through verbatim.
const Flag kFlags[] = {
    {"seed", "Base seed (u64)"},
    {"reps", "Repetitions averaged per grid cell"},
    {"jobs", "Worker threads (default: logical cores)"},
    {"out", "Output CSV path (default: stdout)"},
    {"alpha", "Interaction rotation in radians (comma list allowed)"},
    {"eve-layer", "1-based layer the eavesdropper reads"},
    {"control-mode", "Partial control model: rank|subset|spectral|full"},
    {"eps-grid", "Comma list of epsilon values"},
    {"ne-grid", "Comma list of qubits per layer (a..b ranges allowed)"},
    {"nl-grid", "Comma list of layer counts (a..b ranges allowed)"},
    {"haar-style", "Haar conditional unitaries: per-qubit|layer-wide"},
    {"branch0", "Branch-0 conditional unitary: identity|haar"},
};

int exit_code(qdleak_status status) {
    switch (status) {
        case QDLEAK_OK:
            return 0;
        case QDLEAK_ERR_CONFIG:
        case QDLEAK_ERR_ARGUMENT:
        case QDLEAK_ERR_CONTRACT:
        case QDLEAK_ERR_DIMENSION:
            return kExitConfig;
        case QDLEAK_ERR_NUMERICAL:
        case QDLEAK_ERR_DEGENERATE:
            return kExitNumerical;
        default:
            return kExitFailure;
    }
}

int report(qdleak_status status) {
    std::fprintf(stderr, "qdleak: %s: %s\n", qdleak_status_name(status), qdleak_last_error());
    return exit_code(status);
}

struct Invocation {
    std::string experiment;
    std::string config_path;
    std::map<std::string, std::string> values;
};

int run(const Invocation &inv) {
    qdleak_sweep *sweep = nullptr;
    qdleak_status status = qdleak_sweep_create(inv.experiment.c_str(), &sweep);
    if (status != QDLEAK_OK) return report(status);

    auto finish = [&](qdleak_status s) {
        const int code = s == QDLEAK_OK ? 0 : report(s);
        qdleak_sweep_destroy(sweep);
        return code;
    };

    if (!inv.config_path.empty()) {
        status = qdleak_sweep_load_config(sweep, inv.config_path.c_str());
        if (status != QDLEAK_OK) return finish(status);
    }
    for (const auto &[key, value] : inv.values) {
        status = qdleak_sweep_set(sweep, key.c_str(), value.c_str());
        if (status != QDLEAK_OK) return finish(status);
    }
    status = qdleak_sweep_run(sweep);
    if (status != QDLEAK_OK) return finish(status);

    if (qdleak_sweep_output_path(sweep)[0] != '\0') return finish(qdleak_sweep_write_csv(sweep, nullptr));

    char *csv = nullptr;
    status = qdleak_sweep_csv(sweep, &csv);
    if (status == QDLEAK_OK) {
        std::fputs(csv, stdout);
        qdleak_string_free(csv);
    }
    return finish(status);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum Darwinism leakage in BB84: experiment runner"};
    app.set_version_flag("--version", qdleak_version());
    app.require_subcommand(1);

    Invocation inv;
    std::map<std::string, std::string> raw;
    for (const char *name : kExperiments) {
        CLI::App *sub = app.add_subcommand(name, std::string("Run the ") + name + " experiment");
        sub->add_option("--config", inv.config_path, "Config file (key = value lines)")->check(CLI::ExistingFile);
        for (const Flag &flag : kFlags) sub->add_option(std::string("--") + flag.key, raw[flag.key], flag.help);
        sub->callback([&inv, name] { inv.experiment = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    for (CLI::App *sub : app.get_subcommands()) {
        for (const Flag &flag : kFlags) {
            if (sub->count(std::string("--") + flag.key) > 0) inv.values[flag.key] = raw[flag.key];
        }
    }
    return run(inv);
}

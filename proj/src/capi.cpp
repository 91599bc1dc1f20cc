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

#include "qdleak/qdleak.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "qdleak/config.hpp"
#include "qdleak/eavesdropper.hpp"
#include "qdleak/errors.hpp"
#include "qdleak/experiments.hpp"
#include "qdleak/model.hpp"

struct qdleak_scenario {
    qdleak::ScenarioSpec spec;
};

struct qdleak_sweep {
    qdleak::SweepConfig config;
    std::vector<qdleak::ResultRow> rows;
};

namespace {

thread_local std::string last_error;

qdleak_status fail(qdleak_status status, const char *what) {
    last_error = what;
    return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
qdleak_status guarded(Fn &&fn) {
    last_error.clear();
    try {
        fn();
        return QDLEAK_OK;
    } catch (const qdleak::ConfigError &e) {
        return fail(QDLEAK_ERR_CONFIG, e.what());
    } catch (const qdleak::NumericalContractError &e) {
        return fail(QDLEAK_ERR_NUMERICAL, e.what());
    } catch (const qdleak::DegeneracyError &e) {
        return fail(QDLEAK_ERR_DEGENERATE, e.what());
    } catch (const qdleak::DimensionLimitError &e) {
        return fail(QDLEAK_ERR_DIMENSION, e.what());
    } catch (const qdleak::ContractError &e) {
        return fail(QDLEAK_ERR_CONTRACT, e.what());
    } catch (const qdleak::IoError &e) {
        return fail(QDLEAK_ERR_IO, e.what());
    } catch (const qdleak::ArgumentError &e) {
        return fail(QDLEAK_ERR_ARGUMENT, e.what());
    } catch (const std::bad_alloc &) {
        return fail(QDLEAK_ERR_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return fail(QDLEAK_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(QDLEAK_ERR_INTERNAL, "unknown error");
    }
}

template <typename T>
void require(const T *p, const char *name) {
    if (p == nullptr) throw qdleak::ArgumentError(std::string(name) + " is NULL");
}

qdleak::DensityMatrix unpack(const double *data, std::size_t dim) {
    qdleak::ComplexMatrix m(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            const std::size_t i = 2 * (r * dim + c);
            m(r, c) = {data[i], data[i + 1]};
        }
    }
    return qdleak::DensityMatrix(m);
}

qdleak::EavesdropQuery scenario_query(const qdleak::ScenarioSpec &spec) {
    const auto out = qdleak::run_key_pair(spec);
    return {qdleak::in_pointer_frame(out.bit0.rho_eve_layer, spec.basis),
            qdleak::in_pointer_frame(out.bit1.rho_eve_layer, spec.basis), 0.5, {}};
}

}  // namespace

extern "C" {

const char *qdleak_version(void) { return QDLEAK_VERSION; }

const char *qdleak_last_error(void) { return last_error.c_str(); }

const char *qdleak_status_name(qdleak_status status) {
    switch (status) {
        case QDLEAK_OK:
            return "ok";
        case QDLEAK_ERR_ARGUMENT:
            return "argument error";
        case QDLEAK_ERR_CONFIG:
            return "config error";
        case QDLEAK_ERR_NUMERICAL:
            return "numerical contract violation";
        case QDLEAK_ERR_DEGENERATE:
            return "degenerate input";
        case QDLEAK_ERR_DIMENSION:
            return "dimension limit exceeded";
        case QDLEAK_ERR_CONTRACT:
            return "contract violation";
        case QDLEAK_ERR_IO:
            return "i/o error";
        case QDLEAK_ERR_INTERNAL:
            return "internal error";
    }
    return "unknown status";
}

qdleak_status qdleak_analytic_pguess(int n_layers, double epsilon, double alpha, double *out) {
    return guarded([&] {
        require(out, "out");
        *out = qdleak::analytic_pguess(n_layers, epsilon, alpha);
    });
}

qdleak_status qdleak_key_rate(double p_guess, double *out) {
    return guarded([&] {
        require(out, "out");
        *out = qdleak::key_rate(p_guess);
    });
}

qdleak_status qdleak_mutual_information(double p_guess, double *out) {
    return guarded([&] {
        require(out, "out");
        *out = qdleak::mutual_information(p_guess);
    });
}

qdleak_status qdleak_helstrom_pguess(const double *rho0, const double *rho1, size_t dim, double lambda, double *out) {
    return guarded([&] {
        require(rho0, "rho0");
        require(rho1, "rho1");
        require(out, "out");
        if (dim == 0) throw qdleak::ArgumentError("dim must be positive");
        *out = qdleak::helstrom_pguess(unpack(rho0, dim), unpack(rho1, dim), lambda);
    });
}

qdleak_status qdleak_scenario_create(qdleak_scenario **out) {
    return guarded([&] {
        require(out, "out");
        *out = new qdleak_scenario{};
    });
}

void qdleak_scenario_destroy(qdleak_scenario *scenario) { delete scenario; }

qdleak_status qdleak_scenario_set_layers(qdleak_scenario *scenario, int n_layers, int qubits_per_layer) {
    return guarded([&] {
        require(scenario, "scenario");
        qdleak::ScenarioSpec next = scenario->spec;
        next.n_layers = n_layers;
        next.qubits_per_layer = qubits_per_layer;
        next.validate();
        scenario->spec = next;
    });
}

qdleak_status qdleak_scenario_set_interaction(qdleak_scenario *scenario, qdleak_mode mode, double epsilon,
                                              double alpha) {
    return guarded([&] {
        require(scenario, "scenario");
        if (mode != QDLEAK_MODE_ANALYTIC && mode != QDLEAK_MODE_HAAR) {
            throw qdleak::ArgumentError("unknown interaction mode");
        }
        qdleak::ScenarioSpec next = scenario->spec;
        next.mode = mode == QDLEAK_MODE_HAAR ? qdleak::InteractionMode::haar : qdleak::InteractionMode::analytic;
        next.epsilon = epsilon;
        next.alpha = alpha;
        next.validate();
        scenario->spec = next;
    });
}

qdleak_status qdleak_scenario_set_basis(qdleak_scenario *scenario, qdleak_basis basis) {
    return guarded([&] {
        require(scenario, "scenario");
        if (basis != QDLEAK_BASIS_COMPUTATIONAL && basis != QDLEAK_BASIS_HADAMARD) {
            throw qdleak::ArgumentError("unknown basis");
        }
        scenario->spec.basis =
            basis == QDLEAK_BASIS_HADAMARD ? qdleak::Basis::hadamard : qdleak::Basis::computational;
    });
}

qdleak_status qdleak_scenario_set_seed(qdleak_scenario *scenario, uint64_t seed) {
    return guarded([&] {
        require(scenario, "scenario");
        scenario->spec.seed = seed;
    });
}

qdleak_status qdleak_scenario_set_eve_layer(qdleak_scenario *scenario, int layer) {
    return guarded([&] {
        require(scenario, "scenario");
        qdleak::ScenarioSpec next = scenario->spec;
        if (layer == 0) {
            next.eve_layer.reset();
        } else {
            next.eve_layer = layer;
        }
        next.validate();
        scenario->spec = next;
    });
}

qdleak_status qdleak_scenario_pguess(const qdleak_scenario *scenario, double *out) {
    return guarded([&] {
        require(scenario, "scenario");
        require(out, "out");
        *out = qdleak::guessing_probability(scenario_query(scenario->spec));
    });
}

qdleak_status qdleak_scenario_pguess_rank_limited(const qdleak_scenario *scenario, int controlled_qubits,
                                                  double *out) {
    return guarded([&] {
        require(scenario, "scenario");
        require(out, "out");
        auto query = scenario_query(scenario->spec);
        query.control.mode = qdleak::ControlMode::rank_limited;
        query.control.controlled_qubits = controlled_qubits;
        query.control.frame = qdleak::random_control_frame(scenario->spec.layer_dimension(), scenario->spec.seed);
        *out = qdleak::guessing_probability(query);
    });
}

qdleak_status qdleak_scenario_gamma(const qdleak_scenario *scenario, double *out) {
    return guarded([&] {
        require(scenario, "scenario");
        require(out, "out");
        qdleak::ScenarioSpec spec = scenario->spec;
        spec.preparation =
            spec.basis == qdleak::Basis::computational ? qdleak::Basis::hadamard : qdleak::Basis::computational;
        *out = qdleak::decoherence_factor(spec);
    });
}

qdleak_status qdleak_sweep_create(const char *experiment, qdleak_sweep **out) {
    return guarded([&] {
        require(experiment, "experiment");
        require(out, "out");
        const auto e = qdleak::parse_experiment(experiment);
        if (!e) throw qdleak::ConfigError(std::string("unknown experiment '") + experiment + "'");
        *out = new qdleak_sweep{qdleak::SweepConfig::defaults_for(*e), {}};
    });
}

void qdleak_sweep_destroy(qdleak_sweep *sweep) { delete sweep; }

qdleak_status qdleak_sweep_load_config(qdleak_sweep *sweep, const char *path) {
    return guarded([&] {
        require(sweep, "sweep");
        require(path, "path");
        sweep->config.load_file(path);
    });
}

qdleak_status qdleak_sweep_set(qdleak_sweep *sweep, const char *key, const char *value) {
    return guarded([&] {
        require(sweep, "sweep");
        require(key, "key");
        require(value, "value");
        sweep->config.set(key, value);
    });
}

const char *qdleak_sweep_output_path(const qdleak_sweep *sweep) {
    return sweep == nullptr ? "" : sweep->config.output_path.c_str();
}

qdleak_status qdleak_sweep_run(qdleak_sweep *sweep) {
    return guarded([&] {
        require(sweep, "sweep");
        sweep->rows = qdleak::run_experiment(sweep->config);
    });
}

size_t qdleak_sweep_row_count(const qdleak_sweep *sweep) { return sweep == nullptr ? 0 : sweep->rows.size(); }

qdleak_status qdleak_sweep_write_csv(const qdleak_sweep *sweep, const char *path) {
    return guarded([&] {
        require(sweep, "sweep");
        const std::string target = path != nullptr ? std::string(path) : sweep->config.output_path;
        if (target.empty()) throw qdleak::ArgumentError("no output path configured");
        qdleak::write_csv(sweep->rows, target);
    });
}

qdleak_status qdleak_sweep_csv(const qdleak_sweep *sweep, char **out) {
    return guarded([&] {
        require(sweep, "sweep");
        require(out, "out");
        const std::string csv = qdleak::to_csv(sweep->rows);
        char *buffer = static_cast<char *>(std::malloc(csv.size() + 1));
        if (buffer == nullptr) throw std::bad_alloc();
        std::memcpy(buffer, csv.c_str(), csv.size() + 1);
        *out = buffer;
    });
}

void qdleak_string_free(char *s) { std::free(s); }

}  // extern "C"

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

#include "qdleak/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "qdleak/eavesdropper.hpp"
#include "qdleak/errors.hpp"
#include "qdleak/model.hpp"

namespace qdleak {

namespace {

constexpr double kRouteAgreement = 1e-9;
constexpr int kTablePercentRows = 7;  // 100%, 50%, ..., 1.5625%
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Samples = std::vector<double>;

// Runs fn(0..count-1) on a pool of workers. The first exception thrown by any
// task stops the pool and is rethrown here.
std::vector<Samples> parallel_map(std::size_t count, unsigned jobs, const std::function<Samples(std::size_t)> &fn) {
    std::vector<Samples> results(count);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                results[i] = fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };

    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, jobs), std::max<std::size_t>(1, count)));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n);
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
    return results;
}

struct Stats {
    double mean = 0;
    double std = 0;
};

Stats summarize(const std::vector<double> &xs) {
    Stats s;
    if (xs.empty()) return s;
    for (double x : xs) s.mean += x;
    s.mean /= static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0;
        for (double x : xs) ss += (x - s.mean) * (x - s.mean);
        s.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return s;
}

struct Cell {
    int n_layers = 1;
    int qubits_per_layer = 1;
    double epsilon = 0;
    double alpha = 0;
    int eve_layer = 1;
};

std::vector<Cell> grid_cells(const SweepConfig &config, bool with_alpha) {
    std::vector<Cell> cells;
    const std::vector<double> alphas = with_alpha ? config.alpha_grid : std::vector<double>{config.alpha_grid.front()};
    for (int nl : config.nl_grid) {
        for (int ne : config.ne_grid) {
            for (double eps : config.eps_grid) {
                for (double alpha : alphas) cells.push_back({nl, ne, eps, alpha, config.eve_layer.value_or(nl)});
            }
        }
    }
    return cells;
}

ResultRow make_row(const SweepConfig &config, const Cell &cell, std::string statistic) {
    ResultRow row;
    row.experiment = std::string(to_string(config.experiment));
    row.n_layers = cell.n_layers;
    row.qubits_per_layer = cell.qubits_per_layer;
    row.epsilon = cell.epsilon;
    row.alpha = cell.alpha;
    row.eve_layer = cell.eve_layer;
    row.statistic = std::move(statistic);
    row.seed = config.base_seed;
    return row;
}

ResultRow stat_row(const SweepConfig &config, const Cell &cell, std::string statistic, const std::vector<double> &xs) {
    ResultRow row = make_row(config, cell, std::move(statistic));
    const Stats s = summarize(xs);
    row.mean = s.mean;
    row.std = s.std;
    row.repetitions = static_cast<int>(xs.size());
    return row;
}

ResultRow skip_row(const SweepConfig &config, const Cell &cell, std::string statistic, std::string reason) {
    ResultRow row = make_row(config, cell, std::move(statistic));
    row.skip_reason = std::move(reason);
    return row;
}

// Column j of the per-repetition sample vectors of one cell.
std::vector<double> column(const std::vector<Samples> &results, std::size_t first, int reps, std::size_t j) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(reps));
    for (int r = 0; r < reps; ++r) out.push_back(results[first + static_cast<std::size_t>(r)][j]);
    return out;
}

ScenarioSpec haar_spec(const SweepConfig &config, const Cell &cell, int rep) {
    ScenarioSpec spec;
    spec.basis = repetition_basis(rep);
    spec.n_layers = cell.n_layers;
    spec.qubits_per_layer = cell.qubits_per_layer;
    spec.epsilon = cell.epsilon;
    spec.alpha = cell.alpha;
    spec.mode = InteractionMode::haar;
    spec.seed = repetition_seed(config, cell.qubits_per_layer, rep);
    spec.eve_layer = cell.eve_layer;
    spec.haar_style = config.haar_style;
    spec.branch_zero = config.branch_zero;
    return spec;
}

// Eavesdropper's layer for both key bits. Full control is invariant under a
// change of frame, so only partial control needs the pointer frame.
EavesdropQuery leaked_query(const ScenarioSpec &spec, bool pointer_frame = false) {
    KeyPairOutcome out = run_key_pair(spec);
    if (!pointer_frame) return {std::move(out.bit0.rho_eve_layer), std::move(out.bit1.rho_eve_layer), 0.5, {}};
    return {in_pointer_frame(out.bit0.rho_eve_layer, spec.basis), in_pointer_frame(out.bit1.rho_eve_layer, spec.basis),
            0.5, {}};
}

template <typename Eval>
std::vector<Samples> run_cells(const SweepConfig &config, const std::vector<Cell> &cells, int reps, Eval eval) {
    const auto r = static_cast<std::size_t>(reps);
    return parallel_map(cells.size() * r, config.resolved_jobs(),
                        [&](std::size_t i) { return eval(cells[i / r], static_cast<int>(i % r)); });
}

void sort_rows(std::vector<ResultRow> &rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const ResultRow &a, const ResultRow &b) {
        return std::tuple(a.n_layers, a.qubits_per_layer, a.epsilon, a.alpha, a.controlled_qubits.value_or(-1)) <
               std::tuple(b.n_layers, b.qubits_per_layer, b.epsilon, b.alpha, b.controlled_qubits.value_or(-1));
    });
}

void require_experiment(const SweepConfig &config, Experiment e) {
    if (config.experiment != e) {
        throw ConfigError("config is for " + std::string(to_string(config.experiment)) + ", not " +
                          std::string(to_string(e)));
    }
    config.validate();
}

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace

std::uint64_t repetition_seed(const SweepConfig &config, int qubits_per_layer, int rep) {
    return derive_seed(config.base_seed, {static_cast<std::uint64_t>(config.experiment),
                                          static_cast<std::uint64_t>(qubits_per_layer), static_cast<std::uint64_t>(rep)});
}

Basis repetition_basis(int rep) { return rep % 2 == 0 ? Basis::computational : Basis::hadamard; }

std::vector<ResultRow> run_decoherence_sweep(const SweepConfig &config) {
    require_experiment(config, Experiment::decoherence_sweep);
    const auto cells = grid_cells(config, false);
    const int reps = config.repetitions;

    const auto results = run_cells(config, cells, reps, [&](const Cell &cell, int rep) {
        // The A->E_1 draws for N_E qubits are a prefix of those for N_E + 1,
        // so the seed leaves out N_E too.
        ScenarioSpec spec = haar_spec(config, cell, rep);
        spec.seed = repetition_seed(config, 0, rep);
        spec.eve_layer.reset();
        double total = 0;
        for (const auto &[measured, prepared] : {std::pair{Basis::computational, Basis::hadamard},
                                                std::pair{Basis::hadamard, Basis::computational}}) {
            spec.basis = measured;
            spec.preparation = prepared;
            const double overlap_route = decoherence_factor(spec);
            const double density_route = decoherence_factor_density(spec);
            if (std::abs(overlap_route - density_route) > kRouteAgreement) {
                throw NumericalContractError("decoherence factor routes disagree: " + format_real(overlap_route) +
                                             " vs " + format_real(density_route));
            }
            total += overlap_route;
        }
        return Samples{total / 2.0};
    });

    std::vector<ResultRow> rows;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        Cell cell = cells[c];
        cell.eve_layer = 1;
        rows.push_back(stat_row(config, cell, "gamma", column(results, c * reps, reps, 0)));
    }
    sort_rows(rows);
    return rows;
}

std::vector<ResultRow> run_pguess_vs_epsilon(const SweepConfig &config) {
    require_experiment(config, Experiment::pguess_vs_epsilon);
    const auto cells = grid_cells(config, false);
    const int reps = config.repetitions;

    const auto results = run_cells(config, cells, reps, [&](const Cell &cell, int rep) {
        const double p = guessing_probability(leaked_query(haar_spec(config, cell, rep)));
        return Samples{p, key_rate(p)};
    });

    std::vector<ResultRow> rows;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        rows.push_back(stat_row(config, cells[c], "p_guess", column(results, c * reps, reps, 0)));
        rows.push_back(stat_row(config, cells[c], "key_rate", column(results, c * reps, reps, 1)));
    }
    sort_rows(rows);
    return rows;
}

std::vector<ResultRow> run_partial_control_table(const SweepConfig &config) {
    require_experiment(config, Experiment::partial_control_table);
    const auto cells = grid_cells(config, false);
    const int reps = config.repetitions;

    // Sample j is the guessing probability with 2^-j of the layer dimension
    // controlled, i.e. k = N_E - j qubits.
    const auto results = run_cells(config, cells, reps, [&](const Cell &cell, int rep) {
        const ScenarioSpec spec = haar_spec(config, cell, rep);
        EavesdropQuery query = leaked_query(spec, true);
        query.control.mode = config.control_mode;
        if (config.control_mode == ControlMode::rank_limited) {
            query.control.frame = random_control_frame(spec.layer_dimension(), spec.seed);
        }
        Samples out(kTablePercentRows, kNaN);
        for (int j = 0; j < kTablePercentRows; ++j) {
            const int k = cell.qubits_per_layer - j;
            if (k < 0) continue;
            query.control.controlled_qubits = k;
            query.control.subset.clear();
            for (int q = 0; q < k; ++q) query.control.subset.push_back(static_cast<std::size_t>(q));
            out[static_cast<std::size_t>(j)] = guessing_probability(query);
        }
        return out;
    });

    std::vector<ResultRow> rows;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        for (int j = 0; j < kTablePercentRows; ++j) {
            const int k = cells[c].qubits_per_layer - j;
            ResultRow row = k < 0 ? skip_row(config, cells[c], "p_guess", "controlled_dimension_below_one")
                                  : stat_row(config, cells[c], "p_guess",
                                             column(results, c * reps, reps, static_cast<std::size_t>(j)));
            row.controlled_qubits = k;
            rows.push_back(std::move(row));
        }
    }
    sort_rows(rows);
    return rows;
}

std::vector<ResultRow> run_layers_table(const SweepConfig &config) {
    require_experiment(config, Experiment::layers_table);
    SweepConfig effective = config;
    // Reads the first layer unless told otherwise.
    if (!effective.eve_layer) effective.eve_layer = 1;
    const auto cells = grid_cells(effective, false);
    const int reps = config.repetitions;

    const auto results = run_cells(effective, cells, reps, [&](const Cell &cell, int rep) {
        const double p = guessing_probability(leaked_query(haar_spec(effective, cell, rep)));
        return Samples{p, key_rate(p)};
    });

    std::vector<ResultRow> rows;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        rows.push_back(stat_row(effective, cells[c], "p_guess", column(results, c * reps, reps, 0)));
        rows.push_back(stat_row(effective, cells[c], "key_rate", column(results, c * reps, reps, 1)));
    }
    sort_rows(rows);
    return rows;
}

std::vector<ResultRow> run_conjecture_check(const SweepConfig &config) {
    require_experiment(config, Experiment::conjecture_check);
    const auto cells = grid_cells(config, true);

    // Deterministic model: one evaluation per cell, both accepted bases.
    enum : std::size_t { kAnalytic, kSimulated, kDeviation, kRate, kMutual, kGeneral, kSingle, kNLayer, kCount };
    const auto results = parallel_map(cells.size(), config.resolved_jobs(), [&](std::size_t i) {
        const Cell &cell = cells[i];
        Samples out(kCount, kNaN);
        AnalyticKeyRate analytic{};
        try {
            analytic = analytic_key_rate(cell.n_layers, cell.epsilon, cell.alpha);
        } catch (const DegeneracyError &) {
            return Samples{};
        }
        double simulated = 0;
        double deviation = 0;
        for (Basis b : {Basis::computational, Basis::hadamard}) {
            ScenarioSpec spec;
            spec.basis = b;
            spec.n_layers = cell.n_layers;
            spec.epsilon = cell.epsilon;
            spec.alpha = cell.alpha;
            spec.mode = InteractionMode::analytic;
            spec.eve_layer = cell.eve_layer;
            const double p = guessing_probability(leaked_query(spec));
            simulated += p / 2.0;
            deviation = std::max(deviation, std::abs(p - analytic.p_guess));
        }
        out[kAnalytic] = analytic.p_guess;
        out[kSimulated] = simulated;
        out[kDeviation] = deviation;
        out[kRate] = analytic.canonical;
        out[kMutual] = mutual_information(analytic.p_guess);
        out[kGeneral] = std::abs(analytic.printed_general - analytic.canonical);
        out[kSingle] = std::abs(analytic.printed_single_layer - analytic.canonical);
        out[kNLayer] = std::abs(analytic.printed_n_layer - analytic.canonical);
        return out;
    });

    static constexpr const char *kNames[kCount] = {"analytic_p_guess",
                                                   "p_guess",
                                                   "deviation",
                                                   "key_rate",
                                                   "mutual_information",
                                                   "printed_general_rate_deviation",
                                                   "printed_single_layer_rate_deviation",
                                                   "printed_n_layer_rate_deviation"};
    std::vector<ResultRow> rows;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        for (std::size_t s = 0; s < kCount; ++s) {
            if (results[c].empty()) {
                rows.push_back(skip_row(config, cells[c], kNames[s], "degenerate_interaction"));
            } else if (!std::isfinite(results[c][s])) {
                rows.push_back(skip_row(config, cells[c], kNames[s],
                                        s == kSingle && cells[c].n_layers != 1 ? "single_layer_only" : "non_finite"));
            } else {
                rows.push_back(stat_row(config, cells[c], kNames[s], {results[c][s]}));
            }
        }
    }
    sort_rows(rows);
    return rows;
}

std::vector<ResultRow> run_experiment(const SweepConfig &config) {
    switch (config.experiment) {
        case Experiment::decoherence_sweep:
            return run_decoherence_sweep(config);
        case Experiment::pguess_vs_epsilon:
            return run_pguess_vs_epsilon(config);
        case Experiment::partial_control_table:
            return run_partial_control_table(config);
        case Experiment::layers_table:
            return run_layers_table(config);
        case Experiment::conjecture_check:
            return run_conjecture_check(config);
    }
    throw ConfigError("unknown experiment");
}

std::string csv_header() {
    return "experiment,n_layers,qubits_per_layer,epsilon,alpha,controlled_qubits,eve_layer,statistic,mean,std,"
           "repetitions,seed,skip_reason\n";
}

void write_csv(const std::vector<ResultRow> &rows, std::ostream &out) {
    out << csv_header();
    for (const auto &row : rows) {
        out << row.experiment << ',' << row.n_layers << ',' << row.qubits_per_layer << ',' << format_real(row.epsilon)
            << ',' << format_real(row.alpha) << ',';
        if (row.controlled_qubits) out << *row.controlled_qubits;
        out << ',' << row.eve_layer << ',' << row.statistic << ',';
        if (!row.skipped()) {
            out << format_real(row.mean) << ',' << format_real(row.std);
        } else {
            out << ',';
        }
        out << ',' << row.repetitions << ',' << row.seed << ',' << row.skip_reason << '\n';
    }
}

std::string to_csv(const std::vector<ResultRow> &rows) {
    std::ostringstream out;
    write_csv(rows, out);
    return out.str();
}

void write_csv(const std::vector<ResultRow> &rows, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_csv(rows, out);
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace qdleak

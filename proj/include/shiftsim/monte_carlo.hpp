// Copyright 2026 The shiftsim Authors
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

#pragma once

// Reproducible logical-error-rate estimation. Trial i draws all of its
// randomness from RandomStream::for_trial(master_seed, i), so the error count
// does not depend on thread count or scheduling.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <type_traits>
#include <variant>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "format.hpp"
#include "gkp.hpp"
#include "ladder.hpp"
#include "logical.hpp"
#include "planar.hpp"
#include "random.hpp"

namespace shiftsim {

/// Integer shift drawn uniformly from [-max_shift, max_shift].
struct DiscreteUniform {
    int max_shift = 0;
};

/// `steps` independent steps; each moves by +1 or -1 (equally likely) with
/// probability step_prob and stays put otherwise.
struct DiscreteStepWalk {
    double step_prob = 0.0;
    int steps = 0;
};

struct GaussianDisplacement {
    double sigma_v = 0.0;
    double sigma_h = 0.0;
};

using NoiseSpec = std::variant<DiscreteUniform, DiscreteStepWalk, GaussianDisplacement>;

struct LadderDescriptor {
    int num_levels = 0;
    int spacing = 0;
    Boundary boundary = Boundary::Cyclic;
};

struct PlanarDescriptor {
    int levels_v = 0;
    int spacing_v = 0;
    int levels_h = 0;
    int spacing_h = 0;
    Boundary boundary = Boundary::Cyclic;
};

struct GkpDescriptor {
    double lambda_v = kSqrtPi;
    double lambda_h = kSqrtPi;
    bool strict_constraint = true;
};

using CodeDescriptor = std::variant<LadderDescriptor, PlanarDescriptor, GkpDescriptor>;

/// Reference logical state encoded in every trial. Unequal magnitudes make a
/// surviving X_L visible as a swap.
inline LogicalAmplitudes default_reference() { return LogicalAmplitudes(0.6, 0.8); }

struct TrialPlan {
    CodeDescriptor code;
    NoiseSpec noise;
    int64_t trials = 1;
    uint64_t master_seed = 0;
    RoundingRule rounding = RoundingRule::Nearest;
    LogicalAmplitudes reference = default_reference();
};

struct SummaryStats {
    int64_t trials = 0;
    int64_t logical_error_count = 0;
    double rate = 0.0;
    double std_error = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;

    static SummaryStats from_counts(int64_t trials, int64_t errors) {
        SummaryStats s;
        s.trials = trials;
        s.logical_error_count = errors;
        s.rate = static_cast<double>(errors) / static_cast<double>(trials);
        s.std_error = std::sqrt(s.rate * (1.0 - s.rate) / static_cast<double>(trials));
        s.ci_low = std::clamp(s.rate - 1.96 * s.std_error, 0.0, 1.0);
        s.ci_high = std::clamp(s.rate + 1.96 * s.std_error, 0.0, 1.0);
        return s;
    }

    friend bool operator==(const SummaryStats &, const SummaryStats &) = default;
};

inline std::string_view code_kind_name(const CodeDescriptor &code) {
    switch (code.index()) {
        case 0: return "ladder";
        case 1: return "planar";
        default: return "gkp";
    }
}

inline std::string_view noise_kind_name(const NoiseSpec &noise) {
    switch (noise.index()) {
        case 0: return "uniform";
        case 1: return "walk";
        default: return "gaussian";
    }
}

namespace detail {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline void validate_noise(const NoiseSpec &noise) {
    std::visit(overloaded{
                   [](const DiscreteUniform &n) {
                       if (n.max_shift < 0) throw Error(ErrorCode::InvalidNoise, "max_shift must be >= 0");
                   },
                   [](const DiscreteStepWalk &n) {
                       if (!(n.step_prob >= 0.0 && n.step_prob <= 1.0) || n.steps < 0) {
                           throw Error(ErrorCode::InvalidNoise, "step walk needs step_prob in [0,1] and steps >= 0");
                       }
                   },
                   [](const GaussianDisplacement &n) {
                       if (!(n.sigma_v >= 0.0) || !(n.sigma_h >= 0.0) || !std::isfinite(n.sigma_v) ||
                           !std::isfinite(n.sigma_h)) {
                           throw Error(ErrorCode::InvalidNoise, "sigmas must be finite and >= 0");
                       }
                   },
               },
               noise);
}

inline int64_t sample_discrete(const NoiseSpec &noise, RandomStream &rng) {
    if (const auto *u = std::get_if<DiscreteUniform>(&noise)) {
        return rng.uniform_int(-u->max_shift, u->max_shift);
    }
    const auto &w = std::get<DiscreteStepWalk>(noise);
    int64_t pos = 0;
    for (int s = 0; s < w.steps; ++s) {
        bool moves = rng.bernoulli(w.step_prob);
        bool up = rng.bernoulli(0.5);
        if (moves) pos += up ? 1 : -1;
    }
    return pos;
}

/// One trial engine per code kind. `operator()(index)` returns true on a logical error.
class LadderTrial {
public:
    explicit LadderTrial(const TrialPlan &plan)
        : plan_(plan),
          code_(std::get<LadderDescriptor>(plan.code).num_levels, std::get<LadderDescriptor>(plan.code).spacing,
                std::get<LadderDescriptor>(plan.code).boundary),
          encoded_(encode(code_, plan.reference)) {
        if (std::holds_alternative<GaussianDisplacement>(plan.noise)) {
            throw Error(ErrorCode::InvalidNoise, "ladder codes take discrete noise");
        }
    }

    bool operator()(uint64_t index) const {
        RandomStream rng = RandomStream::for_trial(plan_.master_seed, index);
        int64_t shift = sample_discrete(plan_.noise, rng);
        try {
            LadderState noisy = apply_shift(encoded_, static_cast<int>(shift));
            DecodeResult r = decode(noisy, plan_.rounding, rng);
            return !r.classification.matches(plan_.reference);
        } catch (const Error &e) {
            // A shift or correction falling off a hard ladder is unresolved: counted as a failure.
            if (e.code() == ErrorCode::OutOfRangeShift) return true;
            throw;
        }
    }

private:
    const TrialPlan &plan_;
    LadderCode code_;
    LadderState encoded_;
};

class PlanarTrial {
public:
    explicit PlanarTrial(const TrialPlan &plan)
        : plan_(plan),
          code_([&] {
              const auto &d = std::get<PlanarDescriptor>(plan.code);
              return make_planar(d.levels_v, d.spacing_v, d.levels_h, d.spacing_h, d.boundary);
          }()) {
        if (std::holds_alternative<GaussianDisplacement>(plan.noise)) {
            throw Error(ErrorCode::InvalidNoise, "planar codes take discrete noise");
        }
    }

    bool operator()(uint64_t index) const {
        RandomStream rng = RandomStream::for_trial(plan_.master_seed, index);
        int64_t dv = sample_discrete(plan_.noise, rng);
        int64_t dh = sample_discrete(plan_.noise, rng);
        PlanarState s = apply_displacement(encode_planar(code_, plan_.reference), dv, dh);
        return decode_planar(s, code_, plan_.rounding).logical_action != LogicalAction::I;
    }

private:
    const TrialPlan &plan_;
    PlanarCode code_;
};

class GkpTrial {
public:
    explicit GkpTrial(const TrialPlan &plan)
        : plan_(plan),
          code_([&] {
              const auto &d = std::get<GkpDescriptor>(plan.code);
              return GkpCode(d.lambda_v, d.lambda_h, d.strict_constraint);
          }()) {
        if (!std::holds_alternative<GaussianDisplacement>(plan.noise)) {
            throw Error(ErrorCode::InvalidNoise, "GKP codes take Gaussian displacement noise");
        }
    }

    bool operator()(uint64_t index) const {
        RandomStream rng = RandomStream::for_trial(plan_.master_seed, index);
        const auto &g = std::get<GaussianDisplacement>(plan_.noise);
        auto [dv, dh] = sample_displacement_error(g.sigma_v, g.sigma_h, rng);
        GkpState s = apply_displacement_cv(encode_gkp(plan_.reference), dv, dh);
        return decode_gkp(s, code_).second.logical_action != LogicalAction::I;
    }

private:
    const TrialPlan &plan_;
    GkpCode code_;
};

template <class Trial>
int64_t count_errors(const Trial &trial, int64_t trials, unsigned threads) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<int64_t>(trials, 1024))));
    if (threads == 1) {
        int64_t errors = 0;
        for (int64_t i = 0; i < trials; ++i) errors += trial(static_cast<uint64_t>(i)) ? 1 : 0;
        return errors;
    }
    std::vector<int64_t> partial(threads, 0);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        int64_t begin = trials * t / threads;
        int64_t end = trials * (t + 1) / threads;
        pool.emplace_back([&, t, begin, end] {
            int64_t e = 0;
            for (int64_t i = begin; i < end; ++i) e += trial(static_cast<uint64_t>(i)) ? 1 : 0;
            partial[t] = e;
        });
    }
    for (auto &th : pool) th.join();
    int64_t errors = 0;
    for (int64_t e : partial) errors += e;
    return errors;
}

}  // namespace detail

/// Threads default to the hardware concurrency; the result is the same for any value.
inline SummaryStats run_trials(const TrialPlan &plan, unsigned threads = 0) {
    if (plan.trials < 1) {
        throw Error(ErrorCode::InvalidPlan, "trials must be >= 1");
    }
    detail::validate_noise(plan.noise);
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    int64_t errors = std::visit(
        detail::overloaded{
            [&](const LadderDescriptor &) { return detail::count_errors(detail::LadderTrial(plan), plan.trials, threads); },
            [&](const PlanarDescriptor &) { return detail::count_errors(detail::PlanarTrial(plan), plan.trials, threads); },
            [&](const GkpDescriptor &) { return detail::count_errors(detail::GkpTrial(plan), plan.trials, threads); },
        },
        plan.code);
    return SummaryStats::from_counts(plan.trials, errors);
}

/// Closed-form rate for GKP plans under Gaussian noise; empty otherwise.
inline std::optional<double> analytic_rate(const TrialPlan &plan) {
    const auto *g = std::get_if<GkpDescriptor>(&plan.code);
    const auto *n = std::get_if<GaussianDisplacement>(&plan.noise);
    if (g == nullptr || n == nullptr) {
        return std::nullopt;
    }
    GkpCode code(g->lambda_v, g->lambda_h, g->strict_constraint);
    return logical_error_prob_analytic_plane(n->sigma_v, n->sigma_h, code);
}

struct SweepRow {
    TrialPlan plan;
    std::optional<SummaryStats> stats;
    std::optional<double> analytic;
    std::optional<std::string> error;
};

/// Rows follow input order. A failing plan records its error in its row.
inline std::vector<SweepRow> sweep(const std::vector<TrialPlan> &plans, unsigned threads = 0) {
    if (plans.empty()) {
        throw Error(ErrorCode::InvalidPlan, "sweep needs at least one plan");
    }
    std::vector<SweepRow> rows;
    rows.reserve(plans.size());
    for (const auto &plan : plans) {
        SweepRow row{plan, std::nullopt, std::nullopt, std::nullopt};
        try {
            row.stats = run_trials(plan, threads);
            row.analytic = analytic_rate(plan);
        } catch (const Error &e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Table output

inline const std::vector<std::string> &table_columns() {
    static const std::vector<std::string> cols = {
        "code_kind", "levels_v", "spacing_v", "levels_h", "spacing_h", "lambda_v",  "lambda_h", "noise",
        "max_shift", "step_prob", "steps",    "sigma_v",  "sigma_h",   "rounding", "trials",   "errors",
        "rate",      "std_error", "ci_low",   "ci_high",  "seed",      "analytic", "error"};
    return cols;
}

namespace detail {

/// Cells in table_columns() order; nullopt marks a field that does not apply.
inline std::vector<std::optional<nlohmann::ordered_json>> row_cells(const SweepRow &row) {
    using J = nlohmann::ordered_json;
    std::vector<std::optional<J>> c(table_columns().size());
    const auto &p = row.plan;
    c[0] = std::string(code_kind_name(p.code));
    std::visit(overloaded{
                   [&](const LadderDescriptor &d) {
                       c[1] = d.num_levels;
                       c[2] = d.spacing;
                   },
                   [&](const PlanarDescriptor &d) {
                       c[1] = d.levels_v;
                       c[2] = d.spacing_v;
                       c[3] = d.levels_h;
                       c[4] = d.spacing_h;
                   },
                   [&](const GkpDescriptor &d) {
                       c[5] = d.lambda_v;
                       c[6] = d.lambda_h;
                   },
               },
               p.code);
    c[7] = std::string(noise_kind_name(p.noise));
    std::visit(overloaded{
                   [&](const DiscreteUniform &n) { c[8] = n.max_shift; },
                   [&](const DiscreteStepWalk &n) {
                       c[9] = n.step_prob;
                       c[10] = n.steps;
                   },
                   [&](const GaussianDisplacement &n) {
                       c[11] = n.sigma_v;
                       c[12] = n.sigma_h;
                   },
               },
               p.noise);
    if (!std::holds_alternative<GkpDescriptor>(p.code)) {
        c[13] = std::string(rule_name(p.rounding));
    }
    c[14] = p.trials;
    if (row.stats) {
        c[15] = row.stats->logical_error_count;
        c[16] = row.stats->rate;
        c[17] = row.stats->std_error;
        c[18] = row.stats->ci_low;
        c[19] = row.stats->ci_high;
    }
    c[20] = p.master_seed;
    if (row.analytic) c[21] = *row.analytic;
    if (row.error) c[22] = *row.error;
    return c;
}

inline std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

inline std::string csv_cell(const std::optional<nlohmann::ordered_json> &cell) {
    if (!cell) return "";
    const auto &j = *cell;
    if (j.is_string()) return csv_escape(j.get<std::string>());
    if (j.is_number_float()) return format_real(j.get<double>());
    return j.dump();
}

}  // namespace detail

/// RFC-4180 style, LF line endings, header always present.
inline void write_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
    const auto &cols = table_columns();
    for (size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto &row : rows) {
        auto cells = detail::row_cells(row);
        for (size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << detail::csv_cell(cells[i]);
        out << '\n';
    }
}

/// Same fields as the CSV, one object per row; inapplicable fields are null.
inline nlohmann::ordered_json rows_to_json(const std::vector<SweepRow> &rows) {
    auto arr = nlohmann::ordered_json::array();
    const auto &cols = table_columns();
    for (const auto &row : rows) {
        auto cells = detail::row_cells(row);
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (size_t i = 0; i < cols.size(); ++i) {
            obj[cols[i]] = cells[i] ? *cells[i] : nlohmann::ordered_json(nullptr);
        }
        arr.push_back(std::move(obj));
    }
    return arr;
}

inline void write_json(std::ostream &out, const std::vector<SweepRow> &rows) { out << rows_to_json(rows).dump(2) << '\n'; }

}  // namespace shiftsim

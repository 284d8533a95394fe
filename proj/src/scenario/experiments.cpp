// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "ris/errors.hpp"
#include "ris/scenario.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

namespace ris::scenario
{
    namespace
    {
        using controller::LinkModel;

        struct Location
        {
            Vec3 rx;
            LinkModel model;
        };

        std::vector<Location> trajectory_models(const ScenarioConfig &cfg, std::vector<std::string> &warnings)
        {
            if (!cfg.trajectory)
                throw ValidationError("this experiment needs a trajectory");
            std::vector<Location> out;
            for (std::size_t i = 0; i < cfg.trajectory->size(); ++i)
            {
                auto built = build_scene(cfg, i);
                for (auto &w : built.warnings)
                    warnings.push_back("location " + std::to_string(i) + ": " + w);
                out.push_back({built.scene.rx.position, LinkModel(built.scene)});
            }
            return out;
        }

        std::string tracking_method(double activation_m, std::size_t seed_index)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "tracked_a%.4f_s%zu", activation_m, seed_index);
            return buf;
        }

        ExperimentOutput exhaustive_pmf(const ScenarioConfig &cfg)
        {
            ExperimentOutput out;
            auto built = build_scene(cfg);
            out.warnings = built.warnings;
            const LinkModel model(built.scene);
            const auto codebook = cfg.codebook_or_all();
            const auto res = controller::exhaustive_search(model, codebook, cfg.exhaustive.budget, cfg.exhaustive.threads);
            const auto worst = *std::min_element(res.qualities.begin(), res.qualities.end());
            for (std::size_t i = 0; i < res.qualities.size(); ++i)
            {
                const auto s = controller::enumeration_state(i, model.elements(), model.n_bit(), codebook);
                out.table.add({0, built.scene.rx.position, "exhaustive", res.qualities[i],
                               res.best_quality_db - res.qualities[i], 1, s.digest()});
            }
            out.side.push_back(quality_histogram(res.qualities, cfg.exhaustive.histogram_bin_db));
            out.side.push_back({"summary",
                                {"states", "best_index", "best_db", "worst_db", "spread_db", "los_only_db"},
                                {{double(res.qualities.size()), double(res.best_index), res.best_quality_db, worst,
                                  res.best_quality_db - worst, channel::gain_db(model.los(), model.budget())}}});
            return out;
        }

        ExperimentOutput controller_comparison(const ScenarioConfig &cfg)
        {
            ExperimentOutput out;
            const auto locs = trajectory_models(cfg, out.warnings);
            SideTable curves{"curves", {"location", "rx_x_m", "rx_y_m", "rx_z_m", "perfect_db", "blind_greedy_db", "dps_beamforming_db"}, {}};
            for (std::size_t i = 0; i < locs.size(); ++i)
            {
                const auto &[rx, model] = locs[i];
                const auto perfect = controller::perfect_beamforming(model);
                const auto bg = controller::blind_greedy(model, cfg.bg_params(controller::location_seed(cfg.seed, i)));
                const auto dq = controller::beamforming_with_dps(model);
                out.table.add({i, rx, "perfect_beamforming", perfect.quality_db, 0.0, 0, ""});
                out.table.add({i, rx, "blind_greedy", bg.quality_db, perfect.quality_db - bg.quality_db,
                               bg.evaluations(), bg.states.digest()});
                out.table.add({i, rx, "beamforming_with_dps", dq.quality_db, perfect.quality_db - dq.quality_db, 0,
                               dq.states.digest()});
                curves.rows.push_back({double(i), rx.x(), rx.y(), rx.z(), perfect.quality_db, bg.quality_db, dq.quality_db});
            }
            out.side.push_back(std::move(curves));
            return out;
        }

        ExperimentOutput polarization_comparison(const ScenarioConfig &cfg)
        {
            ExperimentOutput out;
            const auto locs = trajectory_models(cfg, out.warnings);
            const std::array variants{PolarizationVariant::deg0, PolarizationVariant::deg45, PolarizationVariant::deg90};
            SideTable curves{"curves", {"location", "rx_x_m", "rx_y_m", "rx_z_m", "blind_greedy_db", "polarization_bg_db", "improvement_db"}, {}};
            for (std::size_t i = 0; i < locs.size(); ++i)
            {
                const auto &[rx, model] = locs[i];
                const auto p = cfg.bg_params(controller::location_seed(cfg.seed, i));
                const auto bg = controller::blind_greedy(model, p);
                const auto sel = controller::polarization_selecting_bg(model, p, variants);
                out.table.add({i, rx, "blind_greedy", bg.quality_db, sel.quality_db - bg.quality_db, bg.evaluations(),
                               bg.states.digest()});
                out.table.add({i, rx, "polarization_selecting_bg", sel.quality_db, 0.0, sel.evaluations(),
                               sel.states.digest()});
                curves.rows.push_back({double(i), rx.x(), rx.y(), rx.z(), bg.quality_db, sel.quality_db,
                                       sel.quality_db - bg.quality_db});
            }
            out.side.push_back(std::move(curves));
            return out;
        }

        ExperimentOutput tracking_sweep(const ScenarioConfig &cfg)
        {
            ExperimentOutput out;
            const auto locs = trajectory_models(cfg, out.warnings);
            std::vector<LinkModel> models;
            std::vector<Vec3> positions;
            for (const auto &l : locs)
            {
                models.push_back(l.model);
                positions.push_back(l.rx);
            }
            const auto &acts = cfg.tracking.activation_distances_m;
            std::vector<std::vector<double>> loss_sum(acts.size(), std::vector<double>(locs.size(), 0.0));
            std::vector<double> eval_sum(acts.size(), 0.0);
            for (std::size_t s = 0; s < cfg.tracking.seeds; ++s)
            {
                const auto p = cfg.bg_params(cfg.seed + s);
                const auto reference = controller::reference_run(models, p);
                for (std::size_t a = 0; a < acts.size(); ++a)
                {
                    const auto run = controller::tracked_run(models, positions, acts[a], p, reference, cfg.tracking.policy);
                    const auto method = tracking_method(acts[a], s);
                    for (const auto &loc : run)
                    {
                        out.table.add({loc.location, positions[loc.location], method, loc.quality_db,
                                       loc.relative_loss_db, loc.evaluations, loc.states.digest()});
                        loss_sum[a][loc.location] += loc.relative_loss_db;
                        eval_sum[a] += double(loc.evaluations);
                    }
                }
            }
            const double seeds = double(cfg.tracking.seeds);
            SideTable grid{"grid", {"activation_m", "location", "rx_y_m", "mean_relative_loss_db"}, {}};
            SideTable summary{"summary", {"activation_m", "mean_relative_loss_db", "mean_evaluations_per_location"}, {}};
            for (std::size_t a = 0; a < acts.size(); ++a)
            {
                double total = 0.0;
                for (std::size_t i = 0; i < locs.size(); ++i)
                {
                    grid.rows.push_back({acts[a], double(i), positions[i].y(), loss_sum[a][i] / seeds});
                    total += loss_sum[a][i];
                }
                const double n = seeds * double(locs.size());
                summary.rows.push_back({acts[a], total / n, eval_sum[a] / n});
            }
            out.side.push_back(std::move(grid));
            out.side.push_back(std::move(summary));
            return out;
        }

        ExperimentOutput dps_state_sweep(const ScenarioConfig &cfg)
        {
            ExperimentOutput out;
            auto built = build_scene(cfg);
            out.warnings = built.warnings;
            const LinkModel model(built.scene);
            const std::uint32_t n_states = 1u << model.n_bit();
            std::vector<double> q(n_states);
            for (std::uint32_t c = 0; c < n_states; ++c)
                q[c] = model.quality_db(StateMatrix(model.elements(), model.n_bit(), c), c);
            const double best = *std::max_element(q.begin(), q.end());
            SideTable states{"states", {"code", "quality_db", "gamma_mag_db", "gamma_phase_deg"}, {}};
            for (std::uint32_t c = 0; c < n_states; ++c)
            {
                const StateMatrix s(model.elements(), model.n_bit(), c);
                out.table.add({0, built.scene.rx.position, "state_" + s.state_code(0).to_string(), q[c], best - q[c], 1,
                               s.digest()});
                const cplx g = model.gamma(0, c);
                states.rows.push_back({double(c), q[c], amplitude_to_db(std::abs(g)), rad_to_deg(std::arg(g))});
            }
            out.side.push_back(std::move(states));
            return out;
        }
    }

    Experiment experiment_from_string(std::string_view name)
    {
        if (name == "exhaustive_pmf")
            return Experiment::exhaustive_pmf;
        if (name == "controller_comparison")
            return Experiment::controller_comparison;
        if (name == "polarization_comparison")
            return Experiment::polarization_comparison;
        if (name == "tracking_sweep")
            return Experiment::tracking_sweep;
        if (name == "dps_state_sweep")
            return Experiment::dps_state_sweep;
        throw ValidationError("unknown experiment '" + std::string(name) + "'");
    }

    std::string to_string(Experiment e)
    {
        switch (e)
        {
        case Experiment::exhaustive_pmf:
            return "exhaustive_pmf";
        case Experiment::controller_comparison:
            return "controller_comparison";
        case Experiment::polarization_comparison:
            return "polarization_comparison";
        case Experiment::tracking_sweep:
            return "tracking_sweep";
        case Experiment::dps_state_sweep:
            return "dps_state_sweep";
        }
        return "unknown";
    }

    ExperimentOutput run_experiment(const ScenarioConfig &cfg, Experiment experiment)
    {
        cfg.validate();
        switch (experiment)
        {
        case Experiment::exhaustive_pmf:
            return exhaustive_pmf(cfg);
        case Experiment::controller_comparison:
            return controller_comparison(cfg);
        case Experiment::polarization_comparison:
            return polarization_comparison(cfg);
        case Experiment::tracking_sweep:
            return tracking_sweep(cfg);
        case Experiment::dps_state_sweep:
            return dps_state_sweep(cfg);
        }
        throw ValidationError("unknown experiment");
    }
}

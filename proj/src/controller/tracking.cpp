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

#include "ris/controller.hpp"
#include "ris/errors.hpp"
#include "ris/rng.hpp"

namespace ris::controller
{
    std::uint64_t location_seed(std::uint64_t seed, std::size_t location)
    {
        return rng::draw(seed, 0x747261636bull, location);
    }

    TrackingPolicy tracking_policy_from_string(std::string_view name)
    {
        if (name == "greedy_only")
            return TrackingPolicy::greedy_only;
        if (name == "hold")
            return TrackingPolicy::hold;
        throw ValidationError("unknown tracking policy '" + std::string(name) + "'");
    }

    std::string to_string(TrackingPolicy policy)
    {
        return policy == TrackingPolicy::hold ? "hold" : "greedy_only";
    }

    std::vector<SearchResult> reference_run(std::span<const LinkModel> models, const BgParams &p)
    {
        std::vector<SearchResult> out;
        out.reserve(models.size());
        for (std::size_t i = 0; i < models.size(); ++i)
        {
            BgParams pi = p;
            pi.seed = location_seed(p.seed, i);
            out.push_back(blind_greedy(models[i], pi));
        }
        return out;
    }

    std::vector<LocationResult> tracked_run(std::span<const LinkModel> models, std::span<const antenna::Vec3> rx_positions,
                                            double activation_distance_m, const BgParams &p,
                                            std::span<const SearchResult> reference, TrackingPolicy policy)
    {
        if (models.size() != rx_positions.size())
            throw DimensionMismatch("one receiver position per location is required");
        if (!reference.empty() && reference.size() != models.size())
            throw DimensionMismatch("reference run length does not match the trajectory");
        if (!(activation_distance_m >= 0.0))
            throw ValidationError("activation distance must be non-negative");

        std::vector<SearchResult> own_reference;
        if (reference.empty())
        {
            own_reference = reference_run(models, p);
            reference = own_reference;
        }

        std::vector<LocationResult> out;
        out.reserve(models.size());
        double moved = 0.0;
        StateMatrix current;
        for (std::size_t i = 0; i < models.size(); ++i)
        {
            if (i > 0)
                moved += (rx_positions[i] - rx_positions[i - 1]).norm();

            LocationResult loc;
            loc.location = i;
            loc.full_bg = (i == 0) || moved >= activation_distance_m - 1e-9;
            SearchResult r;
            if (loc.full_bg)
            {
                r = reference[i];
                moved = 0.0;
            }
            else if (policy == TrackingPolicy::greedy_only)
            {
                BgParams pi = p;
                pi.seed = location_seed(p.seed, i);
                r = greedy_search(models[i], current, pi);
            }
            else
            {
                Evaluator eval(models[i]);
                r.states = current;
                r.quality_db = eval(current);
                r.trace = eval.take_trace();
            }
            current = r.states;
            loc.quality_db = r.quality_db;
            loc.reference_quality_db = reference[i].quality_db;
            loc.relative_loss_db = loc.reference_quality_db - loc.quality_db;
            loc.evaluations = r.evaluations();
            loc.states = r.states;
            out.push_back(std::move(loc));
        }
        return out;
    }
}

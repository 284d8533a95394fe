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

#ifndef RIS_TEST_FIXTURES_HPP
#define RIS_TEST_FIXTURES_HPP

#include "ris/rng.hpp"
#include "ris/scenario.hpp"

#include <cmath>
#include <numbers>

namespace fixtures
{
    using namespace ris;

    // tx and rx in front of a rows x cols array at the origin
    inline scenario::ScenarioConfig array_config(std::size_t rows, std::size_t cols, antenna::Vec3 rx = {0.8, 0.2, 0.0})
    {
        scenario::ScenarioConfig cfg;
        cfg.seed = 1;
        cfg.tx.position_m = {0.8, 0.0, 0.0};
        cfg.tx.orientation_deg = {0, 0, 180};
        cfg.rx.position_m = rx;
        cfg.rx.orientation_deg = {0, 0, 180};
        cfg.ris.rows = rows;
        cfg.ris.cols = cols;
        return cfg;
    }

    inline channel::Scene scene_of(const scenario::ScenarioConfig &cfg) { return scenario::build_scene(cfg).scene; }

    // Receiver at a random spot in front of the array, facing it
    inline scenario::ScenarioConfig random_config(std::size_t rows, std::size_t cols, std::uint64_t seed)
    {
        const double x = 0.5 + rng::uniform(seed, 11, 0);
        const double y = rng::uniform(seed, 11, 1) - 0.5;
        const double z = 0.4 * rng::uniform(seed, 11, 2) - 0.2;
        auto cfg = array_config(rows, cols, {x, y, z});
        cfg.rx.orientation_deg = {0, 0, 180.0 + rad_to_deg(std::atan2(y, x))};
        cfg.ris.random_initial_phase = true;
        cfg.seed = seed;
        return cfg;
    }
}

#endif

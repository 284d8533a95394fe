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

#include <cmath>

namespace ris::controller
{
    BeamformingResult perfect_beamforming(const LinkModel &model)
    {
        const std::size_t n = model.elements();
        const auto &lb = model.budget();

        cplx ref = model.static_sum();
        if (channel::gain_db(ref, lb) < -200.0 && n > 0)
            ref = model.unit_am(0, model.default_variant(0));

        BeamformingResult res;
        res.phases_deg.resize(n, 0.0);
        cplx c = model.static_sum();
        for (std::size_t e = 0; e < n; ++e)
        {
            const cplx a = model.unit_am(e, model.default_variant(e));
            if (std::abs(a) > 0.0 && std::abs(ref) > 0.0)
                res.phases_deg[e] = wrap_deg(rad_to_deg(std::arg(ref) - std::arg(a)));
            c += a * std::polar(1.0, deg_to_rad(res.phases_deg[e]));
        }
        res.coefficient = c;
        res.quality_db = channel::gain_db(c, lb);
        return res;
    }

    QuantizedResult beamforming_with_dps(const LinkModel &model)
    {
        const auto perfect = perfect_beamforming(model);
        const std::uint32_t n_states = 1u << model.n_bit();

        QuantizedResult res;
        res.states = StateMatrix(model.elements(), model.n_bit(), 0);
        for (std::size_t e = 0; e < model.elements(); ++e)
        {
            std::uint32_t best = 0;
            double best_err = 1e9;
            for (std::uint32_t code = 0; code < n_states; ++code)
            {
                const double ph = rad_to_deg(std::arg(model.gamma(e, code)));
                const double err = std::abs(wrap_deg(ph - perfect.phases_deg[e]));
                if (err < best_err)
                {
                    best_err = err;
                    best = code;
                }
            }
            res.states.set_code(e, best);
        }
        res.quality_db = model.quality_db(res.states, 0);
        return res;
    }

    QuantizedResult beamforming_with_dps(const Scene &scene, const dps::DpsModel &dps_model)
    {
        Scene s = scene;
        for (auto &e : s.elements)
            e.dps = dps_model;
        return beamforming_with_dps(LinkModel(s));
    }
}

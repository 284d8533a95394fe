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

#include "ris/scene.hpp"
#include "ris/errors.hpp"
#include "ris/rng.hpp"

#include <cmath>

namespace ris::channel
{
    void Scene::validate() const
    {
        tx.validate();
        rx.validate();
        for (const auto &e : elements)
        {
            e.validate();
            if (e.dps.n_bit() != n_bit())
                throw ValidationError("all RIS elements must share the DPS width");
        }
        if (noise.enabled && !(noise.sigma_db >= 0.0))
            throw ValidationError("noise sigma must be >= 0 dB");
    }

    double gain_db(cplx coefficient, const LinkBudget &lb)
    {
        return 10.0 * std::log10(std::norm(coefficient) / lb.tx_power());
    }

    LinkModel::LinkModel(const Scene &scene) : budget_(scene.budget), noise_(scene.noise), n_bit_(scene.n_bit())
    {
        scene.validate();
        los_ = los_coefficient(scene.tx, scene.rx, budget_);
        static_ = los_;
        for (const auto &e : scene.elements)
        {
            const cplx sm = sm_coefficient(scene.tx, scene.rx, e, scene.tuning, budget_);
            sm_.push_back(sm);
            static_ += sm;
            std::array<cplx, 3> unit;
            for (std::size_t v = 0; v < 3; ++v)
                unit[v] = am_coefficient_for_gamma(scene.tx, scene.rx, e, 1.0, budget_,
                                                   static_cast<PolarizationVariant>(v));
            unit_am_.push_back(unit);
            gamma_.push_back(dps::reflection_table(e.dps));
            default_variant_.push_back(e.polarization_variant);
        }
    }

    cplx LinkModel::coefficient(const StateMatrix &states) const
    {
        if (states.rows() != unit_am_.size())
            throw DimensionMismatch("state matrix has " + std::to_string(states.rows()) + " rows for " +
                                    std::to_string(unit_am_.size()) + " elements");
        if (!unit_am_.empty() && states.n_bit() != n_bit_)
            throw DimensionMismatch("state width does not match the DPS width");
        cplx total = static_;
        const bool variants = states.has_variants();
        for (std::size_t n = 0; n < unit_am_.size(); ++n)
        {
            const auto v = static_cast<std::size_t>(variants ? states.variant(n) : default_variant_[n]);
            total += unit_am_[n][v] * gamma_[n][states.code(n)];
        }
        return total;
    }

    double LinkModel::noise_db(std::uint64_t eval_index) const
    {
        if (!noise_.enabled || noise_.sigma_db == 0.0)
            return 0.0;
        return noise_.sigma_db * rng::normal(noise_.seed, 0x6e6f697365ull, eval_index);
    }

    double LinkModel::quality_db(const StateMatrix &states, std::uint64_t eval_index) const
    {
        return gain_db(coefficient(states), budget_) + noise_db(eval_index);
    }
}

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

#ifndef RIS_SCENE_HPP
#define RIS_SCENE_HPP

#include "ris/channel.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace ris::channel
{
    struct NoiseSettings
    {
        bool enabled = false;
        double sigma_db = 0.0; // zero-mean Gaussian added to the quality in dB
        std::uint64_t seed = 0;
    };

    // Immutable description of one link: transmitter, receiver, RIS elements
    struct Scene
    {
        Pose tx, rx;
        std::vector<RisElement> elements;
        SmTuning tuning;
        LinkBudget budget = LinkBudget::from_frequency(3.5e9);
        NoiseSettings noise;

        std::size_t n_bit() const { return elements.empty() ? 0 : elements.front().dps.n_bit(); }
        void validate() const;
    };

    // 10 log10(|C|^2 / P^t)
    double gain_db(cplx coefficient, const LinkBudget &lb);

    // Scene evaluated once into its linear parts. The array coefficient is
    //   C = static + sum_n unit_am[n][variant] * gamma_n(code)
    // with static = C_los + sum_n C_sm,n and unit_am the AM term at gamma = 1.
    class LinkModel
    {
    public:
        explicit LinkModel(const Scene &scene);

        std::size_t elements() const { return unit_am_.size(); }
        std::size_t n_bit() const { return n_bit_; }
        const LinkBudget &budget() const { return budget_; }

        cplx los() const { return los_; }
        cplx sm(std::size_t n) const { return sm_[n]; }
        cplx static_sum() const { return static_; }
        cplx unit_am(std::size_t n, PolarizationVariant v) const { return unit_am_[n][static_cast<std::size_t>(v)]; }
        cplx gamma(std::size_t n, std::uint32_t code) const { return gamma_[n][code]; }
        PolarizationVariant default_variant(std::size_t n) const { return default_variant_[n]; }

        // Throws DimensionMismatch on a row count / width mismatch
        cplx coefficient(const StateMatrix &states) const;

        // Gain loss in dB; `eval_index` keys the optional measurement noise
        double quality_db(const StateMatrix &states, std::uint64_t eval_index = 0) const;
        double noise_db(std::uint64_t eval_index) const;

    private:
        LinkBudget budget_;
        NoiseSettings noise_;
        std::size_t n_bit_ = 0;
        cplx los_{}, static_{};
        std::vector<cplx> sm_;
        std::vector<std::array<cplx, 3>> unit_am_;
        std::vector<std::vector<cplx>> gamma_;
        std::vector<PolarizationVariant> default_variant_;
    };
}

#endif

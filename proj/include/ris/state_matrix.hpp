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

#ifndef RIS_STATE_MATRIX_HPP
#define RIS_STATE_MATRIX_HPP

#include "ris/dps.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ris
{
    // Selectable linear polarization of a dual-port RIS element, as a roll of
    // the element antenna about its boresight
    enum class PolarizationVariant : std::uint8_t
    {
        deg0 = 0,
        deg45 = 1,
        deg90 = 2,
    };

    double variant_angle_deg(PolarizationVariant v);
    PolarizationVariant variant_from_degrees(double deg);

    // DPS codes of all RIS elements (one row per element, stored as the
    // integer value of the b1..bN code with b1 most significant) plus an
    // optional per-row polarization variant.
    class StateMatrix
    {
    public:
        StateMatrix() = default;
        StateMatrix(std::size_t n_rows, std::size_t n_bit, std::uint32_t fill_code = 0);
        StateMatrix(std::size_t n_bit, std::vector<std::uint32_t> codes);

        std::size_t rows() const { return codes_.size(); }
        std::size_t n_bit() const { return n_bit_; }

        std::uint32_t code(std::size_t row) const { return codes_[row]; }
        void set_code(std::size_t row, std::uint32_t code);
        dps::StateCode state_code(std::size_t row) const { return dps::StateCode::from_index(codes_[row], n_bit_); }
        const std::vector<std::uint32_t> &codes() const { return codes_; }

        bool has_variants() const { return !variants_.empty(); }
        // deg0 when no variants are attached
        PolarizationVariant variant(std::size_t row) const;
        void set_variant(std::size_t row, PolarizationVariant v); // attaches deg0 everywhere on first use
        const std::vector<PolarizationVariant> &variants() const { return variants_; }

        // Hex digest: ceil(n_bit/4) hex digits per row, then "-" and one
        // digit (0/1/2) per row when variants are attached, e.g. "4747-0012"
        std::string digest() const;
        static StateMatrix from_digest(std::string_view digest, std::size_t n_bit);

        bool operator==(const StateMatrix &) const = default;

    private:
        std::size_t n_bit_ = 0;
        std::vector<std::uint32_t> codes_;
        std::vector<PolarizationVariant> variants_;
    };
}

#endif

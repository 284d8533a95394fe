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

#include "ris/state_matrix.hpp"
#include "ris/errors.hpp"

#include <cmath>

namespace ris
{
    double variant_angle_deg(PolarizationVariant v)
    {
        switch (v)
        {
        case PolarizationVariant::deg0:
            return 0.0;
        case PolarizationVariant::deg45:
            return 45.0;
        case PolarizationVariant::deg90:
            return 90.0;
        }
        return 0.0;
    }

    PolarizationVariant variant_from_degrees(double deg)
    {
        if (deg == 0.0)
            return PolarizationVariant::deg0;
        if (deg == 45.0)
            return PolarizationVariant::deg45;
        if (deg == 90.0)
            return PolarizationVariant::deg90;
        throw ValidationError("polarization variant must be 0, 45 or 90 degrees");
    }

    StateMatrix::StateMatrix(std::size_t n_rows, std::size_t n_bit, std::uint32_t fill_code)
        : n_bit_(n_bit), codes_(n_rows, fill_code)
    {
        if (n_bit == 0 || n_bit > 16)
            throw ValidationError("state width must be 1..16 bits");
        if (fill_code >= (1u << n_bit))
            throw ValidationError("code out of range");
    }

    StateMatrix::StateMatrix(std::size_t n_bit, std::vector<std::uint32_t> codes)
        : n_bit_(n_bit), codes_(std::move(codes))
    {
        if (n_bit == 0 || n_bit > 16)
            throw ValidationError("state width must be 1..16 bits");
        for (auto c : codes_)
            if (c >= (1u << n_bit))
                throw ValidationError("code out of range");
    }

    void StateMatrix::set_code(std::size_t row, std::uint32_t code)
    {
        if (code >= (1u << n_bit_))
            throw ValidationError("code out of range");
        codes_.at(row) = code;
    }

    PolarizationVariant StateMatrix::variant(std::size_t row) const
    {
        return variants_.empty() ? PolarizationVariant::deg0 : variants_[row];
    }

    void StateMatrix::set_variant(std::size_t row, PolarizationVariant v)
    {
        if (variants_.empty())
            variants_.assign(codes_.size(), PolarizationVariant::deg0);
        variants_.at(row) = v;
    }

    std::string StateMatrix::digest() const
    {
        static constexpr char hex[] = "0123456789abcdef";
        const std::size_t digits = (n_bit_ + 3) / 4;
        std::string s;
        s.reserve(codes_.size() * (digits + 1) + 1);
        for (auto c : codes_)
            for (std::size_t d = digits; d-- > 0;)
                s.push_back(hex[(c >> (4 * d)) & 0xF]);
        if (!variants_.empty())
        {
            s.push_back('-');
            for (auto v : variants_)
                s.push_back(char('0' + static_cast<int>(v)));
        }
        return s;
    }

    StateMatrix StateMatrix::from_digest(std::string_view digest, std::size_t n_bit)
    {
        const std::size_t digits = (n_bit + 3) / 4;
        std::string_view codes_part = digest, variant_part;
        if (auto dash = digest.find('-'); dash != std::string_view::npos)
        {
            codes_part = digest.substr(0, dash);
            variant_part = digest.substr(dash + 1);
        }
        if (codes_part.empty() || codes_part.size() % digits != 0)
            throw ValidationError("state digest length does not match " + std::to_string(n_bit) + "-bit rows");

        std::vector<std::uint32_t> codes;
        for (std::size_t i = 0; i < codes_part.size(); i += digits)
        {
            std::uint32_t c = 0;
            for (std::size_t d = 0; d < digits; ++d)
            {
                const char ch = codes_part[i + d];
                int v;
                if (ch >= '0' && ch <= '9')
                    v = ch - '0';
                else if (ch >= 'a' && ch <= 'f')
                    v = ch - 'a' + 10;
                else if (ch >= 'A' && ch <= 'F')
                    v = ch - 'A' + 10;
                else
                    throw ValidationError(std::string("invalid hex digit '") + ch + "' in state digest");
                c = (c << 4) | std::uint32_t(v);
            }
            codes.push_back(c);
        }
        StateMatrix m(n_bit, std::move(codes));
        if (!variant_part.empty())
        {
            if (variant_part.size() != m.rows())
                throw ValidationError("variant digest length does not match the row count");
            for (std::size_t r = 0; r < m.rows(); ++r)
            {
                const char ch = variant_part[r];
                if (ch < '0' || ch > '2')
                    throw ValidationError("invalid polarization variant digit in state digest");
                m.set_variant(r, static_cast<PolarizationVariant>(ch - '0'));
            }
        }
        return m;
    }
}

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

#include "ris/dps.hpp"
#include "ris/errors.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <cmath>

namespace ris::dps
{
    bool TwoPortSParams::is_finite() const
    {
        auto ok = [](cplx z)
        { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
        return ok(s11) && ok(s12) && ok(s21) && ok(s22);
    }

    double TwoPortSParams::max_singular_value() const
    {
        Eigen::Matrix2cd m;
        m << s11, s12, s21, s22;
        return Eigen::JacobiSVD<Eigen::Matrix2cd>(m).singularValues()(0);
    }

    StateCode::StateCode(std::vector<std::uint8_t> bits) : bits_(std::move(bits))
    {
        for (auto b : bits_)
            if (b > 1)
                throw ValidationError("state code entries must be 0 or 1");
    }

    StateCode StateCode::from_index(std::uint32_t index, std::size_t n_bit)
    {
        if (n_bit == 0 || n_bit > 31 || index >= (std::uint32_t(1) << n_bit))
            throw ValidationError("state index " + std::to_string(index) + " out of range for " +
                                  std::to_string(n_bit) + " bits");
        std::vector<std::uint8_t> bits(n_bit);
        for (std::size_t n = 0; n < n_bit; ++n)
            bits[n] = std::uint8_t((index >> (n_bit - 1 - n)) & 1u);
        return StateCode(std::move(bits));
    }

    StateCode StateCode::from_string(std::string_view text)
    {
        std::vector<std::uint8_t> bits;
        for (char c : text)
        {
            if (c == '0' || c == '1')
                bits.push_back(std::uint8_t(c - '0'));
            else if (c != ',' && c != ' ' && c != '(' && c != ')')
                throw ValidationError("invalid character in state code '" + std::string(text) + "'");
        }
        if (bits.empty())
            throw ValidationError("empty state code");
        return StateCode(std::move(bits));
    }

    std::uint32_t StateCode::index() const
    {
        std::uint32_t v = 0;
        for (auto b : bits_)
            v = (v << 1) | b;
        return v;
    }

    std::string StateCode::to_string() const
    {
        std::string s;
        for (auto b : bits_)
            s.push_back(char('0' + b));
        return s;
    }

    void DpsModel::validate() const
    {
        if (!std::isfinite(gamma0_db) || !std::isfinite(gamma0_deg))
            throw ValidationError("DPS reference term must be finite");
        if (orders.empty() || orders.size() > 16)
            throw ValidationError("DPS model needs between 1 and 16 orders");
        for (std::size_t n = 0; n < orders.size(); ++n)
        {
            const auto &o = orders[n];
            if (!std::isfinite(o.attenuation_db) || !std::isfinite(o.phase_deg))
                throw ValidationError("DPS order " + std::to_string(n + 1) + " must be finite");
            if (o.attenuation_db > 0.0)
                throw ValidationError("DPS order " + std::to_string(n + 1) + " attenuation must be <= 0 dB");
        }
    }

    DpsModel DpsModel::reference_4bit()
    {
        DpsModel m;
        m.orders = {{0.0, -356.0}, {-2.35, -178.0}, {-1.66, -96.0}, {-0.57, -33.0}};
        return m;
    }

    DpsModel DpsModel::ideal_uniform(std::size_t n_bit, double step_deg)
    {
        DpsModel m;
        for (std::size_t n = 0; n < n_bit; ++n)
            m.orders.push_back({0.0, step_deg * double(std::size_t(1) << (n_bit - 1 - n))});
        return m;
    }

    cplx cascade_reflection(const TwoPortSParams &s, const Termination &end)
    {
        const cplx denom = 1.0 - end.gamma_end * s.s22;
        if (std::abs(denom) <= 1e-12)
            throw DegenerateCascade("cascade denominator |1 - gamma_end*s22| vanishes");
        return s.s11 + s.s12 * end.gamma_end * s.s21 / denom;
    }

    cplx state_reflection(const DpsModel &model, const StateCode &code)
    {
        if (code.size() != model.n_bit())
            throw DimensionMismatch("state code has " + std::to_string(code.size()) + " bits, model has " +
                                    std::to_string(model.n_bit()));
        double mag_db = model.gamma0_db;
        double phase_deg = model.gamma0_deg;
        for (std::size_t n = 0; n < code.size(); ++n)
        {
            if (code[n])
            {
                mag_db += model.orders[n].attenuation_db;
                phase_deg += model.orders[n].phase_deg;
            }
        }
        return polar_deg(db_to_amplitude(mag_db), phase_deg);
    }

    std::vector<cplx> reflection_table(const DpsModel &model)
    {
        std::vector<cplx> table(model.n_states());
        for (std::uint32_t i = 0; i < table.size(); ++i)
            table[i] = state_reflection(model, StateCode::from_index(i, model.n_bit()));
        return table;
    }

    ModeSplit am_sm_split(const TwoPortSParams &a, cplx gamma)
    {
        const cplx denom = 1.0 - gamma * a.s11;
        if (std::abs(denom) <= 1e-12)
            throw DegenerateCascade("antenna-mode denominator |1 - gamma*S00| vanishes");
        return {a.s22, a.s21 * gamma * a.s12 / denom};
    }

    std::string model_to_json(const DpsModel &model, int indent)
    {
        nlohmann::ordered_json j;
        j["gamma0_db"] = model.gamma0_db;
        j["gamma0_deg"] = model.gamma0_deg;
        j["orders"] = nlohmann::ordered_json::array();
        for (const auto &o : model.orders)
            j["orders"].push_back({{"attenuation_db", o.attenuation_db}, {"phase_deg", o.phase_deg}});
        return j.dump(indent);
    }

    DpsModel model_from_json(std::string_view text)
    {
        nlohmann::json j;
        try
        {
            j = nlohmann::json::parse(text);
        }
        catch (const nlohmann::json::parse_error &e)
        {
            throw ParseError("<dps model>", e.what());
        }
        DpsModel m;
        try
        {
            m.gamma0_db = j.value("gamma0_db", 0.0);
            m.gamma0_deg = j.value("gamma0_deg", 0.0);
            if (!j.contains("orders") || !j["orders"].is_array())
                throw ParseError("orders", "missing or not an array");
            for (const auto &o : j["orders"])
                m.orders.push_back({o.at("attenuation_db").get<double>(), o.at("phase_deg").get<double>()});
        }
        catch (const nlohmann::json::exception &e)
        {
            throw ParseError("orders", e.what());
        }
        m.validate();
        return m;
    }
}

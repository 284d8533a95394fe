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

#ifndef RIS_DPS_HPP
#define RIS_DPS_HPP

#include "ris/units.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Digital phase shifter terminated by an open end (DPS-O): two-port cascade,
// binary weighted-sum state model, constrained LS fit, and the AM/SM split of
// an antenna loaded by that reflection coefficient.
namespace ris::dps
{
    // Scattering matrix of a two-port at a single frequency (linear, not dB)
    struct TwoPortSParams
    {
        cplx s11{}, s12{}, s21{}, s22{};
        double frequency_hz = 0.0;

        bool is_finite() const;

        // Largest singular value of [[s11, s12], [s21, s22]]
        double max_singular_value() const;
        bool is_passive(double tol = 1e-9) const { return max_singular_value() <= 1.0 + tol; }
    };

    struct Termination
    {
        cplx gamma_end{};

        // Open end -1, short end +1 (the reverse of the usual textbook
        // assignment), matched 50 Ohm load 0.
        static Termination open() { return {cplx(-1.0, 0.0)}; }
        static Termination shorted() { return {cplx(1.0, 0.0)}; }
        static Termination matched() { return {cplx(0.0, 0.0)}; }
    };

    // Binary control word (b1 ... bN). b1 is the most significant bit when the
    // code is converted to and from an integer index.
    class StateCode
    {
    public:
        StateCode() = default;
        explicit StateCode(std::vector<std::uint8_t> bits);

        static StateCode from_index(std::uint32_t index, std::size_t n_bit);
        static StateCode from_string(std::string_view bits); // e.g. "0101"

        std::size_t size() const { return bits_.size(); }
        std::uint8_t operator[](std::size_t n) const { return bits_[n]; }
        const std::vector<std::uint8_t> &bits() const { return bits_; }
        std::uint32_t index() const;
        std::string to_string() const;

        bool operator==(const StateCode &) const = default;

    private:
        std::vector<std::uint8_t> bits_;
    };

    struct DpsOrder
    {
        double attenuation_db = 0.0; // <= 0
        double phase_deg = 0.0;
    };

    // |Gamma|_dB = gamma0_db + sum b_n attenuation_n
    // arg Gamma  = gamma0_deg + sum b_n phase_n
    struct DpsModel
    {
        double gamma0_db = 0.0;
        double gamma0_deg = 0.0;
        std::vector<DpsOrder> orders;

        std::size_t n_bit() const { return orders.size(); }
        std::size_t n_states() const { return std::size_t(1) << orders.size(); }

        // Throws ValidationError on a positive order attenuation or non-finite value
        void validate() const;

        // Fitted 4-bit orders at 3.5 GHz, reference state 0 dB / 0 deg
        static DpsModel reference_4bit();

        // Lossless uniform quantizer: order n shifts by step_deg * 2^(N-1-n)
        static DpsModel ideal_uniform(std::size_t n_bit, double step_deg);
    };

    // Reflection coefficient seen at port 1 when port 2 is terminated:
    // s11 + s12 * gamma_end * s21 / (1 - gamma_end * s22).
    // Throws DegenerateCascade when |1 - gamma_end * s22| <= 1e-12.
    cplx cascade_reflection(const TwoPortSParams &s, const Termination &end);

    cplx state_reflection(const DpsModel &model, const StateCode &code);

    // Gamma for every code, indexed by StateCode::index()
    std::vector<cplx> reflection_table(const DpsModel &model);

    struct GammaSample
    {
        StateCode code;
        cplx gamma;
    };

    struct FitOptions
    {
        // Adjacent-state phase steps closer than this to +-180 deg are ambiguous
        double unwrap_margin_deg = 5.0;
    };

    struct FitResult
    {
        DpsModel model;
        double magnitude_rmse_db = 0.0;
        double phase_rmse_deg = 0.0;
    };

    // Least-squares fit of the weighted-sum model. Magnitudes are fitted in dB
    // with every order attenuation constrained to <= 0 (active-set); phases are
    // unwrapped along ascending code index before a plain LS fit.
    FitResult fit_dps_model(std::span<const GammaSample> samples, const FitOptions &options = {});

    // Splits the response of an antenna loaded by gamma into its structural
    // mode (load independent) and antenna mode (load dependent) parts.
    //
    // Aliasing: the antenna scattering matrix [[S00, S01], [S10, S11]] is
    // passed in a TwoPortSParams with s11 <- S00 (feed port), s12 <- S01,
    // s21 <- S10 and s22 <- S11 (metal surface).
    struct ModeSplit
    {
        cplx sm_gain;
        cplx am_gain;
        cplx total() const { return sm_gain + am_gain; }
    };
    ModeSplit am_sm_split(const TwoPortSParams &antenna_scattering, cplx gamma);

    // Structured model document: {"gamma0_db", "gamma0_deg", "orders": [{"attenuation_db", "phase_deg"}, ...]}
    std::string model_to_json(const DpsModel &model, int indent = 2);
    DpsModel model_from_json(std::string_view text);
}

#endif

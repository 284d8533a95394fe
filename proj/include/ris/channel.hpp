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

#ifndef RIS_CHANNEL_HPP
#define RIS_CHANNEL_HPP

#include "ris/antenna.hpp"
#include "ris/dps.hpp"
#include "ris/state_matrix.hpp"

#include <span>
#include <string>
#include <vector>

// Complex channel coefficients of a LoS link assisted by RIS elements:
// C = C_los + sum_n (C_am,n + C_sm,n). Each term carries sqrt(P^t * L) path
// gain, the polarimetric pattern responses of every antenna involved and the
// propagation phase.
namespace ris::channel
{
    using antenna::AnglePair;
    using antenna::Vec3;
    using Mat2c = Eigen::Matrix2cd;

    struct Pose
    {
        Vec3 position = Vec3::Zero(); // [m], GCS
        antenna::Orientation orientation;
        antenna::PatternPtr pattern;
        double initial_phase_deg = 0.0;

        // Throws ValidationError on a non-finite position or a missing pattern
        void validate() const;
    };

    struct RisElement
    {
        Pose pose;
        dps::DpsModel dps = dps::DpsModel::reference_4bit();
        double plate_width_m = 0.0;  // along the element's local y axis
        double plate_height_m = 0.0; // along the element's local z axis
        PolarizationVariant polarization_variant = PolarizationVariant::deg0;

        void validate() const;

        // Orientation of the element antenna, i.e. the pose rolled by the
        // polarization variant. The metal plate keeps pose.orientation.
        antenna::Orientation antenna_orientation(PolarizationVariant v) const;
        antenna::Orientation antenna_orientation() const { return antenna_orientation(polarization_variant); }
    };

    class LinkBudget
    {
    public:
        LinkBudget(double tx_power_w, double wavelength_m);
        static LinkBudget from_frequency(double frequency_hz, double tx_power_w = 1.0);

        double tx_power() const { return tx_power_; }
        double wavelength() const { return wavelength_; }
        double wave_number() const { return wave_number_; }

    private:
        double tx_power_;
        double wavelength_;
        double wave_number_;
    };

    struct SmTuning
    {
        double c_s = 1.0; // scattered field
        double c_r = 1.0; // reflected field
    };

    // Basis change between facing antennas: H reference flips sign
    inline Mat2c polarization_flip()
    {
        Mat2c m;
        m << 1.0, 0.0, 0.0, -1.0;
        return m;
    }

    // Free-space power ratio (lambda / (4 pi d))^2; throws ZeroDistance for d <= 0
    double path_loss(double distance_m, const LinkBudget &lb);

    cplx los_coefficient(const Pose &tx, const Pose &rx, const LinkBudget &lb);

    // gamma * E_ris(to_rx) * E_ris(to_tx)^T for the element antenna rolled by `variant`
    Mat2c am_polarization_matrix(const RisElement &e, cplx gamma, const AnglePair &to_rx, const AnglePair &to_tx,
                                 PolarizationVariant variant);
    inline Mat2c am_polarization_matrix(const RisElement &e, cplx gamma, const AnglePair &to_rx, const AnglePair &to_tx)
    {
        return am_polarization_matrix(e, gamma, to_rx, to_tx, e.polarization_variant);
    }

    cplx am_coefficient(const Pose &tx, const Pose &rx, const RisElement &e, const dps::StateCode &code,
                        const LinkBudget &lb);

    // Antenna-mode term for an explicit load reflection coefficient
    cplx am_coefficient_for_gamma(const Pose &tx, const Pose &rx, const RisElement &e, cplx gamma,
                                  const LinkBudget &lb, PolarizationVariant variant);
    inline cplx am_coefficient_for_gamma(const Pose &tx, const Pose &rx, const RisElement &e, cplx gamma,
                                         const LinkBudget &lb)
    {
        return am_coefficient_for_gamma(tx, rx, e, gamma, lb, e.polarization_variant);
    }

    // Physical-optics bistatic scattering of the element's PEC plate in the
    // (V, H) bases of `inc` (plate -> source) and `sca` (plate -> observer):
    //   M = -j (4 pi A / lambda^2) sinc(u) sinc(v) P
    // P is the reciprocal (symmetrized) projection of the induced current
    // n x (k_i x e_i) onto the scattered basis; u, v are the phase mismatch
    // across the two plate edges. |M|^2 = 4 pi sigma / lambda^2.
    // Throws BackIncidence when the source is not in front of the plate.
    Mat2c plate_scattering_matrix(const RisElement &e, const AnglePair &inc, const AnglePair &sca,
                                  const LinkBudget &lb);

    // Fresnel reflection of a perfect conductor in the ray-fixed (perp, par) basis
    Mat2c plate_reflection_matrix();

    // plate_reflection_matrix() mapped onto the (V, H) bases of inc and sca
    Mat2c reflection_polarization_matrix(const RisElement &e, const AnglePair &inc, const AnglePair &sca);

    cplx sm_coefficient(const Pose &tx, const Pose &rx, const RisElement &e, const SmTuning &tuning,
                        const LinkBudget &lb);

    struct ElementTerms
    {
        cplx los, am, sm;
        cplx total() const { return los + am + sm; }
    };

    ElementTerms element_terms(const Pose &tx, const Pose &rx, const RisElement &e, const dps::StateCode &code,
                               const SmTuning &tuning, const LinkBudget &lb);
    cplx element_coefficient(const Pose &tx, const Pose &rx, const RisElement &e, const dps::StateCode &code,
                             const SmTuning &tuning, const LinkBudget &lb);

    // LoS plus every element's AM and SM terms; row n of `states` drives
    // element n (code and, when attached, polarization variant).
    // Throws DimensionMismatch if the row count differs from the element count.
    cplx array_coefficient(const Pose &tx, const Pose &rx, std::span<const RisElement> elements,
                           const StateMatrix &states, const SmTuning &tuning, const LinkBudget &lb);

    // Pairs of scene objects closer than the single-antenna Fraunhofer
    // distance 2 D^2 / lambda; returns human-readable warnings.
    std::vector<std::string> fraunhofer_warnings(const Pose &tx, const Pose &rx, std::span<const RisElement> elements,
                                                 double antenna_size_m, const LinkBudget &lb);
}

#endif

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

#include "ris/channel.hpp"
#include "ris/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ris::channel
{
    namespace
    {
        struct Hop
        {
            double distance;
            AnglePair forward;  // from -> to
            AnglePair backward; // to -> from
        };

        Hop hop(const Vec3 &from, const Vec3 &to)
        {
            const Vec3 d = to - from;
            const double dist = d.norm();
            if (!(dist > 0.0))
                throw ZeroDistance("coincident positions in a propagation hop");
            return {dist, antenna::angles_of(d), antenna::angles_of(-d)};
        }

        antenna::Polarimetric response(const Pose &p, const AnglePair &a)
        {
            return antenna::rotated_pattern_response(*p.pattern, p.orientation, a).e;
        }

        antenna::Polarimetric element_response(const RisElement &e, PolarizationVariant v, const AnglePair &a)
        {
            return antenna::rotated_pattern_response(*e.pose.pattern, e.antenna_orientation(v), a).e;
        }

        cplx phase_term(double phase_deg) { return std::polar(1.0, -deg_to_rad(phase_deg)); }
        cplx propagation_term(double distance, const LinkBudget &lb) { return std::polar(1.0, -lb.wave_number() * distance); }

        double sinc(double x) { return std::abs(x) < 1e-12 ? 1.0 : std::sin(x) / x; }

        // P_pq = t_obs,p . (n x (k_i x t_src,q)), k_i = -dir(src)
        Eigen::Matrix2d current_projection(const Vec3 &normal, const AnglePair &src, const AnglePair &obs)
        {
            const Vec3 k_i = -antenna::direction_vector(src);
            const antenna::Basis t_src = antenna::spherical_basis(src);
            const antenna::Basis t_obs = antenna::spherical_basis(obs);
            Eigen::Matrix2d P;
            for (int q = 0; q < 2; ++q)
            {
                const Vec3 current = normal.cross(k_i.cross(Vec3(t_src.col(q))));
                for (int p = 0; p < 2; ++p)
                    P(p, q) = t_obs.col(p).dot(current);
            }
            return P;
        }
    }

    void Pose::validate() const
    {
        if (!position.allFinite())
            throw ValidationError("pose position must be finite");
        if (!pattern)
            throw ValidationError("pose has no radiation pattern");
        if (!std::isfinite(initial_phase_deg))
            throw ValidationError("initial phase must be finite");
    }

    void RisElement::validate() const
    {
        pose.validate();
        dps.validate();
        if (!(plate_width_m > 0.0) || !(plate_height_m > 0.0))
            throw ValidationError("RIS plate dimensions must be > 0");
    }

    antenna::Orientation RisElement::antenna_orientation(PolarizationVariant v) const
    {
        const double roll = variant_angle_deg(v);
        return roll == 0.0 ? pose.orientation : antenna::roll_about_boresight(pose.orientation, roll);
    }

    LinkBudget::LinkBudget(double tx_power_w, double wavelength_m)
        : tx_power_(tx_power_w), wavelength_(wavelength_m), wave_number_(2.0 * std::numbers::pi / wavelength_m)
    {
        if (!(wavelength_m > 0.0) || !std::isfinite(wavelength_m))
            throw ValidationError("wavelength must be > 0");
        if (!(tx_power_w > 0.0) || !std::isfinite(tx_power_w))
            throw ValidationError("transmit power must be > 0");
    }

    LinkBudget LinkBudget::from_frequency(double frequency_hz, double tx_power_w)
    {
        if (!(frequency_hz > 0.0))
            throw ValidationError("frequency must be > 0");
        return LinkBudget(tx_power_w, speed_of_light / frequency_hz);
    }

    double path_loss(double distance_m, const LinkBudget &lb)
    {
        if (!(distance_m > 0.0))
            throw ZeroDistance("path loss at non-positive distance");
        const double r = lb.wavelength() / (4.0 * std::numbers::pi * distance_m);
        return r * r;
    }

    cplx los_coefficient(const Pose &tx, const Pose &rx, const LinkBudget &lb)
    {
        const Hop h = hop(tx.position, rx.position);
        const auto e_t = response(tx, h.forward);
        const auto e_r = response(rx, h.backward);
        const cplx pol = (e_r.transpose() * polarization_flip() * e_t)(0, 0);
        return std::sqrt(lb.tx_power() * path_loss(h.distance, lb)) * pol *
               phase_term(tx.initial_phase_deg + rx.initial_phase_deg) * propagation_term(h.distance, lb);
    }

    Mat2c am_polarization_matrix(const RisElement &e, cplx gamma, const AnglePair &to_rx, const AnglePair &to_tx,
                                 PolarizationVariant variant)
    {
        return gamma * element_response(e, variant, to_rx) * element_response(e, variant, to_tx).transpose();
    }

    cplx am_coefficient_for_gamma(const Pose &tx, const Pose &rx, const RisElement &e, cplx gamma,
                                  const LinkBudget &lb, PolarizationVariant variant)
    {
        const Hop in = hop(tx.position, e.pose.position);
        const Hop out = hop(e.pose.position, rx.position);
        const auto e_t = response(tx, in.forward);
        const auto e_r = response(rx, out.backward);
        const Mat2c M_d = polarization_flip();
        const Mat2c M_am = am_polarization_matrix(e, gamma, out.forward, in.backward, variant);
        const cplx pol = (e_r.transpose() * M_d * M_am * M_d * e_t)(0, 0);
        return std::sqrt(lb.tx_power() * path_loss(out.distance, lb) * path_loss(in.distance, lb)) * pol *
               phase_term(tx.initial_phase_deg + rx.initial_phase_deg + e.pose.initial_phase_deg) *
               propagation_term(in.distance + out.distance, lb);
    }

    cplx am_coefficient(const Pose &tx, const Pose &rx, const RisElement &e, const dps::StateCode &code,
                        const LinkBudget &lb)
    {
        return am_coefficient_for_gamma(tx, rx, e, dps::state_reflection(e.dps, code), lb);
    }

    Mat2c plate_scattering_matrix(const RisElement &e, const AnglePair &inc, const AnglePair &sca,
                                  const LinkBudget &lb)
    {
        const antenna::Mat3 R = antenna::rotation_matrix(e.pose.orientation);
        const Vec3 normal = R.col(0), edge_w = R.col(1), edge_h = R.col(2);
        const Vec3 to_src = antenna::direction_vector(inc);
        if (!(normal.dot(to_src) > 0.0))
            throw BackIncidence("source lies behind the RIS plate");

        const Vec3 mismatch = to_src + antenna::direction_vector(sca); // k_s - k_i
        const double k = lb.wave_number();
        const double u = 0.5 * k * e.plate_width_m * mismatch.dot(edge_w);
        const double v = 0.5 * k * e.plate_height_m * mismatch.dot(edge_h);

        const Eigen::Matrix2d P =
            0.5 * (current_projection(normal, inc, sca) + current_projection(normal, sca, inc).transpose());
        const double area = e.plate_width_m * e.plate_height_m;
        const double lambda = lb.wavelength();
        const double scale = 4.0 * std::numbers::pi * area / (lambda * lambda) * sinc(u) * sinc(v);
        return cplx(0.0, -scale) * P.cast<cplx>();
    }

    Mat2c plate_reflection_matrix()
    {
        Mat2c m;
        m << -1.0, 0.0, 0.0, 1.0;
        return m;
    }

    Mat2c reflection_polarization_matrix(const RisElement &e, const AnglePair &inc, const AnglePair &sca)
    {
        const antenna::Mat3 R = antenna::rotation_matrix(e.pose.orientation);
        const Vec3 normal = R.col(0);
        const Vec3 k_i = -antenna::direction_vector(inc);
        const Vec3 k_s = antenna::direction_vector(sca);

        // perpendicular axis of the bistatic plane, with fallbacks for
        // collinear rays and for normal incidence
        Vec3 perp = k_i.cross(k_s);
        if (perp.norm() < 1e-9)
            perp = normal.cross(k_i);
        if (perp.norm() < 1e-9)
            perp = R.col(2);
        perp.normalize();
        const Vec3 par_i = perp.cross(k_i);
        const Vec3 par_s = perp.cross(k_s);

        const Mat2c Mr = plate_reflection_matrix();
        const Eigen::Matrix3cd J = Mr(0, 0) * (perp * perp.transpose()).cast<cplx>() +
                                   Mr(1, 1) * (par_s * par_i.transpose()).cast<cplx>();
        const antenna::Basis t_in = antenna::spherical_basis(inc);
        const antenna::Basis t_out = antenna::spherical_basis(sca);
        return t_out.transpose().cast<cplx>() * J * t_in.cast<cplx>();
    }

    cplx sm_coefficient(const Pose &tx, const Pose &rx, const RisElement &e, const SmTuning &tuning,
                        const LinkBudget &lb)
    {
        const Hop in = hop(tx.position, e.pose.position);
        const Hop out = hop(e.pose.position, rx.position);
        if (tuning.c_s == 0.0 && tuning.c_r == 0.0)
            return {};
        Mat2c M_sm = Mat2c::Zero();
        if (tuning.c_s != 0.0)
            M_sm += tuning.c_s * plate_scattering_matrix(e, in.backward, out.forward, lb);
        if (tuning.c_r != 0.0)
            M_sm += tuning.c_r * reflection_polarization_matrix(e, in.backward, out.forward);

        const auto e_t = response(tx, in.forward);
        const auto e_r = response(rx, out.backward);
        const Mat2c M_d = polarization_flip();
        const cplx pol = (e_r.transpose() * M_d * M_sm * M_d * e_t)(0, 0);
        return std::sqrt(lb.tx_power() * path_loss(out.distance, lb) * path_loss(in.distance, lb)) * pol *
               phase_term(tx.initial_phase_deg + rx.initial_phase_deg) *
               propagation_term(in.distance + out.distance, lb);
    }

    ElementTerms element_terms(const Pose &tx, const Pose &rx, const RisElement &e, const dps::StateCode &code,
                               const SmTuning &tuning, const LinkBudget &lb)
    {
        return {los_coefficient(tx, rx, lb), am_coefficient(tx, rx, e, code, lb), sm_coefficient(tx, rx, e, tuning, lb)};
    }

    cplx element_coefficient(const Pose &tx, const Pose &rx, const RisElement &e, const dps::StateCode &code,
                             const SmTuning &tuning, const LinkBudget &lb)
    {
        return element_terms(tx, rx, e, code, tuning, lb).total();
    }

    cplx array_coefficient(const Pose &tx, const Pose &rx, std::span<const RisElement> elements,
                           const StateMatrix &states, const SmTuning &tuning, const LinkBudget &lb)
    {
        if (states.rows() != elements.size())
            throw DimensionMismatch("state matrix has " + std::to_string(states.rows()) + " rows for " +
                                    std::to_string(elements.size()) + " elements");
        cplx total = los_coefficient(tx, rx, lb);
        for (std::size_t n = 0; n < elements.size(); ++n)
        {
            const RisElement &e = elements[n];
            if (states.n_bit() != e.dps.n_bit())
                throw DimensionMismatch("state width does not match the DPS of element " + std::to_string(n));
            const cplx gamma = dps::state_reflection(e.dps, states.state_code(n));
            const PolarizationVariant v = states.has_variants() ? states.variant(n) : e.polarization_variant;
            total += am_coefficient_for_gamma(tx, rx, e, gamma, lb, v);
            total += sm_coefficient(tx, rx, e, tuning, lb);
        }
        return total;
    }

    std::vector<std::string> fraunhofer_warnings(const Pose &tx, const Pose &rx, std::span<const RisElement> elements,
                                                 double antenna_size_m, const LinkBudget &lb)
    {
        const double limit = 2.0 * antenna_size_m * antenna_size_m / lb.wavelength();
        std::vector<std::string> out;
        auto check = [&](const Vec3 &a, const Vec3 &b, const std::string &what)
        {
            const double d = (a - b).norm();
            if (d < limit)
            {
                std::ostringstream msg;
                msg << what << " distance " << d << " m is below the Fraunhofer distance " << limit << " m";
                out.push_back(msg.str());
            }
        };
        check(tx.position, rx.position, "tx-rx");
        for (std::size_t n = 0; n < elements.size(); ++n)
        {
            check(tx.position, elements[n].pose.position, "tx-element " + std::to_string(n));
            check(rx.position, elements[n].pose.position, "rx-element " + std::to_string(n));
        }
        return out;
    }
}

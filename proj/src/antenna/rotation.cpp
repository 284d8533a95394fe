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

#include "ris/antenna.hpp"
#include "ris/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ris::antenna
{
    Orientation::Orientation(double rx_deg, double ry_deg, double rz_deg)
    {
        if (!std::isfinite(rx_deg) || !std::isfinite(ry_deg) || !std::isfinite(rz_deg))
            throw ValidationError("orientation angles must be finite");
        rx_ = wrap_deg(rx_deg);
        ry_ = wrap_deg(ry_deg);
        rz_ = wrap_deg(rz_deg);
    }

    Mat3 rotation_matrix(const Orientation &o)
    {
        const double sx = std::sin(deg_to_rad(o.rx())), cx = std::cos(deg_to_rad(o.rx()));
        const double sy = std::sin(deg_to_rad(o.ry())), cy = std::cos(deg_to_rad(o.ry()));
        const double sz = std::sin(deg_to_rad(o.rz())), cz = std::cos(deg_to_rad(o.rz()));
        Mat3 R;
        R << cz * cy, cz * sy * sx - sz * cx, cz * sy * cx + sz * sx,
            sz * cy, sz * sy * sx + cz * cx, sz * sy * cx - cz * sx,
            -sy, cy * sx, cy * cx;
        return R;
    }

    Orientation orientation_from_matrix(const Mat3 &R)
    {
        const double ry = std::asin(std::clamp(-R(2, 0), -1.0, 1.0));
        double rx = 0.0, rz = 0.0;
        if (std::abs(std::cos(ry)) > 1e-12)
        {
            rx = std::atan2(R(2, 1), R(2, 2));
            rz = std::atan2(R(1, 0), R(0, 0));
        }
        else // gimbal lock: fold everything into rz
            rz = std::atan2(-R(0, 1), R(1, 1));
        return {rad_to_deg(rx), rad_to_deg(ry), rad_to_deg(rz)};
    }

    Orientation rotate_about_global(const Orientation &o, const Vec3 &axis, double angle_deg)
    {
        const Mat3 turn = Eigen::AngleAxisd(deg_to_rad(angle_deg), axis.normalized()).toRotationMatrix();
        return orientation_from_matrix(turn * rotation_matrix(o));
    }

    Orientation roll_about_boresight(const Orientation &o, double angle_deg)
    {
        const Mat3 roll = Eigen::AngleAxisd(deg_to_rad(angle_deg), Vec3::UnitX()).toRotationMatrix();
        return orientation_from_matrix(rotation_matrix(o) * roll);
    }

    Vec3 direction_vector(const AnglePair &a)
    {
        const double th = deg_to_rad(a.theta), ph = deg_to_rad(a.phi);
        return {std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph), std::sin(th)};
    }

    AnglePair angles_of(const Vec3 &v)
    {
        const double norm = v.norm();
        if (!(norm > 0.0))
            throw ZeroDistance("direction of a zero-length vector");
        const Vec3 n = v / norm;
        const double theta = rad_to_deg(std::asin(std::clamp(n.z(), -1.0, 1.0)));
        const double phi = (std::abs(n.z()) > 1.0 - 1e-15) ? 0.0 : wrap_deg(rad_to_deg(std::atan2(n.y(), n.x())));
        return {theta, phi};
    }

    LocalAngles local_angles(const Mat3 &R, const AnglePair &a)
    {
        if (R == Mat3::Identity())
            return {a, false};
        const Vec3 s = R.transpose() * direction_vector(a);
        LocalAngles out;
        out.angles.theta = rad_to_deg(std::asin(std::clamp(s.z(), -1.0, 1.0)));
        if (std::abs(s.z()) > 1.0 - 1e-9)
        {
            out.pole_ambiguity = true;
            out.angles.phi = 0.0;
        }
        else
            out.angles.phi = wrap_deg(rad_to_deg(std::atan2(s.y(), s.x())));
        return out;
    }

    Basis spherical_basis(const AnglePair &a)
    {
        const double th = deg_to_rad(a.theta), ph = deg_to_rad(a.phi);
        Basis T;
        T << std::sin(th) * std::cos(ph), -std::sin(ph),
            std::sin(th) * std::sin(ph), std::cos(ph),
            -std::cos(th), 0.0;
        return T;
    }

    PatternResponse rotated_pattern_response(const RadiationPattern &p, const Mat3 &R, const AnglePair &a)
    {
        const LocalAngles local = local_angles(R, a);
        const Polarimetric e_local = p.sample(local.angles);
        const Eigen::Matrix2d M_o = spherical_basis(a).transpose() * R * spherical_basis(local.angles);
        return {M_o.cast<cplx>() * e_local, local.pole_ambiguity};
    }

    PatternResponse rotated_pattern_response(const RadiationPattern &p, const Orientation &o, const AnglePair &a)
    {
        if (o.is_zero())
            return {p.sample(a), false};
        return rotated_pattern_response(p, rotation_matrix(o), a);
    }
}

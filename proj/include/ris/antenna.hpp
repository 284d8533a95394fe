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

#ifndef RIS_ANTENNA_HPP
#define RIS_ANTENNA_HPP

#include "ris/units.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

// Polarimetric antenna patterns in a global coordinate system (GCS).
//
// Angle convention: theta is the elevation measured upward from the x-y
// plane, theta in [-90, 90]; phi is the azimuth from the +x axis, phi in
// (-180, 180]. All interfaces take degrees.
namespace ris::antenna
{
    using Vec3 = Eigen::Vector3d;
    using Mat3 = Eigen::Matrix3d;
    using Basis = Eigen::Matrix<double, 3, 2>; // columns: vertical, horizontal
    using Polarimetric = Eigen::Vector2cd;     // [E^V, E^H]

    // Rotation about the global x, y and z axes in degrees, applied in that
    // order (R = Rz * Ry * Rx). Angles are normalized to (-180, 180].
    class Orientation
    {
    public:
        Orientation() = default;
        Orientation(double rx_deg, double ry_deg, double rz_deg);

        double rx() const { return rx_; }
        double ry() const { return ry_; }
        double rz() const { return rz_; }
        bool is_zero() const { return rx_ == 0.0 && ry_ == 0.0 && rz_ == 0.0; }

    private:
        double rx_ = 0.0, ry_ = 0.0, rz_ = 0.0;
    };

    struct AnglePair
    {
        double theta = 0.0; // elevation [deg]
        double phi = 0.0;   // azimuth [deg]
    };

    Mat3 rotation_matrix(const Orientation &o);

    // Z-Y-X angles of a proper rotation matrix (inverse of rotation_matrix)
    Orientation orientation_from_matrix(const Mat3 &R);

    // Applies an extra rotation about a global axis on top of `o`
    Orientation rotate_about_global(const Orientation &o, const Vec3 &axis, double angle_deg);

    // Rolls the antenna about its own boresight (local +x)
    Orientation roll_about_boresight(const Orientation &o, double angle_deg);

    Vec3 direction_vector(const AnglePair &a);

    // Angle pair of a (non-zero) direction; phi is 0 on the poles
    AnglePair angles_of(const Vec3 &v);

    struct LocalAngles
    {
        AnglePair angles;
        bool pole_ambiguity = false; // |s_z| > 1 - 1e-9, phi forced to 0
    };

    // Direction `a` (GCS) seen from the frame of an antenna rotated by R
    LocalAngles local_angles(const Mat3 &R, const AnglePair &a);

    // 3x2 map from the (V, H) spherical basis at `a` to Cartesian coordinates
    Basis spherical_basis(const AnglePair &a);

    // Gridded complex pattern E = [E^V, E^H] over (theta, phi), immutable.
    // Values are amplitude gains: |E|^2 is the linear power gain.
    class RadiationPattern
    {
    public:
        // e_v / e_h are row-major: index = i_theta * phi_grid.size() + i_phi
        RadiationPattern(std::vector<double> theta_grid, std::vector<double> phi_grid,
                         std::vector<cplx> e_v, std::vector<cplx> e_h);

        const std::vector<double> &theta_grid() const { return theta_; }
        const std::vector<double> &phi_grid() const { return phi_; }
        const std::vector<cplx> &e_v() const { return ev_; }
        const std::vector<cplx> &e_h() const { return eh_; }

        // Bilinear interpolation of real and imaginary parts with phi wraparound
        Polarimetric sample(const AnglePair &a) const;

        // CSV `theta_deg,phi_deg,ev_re,ev_im,eh_re,eh_im`, one row per grid node
        static RadiationPattern load_csv(std::istream &in);
        static RadiationPattern load_csv_file(const std::string &path);
        void save_csv(std::ostream &out) const;

    private:
        std::vector<double> theta_, phi_;
        std::vector<cplx> ev_, eh_;
    };

    using PatternPtr = std::shared_ptr<const RadiationPattern>;

    inline Polarimetric sample_pattern(const RadiationPattern &p, const AnglePair &a) { return p.sample(a); }

    struct PatternResponse
    {
        Polarimetric e;
        bool pole_ambiguity = false;
    };

    // Pattern of an antenna with orientation `o`, read in the GCS at `a`:
    // T(a)^T * R * T(a~) * E(a~), a~ = local_angles(R, a)
    PatternResponse rotated_pattern_response(const RadiationPattern &p, const Orientation &o, const AnglePair &a);
    PatternResponse rotated_pattern_response(const RadiationPattern &p, const Mat3 &R, const AnglePair &a);

    // Patch-like stand-in pattern with boresight along local +x:
    //   |E^V| = g * sqrt((1 - b^2) * max(cos(angle from +x), 0)^2 + b^2)
    // with g = 10^(max_gain_dbi / 20) and b = 10^(-20/20) (back lobe 20 dB
    // down), and E^H = E^V * 10^(cross_pol_leakage_db / 20). A leakage of
    // -infinity gives an ideal vertically polarized pattern.
    RadiationPattern synthetic_patch_pattern(double max_gain_dbi, double cross_pol_leakage_db,
                                             double grid_step_deg = 1.0);

    // Direction-independent pattern, mostly useful in tests
    RadiationPattern uniform_pattern(cplx e_v, cplx e_h, double grid_step_deg = 10.0);
}

#endif

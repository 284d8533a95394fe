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

#ifndef RIS_UNITS_HPP
#define RIS_UNITS_HPP

#include <cmath>
#include <complex>
#include <numbers>

namespace ris
{
    using cplx = std::complex<double>;

    constexpr double speed_of_light = 299792458.0; // [m/s]

    constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
    constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

    // Wraps an angle in degrees to (-180, 180]
    inline double wrap_deg(double deg)
    {
        double w = std::fmod(deg, 360.0);
        if (w <= -180.0)
            w += 360.0;
        else if (w > 180.0)
            w -= 360.0;
        return w;
    }

    // Voltage-domain dB (20 log10)
    inline double db_to_amplitude(double db) { return std::pow(10.0, db / 20.0); }
    inline double amplitude_to_db(double amplitude) { return 20.0 * std::log10(amplitude); }

    inline cplx polar_deg(double magnitude, double phase_deg)
    {
        return std::polar(magnitude, deg_to_rad(phase_deg));
    }
}

#endif

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
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

namespace ris::antenna
{
    namespace
    {
        bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

        // Index i with grid[i] <= x <= grid[i+1] and the fractional position
        std::pair<std::size_t, double> bracket(const std::vector<double> &grid, double x)
        {
            if (x <= grid.front())
                return {0, 0.0};
            if (x >= grid.back())
                return {grid.size() - 2, 1.0};
            const auto it = std::upper_bound(grid.begin(), grid.end(), x);
            const std::size_t i = std::size_t(it - grid.begin()) - 1;
            return {i, (x - grid[i]) / (grid[i + 1] - grid[i])};
        }

        std::vector<double> regular_grid(double lo, double hi, double step)
        {
            const auto n = std::size_t(std::llround((hi - lo) / step));
            std::vector<double> g(n + 1);
            for (std::size_t i = 0; i <= n; ++i)
                g[i] = lo + (hi - lo) * double(i) / double(n);
            return g;
        }
    }

    RadiationPattern::RadiationPattern(std::vector<double> theta_grid, std::vector<double> phi_grid,
                                       std::vector<cplx> e_v, std::vector<cplx> e_h)
        : theta_(std::move(theta_grid)), phi_(std::move(phi_grid)), ev_(std::move(e_v)), eh_(std::move(e_h))
    {
        if (theta_.size() < 2 || phi_.size() < 2)
            throw ValidationError("pattern grid must be at least 2 x 2");
        if (ev_.size() != theta_.size() * phi_.size() || eh_.size() != ev_.size())
            throw ValidationError("pattern values do not match the grid size");
        for (std::size_t i = 0; i < theta_.size(); ++i)
        {
            if (!std::isfinite(theta_[i]) || theta_[i] < -90.0 || theta_[i] > 90.0)
                throw ValidationError("theta grid must lie in [-90, 90]");
            if (i > 0 && !(theta_[i] > theta_[i - 1]))
                throw ValidationError("theta grid must be strictly ascending");
        }
        for (std::size_t i = 0; i < phi_.size(); ++i)
        {
            if (!std::isfinite(phi_[i]) || phi_[i] < -180.0 || phi_[i] > 180.0)
                throw ValidationError("phi grid must lie in [-180, 180]");
            if (i > 0 && !(phi_[i] > phi_[i - 1]))
                throw ValidationError("phi grid must be strictly ascending");
        }
        for (std::size_t k = 0; k < ev_.size(); ++k)
            if (!finite(ev_[k]) || !finite(eh_[k]))
                throw ValidationError("pattern gains must be finite");
    }

    Polarimetric RadiationPattern::sample(const AnglePair &a) const
    {
        const auto [it, ft] = bracket(theta_, a.theta);

        // phi: regular bracket inside the grid, otherwise the wrap segment
        // between the last node and the first node + 360
        double phi = wrap_deg(a.phi);
        std::size_t ip0, ip1;
        double fp;
        if (phi >= phi_.front() && phi <= phi_.back())
        {
            const auto [i, f] = bracket(phi_, phi);
            ip0 = i;
            ip1 = i + 1;
            fp = f;
        }
        else
        {
            if (phi < phi_.front())
                phi += 360.0;
            const double span = phi_.front() + 360.0 - phi_.back();
            ip0 = phi_.size() - 1;
            ip1 = 0;
            fp = span > 0.0 ? (phi - phi_.back()) / span : 0.0;
        }

        const std::size_t np = phi_.size();
        auto lerp2 = [&](const std::vector<cplx> &v)
        {
            const cplx a00 = v[it * np + ip0], a01 = v[it * np + ip1];
            const cplx a10 = v[(it + 1) * np + ip0], a11 = v[(it + 1) * np + ip1];
            return (1.0 - ft) * ((1.0 - fp) * a00 + fp * a01) + ft * ((1.0 - fp) * a10 + fp * a11);
        };
        return {lerp2(ev_), lerp2(eh_)};
    }

    RadiationPattern RadiationPattern::load_csv(std::istream &in)
    {
        std::string line;
        std::size_t line_no = 0;
        if (!std::getline(in, line))
            throw SyntaxError(1, "empty pattern file");
        ++line_no;
        line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c)
                                  { return std::isspace(c); }),
                   line.end());
        if (line != "theta_deg,phi_deg,ev_re,ev_im,eh_re,eh_im")
            throw SyntaxError(1, "expected header theta_deg,phi_deg,ev_re,ev_im,eh_re,eh_im");

        std::map<std::pair<double, double>, std::pair<cplx, cplx>> nodes;
        while (std::getline(in, line))
        {
            ++line_no;
            if (line.find_first_not_of(" \t\r") == std::string::npos)
                continue;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream ls(line);
            double v[6];
            for (double &x : v)
                if (!(ls >> x))
                    throw SyntaxError(line_no, "expected 6 numeric fields");
            std::string extra;
            if (ls >> extra)
                throw SyntaxError(line_no, "expected 6 numeric fields");
            if (v[0] < -90.0 - 1e-9 || v[0] > 90.0 + 1e-9)
                throw SyntaxError(line_no, "theta outside [-90, 90]");
            const std::pair<double, double> key{std::clamp(v[0], -90.0, 90.0), wrap_deg(v[1])};
            if (!nodes.emplace(key, std::pair{cplx(v[2], v[3]), cplx(v[4], v[5])}).second)
                throw SyntaxError(line_no, "duplicate grid node");
        }

        std::vector<double> thetas, phis;
        for (const auto &[key, _] : nodes)
        {
            thetas.push_back(key.first);
            phis.push_back(key.second);
        }
        std::sort(thetas.begin(), thetas.end());
        thetas.erase(std::unique(thetas.begin(), thetas.end()), thetas.end());
        std::sort(phis.begin(), phis.end());
        phis.erase(std::unique(phis.begin(), phis.end()), phis.end());
        if (nodes.size() != thetas.size() * phis.size())
            throw ValidationError("pattern file does not cover the full theta x phi grid");

        std::vector<cplx> ev, eh;
        ev.reserve(nodes.size());
        eh.reserve(nodes.size());
        for (double th : thetas)
        {
            const bool pole = std::abs(std::abs(th) - 90.0) < 1e-9;
            cplx mean_v{}, mean_h{};
            if (pole)
            {
                for (double ph : phis)
                {
                    mean_v += nodes.at({th, ph}).first;
                    mean_h += nodes.at({th, ph}).second;
                }
                mean_v /= double(phis.size());
                mean_h /= double(phis.size());
            }
            for (double ph : phis)
            {
                const auto &val = nodes.at({th, ph});
                ev.push_back(pole ? mean_v : val.first);
                eh.push_back(pole ? mean_h : val.second);
            }
        }
        return RadiationPattern(std::move(thetas), std::move(phis), std::move(ev), std::move(eh));
    }

    RadiationPattern RadiationPattern::load_csv_file(const std::string &path)
    {
        std::ifstream f(path);
        if (!f)
            throw IoError("cannot open pattern file " + path);
        return load_csv(f);
    }

    void RadiationPattern::save_csv(std::ostream &out) const
    {
        out << "theta_deg,phi_deg,ev_re,ev_im,eh_re,eh_im\n";
        out << std::setprecision(17);
        for (std::size_t i = 0; i < theta_.size(); ++i)
            for (std::size_t j = 0; j < phi_.size(); ++j)
            {
                const std::size_t k = i * phi_.size() + j;
                out << theta_[i] << ',' << phi_[j] << ',' << ev_[k].real() << ',' << ev_[k].imag() << ','
                    << eh_[k].real() << ',' << eh_[k].imag() << '\n';
            }
    }

    RadiationPattern synthetic_patch_pattern(double max_gain_dbi, double cross_pol_leakage_db, double grid_step_deg)
    {
        if (!(cross_pol_leakage_db <= 0.0))
            throw ValidationError("cross-polarization leakage must be <= 0 dB");
        if (!std::isfinite(max_gain_dbi))
            throw ValidationError("maximum gain must be finite");
        if (!(grid_step_deg > 0.0) || grid_step_deg > 90.0)
            throw ValidationError("pattern grid step must be in (0, 90] degrees");

        const double g = db_to_amplitude(max_gain_dbi);
        const double back = db_to_amplitude(-20.0);
        const double leak = std::isinf(cross_pol_leakage_db) ? 0.0 : db_to_amplitude(cross_pol_leakage_db);

        std::vector<double> thetas = regular_grid(-90.0, 90.0, grid_step_deg);
        std::vector<double> phis = regular_grid(-180.0, 180.0, grid_step_deg);
        phis.erase(phis.begin()); // (-180, 180]

        std::vector<cplx> ev, eh;
        ev.reserve(thetas.size() * phis.size());
        eh.reserve(ev.capacity());
        for (double th : thetas)
            for (double ph : phis)
            {
                // cos of the angle from boresight; exactly 0 on the poles
                const bool pole = std::abs(std::abs(th) - 90.0) < 1e-12;
                const double c = pole ? 0.0 : std::cos(deg_to_rad(th)) * std::cos(deg_to_rad(ph));
                const double front = std::max(c, 0.0);
                const double amp = g * std::sqrt((1.0 - back * back) * front * front + back * back);
                ev.emplace_back(amp, 0.0);
                eh.emplace_back(amp * leak, 0.0);
            }
        return RadiationPattern(std::move(thetas), std::move(phis), std::move(ev), std::move(eh));
    }

    RadiationPattern uniform_pattern(cplx e_v, cplx e_h, double grid_step_deg)
    {
        std::vector<double> thetas = regular_grid(-90.0, 90.0, grid_step_deg);
        std::vector<double> phis = regular_grid(-180.0, 180.0, grid_step_deg);
        phis.erase(phis.begin());
        const std::size_t n = thetas.size() * phis.size();
        return RadiationPattern(std::move(thetas), std::move(phis), std::vector<cplx>(n, e_v),
                                std::vector<cplx>(n, e_h));
    }
}

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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace ris::dps
{
    namespace
    {
        // min 0.5*|A x - y|^2  s.t.  x_n <= 0 for every n in `bounded`.
        // Active set: solve on the free columns, clamp violators to zero,
        // release a clamped entry once its gradient says it wants to go negative.
        Eigen::VectorXd bounded_least_squares(const Eigen::MatrixXd &A, const Eigen::VectorXd &y,
                                              const std::vector<bool> &bounded)
        {
            const Eigen::Index n = A.cols();
            std::vector<bool> clamped(std::size_t(n), false);
            Eigen::VectorXd x = Eigen::VectorXd::Zero(n);

            const double scale = std::max(1.0, y.cwiseAbs().maxCoeff()) * double(A.rows());
            for (int iter = 0; iter < 8 * int(n) + 8; ++iter)
            {
                std::vector<Eigen::Index> free_cols;
                for (Eigen::Index c = 0; c < n; ++c)
                    if (!clamped[std::size_t(c)])
                        free_cols.push_back(c);

                Eigen::MatrixXd Af(A.rows(), Eigen::Index(free_cols.size()));
                for (std::size_t k = 0; k < free_cols.size(); ++k)
                    Af.col(Eigen::Index(k)) = A.col(free_cols[k]);

                x.setZero();
                if (!free_cols.empty())
                {
                    const Eigen::VectorXd xf = Af.colPivHouseholderQr().solve(y);
                    for (std::size_t k = 0; k < free_cols.size(); ++k)
                        x(free_cols[k]) = xf(Eigen::Index(k));
                }

                bool violated = false;
                for (Eigen::Index c = 0; c < n; ++c)
                {
                    if (bounded[std::size_t(c)] && !clamped[std::size_t(c)] && x(c) > 0.0)
                    {
                        clamped[std::size_t(c)] = true;
                        violated = true;
                    }
                }
                if (violated)
                    continue;

                // KKT check on the clamped set
                const Eigen::VectorXd grad = A.transpose() * (A * x - y);
                Eigen::Index release = -1;
                double worst = 1e-12 * scale;
                for (Eigen::Index c = 0; c < n; ++c)
                {
                    if (clamped[std::size_t(c)] && grad(c) > worst)
                    {
                        worst = grad(c);
                        release = c;
                    }
                }
                if (release < 0)
                    return x;
                clamped[std::size_t(release)] = false;
            }
            return x;
        }

        double rmse(const Eigen::VectorXd &r)
        {
            return r.size() ? std::sqrt(r.squaredNorm() / double(r.size())) : 0.0;
        }
    }

    FitResult fit_dps_model(std::span<const GammaSample> samples, const FitOptions &options)
    {
        if (samples.empty())
            throw InsufficientSamples("no samples");
        const std::size_t n_bit = samples.front().code.size();
        std::set<std::uint32_t> distinct;
        for (const auto &s : samples)
        {
            if (s.code.size() != n_bit)
                throw DimensionMismatch("samples mix state codes of different widths");
            if (!(std::abs(s.gamma) > 0.0) || !std::isfinite(std::abs(s.gamma)))
                throw ValidationError("sample for code " + s.code.to_string() + " has zero or non-finite magnitude");
            distinct.insert(s.code.index());
        }
        if (distinct.size() < n_bit + 1)
            throw InsufficientSamples("need at least " + std::to_string(n_bit + 1) + " distinct codes, got " +
                                      std::to_string(distinct.size()));

        // Ascending code order drives the phase unwrap
        std::vector<std::size_t> order(samples.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b)
                         { return samples[a].code.index() < samples[b].code.index(); });

        const auto rows = Eigen::Index(samples.size());
        const auto cols = Eigen::Index(n_bit + 1);
        Eigen::MatrixXd A(rows, cols);
        Eigen::VectorXd mag_db(rows), phase_deg(rows);

        double prev_wrapped = 0.0, unwrapped = 0.0;
        for (Eigen::Index r = 0; r < rows; ++r)
        {
            const auto &s = samples[order[std::size_t(r)]];
            A(r, 0) = 1.0;
            for (std::size_t n = 0; n < n_bit; ++n)
                A(r, Eigen::Index(n + 1)) = s.code[n];
            mag_db(r) = amplitude_to_db(std::abs(s.gamma));

            const double wrapped = rad_to_deg(std::arg(s.gamma));
            if (r == 0)
                unwrapped = wrapped;
            else
            {
                const double step = wrap_deg(wrapped - prev_wrapped);
                if (std::abs(step) > 180.0 - options.unwrap_margin_deg)
                    throw UnwrapFailure("phase step of " + std::to_string(step) + " deg between codes " +
                                        samples[order[std::size_t(r - 1)]].code.to_string() + " and " +
                                        s.code.to_string() + " is ambiguous");
                unwrapped += step;
            }
            prev_wrapped = wrapped;
            phase_deg(r) = unwrapped;
        }

        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
        if (qr.rank() < cols)
            throw InsufficientSamples("sampled codes do not identify every order (design rank " +
                                      std::to_string(qr.rank()) + " < " + std::to_string(cols) + ")");

        std::vector<bool> bounded(std::size_t(cols), true);
        bounded[0] = false;
        const Eigen::VectorXd mag = bounded_least_squares(A, mag_db, bounded);
        const Eigen::VectorXd ph = qr.solve(phase_deg);

        FitResult result;
        result.model.gamma0_db = mag(0);
        result.model.gamma0_deg = ph(0);
        for (std::size_t n = 0; n < n_bit; ++n)
            result.model.orders.push_back({mag(Eigen::Index(n + 1)), ph(Eigen::Index(n + 1))});
        result.magnitude_rmse_db = rmse(A * mag - mag_db);
        result.phase_rmse_deg = rmse(A * ph - phase_deg);
        return result;
    }
}

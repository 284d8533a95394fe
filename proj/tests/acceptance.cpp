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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "fixtures.hpp"

#include "ris/antenna.hpp"
#include "ris/channel.hpp"
#include "ris/controller.hpp"
#include "ris/dps.hpp"
#include "ris/rng.hpp"
#include "ris/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>

using namespace ris;

namespace
{
    // exhaustive_pmf best-worst spread on configs/default_scene.json, frozen after the first run
    constexpr double pmf_spread_regression_db = 18.504218;

    struct Outcome
    {
        bool pass = false;
        std::string detail;
    };

    std::filesystem::path config_path(const std::string &name) { return std::filesystem::path(RIS_CONFIG_DIR) / name; }

    std::string fmt(const char *f, double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, f, v);
        return buf;
    }

    int failures = 0;

    void run(int id, const std::string &title, double limit_s, const std::function<Outcome()> &body)
    {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = body();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < limit_s;
        const bool ok = o.pass && in_time;
        failures += !ok;
        std::printf("%s criterion %d: %s | %s | %.2f s (limit %.0f s)%s\n", ok ? "PASS" : "FAIL", id, title.c_str(),
                    o.detail.c_str(), secs, limit_s, in_time ? "" : " over time limit");
        std::fflush(stdout);
    }

    const scenario::SideTable &side(const scenario::ExperimentOutput &out, const std::string &name)
    {
        for (const auto &s : out.side)
            if (s.name == name)
                return s;
        throw std::runtime_error("missing side table " + name);
    }

    Outcome phase_doubling()
    {
        double worst = 0.0;
        for (std::uint32_t i = 0; i < 16; ++i)
        {
            const double phi = -170.0 + 22.5 * i + 0.123 * i * i;
            dps::TwoPortSParams s;
            s.s12 = s.s21 = polar_deg(0.97, phi);
            for (const auto end : {dps::Termination::open(), dps::Termination::shorted()})
            {
                const cplx g = dps::cascade_reflection(s, end) / end.gamma_end;
                worst = std::max(worst, std::abs(wrap_deg(rad_to_deg(std::arg(g)) - 2.0 * phi)));
            }
        }
        return {worst <= 1e-9, "max |arg - 2 phi| = " + fmt("%.3g", worst) + " deg over 16 states, both ends"};
    }

    std::vector<dps::GammaSample> synth(const dps::DpsModel &m, std::uint64_t seed, double mag_db, double phase_deg)
    {
        std::vector<dps::GammaSample> s;
        for (std::uint32_t i = 0; i < m.n_states(); ++i)
        {
            const auto c = dps::StateCode::from_index(i, m.n_bit());
            const cplx g = dps::state_reflection(m, c);
            const double dm = mag_db * (2.0 * rng::uniform(seed, 3, i) - 1.0);
            const double dp = phase_deg * (2.0 * rng::uniform(seed, 4, i) - 1.0);
            s.push_back({c, polar_deg(std::abs(g) * db_to_amplitude(dm), rad_to_deg(std::arg(g)) + dp)});
        }
        return s;
    }

    std::pair<double, double> param_error(const dps::DpsModel &a, const dps::DpsModel &b)
    {
        double db = std::abs(a.gamma0_db - b.gamma0_db), deg = std::abs(wrap_deg(a.gamma0_deg - b.gamma0_deg));
        for (std::size_t n = 0; n < a.n_bit(); ++n)
        {
            db = std::max(db, std::abs(a.orders[n].attenuation_db - b.orders[n].attenuation_db));
            deg = std::max(deg, std::abs(a.orders[n].phase_deg - b.orders[n].phase_deg));
        }
        return {db, deg};
    }

    Outcome fit_fidelity()
    {
        auto lossy = dps::DpsModel::ideal_uniform(4, 22.5);
        lossy.gamma0_db = -0.4;
        lossy.orders[1].attenuation_db = -1.1;
        double clean_db = 0.0, clean_deg = 0.0;
        for (const auto &m : {dps::DpsModel::reference_4bit(), lossy})
        {
            const auto [db, deg] = param_error(dps::fit_dps_model(synth(m, 0, 0.0, 0.0)).model, m);
            clean_db = std::max(clean_db, db);
            clean_deg = std::max(clean_deg, deg);
        }
        double noisy_db = 0.0, noisy_deg = 0.0;
        const auto truth = dps::DpsModel::reference_4bit();
        for (std::uint64_t seed = 0; seed < 100; ++seed)
        {
            const auto [db, deg] = param_error(dps::fit_dps_model(synth(truth, seed, 0.1, 2.0)).model, truth);
            noisy_db = std::max(noisy_db, db);
            noisy_deg = std::max(noisy_deg, deg);
        }
        const bool ok = clean_db <= 1e-9 && clean_deg <= 1e-9 && noisy_db <= 0.3 && noisy_deg <= 6.0;
        return {ok, "noiseless max err " + fmt("%.2g", clean_db) + " dB / " + fmt("%.2g", clean_deg) +
                        " deg; noisy (100 seeds) max err " + fmt("%.3f", noisy_db) + " dB / " + fmt("%.3f", noisy_deg) +
                        " deg"};
    }

    Outcome rotation_algebra()
    {
        double worst = 0.0;
        for (std::uint64_t i = 0; i < 1000; ++i)
        {
            const antenna::Orientation o(360.0 * rng::uniform(31, 0, i) - 180.0, 360.0 * rng::uniform(31, 1, i) - 180.0,
                                         360.0 * rng::uniform(31, 2, i) - 180.0);
            const antenna::AnglePair a{180.0 * rng::uniform(31, 3, i) - 90.0, 360.0 * rng::uniform(31, 4, i) - 180.0};
            const antenna::Mat3 R = antenna::rotation_matrix(o);
            worst = std::max(worst, (R.transpose() * R - antenna::Mat3::Identity()).norm());
            worst = std::max(worst, std::abs(R.determinant() - 1.0));
            const antenna::Basis T = antenna::spherical_basis(a);
            worst = std::max(worst, (T.transpose() * T - Eigen::Matrix2d::Identity()).norm());
            worst = std::max(worst, (T.transpose() * antenna::direction_vector(a)).norm());
            const auto l = antenna::local_angles(R, a);
            worst = std::max(worst, (antenna::direction_vector(l.angles) - R.transpose() * antenna::direction_vector(a)).norm());
        }
        return {worst <= 1e-12, "max residual " + fmt("%.3g", worst) + " over 1000 samples"};
    }

    double state_spread(const scenario::ScenarioConfig &cfg)
    {
        const auto out = scenario::run_experiment(cfg, scenario::Experiment::dps_state_sweep);
        double lo = 1e300, hi = -1e300;
        for (const auto &r : out.table.rows())
        {
            lo = std::min(lo, r.quality_db);
            hi = std::max(hi, r.quality_db);
        }
        return hi - lo;
    }

    Outcome polarization_null()
    {
        using namespace channel;
        const auto ideal = std::make_shared<const antenna::RadiationPattern>(
            antenna::synthetic_patch_pattern(6.0, -std::numeric_limits<double>::infinity()));
        const auto lb = LinkBudget::from_frequency(3.5e9);
        const Pose tx{{0, 0, 0}, {}, ideal, 0.0};
        const Pose rx{{1.0, 0, 0}, {0, 0, 180}, ideal, 0.0};
        Pose rolled = rx;
        rolled.orientation = antenna::roll_about_boresight(rx.orientation, 90.0);
        const double ratio = std::abs(los_coefficient(tx, rolled, lb)) / std::abs(los_coefficient(tx, rx, lb));

        auto cfg = scenario::load_config_file(config_path("tabletop_single_element.json"));
        const double spread = state_spread(cfg);
        const auto &o = cfg.ris.pose.orientation_deg;
        const auto turned = antenna::rotate_about_global({o.x(), o.y(), o.z()}, antenna::Vec3::UnitY(), 90.0);
        cfg.ris.pose.orientation_deg = {turned.rx(), turned.ry(), turned.rz()};
        const double collapsed = state_spread(cfg);
        return {ratio < 1e-12 && spread > 3.0 && collapsed < 0.5,
                "LoS ratio " + fmt("%.3g", ratio) + "; 16-state spread " + fmt("%.2f", spread) + " dB -> " +
                    fmt("%.3f", collapsed) + " dB after 90 deg element rotation"};
    }

    // Unimodal with a low-quality tail: on 1 dB bins (ignoring bins under 0.5 %
    // probability) counts rise to the mode and fall after it, and the mode sits
    // closer to the best state than to the worst.
    bool unimodal_with_tail(const scenario::SideTable &h, double best, double worst, std::string &why)
    {
        std::vector<std::pair<double, double>> bins; // (centre, probability)
        for (const auto &r : h.rows)
            if (r[3] >= 0.005)
                bins.emplace_back(0.5 * (r[0] + r[1]), r[3]);
        const auto mode = std::max_element(bins.begin(), bins.end(), [](auto &a, auto &b) { return a.second < b.second; });
        for (auto it = bins.begin(); it + 1 <= mode && it != mode; ++it)
            if ((it + 1)->second < it->second)
            {
                why = "dip before mode at " + fmt("%.1f", it->first) + " dB";
                return false;
            }
        for (auto it = mode; it + 1 != bins.end(); ++it)
            if ((it + 1)->second > it->second)
            {
                why = "rise after mode at " + fmt("%.1f", (it + 1)->first) + " dB";
                return false;
            }
        why = "mode " + fmt("%.1f", mode->first) + " dB";
        if (best - mode->first > mode->first - worst)
        {
            why += " closer to the worst state";
            return false;
        }
        return true;
    }

    Outcome exhaustive_pmf()
    {
        auto cfg = scenario::load_config_file(config_path("default_scene.json"));
        cfg.exhaustive.threads = 1;
        const auto out = scenario::run_experiment(cfg, scenario::Experiment::exhaustive_pmf);
        std::vector<double> q;
        for (const auto &r : out.table.rows())
            q.push_back(r.quality_db);
        const double best = *std::max_element(q.begin(), q.end()), worst = *std::min_element(q.begin(), q.end());
        const double spread = best - worst;
        std::string why;
        const bool shape = unimodal_with_tail(scenario::quality_histogram(q, 1.0), best, worst, why);
        const bool regression = std::abs(spread - pmf_spread_regression_db) < 1e-5;
        return {q.size() == 65536 && shape && spread > 6.0 && regression,
                std::to_string(q.size()) + " states; spread " + fmt("%.6f", spread) + " dB (best " + fmt("%.2f", best) +
                    ", worst " + fmt("%.2f", worst) + "); " + why + (regression ? "" : "; regression constant mismatch")};
    }

    Outcome bg_percentile()
    {
        auto cfg = scenario::load_config_file(config_path("default_scene.json"));
        cfg.codebook.clear();
        const channel::LinkModel m(scenario::build_scene(cfg).scene);
        std::vector<double> sample;
        for (std::uint64_t i = 0; i < 10000; ++i)
        {
            StateMatrix s(16, 4);
            for (std::size_t n = 0; n < 16; ++n)
                s.set_code(n, static_cast<std::uint32_t>(rng::uniform_index(4242, 1, i * 16 + n, 16)));
            sample.push_back(controller::received_quality(m, s));
        }
        std::sort(sample.begin(), sample.end());
        const double p99 = sample[sample.size() - 100]; // 100 samples at or above
        int good = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed)
        {
            const double q = controller::blind_greedy(m, controller::BgParams::full(4, 100, 3, seed)).quality_db;
            good += static_cast<std::size_t>(sample.end() - std::upper_bound(sample.begin(), sample.end(), q)) < 100;
        }
        return {good >= 90, std::to_string(good) + "/100 seeds in the top 1 % (threshold " + fmt("%.2f", p99) + " dB)"};
    }

    Outcome controller_ordering()
    {
        const auto cfg = scenario::load_config_file(config_path("matched_trajectory.json"));
        const auto out = scenario::run_experiment(cfg, scenario::Experiment::controller_comparison);
        const auto &c = side(out, "curves");
        std::size_t perfect_ok = 0, bg_wins = 0;
        for (const auto &r : c.rows)
        {
            perfect_ok += r[4] >= r[5];
            bg_wins += r[5] >= r[6];
        }
        const double frac = double(bg_wins) / double(c.rows.size());
        return {perfect_ok == c.rows.size() && frac >= 0.6,
                "perfect >= BG at " + std::to_string(perfect_ok) + "/" + std::to_string(c.rows.size()) +
                    "; BG >= DPS beamforming at " + std::to_string(bg_wins) + "/" + std::to_string(c.rows.size())};
    }

    Outcome polarization_selection()
    {
        const auto cfg = scenario::load_config_file(config_path("rotating_trajectory.json"));
        const auto out = scenario::run_experiment(cfg, scenario::Experiment::polarization_comparison);
        const auto &c = side(out, "curves");
        const auto &t = *cfg.trajectory;
        const std::size_t n = t.size();
        bool ok = true;
        std::string detail;
        std::size_t found = 0;
        for (std::size_t i = 0; i < n; ++i)
        {
            const double angle = t.rotate_start_deg + (t.rotate_end_deg - t.rotate_start_deg) * double(i) / double(n - 1);
            if (std::abs(std::abs(wrap_deg(angle)) - 90.0) > 1e-9)
                continue;
            const double gain = c.rows[i][6];
            ok = ok && gain >= 10.0 && gain <= 20.0;
            detail += (found++ ? "; " : "") + std::string("location ") + std::to_string(i) + " (r_x " +
                      fmt("%.0f", angle) + " deg): +" + fmt("%.2f", gain) + " dB";
        }
        return {ok && found > 0, detail};
    }

    struct TrackingCheck
    {
        bool zero_ok = true, monotone = true, endpoint_max = true;
        std::string curve;
        std::size_t first_dip = 0;
    };

    TrackingCheck tracking_check(controller::TrackingPolicy policy)
    {
        auto cfg = scenario::load_config_file(config_path("matched_trajectory.json"));
        cfg.tracking.seeds = 20;
        cfg.tracking.policy = policy;
        const auto out = scenario::run_experiment(cfg, scenario::Experiment::tracking_sweep);
        TrackingCheck c;
        for (const auto &r : out.table.rows())
            if (r.method.starts_with("tracked_a0.0000_"))
                c.zero_ok = c.zero_ok && r.relative_loss_db == 0.0;
        const auto &s = side(out, "summary");
        double peak = -1e300;
        for (std::size_t i = 0; i < s.rows.size(); ++i)
        {
            const double v = s.rows[i][1];
            if (i > 0 && v < s.rows[i - 1][1] && c.monotone)
            {
                c.monotone = false;
                c.first_dip = i;
            }
            peak = std::max(peak, v);
            c.curve += (i ? " " : "") + fmt("%.3f", v);
        }
        c.endpoint_max = s.rows.back()[1] >= peak;
        return c;
    }

    Outcome tracking_monotonicity()
    {
        const auto g = tracking_check(controller::TrackingPolicy::greedy_only);
        const auto h = tracking_check(controller::TrackingPolicy::hold);
        std::printf("INFO criterion 9 (hold policy): zero %s, non-decreasing %s, endpoint max %s | mean loss dB: %s\n",
                    h.zero_ok ? "yes" : "no", h.monotone ? "yes" : "no", h.endpoint_max ? "yes" : "no", h.curve.c_str());
        std::string d = std::string("zero at 0 m ") + (g.zero_ok ? "yes" : "no") + ", non-decreasing " +
                        (g.monotone ? "yes" : "no (first drop at index " + std::to_string(g.first_dip) + ")") +
                        ", endpoint max " + (g.endpoint_max ? "yes" : "no") + " | mean loss dB: " + g.curve;
        return {g.zero_ok && g.monotone && g.endpoint_max, d};
    }

    Outcome oracle_equivalence()
    {
        // 1-bit DPS: both states, the reference included, form the whole search space
        dps::DpsModel one_bit;
        one_bit.orders = {dps::DpsModel::reference_4bit().orders[1]};
        const std::vector<std::uint32_t> codes{0, 1};
        controller::BgParams p;
        p.t_r = 64;
        p.t_g = 3;
        p.codebook = p.per_element_states = codes;
        int optimal = 0;
        bool gs_ok = true;
        for (std::uint64_t seed = 0; seed < 50; ++seed)
        {
            auto cfg = fixtures::random_config(1, 2, 1000 + seed);
            cfg.dps = one_bit;
            const channel::LinkModel m(fixtures::scene_of(cfg));
            const auto ex = controller::exhaustive_search(m, codes);
            for (std::uint64_t i = 0; i < 4; ++i)
            {
                const auto start = controller::enumeration_state(i, 2, 1, codes);
                const double q0 = controller::received_quality(m, start);
                gs_ok = gs_ok && controller::greedy_search(m, start, p, q0).quality_db >= q0;
            }
            p.seed = seed;
            optimal += controller::blind_greedy(m, p).quality_db == ex.best_quality_db;
        }
        return {gs_ok && optimal >= 45, std::string("GS never below its start: ") + (gs_ok ? "yes" : "no") +
                                            "; BG optimal in " + std::to_string(optimal) + "/50 scenes"};
    }
}

int main()
{
    run(1, "DPS round-trip phase doubling", 1, phase_doubling);
    run(2, "DPS fit fidelity", 5, fit_fidelity);
    run(3, "rotation algebra", 1, rotation_algebra);
    run(4, "polarization null", 10, polarization_null);
    run(5, "exhaustive pmf", 60, exhaustive_pmf);
    run(6, "blind greedy percentile", 300, bg_percentile);
    run(7, "controller ordering", 600, controller_ordering);
    run(8, "polarization selection", 600, polarization_selection);
    run(9, "tracking monotonicity", 900, tracking_monotonicity);
    run(10, "exhaustive oracle equivalence", 60, oracle_equivalence);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}

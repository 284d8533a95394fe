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

#include "ris/errors.hpp"
#include "ris/rng.hpp"
#include "ris/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ris::scenario
{
    using json = nlohmann::json;
    using ojson = nlohmann::ordered_json;

    namespace
    {
        constexpr double location_tol = 1e-9;

        class Reader
        {
        public:
            Reader(const json &j, std::string path, std::string origin)
                : j_(j), path_(std::move(path)), origin_(std::move(origin))
            {
                if (!j_.is_object())
                    fail("expected an object");
            }

            void allow(std::initializer_list<const char *> keys) const
            {
                std::set<std::string> ok(keys.begin(), keys.end());
                for (auto it = j_.begin(); it != j_.end(); ++it)
                    if (!ok.count(it.key()))
                        throw ParseError(origin_ + ":" + key(it.key()), "unknown key");
            }

            bool has(const char *k) const { return j_.contains(k); }

            template <class T>
            T get(const char *k, T fallback) const
            {
                if (!j_.contains(k))
                    return fallback;
                try
                {
                    return j_.at(k).get<T>();
                }
                catch (const json::exception &)
                {
                    throw ParseError(origin_ + ":" + key(k), "bad value");
                }
            }

            Vec3 vec3(const char *k, const Vec3 &fallback) const
            {
                if (!j_.contains(k))
                    return fallback;
                const auto &v = j_.at(k);
                if (!v.is_array() || v.size() != 3)
                    throw ParseError(origin_ + ":" + key(k), "must be a 3-element array");
                Vec3 out;
                for (int i = 0; i < 3; ++i)
                {
                    if (!v[i].is_number())
                        throw ParseError(origin_ + ":" + key(k), "must be numeric");
                    out[i] = v[i].get<double>();
                }
                return out;
            }

            Reader child(const char *k) const { return Reader(j_.at(k), key(k), origin_); }
            const json &raw(const char *k) const { return j_.at(k); }
            std::string key(const std::string &k) const { return path_.empty() ? k : path_ + "." + k; }
            [[noreturn]] void fail(const std::string &what) const
            {
                throw ParseError(origin_ + ":" + (path_.empty() ? "<root>" : path_), what);
            }
            const std::string &origin() const { return origin_; }

        private:
            const json &j_;
            std::string path_;
            std::string origin_;
        };

        PoseConfig read_pose(const Reader &r)
        {
            r.allow({"position_m", "orientation_deg", "initial_phase_deg"});
            PoseConfig p;
            p.position_m = r.vec3("position_m", p.position_m);
            p.orientation_deg = r.vec3("orientation_deg", p.orientation_deg);
            p.initial_phase_deg = r.get("initial_phase_deg", 0.0);
            return p;
        }

        ojson pose_json(const PoseConfig &p)
        {
            ojson j;
            j["position_m"] = {p.position_m.x(), p.position_m.y(), p.position_m.z()};
            j["orientation_deg"] = {p.orientation_deg.x(), p.orientation_deg.y(), p.orientation_deg.z()};
            j["initial_phase_deg"] = p.initial_phase_deg;
            return j;
        }

        std::uint32_t parse_code(const json &v, const Reader &r)
        {
            if (v.is_number_unsigned())
                return v.get<std::uint32_t>();
            if (v.is_string())
            {
                try
                {
                    return std::uint32_t(dps::StateCode::from_string(v.get<std::string>()).index());
                }
                catch (const Error &)
                {
                }
            }
            r.fail("codebook entries are binary strings such as \"0101\" or non-negative integers");
        }

        antenna::Orientation orientation_of(const Vec3 &deg) { return {deg.x(), deg.y(), deg.z()}; }

        channel::Pose make_pose(const PoseConfig &p, antenna::PatternPtr pattern)
        {
            channel::Pose pose;
            pose.position = p.position_m;
            pose.orientation = orientation_of(p.orientation_deg);
            pose.pattern = std::move(pattern);
            pose.initial_phase_deg = p.initial_phase_deg;
            return pose;
        }

        std::string read_text(const std::filesystem::path &path)
        {
            std::ifstream in(path);
            if (!in)
                throw IoError("cannot open " + path.string());
            std::ostringstream ss;
            ss << in.rdbuf();
            return ss.str();
        }
    }

    std::size_t Trajectory::size() const
    {
        if (step_m <= 0.0)
            return 1;
        return std::size_t(std::floor(length() / step_m + location_tol)) + 1;
    }

    Vec3 Trajectory::position(std::size_t i) const
    {
        const double len = length();
        if (len == 0.0)
            return start_m;
        return start_m + (end_m - start_m) * (double(i) * step_m / len);
    }

    antenna::Orientation Trajectory::orientation(std::size_t i, const antenna::Orientation &base) const
    {
        if (mode == OrientationMode::fixed)
            return base;
        const std::size_t n = size();
        const double t = n > 1 ? double(i) / double(n - 1) : 0.0;
        const double angle = rotate_start_deg + (rotate_end_deg - rotate_start_deg) * t;
        return antenna::rotate_about_global(base, Vec3::UnitX(), angle);
    }

    void Trajectory::validate() const
    {
        if (!start_m.allFinite() || !end_m.allFinite())
            throw ValidationError("trajectory endpoints must be finite");
        if (!(step_m > 0.0))
            throw ValidationError("trajectory step_m must be positive");
        const double ratio = length() / step_m;
        if (std::abs(ratio - std::round(ratio)) > location_tol * std::max(1.0, ratio))
            throw ValidationError("trajectory step_m must divide the path length");
    }

    double ScenarioConfig::wavelength_m() const { return speed_of_light / frequency_hz; }

    double ScenarioConfig::pitch_m() const { return ris.pitch_m > 0.0 ? ris.pitch_m : 0.5 * wavelength_m(); }

    std::vector<std::uint32_t> ScenarioConfig::codebook_or_all() const
    {
        if (!codebook.empty())
            return codebook;
        std::vector<std::uint32_t> all(dps.n_states());
        for (std::uint32_t c = 0; c < all.size(); ++c)
            all[c] = c;
        return all;
    }

    controller::BgParams ScenarioConfig::bg_params(std::uint64_t s) const
    {
        auto p = controller::BgParams::full(dps.n_bit(), controller.t_r, controller.t_g, s);
        if (!codebook.empty())
            p.codebook = codebook;
        return p;
    }

    void ScenarioConfig::validate() const
    {
        if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz))
            throw ValidationError("frequency_hz must be positive");
        if (!(tx_power_w > 0.0) || !std::isfinite(tx_power_w))
            throw ValidationError("tx_power_w must be positive");
        if (ris.rows < 1 || ris.cols < 1)
            throw ValidationError("ris.rows and ris.cols must be at least 1");
        if (ris.pitch_m < 0.0 || !std::isfinite(ris.pitch_m))
            throw ValidationError("ris pitch must be positive");
        if (ris.plate_width_m < 0.0 || ris.plate_height_m < 0.0)
            throw ValidationError("ris plate size must be non-negative");
        variant_from_degrees(ris.polarization_variant_deg);
        if (trajectory)
            trajectory->validate();
        dps.validate();
        for (auto c : codebook)
            if (c >= dps.n_states())
                throw ValidationError("codebook entry " + std::to_string(c) + " exceeds the DPS state count");
        if (controller.t_g < 1)
            throw ValidationError("controller.t_g must be at least 1");
        if (noise.sigma_db < 0.0)
            throw ValidationError("noise.sigma_db must be non-negative");
        if (!(exhaustive.histogram_bin_db > 0.0))
            throw ValidationError("exhaustive.histogram_bin_db must be positive");
        if (tracking.seeds < 1)
            throw ValidationError("tracking.seeds must be at least 1");
        for (double a : tracking.activation_distances_m)
            if (!(a >= 0.0))
                throw ValidationError("activation distances must be non-negative");
    }

    ScenarioConfig load_config(std::string_view text, const std::filesystem::path &base_dir, const std::string &origin)
    {
        json doc;
        try
        {
            doc = json::parse(text.begin(), text.end(), nullptr, true, true);
        }
        catch (const json::parse_error &e)
        {
            throw ParseError(origin, e.what());
        }
        const Reader root(doc, "", origin);
        root.allow({"frequency_hz", "tx_power_w", "seed", "tx", "rx", "trajectory", "antenna", "ris", "dps",
                    "sm_tuning", "noise", "codebook", "exhaustive", "controller", "tracking"});

        ScenarioConfig cfg;
        if (!root.has("frequency_hz") || !root.has("tx") || !root.has("rx"))
            root.fail("frequency_hz, tx and rx are required");
        cfg.frequency_hz = root.get("frequency_hz", 0.0);
        cfg.tx_power_w = root.get("tx_power_w", 1.0);
        cfg.seed = root.get<std::uint64_t>("seed", 0);
        cfg.tx = read_pose(root.child("tx"));
        cfg.rx = read_pose(root.child("rx"));

        if (root.has("trajectory"))
        {
            const auto r = root.child("trajectory");
            r.allow({"start_m", "end_m", "step_m", "orientation_mode", "rotate_start_deg", "rotate_end_deg"});
            Trajectory t;
            t.start_m = r.vec3("start_m", cfg.rx.position_m);
            t.end_m = r.vec3("end_m", t.start_m);
            t.step_m = r.get("step_m", 0.0);
            const auto mode = r.get<std::string>("orientation_mode", "fixed");
            if (mode == "fixed")
                t.mode = OrientationMode::fixed;
            else if (mode == "rotate_about_x")
                t.mode = OrientationMode::rotate_about_x;
            else
                r.fail("orientation_mode must be fixed or rotate_about_x");
            t.rotate_start_deg = r.get("rotate_start_deg", 0.0);
            t.rotate_end_deg = r.get("rotate_end_deg", 360.0);
            cfg.trajectory = t;
        }

        if (root.has("antenna"))
        {
            const auto r = root.child("antenna");
            r.allow({"max_gain_dbi", "cross_pol_leakage_db", "pattern_file"});
            cfg.antenna.max_gain_dbi = r.get("max_gain_dbi", cfg.antenna.max_gain_dbi);
            if (r.has("cross_pol_leakage_db") && r.raw("cross_pol_leakage_db").is_null())
                cfg.antenna.cross_pol_leakage_db = -std::numeric_limits<double>::infinity();
            else
                cfg.antenna.cross_pol_leakage_db = r.get("cross_pol_leakage_db", cfg.antenna.cross_pol_leakage_db);
            const auto file = r.get<std::string>("pattern_file", "");
            if (!file.empty())
                cfg.antenna.pattern_file = (base_dir / file).lexically_normal().string();
        }

        if (root.has("ris"))
        {
            const auto r = root.child("ris");
            r.allow({"rows", "cols", "pitch_m", "pitch_wavelengths", "plate_width_m", "plate_height_m", "position_m",
                     "orientation_deg", "initial_phase_deg", "polarization_variant_deg", "random_initial_phase"});
            cfg.ris.rows = r.get<std::size_t>("rows", cfg.ris.rows);
            cfg.ris.cols = r.get<std::size_t>("cols", cfg.ris.cols);
            if (r.has("pitch_m") && r.has("pitch_wavelengths"))
                r.fail("give either pitch_m or pitch_wavelengths");
            if (r.has("pitch_wavelengths"))
            {
                cfg.ris.pitch_m = r.get("pitch_wavelengths", 0.5) * speed_of_light / cfg.frequency_hz;
                if (!(cfg.ris.pitch_m > 0.0))
                    throw ValidationError("ris pitch must be positive");
            }
            else if (r.has("pitch_m"))
            {
                cfg.ris.pitch_m = r.get("pitch_m", 0.0);
                if (!(cfg.ris.pitch_m > 0.0))
                    throw ValidationError("ris pitch must be positive");
            }
            cfg.ris.plate_width_m = r.get("plate_width_m", 0.0);
            cfg.ris.plate_height_m = r.get("plate_height_m", 0.0);
            cfg.ris.pose.position_m = r.vec3("position_m", cfg.ris.pose.position_m);
            cfg.ris.pose.orientation_deg = r.vec3("orientation_deg", cfg.ris.pose.orientation_deg);
            cfg.ris.pose.initial_phase_deg = r.get("initial_phase_deg", 0.0);
            cfg.ris.polarization_variant_deg = r.get("polarization_variant_deg", 0.0);
            cfg.ris.random_initial_phase = r.get("random_initial_phase", false);
        }

        if (root.has("dps"))
        {
            const auto r = root.child("dps");
            r.allow({"source", "path", "model"});
            cfg.dps_source = r.get<std::string>("source", "reference");
            if (cfg.dps_source == "file")
            {
                const auto file = r.get<std::string>("path", "");
                if (file.empty())
                    r.fail("dps.path is required when source is file");
                const auto full = (base_dir / file).lexically_normal();
                cfg.dps_source = full.string();
                cfg.dps = dps::model_from_json(read_text(full));
            }
            else if (cfg.dps_source != "reference")
                r.fail("dps.source must be reference or file");
            // explicit orders override the source (as in the config echo)
            if (r.has("model"))
                cfg.dps = dps::model_from_json(r.raw("model").dump());
        }

        if (root.has("sm_tuning"))
        {
            const auto r = root.child("sm_tuning");
            r.allow({"c_s", "c_r"});
            cfg.sm_tuning.c_s = r.get("c_s", 1.0);
            cfg.sm_tuning.c_r = r.get("c_r", 1.0);
        }

        if (root.has("noise"))
        {
            const auto r = root.child("noise");
            r.allow({"enabled", "sigma_db", "seed"});
            cfg.noise.enabled = r.get("enabled", false);
            cfg.noise.sigma_db = r.get("sigma_db", 0.0);
            cfg.noise.seed = r.get<std::uint64_t>("seed", cfg.seed);
        }
        else
            cfg.noise.seed = cfg.seed;

        if (root.has("codebook"))
        {
            const auto &v = root.raw("codebook");
            if (!v.is_array())
                root.fail("codebook must be an array");
            for (const auto &c : v)
                cfg.codebook.push_back(parse_code(c, root));
        }

        if (root.has("exhaustive"))
        {
            const auto r = root.child("exhaustive");
            r.allow({"budget", "threads", "histogram_bin_db"});
            cfg.exhaustive.budget = r.get<std::uint64_t>("budget", cfg.exhaustive.budget);
            cfg.exhaustive.threads = r.get<unsigned>("threads", 1);
            cfg.exhaustive.histogram_bin_db = r.get("histogram_bin_db", 0.5);
        }

        if (root.has("controller"))
        {
            const auto r = root.child("controller");
            r.allow({"t_r", "t_g"});
            cfg.controller.t_r = r.get<std::size_t>("t_r", cfg.controller.t_r);
            cfg.controller.t_g = r.get<std::size_t>("t_g", cfg.controller.t_g);
        }

        if (root.has("tracking"))
        {
            const auto r = root.child("tracking");
            r.allow({"activation_distances_m", "seeds", "policy"});
            cfg.tracking.activation_distances_m = r.get<std::vector<double>>("activation_distances_m", {});
            cfg.tracking.seeds = r.get<std::size_t>("seeds", 1);
            try
            {
                cfg.tracking.policy = controller::tracking_policy_from_string(r.get<std::string>("policy", "greedy_only"));
            }
            catch (const ValidationError &e)
            {
                r.fail(e.what());
            }
        }
        if (cfg.tracking.activation_distances_m.empty())
            for (int i = 0; i <= 21; ++i)
                cfg.tracking.activation_distances_m.push_back(0.025 * i);

        cfg.validate();
        return cfg;
    }

    ScenarioConfig load_config_file(const std::filesystem::path &path)
    {
        std::string text;
        try
        {
            text = read_text(path);
        }
        catch (const IoError &e)
        {
            throw ParseError(path.string(), e.what());
        }
        return load_config(text, path.parent_path(), path.string());
    }

    std::string config_to_json(const ScenarioConfig &cfg, int indent)
    {
        ojson j;
        j["frequency_hz"] = cfg.frequency_hz;
        j["tx_power_w"] = cfg.tx_power_w;
        j["seed"] = cfg.seed;
        j["tx"] = pose_json(cfg.tx);
        j["rx"] = pose_json(cfg.rx);
        if (cfg.trajectory)
        {
            const auto &t = *cfg.trajectory;
            ojson tj;
            tj["start_m"] = {t.start_m.x(), t.start_m.y(), t.start_m.z()};
            tj["end_m"] = {t.end_m.x(), t.end_m.y(), t.end_m.z()};
            tj["step_m"] = t.step_m;
            tj["orientation_mode"] = t.mode == OrientationMode::fixed ? "fixed" : "rotate_about_x";
            tj["rotate_start_deg"] = t.rotate_start_deg;
            tj["rotate_end_deg"] = t.rotate_end_deg;
            tj["locations"] = t.size();
            j["trajectory"] = tj;
        }
        ojson aj;
        aj["max_gain_dbi"] = cfg.antenna.max_gain_dbi;
        if (std::isfinite(cfg.antenna.cross_pol_leakage_db))
            aj["cross_pol_leakage_db"] = cfg.antenna.cross_pol_leakage_db;
        else
            aj["cross_pol_leakage_db"] = nullptr;
        aj["pattern_file"] = cfg.antenna.pattern_file;
        j["antenna"] = aj;
        ojson rj;
        rj["rows"] = cfg.ris.rows;
        rj["cols"] = cfg.ris.cols;
        rj["pitch_m"] = cfg.pitch_m();
        rj["plate_width_m"] = cfg.ris.plate_width_m > 0.0 ? cfg.ris.plate_width_m : cfg.pitch_m();
        rj["plate_height_m"] = cfg.ris.plate_height_m > 0.0 ? cfg.ris.plate_height_m : cfg.pitch_m();
        const auto rp = pose_json(cfg.ris.pose);
        rj["position_m"] = rp["position_m"];
        rj["orientation_deg"] = rp["orientation_deg"];
        rj["initial_phase_deg"] = cfg.ris.pose.initial_phase_deg;
        rj["polarization_variant_deg"] = cfg.ris.polarization_variant_deg;
        rj["random_initial_phase"] = cfg.ris.random_initial_phase;
        j["ris"] = rj;
        if (cfg.dps_source == "reference")
            j["dps"] = {{"source", "reference"}, {"model", ojson::parse(dps::model_to_json(cfg.dps))}};
        else
            j["dps"] = {{"source", "file"}, {"path", cfg.dps_source}, {"model", ojson::parse(dps::model_to_json(cfg.dps))}};
        j["sm_tuning"] = {{"c_s", cfg.sm_tuning.c_s}, {"c_r", cfg.sm_tuning.c_r}};
        j["noise"] = {{"enabled", cfg.noise.enabled}, {"sigma_db", cfg.noise.sigma_db}, {"seed", cfg.noise.seed}};
        ojson cb = ojson::array();
        for (auto c : cfg.codebook_or_all())
            cb.push_back(dps::StateCode::from_index(c, cfg.dps.n_bit()).to_string());
        j["codebook"] = cb;
        j["exhaustive"] = {{"budget", cfg.exhaustive.budget},
                           {"threads", cfg.exhaustive.threads},
                           {"histogram_bin_db", cfg.exhaustive.histogram_bin_db}};
        j["controller"] = {{"t_r", cfg.controller.t_r}, {"t_g", cfg.controller.t_g}};
        j["tracking"] = {{"activation_distances_m", cfg.tracking.activation_distances_m},
                         {"seeds", cfg.tracking.seeds},
                         {"policy", controller::to_string(cfg.tracking.policy)}};
        return j.dump(indent);
    }

    BuiltScene build_scene(const ScenarioConfig &cfg)
    {
        cfg.validate();
        antenna::PatternPtr pattern;
        if (!cfg.antenna.pattern_file.empty())
            pattern = std::make_shared<const antenna::RadiationPattern>(
                antenna::RadiationPattern::load_csv_file(cfg.antenna.pattern_file));
        else
            pattern = std::make_shared<const antenna::RadiationPattern>(
                antenna::synthetic_patch_pattern(cfg.antenna.max_gain_dbi, cfg.antenna.cross_pol_leakage_db));

        BuiltScene out;
        auto &s = out.scene;
        s.budget = channel::LinkBudget(cfg.tx_power_w, cfg.wavelength_m());
        s.tuning = cfg.sm_tuning;
        s.noise = cfg.noise;
        s.tx = make_pose(cfg.tx, pattern);
        s.rx = make_pose(cfg.rx, pattern);

        const double pitch = cfg.pitch_m();
        const auto array_o = orientation_of(cfg.ris.pose.orientation_deg);
        const antenna::Mat3 rot = antenna::rotation_matrix(array_o);
        const auto variant = variant_from_degrees(cfg.ris.polarization_variant_deg);
        for (std::size_t r = 0; r < cfg.ris.rows; ++r)
            for (std::size_t c = 0; c < cfg.ris.cols; ++c)
            {
                const Vec3 local(0.0, (double(c) - 0.5 * double(cfg.ris.cols - 1)) * pitch,
                                 (0.5 * double(cfg.ris.rows - 1) - double(r)) * pitch);
                channel::RisElement e;
                e.pose.position = cfg.ris.pose.position_m + rot * local;
                e.pose.orientation = array_o;
                e.pose.pattern = pattern;
                const std::size_t n = s.elements.size();
                e.pose.initial_phase_deg = cfg.ris.random_initial_phase
                                               ? rng::uniform(cfg.seed, 0x707369ull, n) * 360.0 - 180.0
                                               : cfg.ris.pose.initial_phase_deg;
                e.dps = cfg.dps;
                e.plate_width_m = cfg.ris.plate_width_m > 0.0 ? cfg.ris.plate_width_m : pitch;
                e.plate_height_m = cfg.ris.plate_height_m > 0.0 ? cfg.ris.plate_height_m : pitch;
                e.polarization_variant = variant;
                s.elements.push_back(std::move(e));
            }
        s.validate();
        out.warnings = channel::fraunhofer_warnings(s.tx, s.rx, s.elements, pitch, s.budget);
        return out;
    }

    BuiltScene build_scene(const ScenarioConfig &cfg, std::size_t location)
    {
        if (!cfg.trajectory)
            throw ValidationError("config has no trajectory");
        const auto &t = *cfg.trajectory;
        if (location >= t.size())
            throw ValidationError("location " + std::to_string(location) + " is past the end of the trajectory");
        ScenarioConfig moved = cfg;
        moved.rx.position_m = t.position(location);
        const auto o = t.orientation(location, orientation_of(cfg.rx.orientation_deg));
        moved.rx.orientation_deg = Vec3(o.rx(), o.ry(), o.rz());
        return build_scene(moved);
    }
}

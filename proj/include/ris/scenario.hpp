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

#ifndef RIS_SCENARIO_HPP
#define RIS_SCENARIO_HPP

#include "ris/controller.hpp"
#include "ris/scene.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ris::scenario
{
    using antenna::Vec3;

    enum class OrientationMode
    {
        fixed,
        rotate_about_x,
    };

    // Straight receiver path sampled every `step_m`
    struct Trajectory
    {
        Vec3 start_m = Vec3::Zero();
        Vec3 end_m = Vec3::Zero();
        double step_m = 0.0;
        OrientationMode mode = OrientationMode::fixed;
        double rotate_start_deg = 0.0; // r_x at the first location
        double rotate_end_deg = 360.0; // r_x at the last location

        double length() const { return (end_m - start_m).norm(); }
        // floor(length / step) + 1
        std::size_t size() const;
        Vec3 position(std::size_t i) const;
        // Base receiver orientation, rotated about the global x axis in rotate mode
        antenna::Orientation orientation(std::size_t i, const antenna::Orientation &base) const;
        void validate() const;
    };

    struct PoseConfig
    {
        Vec3 position_m = Vec3::Zero();
        Vec3 orientation_deg = Vec3::Zero(); // (r_x, r_y, r_z)
        double initial_phase_deg = 0.0;
    };

    struct ArrayConfig
    {
        std::size_t rows = 4, cols = 4;
        double pitch_m = 0.0;        // 0: half a wavelength
        double plate_width_m = 0.0;  // 0: pitch
        double plate_height_m = 0.0; // 0: pitch
        PoseConfig pose;             // array centre and orientation
        double polarization_variant_deg = 0.0;
        bool random_initial_phase = false;
    };

    struct AntennaConfig
    {
        double max_gain_dbi = 6.0;
        double cross_pol_leakage_db = -30.0;
        std::string pattern_file; // CSV; overrides the synthetic patch
    };

    struct ControllerConfig
    {
        std::size_t t_r = 100;
        std::size_t t_g = 3;
    };

    struct TrackingConfig
    {
        std::vector<double> activation_distances_m; // default 0 .. 0.525 step 0.025
        std::size_t seeds = 1;
        controller::TrackingPolicy policy = controller::TrackingPolicy::greedy_only;
    };

    struct ExhaustiveConfig
    {
        std::uint64_t budget = std::uint64_t(1) << 20;
        unsigned threads = 1;
        double histogram_bin_db = 0.5;
    };

    struct ScenarioConfig
    {
        double frequency_hz = 3.5e9;
        double tx_power_w = 1.0;
        std::uint64_t seed = 0;
        PoseConfig tx, rx;
        std::optional<Trajectory> trajectory;
        AntennaConfig antenna;
        ArrayConfig ris;
        std::string dps_source = "reference"; // or a model JSON path
        dps::DpsModel dps = dps::DpsModel::reference_4bit();
        channel::SmTuning sm_tuning;
        channel::NoiseSettings noise;
        std::vector<std::uint32_t> codebook; // empty: every code
        ExhaustiveConfig exhaustive;
        ControllerConfig controller;
        TrackingConfig tracking;

        double wavelength_m() const;
        double pitch_m() const;
        std::size_t n_ris() const { return ris.rows * ris.cols; }
        std::vector<std::uint32_t> codebook_or_all() const;
        controller::BgParams bg_params(std::uint64_t seed) const;
        void validate() const;
    };

    // Parses the JSON config (see README for the keys). Relative file paths
    // resolve against `base_dir`. Throws ParseError / ValidationError.
    ScenarioConfig load_config(std::string_view text, const std::filesystem::path &base_dir = {},
                               const std::string &origin = "<config>");
    ScenarioConfig load_config_file(const std::filesystem::path &path);

    // Every field with defaults applied
    std::string config_to_json(const ScenarioConfig &cfg, int indent = 2);

    struct BuiltScene
    {
        channel::Scene scene;
        std::vector<std::string> warnings; // Fraunhofer violations
    };

    BuiltScene build_scene(const ScenarioConfig &cfg);
    // Receiver moved to trajectory location `i`
    BuiltScene build_scene(const ScenarioConfig &cfg, std::size_t location);

    struct ResultRow
    {
        std::size_t location = 0;
        Vec3 rx_position_m = Vec3::Zero();
        std::string method;
        double quality_db = 0.0;
        double relative_loss_db = 0.0;
        std::uint64_t evaluations = 0;
        std::string state_digest; // empty for continuous-phase methods

        bool operator==(const ResultRow &o) const
        {
            return location == o.location && rx_position_m == o.rx_position_m && method == o.method &&
                   quality_db == o.quality_db && relative_loss_db == o.relative_loss_db &&
                   evaluations == o.evaluations && state_digest == o.state_digest;
        }
    };

    class ResultTable
    {
    public:
        void add(ResultRow row) { rows_.push_back(std::move(row)); }
        std::size_t size() const { return rows_.size(); }
        bool empty() const { return rows_.empty(); }
        const std::vector<ResultRow> &rows() const { return rows_; }
        std::vector<const ResultRow *> method_rows(const std::string &method) const;

        void write_csv(std::ostream &out) const;
        static ResultTable read_csv(std::istream &in);

        bool operator==(const ResultTable &) const = default;

    private:
        std::vector<ResultRow> rows_;
    };

    // Named numeric series written next to the result table
    struct SideTable
    {
        std::string name;
        std::vector<std::string> header;
        std::vector<std::vector<double>> rows;

        void write_csv(std::ostream &out) const;
    };

    enum class Experiment
    {
        exhaustive_pmf,
        controller_comparison,
        polarization_comparison,
        tracking_sweep,
        dps_state_sweep,
    };

    Experiment experiment_from_string(std::string_view name);
    std::string to_string(Experiment e);

    struct ExperimentOutput
    {
        ResultTable table;
        std::vector<SideTable> side;
        std::vector<std::string> warnings;
    };

    ExperimentOutput run_experiment(const ScenarioConfig &cfg, Experiment experiment);

    // Histogram of qualities; bins aligned to multiples of `bin_db`
    SideTable quality_histogram(std::span<const double> qualities, double bin_db);

    // Throws IoError
    void emit_csv(const ResultTable &table, const std::filesystem::path &path);
    void emit_side_csv(const SideTable &table, const std::filesystem::path &path);
    // Wide form: one row per location, one quality column per method
    void emit_plot_data(const ResultTable &table, const std::filesystem::path &path);
    ResultTable read_csv(const std::filesystem::path &path);

    // Shortest round-trip decimal text
    std::string format_double(double v);
}

#endif

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

#include "ris/controller.hpp"
#include "ris/dps.hpp"
#include "ris/errors.hpp"
#include "ris/scenario.hpp"
#include "ris/touchstone.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#ifndef RIS_VERSION
#define RIS_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;
using namespace ris;

namespace
{
    struct Run
    {
        std::string subcommand;
        fs::path out;
        ojson args = ojson::object();
        ojson config = nullptr;
        std::uint64_t seed = 0;
        std::vector<std::string> outputs;
        std::vector<std::string> warnings;
    };

    fs::path side_path(const fs::path &out, const std::string &name)
    {
        return out.parent_path() / (out.stem().string() + "_" + name + out.extension().string());
    }

    void write_manifest(const Run &run)
    {
        ojson m;
        m["tool"] = "ris_sim";
        m["subcommand"] = run.subcommand;
        m["versions"] = {{"ris_sim", RIS_VERSION},
                         {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                       std::to_string(EIGEN_MINOR_VERSION)},
                         {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                               std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                               std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                         {"cli11", CLI11_VERSION}};
        m["seed"] = run.seed;
        m["args"] = run.args;
        m["config"] = run.config;
        m["outputs"] = run.outputs;
        m["warnings"] = run.warnings;
        fs::path p = run.out;
        p.replace_extension(".manifest.json");
        std::ofstream f(p);
        if (!f)
            throw IoError("cannot write " + p.string());
        f << m.dump(2) << '\n';
    }

    void emit(Run &run, const scenario::ExperimentOutput &out)
    {
        scenario::emit_csv(out.table, run.out);
        run.outputs.push_back(run.out.string());
        for (const auto &side : out.side)
        {
            const auto p = side_path(run.out, side.name);
            scenario::emit_side_csv(side, p);
            run.outputs.push_back(p.string());
        }
        run.warnings.insert(run.warnings.end(), out.warnings.begin(), out.warnings.end());
    }

    scenario::ScenarioConfig load(Run &run, const std::string &path)
    {
        auto cfg = scenario::load_config_file(path);
        run.config = ojson::parse(scenario::config_to_json(cfg));
        run.seed = cfg.seed;
        run.args["config"] = path;
        return cfg;
    }

    // ---- fit-dps -------------------------------------------------------------

    std::string slurp(const fs::path &p)
    {
        std::ifstream in(p);
        if (!in)
            throw IoError("cannot open " + p.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    std::vector<dps::GammaSample> samples_from_s2p_dir(const fs::path &dir, double frequency_hz, std::size_t n_bit)
    {
        const std::regex code_re("([01]{" + std::to_string(n_bit) + "})");
        std::vector<dps::GammaSample> out;
        std::vector<fs::path> files;
        for (const auto &entry : fs::directory_iterator(dir))
        {
            auto ext = entry.path().extension().string();
            std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
            if (entry.is_regular_file() && ext == ".s2p")
                files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto &f : files)
        {
            std::smatch m;
            const auto stem = f.stem().string();
            if (!std::regex_search(stem, m, code_re))
                throw ValidationError(f.string() + ": file name carries no " + std::to_string(n_bit) + "-bit code");
            const auto points = dps::parse_touchstone(slurp(f));
            if (points.empty())
                throw ValidationError(f.string() + ": no frequency points");
            const auto nearest = std::min_element(points.begin(), points.end(), [&](const auto &a, const auto &b)
                                                   { return std::abs(a.frequency_hz - frequency_hz) < std::abs(b.frequency_hz - frequency_hz); });
            out.push_back({dps::StateCode::from_string(m[1].str()),
                           dps::cascade_reflection(*nearest, dps::Termination::open())});
        }
        return out;
    }

    // code,gamma_re,gamma_im  or  code,mag_db,phase_deg
    std::vector<dps::GammaSample> samples_from_csv(const fs::path &path)
    {
        std::istringstream in(slurp(path));
        std::string line;
        std::getline(in, line);
        line.erase(std::remove(line.begin(), line.end(), '\r'), line.end());
        bool polar = false;
        if (line == "code,mag_db,phase_deg")
            polar = true;
        else if (line != "code,gamma_re,gamma_im")
            throw ParseError(path.string(), "header must be code,gamma_re,gamma_im or code,mag_db,phase_deg");
        std::vector<dps::GammaSample> out;
        while (std::getline(in, line))
        {
            if (line.empty() || line == "\r")
                continue;
            std::istringstream row(line);
            std::string code, a, b;
            if (!std::getline(row, code, ',') || !std::getline(row, a, ',') || !std::getline(row, b))
                throw ParseError(path.string(), "malformed row: " + line);
            const double x = std::stod(a), y = std::stod(b);
            out.push_back({dps::StateCode::from_string(code),
                           polar ? polar_deg(db_to_amplitude(x), y) : cplx(x, y)});
        }
        return out;
    }

    void run_fit(Run &run, const std::string &input, const std::string &model_out, double frequency_hz, std::size_t n_bit,
                 double margin)
    {
        run.args["input"] = input;
        run.args["model"] = model_out;
        run.args["frequency_hz"] = frequency_hz;
        run.args["n_bit"] = n_bit;
        run.args["unwrap_margin_deg"] = margin;
        const auto samples = fs::is_directory(input) ? samples_from_s2p_dir(input, frequency_hz, n_bit)
                                                     : samples_from_csv(input);
        const auto fit = dps::fit_dps_model(samples, {margin});
        {
            std::ofstream f(model_out);
            if (!f)
                throw IoError("cannot write " + model_out);
            f << dps::model_to_json(fit.model) << '\n';
        }
        run.outputs.push_back(model_out);

        scenario::SideTable t{"fit", {"code", "measured_mag_db", "measured_phase_deg", "model_mag_db", "model_phase_deg"}, {}};
        for (const auto &s : samples)
        {
            const cplx g = dps::state_reflection(fit.model, s.code);
            t.rows.push_back({double(s.code.index()), amplitude_to_db(std::abs(s.gamma)), rad_to_deg(std::arg(s.gamma)),
                              amplitude_to_db(std::abs(g)), rad_to_deg(std::arg(g))});
        }
        scenario::emit_side_csv(t, run.out);
        run.outputs.push_back(run.out.string());
        run.config = {{"magnitude_rmse_db", fit.magnitude_rmse_db}, {"phase_rmse_deg", fit.phase_rmse_deg}};
        std::cout << "fitted " << samples.size() << " samples; rmse " << fit.magnitude_rmse_db << " dB, "
                  << fit.phase_rmse_deg << " deg\n";
    }

    // ---- eval / optimize / track -------------------------------------------

    StateMatrix read_states(const std::string &arg, std::size_t n_bit)
    {
        std::string text = arg;
        if (fs::is_regular_file(arg))
        {
            text = slurp(arg);
            text.erase(std::remove_if(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); }),
                       text.end());
        }
        return StateMatrix::from_digest(text, n_bit);
    }

    void run_eval(Run &run, const std::string &config, const std::string &states_arg)
    {
        const auto cfg = load(run, config);
        run.args["states"] = states_arg;
        auto built = scenario::build_scene(cfg);
        run.warnings = built.warnings;
        const channel::LinkModel model(built.scene);
        const auto states = read_states(states_arg, model.n_bit());
        const double q = controller::received_quality(model, states);
        scenario::ResultTable t;
        t.add({0, built.scene.rx.position, "eval", q, 0.0, 1, states.digest()});
        scenario::emit_csv(t, run.out);
        run.outputs.push_back(run.out.string());
        std::cout << "quality " << scenario::format_double(q) << " dB\n";
    }

    void run_optimize(Run &run, const std::string &config, std::optional<std::size_t> tr, std::optional<std::size_t> tg,
                      std::optional<std::uint64_t> seed)
    {
        auto cfg = load(run, config);
        if (tr)
            cfg.controller.t_r = *tr;
        if (tg)
            cfg.controller.t_g = *tg;
        if (seed)
            cfg.seed = *seed;
        run.seed = cfg.seed;
        run.args["t_r"] = cfg.controller.t_r;
        run.args["t_g"] = cfg.controller.t_g;
        auto built = scenario::build_scene(cfg);
        run.warnings = built.warnings;
        const channel::LinkModel model(built.scene);
        const auto res = controller::blind_greedy(model, cfg.bg_params(cfg.seed));
        std::ofstream f(run.out);
        if (!f)
            throw IoError("cannot write " + run.out.string());
        res.trace.write_csv(f);
        run.outputs.push_back(run.out.string());
        scenario::ResultTable t;
        t.add({0, built.scene.rx.position, "blind_greedy", res.quality_db, 0.0, res.evaluations(), res.states.digest()});
        const auto rp = side_path(run.out, "result");
        scenario::emit_csv(t, rp);
        run.outputs.push_back(rp.string());
        std::cout << "best " << res.states.digest() << " at " << scenario::format_double(res.quality_db) << " dB after "
                  << res.evaluations() << " evaluations\n";
    }

    void run_track(Run &run, const std::string &config, double activation)
    {
        auto cfg = load(run, config);
        run.args["activation_m"] = activation;
        cfg.tracking.activation_distances_m = {activation};
        cfg.tracking.seeds = 1;
        emit(run, scenario::run_experiment(cfg, scenario::Experiment::tracking_sweep));
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"RIS channel simulator and implicit-CSI controller"};
    app.set_version_flag("--version", RIS_VERSION);
    app.require_subcommand(1);

    Run run;
    std::string out;
    auto add_out = [&](CLI::App *sub)
    { sub->add_option("--out", out, "CSV output path (manifest written alongside)")->required(); };

    std::string input, model_out, config, states, experiment;
    double frequency_hz = 3.5e9, margin = 5.0, activation = 0.0;
    std::size_t n_bit = 4;
    std::optional<std::size_t> tr, tg;
    std::optional<std::uint64_t> seed;

    auto *fit = app.add_subcommand("fit-dps", "Fit the weighted-sum DPS model to measured reflections");
    fit->add_option("input", input, "Directory of <code>.s2p files or a gamma CSV")->required();
    fit->add_option("-o,--model", model_out, "Model JSON output")->required();
    fit->add_option("--frequency-hz", frequency_hz, "Frequency picked from each s2p file");
    fit->add_option("--n-bit", n_bit, "DPS width");
    fit->add_option("--unwrap-margin-deg", margin, "Phase unwrap ambiguity margin");
    add_out(fit);

    auto *eval = app.add_subcommand("eval", "Received quality of one state matrix");
    eval->add_option("--config", config)->required()->check(CLI::ExistingFile);
    eval->add_option("--states", states, "Hex state digest or a file holding one")->required();
    add_out(eval);

    auto *exh = app.add_subcommand("exhaustive", "Enumerate every state matrix of the codebook");
    exh->add_option("--config", config)->required()->check(CLI::ExistingFile);
    add_out(exh);

    auto *opt = app.add_subcommand("optimize", "Blind Greedy search; CSV is the evaluation trace");
    opt->add_option("--config", config)->required()->check(CLI::ExistingFile);
    opt->add_option("--tr", tr, "Random-Max Sampling iterations");
    opt->add_option("--tg", tg, "Greedy Searching sweeps");
    opt->add_option("--seed", seed);
    add_out(opt);

    auto *trk = app.add_subcommand("track", "Tracked run over the trajectory");
    trk->add_option("--config", config)->required()->check(CLI::ExistingFile);
    trk->add_option("--activation", activation, "Activation distance [m]")->required()->check(CLI::NonNegativeNumber);
    add_out(trk);

    auto *swp = app.add_subcommand("sweep", "Run a named experiment");
    swp->add_option("--config", config)->required()->check(CLI::ExistingFile);
    swp->add_option("--experiment", experiment)
        ->required()
        ->check(CLI::IsMember({"exhaustive_pmf", "controller_comparison", "polarization_comparison", "tracking_sweep",
                               "dps_state_sweep"}));
    add_out(swp);

    CLI11_PARSE(app, argc, argv);

    try
    {
        run.out = out;
        if (run.out.has_parent_path())
            fs::create_directories(run.out.parent_path());
        if (fit->parsed())
        {
            run.subcommand = "fit-dps";
            run_fit(run, input, model_out, frequency_hz, n_bit, margin);
        }
        else if (eval->parsed())
        {
            run.subcommand = "eval";
            run_eval(run, config, states);
        }
        else if (exh->parsed())
        {
            run.subcommand = "exhaustive";
            emit(run, scenario::run_experiment(load(run, config), scenario::Experiment::exhaustive_pmf));
        }
        else if (opt->parsed())
        {
            run.subcommand = "optimize";
            run_optimize(run, config, tr, tg, seed);
        }
        else if (trk->parsed())
        {
            run.subcommand = "track";
            run_track(run, config, activation);
        }
        else if (swp->parsed())
        {
            run.subcommand = "sweep";
            run.args["experiment"] = experiment;
            emit(run, scenario::run_experiment(load(run, config), scenario::experiment_from_string(experiment)));
        }
        for (const auto &w : run.warnings)
            std::cerr << "warning: " << w << '\n';
        write_manifest(run);
    }
    catch (const ris::Error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

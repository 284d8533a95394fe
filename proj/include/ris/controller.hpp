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

#ifndef RIS_CONTROLLER_HPP
#define RIS_CONTROLLER_HPP

#include "ris/scene.hpp"
#include "ris/state_matrix.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Implicit-CSI control of the DPS states: every decision is based only on
// measured received quality (gain loss in dB) of candidate state matrices.
namespace ris::controller
{
    using channel::LinkModel;
    using channel::Scene;

    struct BgParams
    {
        std::size_t t_r = 100; // Random-Max Sampling iterations
        std::size_t t_g = 3;   // Greedy Searching sweeps
        std::uint64_t seed = 0;
        std::vector<std::uint32_t> codebook;           // rows drawn by RMS
        std::vector<std::uint32_t> per_element_states; // rows tried by GS

        // Every 2^n_bit code in both the codebook and the GS alphabet
        static BgParams full(std::size_t n_bit, std::size_t t_r, std::size_t t_g, std::uint64_t seed);

        // Throws ValidationError (t_g >= 1, non-empty lists, codes < 2^n_bit)
        void validate(std::size_t n_bit) const;
    };

    struct TraceEntry
    {
        std::uint64_t eval_index = 0;
        double quality_db = 0.0;
        std::string state_digest;
    };

    class SearchTrace
    {
    public:
        void record(std::uint64_t eval_index, double quality_db, std::string digest);
        void append(const SearchTrace &other);

        std::size_t size() const { return entries_.size(); }
        bool empty() const { return entries_.empty(); }
        const std::vector<TraceEntry> &entries() const { return entries_; }

        // `eval_index,quality_db,state_digest_hex`
        void write_csv(std::ostream &out) const;
        static SearchTrace read_csv(std::istream &in);

    private:
        std::vector<TraceEntry> entries_;
    };

    struct SearchResult
    {
        StateMatrix states;
        double quality_db = 0.0;
        SearchTrace trace;
        std::uint64_t evaluations() const { return trace.size(); }
    };

    // Measurement oracle: evaluates candidates in order, numbering each one
    // and recording it in a trace.
    class Evaluator
    {
    public:
        explicit Evaluator(const LinkModel &model, std::uint64_t first_index = 0)
            : model_(model), next_index_(first_index) {}

        double operator()(const StateMatrix &states);

        const LinkModel &model() const { return model_; }
        std::uint64_t next_index() const { return next_index_; }
        SearchTrace take_trace() { return std::move(trace_); }

    private:
        const LinkModel &model_;
        std::uint64_t next_index_;
        SearchTrace trace_;
    };

    double received_quality(const LinkModel &model, const StateMatrix &states, std::uint64_t eval_index = 0);
    double received_quality(const Scene &scene, const StateMatrix &states);

    // Evaluates the all-zero matrix, then t_r matrices whose rows are drawn
    // uniformly (with replacement) from the codebook; keeps strict improvements.
    SearchResult random_max_sampling(Evaluator &eval, const BgParams &p);
    SearchResult random_max_sampling(const LinkModel &model, const BgParams &p);

    // t_g sweeps over the elements in index order, each trying every code of
    // per_element_states for that row with the others fixed. Only strict
    // improvements replace the incumbent. When `start_quality` is absent the
    // start matrix is measured first (one extra evaluation in the trace).
    SearchResult greedy_search(Evaluator &eval, const StateMatrix &start, const BgParams &p,
                               std::optional<double> start_quality = std::nullopt);
    SearchResult greedy_search(const LinkModel &model, const StateMatrix &start, const BgParams &p,
                               std::optional<double> start_quality = std::nullopt);

    // RMS followed by GS from the RMS winner; the trace covers both phases
    SearchResult blind_greedy(Evaluator &eval, const BgParams &p);
    SearchResult blind_greedy(const LinkModel &model, const BgParams &p);

    struct BeamformingResult
    {
        std::vector<double> phases_deg; // continuous reflection phase per element
        double quality_db = 0.0;
        cplx coefficient{};
    };

    // Unit-magnitude continuous reflection per element that co-phases each AM
    // term with the static part of the channel (LoS + SM). If the static gain
    // is below -200 dB the first element's AM phase is the reference instead.
    BeamformingResult perfect_beamforming(const LinkModel &model);

    struct QuantizedResult
    {
        StateMatrix states;
        double quality_db = 0.0;
    };

    // Nearest DPS state (wrapped phase distance, ties to the lower code) to
    // each perfect-beamforming phase, evaluated with the true attenuation
    QuantizedResult beamforming_with_dps(const LinkModel &model);
    QuantizedResult beamforming_with_dps(const Scene &scene, const dps::DpsModel &model);

    struct ExhaustiveResult
    {
        StateMatrix best;
        double best_quality_db = 0.0;
        std::size_t best_index = 0;
        std::vector<double> qualities; // enumeration order
    };

    // Enumerates |codebook|^N matrices; enumeration index i assigns element n
    // the codebook entry (i / K^(N-1-n)) % K. Ties go to the lowest index.
    // Throws BudgetExceeded when |codebook|^N > budget.
    ExhaustiveResult exhaustive_search(const LinkModel &model, std::span<const std::uint32_t> codebook,
                                       std::uint64_t budget = std::uint64_t(1) << 20, unsigned threads = 1);
    StateMatrix enumeration_state(std::uint64_t index, std::size_t elements, std::size_t n_bit,
                                  std::span<const std::uint32_t> codebook);

    struct LocationResult
    {
        std::size_t location = 0;
        bool full_bg = false;
        double quality_db = 0.0;
        double reference_quality_db = 0.0; // full BG at this location
        double relative_loss_db = 0.0;     // reference - quality
        std::uint64_t evaluations = 0;
        StateMatrix states;
    };

    // Seed used for the full BG run at a given location
    std::uint64_t location_seed(std::uint64_t seed, std::size_t location);

    // Full BG at every location (the tracking reference)
    std::vector<SearchResult> reference_run(std::span<const LinkModel> models, const BgParams &p);

    // What happens at locations between full BG runs
    enum class TrackingPolicy
    {
        greedy_only, // GS warm-started from the previous matrix
        hold,        // keep the previous matrix, measure it once
    };

    TrackingPolicy tracking_policy_from_string(std::string_view name);
    std::string to_string(TrackingPolicy policy);

    // Full BG at location 0 and whenever the receiver has moved at least
    // `activation_distance_m` since the last full run. Elsewhere the previous
    // matrix is re-measured and, under greedy_only, used as the GS start.
    std::vector<LocationResult> tracked_run(std::span<const LinkModel> models, std::span<const antenna::Vec3> rx_positions,
                                            double activation_distance_m, const BgParams &p,
                                            std::span<const SearchResult> reference = {},
                                            TrackingPolicy policy = TrackingPolicy::greedy_only);

    // Plain BG (element default variants) followed by Greedy Searching over
    // the product alphabet per_element_states x variants, warm-started from
    // the plain result. The returned matrix carries variants.
    SearchResult polarization_selecting_bg(Evaluator &eval, const BgParams &p,
                                           std::span<const PolarizationVariant> variants);
    SearchResult polarization_selecting_bg(const LinkModel &model, const BgParams &p,
                                           std::span<const PolarizationVariant> variants);
}

#endif

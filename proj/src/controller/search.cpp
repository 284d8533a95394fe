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
#include "ris/errors.hpp"
#include "ris/rng.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace ris::controller
{
    namespace
    {
        constexpr std::uint64_t rms_stream = 0x726d73ull; // "rms"
    }

    BgParams BgParams::full(std::size_t n_bit, std::size_t t_r, std::size_t t_g, std::uint64_t seed)
    {
        BgParams p;
        p.t_r = t_r;
        p.t_g = t_g;
        p.seed = seed;
        for (std::uint32_t c = 0; c < (1u << n_bit); ++c)
        {
            p.codebook.push_back(c);
            p.per_element_states.push_back(c);
        }
        return p;
    }

    void BgParams::validate(std::size_t n_bit) const
    {
        if (t_g < 1)
            throw ValidationError("t_g must be at least 1");
        if (codebook.empty() || per_element_states.empty())
            throw ValidationError("codebook and per-element state list must be non-empty");
        const std::uint32_t limit = 1u << n_bit;
        for (auto c : codebook)
            if (c >= limit)
                throw ValidationError("codebook entry " + std::to_string(c) + " out of range");
        for (auto c : per_element_states)
            if (c >= limit)
                throw ValidationError("state " + std::to_string(c) + " out of range");
    }

    void SearchTrace::record(std::uint64_t eval_index, double quality_db, std::string digest)
    {
        entries_.push_back({eval_index, quality_db, std::move(digest)});
    }

    void SearchTrace::append(const SearchTrace &other)
    {
        entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
    }

    void SearchTrace::write_csv(std::ostream &out) const
    {
        out << "eval_index,quality_db,state_digest_hex\n";
        std::ostringstream line;
        line.precision(17);
        for (const auto &e : entries_)
        {
            line.str({});
            line << e.eval_index << ',' << e.quality_db << ',' << e.state_digest << '\n';
            out << line.str();
        }
    }

    SearchTrace SearchTrace::read_csv(std::istream &in)
    {
        SearchTrace trace;
        std::string line;
        if (!std::getline(in, line) || line.rfind("eval_index,quality_db,state_digest_hex", 0) != 0)
            throw ParseError("<trace>", "missing trace header");
        while (std::getline(in, line))
        {
            if (line.empty())
                continue;
            const auto a = line.find(','), b = line.find(',', a + 1);
            if (a == std::string::npos || b == std::string::npos)
                throw ParseError("<trace>", "malformed row: " + line);
            try
            {
                trace.record(std::stoull(line.substr(0, a)), std::stod(line.substr(a + 1, b - a - 1)), line.substr(b + 1));
            }
            catch (const std::logic_error &)
            {
                throw ParseError("<trace>", "malformed row: " + line);
            }
        }
        return trace;
    }

    double Evaluator::operator()(const StateMatrix &states)
    {
        const auto idx = next_index_++;
        const double q = model_.quality_db(states, idx);
        trace_.record(idx, q, states.digest());
        return q;
    }

    double received_quality(const LinkModel &model, const StateMatrix &states, std::uint64_t eval_index)
    {
        return model.quality_db(states, eval_index);
    }

    double received_quality(const Scene &scene, const StateMatrix &states)
    {
        return LinkModel(scene).quality_db(states, 0);
    }

    SearchResult random_max_sampling(Evaluator &eval, const BgParams &p)
    {
        const auto &model = eval.model();
        p.validate(model.n_bit());
        const std::size_t n = model.elements();

        SearchResult res;
        res.states = StateMatrix(n, model.n_bit(), 0);
        res.quality_db = eval(res.states);

        StateMatrix cand(n, model.n_bit(), 0);
        for (std::size_t t = 0; t < p.t_r; ++t)
        {
            for (std::size_t e = 0; e < n; ++e)
            {
                const auto k = rng::uniform_index(p.seed, rms_stream, t * n + e, p.codebook.size());
                cand.set_code(e, p.codebook[k]);
            }
            const double q = eval(cand);
            if (q > res.quality_db)
            {
                res.quality_db = q;
                res.states = cand;
            }
        }
        res.trace = eval.take_trace();
        return res;
    }

    SearchResult random_max_sampling(const LinkModel &model, const BgParams &p)
    {
        Evaluator eval(model);
        return random_max_sampling(eval, p);
    }

    namespace
    {
        // Shared sweep over per-row candidates (code, variant)
        SearchResult sweep(Evaluator &eval, const StateMatrix &start, const BgParams &p, std::optional<double> start_quality,
                           std::span<const PolarizationVariant> variants)
        {
            const auto &model = eval.model();
            p.validate(model.n_bit());
            if (start.rows() != model.elements() || start.n_bit() != model.n_bit())
                throw DimensionMismatch("start matrix does not match the RIS");

            SearchResult res;
            res.states = start;
            res.quality_db = start_quality ? *start_quality : eval(start);

            for (std::size_t sweep_no = 0; sweep_no < p.t_g; ++sweep_no)
            {
                for (std::size_t e = 0; e < model.elements(); ++e)
                {
                    auto cand = res.states;
                    auto try_one = [&](std::uint32_t code)
                    {
                        cand.set_code(e, code);
                        const double q = eval(cand);
                        if (q > res.quality_db)
                        {
                            res.quality_db = q;
                            res.states = cand;
                        }
                    };
                    if (variants.empty())
                    {
                        for (auto code : p.per_element_states)
                            try_one(code);
                    }
                    else
                    {
                        for (auto v : variants)
                        {
                            cand.set_variant(e, v);
                            for (auto code : p.per_element_states)
                                try_one(code);
                        }
                    }
                }
            }
            res.trace = eval.take_trace();
            return res;
        }
    }

    SearchResult greedy_search(Evaluator &eval, const StateMatrix &start, const BgParams &p, std::optional<double> start_quality)
    {
        return sweep(eval, start, p, start_quality, {});
    }

    SearchResult greedy_search(const LinkModel &model, const StateMatrix &start, const BgParams &p, std::optional<double> start_quality)
    {
        Evaluator eval(model);
        return greedy_search(eval, start, p, start_quality);
    }

    SearchResult blind_greedy(Evaluator &eval, const BgParams &p)
    {
        auto rms = random_max_sampling(eval, p);
        auto gs = greedy_search(eval, rms.states, p, rms.quality_db);
        SearchTrace trace = std::move(rms.trace);
        trace.append(gs.trace);
        gs.trace = std::move(trace);
        return gs;
    }

    SearchResult blind_greedy(const LinkModel &model, const BgParams &p)
    {
        Evaluator eval(model);
        return blind_greedy(eval, p);
    }

    SearchResult polarization_selecting_bg(Evaluator &eval, const BgParams &p, std::span<const PolarizationVariant> variants)
    {
        if (variants.empty())
            throw ValidationError("variant list must be non-empty");
        auto plain = blind_greedy(eval, p);
        auto start = plain.states;
        for (std::size_t e = 0; e < start.rows(); ++e)
            start.set_variant(e, eval.model().default_variant(e));
        auto sel = sweep(eval, start, p, plain.quality_db, variants);
        SearchTrace trace = std::move(plain.trace);
        trace.append(sel.trace);
        sel.trace = std::move(trace);
        return sel;
    }

    SearchResult polarization_selecting_bg(const LinkModel &model, const BgParams &p, std::span<const PolarizationVariant> variants)
    {
        Evaluator eval(model);
        return polarization_selecting_bg(eval, p, variants);
    }

    StateMatrix enumeration_state(std::uint64_t index, std::size_t elements, std::size_t n_bit,
                                  std::span<const std::uint32_t> codebook)
    {
        StateMatrix s(elements, n_bit, 0);
        const std::uint64_t k = codebook.size();
        for (std::size_t e = elements; e-- > 0;)
        {
            s.set_code(e, codebook[index % k]);
            index /= k;
        }
        return s;
    }

    ExhaustiveResult exhaustive_search(const LinkModel &model, std::span<const std::uint32_t> codebook,
                                       std::uint64_t budget, unsigned threads)
    {
        if (codebook.empty())
            throw ValidationError("codebook must be non-empty");
        for (auto c : codebook)
            if (c >= (1u << model.n_bit()))
                throw ValidationError("codebook entry " + std::to_string(c) + " out of range");
        const std::size_t n = model.elements();
        const std::uint64_t k = codebook.size();
        std::uint64_t total = 1;
        for (std::size_t e = 0; e < n; ++e)
        {
            if (total > budget / k + 1)
                throw BudgetExceeded("exhaustive search exceeds budget of " + std::to_string(budget));
            total *= k;
        }
        if (total > budget)
            throw BudgetExceeded(std::to_string(total) + " candidates exceed budget of " + std::to_string(budget));

        // term[e][j]: AM contribution of element e with codebook entry j
        std::vector<std::vector<cplx>> term(n, std::vector<cplx>(k));
        for (std::size_t e = 0; e < n; ++e)
            for (std::size_t j = 0; j < k; ++j)
                term[e][j] = model.unit_am(e, model.default_variant(e)) * model.gamma(e, codebook[j]);

        ExhaustiveResult res;
        res.qualities.assign(total, 0.0);
        auto work = [&](std::uint64_t begin, std::uint64_t end)
        {
            std::vector<std::size_t> digit(n);
            for (std::uint64_t i = begin; i < end; ++i)
            {
                std::uint64_t rest = i;
                for (std::size_t e = n; e-- > 0;)
                {
                    digit[e] = std::size_t(rest % k);
                    rest /= k;
                }
                cplx c = model.static_sum();
                for (std::size_t e = 0; e < n; ++e)
                    c += term[e][digit[e]];
                res.qualities[i] = channel::gain_db(c, model.budget()) + model.noise_db(i);
            }
        };
        threads = std::max(1u, threads);
        if (threads == 1 || total < 4096)
            work(0, total);
        else
        {
            std::vector<std::jthread> pool;
            const std::uint64_t chunk = (total + threads - 1) / threads;
            for (unsigned t = 0; t < threads; ++t)
            {
                const auto b = std::min(total, t * chunk), e = std::min(total, b + chunk);
                if (b < e)
                    pool.emplace_back(work, b, e);
            }
        }
        const auto it = std::max_element(res.qualities.begin(), res.qualities.end());
        res.best_index = std::size_t(it - res.qualities.begin());
        res.best_quality_db = *it;
        res.best = enumeration_state(res.best_index, n, model.n_bit(), codebook);
        return res;
    }
}

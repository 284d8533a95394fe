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
#include "ris/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace ris::scenario
{
    namespace
    {
        const char *const result_header =
            "location,rx_x_m,rx_y_m,rx_z_m,method,quality_db,relative_loss_db,evaluations,state_digest";

        std::vector<std::string> split(const std::string &line)
        {
            std::vector<std::string> out;
            std::string cell;
            std::istringstream ss(line);
            while (std::getline(ss, cell, ','))
                out.push_back(cell);
            if (!line.empty() && line.back() == ',')
                out.emplace_back();
            return out;
        }

        double parse_double(const std::string &s, const std::string &origin)
        {
            double v = 0.0;
            const char *b = s.data(), *e = s.data() + s.size();
            const auto [ptr, ec] = std::from_chars(b, e, v);
            if (ec != std::errc() || ptr != e)
                throw ParseError(origin, "bad number '" + s + "'");
            return v;
        }

        std::uint64_t parse_uint(const std::string &s, const std::string &origin)
        {
            std::uint64_t v = 0;
            const char *b = s.data(), *e = s.data() + s.size();
            const auto [ptr, ec] = std::from_chars(b, e, v);
            if (ec != std::errc() || ptr != e)
                throw ParseError(origin, "bad integer '" + s + "'");
            return v;
        }

        std::ofstream open_out(const std::filesystem::path &path)
        {
            std::ofstream out(path, std::ios::binary);
            if (!out)
                throw IoError("cannot write " + path.string());
            return out;
        }

        void finish(std::ofstream &out, const std::filesystem::path &path)
        {
            out.flush();
            if (!out)
                throw IoError("write failed for " + path.string());
        }
    }

    std::string format_double(double v)
    {
        char buf[64];
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, ptr);
    }

    std::vector<const ResultRow *> ResultTable::method_rows(const std::string &method) const
    {
        std::vector<const ResultRow *> out;
        for (const auto &r : rows_)
            if (r.method == method)
                out.push_back(&r);
        return out;
    }

    void ResultTable::write_csv(std::ostream &out) const
    {
        out << result_header << '\n';
        for (const auto &r : rows_)
        {
            out << r.location << ',' << format_double(r.rx_position_m.x()) << ',' << format_double(r.rx_position_m.y())
                << ',' << format_double(r.rx_position_m.z()) << ',' << r.method << ',' << format_double(r.quality_db)
                << ',' << format_double(r.relative_loss_db) << ',' << r.evaluations << ',' << r.state_digest << '\n';
        }
    }

    ResultTable ResultTable::read_csv(std::istream &in)
    {
        const std::string origin = "<result table>";
        std::string line;
        if (!std::getline(in, line) || line != result_header)
            throw ParseError(origin, "missing result header");
        ResultTable t;
        while (std::getline(in, line))
        {
            if (line.empty())
                continue;
            const auto c = split(line);
            if (c.size() != 9)
                throw ParseError(origin, "expected 9 columns: " + line);
            ResultRow r;
            r.location = parse_uint(c[0], origin);
            r.rx_position_m = Vec3(parse_double(c[1], origin), parse_double(c[2], origin), parse_double(c[3], origin));
            r.method = c[4];
            r.quality_db = parse_double(c[5], origin);
            r.relative_loss_db = parse_double(c[6], origin);
            r.evaluations = parse_uint(c[7], origin);
            r.state_digest = c[8];
            t.add(std::move(r));
        }
        return t;
    }

    void SideTable::write_csv(std::ostream &out) const
    {
        for (std::size_t i = 0; i < header.size(); ++i)
            out << (i ? "," : "") << header[i];
        out << '\n';
        for (const auto &row : rows)
        {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "," : "") << format_double(row[i]);
            out << '\n';
        }
    }

    SideTable quality_histogram(std::span<const double> qualities, double bin_db)
    {
        if (!(bin_db > 0.0))
            throw ValidationError("histogram bin width must be positive");
        SideTable t{"pmf", {"bin_low_db", "bin_high_db", "count", "probability"}, {}};
        std::map<long long, std::size_t> counts;
        std::size_t total = 0;
        for (double q : qualities)
        {
            if (!std::isfinite(q))
                continue;
            ++counts[static_cast<long long>(std::floor(q / bin_db))];
            ++total;
        }
        if (counts.empty())
            return t;
        for (long long b = counts.begin()->first; b <= counts.rbegin()->first; ++b)
        {
            const auto it = counts.find(b);
            const double n = it == counts.end() ? 0.0 : double(it->second);
            t.rows.push_back({double(b) * bin_db, double(b + 1) * bin_db, n, n / double(total)});
        }
        return t;
    }

    void emit_csv(const ResultTable &table, const std::filesystem::path &path)
    {
        auto out = open_out(path);
        table.write_csv(out);
        finish(out, path);
    }

    void emit_side_csv(const SideTable &table, const std::filesystem::path &path)
    {
        auto out = open_out(path);
        table.write_csv(out);
        finish(out, path);
    }

    void emit_plot_data(const ResultTable &table, const std::filesystem::path &path)
    {
        std::vector<std::string> methods;
        std::map<std::size_t, std::pair<Vec3, std::map<std::string, double>>> by_location;
        for (const auto &r : table.rows())
        {
            if (std::find(methods.begin(), methods.end(), r.method) == methods.end())
                methods.push_back(r.method);
            auto &slot = by_location[r.location];
            slot.first = r.rx_position_m;
            slot.second[r.method] = r.quality_db;
        }
        auto out = open_out(path);
        out << "location,rx_x_m,rx_y_m,rx_z_m";
        for (const auto &m : methods)
            out << ',' << m << "_db";
        out << '\n';
        for (const auto &[loc, slot] : by_location)
        {
            out << loc << ',' << format_double(slot.first.x()) << ',' << format_double(slot.first.y()) << ','
                << format_double(slot.first.z());
            for (const auto &m : methods)
            {
                out << ',';
                const auto it = slot.second.find(m);
                if (it != slot.second.end())
                    out << format_double(it->second);
            }
            out << '\n';
        }
        finish(out, path);
    }

    ResultTable read_csv(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw IoError("cannot open " + path.string());
        return ResultTable::read_csv(in);
    }
}

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

#include "ris/touchstone.hpp"
#include "ris/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <string>

namespace ris::dps
{
    namespace
    {
        enum class DataFormat
        {
            ri,
            ma,
            db
        };

        std::string upper(std::string s)
        {
            std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c)
                           { return char(std::toupper(c)); });
            return s;
        }

        double parse_number(const std::string &tok, std::size_t line)
        {
            double v = 0.0;
            const char *first = tok.data();
            const char *last = tok.data() + tok.size();
            if (!tok.empty() && *first == '+')
                ++first;
            auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec != std::errc() || ptr != last)
                throw SyntaxError(line, "expected a number, got '" + tok + "'");
            return v;
        }

        cplx to_complex(double a, double b, DataFormat fmt)
        {
            switch (fmt)
            {
            case DataFormat::ri:
                return {a, b};
            case DataFormat::ma:
                return polar_deg(a, b);
            case DataFormat::db:
                return polar_deg(db_to_amplitude(a), b);
            }
            return {};
        }
    }

    std::vector<TwoPortSParams> parse_touchstone(std::istream &in)
    {
        double freq_scale = 1e9;
        DataFormat fmt = DataFormat::ma;
        bool seen_option = false;

        std::vector<TwoPortSParams> out;
        std::vector<double> record;
        std::size_t record_line = 0;

        std::string raw;
        std::size_t line_no = 0;
        while (std::getline(in, raw))
        {
            ++line_no;
            if (auto bang = raw.find('!'); bang != std::string::npos)
                raw.erase(bang);
            std::istringstream ls(raw);
            std::vector<std::string> tokens;
            for (std::string t; ls >> t;)
                tokens.push_back(t);
            if (tokens.empty())
                continue;

            if (tokens.front().front() == '[')
                throw UnsupportedFormat("line " + std::to_string(line_no) +
                                        ": Touchstone v2 keywords are not supported");

            if (tokens.front().front() == '#')
            {
                if (seen_option)
                    throw SyntaxError(line_no, "duplicate option line");
                seen_option = true;
                if (tokens.front().size() > 1)
                    tokens.front().erase(0, 1);
                else
                    tokens.erase(tokens.begin());
                for (std::size_t i = 0; i < tokens.size(); ++i)
                {
                    const std::string t = upper(tokens[i]);
                    if (t == "HZ")
                        freq_scale = 1.0;
                    else if (t == "KHZ")
                        freq_scale = 1e3;
                    else if (t == "MHZ")
                        freq_scale = 1e6;
                    else if (t == "GHZ")
                        freq_scale = 1e9;
                    else if (t == "S")
                        continue;
                    else if (t == "Y" || t == "Z" || t == "H" || t == "G")
                        throw UnsupportedFormat("only S parameters are supported, got " + t);
                    else if (t == "RI")
                        fmt = DataFormat::ri;
                    else if (t == "MA")
                        fmt = DataFormat::ma;
                    else if (t == "DB")
                        fmt = DataFormat::db;
                    else if (t == "R")
                    {
                        if (i + 1 >= tokens.size())
                            throw SyntaxError(line_no, "reference impedance missing after R");
                        parse_number(tokens[++i], line_no);
                    }
                    else
                        throw SyntaxError(line_no, "unknown option '" + tokens[i] + "'");
                }
                continue;
            }

            if (record.empty())
            {
                if (tokens.size() == 3)
                    throw UnsupportedFormat("line " + std::to_string(line_no) +
                                            ": 3-value record, not a 2-port file");
                record_line = line_no;
            }
            for (const auto &t : tokens)
                record.push_back(parse_number(t, line_no));
            if (record.size() > 9)
                throw SyntaxError(record_line, "record has " + std::to_string(record.size()) +
                                                   " values, a 2-port record needs 9");
            if (record.size() == 9)
            {
                TwoPortSParams s;
                s.frequency_hz = record[0] * freq_scale;
                s.s11 = to_complex(record[1], record[2], fmt);
                s.s21 = to_complex(record[3], record[4], fmt);
                s.s12 = to_complex(record[5], record[6], fmt);
                s.s22 = to_complex(record[7], record[8], fmt);
                if (!s.is_finite())
                    throw SyntaxError(record_line, "non-finite S parameter");
                out.push_back(s);
                record.clear();
            }
        }
        if (!record.empty())
            throw SyntaxError(record_line, "incomplete record at end of file");
        return out;
    }

    std::vector<TwoPortSParams> parse_touchstone(std::string_view text)
    {
        std::istringstream in{std::string(text)};
        return parse_touchstone(in);
    }
}

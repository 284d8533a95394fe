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

#ifndef RIS_TOUCHSTONE_HPP
#define RIS_TOUCHSTONE_HPP

#include "ris/dps.hpp"

#include <istream>
#include <string_view>
#include <vector>

namespace ris::dps
{
    // Reads a version 1 two-port Touchstone (.s2p) document.
    //
    // Option line `# <HZ|KHZ|MHZ|GHZ> S <RI|MA|DB> R <ref>`, comments start
    // with '!'. Each record is `freq N11 N21 N12 N22` (two numbers per
    // parameter). Missing option fields default to `GHZ S MA R 50`.
    // Throws SyntaxError (with line number) or UnsupportedFormat.
    std::vector<TwoPortSParams> parse_touchstone(std::istream &in);
    std::vector<TwoPortSParams> parse_touchstone(std::string_view text);
}

#endif

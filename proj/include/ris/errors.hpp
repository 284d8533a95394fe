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

#ifndef RIS_ERRORS_HPP
#define RIS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ris
{
    // Base class of every error thrown by the library
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Resonant / non-physical two-port termination (|1 - gamma*s22| ~ 0)
    class DegenerateCascade : public Error
    {
    public:
        using Error::Error;
    };

    class InsufficientSamples : public Error
    {
    public:
        using Error::Error;
    };

    // Adjacent-state phase step too close to +-180 deg to unwrap unambiguously
    class UnwrapFailure : public Error
    {
    public:
        using Error::Error;
    };

    class SyntaxError : public Error
    {
    public:
        SyntaxError(std::size_t line, const std::string &what)
            : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
        std::size_t line() const noexcept { return line_; }

    private:
        std::size_t line_;
    };

    class UnsupportedFormat : public Error
    {
    public:
        using Error::Error;
    };

    class ZeroDistance : public Error
    {
    public:
        using Error::Error;
    };

    // Source located behind (or in the plane of) a scattering plate
    class BackIncidence : public Error
    {
    public:
        using Error::Error;
    };

    class DimensionMismatch : public Error
    {
    public:
        using Error::Error;
    };

    class BudgetExceeded : public Error
    {
    public:
        using Error::Error;
    };

    // Malformed configuration document; path() names the offending key
    class ParseError : public Error
    {
    public:
        ParseError(const std::string &path, const std::string &what)
            : Error(path + ": " + what), path_(path) {}
        const std::string &path() const noexcept { return path_; }

    private:
        std::string path_;
    };

    class ValidationError : public Error
    {
    public:
        using Error::Error;
    };

    class IoError : public Error
    {
    public:
        using Error::Error;
    };
}

#endif

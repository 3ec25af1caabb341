// SPDX-License-Identifier: Apache-2.0
//
// wimemchap -- parametric prediction of wideband MIMO wireless channels
// Copyright (C) 2026 The wimemchap authors
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

#ifndef WIMEMCHAP_ERROR_HPP
#define WIMEMCHAP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace wimemchap
{

// Malformed or out-of-range user input (config files, CLI values).
struct ConfigError : std::invalid_argument
{
    explicit ConfigError(const std::string &msg) : std::invalid_argument(msg) {}
};

// A precondition on operation arguments was violated.
struct ContractError : std::invalid_argument
{
    explicit ContractError(const std::string &msg) : std::invalid_argument(msg) {}
};

// Incompatible matrix/grid dimensions; the message names the violated inequality.
struct DimensionError : std::invalid_argument
{
    explicit DimensionError(const std::string &msg) : std::invalid_argument(msg) {}
};

// A linear system that must be invertible was numerically singular.
struct SingularityError : std::runtime_error
{
    explicit SingularityError(const std::string &msg) : std::runtime_error(msg) {}
};

// A subspace selection lost column rank; the configuration cannot resolve the sources.
struct RankError : std::runtime_error
{
    explicit RankError(const std::string &msg) : std::runtime_error(msg) {}
};

// Joint eigenvector pairing failed even after the weighted retries.
struct PairingError : std::runtime_error
{
    explicit PairingError(const std::string &msg) : std::runtime_error(msg) {}
};

// More unknowns than equations in an amplitude fit.
struct UnderdeterminedError : std::runtime_error
{
    explicit UnderdeterminedError(const std::string &msg) : std::runtime_error(msg) {}
};

} // namespace wimemchap

#endif

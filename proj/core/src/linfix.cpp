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

#include "wimemchap/linfix.hpp"
#include "wimemchap/error.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace wimemchap
{

double wrap_angle(double x)
{
    if (!std::isfinite(x))
        throw ContractError("wrap_angle: input must be finite");

    // std::remainder lands in [-pi, pi]; fold the open lower end onto +pi.
    double r = std::remainder(x, 2.0 * pi);
    if (r <= -pi)
        r += 2.0 * pi;
    return r;
}

double angular_distance(double a, double b)
{
    if (!std::isfinite(a) || !std::isfinite(b))
        throw ContractError("angular_distance: inputs must be finite");
    return std::abs(wrap_angle(a - b));
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double x)
{
    return 10.0 * std::log10(x);
}

// SplitMix64. Sequential output passes the usual statistical batteries and the
// full 64-bit avalanche makes hashed stream seeds mutually uncorrelated.
static inline std::uint64_t splitmix64_next(std::uint64_t &state)
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b)
{
    std::uint64_t s = root;
    std::uint64_t h = splitmix64_next(s);
    s ^= a + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    h = splitmix64_next(s);
    s ^= b + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    return splitmix64_next(s);
}

RngStream::RngStream(std::uint64_t root_seed, std::uint64_t stream_index)
    : state_(derive_seed(root_seed, 0x57494D454D43ULL, stream_index))
{
}

std::uint64_t RngStream::next_u64()
{
    return splitmix64_next(state_);
}

double RngStream::uniform01()
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi)
{
    return lo + (hi - lo) * uniform01();
}

double RngStream::normal()
{
    // Box-Muller without caching the second variate, so the draw count per
    // sample is fixed and replay never depends on call history shape.
    double u1 = 1.0 - uniform01(); // (0, 1]
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
}

std::complex<double> RngStream::complex_normal()
{
    const double scale = std::sqrt(0.5);
    double re = normal();
    double im = normal();
    return {scale * re, scale * im};
}

static std::string trim(const std::string &s)
{
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

KeyValueFile KeyValueFile::parse(std::istream &in)
{
    KeyValueFile kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        kv.entries_[key] = val;
    }
    return kv;
}

KeyValueFile KeyValueFile::parse_file(const std::string &path)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError("cannot open config file: " + path);
    return parse(f);
}

bool KeyValueFile::has(const std::string &key) const
{
    return entries_.count(key) != 0;
}

std::string KeyValueFile::get_string(const std::string &key) const
{
    auto it = entries_.find(key);
    if (it == entries_.end())
        throw ConfigError("missing config key: " + key);
    return it->second;
}

double KeyValueFile::get_real(const std::string &key) const
{
    const std::string v = get_string(key);
    try
    {
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument(v);
        return x;
    }
    catch (const std::exception &)
    {
        throw ConfigError("config key '" + key + "': not a real number: " + v);
    }
}

long long KeyValueFile::get_int(const std::string &key) const
{
    const std::string v = get_string(key);
    try
    {
        std::size_t pos = 0;
        long long x = std::stoll(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument(v);
        return x;
    }
    catch (const std::exception &)
    {
        throw ConfigError("config key '" + key + "': not an integer: " + v);
    }
}

std::vector<std::string> KeyValueFile::get_string_list(const std::string &key) const
{
    std::vector<std::string> out;
    std::stringstream ss(get_string(key));
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

std::vector<double> KeyValueFile::get_real_list(const std::string &key) const
{
    std::vector<double> out;
    for (const auto &item : get_string_list(key))
    {
        try
        {
            out.push_back(std::stod(item));
        }
        catch (const std::exception &)
        {
            throw ConfigError("config key '" + key + "': not a real number: " + item);
        }
    }
    return out;
}

} // namespace wimemchap

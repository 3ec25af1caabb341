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

#ifndef WIMEMCHAP_LINFIX_HPP
#define WIMEMCHAP_LINFIX_HPP

#include <complex>
#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

namespace wimemchap
{

inline constexpr double pi = 3.14159265358979323846;

// Reduce an angle to the principal interval (-pi, pi].
double wrap_angle(double x);

// Circular distance |a - b| on the unit circle, in [0, pi].
double angular_distance(double a, double b);

double db_to_linear(double db);
double linear_to_db(double x);

// Counter-based pseudo-random stream. Streams with distinct (root_seed,
// stream_index) pairs are statistically independent; identical pairs replay
// the identical sequence. Stream creation is O(1) and order-free, so worker
// threads can each own a stream without any coordination.
class RngStream
{
  public:
    RngStream(std::uint64_t root_seed, std::uint64_t stream_index);

    std::uint64_t next_u64();
    double uniform01();                        // [0, 1)
    double uniform(double lo, double hi);      // [lo, hi)
    double normal();                           // N(0, 1), Box-Muller
    std::complex<double> complex_normal();     // circular CN(0, 1)

  private:
    std::uint64_t state_;
};

// Stable combination of a root seed with substream labels.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b = 0);

// Line-oriented "key = value" text, '#' starts a comment. Keys are
// case-sensitive snake_case. Lists are comma separated.
class KeyValueFile
{
  public:
    static KeyValueFile parse(std::istream &in);
    static KeyValueFile parse_file(const std::string &path);

    bool has(const std::string &key) const;
    std::string get_string(const std::string &key) const;
    double get_real(const std::string &key) const;
    long long get_int(const std::string &key) const;
    std::vector<double> get_real_list(const std::string &key) const;
    std::vector<std::string> get_string_list(const std::string &key) const;

    const std::map<std::string, std::string> &entries() const { return entries_; }

  private:
    std::map<std::string, std::string> entries_;
};

} // namespace wimemchap

#endif

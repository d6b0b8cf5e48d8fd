// Copyright 2026 The nestlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NESTLAB_TOOLS_CLI_HPP
#define NESTLAB_TOOLS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nestlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char *kCsvHeader = "d,boundary,p,class,failures,trials,rounds,rate,ci_low,ci_high,seed";

/// One simulate output row.
struct ResultRecord {
    int d = 0;
    std::string boundary;
    double p = 0.0;
    std::string label;
    std::uint64_t failures = 0;
    std::uint64_t trials = 0;
    int rounds = 0;
    double rate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t seed = 0;
};

std::string records_to_csv(const std::vector<ResultRecord> &records);
std::string records_to_json(const std::vector<ResultRecord> &records);
/// Accepts either format; throws nestlab::ParseError on missing columns.
std::vector<ResultRecord> parse_records(const std::string &text);

/// Entry point shared by the executable and the tests.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace nestlab::cli

#endif  // NESTLAB_TOOLS_CLI_HPP

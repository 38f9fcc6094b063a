// Copyright 2026 The Ambush Authors
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

// Small helpers shared by the text readers and writers.

#ifndef AMBUSH_IO_H_
#define AMBUSH_IO_H_

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ambush::io {

// Splits one CSV line on commas. No quoting; ids must not contain commas.
std::vector<std::string> SplitCsv(std::string_view line);

std::string Trim(std::string_view s);

// Strict numeric parsing of an entire field.
bool ParseDouble(std::string_view s, double* out);
bool ParseInt(std::string_view s, long long* out);

// Reads lines, dropping a trailing '\r' and skipping blank lines. The
// callback receives the 1-based line number.
template <typename Fn>
void ForEachLine(std::istream& in, Fn&& fn);

// Shortest round-trip representation of a double ("%.17g" trimmed).
std::string FormatDouble(double v);

std::ifstream OpenForRead(const std::filesystem::path& path);
std::ofstream OpenForWrite(const std::filesystem::path& path);

}  // namespace ambush::io

#include <istream>

namespace ambush::io {

template <typename Fn>
void ForEachLine(std::istream& in, Fn&& fn) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    fn(number, line);
  }
}

}  // namespace ambush::io

#endif  // AMBUSH_IO_H_

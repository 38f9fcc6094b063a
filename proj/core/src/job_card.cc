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

#include "ambush/job_card.h"

#include <map>
#include <optional>
#include <ostream>
#include <unordered_map>

#include "ambush/errors.h"
#include "ambush/io.h"

namespace ambush {
namespace {

constexpr const char* kHeader =
    "courier_id,seq,node_id,window_start_s,window_end_s";

struct Row {
  std::string node_id;
  std::optional<double> start;
  std::optional<double> end;
  int line = 0;
};

}  // namespace

std::vector<std::string> JobCard::TourNodes() const {
  std::vector<std::string> nodes{warehouse};
  for (const Stop& s : stops) nodes.push_back(s.node_id);
  nodes.push_back(warehouse);
  return nodes;
}

void ValidateJobCard(const JobCard& card) {
  if (card.courier_id.empty()) throw ValidationError("job card without id");
  if (card.warehouse.empty()) {
    throw ValidationError("courier '" + card.courier_id + "' has no warehouse");
  }
  if (card.stops.empty()) {
    throw ValidationError("courier '" + card.courier_id + "' has no stops");
  }
  for (std::size_t i = 0; i < card.stops.size(); ++i) {
    const Stop& s = card.stops[i];
    if (!(s.window_start < s.window_end)) {
      throw ValidationError("courier '" + card.courier_id + "' stop " +
                            std::to_string(i + 1) +
                            ": window_start must be before window_end");
    }
  }
}

std::vector<JobCard> ReadJobCards(std::istream& in, const std::string& name) {
  std::vector<std::string> order;
  std::unordered_map<std::string, std::map<long long, Row>> rows;
  bool header = true;
  io::ForEachLine(in, [&](int number, const std::string& line) {
    const auto f = io::SplitCsv(line);
    if (header) {
      std::string joined;
      for (const auto& x : f) joined += (joined.empty() ? "" : ",") + x;
      if (joined != kHeader) {
        throw ParseError(name, number,
                         "expected header '" + std::string(kHeader) + "'");
      }
      header = false;
      return;
    }
    if (f.size() != 5) throw ParseError(name, number, "expected 5 fields");
    if (f[0].empty()) throw ParseError(name, number, "empty courier_id");
    long long seq = 0;
    if (!io::ParseInt(f[1], &seq) || seq < 0) {
      throw ParseError(name, number, "bad seq");
    }
    if (f[2].empty()) throw ParseError(name, number, "empty node_id");
    Row row{f[2], std::nullopt, std::nullopt, number};
    for (int k : {3, 4}) {
      if (f[k].empty()) continue;
      double v = 0.0;
      if (!io::ParseDouble(f[k], &v)) {
        throw ParseError(name, number, "bad window time");
      }
      (k == 3 ? row.start : row.end) = v;
    }
    if (seq > 0 && (!row.start || !row.end)) {
      throw ParseError(name, number, "delivery rows need both window times");
    }
    auto [it, fresh] = rows.try_emplace(f[0]);
    if (fresh) order.push_back(f[0]);
    if (!it->second.emplace(seq, std::move(row)).second) {
      throw ParseError(
          name, number,
          "duplicate seq " + std::to_string(seq) + " for '" + f[0] + "'");
    }
  });
  if (header) throw ParseError(name, 0, "missing header");

  std::vector<JobCard> cards;
  cards.reserve(order.size());
  for (const std::string& id : order) {
    const auto& by_seq = rows.at(id);
    auto first = by_seq.begin();
    if (first->first != 0) {
      throw ValidationError("courier '" + id + "' has no seq 0 warehouse row");
    }
    JobCard card;
    card.courier_id = id;
    card.warehouse = first->second.node_id;
    card.day_start = first->second.start.value_or(0.0);
    for (auto it = std::next(first); it != by_seq.end(); ++it) {
      card.stops.push_back(
          Stop{it->second.node_id, *it->second.start, *it->second.end});
    }
    ValidateJobCard(card);
    cards.push_back(std::move(card));
  }
  return cards;
}

std::vector<JobCard> ParseJobCards(const std::filesystem::path& file) {
  auto in = io::OpenForRead(file);
  return ReadJobCards(in, file.string());
}

void WriteJobCards(std::span<const JobCard> cards, std::ostream& out) {
  out << kHeader << '\n';
  for (const JobCard& card : cards) {
    out << card.courier_id << ",0," << card.warehouse << ','
        << (card.day_start != 0.0 ? io::FormatDouble(card.day_start) : "")
        << ",\n";
    for (std::size_t i = 0; i < card.stops.size(); ++i) {
      const Stop& s = card.stops[i];
      out << card.courier_id << ',' << i + 1 << ',' << s.node_id << ','
          << io::FormatDouble(s.window_start) << ','
          << io::FormatDouble(s.window_end) << '\n';
    }
  }
}

}  // namespace ambush

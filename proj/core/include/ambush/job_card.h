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

#ifndef AMBUSH_JOB_CARD_H_
#define AMBUSH_JOB_CARD_H_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ambush {

// One delivery: where, and the [window_start, window_end] seconds-of-day
// interval in which it counts as on time.
struct Stop {
  std::string node_id;
  double window_start = 0.0;
  double window_end = 0.0;

  double window_size() const { return window_end - window_start; }
};

// A courier's day: warehouse -> stops in order -> warehouse. Cards refer to
// nodes by id and are bound to a network only when routed.
struct JobCard {
  std::string courier_id;
  std::string warehouse;
  std::vector<Stop> stops;
  double day_start = 0.0;

  // Node ids of the tour in visiting order, warehouse at both ends.
  std::vector<std::string> TourNodes() const;
};

// Throws ValidationError on an empty stop list or a window with
// start >= end.
void ValidateJobCard(const JobCard& card);

// Job-card file: header `courier_id,seq,node_id,window_start_s,window_end_s`.
// The seq 0 row names the warehouse; its window fields are empty, except
// that a window_start_s there sets the departure time (day_start). Rows may
// appear in any order; cards keep first-appearance order.
std::vector<JobCard> ReadJobCards(std::istream& in,
                                  const std::string& name = "jobcards");
std::vector<JobCard> ParseJobCards(const std::filesystem::path& file);
void WriteJobCards(std::span<const JobCard> cards, std::ostream& out);

}  // namespace ambush

#endif  // AMBUSH_JOB_CARD_H_

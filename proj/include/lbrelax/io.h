// Copyright 2026 The lbrelax Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Instance and result persistence.
//
// Canonical instances (.ilp.json) hold one JSON object:
//   {"format": "lbrelax-ilp", "version": 1, "name": ..., "n": ...,
//    "maximization": bool, "objective": [...],       // original sense
//    "rows": [[[var, coef], ...], ...], "senses": ["LE"|"GE"|"EQ", ...],
//    "rhs": [...]}
//
// MPS input is whitespace-tokenized (names may not contain blanks) and limited
// to pure-binary problems: sections NAME, OBJSENSE, ROWS, COLUMNS, RHS,
// BOUNDS, ENDATA. Every column must end up integral with bounds [0, 1].

#ifndef LBRELAX_IO_H_
#define LBRELAX_IO_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lbrelax/lns.h"
#include "lbrelax/model.h"

namespace lbrelax {

// Parse failure located at a 1-based line (0 when unknown) and token.
class ParseError : public std::runtime_error {
 public:
  // `source`, usually a file name, prefixes the message when set.
  ParseError(std::string message, int line, std::string token,
             std::string source = "");

  int line() const { return line_; }
  const std::string& token() const { return token_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  int line_;
  std::string token_;
};

std::string serialize_instance(const IlpInstance& inst);
IlpInstance parse_instance(std::string_view text);

IlpInstance parse_mps(std::string_view text);

// Dispatches on the extension: ".mps" or anything else as canonical JSON.
IlpInstance read_instance_file(const std::filesystem::path& path);
void write_instance_file(const IlpInstance& inst,
                         const std::filesystem::path& path);

// One LNS run. Trace objectives are kept in the internal (minimization) sense
// and written to disk in the original sense.
struct ResultRecord {
  std::string instance;
  std::string heuristic;
  uint64_t seed = 0;
  bool maximization = false;
  std::string time_axis = "wall";  // "wall" (seconds) or "iterations"
  double horizon = 0.0;
  LnsConfig config;
  std::vector<TraceEvent> events;
  std::optional<double> final_objective;  // original sense
  std::string status = "ok";
};

std::string serialize_record(const ResultRecord& record);
ResultRecord parse_record(std::string_view line);

// Reads a .jsonl file; errors carry the line number.
std::vector<ResultRecord> read_results(const std::filesystem::path& path);

// Writes `<stem>.jsonl` and the `<stem>.csv` summary (primal gap in percent
// and primal integral at each checkpoint, against the best value any record
// reached on the same instance).
void write_results(std::span<const ResultRecord> records,
                   std::span<const double> checkpoints,
                   const std::filesystem::path& jsonl_path,
                   const std::filesystem::path& csv_path);

// Best original-sense value per record instance over all records.
struct BestKnown {
  std::string instance;
  bool maximization = false;
  std::optional<double> value;
};
std::vector<BestKnown> best_known_values(std::span<const ResultRecord> records);

// Formats with the shortest representation that reads back exactly.
std::string format_double(double x);

}  // namespace lbrelax

#endif  // LBRELAX_IO_H_

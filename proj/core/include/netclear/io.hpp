// Copyright 2026 The netclear Authors
//
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


// JSON documents for networks, scenarios, solutions, equity matrices,
// policies and game files, plus a CSV writer with round-trip precision.

#ifndef NETCLEAR_IO_HPP_
#define NETCLEAR_IO_HPP_

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "netclear/equity.hpp"
#include "netclear/game.hpp"
#include "netclear/regulation.hpp"

namespace netclear {

// Whole-file read and write. Failures throw kParseError naming the path.
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

// {"n", "debt": (n+1)^2 row-major, "labels"}; an optional "equity" holds an
// n x n bank ownership matrix.
struct NetworkDocument {
  Network network;
  std::optional<EquityMatrix> equity;
};

std::string network_to_json(const Network& network,
                            const EquityMatrix* equity = nullptr);
NetworkDocument network_from_json(const std::string& text,
                                  const std::string& source = "<network>");

// Either a list of {probability, returns[]} or a generator:
//   {"model": "independent", "assets", "theta", "high", "low", "safe"?}
//   {"model": "m_correlated", "n_c", "theta", "m", "R", "r"}
// "safe" appends a constant asset.
std::string scenarios_to_json(const ScenarioSet& scenarios);
ScenarioSet scenarios_from_json(const std::string& text,
                                const std::string& source = "<scenarios>");

// {V[], payments[][], defaults[], costs[], outside_value}, node-indexed.
std::string solution_to_json(const ClearingSolution& solution);

std::string equity_to_json(const EquityMatrix& equity);
EquityMatrix equity_from_json(const std::string& text,
                              const std::string& source = "<equity>");

// {"caps": [...], "bailout": {"members": [...], "costs": [...]}}. caps are
// node-indexed with entry 0 ignored.
std::string policy_to_json(const Policy& policy);
Policy policy_from_json(const std::string& text,
                        const std::string& source = "<policy>");

// {"a", "chi"} for every bank, or a node-indexed list of such objects.
CostModel costs_from_json(const std::string& text,
                          const std::string& source = "<costs>");

// Game file:
//   {"network": path | object, "scenarios": path | object | list,
//    "costs": {...}, "selection": "greatest" | "least", "r": number,
//    "capital": [node-indexed]?,
//    "strategies": [one per bank:
//        {"type": "grid", "risky", "safe", "points"?, "kinks"?: bool}
//      | {"type": "assets", "assets": [...]}
//      | {"type": "fixed", "weights": [...]}]}
// Paths are resolved against base_dir. Grid kinks use "r".
GameSpec game_from_json(const std::string& text,
                        const std::filesystem::path& base_dir,
                        const std::string& source = "<game>");

// Comma-separated rows; doubles printed with 17 significant digits.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);

  CsvWriter& operator<<(double value);
  CsvWriter& operator<<(long long value);
  CsvWriter& operator<<(int value) { return *this << static_cast<long long>(value); }
  CsvWriter& operator<<(std::size_t value) {
    return *this << static_cast<long long>(value);
  }
  CsvWriter& operator<<(bool value) { return *this << (value ? 1 : 0); }
  CsvWriter& operator<<(const std::string& value);
  CsvWriter& operator<<(const char* value) { return *this << std::string(value); }

  // Ends the current row; throws kInvalidSpec if its width is wrong.
  void end_row();

 private:
  void cell(const std::string& text);

  std::ostream& out_;
  std::size_t width_;
  std::size_t filled_ = 0;
};

std::string format_double(double value);

}  // namespace netclear

#endif  // NETCLEAR_IO_HPP_

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


#include "netclear/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "netclear/errors.hpp"

namespace netclear {

namespace {

using Json = nlohmann::json;

[[noreturn]] void fail(const std::string& source, const std::string& what) {
  throw Error(ErrorCode::kParseError, source + ": " + what);
}

Json parse(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // e.byte is the 1-based offset of the offending character.
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
    for (std::size_t k = 0; k < end; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    const std::size_t colon = what.find(": ");
    if (colon != std::string::npos) what = what.substr(colon + 2);
    fail(source, "line " + std::to_string(line) + ", column " +
                     std::to_string(column) + ": " + what);
  }
}

const Json& field(const Json& j, const char* key, const std::string& source) {
  if (!j.is_object()) fail(source, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(source, std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const Json& j, const std::string& source, const std::string& what) {
  if (!j.is_number()) fail(source, what + " must be a number");
  return j.get<double>();
}

int integer(const Json& j, const std::string& source, const std::string& what) {
  if (!j.is_number_integer()) fail(source, what + " must be an integer");
  return j.get<int>();
}

std::vector<double> numbers(const Json& j, const std::string& source,
                            const std::string& what) {
  if (!j.is_array()) fail(source, what + " must be an array");
  std::vector<double> out;
  for (const Json& v : j) out.push_back(number(v, source, what));
  return out;
}

std::vector<int> integers(const Json& j, const std::string& source,
                          const std::string& what) {
  if (!j.is_array()) fail(source, what + " must be an array");
  std::vector<int> out;
  for (const Json& v : j) out.push_back(integer(v, source, what));
  return out;
}

Matrix square(const Json& j, int size, const std::string& source,
              const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != size) {
    fail(source, what + " must have " + std::to_string(size) + " rows");
  }
  Matrix out(size, size);
  for (int i = 0; i < size; ++i) {
    const std::vector<double> row = numbers(j[i], source, what);
    if (static_cast<int>(row.size()) != size) {
      fail(source, what + " row " + std::to_string(i) + " must have " +
                       std::to_string(size) + " entries");
    }
    for (int k = 0; k < size; ++k) out(i, k) = row[k];
  }
  return out;
}

Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    out.push_back(std::move(row));
  }
  return out;
}

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

// Library validation errors surface as parse errors carrying the source.
template <typename F>
auto checked(const std::string& source, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    throw Error(e.code(), source + ": " + e.message());
  }
}

NetworkDocument network_doc(const Json& j, const std::string& source) {
  const int n = integer(field(j, "n", source), source, "n");
  if (n < 0) fail(source, "n must be nonnegative");
  NetworkDocument doc;
  const Matrix debt = square(field(j, "debt", source), n + 1, source, "debt");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const Json& l = j["labels"];
    if (!l.is_array()) fail(source, "labels must be an array");
    for (const Json& v : l) {
      if (!v.is_string()) fail(source, "labels must be strings");
      labels.push_back(v.get<std::string>());
    }
  }
  doc.network = checked(source, [&] { return Network::from_debt(debt, labels); });
  if (j.contains("equity")) {
    const Matrix S = square(j["equity"], n, source, "equity");
    doc.equity = checked(source, [&] { return EquityMatrix::from_bank_matrix(S); });
  }
  return doc;
}

ScenarioSet scenario_doc(const Json& j, const std::string& source) {
  if (j.is_array()) {
    std::vector<Scenario> list;
    for (const Json& s : j) {
      Scenario sc;
      sc.probability = number(field(s, "probability", source), source, "probability");
      sc.returns = numbers(field(s, "returns", source), source, "returns");
      list.push_back(std::move(sc));
    }
    return checked(source, [&] { return ScenarioSet::from_scenarios(std::move(list)); });
  }
  const Json& model = field(j, "model", source);
  if (!model.is_string()) fail(source, "model must be a string");
  const std::string name = model.get<std::string>();
  const auto num = [&](const char* key) { return number(field(j, key, source), source, key); };
  if (name == "independent") {
    const int K = integer(field(j, "assets", source), source, "assets");
    ScenarioSet out = checked(source, [&] {
      return independent_two_point(K, num("theta"), num("high"), num("low"));
    });
    if (j.contains("safe")) out = out.with_constant_asset(num("safe"));
    return out;
  }
  if (name == "m_correlated") {
    MCorrelationSpec spec;
    spec.n_c = integer(field(j, "n_c", source), source, "n_c");
    spec.theta = num("theta");
    spec.m = integer(field(j, "m", source), source, "m");
    spec.R = num("R");
    spec.r = num("r");
    return checked(source, [&] { return m_correlated(spec); });
  }
  fail(source, "unknown scenario model \"" + name + "\"");
}

BankruptcyCostSpec cost_spec(const Json& j, const std::string& source) {
  BankruptcyCostSpec spec;
  if (j.contains("a")) spec.a = number(j["a"], source, "a");
  if (j.contains("chi")) spec.chi = number(j["chi"], source, "chi");
  checked(source, [&] { validate(spec); return 0; });
  return spec;
}

CostModel cost_doc(const Json& j, const std::string& source) {
  if (j.is_array()) {
    std::vector<BankruptcyCostSpec> per_node;
    for (const Json& v : j) per_node.push_back(cost_spec(v, source));
    return CostModel(std::move(per_node));
  }
  if (!j.is_object()) fail(source, "costs must be an object or a list");
  return CostModel(cost_spec(j, source));
}

// Inline value, or a path string resolved against base_dir.
Json inline_or_file(const Json& j, const std::filesystem::path& base_dir,
                    std::string& source) {
  if (!j.is_string()) return j;
  const std::filesystem::path path = base_dir / j.get<std::string>();
  source = path.string();
  return parse(read_text(path), source);
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, path.string() + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kParseError, path.string() + ": cannot write");
  out << text;
  if (!out) throw Error(ErrorCode::kParseError, path.string() + ": write failed");
}

std::string network_to_json(const Network& network, const EquityMatrix* equity) {
  Json j;
  j["n"] = network.bank_count();
  j["debt"] = matrix_json(network.debt());
  j["labels"] = network.labels();
  if (equity != nullptr) j["equity"] = matrix_json(equity->bank_matrix());
  return j.dump(2) + "\n";
}

NetworkDocument network_from_json(const std::string& text,
                                  const std::string& source) {
  return network_doc(parse(text, source), source);
}

std::string scenarios_to_json(const ScenarioSet& scenarios) {
  Json j = Json::array();
  for (const Scenario& s : scenarios.realize()) {
    j.push_back({{"probability", s.probability}, {"returns", s.returns}});
  }
  return j.dump(2) + "\n";
}

ScenarioSet scenarios_from_json(const std::string& text,
                                const std::string& source) {
  return scenario_doc(parse(text, source), source);
}

std::string solution_to_json(const ClearingSolution& solution) {
  Json j;
  j["V"] = vector_json(solution.values);
  j["payments"] = matrix_json(solution.payments);
  std::vector<int> defaults;
  for (char d : solution.defaulted) defaults.push_back(d ? 1 : 0);
  j["defaults"] = defaults;
  j["costs"] = vector_json(solution.costs);
  j["outside_value"] = solution.outside_value;
  return j.dump(2) + "\n";
}

std::string equity_to_json(const EquityMatrix& equity) {
  return matrix_json(equity.bank_matrix()).dump(2) + "\n";
}

EquityMatrix equity_from_json(const std::string& text, const std::string& source) {
  const Json j = parse(text, source);
  if (!j.is_array()) fail(source, "equity must be an n x n array");
  const Matrix S = square(j, static_cast<int>(j.size()), source, "equity");
  return checked(source, [&] { return EquityMatrix::from_bank_matrix(S); });
}

std::string policy_to_json(const Policy& policy) {
  Json j;
  j["caps"] = policy.caps;
  j["bailout"] = {{"members", policy.bailout_members},
                  {"costs", policy.bailout_costs}};
  return j.dump(2) + "\n";
}

Policy policy_from_json(const std::string& text, const std::string& source) {
  const Json j = parse(text, source);
  if (!j.is_object()) fail(source, "policy must be an object");
  Policy p;
  if (j.contains("caps")) p.caps = numbers(j["caps"], source, "caps");
  if (j.contains("bailout")) {
    const Json& b = j["bailout"];
    p.bailout_members = integers(field(b, "members", source), source, "members");
    p.bailout_costs = numbers(field(b, "costs", source), source, "costs");
  }
  if (p.bailout_members.size() != p.bailout_costs.size()) {
    fail(source, "bailout members and costs differ in length");
  }
  return p;
}

CostModel costs_from_json(const std::string& text, const std::string& source) {
  return cost_doc(parse(text, source), source);
}

GameSpec game_from_json(const std::string& text,
                        const std::filesystem::path& base_dir,
                        const std::string& source) {
  const Json j = parse(text, source);
  if (!j.is_object()) fail(source, "game must be an object");
  GameSpec game;

  std::string net_source = source;
  const Json net = inline_or_file(field(j, "network", source), base_dir, net_source);
  game.network = network_doc(net, net_source).network;

  std::string sc_source = source;
  const Json sc = inline_or_file(field(j, "scenarios", source), base_dir, sc_source);
  game.scenarios = scenario_doc(sc, sc_source);

  if (j.contains("costs")) game.costs = cost_doc(j["costs"], source);
  if (j.contains("selection")) {
    const Json& s = j["selection"];
    if (s == "greatest") {
      game.selection = Selection::kGreatest;
    } else if (s == "least") {
      game.selection = Selection::kLeast;
    } else {
      fail(source, "selection must be \"greatest\" or \"least\"");
    }
  }
  const double r = j.contains("r") ? number(j["r"], source, "r") : 0.0;
  if (j.contains("capital")) game.capital = numbers(j["capital"], source, "capital");

  const Json& strategies = field(j, "strategies", source);
  const int n = game.network.bank_count();
  if (!strategies.is_array() || static_cast<int>(strategies.size()) != n) {
    fail(source, "strategies must list one entry per bank");
  }
  game.spaces.resize(n + 1);
  for (int i = 1; i <= n; ++i) {
    const Json& s = strategies[i - 1];
    const Json& type = field(s, "type", source);
    if (type == "grid") {
      const int risky = integer(field(s, "risky", source), source, "risky");
      const int safe = integer(field(s, "safe", source), source, "safe");
      const int points = s.contains("points")
                             ? integer(s["points"], source, "points")
                             : kDefaultGridPoints;
      const bool kinks = !s.contains("kinks") || s["kinks"].get<bool>();
      game.spaces[i] = checked(source, [&] {
        return StrategySpace::uniform_grid(
            points, risky, safe,
            kinks ? solvency_kinks(game.network, i, r) : std::vector<double>{});
      });
    } else if (type == "assets") {
      const std::vector<int> assets = integers(field(s, "assets", source), source, "assets");
      game.spaces[i] = checked(source, [&] { return StrategySpace::asset_choice(assets); });
    } else if (type == "fixed") {
      const std::vector<double> w = numbers(field(s, "weights", source), source, "weights");
      game.spaces[i] = checked(source, [&] { return StrategySpace::fixed(w); });
    } else {
      fail(source, "strategy type must be grid, assets or fixed");
    }
  }
  checked(source, [&] { game.validate(); return 0; });
  return game;
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), width_(header.size()) {
  for (const std::string& h : header) cell(h);
  end_row();
}

void CsvWriter::cell(const std::string& text) {
  if (filled_ > 0) out_ << ',';
  if (text.find_first_of(",\"\n") != std::string::npos) {
    out_ << '"';
    for (char c : text) {
      if (c == '"') out_ << '"';
      out_ << c;
    }
    out_ << '"';
  } else {
    out_ << text;
  }
  ++filled_;
}

CsvWriter& CsvWriter::operator<<(double value) {
  cell(format_double(value));
  return *this;
}

CsvWriter& CsvWriter::operator<<(long long value) {
  cell(std::to_string(value));
  return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& value) {
  cell(value);
  return *this;
}

void CsvWriter::end_row() {
  if (filled_ != width_) {
    throw Error(ErrorCode::kInvalidSpec,
                "CSV row has " + std::to_string(filled_) + " cells, header has " +
                    std::to_string(width_));
  }
  out_ << '\n';
  filled_ = 0;
}

}  // namespace netclear

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

#include "lbrelax/io.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "lbrelax/metrics.h"

namespace lbrelax {

using Json = nlohmann::ordered_json;

namespace {

std::string describe(const std::string& message, int line,
                     const std::string& token, const std::string& source) {
  std::string out = source.empty() ? "" : source + ": ";
  if (line > 0) out += "line " + std::to_string(line) + ": ";
  out += message;
  if (line > 0 && !token.empty()) out += " ('" + token + "')";
  return out;
}

}  // namespace

ParseError::ParseError(std::string message, int line, std::string token,
                       std::string source)
    : std::runtime_error(describe(message, line, token, source)),
      message_(std::move(message)),
      line_(line),
      token_(std::move(token)) {}

std::string format_double(double x) { return fmt::format("{}", x); }

namespace {

constexpr const char* kFormatTag = "lbrelax-ilp";
constexpr int kFormatVersion = 1;

int line_of_offset(std::string_view text, size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + offset, '\n'));
}

Json parse_json(std::string_view text, int line_base = 0) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const int line = line_base > 0 ? line_base : line_of_offset(text, e.byte);
    throw ParseError("malformed JSON: " + std::string(e.what()), line, "");
  }
}

std::optional<Sense> parse_sense(std::string_view s) {
  if (s == "LE") return Sense::kLe;
  if (s == "GE") return Sense::kGe;
  if (s == "EQ") return Sense::kEq;
  return std::nullopt;
}

// Finite doubles as numbers, infinities as null.
Json limit_json(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

double limit_from(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity()
                     : j.get<double>();
}

Json budget_json(const SolveBudget& b) {
  Json j;
  j["time_limit"] = limit_json(b.time_limit);
  j["node_limit"] = b.node_limit;
  j["gap_limit"] = b.gap_limit;
  return j;
}

SolveBudget budget_from(const Json& j) {
  SolveBudget b;
  b.time_limit = limit_from(j.at("time_limit"));
  b.node_limit = j.at("node_limit").get<int64_t>();
  b.gap_limit = j.at("gap_limit").get<double>();
  return b;
}

Json config_json(const LnsConfig& c) {
  Json j;
  j["heuristic"] = HeuristicName(c.heuristic);
  j["k0"] = c.k0;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  j["gamma"] = c.gamma;
  j["adaptive_k"] = c.adaptive_k;
  j["seed"] = c.seed;
  j["time_limit"] = limit_json(c.time_limit);
  j["iteration_limit"] = c.iteration_limit;
  j["lp_iteration_limit"] = c.lp_iteration_limit;
  j["stop_bound"] = c.stop_bound ? Json(*c.stop_bound) : Json(nullptr);
  j["repair_budget"] = budget_json(c.repair_budget);
  j["lb_repair_budget"] = budget_json(c.lb_repair_budget);
  j["initial_budget"] = budget_json(c.initial_budget);
  return j;
}

LnsConfig config_from(const Json& j) {
  LnsConfig c;
  const auto h = ParseHeuristic(j.at("heuristic").get<std::string>());
  if (!h) throw std::invalid_argument("unknown heuristic in config");
  c.heuristic = *h;
  c.k0 = j.at("k0").get<int>();
  c.alpha = j.at("alpha").get<double>();
  c.beta = j.at("beta").get<double>();
  c.gamma = j.at("gamma").get<double>();
  c.adaptive_k = j.at("adaptive_k").get<bool>();
  c.seed = j.at("seed").get<uint64_t>();
  c.time_limit = limit_from(j.at("time_limit"));
  c.iteration_limit = j.at("iteration_limit").get<int64_t>();
  c.lp_iteration_limit = j.at("lp_iteration_limit").get<int64_t>();
  if (!j.at("stop_bound").is_null()) c.stop_bound = j.at("stop_bound").get<double>();
  c.repair_budget = budget_from(j.at("repair_budget"));
  c.lb_repair_budget = budget_from(j.at("lb_repair_budget"));
  c.initial_budget = budget_from(j.at("initial_budget"));
  return c;
}

}  // namespace

std::string serialize_instance(const IlpInstance& inst) {
  Json j;
  j["format"] = kFormatTag;
  j["version"] = kFormatVersion;
  j["name"] = inst.name();
  j["n"] = inst.num_vars();
  j["maximization"] = inst.is_maximization();
  Json objective = Json::array();
  for (double c : inst.objective()) {
    objective.push_back(inst.is_maximization() ? -c : c);
  }
  j["objective"] = std::move(objective);
  Json rows = Json::array();
  Json senses = Json::array();
  Json rhs = Json::array();
  for (const Row& row : inst.rows()) {
    Json terms = Json::array();
    for (const Term& t : row.terms) terms.push_back(Json::array({t.var, t.coef}));
    rows.push_back(std::move(terms));
    senses.push_back(SenseName(row.sense));
    rhs.push_back(row.rhs);
  }
  j["rows"] = std::move(rows);
  j["senses"] = std::move(senses);
  j["rhs"] = std::move(rhs);
  return j.dump() + "\n";
}

IlpInstance parse_instance(std::string_view text) {
  const Json j = parse_json(text);
  try {
    if (j.at("format") != kFormatTag) {
      throw ParseError("not a canonical instance", 0,
                       j.at("format").dump());
    }
    if (j.at("version") != kFormatVersion) {
      throw ParseError("unsupported version", 0, j.at("version").dump());
    }
    const bool maximize = j.at("maximization").get<bool>();
    std::vector<double> objective = j.at("objective").get<std::vector<double>>();
    const int n = j.at("n").get<int>();
    if (static_cast<int>(objective.size()) != n) {
      throw ParseError("objective length differs from n", 0, std::to_string(n));
    }
    if (maximize) {
      for (double& c : objective) c = -c;
    }
    const Json& rows = j.at("rows");
    const Json& senses = j.at("senses");
    const Json& rhs = j.at("rhs");
    if (rows.size() != senses.size() || rows.size() != rhs.size()) {
      throw ParseError("rows, senses and rhs differ in length", 0, "rows");
    }
    std::vector<Row> out;
    out.reserve(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
      const std::string s = senses[i].get<std::string>();
      const auto sense = parse_sense(s);
      if (!sense) throw ParseError("unknown sense in row " + std::to_string(i), 0, s);
      Row row{.terms = {}, .sense = *sense, .rhs = rhs[i].get<double>()};
      for (const Json& t : rows[i]) {
        if (!t.is_array() || t.size() != 2) {
          throw ParseError("row term is not a [var, coef] pair", 0, t.dump());
        }
        row.terms.push_back({t[0].get<int>(), t[1].get<double>()});
      }
      out.push_back(std::move(row));
    }
    return IlpInstance(j.at("name").get<std::string>(), std::move(objective),
                       std::move(out), maximize);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid canonical instance: ") + e.what(), 0,
                     "");
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid canonical instance: ") + e.what(), 0,
                     "");
  }
}

namespace {

enum class MpsSection { kNone, kName, kObjSense, kRows, kColumns, kRhs, kBounds, kEnd };

struct MpsColumn {
  std::string name;
  int line = 0;
  bool integer = false;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
};

struct MpsRow {
  std::string name;
  char type = 'N';
  std::map<int, double> terms;
  double rhs = 0.0;
};

class MpsParser {
 public:
  explicit MpsParser(std::string_view text) : text_(text) {}

  IlpInstance Parse() {
    std::istringstream in{std::string(text_)};
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      if (raw.empty() || raw[0] == '*') continue;
      tokens_ = Split(raw);
      if (tokens_.empty()) continue;
      if (section_ == MpsSection::kEnd) {
        Fail("content after ENDATA", tokens_[0]);
      }
      if (!std::isspace(static_cast<unsigned char>(raw[0]))) {
        Header();
      } else {
        Body();
      }
    }
    if (section_ != MpsSection::kEnd) Fail("missing ENDATA", "");
    return Build();
  }

 private:
  [[noreturn]] void Fail(const std::string& message, const std::string& token) {
    throw ParseError(message, line_, token);
  }

  static std::vector<std::string> Split(const std::string& s) {
    std::istringstream ss(s);
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
  }

  double Number(const std::string& tok) {
    try {
      size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used == tok.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    Fail("expected a finite number", tok);
  }

  void Header() {
    const std::string& h = tokens_[0];
    if (h == "NAME") {
      section_ = MpsSection::kName;
      if (tokens_.size() > 1) name_ = tokens_[1];
    } else if (h == "OBJSENSE") {
      section_ = MpsSection::kObjSense;
      if (tokens_.size() > 1) ObjSense(tokens_[1]);
    } else if (h == "ROWS") {
      section_ = MpsSection::kRows;
    } else if (h == "COLUMNS") {
      section_ = MpsSection::kColumns;
    } else if (h == "RHS") {
      section_ = MpsSection::kRhs;
    } else if (h == "BOUNDS") {
      section_ = MpsSection::kBounds;
    } else if (h == "ENDATA") {
      section_ = MpsSection::kEnd;
    } else if (h == "RANGES") {
      Fail("RANGES section is not supported", h);
    } else {
      Fail("unknown section", h);
    }
  }

  void ObjSense(const std::string& tok) {
    if (tok == "MAX" || tok == "MAXIMIZE") {
      maximize_ = true;
    } else if (tok == "MIN" || tok == "MINIMIZE") {
      maximize_ = false;
    } else {
      Fail("unknown objective sense", tok);
    }
  }

  void Body() {
    switch (section_) {
      case MpsSection::kObjSense:
        ObjSense(tokens_[0]);
        break;
      case MpsSection::kRows:
        RowLine();
        break;
      case MpsSection::kColumns:
        ColumnLine();
        break;
      case MpsSection::kRhs:
        RhsLine();
        break;
      case MpsSection::kBounds:
        BoundLine();
        break;
      default:
        Fail("data outside a section", tokens_[0]);
    }
  }

  void RowLine() {
    if (tokens_.size() != 2) Fail("ROWS entry needs a type and a name", tokens_[0]);
    const std::string& type = tokens_[0];
    const std::string& name = tokens_[1];
    if (type.size() != 1 || std::string_view("NLGE").find(type[0]) == std::string_view::npos) {
      Fail("unknown row type", type);
    }
    if (row_index_.count(name)) Fail("duplicate row", name);
    if (type[0] == 'N') {
      // Only the first N row is the objective; later ones are dropped.
      if (objective_row_.empty()) objective_row_ = name;
      row_index_[name] = -1;
      return;
    }
    row_index_[name] = static_cast<int>(rows_.size());
    rows_.push_back({.name = name, .type = type[0], .terms = {}, .rhs = 0.0});
  }

  int RowRef(const std::string& name) {
    auto it = row_index_.find(name);
    if (it == row_index_.end()) Fail("unknown row", name);
    return it->second;
  }

  void ColumnLine() {
    if (tokens_.size() >= 3 && tokens_[1] == "'MARKER'") {
      if (tokens_[2] == "'INTORG'") {
        in_integer_block_ = true;
      } else if (tokens_[2] == "'INTEND'") {
        in_integer_block_ = false;
      } else {
        Fail("unknown marker", tokens_[2]);
      }
      return;
    }
    if (tokens_.size() != 3 && tokens_.size() != 5) {
      Fail("COLUMNS entry needs a column and one or two row/value pairs",
           tokens_[0]);
    }
    const int col = ColumnRef(tokens_[0], /*create=*/true);
    if (in_integer_block_) columns_[col].integer = true;
    for (size_t i = 1; i + 1 < tokens_.size(); i += 2) {
      const std::string& row_name = tokens_[i];
      const double value = Number(tokens_[i + 1]);
      if (row_name == objective_row_) {
        objective_[col] += value;
        continue;
      }
      const int r = RowRef(row_name);
      if (r < 0) continue;  // extra free row
      rows_[r].terms[col] += value;
    }
  }

  int ColumnRef(const std::string& name, bool create) {
    auto it = column_index_.find(name);
    if (it != column_index_.end()) {
      if (create && it->second != static_cast<int>(columns_.size()) - 1) {
        Fail("column entries are not contiguous", name);
      }
      return it->second;
    }
    if (!create) Fail("unknown column", name);
    const int idx = static_cast<int>(columns_.size());
    column_index_[name] = idx;
    columns_.push_back({.name = name, .line = line_, .integer = false,
                        .lower = 0.0,
                        .upper = std::numeric_limits<double>::infinity()});
    objective_.push_back(0.0);
    return idx;
  }

  void RhsLine() {
    // Optional leading set name: an odd token count means it is present.
    const size_t start = tokens_.size() % 2 == 1 ? 1 : 0;
    if (tokens_.size() - start < 2) Fail("RHS entry needs a row and a value", tokens_[0]);
    for (size_t i = start; i + 1 < tokens_.size(); i += 2) {
      const std::string& row_name = tokens_[i];
      const double value = Number(tokens_[i + 1]);
      if (row_name == objective_row_) {
        Fail("objective offsets are not supported", row_name);
      }
      const int r = RowRef(row_name);
      if (r >= 0) rows_[r].rhs = value;
    }
  }

  void BoundLine() {
    const std::string& type = tokens_[0];
    const bool needs_value = type == "UP" || type == "LO" || type == "FX" ||
                             type == "LI" || type == "UI";
    const bool no_value = type == "FR" || type == "MI" || type == "PL" || type == "BV";
    if (!needs_value && !no_value) Fail("unknown bound type", type);
    // type [set] column [value]
    size_t col_pos;
    std::optional<double> value;
    if (needs_value) {
      if (tokens_.size() == 4) {
        col_pos = 2;
      } else if (tokens_.size() == 3) {
        col_pos = 1;
      } else {
        Fail("malformed bound", type);
      }
      value = Number(tokens_.back());
    } else {
      // BV occasionally carries a trailing value; it is ignored.
      if (tokens_.size() == 3 && type == "BV" && IsNumber(tokens_[2])) {
        col_pos = 1;
      } else if (tokens_.size() == 3 || tokens_.size() == 4) {
        col_pos = 2;
      } else if (tokens_.size() == 2) {
        col_pos = 1;
      } else {
        Fail("malformed bound", type);
      }
    }
    MpsColumn& c = columns_[ColumnRef(tokens_[col_pos], /*create=*/false)];
    const double inf = std::numeric_limits<double>::infinity();
    if (type == "UP") {
      c.upper = *value;
    } else if (type == "LO") {
      c.lower = *value;
    } else if (type == "FX") {
      c.lower = c.upper = *value;
    } else if (type == "LI") {
      c.lower = *value;
      c.integer = true;
    } else if (type == "UI") {
      c.upper = *value;
      c.integer = true;
    } else if (type == "FR") {
      c.lower = -inf;
      c.upper = inf;
    } else if (type == "MI") {
      c.lower = -inf;
    } else if (type == "PL") {
      c.upper = inf;
    } else {  // BV
      c.lower = 0.0;
      c.upper = 1.0;
      c.integer = true;
    }
  }

  static bool IsNumber(const std::string& tok) {
    char* end = nullptr;
    std::strtod(tok.c_str(), &end);
    return end != tok.c_str() && *end == '\0';
  }

  IlpInstance Build() {
    if (objective_row_.empty()) Fail("no objective (N) row", "ROWS");
    for (const MpsColumn& c : columns_) {
      if (!c.integer || c.lower != 0.0 || c.upper != 1.0) {
        throw ParseError("variable '" + c.name + "' is not binary", c.line,
                         c.name);
      }
    }
    RawProblem raw;
    raw.name = name_;
    raw.maximize = maximize_;
    raw.objective = objective_;
    for (const MpsColumn& c : columns_) raw.var_names.push_back(c.name);
    for (const MpsRow& r : rows_) {
      const Sense sense = r.type == 'L'   ? Sense::kLe
                          : r.type == 'G' ? Sense::kGe
                                          : Sense::kEq;
      RawProblem::RawRow row{.terms = {}, .sense = sense, .rhs = r.rhs};
      for (const auto& [var, coef] : r.terms) row.terms.push_back({var, coef});
      raw.rows.push_back(std::move(row));
    }
    return normalize(raw);
  }

  std::string_view text_;
  int line_ = 0;
  std::vector<std::string> tokens_;
  MpsSection section_ = MpsSection::kNone;
  std::string name_;
  bool maximize_ = false;
  bool in_integer_block_ = false;
  std::string objective_row_;
  std::unordered_map<std::string, int> row_index_;
  std::vector<MpsRow> rows_;
  std::unordered_map<std::string, int> column_index_;
  std::vector<MpsColumn> columns_;
  std::vector<double> objective_;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << data;
  if (!out.flush()) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

IlpInstance parse_mps(std::string_view text) { return MpsParser(text).Parse(); }

IlpInstance read_instance_file(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    if (path.extension() == ".mps") return parse_mps(text);
    return parse_instance(text);
  } catch (const ParseError& e) {
    throw ParseError(e.message(), e.line(), e.token(), path.string());
  }
}

void write_instance_file(const IlpInstance& inst,
                         const std::filesystem::path& path) {
  write_file(path, serialize_instance(inst));
}

std::string serialize_record(const ResultRecord& r) {
  const double sign = r.maximization ? -1.0 : 1.0;
  Json j;
  j["instance"] = r.instance;
  j["heuristic"] = r.heuristic;
  j["seed"] = r.seed;
  j["maximization"] = r.maximization;
  j["time_axis"] = r.time_axis;
  j["horizon"] = limit_json(r.horizon);
  j["status"] = r.status;
  j["final_objective"] =
      r.final_objective ? Json(*r.final_objective) : Json(nullptr);
  j["config"] = config_json(r.config);
  Json events = Json::array();
  for (const TraceEvent& e : r.events) {
    Json ev;
    ev["t"] = e.wall_time;
    ev["iteration"] = e.iteration;
    ev["objective"] = sign * e.objective;
    ev["heuristic"] = e.heuristic;
    ev["k"] = e.k;
    ev["improved"] = e.improved;
    if (!e.note.empty()) ev["note"] = e.note;
    events.push_back(std::move(ev));
  }
  j["events"] = std::move(events);
  return j.dump();
}

namespace {

ResultRecord record_from(const Json& j) {
  ResultRecord r;
  r.instance = j.at("instance").get<std::string>();
  r.heuristic = j.at("heuristic").get<std::string>();
  r.seed = j.at("seed").get<uint64_t>();
  r.maximization = j.at("maximization").get<bool>();
  r.time_axis = j.at("time_axis").get<std::string>();
  r.horizon = limit_from(j.at("horizon"));
  r.status = j.at("status").get<std::string>();
  if (!j.at("final_objective").is_null()) {
    r.final_objective = j.at("final_objective").get<double>();
  }
  r.config = config_from(j.at("config"));
  const double sign = r.maximization ? -1.0 : 1.0;
  for (const Json& ev : j.at("events")) {
    TraceEvent e;
    e.wall_time = ev.at("t").get<double>();
    e.iteration = ev.at("iteration").get<int64_t>();
    e.objective = sign * ev.at("objective").get<double>();
    e.heuristic = ev.at("heuristic").get<std::string>();
    e.k = ev.at("k").get<int>();
    e.improved = ev.at("improved").get<bool>();
    if (ev.contains("note")) e.note = ev.at("note").get<std::string>();
    r.events.push_back(std::move(e));
  }
  return r;
}

}  // namespace

ResultRecord parse_record(std::string_view line) {
  const Json j = parse_json(line, 0);
  try {
    return record_from(j);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid result record: ") + e.what(), 0, "");
  }
}

std::vector<ResultRecord> read_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<ResultRecord> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_record(line));
    } catch (const ParseError& e) {
      throw ParseError(e.message(), number, e.token(), path.string());
    }
  }
  return out;
}

std::vector<BestKnown> best_known_values(std::span<const ResultRecord> records) {
  std::vector<BestKnown> out;
  std::map<std::string, size_t> index;
  for (const ResultRecord& r : records) {
    auto [it, inserted] = index.emplace(r.instance, out.size());
    if (inserted) out.push_back({r.instance, r.maximization, std::nullopt});
    BestKnown& b = out[it->second];
    for (const TraceEvent& e : r.events) {
      const double v = r.maximization ? -e.objective : e.objective;
      if (!b.value || (r.maximization ? v > *b.value : v < *b.value)) {
        b.value = v;
      }
    }
  }
  return out;
}

void write_results(std::span<const ResultRecord> records,
                   std::span<const double> checkpoints,
                   const std::filesystem::path& jsonl_path,
                   const std::filesystem::path& csv_path) {
  std::string jsonl;
  for (const ResultRecord& r : records) jsonl += serialize_record(r) + "\n";
  write_file(jsonl_path, jsonl);

  std::map<std::string, std::optional<double>> v_star;
  for (const BestKnown& b : best_known_values(records)) v_star[b.instance] = b.value;

  std::string csv = "instance,heuristic,seed,status";
  for (double q : checkpoints) csv += ",pg_pct_at_" + format_double(q);
  for (double q : checkpoints) csv += ",pi_at_" + format_double(q);
  csv += ",final_objective\n";
  for (const ResultRecord& r : records) {
    csv += fmt::format("{},{},{},{}", r.instance, r.heuristic, r.seed, r.status);
    const auto vs = v_star[r.instance];
    const GapSeries series =
        gap_series(r.events, r.maximization, vs.value_or(0.0), r.horizon);
    for (double q : checkpoints) {
      csv += "," + (vs ? format_double(100.0 * series.at(q)) : std::string());
    }
    for (double q : checkpoints) {
      csv += "," + (vs ? format_double(primal_integral(series, q)) : std::string());
    }
    csv += "," + (r.final_objective ? format_double(*r.final_objective)
                                    : std::string());
    csv += "\n";
  }
  write_file(csv_path, csv);
}

}  // namespace lbrelax

// Copyright 2026 The qdknap Authors
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

#include "qdknap/archive.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>

#include "qdknap/errors.h"
#include "wide_int.h"

namespace qdknap {

std::int64_t BucketSpec::bucket_count() const {
  return bucket_index(axis_max, *this);
}

std::int64_t bucket_index(std::int64_t value, const BucketSpec& spec) {
  if (value < 0) throw ContractViolation("bucket_index of a negative value");
  if (!spec.gamma.is_positive()) throw ContractViolation("gamma must be > 0");
  return floor_div(value, spec.gamma) + 1;
}

std::string_view to_string(Space space) {
  return space == Space::kWeight ? "weight" : "profit";
}

std::string_view to_string(ArchiveMode mode) {
  return mode == ArchiveMode::kStrict ? "strict" : "literal";
}

ArchiveMode parse_archive_mode(std::string_view text) {
  if (text == "strict") return ArchiveMode::kStrict;
  if (text == "literal") return ArchiveMode::kLiteral;
  throw ContractViolation("unknown archive mode '" + std::string(text) + "'");
}

ArchiveGrid::ArchiveGrid(const Instance& instance, Space space, Rational gamma,
                         ArchiveMode mode, std::uint64_t dense_cell_limit)
    : instance_(instance), space_(space), mode_(mode) {
  if (!gamma.is_positive()) throw ContractViolation("gamma must be > 0");
  spec_.gamma = gamma;
  spec_.axis_max = space == Space::kWeight ? instance.capacity()
                                           : instance.total_profit();
  rows_ = instance.size() + 1;
  cols_ = static_cast<std::size_t>(spec_.bucket_count());
  const auto cells = static_cast<uint128>(rows_) * cols_;
  if (cells <= dense_cell_limit) {
    dense_.assign(static_cast<std::size_t>(cells), kEmpty);
  }
  // The empty solution seeds the population.
  Solution empty(instance.size());
  insert(empty, Evaluation{});
}

std::uint32_t ArchiveGrid::get(std::uint64_t k) const {
  if (!dense_.empty()) return dense_[k];
  auto it = sparse_.find(k);
  return it == sparse_.end() ? kEmpty : it->second;
}

void ArchiveGrid::put(std::uint64_t k, std::uint32_t slot) {
  if (!dense_.empty()) {
    dense_[k] = slot;
  } else {
    sparse_[k] = slot;
  }
}

std::uint32_t ArchiveGrid::home_slot(std::uint64_t base_key) const {
  auto it = home_.find(base_key);
  return it == home_.end() ? kEmpty : it->second;
}

std::uint32_t ArchiveGrid::append(const Solution& x, const Evaluation& e) {
  store_.push_back(Candidate{x, e});
  return static_cast<std::uint32_t>(store_.size() - 1);
}

void ArchiveGrid::check_candidate(const Solution& x,
                                  const Evaluation& e) const {
  if (evaluate(x, instance_) != e) {
    throw ContractViolation("evaluation does not match solution");
  }
}

std::optional<std::size_t> ArchiveGrid::cell(std::size_t row,
                                             std::size_t col) const {
  if (row < 1 || row > rows_ || col < 1 || col > cols_) {
    throw ContractViolation("cell coordinates out of range");
  }
  std::uint32_t s = get(key(row - 1, col - 1));
  if (s == kEmpty) return std::nullopt;
  return s;
}

InsertOutcome ArchiveGrid::insert(const Solution& x, const Evaluation& e) {
  return space_ == Space::kWeight ? insert_weight_based(x, e)
                                  : insert_profit_based(x, e);
}

InsertOutcome ArchiveGrid::insert_weight_based(const Solution& x,
                                               const Evaluation& e) {
  if (space_ != Space::kWeight) {
    throw ContractViolation("insert_weight_based on a profit-based grid");
  }
  check_candidate(x, e);
  if (e.weight > instance_.capacity()) return {};
  return insert_impl(x, e, e.weight,
                     [](const Evaluation& a, const Evaluation& b) {
                       return a.profit > b.profit;
                     });
}

InsertOutcome ArchiveGrid::insert_profit_based(const Solution& x,
                                               const Evaluation& e) {
  if (space_ != Space::kProfit) {
    throw ContractViolation("insert_profit_based on a weight-based grid");
  }
  check_candidate(x, e);
  return insert_impl(x, e, e.profit,
                     [](const Evaluation& a, const Evaluation& b) {
                       return a.weight < b.weight;
                     });
}

template <typename Better>
InsertOutcome ArchiveGrid::insert_impl(const Solution& x, const Evaluation& e,
                                       std::int64_t axis_value,
                                       Better better) {
  InsertOutcome out;
  const std::size_t base_row = e.last_index;
  const auto col = static_cast<std::size_t>(bucket_index(axis_value, spec_) - 1);
  const std::uint64_t base = key(base_row, col);

  std::uint32_t occupant = get(base);
  if (occupant == kEmpty) {
    occupant = append(x, e);
    put(base, occupant);
    if (mode_ == ArchiveMode::kStrict) home_[base] = occupant;
    out.accepted = out.appended = true;
    out.cells_touched = 1;
    out.slot = occupant;
  } else if (better(e, store_[occupant].eval)) {
    out.accepted = true;
    if (mode_ == ArchiveMode::kLiteral ||
        store_[occupant].eval.last_index == e.last_index) {
      store_[occupant].bits.assign(x);
      store_[occupant].eval = e;
      out.replaced_slots = 1;
    } else {
      // The incumbent is a lower-v solution shared with lower rows; leave it
      // there and write x into this cell's own slot.
      std::uint32_t home = home_slot(base);
      if (home == kEmpty) {
        home = append(x, e);
        home_[base] = home;
        out.appended = true;
      } else {
        store_[home].bits.assign(x);
        store_[home].eval = e;
        out.replaced_slots = 1;
      }
      occupant = home;
      put(base, occupant);
      out.cells_touched = 1;
    }
    out.slot = occupant;
  }

  // DP-based filtering: rows above the base row also accept x.
  for (std::size_t row = base_row + 1; row < rows_; ++row) {
    const std::uint64_t k = key(row, col);
    const std::uint32_t current = get(k);
    if (current == occupant) continue;
    if (current == kEmpty || better(e, store_[current].eval)) {
      put(k, occupant);
      ++out.cells_touched;
    }
  }
  return out;
}

const Candidate& ArchiveGrid::select_parent(RandomStream& rng) const {
  if (store_.empty()) throw ContractViolation("select_parent on empty store");
  return store_[rng.uniform_below(store_.size())];
}

std::size_t ArchiveGrid::referenced_slot_count() const {
  std::vector<bool> seen(store_.size(), false);
  std::size_t count = 0;
  auto mark = [&](std::uint32_t s) {
    if (s != kEmpty && !seen[s]) {
      seen[s] = true;
      ++count;
    }
  };
  if (!dense_.empty()) {
    for (auto s : dense_) mark(s);
  } else {
    for (const auto& [k, s] : sparse_) mark(s);
  }
  return count;
}

MapSnapshot ArchiveGrid::snapshot() const {
  MapSnapshot snap;
  snap.space = space_;
  snap.mode = mode_;
  snap.n = instance_.size();
  snap.axis_max = spec_.axis_max;
  snap.gamma = spec_.gamma;
  snap.rows = rows_;
  snap.cols = cols_;
  snap.population_size = store_.size();
  snap.referenced_slots = referenced_slot_count();
  auto record = [&](std::uint64_t k, std::uint32_t s) {
    const Candidate& c = store_[s];
    snap.cells.push_back(CellRecord{
        static_cast<std::size_t>(k % rows_) + 1,
        static_cast<std::size_t>(k / rows_) + 1, c.eval.profit,
        is_feasible(c.eval, instance_), s});
  };
  if (!dense_.empty()) {
    for (std::uint64_t k = 0; k < dense_.size(); ++k) {
      if (dense_[k] != kEmpty) record(k, dense_[k]);
    }
  } else {
    for (const auto& [k, s] : sparse_) record(k, s);
  }
  std::sort(snap.cells.begin(), snap.cells.end(),
            [](const CellRecord& a, const CellRecord& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  return snap;
}

void write_snapshot_csv(const MapSnapshot& s, std::ostream& out) {
  out << "# space=" << to_string(s.space) << " n=" << s.n
      << (s.space == Space::kWeight ? " C=" : " Q=") << s.axis_max
      << " gamma=" << s.gamma.to_string() << " mode=" << to_string(s.mode)
      << " rows=" << s.rows << " cols=" << s.cols
      << " population=" << s.population_size
      << " referenced=" << s.referenced_slots << '\n';
  out << "row_v,col_bucket,objective,feasible,slot\n";
  for (const auto& c : s.cells) {
    out << c.row << ',' << c.col << ',' << c.objective << ','
        << (c.feasible ? 1 : 0) << ',' << c.slot << '\n';
  }
}

MapSnapshot read_snapshot_csv(std::istream& in) {
  MapSnapshot s;
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw ParseError(line_no, "missing metadata line");
  }
  std::istringstream meta(line.substr(2));
  std::string field;
  bool have_space = false;
  while (meta >> field) {
    auto eq = field.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "bad field " + field);
    std::string k = field.substr(0, eq);
    std::string v = field.substr(eq + 1);
    try {
      if (k == "space") {
        if (v != "weight" && v != "profit") throw ParseError(line_no, "bad space");
        s.space = v == "weight" ? Space::kWeight : Space::kProfit;
        have_space = true;
      } else if (k == "n") {
        s.n = std::stoull(v);
      } else if (k == "C" || k == "Q") {
        s.axis_max = std::stoll(v);
      } else if (k == "gamma") {
        s.gamma = Rational::parse(v);
      } else if (k == "mode") {
        s.mode = parse_archive_mode(v);
      } else if (k == "rows") {
        s.rows = std::stoull(v);
      } else if (k == "cols") {
        s.cols = std::stoull(v);
      } else if (k == "population") {
        s.population_size = std::stoull(v);
      } else if (k == "referenced") {
        s.referenced_slots = std::stoull(v);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& ex) {
      throw ParseError(line_no, "bad value for " + k + ": " + ex.what());
    }
  }
  if (!have_space) throw ParseError(line_no, "metadata lacks space=");
  ++line_no;
  if (!std::getline(in, line) ||
      line != "row_v,col_bucket,objective,feasible,slot") {
    throw ParseError(line_no, "unexpected CSV header");
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    CellRecord c;
    char c1, c2, c3, c4;
    int feasible = 0;
    std::istringstream row(line);
    if (!(row >> c.row >> c1 >> c.col >> c2 >> c.objective >> c3 >> feasible >>
          c4 >> c.slot) ||
        c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',') {
      throw ParseError(line_no, "malformed cell record");
    }
    c.feasible = feasible != 0;
    s.cells.push_back(c);
  }
  return s;
}

}  // namespace qdknap

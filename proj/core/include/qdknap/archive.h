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

#ifndef QDKNAP_ARCHIVE_H_
#define QDKNAP_ARCHIVE_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qdknap/knapsack.h"
#include "qdknap/random.h"
#include "qdknap/rational.h"

namespace qdknap {

// Niche width gamma along one behavioural axis spanning [0, axis_max].
struct BucketSpec {
  Rational gamma;
  std::int64_t axis_max = 0;

  // floor(axis_max / gamma) + 1.
  std::int64_t bucket_count() const;
};

// floor(value / gamma) + 1, exact. value must be non-negative.
std::int64_t bucket_index(std::int64_t value, const BucketSpec& spec);

// kWeight: columns bucket w(x) in [0, C], cells keep the highest profit and
// reject infeasible solutions. kProfit: columns bucket p(x) in [0, Q],
// cells keep the lowest weight, infeasible solutions admitted.
enum class Space { kWeight, kProfit };

// kLiteral overwrites the base cell's referenced slot in place even when it
// is shared with lower rows. kStrict gives every base cell its own slot so
// that the occupant of row j always has v(x) <= j - 1.
enum class ArchiveMode { kStrict, kLiteral };

std::string_view to_string(Space space);
std::string_view to_string(ArchiveMode mode);
ArchiveMode parse_archive_mode(std::string_view text);

struct InsertOutcome {
  bool accepted = false;  // x is referenced by at least one cell afterwards
  bool appended = false;  // a new store slot was created
  std::size_t replaced_slots = 0;
  std::size_t cells_touched = 0;  // cell references that changed
  std::optional<std::size_t> slot;  // store slot whose content was written
};

struct CellRecord {
  std::size_t row = 0;  // 1-based; accepts v(x) <= row - 1
  std::size_t col = 0;  // 1-based bucket
  std::int64_t objective = 0;  // occupant profit, both spaces
  bool feasible = false;
  std::size_t slot = 0;

  friend bool operator==(const CellRecord&, const CellRecord&) = default;
};

struct MapSnapshot {
  Space space = Space::kWeight;
  ArchiveMode mode = ArchiveMode::kStrict;
  std::size_t n = 0;
  std::int64_t axis_max = 0;  // C or Q
  Rational gamma;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t population_size = 0;
  std::size_t referenced_slots = 0;
  std::vector<CellRecord> cells;  // occupied cells, sorted by (row, col)

  friend bool operator==(const MapSnapshot&, const MapSnapshot&) = default;
};

// CSV: one "# key=value ..." metadata line, then the header
// "row_v,col_bucket,objective,feasible,slot", then one line per cell.
void write_snapshot_csv(const MapSnapshot& snapshot, std::ostream& out);
MapSnapshot read_snapshot_csv(std::istream& in);

// The MAP-Elites population P together with the cell matrix A.
//
// rows = n + 1 (row v(x) + 1 is the base row of x), cols = bucket count of
// the space's axis. Cells hold indices into an append-only store of
// candidates; with DP-based filtering a single slot is shared by every cell
// (j, col) with j >= v(x) + 1 that it dominates.
class ArchiveGrid {
 public:
  static constexpr std::uint64_t kDenseCellLimit = 100'000'000;

  ArchiveGrid(const Instance& instance, Space space, Rational gamma,
              ArchiveMode mode, std::uint64_t dense_cell_limit = kDenseCellLimit);

  Space space() const { return space_; }
  ArchiveMode mode() const { return mode_; }
  const Instance& instance() const { return instance_; }
  const BucketSpec& bucket_spec() const { return spec_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_dense() const { return !dense_.empty(); }

  // Dispatches on space(). `e` must equal evaluate(x, instance()).
  InsertOutcome insert(const Solution& x, const Evaluation& e);
  InsertOutcome insert_weight_based(const Solution& x, const Evaluation& e);
  InsertOutcome insert_profit_based(const Solution& x, const Evaluation& e);

  // Uniform over all store slots, referenced or not.
  const Candidate& select_parent(RandomStream& rng) const;

  std::size_t population_size() const { return store_.size(); }
  const Candidate& slot(std::size_t index) const { return store_[index]; }

  // 1-based coordinates.
  std::optional<std::size_t> cell(std::size_t row, std::size_t col) const;

  std::size_t referenced_slot_count() const;
  MapSnapshot snapshot() const;

 private:
  static constexpr std::uint32_t kEmpty = 0xffffffffU;

  std::uint64_t key(std::size_t row0, std::size_t col0) const {
    return static_cast<std::uint64_t>(col0) * rows_ + row0;
  }
  std::uint32_t get(std::uint64_t k) const;
  void put(std::uint64_t k, std::uint32_t slot);

  // v(x) is equal for a base cell's home slot and the offspring, so the
  // offspring can overwrite it without breaking row acceptability.
  std::uint32_t home_slot(std::uint64_t base_key) const;

  template <typename Better>
  InsertOutcome insert_impl(const Solution& x, const Evaluation& e,
                            std::int64_t axis_value, Better better);

  void check_candidate(const Solution& x, const Evaluation& e) const;
  std::uint32_t append(const Solution& x, const Evaluation& e);

  Instance instance_;
  Space space_;
  ArchiveMode mode_;
  BucketSpec spec_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Candidate> store_;
  std::vector<std::uint32_t> dense_;
  std::unordered_map<std::uint64_t, std::uint32_t> sparse_;
  std::unordered_map<std::uint64_t, std::uint32_t> home_;
};

}  // namespace qdknap

#endif  // QDKNAP_ARCHIVE_H_

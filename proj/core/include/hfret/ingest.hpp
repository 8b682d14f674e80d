// Copyright 2026 the hfret authors
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

#ifndef HFRET_INGEST_HPP
#define HFRET_INGEST_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hfret {

/// One timestamped index quotation.  Timestamps carry 1 s resolution as a
/// (calendar day, second-of-day) pair; days compare by the serial.
struct TickRecord {
  std::int64_t day;    // days since 1970-01-01
  std::int32_t second; // second of day, [0, 86400)
  double price;        // > 0

  friend auto operator<=>(const TickRecord&, const TickRecord&) = default;
};

struct SessionSpec {
  std::int32_t open_second = 9 * 3600;          // 09:00
  std::int32_t close_second = 17 * 3600 + 29 * 60; // 17:29
  std::int32_t interval_seconds = 15;

  void validate() const;
  /// Number of grid instants: open, open + dt, ..., <= close.
  std::int64_t slots_per_day() const;
};

/// Fixed-grid prices for one market day after last-tick resampling.
/// start_slot > 0 marks a trimmed leading stretch before the first tick.
struct DayGrid {
  std::int64_t day;
  std::int64_t start_slot;
  std::vector<double> prices;
};

/// Intraday log-returns on a fixed sampling grid.  Immutable once built.
struct ReturnSeries {
  std::vector<double> values;
  std::vector<std::size_t> day_offsets; // first return of each day
  std::vector<std::int64_t> day_ids;
  std::vector<std::int64_t> start_slots; // slot of the first return per day
  std::int32_t scale_seconds = 15;
  double loc_applied = 0.0;  // standardization: (x - loc) / scale
  double scale_applied = 1.0;
  bool deseasonalized = false;

  std::size_t size() const { return values.size(); }
  std::size_t days() const { return day_offsets.size(); }
  /// [begin, end) index range of one day's returns.
  std::pair<std::size_t, std::size_t> day_range(std::size_t d) const;
  void check_structure() const;
};

struct ParseReport {
  std::size_t rows = 0;
  std::size_t reordered = 0;   // out-of-order rows re-sorted
  std::size_t duplicates = 0;  // duplicate timestamps, last kept
};

struct ResampleReport {
  std::size_t dropped_days = 0;   // days without any tick
  std::size_t trimmed_slots = 0;  // leading empty slots
};

struct SampleStats {
  double max, min, mean, variance, skewness, kurtosis_raw, kurtosis_excess;
  std::size_t n;
};

/// Tick CSV: `timestamp,price`, ISO-8601 local timestamps, optional header.
std::vector<TickRecord> parse_ticks(std::istream& in,
                                    ParseReport* report = nullptr);

std::vector<DayGrid> resample(const std::vector<TickRecord>& ticks,
                              const SessionSpec& session,
                              ResampleReport* report = nullptr);

/// Within-day log-returns; the overnight pair is never differenced.
ReturnSeries log_returns(const std::vector<DayGrid>& grids,
                         const SessionSpec& session);

/// Divide each return by the across-days mean absolute return of its
/// time-of-day slot.  Slots whose mean is zero are left unchanged and
/// reported through zero_slots.
ReturnSeries deseasonalize(const ReturnSeries& series,
                           std::vector<std::int64_t>* zero_slots = nullptr);

/// Shift and scale to sample mean 0, sample variance 1 (n - 1 denominator).
ReturnSeries standardize(const ReturnSeries& series);

/// Invert a previous standardization.
ReturnSeries unstandardize(const ReturnSeries& series);

SampleStats sample_stats(const ReturnSeries& series);

/// ReturnSeries file pair: CSV `day_index,slot_index,value` plus a JSON
/// sidecar carrying the session and standardization metadata.
void save_series(const ReturnSeries& series, const SessionSpec& session,
                 const std::string& csv_path, const std::string& json_path);
ReturnSeries load_series(const std::string& csv_path,
                         const std::string& json_path,
                         SessionSpec* session = nullptr);

} // namespace hfret

#endif // HFRET_INGEST_HPP

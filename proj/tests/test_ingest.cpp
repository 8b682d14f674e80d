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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "hfret/ingest.hpp"

using namespace hfret;

namespace {

// Simple session: 09:00:00 to 09:01:00 at 15 s -> 5 slots, 4 returns/day.
SessionSpec tiny_session() {
  SessionSpec s;
  s.open_second = 9 * 3600;
  s.close_second = 9 * 3600 + 60;
  s.interval_seconds = 15;
  return s;
}

ReturnSeries series_from(const std::vector<std::vector<double>>& days) {
  ReturnSeries s;
  for (std::size_t d = 0; d < days.size(); ++d) {
    s.day_offsets.push_back(s.values.size());
    s.day_ids.push_back(static_cast<std::int64_t>(d));
    s.start_slots.push_back(1);
    for (double v : days[d]) s.values.push_back(v);
  }
  s.check_structure();
  return s;
}

} // namespace

TEST_CASE("parse_ticks: header, ordering, duplicates, errors") {
  std::stringstream in(
      "timestamp,price\n"
      "2001-03-02T09:00:14,100.5\n"
      "2001-03-02 09:00:02,100.0\n"
      "2001-03-02T09:00:02,100.2\n");
  ParseReport rep;
  const auto ticks = parse_ticks(in, &rep);
  REQUIRE(ticks.size() == 2);
  CHECK(ticks[0].price == 100.2); // duplicate timestamp keeps the last row
  CHECK(ticks[1].price == 100.5);
  CHECK(rep.rows == 3);
  CHECK(rep.duplicates == 1);

  std::stringstream bad("2001-03-02T09:00:02,-5\n");
  CHECK_THROWS_AS(parse_ticks(bad), std::invalid_argument);
  std::stringstream garbled("2001-03-02T09:00:02\n");
  CHECK_THROWS_AS(parse_ticks(garbled), std::invalid_argument);
}

TEST_CASE("resample: last tick at or before each grid instant") {
  const SessionSpec s = tiny_session();
  std::stringstream in(
      "2001-03-02T09:00:00,10\n"
      "2001-03-02T09:00:20,11\n"
      "2001-03-02T09:00:44,12\n"
      "2001-03-02T09:00:45,13\n");
  const auto grids = resample(parse_ticks(in), s);
  REQUIRE(grids.size() == 1);
  CHECK(grids[0].start_slot == 0);
  // slots at 0,15,30,45,60 s
  CHECK(grids[0].prices == std::vector<double>{10, 10, 11, 13, 13});
}

TEST_CASE("resample trims leading slots and is idempotent on gridded days") {
  const SessionSpec s = tiny_session();
  std::stringstream in(
      "2001-03-02T09:00:16,10\n"
      "2001-03-02T09:00:30,11\n"
      "2001-03-02T09:00:45,12\n"
      "2001-03-02T09:01:00,13\n");
  ResampleReport rep;
  const auto grids = resample(parse_ticks(in), s, &rep);
  REQUIRE(grids.size() == 1);
  // 09:00:00 and 09:00:15 have no tick yet; the 09:00:16 tick is already
  // superseded by the 09:00:30 one when the next grid instant arrives
  CHECK(grids[0].start_slot == 2);
  CHECK(grids[0].prices == std::vector<double>{11, 12, 13});
  CHECK(rep.trimmed_slots == 2);

  // feeding the gridded prices back as ticks reproduces the grid
  std::stringstream regrid(
      "2001-03-02T09:00:30,10\n"
      "2001-03-02T09:00:45,11\n"
      "2001-03-02T09:01:00,12\n");
  const auto again = resample(parse_ticks(regrid), s);
  CHECK(again[0].prices == std::vector<double>{10, 11, 12});
}

TEST_CASE("log_returns never crosses day boundaries") {
  const SessionSpec s = tiny_session();
  std::stringstream in(
      "2001-03-02T09:00:00,100\n"
      "2001-03-02T09:01:00,110\n"
      "2001-03-05T09:00:00,200\n"
      "2001-03-05T09:01:00,220\n");
  const ReturnSeries r = log_returns(resample(parse_ticks(in), s), s);
  CHECK(r.days() == 2);
  CHECK(r.size() == 8); // 4 returns per day
  r.check_structure();
  double day1_sum = 0.0, day2_sum = 0.0;
  for (std::size_t i = 0; i < 4; ++i) day1_sum += r.values[i];
  for (std::size_t i = 4; i < 8; ++i) day2_sum += r.values[i];
  CHECK(day1_sum == doctest::Approx(std::log(1.1)).epsilon(1e-12));
  CHECK(day2_sum == doctest::Approx(std::log(1.1)).epsilon(1e-12));
}

TEST_CASE("deseasonalize: hand computation and degenerate slot") {
  // two days, two slots; slot means (0.5, 2.0)
  ReturnSeries s = series_from({{1.0, -4.0}, {0.0, 0.0}});
  std::vector<std::int64_t> zero_slots;
  const ReturnSeries d = deseasonalize(s, &zero_slots);
  CHECK(d.values[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(d.values[1] == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(d.deseasonalized);
  CHECK(zero_slots.empty());

  // a slot with zero mean absolute return stays unchanged and is reported
  ReturnSeries z = series_from({{1.0, 0.0}, {3.0, 0.0}});
  const ReturnSeries dz = deseasonalize(z, &zero_slots);
  CHECK(dz.values[1] == 0.0);
  CHECK(dz.values[3] == 0.0);
  REQUIRE(zero_slots.size() == 1);
  CHECK(zero_slots[0] == 2);

  // identical |r| in every slot -> all outputs have magnitude 1
  const ReturnSeries u = deseasonalize(series_from({{0.5, -2.0}, {-0.5, 2.0}}));
  for (double v : u.values) CHECK(std::fabs(v) == doctest::Approx(1.0));

  // misaligned days are rejected
  ReturnSeries m = series_from({{1.0, 2.0}, {1.0, 2.0}});
  m.start_slots[1] = 2;
  CHECK_THROWS_AS(deseasonalize(m), std::invalid_argument);
}

TEST_CASE("standardize: hand example and round trip") {
  ReturnSeries s = series_from({{1.0, 2.0, 3.0}});
  const ReturnSeries z = standardize(s);
  CHECK(z.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(z.values[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(z.values[2] == doctest::Approx(1.0).epsilon(1e-12));

  const ReturnSeries back = unstandardize(z);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(back.values[i] == doctest::Approx(s.values[i]).epsilon(1e-12));

  const ReturnSeries zz = standardize(z); // idempotent up to fp noise
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(zz.values[i] == doctest::Approx(z.values[i]).epsilon(1e-12));

  ReturnSeries flat = series_from({{1.0, 1.0, 1.0}});
  CHECK_THROWS_AS(standardize(flat), std::invalid_argument);
}

TEST_CASE("sample_stats") {
  ReturnSeries s = series_from({{-1.0, 0.0, 1.0, -1.0, 0.0, 1.0}});
  const SampleStats st = sample_stats(s);
  CHECK(st.skewness == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(st.kurtosis_raw == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(st.kurtosis_excess == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(st.max == 1.0);
  CHECK(st.min == -1.0);
  CHECK(st.n == 6);

  ReturnSeries too_short = series_from({{1.0, 2.0, 3.0}});
  CHECK_THROWS_AS(sample_stats(too_short), std::invalid_argument);
}

TEST_CASE("series save/load round trip") {
  const SessionSpec s = tiny_session();
  std::stringstream in(
      "2001-03-02T09:00:00,100\n"
      "2001-03-02T09:00:31,104\n"
      "2001-03-02T09:01:00,102\n"
      "2001-03-05T09:00:00,200\n"
      "2001-03-05T09:01:00,220\n");
  ReturnSeries r = standardize(log_returns(resample(parse_ticks(in), s), s));

  const auto dir = std::filesystem::temp_directory_path() / "hfret_ingest_test";
  std::filesystem::create_directories(dir);
  const std::string csv = (dir / "r.csv").string();
  const std::string sidecar = (dir / "r.json").string();
  save_series(r, s, csv, sidecar);

  SessionSpec s2;
  const ReturnSeries r2 = load_series(csv, sidecar, &s2);
  CHECK(r2.size() == r.size());
  CHECK(r2.days() == r.days());
  CHECK(r2.scale_seconds == r.scale_seconds);
  CHECK(r2.loc_applied == doctest::Approx(r.loc_applied).epsilon(1e-14));
  CHECK(r2.scale_applied == doctest::Approx(r.scale_applied).epsilon(1e-14));
  CHECK(s2.open_second == s.open_second);
  for (std::size_t i = 0; i < r.size(); ++i)
    CHECK(r2.values[i] == doctest::Approx(r.values[i]).epsilon(1e-14));
  CHECK(r2.day_ids == r.day_ids);
  CHECK(r2.start_slots == r.start_slots);
}

TEST_CASE("default session matches the configured window arithmetic") {
  SessionSpec s; // 09:00:00 - 17:29:00 at 15 s
  CHECK(s.open_second == 32400);
  CHECK(s.close_second == 62940);
  CHECK(s.slots_per_day() == 2037); // hence 2036 returns per full day
}

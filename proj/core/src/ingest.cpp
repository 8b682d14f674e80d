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

#include "hfret/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hfret {

namespace {

// Civil date to days since 1970-01-01 (proleptic Gregorian).
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = static_cast<int>(yoe) + static_cast<int>(era) * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y += m <= 2;
}

bool parse_timestamp(const std::string& s, std::int64_t& day,
                     std::int32_t& second) {
  int y, mo, d, h, mi, se;
  if (std::sscanf(s.c_str(), "%d-%d-%dT%d:%d:%d", &y, &mo, &d, &h, &mi,
                  &se) != 6 &&
      std::sscanf(s.c_str(), "%d-%d-%d %d:%d:%d", &y, &mo, &d, &h, &mi,
                  &se) != 6)
    return false;
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 ||
      mi > 59 || se < 0 || se > 60)
    return false;
  day = days_from_civil(y, mo, d);
  second = h * 3600 + mi * 60 + se;
  return true;
}

} // namespace

void SessionSpec::validate() const {
  if (!(open_second < close_second))
    throw std::invalid_argument("SessionSpec: open must precede close");
  if (interval_seconds <= 0)
    throw std::invalid_argument("SessionSpec: interval must be positive");
}

std::int64_t SessionSpec::slots_per_day() const {
  validate();
  return (close_second - open_second) / interval_seconds + 1;
}

std::pair<std::size_t, std::size_t> ReturnSeries::day_range(
    std::size_t d) const {
  const std::size_t begin = day_offsets.at(d);
  const std::size_t end =
      (d + 1 < day_offsets.size()) ? day_offsets[d + 1] : values.size();
  return {begin, end};
}

void ReturnSeries::check_structure() const {
  if (day_offsets.empty() || day_offsets.front() != 0)
    throw std::logic_error("ReturnSeries: day_offsets must start at 0");
  for (std::size_t i = 1; i < day_offsets.size(); ++i)
    if (day_offsets[i] <= day_offsets[i - 1])
      throw std::logic_error("ReturnSeries: day_offsets not increasing");
  if (day_offsets.back() >= values.size())
    throw std::logic_error("ReturnSeries: trailing empty day");
  if (day_ids.size() != day_offsets.size() ||
      start_slots.size() != day_offsets.size())
    throw std::logic_error("ReturnSeries: day metadata size mismatch");
}

std::vector<TickRecord> parse_ticks(std::istream& in, ParseReport* report) {
  std::vector<TickRecord> out;
  ParseReport rep;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("parse_ticks: malformed row at line " +
                               std::to_string(lineno));
    const std::string ts = line.substr(0, comma);
    const std::string ps = line.substr(comma + 1);
    TickRecord rec{};
    if (!parse_timestamp(ts, rec.day, rec.second)) {
      if (lineno == 1) continue; // optional header
      throw std::invalid_argument("parse_ticks: bad timestamp at line " +
                               std::to_string(lineno));
    }
    try {
      rec.price = std::stod(ps);
    } catch (const std::exception&) {
      throw std::invalid_argument("parse_ticks: bad price at line " +
                               std::to_string(lineno));
    }
    if (!(rec.price > 0.0))
      throw std::invalid_argument("parse_ticks: nonpositive price at line " +
                               std::to_string(lineno));
    rep.rows++;
    out.push_back(rec);
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] < out[i - 1]) rep.reordered++;
  std::stable_sort(out.begin(), out.end(),
                   [](const TickRecord& a, const TickRecord& b) {
                     return std::pair(a.day, a.second) <
                            std::pair(b.day, b.second);
                   });
  // duplicate timestamps keep the last record
  std::vector<TickRecord> dedup;
  dedup.reserve(out.size());
  for (const auto& r : out) {
    if (!dedup.empty() && dedup.back().day == r.day &&
        dedup.back().second == r.second) {
      dedup.back() = r;
      rep.duplicates++;
    } else {
      dedup.push_back(r);
    }
  }
  if (report) *report = rep;
  return dedup;
}

std::vector<DayGrid> resample(const std::vector<TickRecord>& ticks,
                              const SessionSpec& session,
                              ResampleReport* report) {
  session.validate();
  ResampleReport rep;
  std::vector<DayGrid> out;
  const std::int64_t slots = session.slots_per_day();

  std::size_t i = 0;
  while (i < ticks.size()) {
    const std::int64_t day = ticks[i].day;
    std::size_t j = i;
    while (j < ticks.size() && ticks[j].day == day) ++j;

    DayGrid grid{day, 0, {}};
    std::size_t k = i;
    std::optional<double> last;
    bool started = false;
    for (std::int64_t slot = 0; slot < slots; ++slot) {
      const std::int32_t instant =
          session.open_second +
          static_cast<std::int32_t>(slot) * session.interval_seconds;
      while (k < j && ticks[k].second <= instant) {
        last = ticks[k].price;
        ++k;
      }
      if (!last.has_value()) {
        // pre-open slot before the first tick of the day: trim
        rep.trimmed_slots++;
        grid.start_slot = slot + 1;
        continue;
      }
      if (!started) started = true;
      grid.prices.push_back(*last);
    }
    if (grid.prices.empty())
      rep.dropped_days++;
    else
      out.push_back(std::move(grid));
    i = j;
  }
  if (report) *report = rep;
  return out;
}

ReturnSeries log_returns(const std::vector<DayGrid>& grids,
                         const SessionSpec& session) {
  session.validate();
  ReturnSeries s;
  s.scale_seconds = session.interval_seconds;
  for (const auto& g : grids) {
    if (g.prices.size() < 2)
      throw std::invalid_argument(
          "log_returns: each day grid needs >= 2 prices");
    s.day_offsets.push_back(s.values.size());
    s.day_ids.push_back(g.day);
    s.start_slots.push_back(g.start_slot + 1); // slot of the first return
    for (std::size_t i = 1; i < g.prices.size(); ++i) {
      if (!(g.prices[i] > 0.0) || !(g.prices[i - 1] > 0.0))
        throw std::invalid_argument("log_returns: nonpositive price");
      s.values.push_back(std::log(g.prices[i] / g.prices[i - 1]));
    }
  }
  if (s.values.empty())
    throw std::invalid_argument("log_returns: no returns produced");
  s.check_structure();
  return s;
}

ReturnSeries deseasonalize(const ReturnSeries& series,
                           std::vector<std::int64_t>* zero_slots) {
  series.check_structure();
  // all days must sit on the same slot grid
  const std::int64_t start = series.start_slots.front();
  std::size_t len = series.day_range(0).second - series.day_range(0).first;
  for (std::size_t d = 0; d < series.days(); ++d) {
    const auto [b, e] = series.day_range(d);
    if (series.start_slots[d] != start || e - b != len)
      throw std::invalid_argument("deseasonalize: misaligned days");
  }

  std::vector<double> slot_mean(len, 0.0);
  for (std::size_t d = 0; d < series.days(); ++d) {
    const auto [b, e] = series.day_range(d);
    for (std::size_t i = b; i < e; ++i)
      slot_mean[i - b] += std::fabs(series.values[i]);
  }
  for (auto& m : slot_mean) m /= static_cast<double>(series.days());

  ReturnSeries out = series;
  for (std::size_t slot = 0; slot < len; ++slot) {
    if (slot_mean[slot] == 0.0) {
      if (zero_slots) zero_slots->push_back(start + slot);
      continue;
    }
    for (std::size_t d = 0; d < series.days(); ++d)
      out.values[series.day_offsets[d] + slot] /= slot_mean[slot];
  }
  out.deseasonalized = true;
  return out;
}

ReturnSeries standardize(const ReturnSeries& series) {
  if (series.size() < 2)
    throw std::invalid_argument("standardize: need length >= 2");
  double mean = 0.0;
  for (double v : series.values) mean += v;
  mean /= static_cast<double>(series.size());
  double var = 0.0;
  for (double v : series.values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(series.size() - 1);
  if (!(var > 0.0))
    throw std::invalid_argument("standardize: zero sample variance");
  const double sd = std::sqrt(var);

  ReturnSeries out = series;
  for (auto& v : out.values) v = (v - mean) / sd;
  out.loc_applied = series.loc_applied + mean * series.scale_applied;
  out.scale_applied = series.scale_applied * sd;
  return out;
}

ReturnSeries unstandardize(const ReturnSeries& series) {
  ReturnSeries out = series;
  for (auto& v : out.values)
    v = v * series.scale_applied + series.loc_applied;
  out.loc_applied = 0.0;
  out.scale_applied = 1.0;
  return out;
}

SampleStats sample_stats(const ReturnSeries& series) {
  const std::size_t n = series.size();
  if (n < 4)
    throw std::invalid_argument("sample_stats: need length >= 4 for kurtosis");
  double mean = 0.0, mx = series.values[0], mn = series.values[0];
  for (double v : series.values) {
    mean += v;
    mx = std::max(mx, v);
    mn = std::min(mn, v);
  }
  mean /= static_cast<double>(n);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : series.values) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  SampleStats st{};
  st.max = mx;
  st.min = mn;
  st.mean = mean;
  st.variance = m2 * static_cast<double>(n) / static_cast<double>(n - 1);
  st.skewness = m3 / std::pow(m2, 1.5);
  st.kurtosis_raw = m4 / (m2 * m2);
  st.kurtosis_excess = st.kurtosis_raw - 3.0;
  st.n = n;
  return st;
}

void save_series(const ReturnSeries& series, const SessionSpec& session,
                 const std::string& csv_path, const std::string& json_path) {
  series.check_structure();
  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("save_series: cannot open " + csv_path);
  csv << "day_index,slot_index,value\n";
  csv.precision(17);
  for (std::size_t d = 0; d < series.days(); ++d) {
    const auto [b, e] = series.day_range(d);
    for (std::size_t i = b; i < e; ++i)
      csv << d << ',' << series.start_slots[d] + static_cast<std::int64_t>(i - b)
          << ',' << series.values[i] << '\n';
  }

  nlohmann::json j;
  j["scale_seconds"] = series.scale_seconds;
  int y, m, dd;
  j["session"] = {{"open_second", session.open_second},
                  {"close_second", session.close_second},
                  {"interval_seconds", session.interval_seconds}};
  j["standardization"] = {{"location", series.loc_applied},
                          {"scale", series.scale_applied}};
  j["deseasonalized"] = series.deseasonalized;
  j["n"] = series.size();
  j["days"] = series.days();
  std::vector<std::string> ids;
  for (auto day : series.day_ids) {
    civil_from_days(day, y, m, dd);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", y, m, dd);
    ids.emplace_back(buf);
  }
  j["day_dates"] = ids;
  std::ofstream js(json_path);
  if (!js) throw std::runtime_error("save_series: cannot open " + json_path);
  js << j.dump(2) << '\n';
}

ReturnSeries load_series(const std::string& csv_path,
                         const std::string& json_path, SessionSpec* session) {
  std::ifstream js(json_path);
  if (!js) throw std::runtime_error("load_series: cannot open " + json_path);
  nlohmann::json j;
  js >> j;

  ReturnSeries s;
  s.scale_seconds = j.at("scale_seconds");
  s.loc_applied = j.at("standardization").at("location");
  s.scale_applied = j.at("standardization").at("scale");
  s.deseasonalized = j.at("deseasonalized");
  if (session) {
    session->open_second = j.at("session").at("open_second");
    session->close_second = j.at("session").at("close_second");
    session->interval_seconds = j.at("session").at("interval_seconds");
  }

  std::ifstream csv(csv_path);
  if (!csv) throw std::runtime_error("load_series: cannot open " + csv_path);
  std::string line;
  std::getline(csv, line); // header
  std::int64_t prev_day = -1;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::int64_t day, slot;
    double value;
    if (std::sscanf(line.c_str(), "%ld,%ld,%lf", &day, &slot, &value) != 3)
      throw std::runtime_error("load_series: malformed row: " + line);
    if (day != prev_day) {
      s.day_offsets.push_back(s.values.size());
      s.day_ids.push_back(day);
      s.start_slots.push_back(slot);
      prev_day = day;
    }
    s.values.push_back(value);
  }
  // the CSV carries compact day indices; the sidecar restores the dates
  if (j.contains("day_dates")) {
    const auto dates = j.at("day_dates").get<std::vector<std::string>>();
    if (dates.size() != s.day_ids.size())
      throw std::runtime_error("load_series: day_dates size mismatch");
    for (std::size_t d = 0; d < dates.size(); ++d) {
      int y, m, dd;
      if (std::sscanf(dates[d].c_str(), "%d-%d-%d", &y, &m, &dd) != 3)
        throw std::runtime_error("load_series: bad day_dates entry: " +
                                 dates[d]);
      s.day_ids[d] = days_from_civil(y, m, dd);
    }
  }
  s.check_structure();
  return s;
}

} // namespace hfret

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "garchlab/ensemble.hpp"
#include "garchlab/errors.hpp"
#include "garchlab/simulate.hpp"
#include "garchlab/trend.hpp"

namespace garchlab {

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

/// Writes the full contents to a temporary sibling, then renames into place,
/// so a failed run never leaves a partial results file.
inline void atomic_write(const std::filesystem::path& path, const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open for writing: " + tmp.string());
    out << contents;
    if (!out.flush()) throw io_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw io_error("rename failed: " + path.string() + " (" + ec.message() + ")");
}

}  // namespace detail

/// Reads one strictly positive numeric column from a headered CSV file.
/// Any row where the column is missing, non-numeric, or not a positive finite
/// number is an error naming the offending line (the header is line 1).
inline std::vector<double> read_price_csv(const std::filesystem::path& path,
                                          const std::string& column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open: " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw parse_error(path.string() + ": missing header row");
  const auto header = detail::split_fields(line);
  std::size_t col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (detail::trim(header[i]) == column) {
      col = i;
      break;
    }
  }
  if (col == header.size())
    throw parse_error(path.string() + ": no column named '" + column + "'");

  std::vector<double> prices;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;  // tolerate a trailing blank line
    const auto fields = detail::split_fields(line);
    const std::string where = path.string() + ": line " + std::to_string(line_no);
    if (col >= fields.size()) throw parse_error(where + ": missing value");
    const std::string_view cell = detail::trim(fields[col]);
    if (cell.empty()) throw parse_error(where + ": missing value");
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size())
      throw parse_error(where + ": cannot parse '" + std::string(cell) + "' as a number");
    if (!std::isfinite(value) || !(value > 0.0))
      throw parse_error(where + ": price must be a positive finite number");
    prices.push_back(value);
  }
  if (prices.empty()) throw parse_error(path.string() + ": no data rows");
  return prices;
}

/// Writes ensemble statistics as CSV: one row per cell, columns are the cell
/// coordinates followed by replicate counts and mean/std/relstd for k, alpha,
/// beta. Rows are ordered lexicographically by cell coordinates and all
/// floating-point values carry 17 significant digits, so equal inputs always
/// produce byte-identical files.
inline void write_stats_csv(std::span<const EnsembleStats> stats,
                            const std::filesystem::path& path) {
  if (stats.empty()) throw domain_error("write_stats_csv: no statistics to write");
  const auto& labels = stats.front().cell;
  if (labels.empty()) throw domain_error("write_stats_csv: stats carry no cell coordinates");
  for (const EnsembleStats& s : stats) {
    if (s.cell.size() != labels.size())
      throw domain_error("write_stats_csv: heterogeneous cell coordinates");
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (s.cell[i].first != labels[i].first)
        throw domain_error("write_stats_csv: heterogeneous cell coordinates");
    }
  }

  std::vector<std::size_t> order(stats.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (stats[a].cell[i].second != stats[b].cell[i].second)
        return stats[a].cell[i].second < stats[b].cell[i].second;
    }
    return false;
  });

  std::ostringstream out;
  for (const auto& [label, value] : labels) out << label << ',';
  out << "replicates_requested,replicates_converged,"
         "mean_K,std_K,relstd_K,mean_alpha,std_alpha,relstd_alpha,"
         "mean_beta,std_beta,relstd_beta\n";
  for (std::size_t idx : order) {
    const EnsembleStats& s = stats[idx];
    for (const auto& [label, value] : s.cell) out << detail::format_double(value) << ',';
    out << s.replicates_requested << ',' << s.replicates_converged;
    for (const ParamStat* p : {&s.k, &s.alpha, &s.beta}) {
      out << ',' << detail::format_double(p->mean) << ',' << detail::format_double(p->stddev)
          << ',' << detail::format_double(p->rel_std);
    }
    out << '\n';
  }
  detail::atomic_write(path, out.str());
}

/// t,return,cond_var rows of a simulated path.
inline void write_path_csv(const SimulatedPath& path, const std::filesystem::path& file) {
  std::ostringstream out;
  out << "t,return,cond_var\n";
  for (std::size_t t = 0; t < path.returns.size(); ++t) {
    out << (t + 1) << ',' << detail::format_double(path.returns[t]) << ','
        << detail::format_double(path.cond_vars[t]) << '\n';
  }
  detail::atomic_write(file, out.str());
}

/// t,value rows of an evaluated trend.
inline void write_trend_csv(const TrendSeries& trend, const std::filesystem::path& file) {
  std::ostringstream out;
  out << "t,value\n";
  for (std::size_t t = 0; t < trend.values.size(); ++t)
    out << (t + 1) << ',' << detail::format_double(trend.values[t]) << '\n';
  detail::atomic_write(file, out.str());
}

/// t,xi,trend,noise rows of a composed series.
inline void write_composed_csv(const ComposedSeries& series, const std::filesystem::path& file) {
  std::ostringstream out;
  out << "t,xi,trend,noise\n";
  for (std::size_t t = 0; t < series.xi.size(); ++t) {
    out << (t + 1) << ',' << detail::format_double(series.xi[t]) << ','
        << detail::format_double(series.trend[t]) << ','
        << detail::format_double(series.noise_path[t]) << '\n';
  }
  detail::atomic_write(file, out.str());
}

}  // namespace garchlab

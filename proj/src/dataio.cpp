#include "nnc/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string_view>
#include <system_error>
#include <unordered_map>
#include <vector>

namespace nnc {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      return cells;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

bool parse_double(std::string_view cell, double& out) {
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last && !cell.empty();
}

bool parse_unsigned(std::string_view cell, std::uint64_t& out) {
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last && !cell.empty();
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

io_error at_line(const std::string& path, std::size_t line, const std::string& what) {
  std::ostringstream msg;
  msg << path << ":" << line << ": " << what;
  return io_error(msg.str());
}

}  // namespace

TrainingSet read_dataset(const std::string& path, const ReadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open dataset file: " + path);

  struct Row {
    std::vector<double> coords;
    std::uint32_t label;
  };
  std::vector<Row> rows;
  std::vector<std::string> class_names;
  std::unordered_map<std::string, std::uint32_t> class_ids;

  std::string line;
  std::size_t lineno = 0;
  std::size_t columns = 0;
  std::size_t label_col = 0;
  bool saw_content = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split_csv(line);
    if (!saw_content) {
      saw_content = true;
      columns = cells.size();
      if (columns < 2) {
        throw at_line(path, lineno, "need at least one feature column and a label column");
      }
      label_col = opts.label_column.value_or(columns - 1);
      if (label_col >= columns) {
        std::ostringstream msg;
        msg << "label column " << label_col << " out of range for " << columns
            << " columns";
        throw at_line(path, lineno, msg.str());
      }
      bool header = false;
      if (opts.has_header.has_value()) {
        header = *opts.has_header;
      } else {
        for (std::size_t c = 0; c < columns; ++c) {
          double v;
          if (c != label_col && !parse_double(cells[c], v)) header = true;
        }
      }
      if (header) continue;
    }
    if (cells.size() != columns) {
      std::ostringstream msg;
      msg << "expected " << columns << " cells, got " << cells.size();
      throw at_line(path, lineno, msg.str());
    }
    Row row;
    row.coords.reserve(columns - 1);
    for (std::size_t c = 0; c < columns; ++c) {
      if (c == label_col) continue;
      double v;
      if (!parse_double(cells[c], v)) {
        throw at_line(path, lineno,
                      "cell '" + std::string(cells[c]) + "' is not a number");
      }
      row.coords.push_back(v);
    }
    const std::string label(cells[label_col]);
    if (label.empty()) throw at_line(path, lineno, "empty label cell");
    auto [it, inserted] =
        class_ids.emplace(label, static_cast<std::uint32_t>(class_names.size()));
    if (inserted) class_names.push_back(label);
    row.label = it->second;
    rows.push_back(std::move(row));
  }
  if (in.bad()) throw io_error("read failure on dataset file: " + path);
  if (rows.empty()) throw io_error("dataset file has no data rows: " + path);

  TrainingSet ts(columns - 1, std::move(class_names));
  ts.reserve(rows.size());
  for (const Row& row : rows) ts.add(row.coords, row.label);
  require_valid(ts);  // catches non-finite cells and coincident enemy rows
  return ts;
}

void write_dataset(const TrainingSet& ts, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open dataset file for writing: " + path);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto p = ts.point(i);
    for (double v : p) out << format_double(v) << ',';
    out << ts.class_name(ts.label(i)) << '\n';
  }
  if (!out.good()) throw io_error("write failed for dataset file: " + path);
}

IndexSubset read_subset(const std::string& path, std::size_t n) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open subset file: " + path);
  std::vector<std::size_t> indices;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body(line);
    const std::size_t hash = body.find('#');
    if (hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    std::uint64_t value;
    if (!parse_unsigned(body, value)) {
      throw at_line(path, lineno, "'" + std::string(body) + "' is not an index");
    }
    if (value >= n) {
      std::ostringstream msg;
      msg << "index " << value << " out of range for a set of " << n << " points";
      throw at_line(path, lineno, msg.str());
    }
    if (!indices.empty() && value <= indices.back()) {
      std::ostringstream msg;
      msg << "index " << value << " breaks the strictly increasing order (previous "
          << indices.back() << ")";
      throw at_line(path, lineno, msg.str());
    }
    indices.push_back(static_cast<std::size_t>(value));
  }
  if (in.bad()) throw io_error("read failure on subset file: " + path);
  return IndexSubset::from_sorted(std::move(indices));
}

void write_subset(const IndexSubset& subset, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open subset file for writing: " + path);
  for (std::size_t i : subset.indices) out << i << '\n';
  if (!out.good()) throw io_error("write failed for subset file: " + path);
}

void append_result(const ResultsRow& row, const std::string& path) {
  std::error_code ec;
  const bool fresh =
      !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw io_error("cannot open results file for appending: " + path);
  if (fresh) out << results_header << '\n';
  char sok[32];
  std::snprintf(sok, sizeof sok, "%.6f", row.size_over_kappa);
  out << row.dataset << ',' << row.algorithm << ',' << row.n << ',' << row.d << ','
      << row.c << ',' << row.kappa << ',' << format_double(row.gamma_norm) << ','
      << row.subset_size << ',' << sok << ',' << row.runtime_ns_median << ','
      << format_double(row.runtime_ns_per_point) << ','
      << (row.consistent ? "true" : "false") << ',' << row.repeats << ',' << row.seed
      << '\n';
  if (!out.good()) throw io_error("write failed for results file: " + path);
}

std::vector<ResultsRow> read_results(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open results file: " + path);
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw io_error("results file is empty: " + path);
  ++lineno;
  if (trim(line) != results_header) {
    throw at_line(path, lineno, "missing results header");
  }
  std::vector<ResultsRow> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 14) {
      std::ostringstream msg;
      msg << "expected 14 cells, got " << cells.size();
      throw at_line(path, lineno, msg.str());
    }
    ResultsRow row;
    row.dataset = std::string(cells[0]);
    row.algorithm = std::string(cells[1]);
    std::uint64_t u;
    double v;
    auto need_unsigned = [&](std::size_t c) {
      if (!parse_unsigned(cells[c], u)) {
        throw at_line(path, lineno, "cell '" + std::string(cells[c]) + "' is not an integer");
      }
      return u;
    };
    auto need_double = [&](std::size_t c) {
      if (!parse_double(cells[c], v)) {
        throw at_line(path, lineno, "cell '" + std::string(cells[c]) + "' is not a number");
      }
      return v;
    };
    row.n = need_unsigned(2);
    row.d = need_unsigned(3);
    row.c = need_unsigned(4);
    row.kappa = need_unsigned(5);
    row.gamma_norm = need_double(6);
    row.subset_size = need_unsigned(7);
    row.size_over_kappa = need_double(8);
    row.runtime_ns_median = need_unsigned(9);
    row.runtime_ns_per_point = need_double(10);
    if (cells[11] == "true" || cells[11] == "1") {
      row.consistent = true;
    } else if (cells[11] == "false" || cells[11] == "0") {
      row.consistent = false;
    } else {
      throw at_line(path, lineno, "cell '" + std::string(cells[11]) + "' is not a boolean");
    }
    row.repeats = need_unsigned(12);
    row.seed = need_unsigned(13);
    rows.push_back(std::move(row));
  }
  if (in.bad()) throw io_error("read failure on results file: " + path);
  return rows;
}

}  // namespace nnc

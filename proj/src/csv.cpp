#include "negw/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace negw {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view field, std::size_t line, const char* what) {
  field = trim(field);
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw CsvFormatError(line, std::string("cannot parse ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

Signal parse_signal_csv(std::string_view text) {
  std::vector<double> values;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = trim(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "index,value") throw CsvFormatError(line_no, "expected header 'index,value'");
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw CsvFormatError(line_no, "expected exactly two fields");
    }
    const auto index = parse_number<std::size_t>(line.substr(0, comma), line_no, "index");
    const auto value = parse_number<double>(line.substr(comma + 1), line_no, "value");
    if (index != values.size()) {
      throw CsvFormatError(line_no, "expected index " + std::to_string(values.size()));
    }
    values.push_back(value);
  }
  if (!header_seen) throw CsvFormatError(line_no, "missing header 'index,value'");
  try {
    return Signal(std::move(values));
  } catch (const std::exception& e) {
    throw CsvFormatError(line_no, e.what());
  }
}

std::string signal_to_csv(const Signal& signal) {
  std::string out = "index,value\n";
  for (std::size_t i = 0; i < signal.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += format_real(signal[i]);
    out += '\n';
  }
  return out;
}

Signal read_signal_csv(const std::filesystem::path& path) {
  return parse_signal_csv(read_text_file(path));
}

void write_signal_csv(const std::filesystem::path& path, const Signal& signal) {
  write_text_file(path, signal_to_csv(signal));
}

std::string columns_to_csv(const std::vector<std::string>& headers,
                           const std::vector<std::vector<double>>& columns) {
  if (headers.size() != columns.size()) throw UsageError("columns_to_csv: header count mismatch");
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != rows) throw UsageError("columns_to_csv: column length mismatch");
  }
  std::string out = "index";
  for (const auto& h : headers) out += "," + h;
  out += '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    out += std::to_string(i);
    for (const auto& c : columns) {
      out += ',';
      out += format_real(c[i]);
    }
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw std::runtime_error("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace negw

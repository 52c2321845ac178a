#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "negw/error.hpp"
#include "negw/signal.hpp"

namespace negw {

class CsvFormatError : public UsageError {
 public:
  CsvFormatError(std::size_t line, const std::string& what)
      : UsageError("CSV line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Shortest round-trip decimal form (17 significant digits, "%.17g").
std::string format_real(double value);

/// Parses the `index,value` signal format. Indices must run 0, 1, 2, ...
Signal parse_signal_csv(std::string_view text);
std::string signal_to_csv(const Signal& signal);

Signal read_signal_csv(const std::filesystem::path& path);
void write_signal_csv(const std::filesystem::path& path, const Signal& signal);

/// Writes `index` followed by one column per entry of `columns`; all columns
/// must have equal length.
std::string columns_to_csv(const std::vector<std::string>& headers,
                           const std::vector<std::vector<double>>& columns);

std::string read_text_file(const std::filesystem::path& path);
/// Creates parent directories as needed. Throws std::runtime_error naming the path.
void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace negw

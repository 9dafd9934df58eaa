#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eqdense::cli {

/// 17 significant digits, '.' decimal, locale independent; nan/inf spelled out.
std::string format_double(double v);

std::uint64_t fnv1a64(std::string_view data);

/// RFC 4180 quoting when the field holds a comma, quote or newline.
std::string csv_field(std::string_view s);

/// Body of a CSV table: header row then data rows.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& cell(std::string_view s);
  CsvTable& cell(double v);
  CsvTable& cell(std::int64_t v);
  CsvTable& cell(std::uint64_t v);
  CsvTable& cell(int v) { return cell(static_cast<std::int64_t>(v)); }
  CsvTable& cell(std::optional<double> v);
  CsvTable& empty();
  void end_row();

  const std::string& body() const { return body_; }

 private:
  void sep();

  std::size_t columns_;
  std::size_t filled_ = 0;
  std::string body_;
};

struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::optional<std::uint64_t> seed;
  double duration_s = 0;
};

/// "# schema=<name> v1", manifest comment lines, checksum of the body, body.
std::string render(std::string_view schema, const RunManifest& manifest, const CsvTable& table);

}  // namespace eqdense::cli

#include "eqdense_cli/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

#ifndef EQDENSE_VERSION
#define EQDENSE_VERSION "0.0.0"
#endif

namespace eqdense::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 40> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
  for (const auto& h : header) cell(h);
  end_row();
}

void CsvTable::sep() {
  if (filled_ == columns_) throw std::logic_error("csv row has too many cells");
  if (filled_ > 0) body_ += ',';
  ++filled_;
}

CsvTable& CsvTable::cell(std::string_view s) {
  sep();
  body_ += csv_field(s);
  return *this;
}

CsvTable& CsvTable::cell(double v) {
  sep();
  body_ += format_double(v);
  return *this;
}

CsvTable& CsvTable::cell(std::int64_t v) {
  sep();
  body_ += std::to_string(v);
  return *this;
}

CsvTable& CsvTable::cell(std::uint64_t v) {
  sep();
  body_ += std::to_string(v);
  return *this;
}

CsvTable& CsvTable::cell(std::optional<double> v) { return v ? cell(*v) : empty(); }

CsvTable& CsvTable::empty() {
  sep();
  return *this;
}

void CsvTable::end_row() {
  if (filled_ != columns_) throw std::logic_error("csv row has too few cells");
  body_ += '\n';
  filled_ = 0;
}

std::string render(std::string_view schema, const RunManifest& manifest, const CsvTable& table) {
  std::array<char, 17> hex{};
  const auto res = std::to_chars(hex.data(), hex.data() + hex.size(), fnv1a64(table.body()), 16);
  std::string out;
  out += "# schema=" + std::string(schema) + " v1\n";
  out += "# command=" + manifest.command + "\n";
  for (const auto& [k, v] : manifest.params) out += "# param." + k + "=" + v + "\n";
  if (manifest.seed) out += "# seed=" + std::to_string(*manifest.seed) + "\n";
  out += "# version=" EQDENSE_VERSION "\n";
  out += "# duration_s=" + format_double(manifest.duration_s) + "\n";
  out += "# checksum=fnv1a64:" + std::string(hex.data(), res.ptr) + "\n";
  out += table.body();
  return out;
}

}  // namespace eqdense::cli

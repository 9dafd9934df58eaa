#include "eqdense/grid.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "eqdense/errors.hpp"

namespace eqdense {

std::vector<double> GridSpec::points() const {
  if (count < 1) throw InvalidArgument("grid count must be >= 1");
  if (!(lo <= hi)) throw InvalidArgument("grid requires lo <= hi");
  if (log && !(lo > 0)) throw InvalidArgument("log grid requires lo > 0");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    out.push_back(lo);
    return out;
  }
  for (int i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / (count - 1);
    out.push_back(log ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

namespace {

double parse_double(std::string_view s) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw InvalidArgument("invalid number '" + std::string(s) + "'");
  return v;
}

}  // namespace

GridSpec parse_grid(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t colon = text.find(':', start);
    parts.push_back(text.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3 && parts.size() != 4) {
    throw InvalidArgument("grid must be lo:hi:count[:linear|log], got '" + std::string(text) + "'");
  }
  GridSpec g;
  g.lo = parse_double(parts[0]);
  g.hi = parse_double(parts[1]);
  const double count = parse_double(parts[2]);
  if (count < 1 || count != std::floor(count) || count > 1e7) throw InvalidArgument("grid count must be a positive integer");
  g.count = static_cast<int>(count);
  if (parts.size() == 4) {
    if (parts[3] == "log") {
      g.log = true;
    } else if (parts[3] != "linear") {
      throw InvalidArgument("grid spacing must be 'linear' or 'log'");
    }
  }
  g.points();  // validates
  return g;
}

}  // namespace eqdense

#pragma once

#include <string_view>
#include <vector>

namespace eqdense {

struct GridSpec {
  double lo = 0;
  double hi = 1;
  int count = 2;
  bool log = false;

  std::vector<double> points() const;
};

/// "lo:hi:count" or "lo:hi:count:log" / ":linear".
GridSpec parse_grid(std::string_view text);

}  // namespace eqdense

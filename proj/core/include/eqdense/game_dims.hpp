#pragma once

#include <compare>
#include <string>

#include "eqdense/errors.hpp"

namespace eqdense {

// Strategy count n and player count d of a symmetric random game.
struct GameDims {
  int n = 2;
  int d = 2;

  GameDims() = default;
  GameDims(int strategies, int players) : n(strategies), d(players) {
    if (n < 2 || d < 2) {
      throw InvalidArgument("GameDims requires n >= 2 and d >= 2, got n=" + std::to_string(n) +
                            " d=" + std::to_string(d));
    }
  }

  // Number of free ratio coordinates t_1..t_{n-1}.
  int coords() const { return n - 1; }
  int degree() const { return d - 1; }

  auto operator<=>(const GameDims&) const = default;
};

}  // namespace eqdense

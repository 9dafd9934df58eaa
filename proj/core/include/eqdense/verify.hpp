#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "eqdense/quadrature.hpp"

namespace eqdense {

enum class Suite { Identities, Bounds, Monotonicity, Turan, Factorization, ConjectureScan };

std::string_view to_string(Suite s);
Suite parse_suite(std::string_view name);
const std::vector<Suite>& all_suites();

enum class CheckStatus { Pass, Fail, Report };

std::string_view to_string(CheckStatus s);

/// One verified relation. For inequalities margin >= 0 means it holds; for
/// identities margin = tolerance - relative residual. Grid checks keep the
/// worst point per d, named in `location`.
struct CheckRow {
  std::string check;
  std::string location;
  double lhs = 0;
  double rhs = 0;
  double margin = 0;
  CheckStatus status = CheckStatus::Pass;
};

struct VerifyOptions {
  int d_lo = 2;
  int d_hi = 40;
  std::vector<double> t_grid;  // empty: log grids on (0.01, 0.99) and (1.01, 100), 20 points each
  std::vector<double> x_grid;  // empty: suite default ([1, 20] or [1, 50])
  QuadratureConfig quad;
  bool trends = true;          // conjecture-scan: E(3, d) and E(4, d) ratio tables
};

std::vector<double> default_t_grid();

std::vector<CheckRow> run_suite(Suite suite, const VerifyOptions& opt);

bool any_failure(const std::vector<CheckRow>& rows);

}  // namespace eqdense

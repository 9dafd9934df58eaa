#include "eqdense_cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <exception>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "eqdense/density.hpp"
#include "eqdense/errors.hpp"
#include "eqdense/expectation.hpp"
#include "eqdense/grid.hpp"
#include "eqdense/montecarlo.hpp"
#include "eqdense/verify.hpp"
#include "eqdense_cli/csv.hpp"

namespace eqdense::cli {

namespace {

using Clock = std::chrono::steady_clock;
using Point = std::vector<double>;

int parse_int(const std::string& s) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty()) throw InvalidArgument("invalid integer '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

double parse_real(const std::string& s) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty()) throw InvalidArgument("invalid number '" + s + "'");
  return v;
}

int env_threads(int fallback) {
  const char* env = std::getenv("EQDENSE_THREADS");
  if (env == nullptr || *env == '\0') return fallback;
  const int v = parse_int(env);
  if (v < 1) throw InvalidArgument("EQDENSE_THREADS must be >= 1");
  return v;
}

// Points for an n-dimensional argument: n = 1 takes a comma list of scalars,
// otherwise one comma-separated point per ';'-separated group.
std::vector<Point> parse_points(const std::string& text, int dim) {
  std::vector<Point> pts;
  if (dim == 1) {
    for (double v : parse_list(text)) pts.push_back({v});
    return pts;
  }
  for (const auto& group : split(text, ';')) {
    Point p = parse_list(group);
    if (static_cast<int>(p.size()) != dim) {
      throw InvalidArgument("expected " + std::to_string(dim) + " coordinates per point, got '" + group + "'");
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

std::vector<Point> tensor_grid(const std::vector<double>& axis, int dim) {
  std::vector<Point> pts{{}};
  for (int i = 0; i < dim; ++i) {
    std::vector<Point> next;
    for (const auto& p : pts) {
      for (double v : axis) {
        Point q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    }
    pts = std::move(next);
  }
  return pts;
}

std::vector<std::string> coord_header(const char* name, int dim) {
  if (dim == 1) return {name};
  std::vector<std::string> h;
  for (int i = 1; i <= dim; ++i) h.push_back(name + std::to_string(i));
  return h;
}

QuadratureConfig quad_config(double rel_tol, double abs_tol, int nodes) {
  QuadratureConfig q;
  q.rel_tol = rel_tol;
  q.abs_tol = abs_tol;
  q.nodes_per_panel = nodes;
  q.validate();
  return q;
}

// Runs job(i) for i in [0, count) on `workers` threads; the first failure by
// index is rethrown.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& job) {
  std::vector<std::exception_ptr> errors(count);
  std::mutex mu;
  std::size_t next = 0;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard lock(mu);
        if (next >= count) return;
        i = next++;
      }
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto n = static_cast<std::size_t>(std::max(1, workers));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < std::min(n, count); ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct Output {
  std::string schema;
  RunManifest manifest;
  std::optional<CsvTable> table;
  int exit_code = kExitOk;
};

// --- density -----------------------------------------------------------------

struct DensityArgs {
  int n = 2;
  int d = 0;
  std::string grid, t, formulation = "auto";
};

Output cmd_density(const DensityArgs& a) {
  const GameDims dims(a.n, a.d);
  const Formulation f = parse_formulation(a.formulation);
  const int dim = dims.coords();
  std::vector<Point> pts;
  if (!a.grid.empty()) {
    pts = tensor_grid(parse_grid(a.grid).points(), dim);
  } else {
    pts = parse_points(a.t, dim);
  }
  Output o{"density", {"density", {{"n", std::to_string(a.n)}, {"d", std::to_string(a.d)}, {"grid", a.grid},
                                   {"t", a.t}, {"formulation", a.formulation}}, std::nullopt}, {}, kExitOk};
  auto header = coord_header("t", dim);
  header.emplace_back("f");
  o.table.emplace(header);
  for (const auto& p : pts) {
    const double v = density_value(dims, p, f);
    for (double c : p) o.table->cell(c);
    o.table->cell(v).end_row();
  }
  return o;
}

// --- expect ------------------------------------------------------------------

struct ExpectArgs {
  int n = 2;
  std::string d = "2";
  double rel_tol = 1e-8, abs_tol = 1e-10;
  int nodes = 15;
  int workers = 1;
};

Output cmd_expect(const ExpectArgs& a) {
  const auto [lo, hi] = parse_int_range(a.d);
  const QuadratureConfig q = quad_config(a.rel_tol, a.abs_tol, a.nodes);
  (void)GameDims(a.n, lo);
  const std::size_t count = static_cast<std::size_t>(hi - lo + 1);
  std::vector<ExpectationResult> e(count), se(count), eb(count);
  parallel_for(count, env_threads(a.workers), [&](std::size_t i) {
    const int d = lo + static_cast<int>(i);
    if (a.n == 2) {
      e[i] = expected_count_2d(d, q);
      se[i] = stable_expected_2d(d, q);
      eb[i] = bernstein_expected(d, q);
    } else {
      e[i] = expected_count_nd(GameDims(a.n, d), q);
    }
  });
  Output o{"expect", {"expect", {{"n", std::to_string(a.n)}, {"d", a.d}, {"rel_tol", format_double(a.rel_tol)},
                                 {"abs_tol", format_double(a.abs_tol)}, {"nodes", std::to_string(a.nodes)}}, std::nullopt},
           {}, kExitOk};
  o.table.emplace(std::vector<std::string>{"d", "E", "err", "SE", "E_B", "ratio"});
  for (std::size_t i = 0; i < count; ++i) {
    const int d = lo + static_cast<int>(i);
    o.table->cell(d).cell(e[i].value).cell(e[i].error_estimate);
    if (a.n == 2) {
      o.table->cell(se[i].value).cell(eb[i].value);
    } else {
      o.table->empty().empty();
    }
    if (d >= 3) {
      o.table->cell(std::log(e[i].value) / std::log(d - 1.0));
    } else {
      o.table->empty();
    }
    o.table->end_row();
  }
  return o;
}

// --- mc ----------------------------------------------------------------------

struct McArgs {
  int n = 2;
  int d = 0;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  std::string mode = "beta";
  double std = 1.0;
  int workers = 1;
  int bins = 20;
};

Output cmd_mc(const McArgs& a) {
  MCConfig cfg;
  cfg.samples = a.samples;
  cfg.seed = a.seed;
  if (a.mode == "alpha") {
    cfg.mode = SamplingMode::payoff_alpha(a.std);
  } else if (a.mode == "beta") {
    cfg.mode = SamplingMode::independent_beta();
  } else {
    throw InvalidArgument("mode must be 'alpha' or 'beta'");
  }
  cfg.workers = env_threads(a.workers);
  cfg.bins = a.bins;
  const GameDims dims(a.n, a.d);
  const MCResult r = run_mc(dims, cfg);

  Output o{"mc",
           {"mc",
            {{"n", std::to_string(a.n)}, {"d", std::to_string(a.d)}, {"samples", std::to_string(a.samples)},
             {"mode", a.mode}, {"std", format_double(a.std)}, {"bins", std::to_string(a.bins)}},
            a.seed},
           {},
           kExitOk};
  o.table.emplace(std::vector<std::string>{"kind", "key", "i", "j", "y1_lo", "y1_hi", "y2_lo", "y2_hi", "count", "value"});
  auto& t = *o.table;
  const auto summary = [&](const char* key, std::optional<double> v) {
    t.cell("summary").cell(key).empty().empty().empty().empty().empty().empty().empty().cell(v).end_row();
  };
  summary("n", a.n);
  summary("d", a.d);
  summary("samples", static_cast<double>(r.samples));
  summary("samples_used", static_cast<double>(r.samples_used));
  summary("samples_failed", static_cast<double>(r.samples_failed));
  summary("total_equilibria", static_cast<double>(r.total_equilibria));
  summary("mean", r.mean_count);
  summary("std_error", r.std_error);
  if (a.n == 2) {
    summary("total_stable", static_cast<double>(r.total_stable));
    summary("stable_mean", r.stable_mean);
    summary("stable_fraction", r.total_equilibria == 0
                                   ? std::optional<double>{}
                                   : static_cast<double>(r.total_stable) / static_cast<double>(r.total_equilibria));
  }
  for (std::size_t k = 0; k < r.count_distribution.size(); ++k) {
    const std::uint64_t c = r.count_distribution[k];
    t.cell("distribution").empty().cell(static_cast<std::uint64_t>(k)).empty().empty().empty().empty().empty().cell(c);
    t.cell(r.samples_used == 0 ? 0.0 : static_cast<double>(c) / static_cast<double>(r.samples_used)).end_row();
  }
  const auto& h = r.histogram;
  const auto dens = h.density();
  const auto b = static_cast<std::size_t>(h.bins);
  for (std::size_t cell = 0; cell < h.counts.size(); ++cell) {
    t.cell("histogram").empty();
    if (h.n == 2) {
      t.cell(static_cast<std::uint64_t>(cell)).empty().cell(h.edges[cell]).cell(h.edges[cell + 1]).empty().empty();
    } else {
      const std::size_t i = cell / b, j = cell % b;
      t.cell(static_cast<std::uint64_t>(i)).cell(static_cast<std::uint64_t>(j));
      t.cell(h.edges[i]).cell(h.edges[i + 1]).cell(h.edges[j]).cell(h.edges[j + 1]);
    }
    t.cell(h.counts[cell]).cell(dens[cell]).end_row();
  }
  return o;
}

// --- verify ------------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  std::string d = "2:40";
  std::string t_grid, x_grid;
  double rel_tol = 1e-8;
  bool no_trends = false;
};

Output cmd_verify(const VerifyArgs& a) {
  VerifyOptions opt;
  std::tie(opt.d_lo, opt.d_hi) = parse_int_range(a.d);
  if (!a.t_grid.empty()) opt.t_grid = parse_grid(a.t_grid).points();
  if (!a.x_grid.empty()) opt.x_grid = parse_grid(a.x_grid).points();
  opt.quad = quad_config(a.rel_tol, 1e-10, 15);
  opt.trends = !a.no_trends;
  std::vector<Suite> suites;
  if (a.suite == "all") {
    suites = all_suites();
  } else {
    for (const auto& name : split(a.suite, ',')) suites.push_back(parse_suite(name));
  }
  Output o{"verify", {"verify", {{"suite", a.suite}, {"d", a.d}, {"t_grid", a.t_grid}, {"x_grid", a.x_grid},
                                 {"rel_tol", format_double(a.rel_tol)}, {"trends", a.no_trends ? "0" : "1"}}, std::nullopt},
           {}, kExitOk};
  o.table.emplace(std::vector<std::string>{"suite", "check", "location", "lhs", "rhs", "margin", "status"});
  for (Suite s : suites) {
    const auto rows = run_suite(s, opt);
    for (const auto& r : rows) {
      o.table->cell(to_string(s)).cell(r.check).cell(r.location).cell(r.lhs).cell(r.rhs).cell(r.margin);
      o.table->cell(to_string(r.status)).end_row();
    }
    if (any_failure(rows)) o.exit_code = kExitVerifyFailed;
  }
  return o;
}

// --- gdensity ----------------------------------------------------------------

struct GDensityArgs {
  int n = 2;
  int d = 0;
  std::string grid, y;
};

Output cmd_gdensity(const GDensityArgs& a) {
  if (a.n != 2 && a.n != 3) throw InvalidArgument("gdensity supports n = 2 or 3");
  const GameDims dims(a.n, a.d);
  const int dim = dims.coords();
  std::vector<Point> pts;
  if (!a.grid.empty()) {
    const auto axis = parse_grid(a.grid).points();
    for (double v : axis) {
      if (!(v > 0 && v < 1)) throw InvalidArgument("gdensity grid must lie strictly inside (0, 1)");
    }
    for (auto& p : tensor_grid(axis, dim)) {
      double sum = 0;
      for (double v : p) sum += v;
      if (sum < 1) pts.push_back(std::move(p));
    }
  } else {
    pts = parse_points(a.y, dim);
  }
  Output o{"gdensity", {"gdensity", {{"n", std::to_string(a.n)}, {"d", std::to_string(a.d)}, {"grid", a.grid},
                                     {"y", a.y}}, std::nullopt}, {}, kExitOk};
  auto header = coord_header("y", dim);
  header.emplace_back("g");
  o.table.emplace(header);
  for (const auto& p : pts) {
    const double v = g_general(dims, p);
    for (double c : p) o.table->cell(c);
    o.table->cell(v).end_row();
  }
  return o;
}

void require_one(const std::string& a, const std::string& b, const char* what) {
  if (a.empty() == b.empty()) throw InvalidArgument(std::string("exactly one of ") + what + " is required");
}

}  // namespace

std::pair<int, int> parse_int_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) {
    const int v = parse_int(parts[0]);
    return {v, v};
  }
  if (parts.size() != 2) throw InvalidArgument("range must be 'a' or 'a:b', got '" + text + "'");
  const int lo = parse_int(parts[0]), hi = parse_int(parts[1]);
  if (hi < lo) throw InvalidArgument("empty range '" + text + "'");
  return {lo, hi};
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split(text, ',')) out.push_back(parse_real(s));
  if (out.empty()) throw InvalidArgument("empty list");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Expected equilibria of random evolutionary games", "eqdense"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  app.add_option("--out", out_path, "Write CSV to this file instead of stdout");

  DensityArgs da;
  auto* density = app.add_subcommand("density", "f_{n,d}(t) on a grid or at given points");
  density->add_option("--n", da.n, "Strategies")->capture_default_str();
  density->add_option("--d", da.d, "Players")->required();
  density->add_option("--grid", da.grid, "lo:hi:count[:linear|log], per coordinate");
  density->add_option("--t", da.t, "Points: t1,t2,... (n = 2: list of t; n > 2: ';' between points)");
  density->add_option("--formulation", da.formulation, "auto|G|legendre|legendre-pair|closed|general|elliptic")
      ->capture_default_str();

  ExpectArgs ea;
  auto* expect = app.add_subcommand("expect", "E(n,d) table with SE, E_B and ln E / ln(d-1)");
  expect->add_option("--n", ea.n, "Strategies")->capture_default_str();
  expect->add_option("--d", ea.d, "Players, d or lo:hi")->capture_default_str();
  expect->add_option("--rel-tol", ea.rel_tol)->capture_default_str();
  expect->add_option("--abs-tol", ea.abs_tol)->capture_default_str();
  expect->add_option("--nodes", ea.nodes, "Kronrod nodes per panel (15 or 21)")->capture_default_str();
  expect->add_option("--workers", ea.workers)->capture_default_str();

  McArgs ma;
  auto* mc = app.add_subcommand("mc", "Monte Carlo equilibrium counts (n = 2, 3)");
  mc->add_option("--n", ma.n, "Strategies")->capture_default_str();
  mc->add_option("--d", ma.d, "Players")->required();
  mc->add_option("--samples", ma.samples)->capture_default_str();
  mc->add_option("--seed", ma.seed)->capture_default_str();
  mc->add_option("--mode", ma.mode, "beta (i.i.d. coefficients) or alpha (payoff entries)")->capture_default_str();
  mc->add_option("--std", ma.std, "Payoff standard deviation, alpha mode")->capture_default_str();
  mc->add_option("--workers", ma.workers)->capture_default_str();
  mc->add_option("--bins", ma.bins)->capture_default_str();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Identity, bound and monotonicity suites");
  verify->add_option("--suite", va.suite, "all or a comma list of suites")->capture_default_str();
  verify->add_option("--d", va.d, "lo:hi")->capture_default_str();
  verify->add_option("--t-grid", va.t_grid, "t grid, lo:hi:count[:log]");
  verify->add_option("--x-grid", va.x_grid, "Legendre argument grid, lo:hi:count");
  verify->add_option("--rel-tol", va.rel_tol, "Quadrature tolerance")->capture_default_str();
  verify->add_flag("--no-trends", va.no_trends, "Skip the E(3,d), E(4,d) ratio tables");

  GDensityArgs ga;
  auto* gdensity = app.add_subcommand("gdensity", "Density in frequency coordinates (n = 2, 3)");
  gdensity->add_option("--n", ga.n, "Strategies")->capture_default_str();
  gdensity->add_option("--d", ga.d, "Players")->required();
  gdensity->add_option("--grid", ga.grid, "lo:hi:count per coordinate, inside (0, 1)");
  gdensity->add_option("--y", ga.y, "Points, as for density --t");

  std::vector<std::string> argv_store{"eqdense"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const auto start = Clock::now();
    Output o;
    if (*density) {
      require_one(da.grid, da.t, "--grid and --t");
      o = cmd_density(da);
    } else if (*expect) {
      o = cmd_expect(ea);
    } else if (*mc) {
      o = cmd_mc(ma);
    } else if (*verify) {
      o = cmd_verify(va);
    } else {
      require_one(ga.grid, ga.y, "--grid and --y");
      o = cmd_gdensity(ga);
    }
    o.manifest.duration_s = std::chrono::duration<double>(Clock::now() - start).count();
    const std::string text = render(o.schema, o.manifest, *o.table);
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!(file << text)) {
        err << "error: cannot write " << out_path << "\n";
        return kExitUsage;
      }
    }
    return o.exit_code;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    // capacity, convergence, degenerate and numerical failures
    err << "error: " << e.what() << "\n";
    return kExitCapacity;
  }
}

}  // namespace eqdense::cli

// Copyright 2026 the meanineq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end.  Subcommands:
//   check <name>      run one inequality checker and report verdicts
//   scan-concavity    midpoint-concavity scans (explicit pair or power grid)
//   search            seeded counterexample search, prints a witness or none
//   fit               power-law fit of a generator
//   demo-optimality   equality-exponent scans and the strict-gap demo
//
// Exit codes: 0 pass / nothing found, 1 violation found or property failed,
// 2 usage error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "meanineq/meanineq.hpp"

namespace {

using nlohmann::json;
using namespace meanineq;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct CommonOpts {
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = 0;
  std::size_t budget = 10000;
  std::string output = "json";
  int jobs = 1;
};

void add_common(CLI::App* cmd, CommonOpts* opts, bool seed_required = false) {
  cmd->add_option("--tolerance", opts->tolerance,
                  "relative tolerance for verdicts")
      ->check(CLI::PositiveNumber);
  auto* seed = cmd->add_option("--seed", opts->seed,
                               "seed for all randomized steps");
  if (seed_required) seed->required();
  cmd->add_option("--budget", opts->budget, "iteration budget for searches")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--output", opts->output, "output format")
      ->check(CLI::IsMember({"json", "jsonl", "csv", "pretty"}));
  cmd->add_option("--jobs", opts->jobs, "parallel restarts for searches")
      ->check(CLI::PositiveNumber);
}

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

std::vector<double> parse_value_list(const std::string& arg,
                                     const char* field) {
  if (!arg.empty() && arg[0] == '@') {
    return values_from_json(load_json_file(arg.substr(1)));
  }
  std::vector<double> out;
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw validation_error(std::string(field) + ": cannot parse number \"" +
                             item + "\"");
    }
  }
  if (out.empty()) {
    throw validation_error(std::string(field) + ": empty value list");
  }
  return out;
}

/// Space spec: weight list, "uniform:<n>", "random:<n>,<seed>", or "@file".
MeasureSpace parse_space(const std::string& arg, const char* field) {
  if (!arg.empty() && arg[0] == '@') {
    return space_from_json(load_json_file(arg.substr(1)));
  }
  if (arg.rfind("uniform:", 0) == 0) {
    const int n = std::stoi(arg.substr(8));
    if (n < 1) throw validation_error(std::string(field) + ": uniform needs n >= 1");
    return MeasureSpace(std::vector<double>(n, 1.0 / n));
  }
  if (arg.rfind("random:", 0) == 0) {
    const std::string body = arg.substr(7);
    const auto comma = body.find(',');
    if (comma == std::string::npos) {
      throw validation_error(std::string(field) +
                             ": random spec needs \"random:<n>,<seed>\"");
    }
    const int n = std::stoi(body.substr(0, comma));
    const std::uint64_t seed = std::stoull(body.substr(comma + 1));
    if (n < 1) throw validation_error(std::string(field) + ": random needs n >= 1");
    Rng rng(derive_seed(seed, 0));
    std::vector<double> w(n);
    double sum = 0.0;
    for (auto& wi : w) {
      wi = rng.uniform(0.05, 1.0);
      sum += wi;
    }
    for (auto& wi : w) wi /= sum;
    return MeasureSpace(std::move(w));
  }
  return MeasureSpace(parse_value_list(arg, field));
}

struct Range2 {
  double lo = 0.0;
  double hi = 0.0;
};

Range2 parse_range(const std::string& arg, const char* field) {
  const auto colon = arg.find(':');
  if (colon == std::string::npos) {
    throw validation_error(std::string(field) + ": expected \"lo:hi\"");
  }
  try {
    Range2 r{std::stod(arg.substr(0, colon)), std::stod(arg.substr(colon + 1))};
    if (!(r.hi > r.lo)) {
      throw validation_error(std::string(field) + ": empty range");
    }
    return r;
  } catch (const validation_error&) {
    throw;
  } catch (const std::exception&) {
    throw validation_error(std::string(field) + ": cannot parse \"" + arg +
                           "\"");
  }
}

struct Grid3 {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t n = 0;
};

Grid3 parse_grid(const std::string& arg, const char* field) {
  const auto c1 = arg.find(':');
  const auto c2 = arg.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw validation_error(std::string(field) + ": expected \"lo:hi:n\"");
  }
  try {
    Grid3 g{std::stod(arg.substr(0, c1)),
            std::stod(arg.substr(c1 + 1, c2 - c1 - 1)),
            static_cast<std::size_t>(std::stoul(arg.substr(c2 + 1)))};
    if (g.n < 1 || !(g.hi >= g.lo)) {
      throw validation_error(std::string(field) + ": empty range");
    }
    return g;
  } catch (const validation_error&) {
    throw;
  } catch (const std::exception&) {
    throw validation_error(std::string(field) + ": cannot parse \"" + arg +
                           "\"");
  }
}

std::vector<double> grid_points(const Grid3& g) {
  std::vector<double> out(g.n);
  if (g.n == 1) {
    out[0] = g.lo;
    return out;
  }
  for (std::size_t i = 0; i < g.n; ++i) {
    out[i] = g.lo + (g.hi - g.lo) * static_cast<double>(i) /
                        static_cast<double>(g.n - 1);
  }
  return out;
}

void emit_reports(const std::vector<InequalityReport>& reports,
                  const std::string& fmt) {
  if (fmt == "json") {
    if (reports.size() == 1) {
      std::cout << reports[0].to_json().dump(2) << "\n";
    } else {
      json arr = json::array();
      for (const auto& r : reports) arr.push_back(r.to_json());
      std::cout << arr.dump(2) << "\n";
    }
  } else if (fmt == "jsonl") {
    for (const auto& r : reports) std::cout << r.to_json().dump() << "\n";
  } else if (fmt == "csv") {
    std::cout << "name,lhs,rhs,gap,holds,is_equality,tolerance,witness\n";
    for (const auto& r : reports) {
      std::cout << r.name << ',' << fmt_g(r.lhs) << ',' << fmt_g(r.rhs) << ','
                << fmt_g(r.gap) << ',' << (r.holds ? 1 : 0) << ','
                << (r.is_equality ? 1 : 0) << ',' << fmt_g(r.tolerance) << ','
                << csv_quote(r.witness.dump()) << "\n";
    }
  } else {
    for (const auto& r : reports) {
      std::cout << r.name << ": lhs=" << fmt_g(r.lhs)
                << " rhs=" << fmt_g(r.rhs) << " gap=" << fmt_g(r.gap)
                << (r.holds ? " holds" : " VIOLATED")
                << (r.is_equality ? " (equality)" : "") << "\n";
    }
  }
}

// ---------------------------------------------------------------------------
// check

struct CheckArgs {
  std::string name;
  std::string phi, psi, mu, nu;
  std::string f, g, F, a, b, weights;
  std::vector<std::string> quads;
  double p = 2.0;
  std::string direction = "forward";
  CommonOpts common;
};

const std::string& require_arg(const std::string& value, const char* flag) {
  if (value.empty()) {
    throw validation_error(std::string("missing required flag ") + flag);
  }
  return value;
}

int run_check(const CheckArgs& args) {
  const double tol = args.common.tolerance;
  std::vector<InequalityReport> reports;

  if (args.name == "holder" || args.name == "reversed-holder") {
    const auto pair = GeneratorPair{
        Generator::parse(require_arg(args.phi, "--phi")),
        Generator::parse(require_arg(args.psi, "--psi"))};
    const auto mu = parse_space(require_arg(args.mu, "--mu"), "--mu");
    const StepFunction f(mu, parse_value_list(require_arg(args.f, "--f"), "--f"));
    const StepFunction g(mu, parse_value_list(require_arg(args.g, "--g"), "--g"));
    reports.push_back(args.name == "holder"
                          ? holder_report(pair, f, g, mu, tol)
                          : reversed_holder_report(pair, f, g, mu, tol));
  } else if (args.name == "minkowski") {
    const auto gen = Generator::parse(require_arg(args.phi, "--phi"));
    const auto mu = parse_space(require_arg(args.mu, "--mu"), "--mu");
    const StepFunction f(mu, parse_value_list(require_arg(args.f, "--f"), "--f"));
    const StepFunction g(mu, parse_value_list(require_arg(args.g, "--g"), "--g"));
    reports.push_back(minkowski_triangle_report(gen, f, g, mu, tol));
  } else if (args.name == "gmi" || args.name == "genmink") {
    const auto mu = parse_space(require_arg(args.mu, "--mu"), "--mu");
    const auto nu = parse_space(require_arg(args.nu, "--nu"), "--nu");
    const StepFunction F(product_space(mu, nu),
                         parse_value_list(require_arg(args.F, "--F"), "--F"));
    if (args.name == "gmi") {
      reports.push_back(gmi_report(args.p, F, mu, nu, tol));
    } else {
      const auto pair = GeneratorPair{
          Generator::parse(require_arg(args.phi, "--phi")),
          Generator::parse(require_arg(args.psi, "--psi"))};
      const auto dir = args.direction == "reversed" ? Direction::Geq
                                                    : Direction::Leq;
      reports.push_back(
          generalized_minkowski_report(pair, F, mu, nu, dir, tol));
    }
  } else if (args.name == "mulholland") {
    const auto gen = Generator::parse(require_arg(args.phi, "--phi"));
    if (args.quads.empty()) {
      throw validation_error("missing required flag --quad");
    }
    for (const auto& q : args.quads) {
      const auto vals = parse_value_list(q, "--quad");
      if (vals.size() != 4) {
        throw validation_error("--quad: expected four numbers t,u,v,w");
      }
      reports.push_back(
          mulholland_report(gen, vals[0], vals[1], vals[2], vals[3], tol));
    }
  } else if (args.name == "quasimean") {
    const auto gen = Generator::parse(require_arg(args.phi, "--phi"));
    const auto a = parse_value_list(require_arg(args.a, "--a"), "--a");
    const auto b = parse_value_list(require_arg(args.b, "--b"), "--b");
    const auto w =
        parse_value_list(require_arg(args.weights, "--weights"), "--weights");
    reports.push_back(quasi_mean_midpoint_report(gen, a, b, w, tol));
  } else {
    throw validation_error("unknown check name \"" + args.name + "\"");
  }

  emit_reports(reports, args.common.output);
  for (const auto& r : reports) {
    if (!r.holds) return kExitViolation;
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------
// scan-concavity

struct ScanArgs {
  std::string phi, psi;
  std::string s_range = "0.1:4";
  std::string t_range = "0.1:4";
  std::size_t steps = 9;
  std::string p_range, q_range;
  std::string scan_range = "0.1:4";
  std::size_t scan_steps = 9;
  CommonOpts common;
};

int run_scan(const ScanArgs& args) {
  const bool grid_mode = !args.p_range.empty() || !args.q_range.empty();
  if (grid_mode) {
    const auto pg = parse_grid(require_arg(args.p_range, "--p-range"),
                               "--p-range");
    const auto qg = parse_grid(require_arg(args.q_range, "--q-range"),
                               "--q-range");
    const auto rr = parse_range(args.scan_range, "--scan-range");
    const auto ps = grid_points(pg);
    const auto qs = grid_points(qg);
    const double dp = pg.n > 1 ? (pg.hi - pg.lo) / (pg.n - 1.0) : 0.0;
    const double dq = qg.n > 1 ? (qg.hi - qg.lo) / (qg.n - 1.0) : 0.0;

    const auto conj = [](double p, double q) { return 1.0 / p + 1.0 / q; };
    bool mismatch = false;
    json cells = json::array();
    std::ostringstream csv;
    csv << "p,q,concave,worst_violation,conjugacy_sum,boundary\n";

    for (double p : ps) {
      for (double q : qs) {
        const auto verdict = concavity_scan(
            {Generator::power(1, p), Generator::power(1, q)},
            {rr.lo, rr.hi}, {rr.lo, rr.hi}, args.scan_steps,
            args.common.tolerance);
        // A cell is "boundary" when the conjugacy predicate flips within one
        // grid step of it; only interior cells are held to the predicate.
        const bool center = conj(p, q) <= 1.0;
        bool boundary = false;
        for (double sp : {-dp, 0.0, dp}) {
          for (double sq : {-dq, 0.0, dq}) {
            if ((conj(p + sp, q + sq) <= 1.0) != center) boundary = true;
          }
        }
        if (!boundary && verdict.concave_on_grid != center) mismatch = true;
        cells.push_back(json{{"p", p},
                             {"q", q},
                             {"concave", verdict.concave_on_grid},
                             {"worst_violation", verdict.worst_violation},
                             {"conjugacy_sum", conj(p, q)},
                             {"boundary", boundary}});
        csv << fmt_g(p) << ',' << fmt_g(q) << ','
            << (verdict.concave_on_grid ? 1 : 0) << ','
            << fmt_g(verdict.worst_violation) << ',' << fmt_g(conj(p, q))
            << ',' << (boundary ? 1 : 0) << "\n";
      }
    }
    if (args.common.output == "csv" || args.common.output == "pretty") {
      std::cout << csv.str();
    } else if (args.common.output == "jsonl") {
      for (const auto& c : cells) std::cout << c.dump() << "\n";
    } else {
      std::cout << cells.dump(2) << "\n";
    }
    return mismatch ? kExitViolation : kExitPass;
  }

  const GeneratorPair pair{
      Generator::parse(require_arg(args.phi, "--phi")),
      Generator::parse(require_arg(args.psi, "--psi"))};
  const auto sr = parse_range(args.s_range, "--s-range");
  const auto tr = parse_range(args.t_range, "--t-range");
  const auto verdict = concavity_scan(pair, {sr.lo, sr.hi}, {tr.lo, tr.hi},
                                      args.steps, args.common.tolerance);
  if (args.common.output == "csv") {
    const auto grid = concavity_defect_grid(pair, {sr.lo, sr.hi},
                                            {tr.lo, tr.hi}, args.steps);
    std::cout << "s,t,worst_midpoint_defect\n";
    for (const auto& cell : grid) {
      std::cout << fmt_g(cell.s) << ',' << fmt_g(cell.t) << ','
                << fmt_g(cell.worst_defect) << "\n";
    }
  } else if (args.common.output == "pretty") {
    std::cout << (verdict.concave_on_grid ? "concave" : "NOT concave")
              << " on grid, worst midpoint defect "
              << fmt_g(verdict.worst_violation) << "\n";
  } else {
    std::cout << to_json(verdict).dump(2) << "\n";
  }
  return verdict.concave_on_grid ? kExitPass : kExitViolation;
}

// ---------------------------------------------------------------------------
// search

struct SearchArgs {
  std::string target = "holder";
  std::string phi, psi;
  std::string mu = "uniform:2";
  std::string nu = "1,1";
  std::string box = "0.1:10";
  CommonOpts common;
};

int run_search(const SearchArgs& args) {
  const GeneratorPair pair{
      Generator::parse(require_arg(args.phi, "--phi")),
      Generator::parse(require_arg(args.psi, "--psi"))};
  const auto mu = parse_space(args.mu, "--mu");
  const auto box = parse_range(args.box, "--box");

  SearchOptions opt;
  opt.seed = args.common.seed;
  opt.budget = args.common.budget;
  opt.jobs = args.common.jobs;
  opt.tolerance = args.common.tolerance;
  opt.value_range = {box.lo, box.hi};
  if (args.target == "genmink") {
    opt.target = SearchTarget::GeneralizedMinkowskiTwoBlock;
    opt.nu = parse_space(args.nu, "--nu");
  } else if (args.target != "holder") {
    throw validation_error("--target must be holder or genmink");
  }

  const auto witness = counterexample_search(pair, mu, opt);
  if (!witness) {
    if (args.common.output == "json" || args.common.output == "jsonl") {
      std::cout << "\"none\"\n";
    } else {
      std::cout << "none\n";
    }
    return kExitPass;
  }

  json out{{"found", true},
           {"target", args.target},
           {"phi", pair.phi.spec_string()},
           {"psi", pair.psi.spec_string()},
           {"mu", mu.weights()},
           {"seed", opt.seed},
           {"budget", opt.budget},
           {"restart", witness->restart_index},
           {"evaluations", witness->evaluations},
           {"report", witness->report.to_json()}};
  if (opt.target == SearchTarget::Holder) {
    out["f"] = witness->f_values;
    out["g"] = witness->g_values;
  } else {
    out["nu"] = opt.nu->weights();
    out["quad"] = witness->quadruple;
    out["F"] = witness->report.witness.at("F");
  }
  if (args.common.output == "jsonl") {
    std::cout << out.dump() << "\n";
  } else if (args.common.output == "pretty") {
    std::cout << "violation found: gap=" << fmt_g(witness->report.gap)
              << " restart=" << witness->restart_index << "\n"
              << out.dump(2) << "\n";
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return kExitViolation;
}

// ---------------------------------------------------------------------------
// fit

struct FitArgs {
  std::string gen;
  std::string grid = "0.1:10:50";
  CommonOpts common;
};

int run_fit(const FitArgs& args) {
  const auto gen = Generator::parse(require_arg(args.gen, "--gen"));
  const auto g3 = parse_grid(args.grid, "--grid");
  if (!(g3.lo > 0.0)) {
    throw validation_error("--grid: fit grid must be positive");
  }
  const auto fit = power_fit(gen, grid_points(g3));
  json out = to_json(fit, gen.spec_string());
  out["grid"] = args.grid;
  if (args.common.output == "pretty") {
    std::cout << "phi(t) ~= " << fmt_g(fit.c) << " * t^" << fmt_g(fit.p)
              << ", max relative residual " << fmt_g(fit.max_relative_residual)
              << "\n";
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------
// demo-optimality

struct DemoArgs {
  std::string mode = "forward";
  std::string phi, psi;
  std::string mu;
  std::string f, g;
  std::string r_range;
  std::size_t steps = 64;
  double p = 2.0, p_prime = 1.0;
  CommonOpts common;
};

int run_demo(const DemoArgs& args) {
  const double tol = args.common.tolerance;
  if (args.mode == "strict-gap") {
    const auto mu = parse_space(require_arg(args.mu, "--mu"), "--mu");
    const StepFunction f(mu, parse_value_list(require_arg(args.f, "--f"), "--f"));
    const auto r = strict_gap_demo(args.p, args.p_prime, f, mu, tol);
    std::cout << to_json(r).dump(2) << "\n";
    return r.strict ? kExitPass : kExitViolation;
  }

  const GeneratorPair pair{
      Generator::parse(require_arg(args.phi, "--phi")),
      Generator::parse(require_arg(args.psi, "--psi"))};
  const auto mu = parse_space(require_arg(args.mu, "--mu"), "--mu");

  OptimalityResult res;
  if (args.mode == "forward") {
    const StepFunction f(mu, parse_value_list(require_arg(args.f, "--f"), "--f"));
    const auto rr = parse_range(args.r_range.empty() ? "0.1:10" : args.r_range,
                                "--r-range");
    res = optimality_search(pair, f, mu, {rr.lo, rr.hi}, args.steps, tol);
  } else if (args.mode == "reversed") {
    const StepFunction g(mu, parse_value_list(require_arg(args.g, "--g"), "--g"));
    const auto rr = parse_range(
        args.r_range.empty() ? "-8:-0.2" : args.r_range, "--r-range");
    res = reversed_optimality_search(pair, g, mu, {rr.lo, rr.hi}, args.steps,
                                     tol);
  } else {
    throw validation_error("--mode must be forward, reversed or strict-gap");
  }
  std::cout << to_json(res).dump(2) << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized-mean functionals and their inequalities"};
  app.require_subcommand(1);

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "run one inequality checker");
  check->add_option("name", check_args.name,
                    "holder | reversed-holder | minkowski | gmi | genmink | "
                    "mulholland | quasimean")
      ->required();
  check->add_option("--phi", check_args.phi, "generator spec for phi");
  check->add_option("--psi", check_args.psi, "generator spec for psi");
  check->add_option("--mu", check_args.mu, "space spec for X");
  check->add_option("--nu", check_args.nu, "space spec for Y");
  check->add_option("--f", check_args.f, "values of f (inline or @file)");
  check->add_option("--g", check_args.g, "values of g (inline or @file)");
  check->add_option("--F", check_args.F,
                    "row-major values of F on X x Y (inline or @file)");
  check->add_option("--quad", check_args.quads,
                    "t,u,v,w quadruple for mulholland (repeatable)");
  check->add_option("--p", check_args.p, "exponent for gmi");
  check->add_option("--a", check_args.a, "first argument list for quasimean");
  check->add_option("--b", check_args.b, "second argument list for quasimean");
  check->add_option("--weights", check_args.weights,
                    "quasi-mean weights summing to 1");
  check->add_option("--direction", check_args.direction,
                    "genmink direction: forward | reversed")
      ->check(CLI::IsMember({"forward", "reversed"}));
  add_common(check, &check_args.common);

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan-concavity",
                                  "midpoint-concavity scan of F(s,t)");
  scan->add_option("--phi", scan_args.phi, "generator spec for phi");
  scan->add_option("--psi", scan_args.psi, "generator spec for psi");
  scan->add_option("--s-range", scan_args.s_range, "s interval lo:hi");
  scan->add_option("--t-range", scan_args.t_range, "t interval lo:hi");
  scan->add_option("--steps", scan_args.steps, "grid steps per axis");
  scan->add_option("--p-range", scan_args.p_range,
                   "power-pair grid lo:hi:n for p");
  scan->add_option("--q-range", scan_args.q_range,
                   "power-pair grid lo:hi:n for q");
  scan->add_option("--scan-range", scan_args.scan_range,
                   "s=t interval per cell in grid mode");
  scan->add_option("--scan-steps", scan_args.scan_steps,
                   "grid steps per cell in grid mode");
  add_common(scan, &scan_args.common);

  SearchArgs search_args;
  auto* search = app.add_subcommand("search",
                                    "seeded counterexample search");
  search->add_option("--target", search_args.target, "holder | genmink");
  search->add_option("--phi", search_args.phi, "generator spec for phi");
  search->add_option("--psi", search_args.psi, "generator spec for psi");
  search->add_option("--mu", search_args.mu, "space spec for X");
  search->add_option("--nu", search_args.nu,
                     "space spec for Y (genmink target)");
  search->add_option("--box", search_args.box,
                     "value box lo:hi for candidate coordinates");
  add_common(search, &search_args.common, /*seed_required=*/true);

  FitArgs fit_args;
  auto* fit = app.add_subcommand("fit", "power-law fit of a generator");
  fit->add_option("--gen", fit_args.gen, "generator spec")->required();
  fit->add_option("--grid", fit_args.grid, "sample grid lo:hi:n");
  add_common(fit, &fit_args.common);

  DemoArgs demo_args;
  auto* demo = app.add_subcommand(
      "demo-optimality", "equality-exponent scans and the strict-gap demo");
  demo->add_option("--mode", demo_args.mode,
                   "forward | reversed | strict-gap");
  demo->add_option("--phi", demo_args.phi, "generator spec for phi");
  demo->add_option("--psi", demo_args.psi, "generator spec for psi");
  demo->add_option("--mu", demo_args.mu, "space spec");
  demo->add_option("--f", demo_args.f, "values of f");
  demo->add_option("--g", demo_args.g, "values of g");
  demo->add_option("--r-range", demo_args.r_range, "exponent interval lo:hi");
  demo->add_option("--steps", demo_args.steps, "scan steps");
  demo->add_option("--p", demo_args.p, "larger exponent (strict-gap)");
  demo->add_option("--p-prime", demo_args.p_prime,
                   "smaller exponent (strict-gap)");
  add_common(demo, &demo_args.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*check) return run_check(check_args);
    if (*scan) return run_scan(scan_args);
    if (*search) return run_search(search_args);
    if (*fit) return run_fit(fit_args);
    if (*demo) return run_demo(demo_args);
  } catch (const validation_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

// Copyright 2026 The Authors.
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

#include "latdr/cli.h"

#include <cmath>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "latdr/complex.h"
#include "latdr/generate.h"
#include "latdr/greedy.h"
#include "latdr/instance_io.h"
#include "latdr/json_util.h"
#include "latdr/oracle.h"
#include "latdr/parallel.h"
#include "latdr/rounding.h"
#include "latdr/ulm.h"

namespace latdr {
namespace {

constexpr int64_t kValidateCap = int64_t{1} << 12;

struct SolveFlags {
  std::string path;
  uint64_t seed = 1;
  double epsilon_greedy = 0.05;
  double epsilon_round = 0.3;
  int trials = 200;
  int enum_cap = 2;
  bool continuous_only = false;
  bool exact_gradient = false;
  std::string out;
  int64_t validate_cap = kValidateCap;
};

struct UlmFlags {
  std::string path;
  std::string from = "bottom";
  std::string to = "top";
  int samples = 10;
  std::string at;
  std::string out;
};

struct GenFlags {
  std::string family = "layered";
  std::string objective = "coverage";
  int n = 6;
  int constraints = 1;
  double budget_fraction = 0.4;
  bool unit_costs = false;
  uint64_t seed = 1;
  std::string name;
  std::string out;
};

const char* DrStatusName(DrStatus s) {
  switch (s) {
    case DrStatus::kValidated:
      return "validated";
    case DrStatus::kAssumed:
      return "assumed";
    case DrStatus::kUnchecked:
      return "unchecked";
  }
  return "unchecked";
}

Json Names(const InstanceFile& file, ElementSet s) {
  Json a = Json::array();
  for (const std::string& n : file.Names(s)) a.push_back(n);
  return a;
}

Json Doubles(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

std::string SetText(const InstanceFile& file, ElementSet s) {
  std::string out = "{";
  bool first = true;
  for (const std::string& n : file.Names(s)) {
    if (!first) out += ",";
    first = false;
    out += n;
  }
  return out + "}";
}

// Builds the instance and runs every validator. Returns 0 when all pass,
// otherwise prints the first witness and returns kExitValidation.
int Validate(const InstanceFile& file, int64_t cap, Instance* instance,
             std::ostream& out, std::ostream& err) {
  for (const CostFunction& c : file.constraints) {
    const ValidationReport r = ValidateOrderConsistent(c, file.poset);
    if (!r.passed) {
      err << "order-consistency failed for constraint '" << c.label()
          << "': " << file.elements[r.p] << " <= " << file.elements[r.q]
          << " but c(" << file.elements[r.p] << ") = " << FormatDouble(r.lhs)
          << " > c(" << file.elements[r.q] << ") = " << FormatDouble(r.rhs)
          << "\n";
      return kExitValidation;
    }
  }
  *instance = file.Build();
  const InstanceValidation v = ValidateInstance(*instance, cap);
  if (v.assumed) {
    err << "warning: more than " << cap
        << " ideals; DR and monotonicity assumed, not checked\n";
    out << "order: ok\ndr: assumed\nmonotone: assumed\n";
    return kExitOk;
  }
  out << "order: ok\n";
  if (!v.dr.passed) {
    err << "DR failed: X=" << SetText(file, v.dr.x)
        << " Y=" << SetText(file, v.dr.y) << " p=" << file.elements[v.dr.p]
        << " q=" << file.elements[v.dr.q]
        << " f_X(p)=" << FormatDouble(v.dr.lhs)
        << " f_Y(q)=" << FormatDouble(v.dr.rhs) << "\n";
    return kExitValidation;
  }
  out << "dr: ok (" << v.dr.checked << " inequalities)\n";
  if (!v.monotone.passed) {
    err << "monotonicity failed: X=" << SetText(file, v.monotone.x)
        << " p=" << file.elements[v.monotone.p]
        << " f(X)=" << FormatDouble(v.monotone.lhs)
        << " f(X+p)=" << FormatDouble(v.monotone.rhs) << "\n";
    return kExitValidation;
  }
  out << "monotone: ok (" << v.monotone.checked << " inequalities)\n";
  return kExitOk;
}

GreedyConfig MakeGreedyConfig(const SolveFlags& flags) {
  GreedyConfig g;
  g.epsilon = flags.epsilon_greedy;
  g.gradient.mode =
      flags.exact_gradient ? GradientMode::kExact : GradientMode::kAuto;
  g.seed = SplitSeed(flags.seed, kStreamGreedy, 0);
  return g;
}

Json UsageJson(const Instance& instance, ElementSet s) {
  Json usage = Json::array();
  for (const CostFunction& c : instance.constraints()) {
    Json u;
    u["label"] = c.label();
    u["used"] = c.Cost(s);
    u["budget"] = c.budget();
    usage.push_back(u);
  }
  return usage;
}

Json ContinuousJson(const InstanceFile& file, const Instance& instance,
                    const GreedyResult& g, bool full_trace) {
  Json j;
  j["value"] = g.value;
  j["point"] = Doubles(g.x.coords());
  Json usage = Json::array();
  for (const CostFunction& c : instance.constraints()) {
    Json u;
    u["label"] = c.label();
    u["used"] = ContinuousCost(c, g.x);
    u["budget"] = c.budget();
    usage.push_back(u);
  }
  j["usage"] = usage;
  j["iterations"] = static_cast<int>(g.trace.steps.size()) - 1;
  j["lp_steps"] = g.trace.lp_steps;
  j["cube_transitions"] = g.trace.transitions;
  if (full_trace) {
    Json steps = Json::array();
    for (size_t k = 0; k < g.trace.steps.size(); ++k) {
      const GreedyStep& s = g.trace.steps[k];
      Json row;
      row["k"] = static_cast<int>(k);
      row["value"] = s.value;
      row["branch"] =
          s.branch == GreedyBranch::kLpStep ? "lp" : "cube_transition";
      if (s.witness >= 0) row["witness"] = file.elements[s.witness];
      row["usage"] = Doubles(s.usage);
      row["x"] = Doubles(s.x.coords());
      steps.push_back(row);
    }
    j["trace"] = steps;
  }
  return j;
}

Json ConfigJson(const SolveFlags& flags) {
  Json c;
  c["seed"] = flags.seed;
  c["epsilon_greedy"] = flags.epsilon_greedy;
  c["epsilon_round"] = flags.epsilon_round;
  c["trials"] = flags.trials;
  c["enum_cap"] = flags.enum_cap;
  c["continuous_only"] = flags.continuous_only;
  c["exact_gradient"] = flags.exact_gradient;
  return c;
}

RoundingConfig MakeRoundingConfig(const SolveFlags& flags) {
  RoundingConfig r;
  r.epsilon = flags.epsilon_round;
  r.enumeration_cap = flags.enum_cap;
  r.trials = flags.trials;
  r.seed = flags.seed;
  r.greedy = MakeGreedyConfig(flags);
  return r;
}

Json RoundingJson(const SolveReport& report) {
  Json r;
  r["enumeration_bound"] = report.enumeration_bound;
  r["enumeration_limit"] = report.enumeration_limit;
  r["enumeration_truncated"] = report.enumeration_truncated;
  r["work_items"] = report.work_items;
  r["candidates"] = report.candidates;
  r["trials"] = report.trials;
  r["mean"] = report.mean;
  r["half_width"] = report.half_width;
  r["min"] = report.min_value;
  r["max"] = report.max_value;
  r["best_trial"] = report.best_trial;
  r["feasibility_rate"] = report.feasibility_rate;
  const RoundingStats& s = report.stats;
  r["rounding_events"] = s.events;
  r["rejections"] = s.rejections;
  r["rejection_rate"] =
      s.events > 0 ? static_cast<double>(s.rejections) / s.events : 0.0;
  r["repairs"] = s.repairs;
  r["removals"] = s.removals;
  r["max_removals_per_constraint"] = s.max_removals;
  r["removal_bound"] = report.removal_bound;
  r["repair_fallbacks"] = s.fallbacks;
  r["push_down_skips"] = s.pushdown_skips;
  r["diagnostics"] = report.diagnostics;
  return r;
}

int CmdValidate(const std::string& path, int64_t cap, std::ostream& out,
                std::ostream& err) {
  const InstanceFile file = LoadInstance(path);
  Instance instance;
  const int status = Validate(file, cap, &instance, out, err);
  if (status == kExitOk) out << "valid\n";
  return status;
}

int CmdSolve(const SolveFlags& flags, std::ostream& out, std::ostream& err) {
  const InstanceFile file = LoadInstance(flags.path);
  Instance instance;
  std::ostringstream quiet;
  const int status = Validate(file, flags.validate_cap, &instance, quiet, err);
  if (status != kExitOk) return status;

  Json report;
  report["instance"] = file.name;
  report["config"] = ConfigJson(flags);
  report["dr_status"] = DrStatusName(instance.dr_status());
  const GreedyResult g = RunGreedy(instance, MakeGreedyConfig(flags));
  std::ostringstream summary;
  if (flags.continuous_only) {
    report["continuous"] = ContinuousJson(file, instance, g, true);
    summary << "continuous value " << FormatDouble(g.value) << "\n";
  } else {
    const SolveResult solved = Solve(instance, MakeRoundingConfig(flags));
    report["solution"] = Names(file, solved.solution.members());
    report["value"] = solved.value;
    report["feasible"] = instance.Feasible(solved.solution.members()) &&
                         instance.poset().IsIdeal(solved.solution.members());
    report["usage"] = UsageJson(instance, solved.solution.members());
    report["continuous"] = ContinuousJson(file, instance, g, false);
    report["rounding"] = RoundingJson(solved.report);
    summary << "solution " << SetText(file, solved.solution.members())
            << " value " << FormatDouble(solved.value) << " mean "
            << FormatDouble(solved.report.mean) << " +- "
            << FormatDouble(solved.report.half_width) << "\n";
  }
  const std::string text = DumpJson(report);
  if (flags.out.empty()) {
    out << text;
  } else {
    WriteFile(flags.out, text);
    out << summary.str();
  }
  return kExitOk;
}

int CmdCompare(const SolveFlags& flags, std::ostream& out,
               std::ostream& err) {
  const InstanceFile file = LoadInstance(flags.path);
  Instance instance;
  std::ostringstream quiet;
  const int status = Validate(file, flags.validate_cap, &instance, quiet, err);
  if (status != kExitOk) return status;
  const OracleResult opt = ExactOpt(instance);
  const SolveResult solved = Solve(instance, MakeRoundingConfig(flags));
  auto ratio = [&](double v) {
    if (opt.value == 0.0) return v == 0.0 ? 1.0 : INFINITY;
    return v / opt.value;
  };
  Json j;
  j["instance"] = file.name;
  j["config"] = ConfigJson(flags);
  j["opt_value"] = opt.value;
  j["opt_solution"] = Names(file, opt.optimum.members());
  j["solution"] = Names(file, solved.solution.members());
  j["value"] = solved.value;
  j["ratio"] = ratio(solved.value);
  double sum = 0.0;
  double worst = INFINITY;
  Json rows = Json::array();
  for (size_t r = 0; r < solved.report.values.size(); ++r) {
    const double v = solved.report.values[r];
    const double q = ratio(v);
    sum += q;
    worst = std::min(worst, q);
    Json row;
    row["trial"] = static_cast<int>(r);
    row["value"] = v;
    row["ratio"] = q;
    row["feasible"] = static_cast<bool>(solved.report.trial_feasible[r]);
    rows.push_back(row);
  }
  j["mean_ratio"] = sum / solved.report.values.size();
  j["min_ratio"] = worst;
  j["feasibility_rate"] = solved.report.feasibility_rate;
  j["trials"] = rows;
  const std::string text = DumpJson(j);
  if (flags.out.empty()) {
    out << text;
  } else {
    WriteFile(flags.out, text);
    out << "mean ratio " << FormatDouble(sum / solved.report.values.size())
        << " feasibility " << FormatDouble(solved.report.feasibility_rate)
        << "\n";
  }
  return kExitOk;
}

std::vector<double> ParseNumbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      while (used < item.size() && std::isspace(item[used])) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, "bad number '" + item + "'");
    }
  }
  return out;
}

ComplexPoint ParsePoint(const Poset& poset, const std::string& text) {
  if (text == "bottom") return ComplexPoint::Bottom(poset.size());
  if (text == "top") return ComplexPoint::Top(poset.size());
  return MakePoint(poset, ParseNumbers(text));
}

int CmdUlm(const UlmFlags& flags, std::ostream& out, std::ostream&) {
  const InstanceFile file = LoadInstance(flags.path);
  const Poset& poset = file.poset;
  const ComplexPoint x = ParsePoint(poset, flags.from);
  const ComplexPoint y = ParsePoint(poset, flags.to);
  if (!PointLeq(x, y)) {
    throw Error(ErrorCode::kInvalidArgument, "--from must be <= --to");
  }
  if (flags.samples < 1) {
    throw Error(ErrorCode::kInvalidArgument, "--samples must be positive");
  }
  const UniformLinearMotion motion = UniformLinearMotion::Compute(poset, x, y);
  std::vector<double> times;
  if (motion.constant()) {
    times.push_back(0.0);
  } else {
    for (int i = 0; i <= flags.samples; ++i) {
      times.push_back(static_cast<double>(i) / flags.samples);
    }
    if (!flags.at.empty()) {
      for (double t : ParseNumbers(flags.at)) {
        if (!(t >= 0.0 && t <= 1.0)) {
          throw Error(ErrorCode::kInvalidArgument, "--at times lie in [0,1]");
        }
        times.push_back(t);
      }
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
  }
  std::ostringstream csv;
  csv << "t";
  for (const std::string& n : file.elements) csv << "," << n;
  csv << "\n";
  for (double t : times) {
    csv << FormatDouble(t);
    const ComplexPoint u = motion.Evaluate(t);
    for (int p = 0; p < poset.size(); ++p) csv << "," << FormatDouble(u[p]);
    csv << "\n";
  }
  csv << "# breakpoints:";
  for (double t : motion.breakpoints()) csv << " " << FormatDouble(t);
  csv << "\n# speeds:";
  const UlmNetwork& net = motion.network();
  for (int i = 0; i < net.size(); ++i) {
    csv << " " << file.elements[net.elements[i]] << "="
        << FormatDouble(motion.solution().speed[i]);
  }
  csv << "\n";
  const StraightnessReport s = VerifyStraightness(poset, motion, 1e-9);
  double residual = 0.0;
  for (const FaceCheck& f : s.faces) residual = std::max(residual, f.residual);
  csv << "# straightness: " << (s.straight ? "ok" : "failed") << " faces "
      << s.faces.size() << " max_residual " << FormatDouble(residual) << "\n";
  if (flags.out.empty()) {
    out << csv.str();
  } else {
    WriteFile(flags.out, csv.str());
  }
  return s.straight ? kExitOk : kExitNoConvergence;
}

int CmdGen(const GenFlags& flags, std::ostream& out, std::ostream&) {
  GeneratorParams params;
  if (flags.family == "sensor-coverage") {
    params.family = PosetFamily::kRandom;
    params.objective = ObjectiveKind::kCoverage;
  } else {
    params.family = ParsePosetFamily(flags.family);
    if (flags.objective == "modular") {
      params.objective = ObjectiveKind::kModular;
    } else if (flags.objective == "coverage") {
      params.objective = ObjectiveKind::kCoverage;
    } else if (flags.objective == "concave") {
      params.objective = ObjectiveKind::kConcave;
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown objective '" + flags.objective + "'");
    }
  }
  params.n = flags.n;
  params.constraints = flags.constraints;
  params.budget_fraction = flags.budget_fraction;
  params.unit_costs = flags.unit_costs;
  params.seed = flags.seed;
  const Instance instance = GenerateInstance(params);
  const std::string name =
      flags.name.empty()
          ? flags.family + "-" + std::to_string(flags.n) + "-" +
                std::to_string(flags.seed)
          : flags.name;
  const std::string text = SerializeInstance(MakeInstanceFile(name, instance));
  if (flags.out.empty()) {
    out << text;
  } else {
    WriteFile(flags.out, text);
  }
  return kExitOk;
}

void AddSolveOptions(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("instance", f.path, "Instance file")->required();
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--epsilon-greedy", f.epsilon_greedy,
                  "Step size of the continuous greedy");
  cmd->add_option("--epsilon-round", f.epsilon_round,
                  "Rounding epsilon, in (0, 0.5)");
  cmd->add_option("--trials", f.trials, "Independent rounding trials");
  cmd->add_option("--enum-cap", f.enum_cap, "Largest enumerated set size");
  cmd->add_flag("--exact-gradient", f.exact_gradient,
                "Exact gradients at every greedy step");
  cmd->add_option("--validate-cap", f.validate_cap,
                  "Ideal count above which DR is assumed");
  cmd->add_option("--out", f.out, "Write the report here");
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
    case ErrorCode::kIo:
      return kExitIo;
    case ErrorCode::kCapExceeded:
      return kExitCap;
    case ErrorCode::kNoConvergence:
    case ErrorCode::kNoAdmissibleBelow:
      return kExitNoConvergence;
    default:
      return kExitValidation;
  }
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Monotone DR-submodular maximization on distributive lattices"};
  app.require_subcommand(1);

  std::string validate_path;
  int64_t validate_cap = kValidateCap;
  CLI::App* validate = app.add_subcommand("validate", "Check an instance");
  validate->add_option("instance", validate_path, "Instance file")->required();
  validate->add_option("--cap", validate_cap,
                       "Ideal count above which DR is assumed");

  SolveFlags solve_flags;
  CLI::App* solve = app.add_subcommand("solve", "Solve an instance");
  AddSolveOptions(solve, solve_flags);
  solve->add_flag("--continuous-only", solve_flags.continuous_only,
                  "Stop after the continuous greedy");

  SolveFlags compare_flags;
  CLI::App* compare =
      app.add_subcommand("compare", "Solve and compare with the exact optimum");
  AddSolveOptions(compare, compare_flags);

  UlmFlags ulm_flags;
  CLI::App* ulm = app.add_subcommand("ulm", "Dump a uniform linear motion");
  ulm->add_option("instance", ulm_flags.path, "Instance file")->required();
  ulm->add_option("--from", ulm_flags.from,
                  "Start point: comma list, 'bottom' or 'top'");
  ulm->add_option("--to", ulm_flags.to, "End point");
  ulm->add_option("--samples", ulm_flags.samples, "Grid intervals");
  ulm->add_option("--at", ulm_flags.at, "Extra comma-separated times");
  ulm->add_option("--out", ulm_flags.out, "Write the CSV here");

  GenFlags gen_flags;
  CLI::App* gen = app.add_subcommand("gen", "Generate a validated instance");
  gen->add_option("--family", gen_flags.family,
                  "chain, antichain, forest, layered, random, sensor-coverage");
  gen->add_option("--objective", gen_flags.objective,
                  "modular, coverage or concave");
  gen->add_option("--n", gen_flags.n, "Element count");
  gen->add_option("--constraints", gen_flags.constraints, "Knapsack count");
  gen->add_option("--budget-fraction", gen_flags.budget_fraction,
                  "Budget as a fraction of total cost");
  gen->add_flag("--unit-costs", gen_flags.unit_costs, "All costs equal 1");
  gen->add_option("--seed", gen_flags.seed, "Seed");
  gen->add_option("--name", gen_flags.name, "Instance name");
  gen->add_option("--out", gen_flags.out, "Write the instance here");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitIo;
  }

  ApplyThreadsFromEnvironment();
  try {
    if (*validate) return CmdValidate(validate_path, validate_cap, out, err);
    if (*solve) return CmdSolve(solve_flags, out, err);
    if (*compare) return CmdCompare(compare_flags, out, err);
    if (*ulm) return CmdUlm(ulm_flags, out, err);
    if (*gen) return CmdGen(gen_flags, out, err);
  } catch (const Error& e) {
    err << "error (" << ErrorCodeName(e.code()) << "): " << e.what() << "\n";
    return ExitCodeFor(e.code());
  }
  return kExitIo;
}

}  // namespace latdr

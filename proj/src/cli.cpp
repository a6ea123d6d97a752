// Copyright 2026 The metricvote Authors.
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

#include "metricvote/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "metricvote/distortion.hpp"
#include "metricvote/mixtures.hpp"
#include "metricvote/rule_spec.hpp"
#include "metricvote/rules.hpp"

namespace metricvote {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::pair<int, int> parse_range(const std::string& text, const char* flag) {
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || v < 1) {
      throw UsageError(std::string(flag) + " expects a positive integer or lo:hi");
    }
    return v;
  };
  if (auto colon = text.find(':'); colon != std::string::npos) {
    int lo = to_int(text.substr(0, colon)), hi = to_int(text.substr(colon + 1));
    if (hi < lo) throw UsageError(std::string(flag) + " range is empty");
    return {lo, hi};
  }
  int v = to_int(text);
  return {v, v};
}

Formulation parse_formulation(const std::string& text) {
  if (text == "auto") return Formulation::kAuto;
  if (text == "closure") return Formulation::kClosureLp;
  if (text == "biased") return Formulation::kBiasedLp;
  throw UsageError("--formulation must be auto, closure or biased");
}

RuleSpec parse_rule(const std::string& text) {
  try {
    return RuleSpec::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

std::string format_value(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
  file << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Metric-distortion voting rules and exact distortion evaluation", "metricvote"};
  app.require_subcommand(1);

  std::string rule_text, instance_path, out_path, formulation_text = "auto";
  std::string family = "random", beta_text, m_text = "4", n_text = "5", kind_text = "radius";
  std::string sizes_text;
  int m = 3, n = 5, size = 5;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  double b_value = 0.0;
  bool full_report = false;

  auto* gen = app.add_subcommand("gen", "Write an instance file");
  gen->add_option("--family", family, "random, radius_lb or rcb_lb")->capture_default_str();
  gen->add_option("--m", m, "Candidates (random family)")->capture_default_str();
  gen->add_option("--n", n, "Voters (random family)")->capture_default_str();
  gen->add_option("--seed", seed, "Random seed")->capture_default_str();
  gen->add_option("--beta", beta_text, "Rational beta for the lower-bound families");
  gen->add_option("--size", size, "|U| for radius_lb, T for rcb_lb")->capture_default_str();
  gen->add_option("--out", out_path, "Output path (stdout when omitted)");

  auto* winner = app.add_subcommand("winner", "Print a rule's output distribution");
  winner->add_option("--rule", rule_text, "Rule spec")->required();
  winner->add_option("--instance", instance_path, "Instance file")->required();

  auto* distortion = app.add_subcommand("distortion", "Exact distortion of a rule on an instance");
  distortion->add_option("--rule", rule_text, "Rule spec")->required();
  distortion->add_option("--instance", instance_path, "Instance file")->required();
  distortion->add_option("--formulation", formulation_text, "auto, closure or biased")
      ->capture_default_str();
  distortion->add_flag("--witness", full_report, "Print the witness metric");

  auto* corpus = app.add_subcommand("corpus", "Exact distortion over random instances as CSV");
  corpus->add_option("--rule", rule_text, "Rule spec")->required();
  corpus->add_option("--m", m_text, "Candidates, N or lo:hi")->capture_default_str();
  corpus->add_option("--n", n_text, "Voters, N or lo:hi")->capture_default_str();
  corpus->add_option("--trials", trials, "Number of instances")->capture_default_str();
  corpus->add_option("--seed", seed, "Random seed")->capture_default_str();
  corpus->add_option("--out", out_path, "CSV path (stdout when omitted)");
  corpus->add_option("--formulation", formulation_text, "auto, closure or biased")
      ->capture_default_str();

  auto* bounds = app.add_subcommand("bounds", "Distortion guarantee of the ML mixtures");
  bounds->add_option("--kind", kind_text, "rcb or radius")->capture_default_str();
  bounds->add_option("--B", b_value, "Upper end of the beta range; minimized when omitted");

  auto* lower = app.add_subcommand("lowerbound", "Exact distortion on the lower-bound families");
  lower->add_option("--family", family, "radius or rcb")->required();
  lower->add_option("--beta", beta_text, "Rational beta")->required();
  lower->add_option("--sizes", sizes_text, "Comma-separated |U| or T values")->required();

  std::vector<std::string> argv_storage{"metricvote"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (gen->parsed()) {
      std::string text;
      if (family == "random") {
        text = format_instance(gen_random(m, n, seed));
      } else if (family == "radius_lb" || family == "rcb_lb") {
        if (beta_text.empty()) throw UsageError("--beta is required for " + family);
        const Rational beta = parse_rational(beta_text);
        text = family == "radius_lb" ? format_instance(gen_radius_lb(beta, size).election)
                                     : format_instance(gen_rcb_lb(beta, size).election);
      } else {
        throw UsageError("--family must be random, radius_lb or rcb_lb");
      }
      write_output(out_path, text, out);
    } else if (winner->parsed()) {
      const RuleSpec rule = parse_rule(rule_text);
      const ElectionInstance e = load_instance_file(instance_path);
      out << run_rule(e, rule).to_string() << '\n';
    } else if (distortion->parsed()) {
      const RuleSpec rule = parse_rule(rule_text);
      DistortionOptions options;
      options.formulation = parse_formulation(formulation_text);
      const ElectionInstance e = load_instance_file(instance_path);
      const DistortionReport report = exact_distortion(e, run_rule(e, rule), options);
      if (full_report) {
        out << format_report(report);
      } else {
        out << format_value(report.value) << '\n';
      }
    } else if (corpus->parsed()) {
      const RuleSpec rule = parse_rule(rule_text);
      DistortionOptions options;
      options.formulation = parse_formulation(formulation_text);
      auto [m_lo, m_hi] = parse_range(m_text, "--m");
      auto [n_lo, n_hi] = parse_range(n_text, "--n");
      const auto instances = gen_corpus(trials, m_lo, m_hi, n_lo, n_hi, seed);
      std::ostringstream csv;
      csv << "instance_id,rule,distortion,argmax_i_star\n";
      double max_value = 1.0, sum = 0.0;
      for (std::size_t t = 0; t < instances.size(); ++t) {
        const DistortionReport report =
            exact_distortion(instances[t], run_rule(instances[t], rule), options);
        csv << t << ',' << rule.to_string() << ',' << format_value(report.value) << ','
            << report.witness_i_star << '\n';
        max_value = std::max(max_value, report.value);
        sum += report.value;
      }
      write_output(out_path, csv.str(), out);
      err << "trials " << instances.size() << " max " << format_value(max_value) << " mean "
          << format_value(instances.empty() ? 0.0 : sum / static_cast<double>(instances.size()))
          << '\n';
    } else if (bounds->parsed()) {
      BetaRule kind;
      if (kind_text == "rcb") {
        kind = BetaRule::kRcb;
      } else if (kind_text == "radius") {
        kind = BetaRule::kRadius;
      } else {
        throw UsageError("--kind must be rcb or radius");
      }
      if (bounds->count("--B")) {
        out << format_value(distortion_bound_curve(b_value, kind)) << '\n';
      } else {
        const BoundMinimum best = minimize_bound_curve(kind);
        out << "B " << format_value(best.b) << " distortion " << format_value(best.value) << '\n';
      }
    } else if (lower->parsed()) {
      if (family != "radius" && family != "rcb") throw UsageError("--family must be radius or rcb");
      const Rational beta = parse_rational(beta_text);
      const Threshold t(beta);
      out << "size,distortion,target\n";
      std::stringstream list(sizes_text);
      std::string item;
      while (std::getline(list, item, ',')) {
        const int s = parse_range(item, "--sizes").first;
        double value = 0.0;
        if (family == "radius") {
          const RadiusLowerBound lb = gen_radius_lb(beta, s);
          value = exact_distortion(lb.election, radius(lb.election, t)).value;
        } else {
          const RcbLowerBound lb = gen_rcb_lb(beta, s);
          value = exact_distortion(lb.election, rcb(lb.election, t)).value;
        }
        out << s << ',' << format_value(value) << ',' << format_value(1.0 + 2.0 / beta.get_d())
            << '\n';
      }
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace metricvote

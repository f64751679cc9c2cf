#include <iostream>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iwmu/errors.hpp"
#include "iwmu/jobs.hpp"

namespace {

using namespace iwmu;

std::vector<int> parse_int_list(const std::string& text, const char* flag) {
  std::vector<int> out;
  std::string field;
  std::istringstream in(text);
  while (std::getline(in, field, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(field, &used));
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      throw InvalidInput(std::string(flag) + ": \"" + field + "\" is not an integer");
    }
  }
  return out;
}

// Accepts "3", "1/2" or a terminating decimal such as "0.25".
Rational parse_rational(const std::string& text) {
  static const std::regex fraction(R"((\d+)(?:/(\d+))?)");
  static const std::regex decimal(R"((\d*)\.(\d+))");
  std::smatch m;
  if (std::regex_match(text, m, fraction)) {
    const Integer num(m[1].str());
    const Integer den = m[2].matched ? Integer(m[2].str()) : Integer(1);
    if (den == 0) throw InvalidInput("--error-C: zero denominator");
    return Rational(num, den);
  }
  if (std::regex_match(text, m, decimal)) {
    const std::string digits = m[1].str() + m[2].str();
    return Rational(Integer(digits), pow(Integer(10), static_cast<unsigned>(m[2].length())));
  }
  throw InvalidInput("--error-C: \"" + text + "\" is not a nonnegative rational");
}

struct RawFlags {
  std::string levels;
  std::string ring;
  std::string error_c = "1";
  std::string format = "json";
  std::string mode = "all-n";
};

JobConfig finish(JobConfig config, const RawFlags& raw) {
  if (!raw.levels.empty()) config.levels = parse_int_list(raw.levels, "--levels");
  if (!raw.ring.empty()) {
    const auto v = parse_int_list(raw.ring, "--ring");
    if (v.size() != 3) throw InvalidInput("--ring expects p,e,f");
    config.ring = RingBase{v[0], v[1], v[2]};
  }
  config.error_c = parse_rational(raw.error_c);
  config.format = raw.format == "text" ? ReportFormat::Text : ReportFormat::Json;
  config.mode = raw.mode == "up-to-theta" ? CompareMode::UpToTheta : CompareMode::AllN;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iwasawa mu-invariants and elementary representations from finite presentations"};
  app.require_subcommand(1);

  JobConfig config;
  RawFlags raw;
  auto common = [&](CLI::App* sub, bool report_to_file) {
    sub->add_option("--n-max", config.n_max, "largest n for mu(M/pi^n)")->capture_default_str();
    sub->add_option("--levels", raw.levels, "comma-separated levels m (default: group preset)");
    sub->add_option("--ring", raw.ring, "expected coefficient ring p,e,f (checked against the inputs)");
    sub->add_option("--error-C", raw.error_c, "error constant C in |ord - mu p^{rm}| <= C p^{(r-1)m}")
        ->capture_default_str();
    sub->add_option("--format", raw.format, "report format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    sub->add_option("--seed", config.seed, "seed for generated data")->capture_default_str();
    sub->add_option("--out", config.out, report_to_file ? "write the report here instead of stdout"
                                                        : "output directory");
  };

  auto* invariants = app.add_subcommand("invariants", "mu profile and elementary representation of a module file");
  common(invariants, true);
  invariants->add_option("module", config.inputs, "module description (JSON)")->required()->expected(1);

  auto* compare = app.add_subcommand("compare", "compare two module files or two tower files");
  common(compare, true);
  compare->add_option("inputs", config.inputs, "two module files or two tower files")->required()->expected(2);
  compare->add_option("--mode", raw.mode, "compare through n_max or through theta + 1")
      ->check(CLI::IsMember({"all-n", "up-to-theta"}))
      ->capture_default_str();

  auto* tower = app.add_subcommand("tower", "mu profile from tower data (n, m, ord)");
  common(tower, true);
  tower->add_option("tower", config.inputs, "tower file (CSV or JSON)")->required()->expected(1);

  auto* synth = app.add_subcommand("synth", "write the seeded synthetic corpus");
  common(synth, false);
  synth->get_option("--out")->required();

  auto* selftest = app.add_subcommand("selftest", "round trips, obfuscation soundness and oracle agreement");
  common(selftest, true);
  selftest->add_option("corpus", config.inputs, "corpus directory from synth (default: generated)")->expected(0, 1);
  selftest->add_flag("--inject-corruption", config.inject_corruption,
                     "add a presentation altered by a non-unit move (negative control)");

  CLI11_PARSE(app, argc, argv);

  try {
    Report report;
    CLI::App* sub = app.get_subcommands().front();
    config.command = sub->get_name();
    config = finish(config, raw);
    if (sub == invariants) {
      report = run_invariants(config);
    } else if (sub == compare) {
      report = run_compare(config);
    } else if (sub == tower) {
      report = run_tower(config);
    } else if (sub == synth) {
      report = run_synth(config);
    } else {
      report = run_selftest(config);
    }
    const std::string rendered = report.render(config.format);
    if (sub != synth && !config.out.empty()) {
      write_file(config.out, rendered);
    } else {
      std::cout << rendered;
    }
    return report.exit_code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::kError;
  }
}

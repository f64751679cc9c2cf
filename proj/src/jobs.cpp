#include "iwmu/jobs.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include "iwmu/errors.hpp"

namespace iwmu {

namespace fs = std::filesystem;

void JobConfig::validate() const {
  if (n_max < 1) throw InvalidInput("--n-max must be >= 1");
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (levels[k] < 0) throw InvalidInput("--levels must be nonnegative");
    if (k > 0 && levels[k] <= levels[k - 1]) throw InvalidInput("--levels must be strictly ascending");
  }
  if (error_c < 0) throw InvalidInput("--error-C must be >= 0");
}

Json JobConfig::to_json() const {
  Json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["n_max"] = n_max;
  j["levels"] = levels.empty() ? Json("default") : Json(levels);
  j["ring"] = ring ? Json{{"p", ring->p}, {"e", ring->e}, {"f", ring->f}} : Json(nullptr);
  j["error_C"] = error_c.str();
  j["mode"] = mode == CompareMode::AllN ? "all-n" : "up-to-theta";
  j["format"] = format == ReportFormat::Json ? "json" : "text";
  j["seed"] = seed;
  j["out"] = out;
  j["inject_corruption"] = inject_corruption;
  return j;
}

std::string Report::render(ReportFormat format) const {
  if (format == ReportFormat::Json) return json.dump(2) + "\n";
  return text;
}

namespace {

std::string join(const std::vector<std::int64_t>& xs, const char* sep = ",") {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? sep : "") + std::to_string(xs[k]);
  return out;
}

std::vector<std::int64_t> widen(const std::vector<int>& xs) { return {xs.begin(), xs.end()}; }

Json rep_json(const std::optional<ElementaryRep>& rep) {
  if (!rep) return nullptr;
  return Json{{"rank", rep->free_rank}, {"theta", rep->theta}, {"s", rep->multiplicities}, {"mu", rep->mu_total}};
}

std::string rep_text(const ElementaryRep& rep) {
  return "rank " + std::to_string(rep.free_rank) + ", theta " + std::to_string(rep.theta) + ", s = (" +
         join(rep.multiplicities) + "), mu = " + std::to_string(rep.mu_total);
}

Json profile_json(const MuProfile& profile) {
  Json rows = Json::array();
  for (int n = 1; n <= profile.n_max(); ++n) {
    const auto& e = profile.estimates[static_cast<std::size_t>(n - 1)];
    const auto& raw = profile.raw[static_cast<std::size_t>(n - 1)];
    Json orders;
    for (const auto& [m, ord] : raw.orders) orders[std::to_string(m)] = ord;
    Json row;
    row["n"] = n;
    row["mu"] = e.mu;
    row["converged"] = e.converged;
    row["c_hat"] = e.c_hat.str();
    row["truncation"] = raw.truncation;
    row["orders"] = std::move(orders);
    if (!e.converged) row["reason"] = e.reason;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string profile_text(const MuProfile& profile) {
  std::ostringstream os;
  os << "levels m = " << join(widen(profile.levels_used)) << "\n";
  os << std::left << std::setw(4) << "n" << std::setw(8) << "mu" << std::setw(11) << "converged"
     << std::setw(10) << "C_hat" << "ord by level\n";
  for (int n = 1; n <= profile.n_max(); ++n) {
    const auto& e = profile.estimates[static_cast<std::size_t>(n - 1)];
    std::vector<std::int64_t> ords;
    for (const auto& [m, ord] : profile.raw[static_cast<std::size_t>(n - 1)].orders) ords.push_back(ord);
    os << std::setw(4) << n << std::setw(8) << e.mu << std::setw(11) << (e.converged ? "yes" : "no")
       << std::setw(10) << e.c_hat.str() << join(ords, " ") << "\n";
    if (!e.converged) os << "    " << e.reason << "\n";
  }
  return os.str();
}

std::string config_text(const JobConfig& config) { return "config: " + config.to_json().dump() + "\n"; }

void check_ring(const JobConfig& config, const RingBase& ring, const std::string& input) {
  if (config.ring && !(*config.ring == ring)) {
    throw InvalidInput(input + ": ring (" + std::to_string(ring.p) + "," + std::to_string(ring.e) + "," +
                       std::to_string(ring.f) + ") does not match --ring (" + std::to_string(config.ring->p) +
                       "," + std::to_string(config.ring->e) + "," + std::to_string(config.ring->f) + ")");
  }
}

Presentation load_module(const JobConfig& config, std::size_t k) {
  if (config.inputs.size() <= k) throw InvalidInput(config.command + ": missing input file");
  Presentation p = read_module(config.inputs[k]);
  check_ring(config, p.ring, config.inputs[k]);
  return p;
}

std::vector<int> levels_for(const JobConfig& config, const GroupSpec& group) {
  return config.levels.empty() ? default_levels(group) : config.levels;
}

Json verdict_json(const Verdict& v) {
  Json j;
  j["verdict"] = to_string(v.kind);
  j["witness_n"] = v.witness_n ? Json(*v.witness_n) : Json(nullptr);
  j["reason"] = v.reason;
  j["mu_first"] = v.mu_first;
  j["mu_second"] = v.mu_second;
  j["theta_pair"] = v.theta_pair ? Json::array({v.theta_pair->first, v.theta_pair->second}) : Json(nullptr);
  j["rep_first"] = rep_json(v.rep_first);
  j["rep_second"] = rep_json(v.rep_second);
  j["rank_equal"] = v.rank_equal ? Json(*v.rank_equal) : Json(nullptr);
  return j;
}

std::string verdict_text(const Verdict& v) {
  std::ostringstream os;
  os << "verdict: " << to_string(v.kind);
  if (v.witness_n) os << " (witness n = " << *v.witness_n << ")";
  os << "\n";
  if (!v.reason.empty()) os << "reason: " << v.reason << "\n";
  os << "mu first:  " << join(v.mu_first) << "\n";
  os << "mu second: " << join(v.mu_second) << "\n";
  if (v.rep_first) os << "first:  " << rep_text(*v.rep_first) << "\n";
  if (v.rep_second) os << "second: " << rep_text(*v.rep_second) << "\n";
  return os.str();
}

int verdict_exit(const Verdict& v) {
  switch (v.kind) {
    case VerdictKind::Equal:
      return exit_code::kOk;
    case VerdictKind::Unequal:
      return exit_code::kUnequal;
    case VerdictKind::Inconclusive:
      return exit_code::kInconclusive;
  }
  return exit_code::kInconclusive;
}

Json truth_json(const GroundTruth& gt) {
  Json garnish = Json::array();
  for (const Garnish& g : gt.garnish) garnish.push_back(g.generator);
  return Json{{"free_rank", gt.free_rank}, {"alphas", gt.alphas}, {"garnish", garnish}, {"seed", gt.seed}};
}

Json group_json(const GroupSpec& g) {
  return Json{{"kind", g.is_abelian() ? "abelian" : "metacyclic"}, {"p", g.p}, {"r", g.r}};
}

}  // namespace

Report run_invariants(const JobConfig& config) {
  config.validate();
  const Presentation p = load_module(config, 0);
  const auto levels = levels_for(config, p.group);

  Report report;
  report.json["command"] = "invariants";
  report.json["config"] = config.to_json();
  report.json["module"] = {{"group", group_json(p.group)},
                           {"ring", {{"p", p.ring.p}, {"e", p.ring.e}, {"f", p.ring.f}}},
                           {"gens", p.gens()},
                           {"rels", p.rels()}};
  std::ostringstream text;
  text << "iwmu invariants " << config.inputs[0] << "\n" << config_text(config);
  text << "group " << p.group.name() << ", gens " << p.gens() << ", rels " << p.rels() << "\n";

  std::vector<std::string> diagnostics;
  std::optional<ElementaryRep> rep;
  try {
    const MuProfile profile = mu_profile(p, config.n_max, levels);
    report.json["profile"] = profile_json(profile);
    text << profile_text(profile);
    try {
      rep = recover_elementary(profile);
    } catch (const NotConverged& e) {
      diagnostics.push_back(std::string("not converged, raise the levels: ") + e.what());
    } catch (const ProfileTooShort& e) {
      diagnostics.push_back(std::string("profile too short, raise --n-max: ") + e.what());
    } catch (const InconsistentProfile& e) {
      diagnostics.push_back(std::string("inconsistent profile: ") + e.what());
    }
  } catch (const InconsistentProfile& e) {
    report.json["profile"] = nullptr;
    diagnostics.push_back(std::string("inconsistent profile: ") + e.what());
  }
  report.json["converged"] = rep.has_value();
  report.json["representation"] = rep_json(rep);
  report.json["diagnostics"] = diagnostics;
  if (rep) text << rep_text(*rep) << "\n";
  for (const auto& d : diagnostics) text << "diagnostic: " << d << "\n";
  report.text = text.str();
  report.exit_code = rep ? exit_code::kOk : exit_code::kInconclusive;
  return report;
}

Report run_compare(const JobConfig& config) {
  config.validate();
  if (config.inputs.size() != 2) throw InvalidInput("compare needs exactly two input files");
  const bool tower_a = is_tower_file(config.inputs[0]);
  const bool tower_b = is_tower_file(config.inputs[1]);
  if (tower_a != tower_b) throw InvalidInput("compare needs two module files or two tower files");

  Verdict v;
  Report report;
  report.json["command"] = "compare";
  report.json["config"] = config.to_json();
  if (tower_a) {
    const TowerSeries a = read_tower(config.inputs[0]);
    const TowerSeries b = read_tower(config.inputs[1]);
    if (config.ring && config.ring->p != a.p) throw InvalidInput("--ring prime does not match the tower data");
    v = tower_compare(a, b, config.error_c);
    report.json["inputs_kind"] = "tower";
  } else {
    const Presentation a = load_module(config, 0);
    const Presentation b = load_module(config, 1);
    CompareOptions options{config.mode, config.n_max, levels_for(config, a.group)};
    v = compare_modules(a, b, options);
    report.json["inputs_kind"] = "module";
  }
  report.json["result"] = verdict_json(v);
  report.text = "iwmu compare " + config.inputs[0] + " " + config.inputs[1] + "\n" + config_text(config) +
                verdict_text(v);
  report.exit_code = verdict_exit(v);
  return report;
}

Report run_tower(const JobConfig& config) {
  config.validate();
  if (config.inputs.size() != 1) throw InvalidInput("tower needs exactly one input file");
  const TowerSeries series = read_tower(config.inputs[0]);
  if (config.ring && config.ring->p != series.p) throw InvalidInput("--ring prime does not match the tower data");

  Report report;
  report.json["command"] = "tower";
  report.json["config"] = config.to_json();
  report.json["tower"] = {{"p", series.p}, {"r", series.r}, {"n", series.ns()}, {"m", series.ms()}};
  std::ostringstream text;
  text << "iwmu tower " << config.inputs[0] << "\n" << config_text(config);

  std::vector<std::string> diagnostics;
  std::optional<ElementaryRep> rep;
  bool within = false;
  try {
    const MuProfile profile = tower_profile(series);
    report.json["profile"] = profile_json(profile);
    text << profile_text(profile);
    within = std::all_of(profile.estimates.begin(), profile.estimates.end(),
                         [&](const MuEstimate& e) { return e.converged && e.c_hat <= config.error_c; });
    try {
      rep = recover_elementary(profile);
    } catch (const Error& e) {
      diagnostics.push_back(e.what());
    }
  } catch (const InconsistentProfile& e) {
    report.json["profile"] = nullptr;
    diagnostics.push_back(std::string("inconsistent profile: ") + e.what());
  }
  report.json["within_error_model"] = within;
  report.json["converged"] = rep.has_value();
  report.json["representation"] = rep_json(rep);
  report.json["diagnostics"] = diagnostics;
  text << "within |ord - mu p^{rm}| <= C p^{(r-1)m}, C = " << config.error_c.str() << ": "
       << (within ? "yes" : "no") << "\n";
  if (rep) text << rep_text(*rep) << "\n";
  for (const auto& d : diagnostics) text << "diagnostic: " << d << "\n";
  report.text = text.str();
  report.exit_code = rep ? exit_code::kOk : exit_code::kInconclusive;
  return report;
}

std::vector<std::pair<GroupSpec, GroundTruth>> default_corpus(std::uint64_t seed) {
  std::vector<std::pair<GroupSpec, GroundTruth>> out;
  std::uint64_t k = 0;
  auto add = [&](const GroupSpec& g, std::int64_t a, std::vector<int> alphas, std::vector<Garnish> garnish = {}) {
    out.push_back({g, GroundTruth{a, std::move(alphas), std::move(garnish), seed * 1000 + k++}});
  };
  for (int p : {2, 3}) {
    for (int r : {1, 2}) {
      const GroupSpec g = GroupSpec::abelian(p, r);
      add(g, 0, {});
      add(g, 0, {1});
      add(g, 0, {1, 3});
      add(g, 0, {2, 2});
      add(g, 1, {2});
      add(g, 2, {});
      if (r == 2) {
        add(g, 0, {2}, {Garnish{0}});
        add(g, 1, {1}, {Garnish{1}});
      }
    }
  }
  const GroupSpec meta = GroupSpec::metacyclic(3);
  add(meta, 0, {1, 2});
  add(meta, 1, {1});
  add(meta, 0, {1}, {Garnish{1}});
  return out;
}

Report run_synth(const JobConfig& config) {
  config.validate();
  if (config.out.empty()) throw InvalidInput("synth needs --out DIR");
  const fs::path dir(config.out);
  fs::create_directories(dir);

  Report report;
  report.json["command"] = "synth";
  report.json["config"] = config.to_json();
  Json files = Json::array();
  std::ostringstream text;
  text << "iwmu synth\n" << config_text(config);
  std::size_t index = 0;
  for (const auto& [group, gt] : default_corpus(config.seed)) {
    const RingBase ring = config.ring ? *config.ring : RingBase{group.p, 1, 1};
    if (ring.p != group.p) continue;
    std::ostringstream name;
    name << std::setw(4) << std::setfill('0') << index++ << "_" << (group.is_abelian() ? "abelian" : "metacyclic")
         << "_p" << group.p << "_r" << group.r << ".json";
    const SynthModule sm = make_module(gt, group, ring);
    write_file(dir / name.str(), write_corpus_entry(sm, gt));
    files.push_back({{"file", name.str()}, {"group", group_json(group)}, {"ground_truth", truth_json(gt)}});
    text << name.str() << "\n";
  }
  report.json["files"] = std::move(files);
  report.text = text.str();
  return report;
}

Report run_selftest(const JobConfig& config) {
  config.validate();
  struct Item {
    std::string name;
    CorpusEntry entry;
  };
  std::vector<Item> corpus;
  std::vector<std::string> warnings;
  if (!config.inputs.empty()) {
    std::vector<fs::path> paths;
    for (const auto& e : fs::directory_iterator(config.inputs[0])) {
      if (e.path().extension() == ".json") paths.push_back(e.path());
    }
    std::sort(paths.begin(), paths.end());
    for (const auto& path : paths) {
      try {
        corpus.push_back({path.filename().string(), parse_corpus_entry(read_file(path))});
      } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
      }
    }
  } else {
    std::size_t index = 0;
    for (const auto& [group, gt] : default_corpus(config.seed)) {
      const SynthModule sm = make_module(gt, group);
      corpus.push_back({"default/" + std::to_string(index++), CorpusEntry{sm.presentation, gt, sm.log}});
    }
  }
  if (config.inject_corruption) {
    const GroundTruth gt{0, {1, 2}, {}, config.seed};
    const GroupSpec group = GroupSpec::abelian(3, 1);
    const SynthModule sm = make_module(gt, group, {3, 1, 1}, {6, 1, true});
    corpus.push_back({"injected-corruption", CorpusEntry{sm.presentation, gt, sm.log}});
  }
  std::size_t with_truth = 0;
  for (const auto& item : corpus) with_truth += item.entry.truth.has_value();
  if (with_truth == 0) warnings.push_back("empty corpus: no modules with ground truth, corpus checks pass vacuously");

  struct Tally {
    std::size_t passed = 0;
    std::size_t total = 0;
  };
  Tally round_trip, soundness, oracle;
  std::vector<std::string> failures;
  for (const auto& item : corpus) {
    if (!item.entry.truth) continue;
    const Presentation& p = item.entry.presentation;
    const GroundTruth& gt = *item.entry.truth;
    const auto levels = levels_for(config, p.group);

    ++soundness.total;
    const auto reference = level_orders(block_presentation(gt, p.group, p.ring), config.n_max, levels);
    const auto actual = level_orders(p, config.n_max, levels);
    bool same = reference.size() == actual.size();
    for (std::size_t k = 0; same && k < actual.size(); ++k) same = reference[k].orders == actual[k].orders;
    if (same) {
      ++soundness.passed;
    } else {
      failures.push_back(item.name + ": obfuscation soundness (level orders differ from the block form)");
    }

    ++round_trip.total;
    try {
      if (recover_elementary(mu_profile(p, config.n_max, levels)) == expected_rep(gt)) {
        ++round_trip.passed;
      } else {
        failures.push_back(item.name + ": round trip (recovered representation differs)");
      }
    } catch (const Error& e) {
      failures.push_back(item.name + ": round trip (" + e.what() + ")");
    }
  }

  std::mt19937_64 rng(config.seed);
  for (int k = 0; k < 50; ++k) {
    const OracleCase c = run_oracle_case(rng);
    ++oracle.total;
    if (c.brute_force == c.normal_form) {
      ++oracle.passed;
    } else {
      failures.push_back("oracle case " + std::to_string(k) + ": enumeration " + std::to_string(c.brute_force) +
                         " vs normal form " + std::to_string(c.normal_form));
    }
  }

  Report report;
  report.json["command"] = "selftest";
  report.json["config"] = config.to_json();
  report.json["corpus_size"] = corpus.size();
  Json props;
  std::ostringstream text;
  text << "iwmu selftest\n" << config_text(config);
  for (const auto& [name, t] : {std::pair<const char*, Tally>{"round_trip", round_trip},
                                {"obfuscation_soundness", soundness},
                                {"oracle_agreement", oracle}}) {
    props[name] = {{"passed", t.passed}, {"total", t.total}};
    text << name << ": " << t.passed << "/" << t.total << "\n";
  }
  report.json["properties"] = std::move(props);
  report.json["failures"] = failures;
  report.json["warnings"] = warnings;
  report.json["passed"] = failures.empty();
  for (const auto& f : failures) text << "FAIL " << f << "\n";
  for (const auto& w : warnings) text << "warning: " << w << "\n";
  text << (failures.empty() ? "selftest passed\n" : "selftest failed\n");
  report.text = text.str();
  report.exit_code = failures.empty() ? exit_code::kOk : exit_code::kError;
  return report;
}

}  // namespace iwmu

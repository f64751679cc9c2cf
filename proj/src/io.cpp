#include "iwmu/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "iwmu/errors.hpp"

namespace iwmu {

namespace {

// nlohmann reports the 1-based index of the offending byte.
std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
  const std::size_t at = std::min(byte > 0 ? byte - 1 : 0, text.size());
  int line = 1, column = 1;
  for (std::size_t k = 0; k < at; ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    std::string what = e.what();
    // drop nlohmann's "[json.exception.parse_error.101] parse error at line x, column y: " prefix
    if (auto pos = what.find(": "); pos != std::string::npos && what.rfind("[json.exception", 0) == 0) {
      what = what.substr(pos + 2);
    }
    throw ParseError(what, line, column);
  }
}

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw ParseError("at " + (path.empty() ? std::string("/") : path) + ": " + what);
}

const Json& member(const Json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path, std::string("missing key \"") + key + "\"");
  return *it;
}

std::int64_t as_int(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) schema_error(path, "expected an integer");
  return v.get<std::int64_t>();
}

Integer as_integer(const Json& v, const std::string& path) {
  if (v.is_number_integer()) return Integer(v.get<std::int64_t>());
  if (!v.is_string()) schema_error(path, "expected a decimal string or integer");
  const auto& s = v.get_ref<const std::string&>();
  const std::size_t digits_from = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (s.size() == digits_from ||
      !std::all_of(s.begin() + static_cast<std::ptrdiff_t>(digits_from), s.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    schema_error(path, "\"" + s + "\" is not a decimal integer");
  }
  return Integer(s);
}

const Json& as_array(const Json& v, const std::string& path) {
  if (!v.is_array()) schema_error(path, "expected an array");
  return v;
}

Presentation presentation_from_json(const Json& doc) {
  const Json& ring_j = member(doc, "", "ring");
  RingBase ring{static_cast<int>(as_int(member(ring_j, "/ring", "p"), "/ring/p")),
                static_cast<int>(as_int(member(ring_j, "/ring", "e"), "/ring/e")),
                static_cast<int>(as_int(member(ring_j, "/ring", "f"), "/ring/f"))};

  const Json& group_j = member(doc, "", "group");
  const Json& kind_j = member(group_j, "/group", "kind");
  if (!kind_j.is_string()) schema_error("/group/kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();
  GroupSpec group;
  if (kind == "abelian") {
    group = GroupSpec::abelian(ring.p, static_cast<int>(as_int(member(group_j, "/group", "r"), "/group/r")));
  } else if (kind == "metacyclic") {
    group = GroupSpec::metacyclic(ring.p);
    if (group_j.contains("r") && as_int(group_j["r"], "/group/r") != 2) {
      schema_error("/group/r", "the metacyclic group has dimension 2");
    }
  } else {
    schema_error("/group/kind", "unknown group kind \"" + kind + "\" (abelian, metacyclic)");
  }

  const auto gens = as_int(member(doc, "", "gens"), "/gens");
  const auto rels = as_int(member(doc, "", "rels"), "/rels");
  if (gens < 0 || rels < 0) schema_error("", "gens and rels must be >= 0");
  const Json& rows = as_array(member(doc, "", "matrix"), "/matrix");
  if (static_cast<std::int64_t>(rows.size()) != rels) {
    schema_error("/matrix", "has " + std::to_string(rows.size()) + " rows, rels = " + std::to_string(rels));
  }

  Presentation out{group, ring, PolyMatrix(rels, gens), std::nullopt};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string row_path = "/matrix/" + std::to_string(i);
    const Json& row = as_array(rows[i], row_path);
    if (static_cast<std::int64_t>(row.size()) != gens) {
      schema_error(row_path, "has " + std::to_string(row.size()) + " entries, gens = " + std::to_string(gens));
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      const std::string entry_path = row_path + "/" + std::to_string(j);
      std::vector<Term> terms;
      const Json& entry = as_array(row[j], entry_path);
      for (std::size_t t = 0; t < entry.size(); ++t) {
        const std::string term_path = entry_path + "/" + std::to_string(t);
        Term term;
        const Json& c = as_array(member(entry[t], term_path, "c"), term_path + "/c");
        for (std::size_t k = 0; k < c.size(); ++k) {
          term.coeff.push_back(as_integer(c[k], term_path + "/c/" + std::to_string(k)));
        }
        const Json& e = as_array(member(entry[t], term_path, "e"), term_path + "/e");
        for (std::size_t k = 0; k < e.size(); ++k) {
          term.exponents.push_back(as_int(e[k], term_path + "/e/" + std::to_string(k)));
        }
        terms.push_back(std::move(term));
      }
      try {
        out.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = GroupRingPoly(std::move(terms));
      } catch (const InvalidInput& err) {
        schema_error(entry_path, err.what());
      }
    }
  }
  if (doc.contains("pi_exponent") && !doc["pi_exponent"].is_null()) {
    out.pi_exponent = static_cast<int>(as_int(doc["pi_exponent"], "/pi_exponent"));
  }
  try {
    group.validate();
    out.validate();
  } catch (const InvalidInput& err) {
    throw ParseError(std::string("invalid module: ") + err.what());
  }
  return out;
}

Json term_json(const Term& t) {
  Json c = Json::array();
  for (const Integer& x : t.coeff) c.push_back(x.str());
  Json out;
  out["c"] = std::move(c);
  out["e"] = t.exponents;
  return out;
}

}  // namespace

Json module_to_json(const Presentation& p) {
  Json doc;
  doc["ring"] = {{"p", p.ring.p}, {"e", p.ring.e}, {"f", p.ring.f}};
  doc["group"] = {{"kind", p.group.is_abelian() ? "abelian" : "metacyclic"}, {"r", p.group.r}};
  doc["gens"] = p.gens();
  doc["rels"] = p.rels();
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < p.rels(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < p.gens(); ++j) {
      Json entry = Json::array();
      for (const Term& t : p.matrix(i, j).terms()) entry.push_back(term_json(t));
      row.push_back(std::move(entry));
    }
    rows.push_back(std::move(row));
  }
  doc["matrix"] = std::move(rows);
  if (p.pi_exponent) doc["pi_exponent"] = *p.pi_exponent;
  return doc;
}

Presentation parse_module(std::string_view text) { return presentation_from_json(parse_json(text)); }

std::string write_module(const Presentation& p) { return module_to_json(p).dump(1) + "\n"; }

CorpusEntry parse_corpus_entry(std::string_view text) {
  const Json doc = parse_json(text);
  CorpusEntry out{presentation_from_json(doc), std::nullopt, {}};
  if (doc.contains("ground_truth")) {
    const Json& g = doc["ground_truth"];
    GroundTruth gt;
    gt.free_rank = as_int(member(g, "/ground_truth", "free_rank"), "/ground_truth/free_rank");
    for (const Json& a : as_array(member(g, "/ground_truth", "alphas"), "/ground_truth/alphas")) {
      gt.alphas.push_back(static_cast<int>(as_int(a, "/ground_truth/alphas")));
    }
    for (const Json& k : as_array(member(g, "/ground_truth", "garnish"), "/ground_truth/garnish")) {
      gt.garnish.push_back(Garnish{static_cast<int>(as_int(k, "/ground_truth/garnish"))});
    }
    const Json& seed = member(g, "/ground_truth", "seed");
    if (!seed.is_number_unsigned()) schema_error("/ground_truth/seed", "expected an unsigned integer");
    gt.seed = seed.get<std::uint64_t>();
    out.truth = std::move(gt);
  }
  if (doc.contains("log")) {
    for (const Json& line : as_array(doc["log"], "/log")) out.log.push_back(line.get<std::string>());
  }
  return out;
}

std::string write_corpus_entry(const SynthModule& module, const GroundTruth& truth) {
  Json doc = module_to_json(module.presentation);
  Json garnish = Json::array();
  for (const Garnish& g : truth.garnish) garnish.push_back(g.generator);
  doc["ground_truth"] = {{"free_rank", truth.free_rank},
                         {"alphas", truth.alphas},
                         {"garnish", std::move(garnish)},
                         {"seed", truth.seed}};
  doc["log"] = module.log;
  return doc.dump(1) + "\n";
}

TowerSeries parse_tower_csv(std::string_view text, std::string label) {
  TowerSeries out;
  out.label = std::move(label);
  std::optional<int> p, r;
  bool header = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::string meta = line.substr(first + 1);
      std::replace(meta.begin(), meta.end(), ',', ' ');
      std::istringstream fields(meta);
      std::string kv;
      while (fields >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = kv.substr(0, eq);
        try {
          if (key == "p") p = std::stoi(kv.substr(eq + 1));
          if (key == "r") r = std::stoi(kv.substr(eq + 1));
        } catch (const std::exception&) {
          throw ParseError("bad metadata value \"" + kv + "\"", line_no, static_cast<int>(first) + 1);
        }
      }
      continue;
    }
    std::string compact;
    for (char c : line) {
      if (c != ' ' && c != '\t') compact.push_back(c);
    }
    if (!header) {
      if (compact != "n,m,ord") throw ParseError("expected header n,m,ord", line_no, 1);
      header = true;
      continue;
    }
    std::int64_t v[3];
    std::size_t pos = 0;
    for (int k = 0; k < 3; ++k) {
      const std::size_t end = k < 2 ? compact.find(',', pos) : compact.size();
      if (end == std::string::npos) throw ParseError("expected three fields", line_no, 1);
      const std::string field = compact.substr(pos, end - pos);
      std::size_t used = 0;
      try {
        v[k] = std::stoll(field, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (field.empty() || used != field.size()) {
        throw ParseError("\"" + field + "\" is not an integer", line_no, static_cast<int>(pos) + 1);
      }
      pos = end + 1;
    }
    if (!out.data.emplace(std::make_pair(static_cast<int>(v[0]), static_cast<int>(v[1])), v[2]).second) {
      throw ParseError("duplicate (n, m) row", line_no, 1);
    }
  }
  if (!header) throw ParseError("missing header n,m,ord");
  if (!p || !r) throw ParseError("missing \"# p=..,r=..\" metadata line");
  out.p = *p;
  out.r = *r;
  return out;
}

TowerSeries parse_tower_json(std::string_view text, std::string label) {
  const Json doc = parse_json(text);
  TowerSeries out;
  out.label = std::move(label);
  out.p = static_cast<int>(as_int(member(doc, "", "p"), "/p"));
  out.r = static_cast<int>(as_int(member(doc, "", "r"), "/r"));
  const Json& rows = as_array(member(doc, "", "rows"), "/rows");
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::string path = "/rows/" + std::to_string(k);
    const auto n = as_int(member(rows[k], path, "n"), path + "/n");
    const auto m = as_int(member(rows[k], path, "m"), path + "/m");
    const auto ord = as_int(member(rows[k], path, "ord"), path + "/ord");
    if (!out.data.emplace(std::make_pair(static_cast<int>(n), static_cast<int>(m)), ord).second) {
      schema_error(path, "duplicate (n, m) row");
    }
  }
  return out;
}

std::string write_tower_csv(const TowerSeries& series) {
  std::ostringstream os;
  os << "# p=" << series.p << ",r=" << series.r << "\n";
  os << "n,m,ord\n";
  for (const auto& [key, ord] : series.data) os << key.first << ',' << key.second << ',' << ord << "\n";
  return os.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << contents;
}

bool is_tower_file(const std::filesystem::path& path) {
  if (path.extension() == ".csv") return true;
  if (path.extension() != ".json") return false;
  try {
    const Json doc = Json::parse(read_file(path));
    return doc.is_object() && doc.contains("rows") && !doc.contains("matrix");
  } catch (const Json::exception&) {
    return false;
  }
}

Presentation read_module(const std::filesystem::path& path) {
  try {
    return parse_module(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

TowerSeries read_tower(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    if (path.extension() == ".csv") return parse_tower_csv(text, path.filename().string());
    return parse_tower_json(text, path.filename().string());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace iwmu

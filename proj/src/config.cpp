#include "nagumo/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace nagumo {

namespace {

std::string trim(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r");
  if (from == std::string::npos) return "";
  const auto to = s.find_last_not_of(" \t\r");
  return s.substr(from, to - from + 1);
}

struct KeyTable {
  std::map<std::string, std::string> values;
  std::map<std::string, int> lines;

  const std::string& required(const std::string& key) const {
    const auto it = values.find(key);
    if (it == values.end()) throw ConfigError("config-error: missing key '" + key + "'");
    return it->second;
  }

  std::string optional(const std::string& key, const std::string& fallback) const {
    const auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
  }
};

double parse_double(const KeyTable& t, const std::string& key) {
  const std::string& v = t.required(key);
  std::size_t used = 0;
  double out;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ConfigError("config-error: line " + std::to_string(t.lines.at(key)) + ": cannot parse '" + key + "'");
  }
  if (used != v.size()) {
    throw ConfigError("config-error: line " + std::to_string(t.lines.at(key)) + ": cannot parse '" + key + "'");
  }
  return out;
}

long long parse_int(const KeyTable& t, const std::string& key) {
  const std::string& v = t.required(key);
  std::size_t used = 0;
  long long out;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    throw ConfigError("config-error: line " + std::to_string(t.lines.at(key)) + ": cannot parse '" + key + "'");
  }
  if (used != v.size()) {
    throw ConfigError("config-error: line " + std::to_string(t.lines.at(key)) + ": cannot parse '" + key + "'");
  }
  return out;
}

PDTerms parse_pd_terms(const KeyTable& t) {
  const std::string raw = trim(t.required("pd_terms"));
  std::vector<PDTerm> terms;
  if (raw.empty()) return PDTerms(terms);
  std::stringstream ss(raw);
  std::string piece;
  while (std::getline(ss, piece, ';')) {
    piece = trim(piece);
    if (piece.empty()) continue;
    const auto colon = piece.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("config-error: line " + std::to_string(t.lines.at("pd_terms")) +
                        ": pd_terms entries are 'coef:exponent'");
    }
    try {
      terms.push_back({std::stod(piece.substr(0, colon)), std::stod(piece.substr(colon + 1))});
    } catch (const std::exception&) {
      throw ConfigError("config-error: line " + std::to_string(t.lines.at("pd_terms")) + ": cannot parse pd_terms");
    }
  }
  try {
    return PDTerms(terms);
  } catch (const std::exception& e) {
    throw ConfigError("config-error: line " + std::to_string(t.lines.at("pd_terms")) + ": " + e.what());
  }
}

const char* const kKnownKeys[] = {"p",          "gamma",      "alpha",      "beta",
                                  "m",          "pd_terms",   "s",          "j_min",
                                  "j_max",      "dt",         "t_end",      "save_every",
                                  "tail_depth", "blowup_threshold",          "method",
                                  "initial",    "weight_r",   "out_dir",    "reaction",
                                  "png_scale",  "picard_tol", "max_picard_iters"};

}  // namespace

RunConfig parse_config(const std::string& text) {
  KeyTable table;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config-error: line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    bool known = false;
    for (const char* k : kKnownKeys) known = known || key == k;
    if (!known) throw ConfigError("config-error: line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    if (table.values.count(key)) {
      throw ConfigError("config-error: line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    table.values[key] = value;
    table.lines[key] = line_no;
  }

  RunConfig cfg{ModelParams{Prime(static_cast<long long>(parse_int(table, "p"))), 1.0, 0.2, 0.0, 3, PDTerms{}, 2.0, true},
                SolverConfig{},
                "",
                0,
                "",
                8};
  cfg.params.gamma = parse_double(table, "gamma");
  cfg.params.alpha = parse_double(table, "alpha");
  cfg.params.beta = parse_double(table, "beta");
  cfg.params.m = static_cast<int>(parse_int(table, "m"));
  cfg.params.pd = parse_pd_terms(table);
  cfg.params.s = parse_double(table, "s");
  const std::string reaction = table.optional("reaction", "on");
  if (reaction != "on" && reaction != "off") {
    throw ConfigError("config-error: line " + std::to_string(table.lines.at("reaction")) + ": reaction must be on|off");
  }
  cfg.params.reaction_enabled = reaction == "on";
  try {
    cfg.params.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config-error: ") + e.what());
  }

  cfg.solver.j_min = static_cast<int>(parse_int(table, "j_min"));
  cfg.solver.j_max = static_cast<int>(parse_int(table, "j_max"));
  if (cfg.solver.j_min > cfg.solver.j_max) throw ConfigError("config-error: j_min must be <= j_max");
  cfg.solver.dt = parse_double(table, "dt");
  if (cfg.solver.dt <= 0.0) throw ConfigError("config-error: dt must be > 0");
  cfg.solver.t_end = parse_double(table, "t_end");
  if (cfg.solver.t_end < 0.0) throw ConfigError("config-error: t_end must be >= 0");
  cfg.solver.save_every = static_cast<int>(parse_int(table, "save_every"));
  if (cfg.solver.save_every < 1) throw ConfigError("config-error: save_every must be >= 1");
  cfg.solver.tail.tail_depth = static_cast<int>(parse_int(table, "tail_depth"));
  if (cfg.solver.tail.tail_depth < 1) throw ConfigError("config-error: tail_depth must be >= 1");
  cfg.solver.blowup_threshold = parse_double(table, "blowup_threshold");
  if (cfg.solver.blowup_threshold <= 0.0) throw ConfigError("config-error: blowup_threshold must be > 0");
  try {
    cfg.solver.method = method_from_string(table.required("method"));
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config-error: ") + e.what());
  }
  if (table.values.count("picard_tol")) cfg.solver.picard_tol = parse_double(table, "picard_tol");
  if (table.values.count("max_picard_iters")) {
    cfg.solver.max_picard_iters = static_cast<int>(parse_int(table, "max_picard_iters"));
  }

  cfg.initial = table.required("initial");
  cfg.weight_r = static_cast<int>(parse_int(table, "weight_r"));
  if (cfg.weight_r > 0) throw ConfigError("config-error: weight_r must be <= 0");
  cfg.out_dir = table.required("out_dir");
  if (table.values.count("png_scale")) {
    cfg.png_scale = static_cast<int>(parse_int(table, "png_scale"));
    if (cfg.png_scale < 1) throw ConfigError("config-error: png_scale must be >= 1");
  }
  cfg.build_initial();  // validates the descriptor and the window
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config-error: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

RadialField RunConfig::build_initial() const {
  std::stringstream ss(initial);
  std::string kind;
  std::getline(ss, kind, ':');
  if (kind == "gauss") {
    std::string amp_s, div_s;
    if (!std::getline(ss, amp_s, ':') || !std::getline(ss, div_s, ':')) {
      throw ConfigError("config-error: initial gauss takes 'gauss:A:B'");
    }
    double amp, div;
    try {
      amp = std::stod(amp_s);
      div = std::stod(div_s);
    } catch (const std::exception&) {
      throw ConfigError("config-error: cannot parse initial '" + initial + "'");
    }
    if (div <= 0.0) throw ConfigError("config-error: initial gauss divisor must be > 0");
    const double p = params.p.as_double();
    return RadialField::from_profile(params.p, solver.j_min, solver.j_max, [&](int j) {
      return amp * std::exp(-std::pow(p, std::abs(j)) / div);
    });
  }
  if (kind == "ball") {
    std::string k_s;
    if (!std::getline(ss, k_s, ':')) throw ConfigError("config-error: initial ball takes 'ball:k'");
    int k;
    try {
      k = std::stoi(k_s);
    } catch (const std::exception&) {
      throw ConfigError("config-error: cannot parse initial '" + initial + "'");
    }
    if (k < solver.j_min || k > solver.j_max) throw ConfigError("config-error: ball indicator outside the window");
    return RadialField::from_profile(params.p, solver.j_min, solver.j_max, [&](int j) { return j <= k ? 1.0 : 0.0; });
  }
  throw ConfigError("config-error: unknown initial '" + initial + "'");
}

std::string RunConfig::to_text() const {
  std::ostringstream out;
  out.precision(17);
  out << "p = " << params.p.value() << "\n";
  out << "gamma = " << params.gamma << "\n";
  out << "alpha = " << params.alpha << "\n";
  out << "beta = " << params.beta << "\n";
  out << "m = " << params.m << "\n";
  out << "pd_terms =";
  for (std::size_t i = 0; i < params.pd.terms().size(); ++i) {
    out << (i == 0 ? " " : "; ") << params.pd.terms()[i].coef << ":" << params.pd.terms()[i].exponent;
  }
  out << "\n";
  out << "s = " << params.s << "\n";
  out << "reaction = " << (params.reaction_enabled ? "on" : "off") << "\n";
  out << "j_min = " << solver.j_min << "\n";
  out << "j_max = " << solver.j_max << "\n";
  out << "dt = " << solver.dt << "\n";
  out << "t_end = " << solver.t_end << "\n";
  out << "save_every = " << solver.save_every << "\n";
  out << "tail_depth = " << solver.tail.tail_depth << "\n";
  out << "blowup_threshold = " << solver.blowup_threshold << "\n";
  out << "method = " << method_to_string(solver.method) << "\n";
  out << "picard_tol = " << solver.picard_tol << "\n";
  out << "max_picard_iters = " << solver.max_picard_iters << "\n";
  out << "initial = " << initial << "\n";
  out << "weight_r = " << weight_r << "\n";
  out << "out_dir = " << out_dir << "\n";
  out << "png_scale = " << png_scale << "\n";
  return out.str();
}

std::string RunConfig::echo_json() const {
  nlohmann::json j;
  j["p"] = params.p.value();
  j["gamma"] = params.gamma;
  j["alpha"] = params.alpha;
  j["beta"] = params.beta;
  j["m"] = params.m;
  nlohmann::json pd = nlohmann::json::array();
  for (const PDTerm& t : params.pd.terms()) pd.push_back({{"coef", t.coef}, {"exponent", t.exponent}});
  j["pd_terms"] = pd;
  j["s"] = params.s;
  j["reaction"] = params.reaction_enabled ? "on" : "off";
  j["j_min"] = solver.j_min;
  j["j_max"] = solver.j_max;
  j["dt"] = solver.dt;
  j["t_end"] = solver.t_end;
  j["save_every"] = solver.save_every;
  j["tail_depth"] = solver.tail.tail_depth;
  j["blowup_threshold"] = solver.blowup_threshold;
  j["method"] = method_to_string(solver.method);
  j["initial"] = initial;
  j["weight_r"] = weight_r;
  j["out_dir"] = out_dir;
  j["png_scale"] = png_scale;
  return j.dump();
}

}  // namespace nagumo

#include "fairscope/config.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "fairscope/classification.hpp"
#include "fairscope/error.hpp"

namespace fairscope {

namespace {

std::string_view trim(std::string_view s) {
  const auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && blank(s.back())) s.remove_suffix(1);
  return s;
}

std::string json_scalar(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) return format_real(v.get<double>());
  throw Error(ErrorKind::InvalidConfig, "key '" + key + "' has an unsupported JSON value");
}

KeyValueList parse_json_config(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("invalid JSON config: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::InvalidConfig, "JSON config must be an object");
  KeyValueList out;
  for (const auto& [key, value] : doc.items()) {
    if (value.is_array()) {
      std::string joined;
      for (const auto& item : value) {
        if (!joined.empty()) joined += ',';
        joined += json_scalar(item, key);
      }
      out.emplace_back(key, joined);
    } else {
      out.emplace_back(key, json_scalar(value, key));
    }
  }
  return out;
}

}  // namespace

KeyValueList parse_key_values(std::string_view text) {
  if (!trim(text).empty() && trim(text).front() == '{') return parse_json_config(text);
  KeyValueList out;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::InvalidConfig, "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw Error(ErrorKind::InvalidConfig, "line " + std::to_string(line_no) + ": empty key");
    if (!seen.insert(key).second) {
      throw Error(ErrorKind::InvalidConfig, "line " + std::to_string(line_no) + ": key '" + key + "' repeated");
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  while (true) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

namespace {

constexpr std::string_view kEpsilonPrefix = "epsilon_";

double to_real(const std::string& key, const std::string& value) {
  auto v = parse_real(value);
  if (!v) throw Error(ErrorKind::InvalidConfig, "key '" + key + "' expects a number, got '" + value + "'");
  return *v;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw Error(ErrorKind::InvalidConfig, "key '" + key + "' expects true or false, got '" + value + "'");
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

const std::vector<std::string>& epsilon_metrics() {
  static const std::vector<std::string> names = [] {
    auto v = fairness_family_metrics();
    v.push_back("auc_parity");
    v.push_back("conditional_demographic_parity");
    return v;
  }();
  return names;
}

}  // namespace

const std::vector<std::string>& AuditConfig::known_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k = {
        "input",           "construct",      "subject_col",        "group_col",         "truth_col",
        "pred_col",        "rater_prefix",   "feature_prefix",     "feature_columns",   "scale_min",
        "scale_max",       "higher_is_better", "groups",           "decision",          "select_rate",
        "threshold",       "rates",          "rho_diff_threshold", "d_threshold",       "ai_threshold",
        "rate_gap_epsilon", "icc_gate",      "icc_reference",      "leakage_threshold", "sd_ratio_threshold",
        "dif_threshold",   "strata_col",     "forbidden_columns",  "group_overrides",   "format",
        "gate",
    };
    for (const auto& m : epsilon_metrics()) k.push_back(std::string(kEpsilonPrefix) + m);
    return k;
  }();
  return keys;
}

void AuditConfig::set(const std::string& key, const std::string& value) {
  if (key == "input") input = value;
  else if (key == "construct") construct = value;
  else if (key == "subject_col") columns.subject_column = value;
  else if (key == "group_col") columns.group_column = value;
  else if (key == "truth_col") columns.truth_column = value;
  else if (key == "pred_col") columns.pred_column = value;
  else if (key == "rater_prefix") columns.rater_prefix = value;
  else if (key == "feature_prefix") columns.feature_prefix = value;
  else if (key == "feature_columns") columns.extra_feature_columns = split_list(value);
  else if (key == "scale_min") scale.min = to_real(key, value);
  else if (key == "scale_max") scale.max = to_real(key, value);
  else if (key == "higher_is_better") scale.higher_is_better = to_bool(key, value);
  else if (key == "groups") {
    if (trim(value).empty()) {
      groups.reset();
      return;
    }
    const auto g = split_list(value);
    if (g.size() != 2) throw Error(ErrorKind::InvalidConfig, "groups expects 'A,B', got '" + value + "'");
    groups = std::make_pair(g[0], g[1]);
  } else if (key == "decision") {
    try {
      decision = DecisionSpec::parse(value);
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidConfig, e.what());
    }
  } else if (key == "select_rate" || key == "threshold") {
    try {
      const double v = to_real(key, value);
      decision = key == "select_rate" ? DecisionSpec::top_k_rate(v) : DecisionSpec::threshold(v);
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidConfig, e.what());
    }
  } else if (key == "rates") {
    sweep_rates.clear();
    for (const auto& item : split_list(value)) sweep_rates.push_back(to_real(key, item));
  } else if (key == "rho_diff_threshold") thresholds.rho_diff = to_real(key, value);
  else if (key == "d_threshold") thresholds.effect_size = to_real(key, value);
  else if (key == "ai_threshold") thresholds.adverse_impact = to_real(key, value);
  else if (key == "rate_gap_epsilon") thresholds.rate_gap = to_real(key, value);
  else if (key == "icc_gate") thresholds.icc_gate = to_real(key, value);
  else if (key == "icc_reference") thresholds.icc_reference = to_real(key, value);
  else if (key == "leakage_threshold") thresholds.leakage = to_real(key, value);
  else if (key == "sd_ratio_threshold") thresholds.sd_ratio = to_real(key, value);
  else if (key == "dif_threshold") thresholds.dif = to_real(key, value);
  else if (key == "strata_col") strata_column = value;
  else if (key == "forbidden_columns") forbidden_columns = split_list(value);
  else if (key == "group_overrides") {
    group_overrides.clear();
    for (const auto& item : split_list(value)) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw Error(ErrorKind::InvalidConfig, "group_overrides item '" + item + "' must be label=rule");
      }
      try {
        group_overrides.insert_or_assign(std::string(trim(item.substr(0, eq))),
                                         DecisionSpec::parse(std::string(trim(item.substr(eq + 1)))));
      } catch (const Error& e) {
        throw Error(ErrorKind::InvalidConfig, e.what());
      }
    }
  } else if (key == "format") {
    if (value == "json") format = OutputFormat::Json;
    else if (value == "markdown" || value == "md") format = OutputFormat::Markdown;
    else throw Error(ErrorKind::InvalidConfig, "format must be json or markdown, got '" + value + "'");
  } else if (key == "gate") gate = to_bool(key, value);
  else if (key.rfind(kEpsilonPrefix, 0) == 0) {
    const std::string metric = key.substr(kEpsilonPrefix.size());
    const auto& known = epsilon_metrics();
    if (std::find(known.begin(), known.end(), metric) == known.end()) {
      throw Error(ErrorKind::InvalidConfig, "unknown configuration key '" + key + "'");
    }
    epsilon_by_metric[metric] = to_real(key, value);
  } else {
    throw Error(ErrorKind::InvalidConfig, "unknown configuration key '" + key + "'");
  }
}

void AuditConfig::apply(const KeyValueList& kv) {
  bool has_rate = false;
  bool has_threshold = false;
  for (const auto& [k, v] : kv) {
    has_rate = has_rate || k == "select_rate";
    has_threshold = has_threshold || k == "threshold";
  }
  if (has_rate && has_threshold) {
    throw Error(ErrorKind::InvalidConfig, "select_rate and threshold are mutually exclusive");
  }
  for (const auto& [k, v] : kv) set(k, v);
}

void AuditConfig::validate() const {
  scale.validate();
  thresholds.validate();
  for (const auto& [m, eps] : epsilon_by_metric) {
    if (!(eps > 0.0)) throw Error(ErrorKind::InvalidConfig, "epsilon_" + m + " must be positive");
  }
  if (groups && groups->first == groups->second) {
    throw Error(ErrorKind::InvalidConfig, "groups must name two different labels");
  }
  for (double r : sweep_rates) {
    if (!(r > 0.0 && r <= 1.0)) throw Error(ErrorKind::InvalidConfig, "sweep rate " + format_real(r) + " not in (0, 1]");
  }
  if (sweep_rates.empty()) throw Error(ErrorKind::InvalidConfig, "rates must list at least one rate");
  const std::string* required[] = {&columns.subject_column, &columns.group_column, &columns.truth_column,
                                   &columns.pred_column};
  for (const auto* c : required) {
    if (c->empty()) throw Error(ErrorKind::InvalidConfig, "column names must not be empty");
  }
}

std::vector<std::string> AuditConfig::effective_forbidden_columns() const {
  return forbidden_columns ? *forbidden_columns : std::vector<std::string>{columns.group_column};
}

KeyValueList AuditConfig::echo() const {
  KeyValueList kv = {
      {"input", input},
      {"construct", construct},
      {"subject_col", columns.subject_column},
      {"group_col", columns.group_column},
      {"truth_col", columns.truth_column},
      {"pred_col", columns.pred_column},
      {"rater_prefix", columns.rater_prefix},
      {"feature_prefix", columns.feature_prefix},
      {"feature_columns", join(columns.extra_feature_columns)},
      {"scale_min", format_real(scale.min)},
      {"scale_max", format_real(scale.max)},
      {"higher_is_better", scale.higher_is_better ? "true" : "false"},
      {"groups", groups ? groups->first + "," + groups->second : std::string()},
      {"decision", decision.to_string()},
      {"rates", [&] {
         std::string s;
         for (double r : sweep_rates) s += (s.empty() ? "" : ",") + format_real(r);
         return s;
       }()},
      {"rho_diff_threshold", format_real(thresholds.rho_diff)},
      {"d_threshold", format_real(thresholds.effect_size)},
      {"ai_threshold", format_real(thresholds.adverse_impact)},
      {"rate_gap_epsilon", format_real(thresholds.rate_gap)},
      {"icc_gate", format_real(thresholds.icc_gate)},
      {"icc_reference", format_real(thresholds.icc_reference)},
      {"leakage_threshold", format_real(thresholds.leakage)},
      {"sd_ratio_threshold", format_real(thresholds.sd_ratio)},
      {"dif_threshold", format_real(thresholds.dif)},
      {"strata_col", strata_column},
      {"forbidden_columns", join(effective_forbidden_columns())},
      {"group_overrides", [&] {
         std::string s;
         for (const auto& [g, rule] : group_overrides) s += (s.empty() ? "" : ",") + g + "=" + rule.to_string();
         return s;
       }()},
      {"format", format == OutputFormat::Json ? "json" : "markdown"},
      {"gate", gate ? "true" : "false"},
  };
  for (const auto& m : epsilon_metrics()) {
    auto it = epsilon_by_metric.find(m);
    kv.emplace_back(std::string(kEpsilonPrefix) + m, format_real(it == epsilon_by_metric.end() ? thresholds.rate_gap
                                                                                               : it->second));
  }
  std::sort(kv.begin(), kv.end());
  return kv;
}

AuditConfig load_audit_config(std::string_view text) {
  AuditConfig cfg;
  cfg.apply(parse_key_values(text));
  cfg.validate();
  return cfg;
}

}  // namespace fairscope

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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "taur/cli.h"

namespace taur::cli {
namespace {

struct KeySpec {
  const char* name;
  const char* fallback;
  bool sweepable;
};

// Schema order. This is also the column order of the sweep CSV.
constexpr KeySpec kKeys[] = {
    {"policy", "ts", true},
    {"users", "8", true},
    {"mean_snr_db", "10", true},
    {"user_snr_db", "", false},
    {"snr_gap_db", "8.2", true},
    {"concavity", "0.1", true},
    {"user_concavity", "", false},
    {"alpha", "0.01", true},
    {"gs_initial_rate", "0", true},
    {"delta", "1e-6", true},
    {"max_gs_iterations", "100", true},
    {"power_budget", "0", true},
    {"training_samples", "10000", true},
    {"downlink", "false", true},
    {"slots", "8", true},
    {"feedback_bits", "3", true},
    {"weights", "", false},
    {"frames", "10000", true},
    {"seed", "1", true},
    {"tolerance", "0.001", false},
    {"step", "0.5", false},
    {"max_iterations", "50", false},
};

// Accepted but not part of an experiment; a manifest carries these.
constexpr const char* kMetaKeys[] = {"command", "artifact_version", "csv"};

const KeySpec* FindSpec(std::string_view key) {
  for (const KeySpec& k : kKeys) {
    if (key == k.name) return &k;
  }
  return nullptr;
}

bool IsMeta(std::string_view key) {
  return std::find(std::begin(kMetaKeys), std::end(kMetaKeys), key) !=
         std::end(kMetaKeys);
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> Split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    const auto piece = Trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    parts.emplace_back(piece);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<std::string> Words(std::string_view s) {
  std::vector<std::string> words;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

[[noreturn]] void Fail(const ConfigValue& v, const std::string& key,
                       const std::string& what) {
  throw ConfigFileError(v.origin, v.line, key, what);
}

double ParseDouble(const ConfigValue& v, const std::string& key,
                   std::string_view token) {
  double x = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, x);
  if (ec != std::errc() || ptr != end || !std::isfinite(x)) {
    Fail(v, key, "expected a number, got '" + std::string(token) + "'");
  }
  return x;
}

std::int64_t ParseInt(const ConfigValue& v, const std::string& key,
                      std::string_view token) {
  std::int64_t x = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, x);
  if (ec != std::errc() || ptr != end) {
    Fail(v, key, "expected an integer, got '" + std::string(token) + "'");
  }
  return x;
}

bool ParseBool(const ConfigValue& v, const std::string& key,
               std::string_view token) {
  if (token == "true" || token == "1" || token == "yes") return true;
  if (token == "false" || token == "0" || token == "no") return false;
  Fail(v, key, "expected true or false, got '" + std::string(token) + "'");
}

// "a, b, c" or an inclusive "start:stop:step" range.
std::vector<std::string> ExpandList(const ConfigValue& v, const std::string& key) {
  if (Trim(v.text).empty()) Fail(v, key, "empty value");
  std::vector<std::string> out;
  for (const std::string& item : Split(v.text, ',')) {
    if (item.empty()) Fail(v, key, "empty list element");
    if (item.find(':') == std::string::npos) {
      out.push_back(item);
      continue;
    }
    const auto parts = Split(item, ':');
    if (parts.size() != 3) Fail(v, key, "range must be start:stop:step");
    const double start = ParseDouble(v, key, parts[0]);
    const double stop = ParseDouble(v, key, parts[1]);
    const double step = ParseDouble(v, key, parts[2]);
    if (step <= 0.0 || stop < start) {
      Fail(v, key, "range needs step > 0 and stop >= start");
    }
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 100000) Fail(v, key, "range has too many points");
    for (long k = 0; k < count; ++k) {
      out.push_back(FormatNumber(start + static_cast<double>(k) * step));
    }
  }
  return out;
}

std::vector<double> ParseVector(const ConfigValue& v, const std::string& key) {
  std::vector<double> out;
  for (const std::string& w : Words(v.text)) out.push_back(ParseDouble(v, key, w));
  return out;
}

int CheckedInt(const ConfigValue& v, const std::string& key, std::string_view token) {
  const std::int64_t x = ParseInt(v, key, token);
  if (x < -1000000000 || x > 1000000000) Fail(v, key, "integer out of range");
  return static_cast<int>(x);
}

void Assign(ExperimentConfig& c, const ConfigValue& v, const std::string& key,
            const std::string& token) {
  if (key == "policy") {
    try {
      c.policy = ParsePolicy(token);
    } catch (const ConfigError& e) {
      Fail(v, key, e.what());
    }
  } else if (key == "users") {
    c.users = CheckedInt(v, key, token);
  } else if (key == "mean_snr_db") {
    c.mean_snr_db = ParseDouble(v, key, token);
  } else if (key == "snr_gap_db") {
    c.snr_gap_db = ParseDouble(v, key, token);
  } else if (key == "concavity") {
    c.concavity = ParseDouble(v, key, token);
  } else if (key == "alpha") {
    c.alpha = ParseDouble(v, key, token);
  } else if (key == "gs_initial_rate") {
    c.gs_initial_rate = ParseDouble(v, key, token);
  } else if (key == "delta") {
    c.delta = ParseDouble(v, key, token);
  } else if (key == "max_gs_iterations") {
    c.max_gs_iterations = CheckedInt(v, key, token);
  } else if (key == "power_budget") {
    c.power_budget = ParseDouble(v, key, token);
  } else if (key == "training_samples") {
    c.training_samples = CheckedInt(v, key, token);
  } else if (key == "downlink") {
    c.downlink = ParseBool(v, key, token);
  } else if (key == "slots") {
    // Resolved after users, since it may refer to them.
  } else if (key == "feedback_bits") {
    c.feedback_bits = CheckedInt(v, key, token);
  } else if (key == "frames") {
    c.frames = ParseInt(v, key, token);
  } else if (key == "seed") {
    const std::int64_t s = ParseInt(v, key, token);
    if (s < 0) Fail(v, key, "seed must be nonnegative");
    c.seed = static_cast<std::uint64_t>(s);
  }
}

int ResolveSlots(const ConfigValue& v, const std::string& token, int users) {
  if (token == "users") return users;
  if (token == "users/2") return std::max(1, users / 2);
  return CheckedInt(v, "slots", token);
}

}  // namespace

ConfigFileError::ConfigFileError(const std::string& origin, int line,
                                 const std::string& key, const std::string& what)
    : ConfigError(origin + (line > 0 ? ":" + std::to_string(line) : std::string()) +
                  (key.empty() ? std::string() : ": " + key) + ": " + what),
      line_(line),
      key_(key) {}

const std::vector<std::string>& ConfigKeys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const KeySpec& spec : kKeys) k.emplace_back(spec.name);
    return k;
  }();
  return keys;
}

ConfigSource ConfigSource::Parse(std::string_view text, const std::string& origin) {
  ConfigSource source;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? end : end - start);
    ++line_no;
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;

    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigFileError(origin, line_no, "", "expected key = value");
    }
    const std::string key(Trim(line.substr(0, eq)));
    if (!FindSpec(key) && !IsMeta(key)) {
      throw ConfigFileError(origin, line_no, key, "unknown key");
    }
    if (source.values_.count(key)) {
      throw ConfigFileError(origin, line_no, key, "duplicate key");
    }
    source.values_[key] = {std::string(Trim(line.substr(eq + 1))), origin, line_no};
  }
  return source;
}

ConfigSource ConfigSource::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  return Parse(text.str(), path);
}

void ConfigSource::Override(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigFileError("--set", 0, std::string(assignment), "expected key=value");
  }
  const std::string key(Trim(assignment.substr(0, eq)));
  if (!FindSpec(key)) throw ConfigFileError("--set", 0, key, "unknown key");
  values_[key] = {std::string(Trim(assignment.substr(eq + 1))), "--set", 0};
}

void ConfigSource::Set(const std::string& key, const std::string& value) {
  values_[key] = {value, "default", 0};
}

std::string ConfigSource::Get(const std::string& key) const {
  if (const ConfigValue* v = Find(key)) return v->text;
  const KeySpec* spec = FindSpec(key);
  return spec ? spec->fallback : "";
}

const ConfigValue* ConfigSource::Find(const std::string& key) const {
  const auto it = values_.find(key);
  return it == values_.end() ? nullptr : &it->second;
}

std::vector<std::pair<std::string, std::string>> ConfigSource::Resolved() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const KeySpec& spec : kKeys) out.emplace_back(spec.name, Get(spec.name));
  return out;
}

std::vector<ExperimentConfig> ExpandSweep(const ConfigSource& config) {
  auto value_of = [&](const std::string& key) {
    if (const ConfigValue* v = config.Find(key)) return *v;
    return ConfigValue{config.Get(key), "default", 0};
  };

  struct Axis {
    std::string key;
    ConfigValue source;
    std::vector<std::string> tokens;
  };
  std::vector<Axis> axes;
  for (const KeySpec& spec : kKeys) {
    if (!spec.sweepable) continue;
    ConfigValue v = value_of(spec.name);
    axes.push_back({spec.name, v, ExpandList(v, spec.name)});
  }

  ExperimentConfig base;
  const ConfigValue user_snr = value_of("user_snr_db");
  const ConfigValue user_a = value_of("user_concavity");
  const ConfigValue weights = value_of("weights");
  base.user_snr_db = ParseVector(user_snr, "user_snr_db");
  base.user_concavity = ParseVector(user_a, "user_concavity");
  base.weights = ParseVector(weights, "weights");

  std::vector<ExperimentConfig> configs;
  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    ExperimentConfig c = base;
    std::string slots_token;
    const ConfigValue* slots_source = nullptr;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const std::string& token = axes[a].tokens[idx[a]];
      if (axes[a].key == "slots") {
        slots_token = token;
        slots_source = &axes[a].source;
      }
      Assign(c, axes[a].source, axes[a].key, token);
    }
    c.slots = ResolveSlots(*slots_source, slots_token, c.users);
    try {
      c.Validate();
    } catch (const ConfigError& e) {
      // Validate names the field; point at where it was set when we can.
      const std::string msg = e.what();
      const std::string field = msg.substr(0, msg.find(':'));
      if (const ConfigValue* v = config.Find(field)) {
        throw ConfigFileError(v->origin, v->line, "", msg);
      }
      throw;
    }
    configs.push_back(std::move(c));

    // Last key varies fastest.
    std::size_t a = axes.size();
    while (a > 0) {
      --a;
      if (++idx[a] < axes[a].tokens.size()) break;
      idx[a] = 0;
      if (a == 0) return configs;
    }
  }
}

FairnessOptions FairnessOptionsFrom(const ConfigSource& config) {
  auto value_of = [&](const std::string& key) {
    if (const ConfigValue* v = config.Find(key)) return *v;
    return ConfigValue{config.Get(key), "default", 0};
  };
  FairnessOptions options;
  const ConfigValue tol = value_of("tolerance");
  const ConfigValue step = value_of("step");
  const ConfigValue iters = value_of("max_iterations");
  const ConfigValue samples = value_of("training_samples");
  const ConfigValue seed = value_of("seed");
  options.tolerance = ParseDouble(tol, "tolerance", Trim(tol.text));
  options.step = ParseDouble(step, "step", Trim(step.text));
  options.max_iterations = CheckedInt(iters, "max_iterations", Trim(iters.text));
  options.sample_budget = CheckedInt(samples, "training_samples", Trim(samples.text));
  const std::int64_t s = ParseInt(seed, "seed", Trim(seed.text));
  if (s < 0) Fail(seed, "seed", "seed must be nonnegative");
  options.seed = static_cast<std::uint64_t>(s);
  if (!(options.tolerance > 0.0)) Fail(tol, "tolerance", "must be positive");
  if (!(options.step > 0.0)) Fail(step, "step", "must be positive");
  if (options.max_iterations < 1) Fail(iters, "max_iterations", "must be at least 1");
  if (options.sample_budget < 1) Fail(samples, "training_samples", "must be at least 1");
  return options;
}

}  // namespace taur::cli

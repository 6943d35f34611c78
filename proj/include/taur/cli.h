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

#ifndef TAUR_CLI_H_
#define TAUR_CLI_H_

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "taur/errors.h"
#include "taur/fairness.h"
#include "taur/simkit.h"

namespace taur::cli {

inline constexpr std::string_view kArtifactVersion = "1.0.0";
inline constexpr std::string_view kOutputDirEnv = "TAUR_OUTPUT_DIR";

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitBadConfig = 2;
inline constexpr int kExitNumeric = 3;

// Config error pointing at a line of a config file (0 for flags).
class ConfigFileError : public ConfigError {
 public:
  ConfigFileError(const std::string& origin, int line, const std::string& key,
                  const std::string& what);
  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

struct ConfigValue {
  std::string text;
  std::string origin;  // file path or "--set"
  int line = 0;
};

// Flat key = value configuration. Lines starting with '#' are comments.
// Sweepable keys accept "a, b, c" lists and inclusive "start:stop:step"
// ranges; per-user keys take space-separated numbers.
class ConfigSource {
 public:
  static ConfigSource Parse(std::string_view text, const std::string& origin);
  // Throws ConfigError naming the path when it cannot be read.
  static ConfigSource Load(const std::string& path);

  // Applies a "key=value" override.
  void Override(std::string_view assignment);
  void Set(const std::string& key, const std::string& value);

  bool Has(const std::string& key) const { return values_.count(key) > 0; }
  // The given value, or the documented default.
  std::string Get(const std::string& key) const;
  const ConfigValue* Find(const std::string& key) const;

  // Every documented key with its effective value, in schema order.
  std::vector<std::pair<std::string, std::string>> Resolved() const;

 private:
  std::map<std::string, ConfigValue> values_;
};

// Documented keys, in schema order.
const std::vector<std::string>& ConfigKeys();

// Cartesian product of all list-valued keys, first key outermost.
std::vector<ExperimentConfig> ExpandSweep(const ConfigSource& config);

FairnessOptions FairnessOptionsFrom(const ConfigSource& config);

// Shortest decimal that round-trips.
std::string FormatNumber(double value);

// Header plus one row per sweep point: config columns, then metrics.
std::string RenderSweepCsv(const std::vector<SweepRow>& rows);
std::string RenderFairnessCsv(const FairnessReport& report);

std::string RenderManifest(const ConfigSource& config,
                           const std::string& command,
                           const std::string& csv_path);

struct SelfcheckOptions {
  std::string suite = "all";  // ts, greedy, derivatives, jtpc or all
  std::uint64_t seed = 20070321;
};

// Oracle-equivalence suites. Returns true when every selected suite passes;
// failing instances are printed with their full inputs.
bool RunSelfcheck(const SelfcheckOptions& options, std::ostream& out);

// Entry point of the taur_sim tool.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace taur::cli

#endif  // TAUR_CLI_H_

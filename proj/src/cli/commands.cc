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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "taur/cli.h"

namespace taur::cli {
namespace {

namespace fs = std::filesystem;

enum class Command { kTsSweep, kGsSweep, kJtpc, kQtsl, kFairness };

struct CommandInfo {
  Command command;
  const char* name;
  const char* policy;  // default policy, empty for fairness
  const char* help;
};

constexpr CommandInfo kCommands[] = {
    {Command::kTsSweep, "ts-sweep", "ts", "Optimal time sharing sweep"},
    {Command::kGsSweep, "gs-sweep", "gs", "Gradient scheduling sweep"},
    {Command::kJtpc, "jtpc", "jtpc", "Joint time sharing and power control sweep"},
    {Command::kQtsl, "qtsl", "qtsl", "Quantized time sharing sweep"},
    {Command::kFairness, "fairness", "", "Max-min fairness weight adaptation"},
};

const CommandInfo* FindCommand(std::string_view name) {
  for (const CommandInfo& c : kCommands) {
    if (name == c.name) return &c;
  }
  return nullptr;
}

std::string DefaultOutputDir() {
  const char* env = std::getenv(std::string(kOutputDirEnv).c_str());
  return env && *env ? env : ".";
}

void WriteFile(const fs::path& path, const std::string& bytes) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ConfigError(path.string() + ": cannot open for writing");
  file << bytes;
  if (!file.flush()) throw ConfigError(path.string() + ": write failed");
}

std::optional<std::string> ReadFile(const fs::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) return std::nullopt;
  std::ostringstream bytes;
  bytes << file.rdbuf();
  return bytes.str();
}

struct RunRequest {
  const CommandInfo* info = nullptr;
  ConfigSource config;
  std::string out_dir;
  std::string name;
  int jobs = 1;
};

struct RunOutput {
  int status = kExitOk;
  fs::path csv;
  std::string csv_bytes;
};

RunOutput Execute(RunRequest request, std::ostream& out, std::ostream& err) {
  const CommandInfo& info = *request.info;
  ConfigSource& config = request.config;
  if (*info.policy && !config.Has("policy")) config.Set("policy", info.policy);

  const std::vector<ExperimentConfig> configs = ExpandSweep(config);
  RunOutput result;
  if (info.command == Command::kFairness) {
    if (configs.size() != 1) {
      throw ConfigError("fairness: expects a single configuration, got " +
                        std::to_string(configs.size()) + " sweep points");
    }
    const ExperimentConfig& c = configs.front();
    const FairnessOptions options = FairnessOptionsFrom(config);
    FairnessResult fair;
    try {
      fair = AdaptWeights(c.Model(), c.Utilities(), c.Link(), options);
    } catch (const FairnessConvergenceError& e) {
      err << "fairness: " << e.what() << '\n';
      fair = e.best();
      result.status = kExitNumeric;
    }
    result.csv_bytes = RenderFairnessCsv(fair.report);
    out << "fairness: " << fair.report.iterations << " iterations, spread "
        << FormatNumber(fair.report.spread) << ", weights";
    for (double w : fair.weights.weights) out << ' ' << FormatNumber(w);
    out << '\n';
  } else {
    const std::vector<SweepRow> rows = Sweep(configs, request.jobs);
    result.csv_bytes = RenderSweepCsv(rows);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (!rows[k].stats) {
        err << info.name << ": sweep point " << k << ": " << rows[k].error << '\n';
        result.status = kExitNumeric;
      }
    }
    out << info.name << ": " << rows.size() << " sweep points\n";
  }

  const std::string name = request.name.empty() ? info.name : request.name;
  const fs::path dir(request.out_dir);
  result.csv = dir / (name + ".csv");
  WriteFile(result.csv, result.csv_bytes);
  WriteFile(dir / (name + ".manifest"),
            RenderManifest(config, info.name, name + ".csv"));
  out << "wrote " << result.csv.string() << '\n';
  return result;
}

int Replay(const std::string& manifest_path, const std::string& out_dir,
           bool verify, int jobs, std::ostream& out, std::ostream& err) {
  const ConfigSource manifest = ConfigSource::Load(manifest_path);
  const ConfigValue* command = manifest.Find("command");
  const ConfigValue* version = manifest.Find("artifact_version");
  const ConfigValue* csv = manifest.Find("csv");
  if (!command || !version || !csv) {
    throw ConfigError(manifest_path + ": manifest needs command, artifact_version and csv");
  }
  if (version->text != kArtifactVersion) {
    throw ConfigFileError(manifest_path, version->line, "artifact_version",
                          "manifest is version " + version->text + ", this build is " +
                              std::string(kArtifactVersion));
  }
  RunRequest request;
  request.info = FindCommand(command->text);
  if (!request.info) {
    throw ConfigFileError(manifest_path, command->line, "command",
                          "unknown command '" + command->text + "'");
  }
  const fs::path recorded = fs::path(manifest_path).parent_path() / csv->text;
  // Read before running, the replay may write to the same place.
  const std::optional<std::string> expected = verify ? ReadFile(recorded) : std::nullopt;
  if (verify && !expected) throw ConfigError(recorded.string() + ": cannot read recorded CSV");

  request.config = manifest;
  request.out_dir = out_dir;
  request.name = fs::path(csv->text).stem().string();
  request.jobs = jobs;
  const RunOutput result = Execute(std::move(request), out, err);
  if (result.status != kExitOk) return result.status;
  if (verify) {
    if (*expected != result.csv_bytes) {
      err << "replay: " << result.csv.string() << " differs from " << recorded.string() << '\n';
      return kExitCheckFailed;
    }
    out << "replay: output identical to " << recorded.string() << '\n';
  }
  return kExitOk;
}

}  // namespace

int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Utility-based time sharing and power control simulator", "taur_sim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kArtifactVersion));

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = DefaultOutputDir();
  std::string name;
  int jobs = 1;

  for (const CommandInfo& info : kCommands) {
    CLI::App* sub = app.add_subcommand(info.name, info.help);
    sub->add_option("-c,--config", config_path, "Config file (key = value lines)");
    sub->add_option("-s,--set", overrides, "Override a config key: key=value");
    sub->add_option("-o,--out", out_dir, "Output directory (default $TAUR_OUTPUT_DIR or .)");
    sub->add_option("-n,--name", name, "Base name of the CSV and manifest (default: command)");
    sub->add_option("-j,--jobs", jobs, "Sweep points run concurrently")->check(CLI::Range(1, 256));
  }

  SelfcheckOptions check;
  CLI::App* selfcheck = app.add_subcommand("selfcheck", "Run the oracle-equivalence suites");
  selfcheck->add_option("--suite", check.suite, "ts, greedy, derivatives, jtpc or all")
      ->check(CLI::IsMember({"ts", "greedy", "derivatives", "jtpc", "all"}));
  selfcheck->add_option("--seed", check.seed, "Instance generator seed");

  std::string manifest_path;
  bool verify = false;
  CLI::App* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay->add_option("manifest", manifest_path, "Manifest file")->required();
  replay->add_option("-o,--out", out_dir, "Output directory (default $TAUR_OUTPUT_DIR or .)");
  replay->add_option("-j,--jobs", jobs, "Sweep points run concurrently")->check(CLI::Range(1, 256));
  replay->add_flag("--verify", verify, "Exit 1 unless the CSV matches the recorded one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadConfig;
  }

  try {
    if (selfcheck->parsed()) {
      return RunSelfcheck(check, out) ? kExitOk : kExitCheckFailed;
    }
    if (replay->parsed()) {
      return Replay(manifest_path, out_dir, verify, jobs, out, err);
    }
    RunRequest request;
    for (const CommandInfo& info : kCommands) {
      if (app.got_subcommand(info.name)) request.info = &info;
    }
    request.config = config_path.empty() ? ConfigSource() : ConfigSource::Load(config_path);
    for (const std::string& o : overrides) request.config.Override(o);
    request.out_dir = out_dir;
    request.name = name;
    request.jobs = jobs;
    return Execute(std::move(request), out, err).status;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace taur::cli

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
#include <sstream>

#include "taur/cli.h"

namespace taur::cli {
namespace {

// Quote a field only when it would break the row.
std::string Field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string ConfigColumn(const ExperimentConfig& c, const std::string& key) {
  if (key == "policy") return std::string(PolicyName(c.policy));
  if (key == "users") return std::to_string(c.users);
  if (key == "mean_snr_db") return FormatNumber(c.mean_snr_db);
  if (key == "snr_gap_db") return FormatNumber(c.snr_gap_db);
  if (key == "concavity") return FormatNumber(c.concavity);
  if (key == "alpha") return FormatNumber(c.alpha);
  if (key == "gs_initial_rate") return FormatNumber(c.gs_initial_rate);
  if (key == "delta") return FormatNumber(c.delta);
  if (key == "max_gs_iterations") return std::to_string(c.max_gs_iterations);
  if (key == "power_budget") return FormatNumber(c.power_budget);
  if (key == "training_samples") return std::to_string(c.training_samples);
  if (key == "downlink") return c.downlink ? "true" : "false";
  if (key == "slots") return std::to_string(c.slots);
  if (key == "feedback_bits") return std::to_string(c.feedback_bits);
  if (key == "frames") return std::to_string(c.frames);
  if (key == "seed") return std::to_string(c.seed);
  return {};
}

const std::vector<std::string>& SweepColumns() {
  static const std::vector<std::string> columns = {
      "policy",          "users",         "mean_snr_db", "snr_gap_db",
      "concavity",       "alpha",         "gs_initial_rate", "delta",
      "max_gs_iterations", "power_budget", "training_samples", "downlink",
      "slots",           "feedback_bits", "frames",      "seed"};
  return columns;
}

}  // namespace

std::string FormatNumber(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

std::string RenderSweepCsv(const std::vector<SweepRow>& rows) {
  int max_users = 0;
  for (const SweepRow& row : rows) max_users = std::max(max_users, row.config.users);

  std::ostringstream out;
  for (const std::string& key : SweepColumns()) out << key << ',';
  out << "taur,mean_rate,rate_std";
  for (int i = 1; i <= max_users; ++i) {
    out << ",mean_rate_user_" << i << ",rate_std_user_" << i;
  }
  out << ",error\n";

  for (const SweepRow& row : rows) {
    for (const std::string& key : SweepColumns()) {
      out << Field(ConfigColumn(row.config, key)) << ',';
    }
    if (row.stats) {
      const SimStats& s = *row.stats;
      out << FormatNumber(s.taur) << ',' << FormatNumber(s.MeanRate()) << ','
          << FormatNumber(s.MeanRateStd());
      for (int i = 0; i < max_users; ++i) {
        if (i < static_cast<int>(s.mean_rate.size())) {
          out << ',' << FormatNumber(s.mean_rate[i]) << ',' << FormatNumber(s.rate_std[i]);
        } else {
          out << ",,";
        }
      }
      out << ",\n";
    } else {
      out << ",,";
      for (int i = 0; i < max_users; ++i) out << ",,";
      out << ',' << Field(row.error) << '\n';
    }
  }
  return out.str();
}

std::string RenderFairnessCsv(const FairnessReport& report) {
  const std::size_t n =
      report.weight_history.empty() ? 0 : report.weight_history.front().size();
  std::ostringstream out;
  out << "iteration,spread";
  for (std::size_t i = 1; i <= n; ++i) out << ",weight_user_" << i;
  for (std::size_t i = 1; i <= n; ++i) out << ",utility_user_" << i;
  out << '\n';
  for (std::size_t k = 0; k < report.weight_history.size(); ++k) {
    out << k << ',' << FormatNumber(report.spread_history[k]);
    for (double w : report.weight_history[k]) out << ',' << FormatNumber(w);
    for (double u : report.utility_history[k]) out << ',' << FormatNumber(u);
    out << '\n';
  }
  return out.str();
}

std::string RenderManifest(const ConfigSource& config, const std::string& command,
                           const std::string& csv_path) {
  std::ostringstream out;
  out << "# taur_sim run manifest. Replay with: taur_sim replay <this file>\n";
  out << "command = " << command << '\n';
  out << "artifact_version = " << kArtifactVersion << '\n';
  out << "csv = " << csv_path << '\n';
  for (const auto& [key, value] : config.Resolved()) {
    out << key << " = " << value << '\n';
  }
  return out.str();
}

}  // namespace taur::cli

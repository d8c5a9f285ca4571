#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sglab/estimates.hpp"

namespace sglab {

/// Machine-readable form of an experiment: a JSON document carrying every
/// number a verdict depends on, plus named CSV tables for plotting.
struct Artifact {
  std::string kind;
  nlohmann::json json;
  std::vector<std::pair<std::string, std::string>> tables;  ///< name, CSV text
  bool passed = false;

  const std::string* table(const std::string& name) const;
};

Artifact make_artifact(const EnvelopeReport& r);
Artifact make_artifact(const LemmaReport& r);
Artifact make_artifact(const SweepReport& r);
Artifact make_artifact(const MemoryReport& r);

/// %.17g
std::string format_double(double v);

nlohmann::json to_json(const ModelParams& p);

}  // namespace sglab

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "slipkit/evaluation.hpp"
#include "slipkit/simulator.hpp"

namespace slipkit {

/// Where a trained model came from, for reproducibility audits.
struct ModelProvenance {
  std::uint64_t seed = 0;
  std::string terrain;
  double train_seconds = 0.0;
};

/// A trained model plus the inputs needed to run it: geometry, per-side
/// powertrain parameters, per-dimension slip posteriors, and provenance.
struct ModelFile {
  int version = 1;
  RobotGeometry geometry;
  SidePair<PowertrainParams> powertrain;
  SlipModel slip;
  ModelProvenance provenance;
};

/// JSON persistence. Doubles round-trip bit-exact (shortest-representation
/// serialization, up to 17 significant digits). Writing is atomic; reading
/// validates the version field, matrix shapes, and that all three posteriors
/// share one training-sample count, throwing SchemaError otherwise.
void write_model_json(const std::filesystem::path& path, const ModelFile& model);
ModelFile read_model_json(const std::filesystem::path& path);

/// Simulated-plant configuration document (geometry, powertrain, limits,
/// terrain, rate, seed).
void write_sim_config_json(const std::filesystem::path& path, const SimConfig& config);
SimConfig read_sim_config_json(const std::filesystem::path& path);

}  // namespace slipkit

// commands.hpp
// Subcommand implementations behind the rqi executable.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rqi/causality.hpp"
#include "rqi/grid.hpp"
#include "rqi/massive.hpp"
#include "rqi/sweep.hpp"

namespace rqi::cli {

/// Malformed or out-of-range user input (exit code 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };
Format parse_format(const std::string& s);

struct SpinEntropyConfig {
  double delta_over_m = 0.05;
  std::vector<double> v{0.0, 0.2, 0.4, 0.6, 0.8, 0.9, 0.99};
  std::vector<double> theta{0.0,        0.39269908169872414, 0.78539816339744828,
                            1.1780972450961724, 1.5707963267948966, 1.9634954084936207,
                            2.3561944901923448, 2.748893571891069,  3.1415926535897931};
  massive::ThetaRole role = massive::ThetaRole::spinor;
  GridPreset grid = GridPreset::standard;
};

struct MassiveDistinguishConfig {
  double delta_over_m = 0.02;
  std::vector<double> v{0.0, 0.3, 0.6, 0.9};
  double theta = 0.39269908169872414;
  GridPreset grid = GridPreset::standard;
};

struct PhotonDopplerConfig {
  std::vector<double> omega{0.02, 0.05};
  std::vector<double> v{-0.6, -0.3, 0.0, 0.3, 0.6};
  double delta_z_over_k = 0.01;
  GridPreset grid = GridPreset::standard;
};

struct ChshConfig {
  std::vector<double> v{0.0, 0.3, 0.6, 0.9};
  double delta_over_m = 0.05;
  GridPreset grid = GridPreset::standard;
};

/// Overlays keys present in `j` onto the config; unknown keys are rejected.
void apply_json(const nlohmann::json& j, SpinEntropyConfig& c);
void apply_json(const nlohmann::json& j, MassiveDistinguishConfig& c);
void apply_json(const nlohmann::json& j, PhotonDopplerConfig& c);
void apply_json(const nlohmann::json& j, ChshConfig& c);

void validate(const SpinEntropyConfig& c);
void validate(const MassiveDistinguishConfig& c);
void validate(const PhotonDopplerConfig& c);
void validate(const ChshConfig& c);

SweepResult cmd_spin_entropy(const SpinEntropyConfig& c);
SweepResult cmd_massive_distinguish(const MassiveDistinguishConfig& c);
/// `warnings` receives one line per clamped closed-form value.
SweepResult cmd_photon_doppler(const PhotonDopplerConfig& c, std::vector<std::string>* warnings = nullptr);
SweepResult cmd_chsh(const ChshConfig& c);

/// `kind` is incomplete-bell, one-way, verification or check (with `path`).
nlohmann::json cmd_causality(const std::string& kind, const std::string& path = "");

/// {"dims":[dA,dB],"outcomes":[[matrix, ...], ...]} with matrices as rows of [re,im].
causality::BipartiteOperation parse_kraus_json(const nlohmann::json& j);

std::string render(const SweepResult& r, Format f);
nlohmann::json to_json(const SweepResult& r);

}  // namespace rqi::cli

// rqi: sweeps and demos for relativistic spin and polarization qubits.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using namespace rqi;
using rqi::cli::UsageError;

struct Common {
  std::string out;
  std::string format = "csv";
  std::string grid;
  std::string config;
  CLI::Option* format_opt = nullptr;
};

const CLI::Validator kNumber(
    [](std::string& v) { return v.empty() ? std::string("empty value") : std::string(); }, "", "number");

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "Output path (default: stdout)");
  c.format_opt = sub->add_option("--format", c.format, "csv|json")->capture_default_str();
  sub->add_option("--grid", c.grid, "COARSE|DEFAULT|FINE (default DEFAULT)");
  sub->add_option("--config", c.config, "JSON config file; flags take precedence");
}

nlohmann::json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config '" + path + "'");
  try {
    nlohmann::json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("malformed config '" + path + "': " + e.what());
  }
}

template <typename Config>
void overlay(Config& cfg, const Common& c) {
  if (!c.config.empty()) cli::apply_json(load_config(c.config), cfg);
  if (!c.grid.empty()) {
    try {
      cfg.grid = parse_grid_preset(c.grid);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relativistic spin and polarization qubit sweeps"};
  app.require_subcommand(1);

  Common common;
  cli::SpinEntropyConfig se;
  cli::MassiveDistinguishConfig md;
  cli::PhotonDopplerConfig pd;
  cli::ChshConfig ch;
  cli::SpinEntropyConfig se_flags;
  cli::MassiveDistinguishConfig md_flags;
  cli::PhotonDopplerConfig pd_flags;
  cli::ChshConfig ch_flags;
  std::string theta_role;
  std::string causality_case, causality_file;

  auto* spin = app.add_subcommand("spin-entropy", "Spin entropy of a boosted Gaussian packet: theta,gamma,entropy");
  add_common(spin, common);
  auto* se_dm = spin->add_option("--delta-over-m", se_flags.delta_over_m, "Momentum spread over mass")->check(kNumber)->capture_default_str();
  auto* se_v = spin->add_option("--v", se_flags.v, "Observer speeds in [0,1)")->delimiter(',')->check(kNumber)->capture_default_str();
  auto* se_th = spin->add_option("--theta", se_flags.theta, "Angles (radians)")->delimiter(',')->check(kNumber)->capture_default_str();
  auto* se_role = spin->add_option("--theta-role", theta_role, "spinor|boost-direction (default spinor)")
                      ->check(CLI::IsMember({"spinor", "boost-direction"}));

  auto* dist = app.add_subcommand("massive-distinguish", "Boosted spin distinguishability: gamma,pe_closed,pe_numeric,fidelity_closed,fidelity_numeric");
  add_common(dist, common);
  auto* md_dm = dist->add_option("--delta-over-m", md_flags.delta_over_m, "Momentum spread over mass")->check(kNumber)->capture_default_str();
  auto* md_v = dist->add_option("--v", md_flags.v, "Observer speeds in [0,1)")->delimiter(',')->check(kNumber)->capture_default_str();
  auto* md_th = dist->add_option("--theta", md_flags.theta, "Spinor angle for the fidelity columns")->check(kNumber)->capture_default_str();

  auto* dop = app.add_subcommand("photon-doppler", "Photon helicity distinguishability under z-boosts: omega,v,pe_closed,pe_numeric");
  add_common(dop, common);
  auto* pd_om = dop->add_option("--omega", pd_flags.omega, "Beam angular spreads")->delimiter(',')->check(kNumber)->capture_default_str();
  auto* pd_v = dop->add_option("--v", pd_flags.v, "Signed receiver speeds along the beam")->delimiter(',')->check(kNumber)->capture_default_str();
  auto* pd_dz = dop->add_option("--delta-z-over-k", pd_flags.delta_z_over_k, "Longitudinal spread over k_A")->check(kNumber)->capture_default_str();

  auto* chsh = app.add_subcommand("chsh", "CHSH values and concurrence of a boosted singlet: v,zeta_uncompensated,zeta_compensated,concurrence");
  add_common(chsh, common);
  auto* ch_v = chsh->add_option("--v", ch_flags.v, "Observer speeds in [0,1)")->delimiter(',')->check(kNumber)->capture_default_str();
  auto* ch_dm = chsh->add_option("--delta-over-m", ch_flags.delta_over_m, "Packet spread for the concurrence column")->check(kNumber)->capture_default_str();

  auto* caus = app.add_subcommand("causality", "Bipartite operation demos and checks (JSON report)");
  caus->add_option("case", causality_case, "incomplete-bell|one-way|verification|check")->required();
  caus->add_option("file", causality_file, "Kraus JSON file for 'check'");
  caus->add_option("--out", common.out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*caus) {
      emit(cli::cmd_causality(causality_case, causality_file).dump(2) + "\n", common.out);
      return 0;
    }
    const cli::Format format = cli::parse_format(common.format);
    std::string text;
    if (*spin) {
      overlay(se, common);
      if (se_dm->count()) se.delta_over_m = se_flags.delta_over_m;
      if (se_v->count()) se.v = se_flags.v;
      if (se_th->count()) se.theta = se_flags.theta;
      if (se_role->count()) {
        se.role = theta_role == "spinor" ? massive::ThetaRole::spinor : massive::ThetaRole::boost_direction;
      }
      cli::validate(se);
      text = cli::render(cli::cmd_spin_entropy(se), format);
    } else if (*dist) {
      overlay(md, common);
      if (md_dm->count()) md.delta_over_m = md_flags.delta_over_m;
      if (md_v->count()) md.v = md_flags.v;
      if (md_th->count()) md.theta = md_flags.theta;
      cli::validate(md);
      text = cli::render(cli::cmd_massive_distinguish(md), format);
    } else if (*dop) {
      overlay(pd, common);
      if (pd_om->count()) pd.omega = pd_flags.omega;
      if (pd_v->count()) pd.v = pd_flags.v;
      if (pd_dz->count()) pd.delta_z_over_k = pd_flags.delta_z_over_k;
      cli::validate(pd);
      std::vector<std::string> warnings;
      text = cli::render(cli::cmd_photon_doppler(pd, &warnings), format);
      for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    } else if (*chsh) {
      overlay(ch, common);
      if (ch_v->count()) ch.v = ch_flags.v;
      if (ch_dm->count()) ch.delta_over_m = ch_flags.delta_over_m;
      cli::validate(ch);
      text = cli::render(cli::cmd_chsh(ch), format);
    }
    emit(text, common.out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "rqi/entangle.hpp"
#include "rqi/kernels.hpp"
#include "rqi/photon.hpp"

namespace rqi::cli {

using nlohmann::json;

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw UsageError("unknown format '" + s + "' (expected csv|json)");
}

namespace {

template <typename T>
void read_key(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw UsageError(std::string("config key '") + key + "': " + e.what());
  }
}

void read_grid(const json& j, GridPreset& g) {
  if (!j.contains("grid")) return;
  try {
    g = parse_grid_preset(j.at("grid").get<std::string>());
  } catch (const std::exception& e) {
    throw UsageError(std::string("config key 'grid': ") + e.what());
  }
}

void reject_unknown(const json& j, std::initializer_list<const char*> known) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [k, _] : j.items()) {
    bool ok = false;
    for (const char* name : known) ok = ok || k == name;
    if (!ok) throw UsageError("unknown config key '" + k + "'");
  }
}

void require_nonempty(const std::vector<double>& xs, const char* what) {
  if (xs.empty()) throw UsageError(std::string(what) + " must not be empty");
}

void require_speeds(const std::vector<double>& v) {
  require_nonempty(v, "v");
  for (double x : v) {
    if (!(x >= 0 && x < 1)) throw UsageError("speeds must lie in [0, 1)");
  }
}

void require_positive(double x, const char* what) {
  if (!(x > 0)) throw UsageError(std::string(what) + " must be positive");
}

void add_common_provenance(SweepResult& r, GridPreset grid, const GridSpec& spec) {
  std::ostringstream g;
  g << spec.n_r << "x" << spec.n_phi << "x" << spec.n_z << " cutoff " << spec.cutoff;
  r.provenance.emplace_back("grid", to_string(grid));
  r.provenance.emplace_back("grid_nodes", g.str());
  r.provenance.emplace_back("version", library_version());
  r.provenance.emplace_back("kernels", kernels::to_string(kernels::active_backend()));
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ' ';
    s += format_double(xs[i]);
  }
  return s;
}

json matrix_json(const CMatX& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

void apply_json(const json& j, SpinEntropyConfig& c) {
  reject_unknown(j, {"delta_over_m", "v", "theta", "theta_role", "grid"});
  read_key(j, "delta_over_m", c.delta_over_m);
  read_key(j, "v", c.v);
  read_key(j, "theta", c.theta);
  if (j.contains("theta_role")) {
    std::string role;
    read_key(j, "theta_role", role);
    if (role == "spinor") c.role = massive::ThetaRole::spinor;
    else if (role == "boost-direction") c.role = massive::ThetaRole::boost_direction;
    else throw UsageError("theta_role must be spinor or boost-direction");
  }
  read_grid(j, c.grid);
}

void apply_json(const json& j, MassiveDistinguishConfig& c) {
  reject_unknown(j, {"delta_over_m", "v", "theta", "grid"});
  read_key(j, "delta_over_m", c.delta_over_m);
  read_key(j, "v", c.v);
  read_key(j, "theta", c.theta);
  read_grid(j, c.grid);
}

void apply_json(const json& j, PhotonDopplerConfig& c) {
  reject_unknown(j, {"omega", "v", "delta_z_over_k", "grid"});
  read_key(j, "omega", c.omega);
  read_key(j, "v", c.v);
  read_key(j, "delta_z_over_k", c.delta_z_over_k);
  read_grid(j, c.grid);
}

void apply_json(const json& j, ChshConfig& c) {
  reject_unknown(j, {"v", "delta_over_m", "grid"});
  read_key(j, "v", c.v);
  read_key(j, "delta_over_m", c.delta_over_m);
  read_grid(j, c.grid);
}

void validate(const SpinEntropyConfig& c) {
  require_positive(c.delta_over_m, "delta_over_m");
  if (c.delta_over_m > 0.2) throw UsageError("delta_over_m must not exceed 0.2");
  require_speeds(c.v);
  require_nonempty(c.theta, "theta");
}

void validate(const MassiveDistinguishConfig& c) {
  require_positive(c.delta_over_m, "delta_over_m");
  if (c.delta_over_m > 0.2) throw UsageError("delta_over_m must not exceed 0.2");
  require_speeds(c.v);
}

void validate(const PhotonDopplerConfig& c) {
  require_nonempty(c.omega, "omega");
  require_nonempty(c.v, "v");
  require_positive(c.delta_z_over_k, "delta_z_over_k");
  if (c.delta_z_over_k > 0.3) throw UsageError("delta_z_over_k must not exceed 0.3");
  for (double o : c.omega) {
    if (!(o > 0 && o < 0.3)) throw UsageError("omega must lie in (0, 0.3)");
  }
  for (double v : c.v) {
    if (!(std::abs(v) < 1)) throw UsageError("|v| must be below 1");
    for (double o : c.omega) {
      if (!(photon::doppler_omega(o, v) < 0.3)) {
        throw UsageError("boosted omega " + format_double(photon::doppler_omega(o, v)) +
                         " leaves the leading-order regime (must stay below 0.3)");
      }
    }
  }
}

void validate(const ChshConfig& c) {
  require_speeds(c.v);
  require_positive(c.delta_over_m, "delta_over_m");
  if (c.delta_over_m > 0.2) throw UsageError("delta_over_m must not exceed 0.2");
}

SweepResult cmd_spin_entropy(const SpinEntropyConfig& c) {
  validate(c);
  const GridSpec spec = single_particle_grid(c.grid);
  SweepResult r = massive::entropy_surface(c.delta_over_m, c.v, c.theta, spec, c.role);
  r.provenance.emplace_back("command", "spin-entropy");
  r.provenance.emplace_back("delta_over_m", format_double(c.delta_over_m));
  r.provenance.emplace_back("v", join(c.v));
  r.provenance.emplace_back("theta", join(c.theta));
  r.provenance.emplace_back("theta_role",
                            c.role == massive::ThetaRole::spinor ? "spinor" : "boost-direction");
  add_common_provenance(r, c.grid, spec);
  return r;
}

SweepResult cmd_massive_distinguish(const MassiveDistinguishConfig& c) {
  validate(c);
  const GridSpec spec = single_particle_grid(c.grid);
  const CVec2 chi(std::cos(c.theta), std::sin(c.theta));
  SweepResult r;
  r.columns = {"gamma", "pe_closed", "pe_numeric", "fidelity_closed", "fidelity_numeric"};
  for (double v : c.v) {
    const double gamma = massive::gamma_parameter(c.delta_over_m, 1.0, v);
    const Vec3 vel(0, 0, v);
    const auto r1 = massive::boosted_spin_dm(c.delta_over_m, vel, CVec2(1, 0), spec);
    const auto r2 = massive::boosted_spin_dm(c.delta_over_m, vel, CVec2(0, 1), spec);
    const auto rt = massive::boosted_spin_dm(c.delta_over_m, vel, chi, spec);
    r.add_row({gamma, gamma * gamma / 4, error_probability(r1, r2),
               massive::fidelity_closed_form(c.theta, gamma), massive::fidelity(chi, rt)});
  }
  r.sort_rows(1);
  r.provenance.emplace_back("command", "massive-distinguish");
  r.provenance.emplace_back("delta_over_m", format_double(c.delta_over_m));
  r.provenance.emplace_back("v", join(c.v));
  r.provenance.emplace_back("theta", format_double(c.theta));
  add_common_provenance(r, c.grid, spec);
  return r;
}

SweepResult cmd_photon_doppler(const PhotonDopplerConfig& c, std::vector<std::string>* warnings) {
  validate(c);
  const GridSpec spec = single_particle_grid(c.grid);
  SweepResult r;
  r.columns = {"omega", "v", "pe_closed", "pe_numeric"};
  for (double omega : c.omega) {
    for (double v : c.v) {
      const photon::DopplerResult closed =
          photon::doppler_pe(photon::photon_error_probability_closed_form(omega), v);
      if (closed.clamped && warnings) {
        warnings->push_back("omega=" + format_double(omega) + " v=" + format_double(v) +
                            ": closed-form P_E clamped at 1/2");
      }
      r.add_row({omega, v, closed.value,
                 photon::boosted_error_probability(omega, v, spec, c.delta_z_over_k)});
    }
  }
  r.sort_rows(2);
  r.provenance.emplace_back("command", "photon-doppler");
  r.provenance.emplace_back("omega", join(c.omega));
  r.provenance.emplace_back("v", join(c.v));
  r.provenance.emplace_back("delta_z_over_k", format_double(c.delta_z_over_k));
  add_common_provenance(r, c.grid, spec);
  return r;
}

SweepResult cmd_chsh(const ChshConfig& c) {
  validate(c);
  const GridSpec spec = pair_grid(c.grid);
  const double m = 1.0;
  const Vec3 rest = Vec3::Zero();
  const DensityMatrix4 singlet_dm = DensityMatrix4::pure(entangle::singlet());
  SweepResult r;
  r.columns = {"v", "zeta_uncompensated", "zeta_compensated", "concurrence"};
  for (double v : c.v) {
    const auto lambda = lorentz::boost_from_velocity(Vec3(0, 0, -v));
    const CMat2 d = lorentz::wigner_D_half(lorentz::wigner_rotation(lambda, rest, m)).matrix();
    CMat4 u;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) u.block<2, 2>(2 * i, 2 * j) = d(i, j) * d;
    const DensityMatrix4 boosted(u * singlet_dm.matrix() * u.adjoint());
    const Vec3 p = (lambda * lorentz::FourVector::on_shell(rest, m)).spatial();

    entangle::CHSHSettings plain = entangle::optimal_rest_settings();
    plain.p_a = plain.p_b = p;
    plain.mass = m;

    entangle::CHSHSettings wigner = entangle::optimal_rest_settings();
    wigner.model = entangle::SpinModel::wigner_spin;
    const entangle::CHSHSettings compensated =
        entangle::compensate_settings(lambda, rest, rest, m, wigner);

    const auto packet = entangle::two_particle_gaussian(m, c.delta_over_m, entangle::singlet(), spec);
    const double conc =
        entangle::concurrence(entangle::spin_spin_dm(entangle::apply_boost_pair(packet, lambda)));

    r.add_row({v, entangle::chsh_value(plain, boosted), entangle::chsh_value(compensated, boosted), conc});
  }
  r.sort_rows(1);
  r.provenance.emplace_back("command", "chsh");
  r.provenance.emplace_back("v", join(c.v));
  r.provenance.emplace_back("delta_over_m", format_double(c.delta_over_m));
  add_common_provenance(r, c.grid, spec);
  return r;
}

causality::BipartiteOperation parse_kraus_json(const json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("outcomes")) {
    throw UsageError("Kraus file must be an object with 'dims' and 'outcomes'");
  }
  const json& dims = j.at("dims");
  if (!dims.is_array() || dims.size() != 2 || !dims[0].is_number_integer() || !dims[1].is_number_integer()) {
    throw UsageError("'dims' must be an array of two integers");
  }
  const int da = dims[0].get<int>(), db = dims[1].get<int>();
  if (da < 1 || db < 1 || da * db > 64) throw UsageError("'dims' must be positive with dA*dB <= 64");
  const int d = da * db;
  const json& outs = j.at("outcomes");
  if (!outs.is_array() || outs.empty()) throw UsageError("'outcomes' must be a nonempty array");
  std::vector<causality::KrausEnsemble::Outcome> outcomes;
  for (std::size_t mu = 0; mu < outs.size(); ++mu) {
    const json& o = outs[mu];
    if (!o.is_array() || o.empty()) {
      throw UsageError("outcome " + std::to_string(mu) + " must be a nonempty array of matrices");
    }
    causality::KrausEnsemble::Outcome kraus;
    for (std::size_t k = 0; k < o.size(); ++k) {
      const std::string where = "outcome " + std::to_string(mu) + " matrix " + std::to_string(k);
      const json& m = o[k];
      if (!m.is_array() || static_cast<int>(m.size()) != d) {
        throw UsageError(where + ": expected " + std::to_string(d) + " rows");
      }
      CMatX a(d, d);
      for (int r = 0; r < d; ++r) {
        const json& row = m[r];
        if (!row.is_array() || static_cast<int>(row.size()) != d) {
          throw UsageError(where + " row " + std::to_string(r) + ": expected " + std::to_string(d) + " entries");
        }
        for (int col = 0; col < d; ++col) {
          const json& z = row[col];
          if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
            throw UsageError(where + " entry (" + std::to_string(r) + "," + std::to_string(col) +
                             "): expected [re, im]");
          }
          a(r, col) = Complex(z[0].get<double>(), z[1].get<double>());
        }
      }
      kraus.push_back(std::move(a));
    }
    outcomes.push_back(std::move(kraus));
  }
  try {
    return causality::BipartiteOperation(causality::KrausEnsemble(std::move(outcomes)), da, db);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
}

namespace {

json semicausal_json(const causality::SemicausalReport& r) {
  json j{{"semicausal", r.semicausal}, {"max_violation", r.max_violation}};
  if (r.witness) {
    j["witness"] = {{"x", matrix_json(r.witness->x)},
                    {"y", matrix_json(r.witness->y)},
                    {"difference", matrix_json(r.witness->difference)},
                    {"rho1", matrix_json(r.witness->rho1)},
                    {"rho2", matrix_json(r.witness->rho2)},
                    {"success", r.witness->success}};
  }
  return j;
}

json check_operation(const causality::BipartiteOperation& op) {
  using causality::Direction;
  const auto b2a = causality::semicausal_check(op, Direction::b_to_a);
  const auto a2b = causality::semicausal_check(op, Direction::a_to_b);
  std::string verdict = "neither";
  if (b2a.semicausal && a2b.semicausal) verdict = "both";
  else if (b2a.semicausal) verdict = "b_to_a_only";
  else if (a2b.semicausal) verdict = "a_to_b_only";
  return {{"semicausal", verdict},
          {"b_to_a", semicausal_json(b2a)},
          {"a_to_b", semicausal_json(a2b)},
          {"sampled_gap_b_to_a", causality::semicausal_sampled_gap(op, Direction::b_to_a, 200, 1)},
          {"sampled_gap_a_to_b", causality::semicausal_sampled_gap(op, Direction::a_to_b, 200, 1)}};
}

const char* kProductLabels[4] = {"|00>", "|01>", "|1+>", "|1->"};

}  // namespace

json cmd_causality(const std::string& kind, const std::string& path) {
  if (kind == "incomplete-bell") {
    const auto r = causality::incomplete_bell_demo();
    const auto check = causality::semicausal_check(
        causality::BipartiteOperation(causality::incomplete_bell_pvm(), 2, 2),
        causality::Direction::b_to_a);
    return {{"case", kind},
            {"probabilities_00", r.probabilities_00},
            {"probabilities_01", r.probabilities_01},
            {"alice_marginal_00", matrix_json(r.marginal_00)},
            {"alice_marginal_01", matrix_json(r.marginal_01)},
            {"success", r.success},
            {"b_to_a", semicausal_json(check)}};
  }
  if (kind == "one-way") {
    const auto proj = causality::orthogonal_product_projectors();
    const auto direct = causality::KrausEnsemble::from_projectors({proj.begin(), proj.end()});
    json rows = json::array();
    for (int mu = 0; mu < 4; ++mu) {
      const auto s = causality::one_way_pvm_protocol(proj[mu]);
      const auto d = causality::measure(direct, proj[mu]);
      double dev = 0;
      for (int k = 0; k < 4; ++k) dev = std::max(dev, std::abs(s.probabilities[k] - d.probabilities[k]));
      rows.push_back({{"input", kProductLabels[mu]},
                      {"probabilities", s.probabilities},
                      {"max_deviation_from_direct", dev}});
    }
    return {{"case", kind}, {"results", rows}};
  }
  if (kind == "verification") {
    const auto proj = causality::orthogonal_product_projectors();
    json rows = json::array();
    for (int mu = 0; mu < 4; ++mu) {
      const auto s = causality::verification_measurement_sim(proj[mu]);
      rows.push_back({{"input", kProductLabels[mu]}, {"outcome", mu + 1}, {"probability", s.probabilities[mu]}});
    }
    return {{"case", kind},
            {"results", rows},
            {"decision_table_regenerated",
             causality::derive_verification_decision_table() == causality::verification_decision_table()}};
  }
  if (kind == "check") {
    if (path.empty()) throw UsageError("causality check needs a Kraus JSON file");
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw UsageError("malformed JSON in '" + path + "': " + e.what());
    }
    json out = check_operation(parse_kraus_json(j));
    out["case"] = kind;
    out["file"] = path;
    return out;
  }
  throw UsageError("unknown causality case '" + kind + "' (expected incomplete-bell|one-way|verification|check)");
}

json to_json(const SweepResult& r) {
  json prov = json::object();
  for (const auto& [k, v] : r.provenance) prov[k] = v;
  return {{"columns", r.columns}, {"rows", r.rows}, {"provenance", prov}};
}

std::string render(const SweepResult& r, Format f) {
  if (f == Format::csv) return to_csv(r);
  return to_json(r).dump(2) + "\n";
}

}  // namespace rqi::cli

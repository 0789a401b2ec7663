#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "commands.hpp"

namespace fs = std::filesystem;
using Catch::Approx;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("rqi_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

Run run(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt", err = scratch() / "stderr.txt";
  const std::string cmd = std::string(RQI_BINARY) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

struct Csv {
  std::string header;
  std::vector<std::vector<double>> rows;
};

Csv parse_csv(const std::string& text) {
  Csv c;
  std::istringstream in(text);
  std::getline(in, c.header);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    c.rows.push_back(row);
  }
  return c;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("--help").code == 0);
  CHECK(run("").code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("chsh --v 1.2 --grid COARSE").code == 2);
  CHECK(run("chsh --grid HUGE").code == 2);
  CHECK(run("chsh --grid COARSE --format xml").code == 2);
  CHECK(run("spin-entropy --grid COARSE --delta-over-m -1").code == 2);
  CHECK(run("massive-distinguish --grid COARSE --v ''").code == 2);
  CHECK(run("photon-doppler --omega 0.2 --v 0.6").code == 2);
  CHECK(run("causality bogus").code == 2);
  CHECK(run("causality check").code == 2);
}

TEST_CASE("chsh sweep") {
  const Run r = run("chsh --grid COARSE");
  REQUIRE(r.code == 0);
  CHECK(r.out.find('\r') == std::string::npos);
  const Csv c = parse_csv(r.out);
  CHECK(c.header == "v,zeta_uncompensated,zeta_compensated,concurrence");
  REQUIRE(c.rows.size() == 4);
  CHECK(c.rows[0][0] == 0.0);
  CHECK(c.rows[0][1] == Approx(std::sqrt(2.0)).margin(1e-10));
  for (std::size_t i = 0; i < c.rows.size(); ++i) {
    CHECK(c.rows[i][2] == Approx(std::sqrt(2.0)).margin(1e-8));
    if (i > 0) {
      CHECK(c.rows[i][3] <= c.rows[i - 1][3] + 1e-12);
      CHECK(c.rows[i][1] < c.rows[i][2]);
    }
  }
}

TEST_CASE("massive-distinguish sweep") {
  const Run r = run("massive-distinguish --grid COARSE");
  REQUIRE(r.code == 0);
  const Csv c = parse_csv(r.out);
  CHECK(c.header == "gamma,pe_closed,pe_numeric,fidelity_closed,fidelity_numeric");
  REQUIRE(c.rows.size() == 4);
  CHECK(c.rows[0][0] == 0.0);
  CHECK(c.rows[0][1] == 0.0);
  CHECK(c.rows[0][2] == 0.0);
  for (const auto& row : c.rows) {
    CHECK(row[1] == row[0] * row[0] / 4);
    if (row[0] > 0) CHECK(std::abs(row[2] - row[1]) <= 0.1 * row[1]);
  }
}

TEST_CASE("photon-doppler sweep") {
  const Run r = run("photon-doppler --omega 0.02,0.05 --v 0,0.6");
  REQUIRE(r.code == 0);
  const Csv c = parse_csv(r.out);
  CHECK(c.header == "omega,v,pe_closed,pe_numeric");
  REQUIRE(c.rows.size() == 4);
  for (std::size_t i = 0; i < c.rows.size(); i += 2) {
    const auto& rest = c.rows[i];
    const auto& moving = c.rows[i + 1];
    CHECK(rest[1] == 0.0);
    CHECK(moving[1] == 0.6);
    CHECK(rest[2] == rest[0] * rest[0] / 4);
    CHECK(std::abs(moving[2] / rest[2] - 4.0) <= 1e-12);
    CHECK(std::abs(moving[3] - moving[2]) <= 0.05 * moving[2]);
  }
}

TEST_CASE("spin-entropy sweep is deterministic") {
  const fs::path a = scratch() / "a.csv", b = scratch() / "b.csv";
  REQUIRE(run("spin-entropy --grid COARSE --v 0,0.5,0.9 --out " + a.string()).code == 0);
  REQUIRE(run("spin-entropy --grid COARSE --v 0,0.5,0.9 --out " + b.string()).code == 0);
  const std::string ta = slurp(a);
  CHECK(!ta.empty());
  CHECK(ta == slurp(b));
  const Csv c = parse_csv(ta);
  CHECK(c.header == "theta,gamma,entropy");
  REQUIRE(c.rows.size() == 27);
  for (const auto& row : c.rows) {
    if (row[1] == 0.0) CHECK(std::abs(row[2]) < 1e-10);
    CHECK(row[2] >= 0);
  }
  CHECK(run("spin-entropy --grid COARSE --v 0.5 --theta-role boost-direction").code == 0);
}

TEST_CASE("json output") {
  const Run r = run("chsh --grid COARSE --v 0.3 --format json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["columns"].size() == 4);
  CHECK(j["rows"].size() == 1);
  CHECK(j["provenance"]["grid"] == "COARSE");
  CHECK(j["provenance"]["version"] == "1.0.0");
}

TEST_CASE("config precedence") {
  const fs::path cfg = scratch() / "cfg.json";
  write(cfg, R"({"v":[0.3],"grid":"COARSE"})");
  const Csv from_file = parse_csv(run("chsh --config " + cfg.string()).out);
  REQUIRE(from_file.rows.size() == 1);
  CHECK(from_file.rows[0][0] == 0.3);
  const Csv flag_wins = parse_csv(run("chsh --config " + cfg.string() + " --v 0.6").out);
  REQUIRE(flag_wins.rows.size() == 1);
  CHECK(flag_wins.rows[0][0] == 0.6);

  write(cfg, R"({"speed":[0.3]})");
  const Run unknown = run("chsh --grid COARSE --config " + cfg.string());
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("speed") != std::string::npos);
  write(cfg, "{not json");
  CHECK(run("chsh --grid COARSE --config " + cfg.string()).code == 2);
}

TEST_CASE("causality reports") {
  const auto ib = nlohmann::json::parse(run("causality incomplete-bell").out);
  CHECK(std::abs(ib["success"].get<double>() - 0.75) <= 1e-12);
  CHECK(ib["b_to_a"]["semicausal"] == false);

  const auto ver = nlohmann::json::parse(run("causality verification").out);
  REQUIRE(ver["results"].size() == 4);
  for (const auto& line : ver["results"]) CHECK(line["probability"].get<double>() >= 1 - 1e-12);
  CHECK(ver["decision_table_regenerated"] == true);

  const Run ow = run("causality one-way");
  CHECK(ow.code == 0);
  CHECK(nlohmann::json::parse(ow.out).contains("case"));
}

TEST_CASE("Kraus file checks") {
  const fs::path f = scratch() / "kraus.json";
  auto mat = [](std::vector<std::vector<double>> re) {
    nlohmann::json m = nlohmann::json::array();
    for (const auto& row : re) {
      nlohmann::json r = nlohmann::json::array();
      for (double x : row) r.push_back({x, 0.0});
      m.push_back(r);
    }
    return m;
  };
  // Local z-measurement on Alice's qubit.
  nlohmann::json local = {{"dims", {2, 2}},
                          {"outcomes",
                           {{mat({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}})},
                            {mat({{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})}}}};
  write(f, local.dump());
  const Run ok = run("causality check " + f.string());
  REQUIRE(ok.code == 0);
  CHECK(nlohmann::json::parse(ok.out)["semicausal"] == "both");

  // The same data through the library parser.
  const auto op = rqi::cli::parse_kraus_json(local);
  CHECK(op.dim_a() == 2);
  CHECK(op.dim_b() == 2);

  nlohmann::json incomplete = local;
  incomplete["outcomes"].erase(1);
  write(f, incomplete.dump());
  Run bad = run("causality check " + f.string());
  CHECK(bad.code == 2);
  CHECK(!bad.err.empty());

  nlohmann::json no_dims = local;
  no_dims.erase("dims");
  write(f, no_dims.dump());
  bad = run("causality check " + f.string());
  CHECK(bad.code == 2);
  CHECK(bad.err.find("dims") != std::string::npos);

  nlohmann::json wrong_shape = local;
  wrong_shape["dims"] = {2, 3};
  write(f, wrong_shape.dump());
  CHECK(run("causality check " + f.string()).code == 2);

  write(f, "[1,2,3]");
  CHECK(run("causality check " + f.string()).code == 2);
  CHECK_THROWS_AS(rqi::cli::parse_kraus_json(nlohmann::json::array()), rqi::cli::UsageError);
}

TEST_CASE("config validation in the library") {
  rqi::cli::ChshConfig c;
  c.v = {};
  CHECK_THROWS_AS(rqi::cli::validate(c), rqi::cli::UsageError);
  rqi::cli::SpinEntropyConfig s;
  s.delta_over_m = 0.5;
  CHECK_THROWS_AS(rqi::cli::validate(s), rqi::cli::UsageError);
  CHECK_THROWS_AS(rqi::cli::parse_format("yaml"), rqi::cli::UsageError);
}

#include "mbl/cli.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace mbl;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.push_back("--catalog");
  args.push_back(MBL_TEST_CATALOG_DIR);
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Data rows of a CSV with '#' config lines, keyed by column name.
struct Table {
  std::vector<std::string> header;
  std::vector<std::map<std::string, std::string>> rows;
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

Table parse(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (t.header.empty()) {
      t.header = split(line);
      continue;
    }
    const auto cells = split(line);
    REQUIRE(cells.size() == t.header.size());
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < cells.size(); ++i) row[t.header[i]] = cells[i];
    t.rows.push_back(row);
  }
  return t;
}

double num(const std::string& s) { return std::stod(s); }

}  // namespace

TEST_CASE("grid parsing") {
  CHECK(parse_grid("1,2.5,4") == std::vector<double>{1, 2.5, 4});
  CHECK(parse_grid("0:10:5") == std::vector<double>{0, 5, 10});
  CHECK(parse_grid("0:1:0.25").size() == 5);
}

TEST_CASE("invariants of imaginary quadratic fields") {
  const Run r = run({"invariants", "--field", "q_omega", "--field", "q_i"});
  REQUIRE(r.code == kExitOk);
  const Table t = parse(r.out);
  REQUIRE(t.rows.size() == 2);
  CHECK(std::abs(num(t.rows[0].at("delta")) - std::pow(4.0 / 3, 0.25)) < 1e-9);
  CHECK(std::abs(num(t.rows[1].at("delta")) - 1.0) < 1e-9);
  CHECK(t.rows[0].at("target_status") == "met");
}

TEST_CASE("golden algebra schema") {
  const Run r = run({"invariants", "--algebra", "golden"});
  REQUIRE(r.code == kExitOk);
  const Table t = parse(r.out);
  CHECK(t.header == std::vector<std::string>{"name", "type", "n", "k", "rank", "volume", "hermite",
                                             "det_min_certificate", "det_min", "delta", "rh_lower", "root_disc",
                                             "table_target", "target_status"});
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].at("type") == "algebra");
  CHECK(t.rows[0].at("rank") == "8");
  CHECK(std::abs(num(t.rows[0].at("volume")) - 25) < 1e-9);
  CHECK(std::abs(num(t.rows[0].at("delta")) - 1 / std::sqrt(5.0)) < 1e-9);
  CHECK(r.out.rfind("# command=invariants\n", 0) == 0);
}

TEST_CASE("configuration errors exit with 2") {
  const Run unknown = run({"invariants", "--field", "nope"});
  CHECK(unknown.code == kExitConfig);
  CHECK(unknown.out.empty());
  CHECK_FALSE(unknown.err.empty());
  CHECK(run({"simulate", "--field", "q_i", "--snr-db", "20", "--rate", "1"}).code == kExitConfig);
  CHECK(run({"invariants", "--field", "q_i", "--algebra", "golden", "--lattice-file", "x"}).code == kExitConfig);
  CHECK(run({"frobnicate"}).code == kExitConfig);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("numerical errors exit with 3") {
  const Run r = run({"rates", "--n", "1", "--model", "constant", "--channel", "0", "--snr-db", "10"});
  CHECK(r.code == kExitNumerical);
}

TEST_CASE("simulation output is reproducible") {
  const std::vector<std::string> args = {"simulate", "--field", "q_omega", "--snr-db", "10,20", "--rate", "2",
                                         "--trials", "200", "--seed", "42"};
  const Run a = run(args), b = run(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  std::vector<std::string> threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  CHECK(run(threaded).out == a.out);
  std::vector<std::string> other = args;
  other[other.size() - 1] = "43";
  CHECK(run(other).out != a.out);
}

TEST_CASE("noiseless simulation never errs") {
  const Run r = run({"simulate", "--algebra", "golden", "--model", "iid_rayleigh", "--nr", "2", "--snr-db", "15",
                     "--rate", "1", "--trials", "100", "--seed", "3", "--noiseless"});
  REQUIRE(r.code == kExitOk);
  const Table t = parse(r.out);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].at("status") == "ok");
  CHECK(t.rows[0].at("ml_errors") == "0");
  CHECK(t.rows[0].at("lattice_errors") == "0");
  CHECK(num(t.rows[0].at("lattice_wer")) == 0.0);
}

TEST_CASE("rates clip the theorem rate at zero") {
  const Run r = run({"rates", "--n", "1", "--snr-db", "0,10,60", "--samples", "2000", "--seed", "5"});
  REQUIRE(r.code == kExitOk);
  const Table t = parse(r.out);
  REQUIRE(t.rows.size() == 3);
  CHECK(num(t.rows[0].at("R_thm")) == 0.0);
  CHECK(num(t.rows[1].at("R_thm")) == 0.0);
  CHECK(num(t.rows[2].at("R_thm")) > 0.0);
  for (const auto& row : t.rows) {
    CHECK(std::abs(num(row.at("gap")) - (num(row.at("C_est")) - num(row.at("R_thm")))) < 1e-9);
  }
}

TEST_CASE("chernoff subcommand") {
  const Run r = run({"chernoff", "--delta", "1.3862943611198906"});
  REQUIRE(r.code == kExitOk);
  const Table t = parse(r.out);
  REQUIRE(t.rows.size() == 1);
  CHECK(std::abs(num(t.rows[0].at("v_delta")) - 0.5) < 1e-9);
  CHECK(std::abs(num(t.rows[0].at("K")) - 0.40940) < 1e-4);
  CHECK(run({"chernoff", "--n", "2", "--nr", "2", "--k", "10"}).code == kExitConfig);
}

TEST_CASE("catalog verification") {
  const Run r = run({"catalog-verify"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("fail") == std::string::npos);
}

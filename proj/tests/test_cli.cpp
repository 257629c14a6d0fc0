// End-to-end checks against the built CLI binary; its path arrives in the
// QDOT_CLI environment variable.
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string cli_path() {
  const char* env = std::getenv("QDOT_CLI");
  REQUIRE_MESSAGE(env != nullptr, "QDOT_CLI must point at the qdot binary");
  return env;
}

fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("qdot_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out_file = scratch_dir() / ("out" + std::to_string(counter));
  const fs::path err_file = scratch_dir() / ("err" + std::to_string(counter));
  ++counter;

  const std::string command = cli_path() + " " + args + " > " +
                              out_file.string() + " 2> " + err_file.string();
  const int status = std::system(command.c_str());

  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> lines;
  std::stringstream ss(csv);
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  return lines;
}

std::vector<double> split_row(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
  return out;
}

std::string manifest_command(const std::string& csv) {
  std::stringstream ss(csv);
  std::string line;
  const std::string prefix = "# command: ";
  while (std::getline(ss, line))
    if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
  return {};
}

fs::path write_file(const std::string& name, const std::string& payload) {
  const fs::path p = scratch_dir() / name;
  std::ofstream out(p, std::ios::binary);
  out << payload;
  return p;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("presets lists every figure") {
  const CliResult r = run_cli("presets");
  CHECK(r.exit_code == 0);
  for (const char* id : {"1:", "2:", "3a:", "3b:", "4a:", "4b:"})
    CHECK(r.out.find(id) != std::string::npos);
}

TEST_CASE("evolve starts in the vacuum with no entanglement") {
  const CliResult r =
      run_cli("evolve --gamma-ratio 0.05 --eta-ratio 0.1 --steps 11");
  REQUIRE(r.exit_code == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 12);  // header + 11 rows
  CHECK(lines[0] == "omega_t,p0,p1,p2,negativity,concurrence");
  const auto first = split_row(lines[1]);
  CHECK(first[0] == 0.0);
  CHECK(first[1] == 1.0);
  CHECK(first[4] == 0.0);
}

TEST_CASE("uncoupled evolve keeps the negativity column at zero") {
  const CliResult r =
      run_cli("evolve --delta-ratio 0 --eta-ratio 0 --steps 101");
  REQUIRE(r.exit_code == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 102);
  for (std::size_t i = 1; i < lines.size(); ++i)
    CHECK(split_row(lines[i])[4] <= 1e-9);
}

TEST_CASE("evolve validates its flags") {
  CHECK(run_cli("evolve --t-max 0 --steps 2").exit_code == 2);
  CHECK(run_cli("evolve --steps 1").exit_code == 2);
  CHECK(run_cli("evolve --gamma-ratio -1").exit_code == 2);
  CHECK(run_cli("evolve --method nonsense").exit_code == 2);
  CHECK(run_cli("evolve --initial /nonexistent.json").exit_code == 2);
}

TEST_CASE("evolve rejects closed-form with dephasing") {
  const CliResult r =
      run_cli("evolve --gamma-ratio 0.1 --method closed-form");
  CHECK(r.exit_code == 2);
}

TEST_CASE("sweep figure 1 emits the full grid with its manifest") {
  const CliResult r = run_cli("sweep --figure 1 --steps 51");
  REQUIRE(r.exit_code == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 1 + 101 * 51);
  CHECK(lines[0] == "param_value,omega_t,p0,p1,p2");
  CHECK(r.out.find("# eta_ratio = 0.1") != std::string::npos);
  CHECK(r.out.find("# param_axis = delta_ratio [0, 10] points=101") !=
        std::string::npos);
}

TEST_CASE("sweep figure 4a records its dephasing rate") {
  const CliResult r =
      run_cli("sweep --figure 4a --steps 11 --t-max 5");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("# gamma_ratio = 0.01") != std::string::npos);
  CHECK(r.out.find("# method = lindblad") != std::string::npos);
}

TEST_CASE("sweep flag conflicts and unknown figures exit with usage errors") {
  CHECK(run_cli("sweep --figure 9").exit_code == 2);
  CHECK(run_cli("sweep --figure 1 --param eta-ratio").exit_code == 2);
  CHECK(run_cli("sweep --figure 1 --delta-ratio 1").exit_code == 2);
  CHECK(run_cli("sweep").exit_code == 2);
}

TEST_CASE("explicit sweep round-trips through its manifest") {
  const fs::path first = scratch_dir() / "explicit1.csv";
  const CliResult r = run_cli(
      "sweep --param eta-ratio --param-min 0 --param-max 2 "
      "--param-points 5 --steps 21 --t-max 10 --observables p2,negativity "
      "--out " + first.string());
  REQUIRE(r.exit_code == 0);
  const std::string csv1 = slurp(first);
  const std::string command = manifest_command(csv1);
  REQUIRE(!command.empty());

  const fs::path second = scratch_dir() / "explicit2.csv";
  const std::string args = command.substr(command.find(' ') + 1);
  const CliResult rerun =
      run_cli("sweep " + args + " --out " + second.string());
  REQUIRE(rerun.exit_code == 0);
  CHECK(csv1 == slurp(second));
}

TEST_CASE("evolve round-trips through its manifest") {
  const fs::path first = scratch_dir() / "evolve1.csv";
  const CliResult r = run_cli(
      "evolve --delta-ratio 0.5 --eta-ratio 2 --gamma-ratio 0.02 "
      "--steps 31 --t-max 7 --out " + first.string());
  REQUIRE(r.exit_code == 0);
  const std::string csv1 = slurp(first);
  const std::string command = manifest_command(csv1);
  REQUIRE(command.rfind("evolve ", 0) == 0);
  CHECK(command.find("--method lindblad") != std::string::npos);

  const fs::path second = scratch_dir() / "evolve2.csv";
  const CliResult rerun = run_cli(command + " --out " + second.string());
  REQUIRE(rerun.exit_code == 0);
  CHECK(csv1 == slurp(second));
}

TEST_CASE("sweep determinism at the byte level") {
  const fs::path a = scratch_dir() / "det_a.csv";
  const fs::path b = scratch_dir() / "det_b.csv";
  REQUIRE(run_cli("sweep --figure 2 --steps 26 --out " + a.string())
              .exit_code == 0);
  REQUIRE(run_cli("sweep --figure 2 --steps 26 --out " + b.string())
              .exit_code == 0);
  const std::string bytes = slurp(a);
  CHECK(!bytes.empty());
  CHECK(bytes == slurp(b));
}

TEST_CASE("entangle reports the maximally entangled symmetric state") {
  const fs::path rho = write_file(
      "sym.json",
      "{\"dim\": 3, \"rho\": [[0,0],[0,0],[0,0],[0,0],[1,0],[0,0],[0,0],"
      "[0,0],[0,0]]}");
  const CliResult r = run_cli("entangle --rho " + rho.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("\"negativity\": 1,") != std::string::npos);
  CHECK(r.out.find("\"concurrence\": 1}") != std::string::npos);
}

TEST_CASE("entangle reports a separable four-level state") {
  std::string entries = "[[1,0]";
  for (int k = 1; k < 16; ++k) entries += ",[0,0]";
  entries += "]";
  const fs::path rho =
      write_file("vac4.json", "{\"dim\": 4, \"rho\": " + entries + "}");
  const CliResult r = run_cli("entangle --rho " + rho.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("\"negativity\": 0,") != std::string::npos);
}

TEST_CASE("entangle flags invalid density matrices with exit 4") {
  const fs::path rho = write_file(
      "nonherm.json",
      "{\"dim\": 3, \"rho\": [[0.5,0],[0.3,0.2],[0,0],[0,0],[0.5,0],[0,0],"
      "[0,0],[0,0],[0,0]]}");
  const CliResult r = run_cli("entangle --rho " + rho.string());
  CHECK(r.exit_code == 4);
  CHECK(r.err.find("hermiticity defect") != std::string::npos);

  const fs::path bad = write_file("bad.json", "{\"dim\": 3");
  CHECK(run_cli("entangle --rho " + bad.string()).exit_code == 2);
}

TEST_CASE("phonon-rate analytic values and divergence guard") {
  const CliResult g2 =
      run_cli("phonon-rate --n 1 --cutoff 1 --temperature 0");
  REQUIRE(g2.exit_code == 0);
  CHECK(std::stod(g2.out) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(g2.err.find("prefactor") != std::string::npos);

  const CliResult g4 =
      run_cli("phonon-rate --n 3 --cutoff 1 --temperature 0");
  REQUIRE(g4.exit_code == 0);
  CHECK(std::stod(g4.out) == doctest::Approx(6.0).epsilon(1e-8));

  CHECK(run_cli("phonon-rate --n 0 --cutoff 1 --temperature 5").exit_code ==
        2);
  CHECK(run_cli("phonon-rate --n 1 --cutoff 1").exit_code == 2);
}

TEST_CASE("config files feed defaults, flags override") {
  const fs::path cfg = write_file("evolve.cfg",
                                  "delta-ratio=2\n"
                                  "steps=11\n");
  const CliResult r =
      run_cli("evolve --config " + cfg.string() + " --steps 21");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("--delta-ratio 2 ") != std::string::npos);
  CHECK(r.out.find("--steps 21 ") != std::string::npos);
  CHECK(data_lines(r.out).size() == 22);
}

TEST_SUITE_END();

#include <doctest.h>

#include <random>
#include <sstream>

#include "qdot/errors.hpp"
#include "qdot/io.hpp"

using namespace qdot;

TEST_SUITE_BEGIN("io");

TEST_CASE("significant-digit formatting") {
  CHECK(format_sig(1.0, 9) == "1");
  CHECK(format_sig(0.05, 9) == "0.05");
  CHECK(format_sig(1.0 / 3.0, 9) == "0.333333333");
  CHECK(format_sig(1.0 / 3.0, 12) == "0.333333333333");
  CHECK(format_sig(-2.5e-13, 9) == "-2.5e-13");
  CHECK_THROWS_AS(format_sig(std::nan(""), 9), NumericalError);
  CHECK_THROWS_AS(format_sig(INFINITY, 9), NumericalError);
}

TEST_CASE("round-trip formatting is exact") {
  std::mt19937 rng(401);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  CHECK(format_roundtrip(0.1) == "0.1");
  CHECK(format_roundtrip(25.0) == "25");
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng);
    CHECK(std::strtod(format_roundtrip(x).c_str(), nullptr) == x);
  }
}

TEST_CASE("density-matrix JSON round trip") {
  std::mt19937 rng(402);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXcd a(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = Complex(n(rng), n(rng));
  Eigen::MatrixXcd rho = a * a.adjoint();
  rho /= rho.trace().real();

  std::stringstream buffer;
  write_density_json(buffer, rho);
  const Eigen::MatrixXcd back = read_density_json(buffer);
  REQUIRE(back.rows() == 3);
  CHECK((back - rho).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("density-matrix JSON rejects malformed input") {
  auto parse = [](const std::string& text) {
    std::stringstream in(text);
    return read_density_json(in);
  };
  CHECK_THROWS_AS(parse("not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse("{\"rho\": []}"), std::invalid_argument);
  CHECK_THROWS_AS(parse("{\"dim\": 2, \"rho\": []}"), std::invalid_argument);
  CHECK_THROWS_AS(parse("{\"dim\": 3, \"rho\": [[0, 0]]}"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse("{\"dim\": 3}"), std::invalid_argument);
  // entries must be [re, im] pairs
  std::string flat = "{\"dim\": 3, \"rho\": [";
  for (int k = 0; k < 9; ++k) flat += k ? ",1" : "1";
  flat += "]}";
  CHECK_THROWS_AS(parse(flat), std::invalid_argument);
}

TEST_CASE("initial-state JSON accepts vectors and matrices") {
  std::stringstream vec(
      "{\"dim\": 3, \"state\": [[1, 0], [0, 0], [0, 0]]}");
  const InitialState s = read_initial_state_json(vec);
  REQUIRE(std::holds_alternative<StateVector3>(s));
  CHECK(std::get<StateVector3>(s)(0) == Complex(1, 0));

  std::stringstream mat(
      "{\"dim\": 3, \"rho\": [[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],"
      "[0,0],[0,0]]}");
  const InitialState m = read_initial_state_json(mat);
  CHECK(std::holds_alternative<DensityMatrix3>(m));

  std::stringstream bad("{\"dim\": 3}");
  CHECK_THROWS_AS(read_initial_state_json(bad), std::invalid_argument);
}

TEST_CASE("manifest headers and CSV layout") {
  RunManifest manifest;
  manifest.command = "evolve --t-max 1 --steps 2";
  manifest.resolved.emplace_back("method", "closed-form");

  TimeSeries series;
  series.times = {0.0, 1.0};
  series.values = {1.0, 0.0, 0.5, 0.25};
  const std::vector<Observable> obs = {Observable::P0, Observable::P1};

  std::ostringstream out;
  write_evolve_csv(out, manifest, series, obs);
  const std::string text = out.str();
  CHECK(text.find("# qdot ") == 0);
  CHECK(text.find("# command: evolve --t-max 1 --steps 2\n") !=
        std::string::npos);
  CHECK(text.find("# method = closed-form\n") != std::string::npos);
  CHECK(text.find("omega_t,p0,p1\n") != std::string::npos);
  CHECK(text.find("\n0,1,0\n") != std::string::npos);
  CHECK(text.find("\n1,0.5,0.25\n") != std::string::npos);
  CHECK(text.find("\r") == std::string::npos);
}

TEST_CASE("csv writers refuse non-finite values") {
  RunManifest manifest;
  manifest.command = "evolve";
  TimeSeries series;
  series.times = {0.0};
  series.values = {std::nan("")};
  std::ostringstream out;
  CHECK_THROWS_AS(
      write_evolve_csv(out, manifest, series, {Observable::P0}),
      NumericalError);
}

TEST_SUITE_END();

#include "qdot/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "qdot/errors.hpp"
#include "qdot/version.hpp"

namespace qdot {

std::string format_sig(double x, int digits) {
  if (!std::isfinite(x))
    throw NumericalError("refusing to emit a non-finite value");
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string format_roundtrip(double x) {
  if (!std::isfinite(x))
    throw NumericalError("refusing to emit a non-finite value");
  char buf[48];
  for (int digits : {15, 16, 17}) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

namespace {

Eigen::MatrixXcd parse_complex_matrix(const nlohmann::json& entries, int dim,
                                      const char* key) {
  if (!entries.is_array() ||
      entries.size() != static_cast<std::size_t>(dim) * dim)
    throw std::invalid_argument(std::string(key) +
                                " must hold dim*dim [re, im] pairs");
  Eigen::MatrixXcd m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const auto& pair = entries[static_cast<std::size_t>(i) * dim + j];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
          !pair[1].is_number())
        throw std::invalid_argument("matrix entries must be [re, im] pairs");
      m(i, j) = Complex(pair[0].get<double>(), pair[1].get<double>());
    }
  }
  return m;
}

nlohmann::json load_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  return doc;
}

}  // namespace

Eigen::MatrixXcd read_density_json(std::istream& in) {
  const nlohmann::json doc = load_json(in);
  if (!doc.contains("dim") || !doc["dim"].is_number_integer())
    throw std::invalid_argument("missing integer \"dim\" key");
  const int dim = doc["dim"].get<int>();
  if (dim != 3 && dim != 4)
    throw std::invalid_argument("\"dim\" must be 3 or 4");
  if (!doc.contains("rho"))
    throw std::invalid_argument("missing \"rho\" key");
  return parse_complex_matrix(doc["rho"], dim, "rho");
}

void write_density_json(std::ostream& out, const Eigen::MatrixXcd& rho) {
  if (rho.rows() != rho.cols())
    throw std::invalid_argument("density matrix must be square");
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < rho.rows(); ++i)
    for (Eigen::Index j = 0; j < rho.cols(); ++j)
      entries.push_back({rho(i, j).real(), rho(i, j).imag()});
  const nlohmann::json doc = {{"dim", rho.rows()}, {"rho", entries}};
  out << doc.dump(2) << '\n';
}

InitialState read_initial_state_json(std::istream& in) {
  const nlohmann::json doc = load_json(in);
  if (doc.contains("state")) {
    const auto& entries = doc["state"];
    if (!entries.is_array() || entries.size() != 3)
      throw std::invalid_argument("\"state\" must hold 3 [re, im] pairs");
    StateVector3 b;
    for (int i = 0; i < 3; ++i) {
      const auto& pair = entries[i];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
          !pair[1].is_number())
        throw std::invalid_argument("state entries must be [re, im] pairs");
      b(i) = Complex(pair[0].get<double>(), pair[1].get<double>());
    }
    return b;
  }
  if (doc.contains("rho")) {
    if (!doc.contains("dim") || doc["dim"].get<int>() != 3)
      throw std::invalid_argument("initial density matrix must have dim 3");
    return DensityMatrix3(parse_complex_matrix(doc["rho"], 3, "rho"));
  }
  throw std::invalid_argument("initial state needs a \"state\" or \"rho\" key");
}

void RunManifest::write_header(std::ostream& out) const {
  out << "# qdot " << kVersion << "\n";
  out << "# command: " << command << "\n";
  for (const auto& [key, value] : resolved)
    out << "# " << key << " = " << value << "\n";
}

void write_evolve_csv(std::ostream& out, const RunManifest& manifest,
                      const TimeSeries& series,
                      const std::vector<Observable>& observables) {
  manifest.write_header(out);
  out << "omega_t";
  for (Observable o : observables) out << ',' << to_string(o);
  out << '\n';
  const std::size_t n_obs = observables.size();
  for (std::size_t it = 0; it < series.times.size(); ++it) {
    out << format_sig(series.times[it], 9);
    for (std::size_t io = 0; io < n_obs; ++io)
      out << ',' << format_sig(series.values[it * n_obs + io], 9);
    out << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const RunManifest& manifest,
                     const SweepResult& result) {
  manifest.write_header(out);
  out << "param_value,omega_t";
  for (Observable o : result.observables) out << ',' << to_string(o);
  out << '\n';
  const std::size_t n_obs = result.observables.size();
  for (std::size_t ip = 0; ip < result.param_values.size(); ++ip) {
    for (std::size_t it = 0; it < result.times.size(); ++it) {
      out << format_sig(result.param_values[ip], 9) << ','
          << format_sig(result.times[it], 9);
      for (std::size_t io = 0; io < n_obs; ++io)
        out << ',' << format_sig(result.at(static_cast<int>(ip),
                                           static_cast<int>(it),
                                           static_cast<int>(io)),
                                 9);
      out << '\n';
    }
  }
}

}  // namespace qdot

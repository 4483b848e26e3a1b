#include "qht/state_io.hpp"

#include <fstream>

namespace qht {

using nlohmann::json;

namespace {

std::vector<std::vector<double>> to_rows(const Eigen::MatrixXd& m) {
  std::vector<std::vector<double>> rows(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    rows[i].resize(m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  }
  return rows;
}

Eigen::MatrixXd parse_rows(const json& rows, Eigen::Index dim, const std::string& field) {
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != dim)
    throw std::runtime_error("state codec: field '" + field + "' must be a " +
                             std::to_string(dim) + "-row array");
  Eigen::MatrixXd out(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim)
      throw std::runtime_error("state codec: field '" + field + "' row " +
                               std::to_string(i) + " must have " + std::to_string(dim) +
                               " entries");
    for (Eigen::Index j = 0; j < dim; ++j) {
      if (!row[j].is_number())
        throw std::runtime_error("state codec: field '" + field + "' entry (" +
                                 std::to_string(i) + "," + std::to_string(j) +
                                 ") is not a number");
      out(i, j) = row[j].get<double>();
    }
  }
  return out;
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json j;
  j["dim"] = m.rows();
  j["re"] = to_rows(m.real());
  j["im"] = to_rows(m.imag());
  return j;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer())
    throw std::runtime_error("state codec: missing integer field 'dim'");
  const auto dim = j["dim"].get<Eigen::Index>();
  if (dim < 1) throw std::runtime_error("state codec: field 'dim' must be positive");
  if (!j.contains("re")) throw std::runtime_error("state codec: missing field 're'");
  if (!j.contains("im")) throw std::runtime_error("state codec: missing field 'im'");
  const Eigen::MatrixXd re = parse_rows(j["re"], dim, "re");
  const Eigen::MatrixXd im = parse_rows(j["im"], dim, "im");
  return re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
}

json state_to_json(const DensityMatrix& rho) { return matrix_to_json(rho.mat()); }

DensityMatrix state_from_json(const json& j) { return DensityMatrix(matrix_from_json(j)); }

void save_state(const DensityMatrix& rho, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << state_to_json(rho).dump(2) << '\n';
}

DensityMatrix load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open state file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("state file '" + path + "': " + e.what());
  }
  try {
    return state_from_json(j);
  } catch (const std::exception& e) {
    throw std::runtime_error("state file '" + path + "': " + e.what());
  }
}

json ensemble_to_json(const EnsembleData& ens) {
  json j;
  j["priors"] = ens.priors;
  j["states"] = json::array();
  for (const auto& s : ens.states) j["states"].push_back(state_to_json(s));
  return j;
}

EnsembleData ensemble_from_json(const json& j) {
  if (!j.is_object() || !j.contains("priors") || !j.contains("states"))
    throw std::runtime_error("ensemble codec: fields 'priors' and 'states' required");
  EnsembleData ens;
  for (const auto& p : j["priors"]) {
    if (!p.is_number()) throw std::runtime_error("ensemble codec: non-numeric prior");
    ens.priors.push_back(p.get<double>());
  }
  for (const auto& s : j["states"]) ens.states.push_back(state_from_json(s));
  if (ens.priors.size() != ens.states.size())
    throw std::runtime_error("ensemble codec: priors/states length mismatch");
  return ens;
}

EnsembleData load_ensemble(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open ensemble file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("ensemble file '" + path + "': " + e.what());
  }
  try {
    return ensemble_from_json(j);
  } catch (const std::exception& e) {
    throw std::runtime_error("ensemble file '" + path + "': " + e.what());
  }
}

void save_ensemble(const EnsembleData& ens, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << ensemble_to_json(ens).dump(2) << '\n';
}

}  // namespace qht

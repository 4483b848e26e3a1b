// JSON codec for states and ensembles.
//
// State file format: {"dim": n, "re": [[...]], "im": [[...]]} row-major.
// Ensemble file format: {"priors": [...], "states": [state-object, ...]}.
// Round-trips are bit-exact for finite doubles.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qht/matrix.hpp"

namespace qht {

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const nlohmann::json& j);

void save_state(const DensityMatrix& rho, const std::string& path);
/// Throws std::runtime_error naming the file and offending field on
/// malformed input.
DensityMatrix load_state(const std::string& path);

struct EnsembleData {
  std::vector<double> priors;
  std::vector<DensityMatrix> states;
};
nlohmann::json ensemble_to_json(const EnsembleData& ens);
EnsembleData ensemble_from_json(const nlohmann::json& j);
EnsembleData load_ensemble(const std::string& path);
void save_ensemble(const EnsembleData& ens, const std::string& path);

}  // namespace qht

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "entangle/amplitudes.hpp"
#include "entangle/mps_cloning.hpp"
#include "entangle/slocc.hpp"

namespace entangle::cli {

using json = nlohmann::json;

// Usage error (unknown experiment, malformed flags): exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Output {
  std::optional<Table> table;  // CSV-capable result
  json document;               // JSON result (tables are converted when absent)
  json params;                 // effective parameters
};

using Runner = Output (*)(const json& params);

const std::map<std::string, Runner>& registry();
Output run(const std::string& name, const json& params);

std::string to_csv(const Output& out);
json to_json(const Output& out);

// JSON encodings.
PureState state_from_json(const json& j);
json state_to_json(const PureState& psi);
json schmidt_to_json(const SchmidtDecomposition& d);
json class_to_json(const SloccClass& c);
json mps_to_json(const MPS& m);

// Shared computations (also used by the acceptance checks).
struct PdcSetup {
  double L_p = 2.135, L_q = 7.455;
  double half_width = 60.0;
  int nodes = 3000;
};

// d2[i][j] for m0s[i], betas[j]; m0 = n0, both bases centred at zero.
std::vector<std::vector<double>> pdc_d2_table(const std::vector<int>& m0s, const std::vector<double>& betas,
                                              const PdcSetup& s = {});
SchmidtDecomposition pdc_decomposition(double beta, int m0, const PdcSetup& s = {}, double* d2 = nullptr);

struct EvolutionPoint {
  double t = 0.0, gamma = 0.0;
  double K = 0.0, d2 = 0.0, entropy = 0.0;
};

std::vector<EvolutionPoint> qed_evolution(const std::vector<double>& times, int m0 = 11, const QedParams& prm = {},
                                          double half_width = 12.0, int nodes = 1200);

struct UnstableSetup {
  UnstableParams base{};
  int m0 = 60;
  int nodes = 1200;
  double p_scale = 0.1, q_scale = 0.04;  // basis widths around the ridge
  double span = 12.0;                    // domain half-width in basis widths
};

std::vector<EvolutionPoint> unstable_grid(const std::vector<double>& times, const std::vector<double>& gammas,
                                          const UnstableSetup& s = {});
// L2 ratio ||e^{-(p-q)^2/s^2} I_cut|| / ||amplitude|| on an n x n grid of the decomposition domain.
double unstable_cut_ratio(double t, double gamma, const UnstableSetup& s = {}, int n = 200);

}  // namespace entangle::cli

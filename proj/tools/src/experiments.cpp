#include "entangle/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "entangle/protocols.hpp"
#include "entangle/rel_channels.hpp"

namespace entangle::cli {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Merge user parameters into defaults; unknown keys and type mismatches are parameter errors.
json merge(json defaults, const json& user) {
  if (user.is_null()) return defaults;
  if (!user.is_object()) throw ParameterError("parameters must be a JSON object");
  for (const auto& [k, v] : user.items()) {
    if (!defaults.contains(k)) throw ParameterError("unknown parameter '" + k + "'");
    const json& d = defaults[k];
    const bool ok = d.is_null() || (d.is_number() && v.is_number()) || (d.is_boolean() && v.is_boolean()) ||
                    (d.is_string() && v.is_string()) || (d.is_array() && v.is_array()) ||
                    (d.is_array() && v.is_number()) || (d.is_object() && v.is_object());
    if (!ok) throw ParameterError("parameter '" + k + "' has the wrong type");
    defaults[k] = (d.is_array() && v.is_number()) ? json::array({v}) : v;
  }
  return defaults;
}

double num(const json& p, const char* k) {
  if (!p.at(k).is_number()) throw ParameterError(std::string("parameter '") + k + "' must be a number");
  return p.at(k).get<double>();
}

int integer(const json& p, const char* k) {
  const double v = num(p, k);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ParameterError(std::string("parameter '") + k + "' must be an integer");
  return static_cast<int>(v);
}

std::vector<double> nums(const json& p, const char* k) {
  std::vector<double> out;
  for (const auto& v : p.at(k)) {
    if (!v.is_number()) throw ParameterError(std::string("parameter '") + k + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  if (out.empty()) throw ParameterError(std::string("parameter '") + k + "' must not be empty");
  return out;
}

std::vector<int> ints(const json& p, const char* k) {
  std::vector<int> out;
  for (double v : nums(p, k)) {
    if (v != std::floor(v)) throw ParameterError(std::string("parameter '") + k + "' must hold integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<double> linspace(double a, double b, int n) {
  require(n >= 2, "grid needs at least two points");
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = a + (b - a) * i / (n - 1);
  return x;
}

json load_state_param(const json& v) {
  if (v.is_object()) return v;
  if (!v.is_string() || v.get<std::string>().empty())
    throw ParameterError("a state (--state FILE or an inline state object) is required");
  std::ifstream in(v.get<std::string>());
  if (!in) throw ParameterError("cannot open state file '" + v.get<std::string>() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParameterError(std::string("state file is not valid JSON: ") + e.what());
  }
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const MatrixXc& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) r.push_back(cplx_json(M(i, j)));
    rows.push_back(r);
  }
  return rows;
}

Output tabulated(json params, Table t) {
  Output o;
  o.params = std::move(params);
  o.table = std::move(t);
  return o;
}

PdcSetup pdc_setup(const json& p) {
  PdcSetup s;
  s.L_p = num(p, "L_p");
  s.L_q = num(p, "L_q");
  s.half_width = num(p, "half_width");
  s.nodes = integer(p, "nodes");
  require(s.half_width > 0.0 && s.nodes >= 64, "pdc grid: half_width > 0 and nodes >= 64 required");
  return s;
}

// ---- experiments ----

Output run_pdc_table(const json& user) {
  const json p = merge({{"L_p", 2.135}, {"L_q", 7.455}, {"m0", {10, 15, 20, 25}}, {"beta", {0.5, 1.0, 2.0}},
                        {"half_width", 60.0}, {"nodes", 3000}},
                       user);
  const std::vector<int> m0s = ints(p, "m0");
  const std::vector<double> betas = nums(p, "beta");
  const auto d2 = pdc_d2_table(m0s, betas, pdc_setup(p));
  Table t;
  t.columns.push_back("m0");
  for (double b : betas) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "d2_beta_%g", b);
    t.columns.push_back(buf);
  }
  for (std::size_t i = 0; i < m0s.size(); ++i) {
    std::vector<double> row{static_cast<double>(m0s[i])};
    row.insert(row.end(), d2[i].begin(), d2[i].end());
    t.rows.push_back(row);
  }
  return tabulated(p, t);
}

Output run_pdc_modes(const json& user) {
  const json p = merge({{"L_p", 2.135}, {"L_q", 7.455}, {"beta", 1.0}, {"m0", 25}, {"modes", 2}, {"x_min", -6.0},
                        {"x_max", 6.0}, {"points", 241}, {"half_width", 60.0}, {"nodes", 3000}},
                       user);
  const SchmidtDecomposition d = pdc_decomposition(num(p, "beta"), integer(p, "m0"), pdc_setup(p));
  const int modes = integer(p, "modes");
  require(modes >= 1 && modes <= d.size(), "pdc-modes: modes must lie in [1, rank]");
  Table t;
  t.columns.push_back("x");
  for (int i = 0; i < modes; ++i)
    for (const char* side : {"psi1", "psi2"})
      for (const char* part : {"re", "im"}) t.columns.push_back(std::string(side) + "_" + std::to_string(i) + "_" + part);
  for (double x : linspace(num(p, "x_min"), num(p, "x_max"), integer(p, "points"))) {
    std::vector<double> row{x};
    for (int i = 0; i < modes; ++i)
      for (int side : {1, 2}) {
        const cplx v = evaluate_mode(d, side, i, x);
        row.push_back(v.real());
        row.push_back(v.imag());
      }
    t.rows.push_back(row);
  }
  return tabulated(p, t);
}

Output run_pdc_spectrum(const json& user) {
  const json p = merge({{"L_p", 2.135}, {"L_q", 7.455}, {"beta", 1.0}, {"m0", 25}, {"half_width", 60.0}, {"nodes", 3000}},
                       user);
  double d2 = 0.0;
  const SchmidtDecomposition d = pdc_decomposition(num(p, "beta"), integer(p, "m0"), pdc_setup(p), &d2);
  const double total = d.lambdas.sum() / (1.0 - d2);  // ||f||^2
  Table t{{"n", "lambda", "cumulative"}, {}};
  double cum = 0.0;
  for (int n = 0; n < d.size(); ++n) {
    cum += d.lambdas(n) / total;
    t.rows.push_back({static_cast<double>(n), d.lambdas(n) / total, cum});
  }
  return tabulated(p, t);
}

Output run_qed_evolution(const json& user) {
  const json p = merge({{"t", {1.0, 2.0, 3.0, 4.0}}, {"m0", 11}, {"pa0_over_m", 0.002}, {"sigma_over_m", 0.0002},
                        {"include_oscillatory", true}, {"half_width", 12.0}, {"nodes", 1200}},
                       user);
  QedParams q;
  q.pa0_over_m = num(p, "pa0_over_m");
  q.sigma_over_m = num(p, "sigma_over_m");
  q.include_oscillatory = p.at("include_oscillatory").get<bool>();
  const auto pts = qed_evolution(nums(p, "t"), integer(p, "m0"), q, num(p, "half_width"), integer(p, "nodes"));
  Table t{{"t", "K", "d2", "entropy"}, {}};
  for (const auto& e : pts) t.rows.push_back({e.t, e.K, e.d2, e.entropy});
  return tabulated(p, t);
}

Output run_unstable_k(const json& user) {
  const json p = merge({{"t", {50.0, 100.0, 150.0, 200.0}}, {"gamma", {0.0, 0.005, 0.015, 0.03}}, {"m_g", 0.7},
                        {"m_gamma", 0.1}, {"sigma", 0.2}, {"m0", 60}, {"nodes", 1200}, {"p_scale", 0.1},
                        {"q_scale", 0.04}, {"span", 12.0}, {"cut_ratio", false}},
                       user);
  UnstableSetup s;
  s.base.m_g = num(p, "m_g");
  s.base.m_gamma = num(p, "m_gamma");
  s.base.sigma = num(p, "sigma");
  s.m0 = integer(p, "m0");
  s.nodes = integer(p, "nodes");
  s.p_scale = num(p, "p_scale");
  s.q_scale = num(p, "q_scale");
  s.span = num(p, "span");
  const bool cut = p.at("cut_ratio").get<bool>();
  const auto pts = unstable_grid(nums(p, "t"), nums(p, "gamma"), s);
  Table t{{"t", "gamma", "K", "d2", "entropy"}, {}};
  if (cut) t.columns.push_back("cut_ratio");
  for (const auto& e : pts) {
    std::vector<double> row{e.t, e.gamma, e.K, e.d2, e.entropy};
    if (cut) row.push_back(unstable_cut_ratio(e.t, e.gamma, s));
    t.rows.push_back(row);
  }
  return tabulated(p, t);
}

Output run_delta_spectrum(const json& user) {
  const json p = merge({{"N", {1, 2, 4, 8, 16, 64, 256, 1024, 1048576}}, {"cutoff", 5}}, user);
  const int n = integer(p, "cutoff");
  const MatrixXc C = delta_coefficients(OrthonormalBasis{}, n);
  const double dev = (C - MatrixXc::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff();
  Table t{{"N", "entropy", "identity_deviation"}, {}};
  for (int N : ints(p, "N")) t.rows.push_back({static_cast<double>(N), truncated_delta_entropy(N), dev});
  return tabulated(p, t);
}

Output run_werner_boundary(const json& user) {
  const json p = merge({{"w_over_2m", 0.1}, {"alpha_max", 10.0}, {"points", 101}}, user);
  const double w2m = num(p, "w_over_2m");
  Table t{{"alpha", "nz_prime", "F_boundary"}, {}};
  for (double a : linspace(0.0, num(p, "alpha_max"), integer(p, "points"))) {
    const double nz = nz_prime({2.0 * w2m, a});
    t.rows.push_back({a, nz, distill_boundary(nz)});
  }
  return tabulated(p, t);
}

Output run_magnetic(const json& user) {
  const json p = merge({{"sweep", "gammaB0"}, {"values", json::array()}, {"m", 100.0}, {"p0", 10.0}, {"sigma", 2.0},
                        {"L", 3.0}, {"gammaB0", 0.2}, {"nodes", 4001}},
                       user);
  const std::string sweep = p.at("sweep");
  if (sweep != "gammaB0" && sweep != "L" && sweep != "sigma") throw ParameterError("magnetic-channel: sweep must be gammaB0, L or sigma");
  std::vector<double> values;
  if (p.at("values").empty())
    values = sweep == "gammaB0" ? linspace(0.0, 0.4, 21) : sweep == "L" ? linspace(0.0, 10.0, 41) : linspace(1.0, 3.0, 3);
  else
    values = nums(p, "values");
  MagneticChannelParams ch{num(p, "m"), num(p, "p0"), num(p, "sigma"), num(p, "L"), num(p, "gammaB0")};
  Table t{{sweep, "negativity", "bob_up", "bob_down"}, {}};
  for (double v : values) {
    (sweep == "gammaB0" ? ch.gammaB0 : sweep == "L" ? ch.L : ch.sigma) = v;
    const DensityMatrix bob = no_signalling_bob(ch, integer(p, "nodes"));
    t.rows.push_back({v, fermion_negativity(ch, integer(p, "nodes")), bob.matrix(0, 0).real(), bob.matrix(1, 1).real()});
  }
  return tabulated(p, t);
}

Output run_optical(const json& user) {
  const json p = merge({{"BtildeL", {0.0, 0.1, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0}}, {"sigma", {2.0, 0.5}},
                        {"p0", 10.0}, {"w0", 10.0}, {"window", 1e-3}},
                       user);
  Table t{{"BtildeL", "sigma", "negativity"}, {}};
  for (double s : nums(p, "sigma"))
    for (double B : nums(p, "BtildeL")) {
      OpticalChannelParams ch{num(p, "p0"), s, num(p, "w0"), B, num(p, "window")};
      t.rows.push_back({B, s, photon_negativity(ch)});
    }
  return tabulated(p, t);
}

Output run_spinmom(const json& user) {
  const json p = merge({{"points", 91}, {"modes", 2}}, user);
  const int n = integer(p, "modes");
  require(n >= 2, "spinmom: modes must be at least 2");
  Table t{{"delta_theta", "negativity"}, {}};
  // Angles spread evenly over [0, delta_theta].
  for (double d : linspace(0.0, 0.5 * kPi, integer(p, "points"))) {
    std::vector<double> th(n);
    for (int i = 0; i < n; ++i) th[i] = d * i / (n - 1);
    t.rows.push_back({d, spinmom_negativity(th)});
  }
  return tabulated(p, t);
}

Output run_scattering(const json& user) {
  const json p = merge({{"points", 90}}, user);
  const int n = integer(p, "points");
  require(n >= 1, "scattering: points must be positive");
  Table t{{"theta", "f_plus", "f_minus", "entropy", "F"}, {}};
  for (int i = 1; i <= n; ++i) {
    const double th = 0.5 * kPi * i / n;
    const ScatterState s = scatter_amplitudes(th);
    t.rows.push_back({th, s.f_plus, s.f_minus, scatter_entropy(th), bell_F(th)});
  }
  return tabulated(p, t);
}

Output run_two_atom(const json& user) {
  const json p = merge({{"N", {2, 3, 4, 5, 6}}}, user);
  Table t{{"N", "entropy", "p_star", "filtered_entropy", "log2N"}, {}};
  for (int N : ints(p, "N")) {
    const double ps = 1.0 / (N - 1.0);
    t.rows.push_back({static_cast<double>(N), two_atom_entropy(two_atom_state(N)), ps,
                      two_atom_entropy(filtered_two_atom_state(N, ps)), std::log2(static_cast<double>(N))});
  }
  return tabulated(p, t);
}

SloccTolerances tolerances(const json& p) {
  SloccTolerances t;
  t.rank = num(p, "rank_tol");
  t.ambiguity = num(p, "ambiguity");
  t.degeneracy = num(p, "degeneracy_tol");
  require(t.rank > 0.0 && t.ambiguity >= 1.0 && t.degeneracy > 0.0, "classify: invalid tolerances");
  return t;
}

json classify_report(const PureState& psi, const SloccTolerances& tol) {
  const bool qubits = std::all_of(psi.dims.begin(), psi.dims.end(), [](int d) { return d == 2; });
  if (psi.parties() == 3 && qubits) return class_to_json(classify_three_qubit(psi, tol));
  if (psi.parties() == 2) return class_to_json(classify_bipartite(psi, tol));
  if (psi.parties() == 4 && qubits) {
    const FourQubitReport r = four_qubit_probe(psi, tol);
    return {{"label", "FourQubit"}, {"structure", r.tag}, {"generic_class", r.generic_class},
            {"exceptional", r.exceptional}, {"w_dim", r.w_dim}, {"tolerance", tol.rank}};
  }
  throw ParameterError("classify: supported inputs are bipartite states and 3- or 4-qubit states");
}

Output run_classify(const json& user) {
  const json p = merge({{"state", nullptr}, {"rank_tol", 1e-8}, {"ambiguity", 100.0}, {"degeneracy_tol", 1e-3},
                        {"ilo_samples", 0}, {"ilo_condition", 50.0}, {"seed", 0}},
                       user);
  const PureState psi = state_from_json(load_state_param(p.at("state")));
  const SloccTolerances tol = tolerances(p);
  Output o;
  o.params = p;
  o.document = classify_report(psi, tol);
  // Robustness: reclassify under seeded random invertible local operators.
  const int samples = integer(p, "ilo_samples");
  if (samples > 0) {
    std::mt19937_64 rng(static_cast<unsigned long long>(integer(p, "seed")));
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(1.0, num(p, "ilo_condition"));
    int agree = 0;
    for (int s = 0; s < samples; ++s) {
      VectorXc v = psi.amps;
      int stride = static_cast<int>(v.size());
      for (int k = 0; k < psi.parties(); ++k) {
        const int d = psi.dims[k];
        MatrixXc A(d, d);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) A(i, j) = cplx(g(rng), g(rng));
        Eigen::JacobiSVD<MatrixXc> sv(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
        Eigen::VectorXd sig = Eigen::VectorXd::LinSpaced(d, 1.0, 1.0 / u(rng));
        A = sv.matrixU() * sig.cast<cplx>().asDiagonal() * sv.matrixV().adjoint();
        stride /= d;
        VectorXc w = VectorXc::Zero(v.size());
        for (Eigen::Index idx = 0; idx < v.size(); ++idx) {
          const int dig = static_cast<int>((idx / stride) % d);
          const Eigen::Index base = idx - static_cast<Eigen::Index>(dig) * stride;
          for (int r = 0; r < d; ++r) w(base + static_cast<Eigen::Index>(r) * stride) += A(r, dig) * v(idx);
        }
        v = w;
      }
      try {
        const json r = classify_report(PureState(v, psi.dims), tol);
        if (r.at("label") == o.document.at("label") && r.value("structure", "") == o.document.value("structure", "")) ++agree;
      } catch (const NumericalError&) {
      }
    }
    o.document["ilo_agreement"] = static_cast<double>(agree) / samples;
  }
  return o;
}

Output run_schmidt(const json& user) {
  const json p = merge({{"state", nullptr}, {"cut", 1}}, user);
  const PureState psi = state_from_json(load_state_param(p.at("state")));
  const SchmidtDecomposition d = schmidt_finite(psi, integer(p, "cut"));
  Output o;
  o.params = p;
  o.document = schmidt_to_json(d);
  o.document["basis"] = {{"family", "computational"}, {"beta", nullptr}};
  o.document["entropy"] = entropy(d.lambdas);
  o.document["schmidt_number"] = schmidt_number(d.lambdas);
  return o;
}

Output run_mps(const json& user) {
  const json p = merge({{"state", nullptr}, {"tol", 1e-12}}, user);
  const PureState psi = state_from_json(load_state_param(p.at("state")));
  const MPS m = vidal_decompose(psi, num(p, "tol"));
  Output o;
  o.params = p;
  o.document = mps_to_json(m);
  const PureState back = mps_reconstruct(m);
  o.document["fidelity"] = std::norm(psi.amps.dot(back.amps));
  return o;
}

Output run_clone(const json& user) {
  const json p = merge({{"theta", 0.7}, {"phi", 0.3}, {"M", 3}, {"mode", "universal"}, {"dump_isometries", false}}, user);
  const int M = integer(p, "M");
  const std::string mode = p.at("mode");
  if (mode != "universal" && mode != "phase_covariant") throw ParameterError("clone: mode must be universal or phase_covariant");
  const CloneMode cm = mode == "universal" ? CloneMode::universal : CloneMode::phase_covariant;
  const double th = num(p, "theta"), ph = num(p, "phi");
  // Phase-covariant input is equatorial by definition.
  const double th_eff = cm == CloneMode::universal ? th : 0.5 * kPi;
  const Eigen::Vector2cd psi(std::cos(0.5 * th_eff), std::polar(std::sin(0.5 * th_eff), ph));
  const CloneTrace tr = sequential_clone(psi, M, cm);
  Output o;
  o.params = p;
  json br = json::array();
  for (int b = 0; b < 2; ++b) br.push_back({{"probability", tr.branch[b].probability}, {"overlap", tr.branch[b].overlap}});
  json fid = json::array();
  for (int k = 0; k < M; ++k) fid.push_back(qubit_fidelity(tr.target, k, psi));
  o.document = {{"mode", mode},        {"M", M},           {"branches", br},          {"isometry_residual", tr.residual},
                {"ancilla_dim", tr.ancilla_dim}, {"clone_fidelities", fid}};
  if (cm == CloneMode::universal) o.document["optimal_fidelity"] = (2.0 * M + 1.0) / (3.0 * M);
  if (p.at("dump_isometries").get<bool>()) {
    const IsometrySet s = cm == CloneMode::universal ? universal_isometries(M) : phase_covariant_isometries(M);
    json steps = json::array();
    for (const auto& V : s.V0) steps.push_back({{"V0_0", matrix_json(V[0])}, {"V0_1", matrix_json(V[1])}});
    o.document["isometries"] = steps;
  }
  return o;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

// ---- shared computations ----

std::vector<std::vector<double>> pdc_d2_table(const std::vector<int>& m0s, const std::vector<double>& betas,
                                              const PdcSetup& s) {
  require(!m0s.empty() && !betas.empty(), "pdc table: empty grid");
  int mmax = 0;
  for (int m : m0s) {
    require(m >= 0 && m <= 200, "pdc table: m0 must lie in [0, 200]");
    mmax = std::max(mmax, m);
  }
  for (double b : betas) require(b > 0.0, "pdc table: beta must be positive");
  const BipartiteAmplitude f = pdc(s.L_p, s.L_q);
  const QuadratureRule q = uniform_panel(-s.half_width, s.half_width, s.nodes);
  const MatrixXc F = sample_grid(f, q, q);
  std::vector<std::vector<double>> out(m0s.size(), std::vector<double>(betas.size()));
  for (std::size_t j = 0; j < betas.size(); ++j) {
    const OrthonormalBasis b{betas[j], 0.0};
    const CoefficientMatrix C = coefficient_matrix_from_samples(F, b, b, mmax, mmax, q, q, *f.exact_norm2);
    for (std::size_t i = 0; i < m0s.size(); ++i) {
      const SchmidtDecomposition d = decompose(truncate(C, m0s[i], m0s[i]));
      out[i][j] = error_d2(C.norm2, d.lambdas);
    }
  }
  return out;
}

SchmidtDecomposition pdc_decomposition(double beta, int m0, const PdcSetup& s, double* d2) {
  require(beta > 0.0, "pdc: beta must be positive");
  const BipartiteAmplitude f = pdc(s.L_p, s.L_q);
  const QuadratureRule q = uniform_panel(-s.half_width, s.half_width, s.nodes);
  const OrthonormalBasis b{beta, 0.0};
  const CoefficientMatrix C = coefficient_matrix(f, b, b, m0, m0, q, q);
  SchmidtDecomposition d = decompose(C);
  if (d2) *d2 = error_d2(C.norm2, d.lambdas);
  return d;
}

std::vector<EvolutionPoint> qed_evolution(const std::vector<double>& times, int m0, const QedParams& prm,
                                          double half_width, int nodes) {
  require(half_width > 0.0 && nodes >= 64, "qed: invalid grid");
  const QuadratureRule q = uniform_panel(-half_width, half_width, nodes);
  const OrthonormalBasis b{1.0, 0.0};
  std::vector<EvolutionPoint> out;
  for (double t : times) {
    require(t > 0.0, "qed: times must be positive");
    const CoefficientMatrix C = coefficient_matrix(qed_amplitude(t, prm), b, b, m0, m0, q, q);
    const SchmidtDecomposition d = decompose(C);
    out.push_back({t, 0.0, schmidt_number(d.lambdas), error_d2(C.norm2, d.lambdas), entropy(d.lambdas)});
  }
  return out;
}

namespace {

struct UnstableGrid {
  QuadratureRule qp, qq;
  OrthonormalBasis bp, bq;
};

UnstableGrid unstable_layout(const UnstableSetup& s, int nodes) {
  require(s.p_scale > 0.0 && s.q_scale > 0.0 && s.span > 0.0 && nodes >= 64, "unstable: invalid grid");
  const double p0 = unstable_ridge(s.base);
  UnstableGrid g;
  g.qp = uniform_panel(std::max(0.0, p0 - s.span * s.p_scale), p0 + s.span * s.p_scale, nodes);
  g.qq = uniform_panel(std::max(0.0, p0 - s.span * s.q_scale), p0 + s.span * s.q_scale, nodes);
  g.bp = OrthonormalBasis{1.0 / s.p_scale, p0};
  g.bq = OrthonormalBasis{1.0 / s.q_scale, p0};
  return g;
}

}  // namespace

std::vector<EvolutionPoint> unstable_grid(const std::vector<double>& times, const std::vector<double>& gammas,
                                          const UnstableSetup& s) {
  const UnstableGrid g = unstable_layout(s, s.nodes);
  std::vector<EvolutionPoint> out;
  for (double gm : gammas)
    for (double t : times) {
      UnstableParams prm = s.base;
      prm.t = t;
      prm.gamma = gm;
      prm.include_cut = false;
      BipartiteAmplitude f = unstable_amplitude(prm);
      const CoefficientMatrix C = coefficient_matrix(f, g.bp, g.bq, s.m0, s.m0, g.qp, g.qq);
      const SchmidtDecomposition d = decompose(C);
      out.push_back({t, gm, schmidt_number(d.lambdas), error_d2(C.norm2, d.lambdas), entropy(d.lambdas)});
    }
  return out;
}

double unstable_cut_ratio(double t, double gamma, const UnstableSetup& s, int n) {
  const UnstableGrid g = unstable_layout(s, n);
  UnstableParams prm = s.base;
  prm.t = t;
  prm.gamma = gamma;
  prm.include_cut = true;
  double cut = 0.0, tot = 0.0;
  for (double p : g.qp.nodes)
    for (double q : g.qq.nodes) {
      const double d = p - q;
      cut += std::norm(std::exp(-d * d / (prm.sigma * prm.sigma)) * unstable_cut(p, q, prm));
      tot += std::norm(unstable(p, q, prm));
    }
  return std::sqrt(cut / tot);
}

// ---- JSON encodings ----

PureState state_from_json(const json& j) {
  try {
    const std::vector<int> dims = j.at("dims").get<std::vector<int>>();
    const json& a = j.at("amps");
    VectorXc v(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].is_number())
        v(static_cast<Eigen::Index>(i)) = a[i].get<double>();
      else
        v(static_cast<Eigen::Index>(i)) = cplx(a[i].at(0).get<double>(), a[i].at(1).get<double>());
    }
    return PureState(v, dims);
  } catch (const json::exception& e) {
    throw ParameterError(std::string("state JSON must be {dims: [...], amps: [[re,im],...]}: ") + e.what());
  }
}

json state_to_json(const PureState& psi) {
  json a = json::array();
  for (Eigen::Index i = 0; i < psi.amps.size(); ++i) a.push_back(cplx_json(psi.amps(i)));
  return {{"dims", psi.dims}, {"amps", a}};
}

json schmidt_to_json(const SchmidtDecomposition& d) {
  std::vector<double> l(d.lambdas.data(), d.lambdas.data() + d.lambdas.size());
  return {{"lambdas", l},
          {"modeA1", matrix_json(d.modeA1)},
          {"modeA2", matrix_json(d.modeA2)},
          {"basis", {{"family", d.basis1.family}, {"beta", d.basis1.beta}}}};
}

json class_to_json(const SloccClass& c) {
  json spectrum = json::array();
  for (const cplx& z : c.pencil_spectrum) spectrum.push_back(cplx_json(z));
  json j = {{"label", c.name()}, {"ranks", c.ranks}, {"w_ranks", c.w_ranks}, {"pencil_spectrum", spectrum},
            {"tolerance", c.tolerance}};
  if (!c.structure.empty()) j["structure"] = c.structure;
  return j;
}

json mps_to_json(const MPS& m) {
  json g = json::array();
  for (const auto& site : m.gammas) {
    json s = json::array();
    for (const auto& G : site) s.push_back(matrix_json(G));
    g.push_back(s);
  }
  json l = json::array();
  for (const auto& v : m.lambdas) l.push_back(std::vector<double>(v.data(), v.data() + v.size()));
  return {{"gammas", g}, {"lambdas", l}, {"chi", m.chi}};
}

// ---- registry ----

const std::map<std::string, Runner>& registry() {
  static const std::map<std::string, Runner> r = {
      {"pdc-table", run_pdc_table},         {"pdc-modes", run_pdc_modes},
      {"pdc-spectrum", run_pdc_spectrum},   {"qed-evolution", run_qed_evolution},
      {"unstable-K", run_unstable_k},       {"delta-spectrum", run_delta_spectrum},
      {"werner-boundary", run_werner_boundary}, {"magnetic-channel", run_magnetic},
      {"optical-channel", run_optical},     {"spinmom", run_spinmom},
      {"scattering", run_scattering},       {"two-atom", run_two_atom},
      {"classify", run_classify},           {"schmidt", run_schmidt},
      {"mps-decompose", run_mps},           {"clone", run_clone}};
  return r;
}

Output run(const std::string& name, const json& params) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw UsageError("unknown experiment '" + name + "'");
  return it->second(params);
}

std::string to_csv(const Output& out) {
  if (!out.table) throw ParameterError("this experiment produces JSON only; use --format json");
  std::ostringstream s;
  s << "# " << out.params.dump() << "\n";
  for (std::size_t i = 0; i < out.table->columns.size(); ++i) s << (i ? "," : "") << out.table->columns[i];
  s << "\n";
  for (const auto& row : out.table->rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s << (i ? "," : "") << fmt(row[i]);
    s << "\n";
  }
  return s.str();
}

json to_json(const Output& out) {
  json j = {{"params", out.params}};
  if (out.table) {
    j["columns"] = out.table->columns;
    j["rows"] = out.table->rows;
  } else {
    j["result"] = out.document;
  }
  return j;
}

}  // namespace entangle::cli

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "entangle/experiments.hpp"

namespace {

using entangle::cli::json;

// "--w-over-2m 0.1" -> {"w_over_2m": 0.1}; values are parsed as JSON when possible.
json parse_extras(const std::vector<std::string>& extras) {
  json out = json::object();
  for (std::size_t i = 0; i < extras.size(); ++i) {
    std::string key = extras[i];
    if (key.rfind("--", 0) != 0 || key.size() < 3) throw entangle::cli::UsageError("unexpected argument '" + key + "'");
    key = key.substr(2);
    std::string value;
    if (const auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key = key.substr(0, eq);
    } else {
      if (i + 1 >= extras.size()) throw entangle::cli::UsageError("flag --" + key + " needs a value");
      value = extras[++i];
    }
    for (char& c : key)
      if (c == '-') c = '_';
    json v = json::parse(value, nullptr, false);
    out[key] = v.is_discarded() ? json(value) : v;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entangle: entanglement experiments runner"};
  std::string experiment, config, out_path, format = "csv";
  long long seed = 0;
  int threads = 1;
  bool list = false;
  app.add_option("experiment", experiment, "experiment name");
  app.add_option("--config", config, "JSON parameter file");
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "seed for randomised experiments");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--list", list, "list registered experiments");
  app.allow_extras();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (list) {
      for (const auto& [name, fn] : entangle::cli::registry()) std::cout << name << "\n";
      return 0;
    }
    if (experiment.empty()) throw entangle::cli::UsageError("missing experiment name (see --list)");
    if (!entangle::cli::registry().count(experiment)) throw entangle::cli::UsageError("unknown experiment '" + experiment + "'");

    json params = json::object();
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw entangle::ParameterError("cannot open config file '" + config + "'");
      params = json::parse(in, nullptr, false);
      if (params.is_discarded() || !params.is_object()) throw entangle::ParameterError("config file must hold a JSON object");
    }
    const json extras = parse_extras(app.remaining());
    for (const auto& [k, v] : extras.items()) params[k] = v;
    if (app.count("--seed") || experiment == "classify") {
      if (experiment != "classify") throw entangle::ParameterError("--seed applies to randomised experiments only");
      if (app.count("--seed") || !params.contains("seed")) params["seed"] = seed;
    }

    const auto out = entangle::cli::run(experiment, params);
    // JSON-only experiments fall back to JSON unless CSV was requested explicitly.
    const bool csv = format == "csv" && (out.table || app.count("--format"));
    const std::string text = csv ? entangle::cli::to_csv(out) : entangle::cli::to_json(out).dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw entangle::ParameterError("cannot write '" + out_path + "'");
      f << text;
    }
    return 0;
  } catch (const entangle::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const entangle::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 3;
  } catch (const json::exception& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 3;
  } catch (const entangle::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  }
}

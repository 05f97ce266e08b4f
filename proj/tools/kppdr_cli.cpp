// Command-line front end: builds the four network families, evaluates and
// certifies fastest-mixing weights, and runs mixing simulations.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kppdr/chain.hpp"
#include "kppdr/mixsim.hpp"
#include "kppdr/numsolve.hpp"
#include "kppdr/optimal.hpp"
#include "kppdr/stratify.hpp"
#include "kppdr/topology.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitCertificate = 4;
constexpr int kExitNoConvergence = 5;

struct SpecOptions {
  std::string family;
  int k = 0;
  int n = 0;
  std::string pattern;

  kppdr::TopologySpec resolve() const {
    kppdr::TopologySpec spec;
    spec.family = kppdr::family_from_name(family);
    spec.k = k;
    spec.n = n;
    if (!pattern.empty()) {
      std::vector<kppdr::LayerKind> kinds;
      std::stringstream ss(pattern);
      std::string token;
      while (std::getline(ss, token, ',')) kinds.push_back(kppdr::kind_from_name(token));
      spec.pattern = std::move(kinds);
    }
    return spec;
  }
};

void add_spec_options(CLI::App* cmd, SpecOptions& opts) {
  cmd->add_option("--family", opts.family, "symmetric, semi-symmetric, cycle or semi-cycle")
      ->required();
  cmd->add_option("--k", opts.k, "number of node sets")->required();
  cmd->add_option("--n", opts.n, "nodes per set")->required();
  cmd->add_option("--pattern", opts.pattern,
                  "comma-separated layer kinds (full/strait); defaults per family");
}

kppdr::OrbitProbabilities parse_probs(const std::string& text, const kppdr::TopologySpec& spec) {
  if (text == "optimal") return kppdr::optimal_probabilities(spec).probs;
  if (text == "mh") return kppdr::metropolis_hastings(kppdr::build_graph(spec));
  kppdr::OrbitProbabilities probs;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      probs.values.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw kppdr::InvalidSpecError("cannot parse probability \"" + token + "\"");
    }
  }
  if (probs.values.empty()) throw kppdr::InvalidSpecError("empty probability list");
  return probs;
}

ordered_json spec_json(const kppdr::TopologySpec& spec) {
  ordered_json j;
  j["family"] = kppdr::family_name(spec.family);
  j["k"] = spec.k;
  j["n"] = spec.n;
  ordered_json pattern = ordered_json::array();
  for (kppdr::LayerKind kind :
       spec.pattern ? *spec.pattern : kppdr::default_pattern(spec.family, spec.k))
    pattern.push_back(kppdr::kind_name(kind));
  j["pattern"] = pattern;
  return j;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file " + out_path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fastest-mixing Markov chains on layered K-partite networks"};
  app.require_subcommand(1);

  std::string out_path;

  SpecOptions build_opts;
  CLI::App* cmd_build = app.add_subcommand("build", "print the graph edge list");
  add_spec_options(cmd_build, build_opts);

  SpecOptions slem_opts;
  std::string slem_probs;
  CLI::App* cmd_slem = app.add_subcommand("slem", "SLEM and spectrum of an assembled chain");
  add_spec_options(cmd_slem, slem_opts);
  cmd_slem->add_option("--probs", slem_probs, "per-orbit probabilities, or optimal/mh")->required();

  SpecOptions optimal_opts;
  CLI::App* cmd_optimal = app.add_subcommand("optimal", "closed-form optimal weights");
  add_spec_options(cmd_optimal, optimal_opts);

  SpecOptions mh_opts;
  CLI::App* cmd_mh = app.add_subcommand("mh", "Metropolis-Hastings weights");
  add_spec_options(cmd_mh, mh_opts);

  int certify_k = 0, certify_n = 0;
  CLI::App* cmd_certify = app.add_subcommand("certify", "dual optimality certificate (symmetric)");
  cmd_certify->add_option("--k", certify_k, "number of node sets")->required();
  cmd_certify->add_option("--n", certify_n, "nodes per set")->required();

  SpecOptions stratify_opts;
  std::string stratify_probs;
  CLI::App* cmd_stratify = app.add_subcommand("stratify", "block-spectrum partition report");
  add_spec_options(cmd_stratify, stratify_opts);
  cmd_stratify->add_option("--probs", stratify_probs, "per-orbit probabilities, or optimal/mh")
      ->required();

  SpecOptions optimize_opts;
  kppdr::SolveConfig solve_cfg;
  CLI::App* cmd_optimize = app.add_subcommand("optimize", "derivative-free SLEM minimization");
  add_spec_options(cmd_optimize, optimize_opts);
  cmd_optimize->add_option("--seed", solve_cfg.seed, "random seed");
  cmd_optimize->add_option("--tol", solve_cfg.tol, "objective tolerance");
  cmd_optimize->add_option("--max-evals", solve_cfg.max_evals, "evaluation budget");
  cmd_optimize->add_option("--restarts", solve_cfg.restarts, "number of restarts");

  SpecOptions sim_opts;
  std::string sim_probs;
  kppdr::TrialConfig trial_cfg;
  std::string sim_init = "random-uniform-values";
  bool sim_geometric = false;
  CLI::App* cmd_simulate = app.add_subcommand("simulate", "mixing trace CSV");
  add_spec_options(cmd_simulate, sim_opts);
  cmd_simulate->add_option("--probs", sim_probs, "per-orbit probabilities, or optimal/mh")
      ->required();
  cmd_simulate->add_option("--trials", trial_cfg.trials, "number of trials");
  cmd_simulate->add_option("--iters", trial_cfg.iterations, "number of iterations");
  cmd_simulate->add_option("--seed", trial_cfg.seed, "random seed");
  cmd_simulate->add_option("--init", sim_init, "random-uniform-values or point-mass");
  cmd_simulate->add_flag("--geometric", sim_geometric, "aggregate trials with a geometric mean");

  std::string compare_specs_path;
  std::string compare_traces_csv;
  CLI::App* cmd_compare = app.add_subcommand("compare", "simulate several chains and compare");
  cmd_compare->add_option("--specs", compare_specs_path, "JSON file describing the chains")
      ->required();
  cmd_compare->add_option("--traces-csv", compare_traces_csv,
                          "also write all traces in long CSV format");

  for (CLI::App* cmd : {cmd_build, cmd_slem, cmd_optimal, cmd_mh, cmd_certify, cmd_stratify,
                        cmd_optimize, cmd_simulate, cmd_compare})
    cmd->add_option("--out", out_path, "write the primary output to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return kExitUsage;
  }

  try {
    if (*cmd_build) {
      emit(kppdr::build_graph(build_opts.resolve()).to_edge_list(), out_path);
    } else if (*cmd_slem) {
      const kppdr::TopologySpec spec = slem_opts.resolve();
      const kppdr::OrbitProbabilities probs = parse_probs(slem_probs, spec);
      const kppdr::TransitionMatrix p = kppdr::assemble(spec, probs);
      const kppdr::Spectrum spectrum = kppdr::eigenvalues_symmetric(p.matrix());
      ordered_json j;
      j["spec"] = spec_json(spec);
      j["probs"] = probs.values;
      j["slem"] = kppdr::slem_of_spectrum(spectrum);
      j["spectrum"] = spectrum.eigenvalues;
      emit(j.dump(2), out_path);
    } else if (*cmd_optimal) {
      emit(kppdr::optimal_probabilities(optimal_opts.resolve()).to_json(), out_path);
    } else if (*cmd_mh) {
      const kppdr::TopologySpec spec = mh_opts.resolve();
      ordered_json j;
      j["spec"] = spec_json(spec);
      j["probs"] = kppdr::metropolis_hastings(kppdr::build_graph(spec)).values;
      emit(j.dump(2), out_path);
    } else if (*cmd_certify) {
      const kppdr::DualCertificate cert = kppdr::dual_certificate(certify_k, certify_n);
      emit(cert.to_json(), out_path);
      if (cert.max_residual() >= 1e-8) {
        std::cerr << "certificate residual " << cert.max_residual() << " exceeds 1e-8\n";
        return kExitCertificate;
      }
    } else if (*cmd_stratify) {
      const kppdr::TopologySpec spec = stratify_opts.resolve();
      const kppdr::OrbitProbabilities probs = parse_probs(stratify_probs, spec);
      emit(kppdr::verify_spectrum_partition(spec, probs).to_json(), out_path);
    } else if (*cmd_optimize) {
      const kppdr::SolveResult result = kppdr::minimize_slem(optimize_opts.resolve(), solve_cfg);
      emit(result.to_json(), out_path);
      if (!result.converged) {
        std::cerr << "optimizer exhausted its budget before converging\n";
        return kExitNoConvergence;
      }
    } else if (*cmd_simulate) {
      const kppdr::TopologySpec spec = sim_opts.resolve();
      trial_cfg.init = kppdr::init_mode_from_name(sim_init);
      trial_cfg.geometric_mean = sim_geometric;
      const kppdr::TransitionMatrix p = kppdr::assemble(spec, parse_probs(sim_probs, spec));
      const kppdr::MixingTrace trace = kppdr::simulate(p, trial_cfg);
      if (trace.redraws > 0)
        std::cerr << "redrew " << trace.redraws << " exactly-uniform initial vectors\n";
      emit(trace.to_csv(), out_path);
    } else if (*cmd_compare) {
      std::ifstream in(compare_specs_path);
      if (!in) throw kppdr::InvalidSpecError("cannot open specs file " + compare_specs_path);
      ordered_json doc;
      try {
        doc = ordered_json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw kppdr::InvalidSpecError(std::string("cannot parse specs file: ") + e.what());
      }

      kppdr::TrialConfig cfg;
      cfg.trials = doc.value("trials", 200);
      cfg.iterations = doc.value("iterations", 100);
      cfg.seed = doc.value("seed", 0);
      cfg.init = kppdr::init_mode_from_name(
          doc.value("init", std::string("random-uniform-values")));
      cfg.geometric_mean = doc.value("geometric_mean", false);
      const double rate_tolerance = doc.value("rate_tolerance", 0.02);
      const int window = doc.value("window", 0);

      if (!doc.contains("entries") || !doc["entries"].is_array() || doc["entries"].empty())
        throw kppdr::InvalidSpecError("specs file needs a non-empty \"entries\" array");

      std::vector<kppdr::MixingTrace> traces;
      for (const auto& entry : doc["entries"]) {
        kppdr::TopologySpec spec;
        spec.family = kppdr::family_from_name(entry.at("family").get<std::string>());
        spec.k = entry.at("k").get<int>();
        spec.n = entry.at("n").get<int>();
        if (entry.contains("pattern")) {
          std::vector<kppdr::LayerKind> kinds;
          for (const auto& kind : entry["pattern"])
            kinds.push_back(kppdr::kind_from_name(kind.get<std::string>()));
          spec.pattern = std::move(kinds);
        }
        kppdr::OrbitProbabilities probs;
        const auto& probs_field = entry.at("probs");
        if (probs_field.is_string()) {
          probs = parse_probs(probs_field.get<std::string>(), spec);
        } else {
          for (const auto& v : probs_field) probs.values.push_back(v.get<double>());
        }
        kppdr::MixingTrace trace = kppdr::simulate(kppdr::assemble(spec, probs), cfg);
        if (entry.contains("label")) trace.label = entry["label"].get<std::string>();
        traces.push_back(std::move(trace));
      }

      const kppdr::ComparisonReport report = kppdr::compare(traces, rate_tolerance, window);
      if (!compare_traces_csv.empty()) {
        std::ofstream csv(compare_traces_csv);
        if (!csv) throw std::runtime_error("cannot open " + compare_traces_csv);
        csv << kppdr::traces_to_long_csv(traces);
      }
      emit(report.to_json(), out_path);
    }
  } catch (const kppdr::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const kppdr::ConvergenceError& e) {
    std::cerr << "no convergence: " << e.what() << '\n';
    return kExitNoConvergence;
  } catch (const kppdr::InvalidSpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hurot/error.hpp"
#include "hurot/experiments.hpp"
#include "hurot/io.hpp"
#include "hurot/otb.hpp"
#include "hurot/random.hpp"
#include "hurot/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNotConverged = 2;

struct SolverFlags {
  double epsilon = 1.0;
  std::string model = "homogeneous";
  double tol = 1e-9;
  int max_iter = 10000;

  void attach(CLI::App* app) {
    app->add_option("--epsilon", epsilon, "entropic regularization")->capture_default_str();
    app->add_option("--model", model, "standard | homogeneous")
        ->check(CLI::IsMember({"standard", "homogeneous"}))
        ->capture_default_str();
    app->add_option("--tol", tol, "sup-norm stopping threshold")->capture_default_str();
    app->add_option("--max-iter", max_iter, "iteration cap")->capture_default_str();
  }

  hurot::SolverConfig config() const {
    hurot::SolverConfig cfg;
    cfg.epsilon = epsilon;
    cfg.model = model == "standard" ? hurot::Model::kStandard : hurot::Model::kHomogeneous;
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    cfg.validate();
    return cfg;
  }
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    hurot::write_text_file(path, text);
  }
}

hurot::SweepMetric parse_metric(const std::string& s) {
  return s == "cost" ? hurot::SweepMetric::kCost : hurot::SweepMetric::kSinkhornDivergence;
}

int run_sweep(const hurot::DiscreteMeasure& alpha, const hurot::DiscreteMeasure& beta,
              const hurot::CostSpec& cost, const hurot::MarginalDivergence& div,
              const SolverFlags& flags, const std::string& grid, const std::string& metric,
              const std::string& output) {
  hurot::SweepSpec spec = hurot::parse_lambda_grid(grid);
  const hurot::SolverConfig cfg = flags.config();
  spec.metric = parse_metric(metric);
  spec.model = cfg.model;
  emit(output, hurot::sweep_to_csv(hurot::lambda_sweep(alpha, beta, cost, div, cfg, spec)));
  return kExitOk;
}

int report_solve(const hurot::SolveResult& r, const std::string& output) {
  emit(output, hurot::solve_result_to_json(r));
  if (!r.converged) {
    std::cerr << "not converged after " << r.iterations << " iterations\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropic unbalanced optimal transport solver"};
  app.require_subcommand(1);

  // gen
  int gen_n = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_domain = "square";
  std::string gen_weights = "uniform";
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "generate a random measure");
  gen->add_option("--n", gen_n, "number of atoms")->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", gen_seed, "generator seed")->capture_default_str();
  gen->add_option("--domain", gen_domain, "square | halfplane")
      ->check(CLI::IsMember({"square", "halfplane"}))
      ->capture_default_str();
  gen->add_option("--weights", gen_weights, "uniform | unit")
      ->check(CLI::IsMember({"uniform", "unit"}))
      ->capture_default_str();
  gen->add_option("-o,--output", gen_out, "output file (stdout when omitted)");

  // solve
  std::string alpha_path, beta_path, divergence = "kl:rho=1", cost_text = "sqeuclidean", out;
  SolverFlags solve_flags;
  CLI::App* solve = app.add_subcommand("solve", "solve one transport problem");
  solve->add_option("--alpha", alpha_path, "first measure (JSON)")->required();
  solve->add_option("--beta", beta_path, "second measure (JSON)")->required();
  solve->add_option("--divergence", divergence, "balanced | kl:rho=<r> | tv | otb:<domain>")
      ->capture_default_str();
  solve->add_option("--cost", cost_text, "sqeuclidean | euclidean | matrix:<csv>")
      ->capture_default_str();
  solve->add_option("-o,--output", out, "output file (stdout when omitted)");
  solve_flags.attach(solve);

  // sweep
  std::string sweep_alpha, sweep_beta, sweep_div = "kl:rho=1", sweep_cost = "sqeuclidean";
  std::string sweep_grid, sweep_metric = "sk", sweep_out;
  SolverFlags sweep_flags;
  CLI::App* sweep = app.add_subcommand("sweep", "evaluate a metric along lambda * (alpha, beta)");
  sweep->add_option("--alpha", sweep_alpha, "first measure (JSON)")->required();
  sweep->add_option("--beta", sweep_beta, "second measure (JSON)")->required();
  sweep->add_option("--lambda-grid", sweep_grid, "min:max:num:lin|log")->required();
  sweep->add_option("--metric", sweep_metric, "cost | sk")
      ->check(CLI::IsMember({"cost", "sk"}))
      ->capture_default_str();
  sweep->add_option("--divergence", sweep_div, "balanced | kl:rho=<r> | tv | otb:<domain>")
      ->capture_default_str();
  sweep->add_option("--cost", sweep_cost, "sqeuclidean | euclidean")->capture_default_str();
  sweep->add_option("-o,--output", sweep_out, "output file (stdout when omitted)");
  sweep_flags.attach(sweep);

  // otb
  std::string otb_alpha, otb_beta, otb_domain, otb_grid, otb_metric = "sk", otb_out;
  SolverFlags otb_flags;
  CLI::App* otb = app.add_subcommand("otb", "transport with boundary: solve, or sweep with a grid");
  otb->add_option("--alpha", otb_alpha, "first diagram (JSON)")->required();
  otb->add_option("--beta", otb_beta, "second diagram (JSON)")->required();
  otb->add_option("--domain", otb_domain, "halfplane | box:lo,hi,...")->required();
  otb->add_option("--lambda-grid", otb_grid, "min:max:num:lin|log");
  otb->add_option("--metric", otb_metric, "cost | sk")
      ->check(CLI::IsMember({"cost", "sk"}))
      ->capture_default_str();
  otb->add_option("-o,--output", otb_out, "output file (stdout when omitted)");
  otb_flags.attach(otb);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*gen) {
      const auto shape = gen_domain == "halfplane" ? hurot::SupportShape::kTriangle
                                                   : hurot::SupportShape::kUnitSquare;
      const auto law = gen_weights == "unit" ? hurot::WeightLaw::kUnit : hurot::WeightLaw::kUniform;
      emit(gen_out, hurot::measure_to_json(hurot::random_measure(gen_n, gen_seed, shape, law)));
      return kExitOk;
    }
    if (*solve) {
      const auto alpha = hurot::read_measure_file(alpha_path);
      const auto beta = hurot::read_measure_file(beta_path);
      const auto div = hurot::parse_divergence(divergence);
      hurot::CostSpec cost = hurot::parse_cost(cost_text);
      if (div.is_otb()) cost = hurot::CostSpec(div.domain().cost_kind);
      return report_solve(hurot::solve(alpha, beta, cost, div, solve_flags.config()), out);
    }
    if (*sweep) {
      const auto alpha = hurot::read_measure_file(sweep_alpha);
      const auto beta = hurot::read_measure_file(sweep_beta);
      const auto div = hurot::parse_divergence(sweep_div);
      hurot::CostSpec cost = hurot::parse_cost(sweep_cost);
      if (div.is_otb()) cost = hurot::CostSpec(div.domain().cost_kind);
      return run_sweep(alpha, beta, cost, div, sweep_flags, sweep_grid, sweep_metric, sweep_out);
    }
    if (*otb) {
      const auto alpha = hurot::read_measure_file(otb_alpha);
      const auto beta = hurot::read_measure_file(otb_beta);
      const auto domain = hurot::parse_domain(otb_domain);
      const auto div = hurot::MarginalDivergence::otb(domain);
      const hurot::CostSpec cost(domain.cost_kind);
      if (!otb_grid.empty()) {
        return run_sweep(alpha, beta, cost, div, otb_flags, otb_grid, otb_metric, otb_out);
      }
      return report_solve(hurot::rotb_solve(alpha, beta, domain, otb_flags.config()), otb_out);
    }
  } catch (const hurot::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "smco/bench.hpp"
#include "smco/hjb.hpp"
#include "smco/testfns.hpp"

namespace {

struct RunOptions {
  std::string fn = "rastrigin";
  int dim = 2;
  std::string direction = "min";
  std::vector<std::string> algos;
  int starts = 0;
  std::string start_mode = "uniform";
  int reps = 1;
  std::uint64_t seed = 0;
  int max_iter = 500;
  double tol = 1e-6;
  double buffer = 0.05;
  std::string transform = "none";
  int workers = 1;
  int n_samples = 500;
  std::string out;
  std::string format = "csv";
  bool timings = false;
};

struct HjbOptions {
  std::string fn = "rastrigin";
  std::string direction = "max";
  double epsilon = 0.05;
  int nodes = 401;
  double buffer = 0.05;
  std::string out;
};

void write_payload(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  file << payload;
}

int do_run(const RunOptions& opt) {
  smco::ExperimentSpec spec;
  spec.problem.fn = opt.fn;
  spec.problem.dim = opt.dim;
  spec.problem.n_samples = opt.n_samples;
  const auto dir = smco::direction_from_name(opt.direction);
  if (!dir) throw std::runtime_error("unknown direction: " + opt.direction);
  spec.problem.direction = *dir;
  spec.problem.transform = opt.transform == "full";

  std::vector<std::string> algos = opt.algos;
  if (algos.empty()) algos.push_back("smco-r");
  for (const auto& name : algos) {
    const auto algo = smco::algo_from_name(name);
    if (!algo) throw std::runtime_error("unknown algorithm: " + name);
    spec.algorithms.push_back(*algo);
  }

  const auto mode = smco::start_mode_from_name(opt.start_mode);
  if (!mode) throw std::runtime_error("unknown start mode: " + opt.start_mode);
  spec.start_mode = *mode;
  spec.starts = opt.starts;
  spec.replications = opt.reps;
  spec.seed = opt.seed;
  spec.workers = opt.workers;
  spec.config.smco.max_iter = opt.max_iter;
  spec.config.smco.tolerance = opt.tol;
  spec.config.smco.buffer_fraction = opt.buffer;
  spec.config.baseline.buffer_fraction = opt.buffer;

  const smco::BenchReport report = smco::run_experiment(spec);

  const std::string payload = opt.format == "json"
                                  ? smco::render_json(report, opt.timings)
                                  : smco::render_csv(report, opt.timings);
  write_payload(opt.out, payload);

  std::cerr << "best_value " << report.best_value << "\n";
  for (const auto& m : report.algorithms)
    std::cerr << m.name << " rmse " << m.rmse << " ae50 " << m.ae50
              << " mean_time_s " << m.mean_time_s << "\n";
  return 0;
}

int do_list() {
  std::cout << "problems:";
  for (const auto& name : smco::known_problem_names()) std::cout << ' ' << name;
  std::cout << "\nalgorithms:";
  for (smco::Algo a :
       {smco::Algo::Smco, smco::Algo::SmcoR, smco::Algo::SmcoBr,
        smco::Algo::Gd, smco::Algo::SignGd, smco::Algo::Spsa})
    std::cout << ' ' << smco::algo_name(a);
  std::cout << "\n";
  return 0;
}

int do_hjb(const HjbOptions& opt) {
  const auto fn = smco::testfn_from_name(opt.fn);
  if (!fn) throw std::runtime_error("unknown function: " + opt.fn);
  const auto dir = smco::direction_from_name(opt.direction);
  if (!dir) throw std::runtime_error("unknown direction: " + opt.direction);

  smco::Objective obj = smco::make_testfn_objective(*fn, 1, *dir);
  if (*dir == smco::Direction::Minimize) obj = smco::negate_objective(obj);
  const smco::Box box = smco::default_box(*fn, 1);
  const smco::BufferedBox domain(box, opt.buffer);

  const auto [glo, ghi] = smco::default_grid_interval(domain, opt.epsilon);
  const smco::HjbGrid grid =
      smco::hjb_solve_1d(smco::extend_function(obj, domain), box.lower[0],
                         box.upper[0], opt.epsilon, glo, ghi, opt.nodes);

  std::ostringstream dump;
  smco::dump_grid(grid, dump);
  write_payload(opt.out, dump.str());
  std::cerr << "grid " << grid.nx << " nodes, " << (grid.nt + 1)
            << " time levels, value at (0, center) = "
            << grid.at(0, grid.nx / 2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-armed strategic sampling optimizer and benchmark harness"};
  app.require_subcommand(1);
  app.set_config("--config");

  RunOptions run_opt;
  CLI::App* run = app.add_subcommand("run", "run a benchmark experiment");
  run->add_option("--fn", run_opt.fn, "problem name (see `list`)");
  run->add_option("--dim", run_opt.dim, "problem dimension");
  run->add_option("--direction", run_opt.direction, "min or max");
  run->add_option("--algo", run_opt.algos, "algorithm, repeatable");
  run->add_option("--starts", run_opt.starts,
                  "starting points per replication, 0 = round(10 sqrt(d))");
  run->add_option("--start-mode", run_opt.start_mode, "uniform or diagonal");
  run->add_option("--reps", run_opt.reps, "number of replications");
  run->add_option("--seed", run_opt.seed, "master seed");
  run->add_option("--max-iter", run_opt.max_iter, "iteration budget per run");
  run->add_option("--tol", run_opt.tol, "convergence tolerance");
  run->add_option("--buffer", run_opt.buffer, "bound expansion fraction");
  run->add_option("--transform", run_opt.transform,
                  "domain transform: none or full");
  run->add_option("--workers", run_opt.workers, "worker threads")
      ->envname("SMCO_WORKERS");
  run->add_option("--n-samples", run_opt.n_samples,
                  "sample size of the random criteria");
  run->add_option("--out", run_opt.out, "output path (default stdout)");
  run->add_option("--format", run_opt.format, "csv or json");
  run->add_flag("--timings", run_opt.timings,
                "include wall times in the payload (nondeterministic)");

  CLI::App* list = app.add_subcommand("list", "list problems and algorithms");

  HjbOptions hjb_opt;
  CLI::App* hjb = app.add_subcommand("hjb", "1-D PDE study grid dump");
  hjb->add_option("--fn", hjb_opt.fn, "problem name, evaluated in d=1");
  hjb->add_option("--direction", hjb_opt.direction, "min or max");
  hjb->add_option("--epsilon", hjb_opt.epsilon, "diffusion parameter");
  hjb->add_option("--nodes", hjb_opt.nodes, "spatial nodes");
  hjb->add_option("--buffer", hjb_opt.buffer, "bound expansion fraction");
  hjb->add_option("--out", hjb_opt.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) return do_run(run_opt);
    if (list->parsed()) return do_list();
    if (hjb->parsed()) return do_hjb(hjb_opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

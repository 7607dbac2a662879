#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "args.hpp"
#include "krein/convergence.hpp"
#include "krein/discretize.hpp"
#include "krein/eigen.hpp"
#include "krein/error.hpp"
#include "krein/instance_io.hpp"
#include "krein/kernels.hpp"
#include "krein/verify.hpp"

namespace {

using nlohmann::json;
using namespace krein;

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error(Errc::IoError, "write to '" + path + "' failed");
}

std::string csv_number(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

void apply_thread_cap(int threads) {
  if (threads <= 0) {
    if (const char* env = std::getenv("KREIN_KIT_THREADS")) threads = std::atoi(env);
  }
  if (threads > 0) kernels::set_max_threads(threads);
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::vector<std::string> random;
  std::vector<std::string> grid;
  std::string instance;
  std::string output;
  std::string format = "table";
  std::size_t extensions = 20;
  Tolerances tol;
};

int run_verify(const VerifyArgs& args) {
  const int sources = !args.random.empty() + !args.grid.empty() + !args.instance.empty();
  if (sources != 1) throw Error(Errc::ParseError, "verify: give exactly one of --random, --grid, --instance");

  VerifyOptions options;
  options.tol = args.tol;
  options.random_extensions = args.extensions;

  VerificationReport report;
  std::string source;
  try {
    std::optional<RestrictedOperator> op;
    if (!args.random.empty()) {
      const auto spec = cli::parse_random(args.random);
      source = "random";
      op = random_instance(spec.n, spec.d, spec.eps, spec.seed);
    } else if (!args.grid.empty()) {
      const GridSpec spec = cli::parse_grid(args.grid);
      source = spec.label();
      op = cli::make_grid_problem(spec).restricted();
    } else {
      source = args.instance;
      op = load_instance(args.instance, args.tol);
    }
    report = run_verification(*op, options);
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError && args.instance.empty()) throw;
    report = failed_construction(source, e.what());
    std::cerr << "error: " << e.what() << '\n';
  }

  const json doc = to_json(report);
  if (!args.output.empty()) emit(doc.dump(2) + "\n", args.output);
  if (args.format == "json") {
    if (args.output.empty()) std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << format_report_table(doc);
  }
  return report.passed() ? 0 : kExitFail;
}

// ---- buckle ---------------------------------------------------------------

struct BuckleArgs {
  std::vector<std::string> one_d;
  std::vector<std::string> two_d;
  std::size_t k = 3;
  std::string method = "iterative";
  std::string format = "csv";
  bool compare_krein = false;
  std::size_t size_cap = 4000;
  std::string output;
};

int run_buckle(const BuckleArgs& args) {
  if (args.one_d.empty() == args.two_d.empty()) throw Error(Errc::ParseError, "buckle: give exactly one of --1d, --2d");
  const GridSpec spec = args.one_d.empty() ? cli::parse_grid(2, args.two_d) : cli::parse_grid(1, args.one_d);
  const GridProblem problem = cli::make_grid_problem(spec);
  const SolveMethod method = args.method == "dense" ? SolveMethod::dense : SolveMethod::iterative;
  const Vector lambdas = grid_pencil_eigenvalues(problem, args.k, method);

  Vector krein;
  if (args.compare_krein) {
    const RestrictedOperator op = problem.restricted(args.size_cap);
    const ExtensionBundle bundle = build_extensions(op);
    const Vector all = sym_eigvals(bundle.krein);
    krein.assign(all.end() - static_cast<std::ptrdiff_t>(op.domain_dim()),
                 all.end() - static_cast<std::ptrdiff_t>(op.domain_dim() - args.k));
  }

  std::string text;
  if (args.format == "json") {
    json rows = json::array();
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
      json row{{"j", j + 1}, {"lambda_pencil", lambdas[j]}};
      if (!krein.empty()) {
        row["lambda_krein"] = krein[j];
        row["rel_diff"] = std::abs(lambdas[j] - krein[j]) / std::abs(krein[j]);
      }
      rows.push_back(row);
    }
    json doc{{"grid", grid_to_json(spec)},
             {"provenance", problem.provenance()},
             {"method", args.method},
             {"n", problem.ambient_dim()},
             {"d", problem.domain_dim()},
             {"eigenvalues", rows}};
    text = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "j,lambda_pencil" << (krein.empty() ? "" : ",lambda_krein,rel_diff") << "\r\n";
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
      os << j + 1 << ',' << csv_number(lambdas[j]);
      if (!krein.empty())
        os << ',' << csv_number(krein[j]) << ',' << csv_number(std::abs(lambdas[j] - krein[j]) / std::abs(krein[j]));
      os << "\r\n";
    }
    text = os.str();
  }
  emit(text, args.output);
  return 0;
}

// ---- gen ------------------------------------------------------------------

struct GenArgs {
  std::vector<std::string> random;
  std::vector<std::string> grid;
  std::string output;
  bool matrix_market = false;
  bool no_ambient = false;
};

int run_gen(const GenArgs& args) {
  if (args.random.empty() == args.grid.empty()) throw Error(Errc::ParseError, "gen: give exactly one of --random, --grid");
  InstanceWriteOptions options;
  options.matrix_market = args.matrix_market;
  options.include_ambient = !args.no_ambient;
  std::optional<RestrictedOperator> op;
  if (!args.random.empty()) {
    const auto spec = cli::parse_random(args.random);
    op = random_instance(spec.n, spec.d, spec.eps, spec.seed);
  } else {
    const GridSpec spec = cli::parse_grid(args.grid);
    op = cli::make_grid_problem(spec).restricted();
    options.grid = spec;
  }
  if (args.output.empty() || args.output == "-") {
    if (args.matrix_market) throw Error(Errc::IoError, "gen: --matrix-market needs an output path");
    std::cout << instance_to_json(*op, options).dump(1) << '\n';
  } else {
    save_instance(args.output, *op, options);
    std::cerr << "wrote " << args.output << " (n=" << op->ambient_dim() << ", d=" << op->domain_dim() << ")\n";
  }
  return 0;
}

// ---- convergence ----------------------------------------------------------

struct ConvergenceArgs {
  std::string family = "1d";
  std::vector<std::string> levels;
  std::string method = "iterative";
  std::string format = "table";
  std::string output;
};

int run_convergence(const ConvergenceArgs& args) {
  const GridFamily family = parse_grid_family(args.family);
  std::vector<std::size_t> levels = cli::parse_levels(args.levels);
  if (levels.empty())
    levels = family == GridFamily::interval ? std::vector<std::size_t>{50, 100, 200, 400}
                                            : std::vector<std::size_t>{15, 31, 63};
  const SolveMethod method = args.method == "dense" ? SolveMethod::dense : SolveMethod::iterative;
  const ConvergenceStudy study = convergence_study(family, levels, method);

  std::optional<double> reference;
  if (family == GridFamily::interval)
    reference = continuum_reference(ReferenceProblem::clamped_column_1d, 1).eigenvalues.front();

  json rows = json::array();
  for (const auto& lv : study.levels) {
    json row{{"n", lv.n}, {"h", lv.h}, {"lambda1", lv.lambda1}};
    row["observed_order"] = lv.observed_order > 0.0 ? json(lv.observed_order) : json(nullptr);
    if (reference) row["rel_error"] = std::abs(lv.lambda1 - *reference) / *reference;
    rows.push_back(row);
  }
  json doc{{"family", family == GridFamily::interval ? "1d" : "2d"},
           {"method", args.method},
           {"levels", rows},
           {"monotone", study.monotone},
           {"extrapolation",
            {{"limit", study.extrapolation.limit},
             {"order", study.extrapolation.order},
             {"uncertainty", study.extrapolation.uncertainty}}}};
  if (reference) {
    doc["reference"] = {{"lambda1", *reference},
                        {"extrapolation_rel_error", std::abs(study.extrapolation.limit - *reference) / *reference}};
  }

  std::ostringstream os;
  if (args.format == "json") {
    os << doc.dump(2) << '\n';
  } else if (args.format == "csv") {
    os << "n,h,lambda1,observed_order\r\n";
    for (const auto& lv : study.levels)
      os << lv.n << ',' << csv_number(lv.h) << ',' << csv_number(lv.lambda1) << ','
         << (lv.observed_order > 0.0 ? csv_number(lv.observed_order) : "") << "\r\n";
  } else {
    os << std::left << std::setw(8) << "N" << std::setw(16) << "h" << std::setw(20) << "lambda1" << "order\n";
    for (const auto& lv : study.levels) {
      os << std::left << std::setw(8) << lv.n << std::setw(16) << std::setprecision(8) << lv.h << std::setw(20)
         << std::setprecision(12) << lv.lambda1;
      if (lv.observed_order > 0.0) os << std::setprecision(4) << lv.observed_order;
      os << '\n';
    }
    os << std::setprecision(10) << "extrapolated lambda1 = " << study.extrapolation.limit << " +/- "
       << std::setprecision(3) << study.extrapolation.uncertainty << " (order " << study.extrapolation.order
       << ")\nmonotone in h: " << (study.monotone ? "yes" : "no") << '\n';
    if (reference)
      os << std::setprecision(10) << "continuum lambda1 = " << *reference << ", extrapolation rel. error "
         << std::setprecision(3) << doc["reference"]["extrapolation_rel_error"].get<double>() << '\n';
  }
  emit(os.str(), args.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"krein-kit: extremal extensions of positive symmetric operators and discrete buckling problems"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Cap on worker threads (default: KREIN_KIT_THREADS or all)");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run the identity suite on one instance");
  v->add_option("--random", verify.random, "Random instance: n= d= eps= seed=")->expected(0, 4);
  v->add_option("--grid", verify.grid, "Grid instance: 1d N=50 | 2d 7x7")->expected(1, 3);
  v->add_option("--instance", verify.instance, "Instance JSON file");
  v->add_option("-o,--output", verify.output, "Write the JSON report here");
  v->add_option("--format", verify.format, "stdout format")->check(CLI::IsMember({"table", "json"}));
  v->add_option("--extensions", verify.extensions, "Randomized extensions per resolvent check");
  for (const auto& field : tolerance_fields()) {
    auto member = field.member;
    v->add_option_function<double>(
         "--tol-" + std::string(field.name), [&verify, member](const double& x) { verify.tol.*member = x; },
         "Override tolerance " + std::string(field.name))
        ->check(CLI::PositiveNumber);
  }

  BuckleArgs buckle;
  auto* b = app.add_subcommand("buckle", "Smallest buckling eigenvalues on a grid");
  b->add_option("--1d", buckle.one_d, "Interval grid: N=400")->expected(1, 1);
  b->add_option("--2d", buckle.two_d, "Square/rectangle grid: 31x31 | Nx= Ny=")->expected(1, 4);
  b->add_option("-k", buckle.k, "Number of eigenvalues")->check(CLI::PositiveNumber);
  b->add_option("--method", buckle.method)->check(CLI::IsMember({"dense", "iterative"}));
  b->add_option("--format", buckle.format)->check(CLI::IsMember({"csv", "json"}));
  b->add_flag("--compare-krein", buckle.compare_krein, "Add the nonzero Krein-extension eigenvalues (dense)");
  b->add_option("--size-cap", buckle.size_cap, "Largest ambient dimension for --compare-krein");
  b->add_option("-o,--output", buckle.output);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Write an instance file");
  g->add_option("--random", gen.random, "Random instance: n= d= eps= seed=")->expected(0, 4);
  g->add_option("--grid", gen.grid, "Grid instance: 1d N=50 | 2d 7x7")->expected(1, 3);
  g->add_option("-o,--output", gen.output, "Instance JSON path (stdout if omitted)");
  g->add_flag("--matrix-market", gen.matrix_market, "Store matrices as sibling .mtx files");
  g->add_flag("--no-ambient", gen.no_ambient, "Omit the ambient operator A");

  ConvergenceArgs conv;
  auto* c = app.add_subcommand("convergence", "Grid refinement study of the smallest buckling eigenvalue");
  c->add_option("--family", conv.family)->check(CLI::IsMember({"1d", "2d", "interval", "square"}));
  c->add_option("--levels", conv.levels, "Grid sizes, e.g. 50,100,200,400")->expected(1, -1);
  c->add_option("--method", conv.method)->check(CLI::IsMember({"dense", "iterative"}));
  c->add_option("--format", conv.format)->check(CLI::IsMember({"table", "csv", "json"}));
  c->add_option("-o,--output", conv.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }
  apply_thread_cap(threads);

  try {
    if (*v) {
      if (v->count("--random") > 0 && verify.random.empty()) verify.random.push_back("seed=7");
      return run_verify(verify);
    }
    if (*b) return run_buckle(buckle);
    if (*g) {
      if (g->count("--random") > 0 && gen.random.empty()) gen.random.push_back("seed=7");
      return run_gen(gen);
    }
    if (*c) return run_convergence(conv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

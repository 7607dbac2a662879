#include "krein/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include "krein/discretize.hpp"
#include "krein/eigen.hpp"
#include "krein/error.hpp"
#include "krein/factor.hpp"

namespace krein {

using nlohmann::json;

namespace {

double safe(double x) { return std::max(x, 1e-300); }

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Check {
  double residual = 0.0;
  std::string detail;
};

class Runner {
 public:
  explicit Runner(VerificationReport& report) : report_(report) {}

  void run(const std::string& name, double tolerance, const std::function<Check()>& body) {
    CheckItem item;
    item.name = name;
    item.tolerance = tolerance;
    const auto start = Clock::now();
    try {
      const Check c = body();
      item.residual = c.residual;
      item.detail = c.detail;
      item.pass = std::isfinite(c.residual) && c.residual <= tolerance;
    } catch (const Error& e) {
      item.error = e.what();
    } catch (const std::exception& e) {
      item.error = std::string("unexpected: ") + e.what();
    }
    report_.timings_ms.emplace_back(name, elapsed_ms(start));
    report_.items.push_back(std::move(item));
  }

 private:
  VerificationReport& report_;
};

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

// Consecutive indices whose values agree to `rel` form one cluster.
std::vector<std::pair<std::size_t, std::size_t>> clusters(const Vector& values, double rel) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t start = 0;
  for (std::size_t j = 1; j <= values.size(); ++j) {
    if (j == values.size() || values[j] - values[j - 1] > rel * std::abs(values[j])) {
      out.emplace_back(start, j);
      start = j;
    }
  }
  return out;
}

}  // namespace

bool VerificationReport::passed() const {
  return !items.empty() && std::all_of(items.begin(), items.end(), [](const CheckItem& i) { return i.pass; });
}

VerificationReport failed_construction(const std::string& source, const std::string& error) {
  VerificationReport report;
  report.provenance = source;
  CheckItem item;
  item.name = "instance";
  item.error = error;
  report.items.push_back(item);
  return report;
}

VerificationReport run_verification(const RestrictedOperator& op, const VerifyOptions& options) {
  const Tolerances& tol = options.tol;
  VerificationReport report;
  report.provenance = op.provenance();
  report.n = op.ambient_dim();
  report.d = op.domain_dim();
  report.epsilon = op.epsilon();
  report.tol = tol;
  Runner runner(report);

  ExtensionBundle bundle;
  bool have_bundle = false;
  runner.run("build_extensions", 0.0, [&] {
    bundle = build_extensions(op, tol);
    have_bundle = true;
    return Check{0.0, "SK, F, K, Q, N constructed"};
  });
  if (!have_bundle) return report;
  report.kernel_dim = bundle.adjoint_kernel.cols();

  const std::size_t n = op.ambient_dim();
  const std::size_t d = op.domain_dim();
  const DenseMatrix& sk = bundle.krein;
  const DenseMatrix& f = bundle.friedrichs_inverse;
  const double b_scale = safe(norm_max(op.image()));
  const double f_scale = safe(norm_max(f));

  std::optional<EigenDecomposition> sk_eig;
  auto krein_eig = [&]() -> const EigenDecomposition& {
    if (!sk_eig) sk_eig = sym_eig(sk);
    return *sk_eig;
  };

  runner.run("extension_property", tol.extension_property, [&] {
    return Check{norm_max(sk * op.basis() - op.image()) / b_scale, "max|SK*E - B| / max|B|"};
  });

  runner.run("kernel_identity", tol.kernel_angle, [&] {
    const EigenDecomposition& eig = krein_eig();
    const DenseMatrix zero_space = eig.vectors.col_range(0, n - d);
    const double angle = max_principal_angle_sin(zero_space, bundle.adjoint_kernel);
    return Check{angle, "sin of largest principal angle between ker(SK) and ran(B)^perp; dim ker(S*) = " +
                            std::to_string(bundle.adjoint_kernel.cols())};
  });

  runner.run("friedrichs_inverse", tol.krein_formula, [&] {
    const double on_range = norm_max(f * op.image() - op.basis());
    const double on_complement = norm_max(f * bundle.domain_complement) / f_scale;
    return Check{std::max(on_range, on_complement), "max(|F*B - E|, |F*N| / |F|)"};
  });

  runner.run("krein_formula", tol.krein_formula, [&] {
    const DenseMatrix reduced = reduced_krein_inverse(op, bundle);
    const DenseMatrix& q = bundle.range_basis;
    const DenseMatrix qskq = symmetrize(matmul_tn(q, sk * q));
    const DenseMatrix inv = linear_solve(qskq, DenseMatrix::identity(d));
    return Check{norm_max(reduced - inv) / f_scale, "max|Q'FQ - inv(Q'SK Q)| / max|F|"};
  });

  runner.run("unitary_equivalence_report", 0.0, [&] {
    report.buckling = verify_unitary_equivalence(op, bundle);
    return Check{0.0, "buckling report assembled"};
  });
  auto buckling = [&]() -> const BucklingReport& {
    if (!report.buckling) throw Error(Errc::ConvergenceFailure, "buckling report unavailable");
    return *report.buckling;
  };

  runner.run("hat_s_similarity", tol.unitary_equivalence, [&] {
    return Check{buckling().similarity_residual, "max|Q'FQ - Shat*T*Shat^-1| / max|F|"};
  });
  runner.run("polar_similarity", tol.unitary_equivalence, [&] {
    return Check{buckling().polar_residual, "max|Q'FQ - U*(G^-1/2 M G^-1/2)*U'| / max|F|"};
  });
  runner.run("hat_s_isometry", tol.unitarity, [&] {
    return Check{buckling().hat_s_isometry_residual, "max|Shat'Shat - G| / max|G|"};
  });
  runner.run("polar_unitarity", tol.unitarity, [&] {
    return Check{buckling().polar_unitarity_residual, "max|U'U - I|"};
  });
  runner.run("t_reciprocity", tol.spectral_identity, [&] {
    return Check{buckling().reciprocal_residual, "max_j |mu_T,j * lambda_j - 1|"};
  });
  runner.run("t_norm_bound", tol.t_norm, [&] {
    const auto& b = buckling();
    return Check{std::max(0.0, b.t_norm - b.epsilon_inv),
                 "||T||_W = " + fmt(b.t_norm) + ", 1/epsilon = " + fmt(b.epsilon_inv)};
  });

  runner.run("spectral_identity", tol.spectral_identity, [&] {
    const Vector pencil = buckling_pencil_eigs(op).values;
    const Vector& all = krein_eig().values;
    double worst = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double mu = all[n - d + j];
      worst = std::max(worst, std::abs(pencil[j] - mu) / safe(std::abs(mu)));
    }
    return Check{worst, "max_j |lambda_j - mu_K,j| / mu_K,j over " + std::to_string(d) + " eigenvalues"};
  });

  runner.run("mu_ordering", tol.mu_ordering, [&] {
    const MuSequence mu = mu_sequence(op, bundle, d, tol);
    double worst = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      worst = std::max(worst, (op.epsilon() - mu.friedrichs[j]) / op.epsilon());
      worst = std::max(worst, (mu.friedrichs[j] - mu.krein[j]) / mu.krein[j]);
    }
    return Check{std::max(worst, 0.0), std::string("epsilon <= mu_F,j <= mu_K,j; ordered = ") +
                                           (mu.ordered ? "true" : "false")};
  });

  // Candidates for the sandwich: A, SK and SK + N·W·Nᵀ with random PSD W.
  std::vector<std::pair<std::string, DenseMatrix>> candidates;
  if (op.ambient()) candidates.emplace_back("ambient", *op.ambient());
  candidates.emplace_back("krein", sk);
  {
    Rng rng(options.seed);
    const double s_scale = norm_max(op.compression());
    const std::size_t m = n - d;
    for (std::size_t r = 0; r < options.random_extensions; ++r) {
      const std::size_t rank = 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(m));
      const double scale = s_scale * std::pow(10.0, -2.0 + 4.0 * rng.uniform());
      candidates.emplace_back("random_" + std::to_string(r),
                              nonnegative_extension(bundle, random_psd(m, std::min(rank, m), scale, rng)));
    }
  }
  for (double a : options.shifts) {
    std::ostringstream name;
    name << "resolvent_sandwich_a=" << a;
    runner.run(name.str(), tol.resolvent_order, [&] {
      double worst = 0.0;
      std::string worst_name = "none";
      const ResolventBounds bounds = resolvent_bounds(op, bundle, a);
      for (const auto& [label, candidate] : candidates) {
        const ResolventSandwich s = resolvent_sandwich(op, bounds, candidate, tol);
        const double violation = std::max(-s.lower_margin, -s.upper_margin);
        if (violation > worst) {
          worst = violation;
          worst_name = label;
        }
      }
      return Check{worst, std::to_string(candidates.size()) + " extensions; largest violation from " + worst_name};
    });
  }

  runner.run("domain_decomposition", tol.extension_property, [&] {
    Rng rng(options.seed ^ 0xdec0ULL);
    double worst = 0.0;
    const double b_norm = safe(norm_two(op.image()));
    for (int trial = 0; trial < 5; ++trial) {
      const DenseMatrix v = rng.gaussian(n, 1);
      const DomainSplit split = domain_decompose(op, bundle, v.col(0));
      const double vn = norm2(v.col(0));
      const Vector coords = matvec_t(op.basis(), split.domain_part);
      const Vector off_domain = axpby(1.0, split.domain_part, -1.0, op.basis() * coords);
      worst = std::max(worst, norm2(off_domain) / vn);
      worst = std::max(worst, norm2(matvec_t(op.image(), split.kernel_part)) / (b_norm * vn));
    }
    return Check{worst, "u in ran(E), w orthogonal to ran(B) for 5 random v"};
  });

  PencilEigen pencil;
  bool have_pencil = false;
  runner.run("pencil_correspondence", tol.correspondence, [&] {
    const GramPair gp = gram_pair(op);
    pencil = buckling_pencil_eigs(op);
    have_pencil = true;
    double worst = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double lambda = pencil.values[j];
      const Vector c = pencil.vectors.col_vector(j);
      const Vector v = pencil_to_krein(op, gp, lambda, c, tol);
      const double vn = norm2(v);
      worst = std::max(worst, norm2(axpby(1.0, sk * v, -lambda, v)) / (lambda * vn));
      const PencilPair back = krein_to_pencil(op, bundle, v, tol);
      worst = std::max(worst, norm2(axpby(1.0, back.coords, -1.0, c)) / norm2(c));
      Vector again = op.image() * back.coords;
      for (double& x : again) x /= back.lambda;
      worst = std::max(worst, norm2(axpby(1.0, again, -1.0, v)) / vn);
    }
    return Check{worst, "forward eigen-residual and both round trips, " + std::to_string(d) + " pairs"};
  });

  runner.run("eigenspace_angles", tol.eigenspace_angle, [&] {
    if (!have_pencil) throw Error(Errc::ConvergenceFailure, "pencil eigenpairs unavailable");
    const EigenDecomposition& eig = krein_eig();
    DenseMatrix forward(n, d);
    for (std::size_t j = 0; j < d; ++j) {
      Vector v = op.image() * pencil.vectors.col(j);
      const double vn = norm2(v);
      for (double& x : v) x /= vn;
      forward.set_col(j, v);
    }
    double worst = 0.0;
    std::size_t largest = 0;
    for (const auto& [lo, hi] : clusters(pencil.values, 1e-8)) {
      largest = std::max(largest, hi - lo);
      const DenseMatrix mine = forward.col_range(lo, hi - lo);
      const DenseMatrix theirs = eig.vectors.col_range(n - d + lo, hi - lo);
      worst = std::max(worst, max_principal_angle_sin(mine, theirs));
    }
    return Check{worst, "largest multiplicity " + std::to_string(largest)};
  });

  return report;
}

json tolerances_to_json(const Tolerances& tol) {
  json j = json::object();
  for (const auto& field : tolerance_fields()) j[std::string(field.name)] = tol.*field.member;
  return j;
}

json buckling_report_to_json(const BucklingReport& r) {
  return json{{"lambdas", r.lambdas},
              {"t_norm_bound", {{"value", r.t_norm}, {"epsilon_inv", r.epsilon_inv}}},
              {"residual_hat_s_similarity", r.similarity_residual},
              {"residual_polar_similarity", r.polar_residual},
              {"residual_hat_s_isometry", r.hat_s_isometry_residual},
              {"residual_polar_unitarity", r.polar_unitarity_residual},
              {"instance_provenance", r.provenance}};
}

json to_json(const VerificationReport& report) {
  json items = json::array();
  for (const auto& item : report.items) {
    json j{{"name", item.name}, {"tolerance", item.tolerance}, {"pass", item.pass}};
    j["residual"] = item.residual ? json(*item.residual) : json(nullptr);
    if (!item.error.empty()) j["error"] = item.error;
    if (!item.detail.empty()) j["detail"] = item.detail;
    items.push_back(std::move(j));
  }
  json timings = json::object();
  for (const auto& [name, ms] : report.timings_ms) timings[name] = ms;
  json doc{{"schema", "krein-kit/verify-report/1"},
           {"provenance", report.provenance},
           {"info",
            {{"n", report.n},
             {"d", report.d},
             {"deficiency", report.n - report.d},
             {"kernel_dim", report.kernel_dim},
             {"epsilon", report.epsilon}}},
           {"tolerances", tolerances_to_json(report.tol)},
           {"items", std::move(items)},
           {"timings_ms", std::move(timings)},
           {"pass", report.passed()}};
  if (report.buckling) doc["buckling"] = buckling_report_to_json(*report.buckling);
  return doc;
}

std::string format_report_table(const json& report) {
  std::ostringstream os;
  os << "instance: " << report.value("provenance", std::string()) << '\n';
  if (report.contains("info")) {
    const auto& info = report["info"];
    os << "n = " << info.value("n", 0) << ", d = " << info.value("d", 0)
       << ", dim ker(S*) = " << info.value("kernel_dim", 0) << ", epsilon = " << info.value("epsilon", 0.0) << '\n';
  }
  os << std::left << std::setw(30) << "check" << std::setw(14) << "residual" << std::setw(12) << "tolerance"
     << "result\n";
  for (const auto& item : report["items"]) {
    os << std::left << std::setw(30) << item["name"].get<std::string>();
    if (item["residual"].is_null()) {
      os << std::setw(14) << "-";
    } else {
      std::ostringstream r;
      r << std::scientific << std::setprecision(3) << item["residual"].get<double>();
      os << std::setw(14) << r.str();
    }
    std::ostringstream t;
    t << std::scientific << std::setprecision(1) << item["tolerance"].get<double>();
    os << std::setw(12) << t.str() << (item["pass"].get<bool>() ? "PASS" : "FAIL");
    if (item.contains("error")) os << "  " << item["error"].get<std::string>();
    os << '\n';
  }
  os << (report.value("pass", false) ? "all checks passed" : "one or more checks FAILED") << '\n';
  return os.str();
}

}  // namespace krein

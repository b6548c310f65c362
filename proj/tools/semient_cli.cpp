// semient: k-sweeps, identity checks and state/Gram dumps on the sphere and torus models.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "semient/report.hpp"

namespace {

using namespace semient;

enum Exit { kOk = 0, kBreach = 1, kUsage = 2, kRuntime = 3 };

struct Options {
  RunConfig config;
  std::string out;
  int k = 0;
  double tol_entropy = 0.0;
  double tol_gram = 0.0;
  std::string isa = "auto";
};

void add_common(CLI::App* app, Options& o) {
  const std::map<std::string, ModelKind> models{{"sphere", ModelKind::Sphere}, {"torus", ModelKind::Torus}};
  const std::map<std::string, Submanifold> subs{{"antidiagonal", Submanifold::Antidiagonal},
                                                {"circle", Submanifold::Circle}};
  const std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}};
  RunConfig& c = o.config;
  app->add_option("--model", c.model, "sphere | torus")->transform(CLI::CheckedTransformer(models, CLI::ignore_case));
  app->add_option("--submanifold", c.submanifold, "antidiagonal | circle")
      ->transform(CLI::CheckedTransformer(subs, CLI::ignore_case));
  app->add_option("--k-min", c.k_min, "smallest level");
  app->add_option("--k-max", c.k_max, "largest level");
  app->add_option("--mu", c.mu, "theta characteristic (torus)");
  app->add_option("--format", c.format, "csv | json")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app->add_option("--out", o.out, "output file (default: standard output)");
  app->add_option("--seed", c.seed, "seed for randomized checks");
  app->add_option("--tol-entropy", o.tol_entropy, "entropy tolerance (default 1e-9 sphere, 1e-6 torus)");
  app->add_option("--tol-gram", o.tol_gram, "Gram/identity-residual tolerance (same defaults)");
  app->add_option("--tol-identity", c.tol_identity, "distance identity tolerance")->capture_default_str();
  app->add_option("--quad-angular", c.quad_angular, "sphere angular / circle nodes, torus x-nodes (0 = minimum)");
  app->add_option("--quad-radial", c.quad_radial, "sphere radial nodes, torus y-nodes (0 = minimum / adaptive)");
  app->add_option("--theta-tol", c.theta_tol, "theta truncation tolerance")->capture_default_str();
  app->add_flag("--reproducible", c.reproducible, "scalar kernels and zero wall times, bit-identical output");
  app->add_option("--isa", o.isa, "auto | scalar | avx2")->capture_default_str();
}

void finish(Options& o, const CLI::App* app) {
  if (app->count("--tol-entropy")) o.config.tol_entropy = o.tol_entropy;
  if (app->count("--tol-gram")) o.config.tol_gram = o.tol_gram;
  const auto isa = simd::parse_isa(o.isa);
  if (!isa) throw std::invalid_argument(fmt::format("unknown --isa '{}' (auto, scalar, avx2)", o.isa));
  o.config.isa = *isa;
  if (o.k > 0) o.config.k_min = o.config.k_max = o.k;
  o.config.validate();
}

// Either the --out file or std::cout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path));
  }
  std::ostream& stream() { return file_ ? static_cast<std::ostream&>(*file_) : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void dump_matrix_csv(std::ostream& os, const std::string& kind, const CMatrix& m) {
  for (std::size_t j = 0; j < m.rows(); ++j)
    for (std::size_t l = 0; l < m.cols(); ++l)
      os << kind << ',' << j << ',' << l << ',' << format_double(m(j, l).real()) << ','
         << format_double(m(j, l).imag()) << '\n';
}

nlohmann::ordered_json matrix_json(const CMatrix& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t j = 0; j < m.rows(); ++j) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t l = 0; l < m.cols(); ++l) row.push_back({m(j, l).real(), m(j, l).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_report(Options& o) {
  const RunConfig& c = o.config;
  const auto rows = run(c);
  Sink sink(o.out);
  if (c.format == OutputFormat::Csv) {
    write_csv(sink.stream(), rows);
  } else {
    write_json(sink.stream(), c, rows);
  }
  for (const ReportRow& r : rows) {
    if (std::fabs(r.entropy - r.ln_d_k) > c.tol_identity) {
      std::cerr << fmt::format("note: k={} is not maximally entangled (entropy {} vs ln d_k {})\n", r.k,
                               format_double(r.entropy), format_double(r.ln_d_k));
    }
  }
  const auto failures = row_failures(c, rows);
  for (const RowFailure& f : failures) {
    std::cerr << fmt::format("FAIL {} at k={}: {} > {}\n", f.check, f.k, format_double(f.value),
                             format_double(f.tolerance));
  }
  return failures.empty() ? kOk : kBreach;
}

int cmd_verify(Options& o) {
  const auto checks = verify_identities(o.config);
  Sink sink(o.out);
  write_checks(sink.stream(), o.config.format, checks);
  int failed = 0;
  for (const CheckResult& c : checks) {
    if (c.passed) continue;
    ++failed;
    std::cerr << fmt::format("FAIL {} at k={}: {} > {}\n", c.name, c.k, format_double(c.value),
                             format_double(c.tolerance));
  }
  std::cerr << fmt::format("{} checks, {} failed\n", checks.size(), failed);
  return failed == 0 ? kOk : kBreach;
}

int cmd_state(Options& o) {
  const RunConfig& c = o.config;
  const int k = c.k_min;
  const LagrangianState s = build_state(c, k);
  const StateMatrix v = s.normalized();
  const SchmidtDecomposition sd = schmidt(v, c.effective_isa());
  const double nu = entropy(v, true, c.effective_isa());
  Sink sink(o.out);
  std::ostream& os = sink.stream();
  if (c.format == OutputFormat::Csv) {
    os << "kind,j,l,re,im\n";
    dump_matrix_csv(os, "coeff", s.coeffs.coeffs());
    for (std::size_t m = 0; m < sd.alphas.size(); ++m)
      os << "schmidt," << m << ",," << format_double(sd.alphas[m]) << ",0\n";
    return kOk;
  }
  nlohmann::ordered_json doc;
  doc["model"] = model_name(c.model);
  doc["submanifold"] = submanifold_name(c.submanifold);
  doc["k"] = k;
  doc["mu"] = s.provenance.mu;
  doc["quadrature"] = s.provenance.quadrature;
  doc["raw_norm"] = s.raw_norm;
  doc["entropy"] = nu;
  doc["coeffs"] = matrix_json(s.coeffs.coeffs());
  doc["schmidt"] = sd.alphas;
  os << doc.dump(2) << '\n';
  return kOk;
}

int cmd_gram(Options& o) {
  const RunConfig& c = o.config;
  const int k = c.k_min;
  const Isa isa = c.effective_isa();
  CMatrix g;
  std::string basis;
  if (c.model == ModelKind::Sphere) {
    const SphereModel model(k);
    g = gram_matrix(model, SphereQuadrature(model, c.quad_radial, c.quad_angular), isa);
    basis = "orthonormal";
  } else {
    const TorusModel model(k, c.mu);
    TorusQuadratureOptions opts;
    opts.theta_tol = c.theta_tol;
    opts.x_nodes = c.quad_angular;
    opts.y_nodes = c.quad_radial;
    g = torus_gram(model, TorusQuadrature(model, opts, isa), isa);
    basis = "theta";
  }
  Sink sink(o.out);
  std::ostream& os = sink.stream();
  if (c.format == OutputFormat::Csv) {
    os << "kind,j,l,re,im\n";
    dump_matrix_csv(os, "gram", g);
    return kOk;
  }
  nlohmann::ordered_json doc;
  doc["model"] = model_name(c.model);
  doc["basis"] = basis;
  doc["k"] = k;
  doc["gram"] = matrix_json(g);
  os << doc.dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement of Lagrangian states on the sphere and torus models"};
  app.require_subcommand(1);
  Options report, verify, state, gram;
  CLI::App* r = app.add_subcommand("report", "per-k entanglement sweep");
  CLI::App* v = app.add_subcommand("verify", "identity checks per k");
  CLI::App* s = app.add_subcommand("state", "dump one state's coefficients and Schmidt spectrum");
  CLI::App* g = app.add_subcommand("gram", "dump a model Gram matrix");
  add_common(r, report);
  add_common(v, verify);
  add_common(s, state);
  add_common(g, gram);
  s->add_option("--k", state.k, "level (default: k-min)");
  g->add_option("--k", gram.k, "level (default: k-min)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*r) { finish(report, r); return cmd_report(report); }
    if (*v) { finish(verify, v); return cmd_verify(verify); }
    if (*s) { finish(state, s); return cmd_state(state); }
    if (*g) { finish(gram, g); return cmd_gram(gram); }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}

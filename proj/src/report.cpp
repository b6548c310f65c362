#include "semient/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "json.hpp"
#include "semient/special.hpp"

namespace semient {

double RunConfig::entropy_tolerance() const {
  if (tol_entropy) return *tol_entropy;
  return model == ModelKind::Sphere ? 1e-9 : 1e-6;
}

double RunConfig::gram_tolerance() const {
  if (tol_gram) return *tol_gram;
  return model == ModelKind::Sphere ? 1e-9 : 1e-6;
}

void RunConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (k_min > k_max) fail(fmt::format("k-min ({}) exceeds k-max ({})", k_min, k_max));
  if (k_min < 1) fail(fmt::format("k-min must be >= 1, got {}", k_min));
  if (model == ModelKind::Torus && k_min < 3) fail(fmt::format("the torus requires k >= 3, got k-min {}", k_min));
  if (submanifold == Submanifold::Circle && model != ModelKind::Sphere) {
    fail("the circle submanifold is only defined on the sphere");
  }
  if (!std::isfinite(mu)) fail("mu must be finite");
  if (quad_angular < 0 || quad_radial < 0) fail("quadrature node counts must be non-negative");
  if (!(theta_tol > 0.0)) fail(fmt::format("theta-tol must be > 0, got {}", theta_tol));
  if (!(entropy_tolerance() > 0.0)) fail("tol-entropy must be > 0");
  if (!(gram_tolerance() > 0.0)) fail("tol-gram must be > 0");
  if (!(tol_identity > 0.0)) fail("tol-identity must be > 0");
}

namespace {

struct Built {
  LagrangianState state;
  double gram_residual;
};

double identity_defect(const CMatrix& g) { return max_abs_difference(g, CMatrix::identity(g.rows())); }

TorusQuadratureOptions torus_options(const RunConfig& c) {
  TorusQuadratureOptions o;
  o.theta_tol = c.theta_tol;
  o.x_nodes = c.quad_angular;
  o.y_nodes = c.quad_radial;
  return o;
}

Built build(const RunConfig& c, int k, bool want_state) {
  const Isa isa = c.effective_isa();
  if (c.model == ModelKind::Sphere) {
    const SphereModel model(k);
    const SphereQuadrature quad(model, c.quad_radial, c.quad_angular);
    const double gram = identity_defect(gram_matrix(model, quad, isa));
    if (!want_state) return {{}, gram};
    if (c.submanifold == Submanifold::Circle) {
      const int m = c.quad_angular == 0 ? 2 * k + 2 : c.quad_angular;
      return {circle_state_quadrature(model, m, isa), gram};
    }
    LagrangianState s = antidiagonal_state(model, quad, isa);
    return {s, std::max(gram, s.identity_residual)};
  }
  const TorusModel model(k, c.mu);
  const TorusQuadrature quad(model, torus_options(c), isa);
  const TorusBasis basis = orthonormal_basis(model, quad, isa);
  const double gram = identity_defect(basis_gram(basis, quad, isa));
  if (!want_state) return {{}, gram};
  LagrangianState s = antidiagonal_state(basis, quad, isa);
  return {s, std::max(gram, s.identity_residual)};
}

}  // namespace

LagrangianState build_state(const RunConfig& config, int k) { return build(config, k, true).state; }

double basis_gram_residual(const RunConfig& config, int k) { return build(config, k, false).gram_residual; }

double target_entropy(const RunConfig& config, int k) {
  if (config.submanifold == Submanifold::Circle) return circle_entropy_closed_form(k);
  const int d = config.model == ModelKind::Sphere ? k + 1 : k;
  return std::log(static_cast<double>(d));
}

ReportRow evaluate_row(const RunConfig& config, int k) {
  const auto start = std::chrono::steady_clock::now();
  const Isa isa = config.effective_isa();
  const Built b = build(config, k, true);
  const StateMatrix v = b.state.normalized();
  ReportRow r;
  r.k = k;
  r.d_k = static_cast<int>(v.dim());
  r.entropy = entropy(v, true, isa);
  r.ln_d_k = std::log(static_cast<double>(r.d_k));
  r.entropy_residual = std::fabs(r.entropy - target_entropy(config, k));
  r.separable_distance = closest_separable(v, isa).distance;
  r.corollary_rhs = std::sqrt(-std::expm1(-r.entropy));
  r.gram_residual = b.gram_residual;
  r.raw_norm = b.state.raw_norm;
  const auto stop = std::chrono::steady_clock::now();
  r.wall_time_ms = config.reproducible ? 0.0 : std::chrono::duration<double, std::milli>(stop - start).count();
  return r;
}

std::vector<ReportRow> run(const RunConfig& config) {
  config.validate();
  std::vector<ReportRow> rows;
  rows.reserve(static_cast<std::size_t>(config.k_max - config.k_min + 1));
  for (int k = config.k_min; k <= config.k_max; ++k) rows.push_back(evaluate_row(config, k));
  return rows;
}

std::vector<RowFailure> row_failures(const RunConfig& config, const std::vector<ReportRow>& rows) {
  std::vector<RowFailure> out;
  const double te = config.entropy_tolerance(), tg = config.gram_tolerance();
  for (const ReportRow& r : rows) {
    // NaN never satisfies <=, so it is reported as a breach.
    if (!(r.entropy_residual <= te)) out.push_back({r.k, "entropy", r.entropy_residual, te});
    if (!(r.gram_residual <= tg)) out.push_back({r.k, "gram", r.gram_residual, tg});
    if (config.submanifold == Submanifold::Antidiagonal) {
      const double gap = std::fabs(r.separable_distance - r.corollary_rhs);
      if (!(gap <= config.tol_identity)) out.push_back({r.k, "corollary", gap, config.tol_identity});
    }
  }
  return out;
}

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << kCsvHeader << '\n';
  for (const ReportRow& r : rows) {
    out << r.k << ',' << r.d_k << ',' << format_double(r.entropy) << ',' << format_double(r.ln_d_k) << ','
        << format_double(r.entropy_residual) << ',' << format_double(r.separable_distance) << ','
        << format_double(r.corollary_rhs) << ',' << format_double(r.gram_residual) << ','
        << format_double(r.raw_norm) << ',' << format_double(r.wall_time_ms) << '\n';
  }
}

namespace {

template <class T>
T parse_field(std::string_view s, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::runtime_error(fmt::format("parse_csv: line {}: cannot parse field '{}'", line, s));
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  while (true) {
    const std::size_t comma = s.find(',', begin);
    parts.push_back(s.substr(begin, comma == std::string_view::npos ? std::string_view::npos : comma - begin));
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  return parts;
}

}  // namespace

std::vector<ReportRow> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error(fmt::format("parse_csv: unexpected header '{}'", line));
  }
  std::vector<ReportRow> rows;
  std::size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 10) throw std::runtime_error(fmt::format("parse_csv: line {} has {} fields, expected 10", n, f.size()));
    ReportRow r;
    r.k = parse_field<int>(f[0], n);
    r.d_k = parse_field<int>(f[1], n);
    r.entropy = parse_field<double>(f[2], n);
    r.ln_d_k = parse_field<double>(f[3], n);
    r.entropy_residual = parse_field<double>(f[4], n);
    r.separable_distance = parse_field<double>(f[5], n);
    r.corollary_rhs = parse_field<double>(f[6], n);
    r.gram_residual = parse_field<double>(f[7], n);
    r.raw_norm = parse_field<double>(f[8], n);
    r.wall_time_ms = parse_field<double>(f[9], n);
    rows.push_back(r);
  }
  return rows;
}

void write_json(std::ostream& out, const RunConfig& config, const std::vector<ReportRow>& rows) {
  nlohmann::ordered_json doc;
  doc["model"] = model_name(config.model);
  doc["submanifold"] = submanifold_name(config.submanifold);
  doc["mu"] = config.mu;
  doc["seed"] = config.seed;
  doc["reproducible"] = config.reproducible;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const ReportRow& r : rows) {
    doc["rows"].push_back({{"k", r.k},
                           {"d_k", r.d_k},
                           {"entropy", r.entropy},
                           {"ln_d_k", r.ln_d_k},
                           {"entropy_residual", r.entropy_residual},
                           {"separable_distance", r.separable_distance},
                           {"corollary_rhs", r.corollary_rhs},
                           {"gram_residual", r.gram_residual},
                           {"raw_norm", r.raw_norm},
                           {"wall_time_ms", r.wall_time_ms}});
  }
  out << doc.dump(2) << '\n';
}

double binomial_identity_defect(int k) {
  if (k < 0) throw std::invalid_argument("binomial_identity_defect: k must be >= 0");
  if (k <= 30) {
    uint128 sum = 0;
    for (int j = 0; j <= k; ++j) {
      const uint128 c = *binomial_exact(k, j);
      sum += c * c;
    }
    const uint128 central = *binomial_exact(2 * k, k);
    if (sum == central) return 0.0;
    const double diff = sum > central ? static_cast<double>(sum - central) : static_cast<double>(central - sum);
    return diff / static_cast<double>(central);
  }
  const double log_central = log_binomial(2 * k, k);
  CompensatedSum s;
  for (int j = 0; j <= k; ++j) s.add(std::exp(2.0 * log_binomial(k, j) - log_central));
  return std::fabs(s.value() - 1.0);
}

std::vector<CheckResult> verify_identities(const RunConfig& config) {
  config.validate();
  const Isa isa = config.effective_isa();
  std::vector<CheckResult> out;
  for (int k = config.k_min; k <= config.k_max; ++k) {
    const LagrangianState state = build_state(config, k);
    const StateMatrix v = state.normalized();

    if (config.submanifold == Submanifold::Antidiagonal) {
      const double nu = entropy(v, true, isa);
      const double d = static_cast<double>(v.dim());
      const double dist = closest_separable(v, isa).distance;
      const double gap = std::max(std::fabs(dist - std::sqrt(-std::expm1(-nu))), std::fabs(dist - std::sqrt((d - 1.0) / d)));
      out.push_back({"corollary-distance", k, gap, config.tol_identity, gap <= config.tol_identity,
                     fmt::format("D = {}", format_double(dist))});
    }

    const double bin = binomial_identity_defect(k);
    const double bin_tol = k <= 30 ? 0.0 : 1e-12;
    out.push_back({"binomial-identity", k, bin, bin_tol, bin <= bin_tol, k <= 30 ? "exact integers" : "log-space"});

    if (config.model == ModelKind::Sphere) {
      RunConfig circle = config;
      circle.submanifold = Submanifold::Circle;
      const StateMatrix quad = build_state(circle, k).normalized();
      const StateMatrix closed = circle_state_closed_form(k).coeffs;
      const double diff = max_abs_difference(quad.coeffs(), closed.coeffs());
      out.push_back({"circle-closed-form", k, diff, 1e-12, diff <= 1e-12, ""});
    }

    std::mt19937_64 rng(config.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(k));
    const CMatrix u1 = random_unitary(v.dim(), rng);
    const CMatrix u2 = random_unitary(v.dim(), rng);
    const StateMatrix rotated(u1 * v.coeffs() * u2.transpose());
    const double inv = std::fabs(entropy(rotated, true, isa) - entropy(v, true, isa));
    out.push_back({"unitary-invariance", k, inv, 1e-10, inv <= 1e-10, ""});
  }
  return out;
}

void write_checks(std::ostream& out, OutputFormat format, const std::vector<CheckResult>& checks) {
  if (format == OutputFormat::Json) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const CheckResult& c : checks) {
      doc.push_back({{"check", c.name},
                     {"k", c.k},
                     {"value", c.value},
                     {"tolerance", c.tolerance},
                     {"passed", c.passed},
                     {"detail", c.detail}});
    }
    out << doc.dump(2) << '\n';
    return;
  }
  out << "check,k,value,tolerance,status\n";
  for (const CheckResult& c : checks) {
    out << c.name << ',' << c.k << ',' << format_double(c.value) << ',' << format_double(c.tolerance) << ','
        << (c.passed ? "pass" : "FAIL") << '\n';
  }
}

}  // namespace semient

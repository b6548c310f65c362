#pragma once

// k-sweeps over a model, per-k entanglement rows, CSV/JSON rendering and the
// identity checks behind the `verify` subcommand.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "semient/states.hpp"

namespace semient {

enum class OutputFormat { Csv, Json };

struct RunConfig {
  ModelKind model = ModelKind::Sphere;
  Submanifold submanifold = Submanifold::Antidiagonal;
  int k_min = 1;
  int k_max = 10;
  double mu = 0.0;
  int quad_angular = 0;  ///< sphere angular / circle nodes; torus x-nodes. 0 = minimum
  int quad_radial = 0;   ///< sphere radial nodes; torus y-nodes. 0 = minimum / adaptive
  double theta_tol = 1e-13;
  std::optional<double> tol_entropy;  ///< default 1e-9 sphere, 1e-6 torus
  std::optional<double> tol_gram;     ///< same defaults
  double tol_identity = 1e-9;
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::Csv;
  bool reproducible = false;
  Isa isa = Isa::Auto;

  double entropy_tolerance() const;
  double gram_tolerance() const;
  /// Scalar kernels when reproducible, otherwise the requested ISA.
  Isa effective_isa() const { return reproducible ? Isa::Scalar : isa; }
  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct ReportRow {
  int k = 0;
  int d_k = 0;
  double entropy = 0.0;
  double ln_d_k = 0.0;
  double entropy_residual = 0.0;
  double separable_distance = 0.0;
  double corollary_rhs = 0.0;
  double gram_residual = 0.0;
  double raw_norm = 0.0;
  double wall_time_ms = 0.0;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

inline constexpr const char* kCsvHeader =
    "k,d_k,entropy,ln_d_k,entropy_residual,separable_distance,corollary_rhs,gram_residual,raw_norm,wall_time_ms";

/// The state the config describes at level k.
LagrangianState build_state(const RunConfig& config, int k);

/// max |G - I| of the model's orthonormal basis under the quadrature the config selects.
double basis_gram_residual(const RunConfig& config, int k);

/// Entropy the row is compared against: ln d_k, or the closed-form circle entropy.
double target_entropy(const RunConfig& config, int k);

ReportRow evaluate_row(const RunConfig& config, int k);

/// One row per k in [k_min, k_max], ascending.
std::vector<ReportRow> run(const RunConfig& config);

struct RowFailure {
  int k;
  std::string check;
  double value;
  double tolerance;
};

/// Tolerance breaches among the rows: entropy, gram, and for antidiagonal rows
/// |separable_distance - corollary_rhs| against tol_identity.
std::vector<RowFailure> row_failures(const RunConfig& config, const std::vector<ReportRow>& rows);

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows);
/// Throws std::runtime_error on a malformed header or row.
std::vector<ReportRow> parse_csv(std::istream& in);
void write_json(std::ostream& out, const RunConfig& config, const std::vector<ReportRow>& rows);
std::string format_double(double x);

struct CheckResult {
  std::string name;
  int k;
  double value;
  double tolerance;
  bool passed;
  std::string detail;
};

/// Per k: (a) corollary distance identity on maximally entangled rows,
/// (b) sum_j C(k,j)^2 = C(2k,k), (c) circle quadrature vs closed form (sphere),
/// (d) entropy invariance under seeded local unitaries.
std::vector<CheckResult> verify_identities(const RunConfig& config);

/// (b) alone: 0 on exact equality for k <= 30, else |sum / C(2k,k) - 1| in log-space.
double binomial_identity_defect(int k);

void write_checks(std::ostream& out, OutputFormat format, const std::vector<CheckResult>& checks);

}  // namespace semient

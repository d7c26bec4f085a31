#pragma once

#include <optional>
#include <string>
#include <vector>

#include "steklov/geometry.hpp"
#include "steklov/report_io.hpp"
#include "steklov/shells.hpp"

namespace steklov {

enum class CheckKind {
  SHELL_VALIDATION,
  SHRINKING_HOLE,
  ISOPERIMETRIC_M,
  ISOPERIMETRIC_P,
  CORRECTOR,
  LEMMA33,
  FRIEDRICH,
  NODAL,
};

const char* check_kind_name(CheckKind kind);
std::optional<CheckKind> parse_check_kind(const std::string& name);

struct Resolution {
  int n_rays = 256;
  int n_radial = 64;
  double grading = 0.85;
};

struct ToleranceTable {
  double eigen_oracle_rel = 0.01;          // FEM vs closed form at full resolution
  double inequality_slack = 0.005;         // applied to the favorable side only
  double cluster_gap = 1e-3;               // relative gap closing a multiplicity cluster
  double nodal_zero = 1e-8;                // neutral band in the sign classification
  double decrease_slack = 0.0;             // 0 = strict decrease required
  double limit_rel = 0.02;                 // final relative distance to the limit
  double domain_monotonicity_slack = 0.02; // sigma1 vs the inscribed-shell reference
  double ratio_min = 3.0;                  // error drop per resolution doubling
};

struct ExperimentPlan {
  DomainSpec domain;  // hole_radius ignored; holes come from the schedule
  std::vector<double> radius_schedule;
  Resolution resolution;
  std::vector<CheckKind> checks;
  ToleranceTable tolerances;

  // ValidationError listing every violation: schedule nonempty, strictly
  // decreasing, positive, below min_boundary_radius; resolution in range.
  void validate() const;
};

struct Verdict {
  enum Status { PASS, FAIL, NOT_APPLICABLE };
  std::string name;
  Status status = PASS;
  std::string detail;
};

const char* verdict_status_name(Verdict::Status s);

struct CheckReport {
  std::string check;
  Table table;
  std::vector<Verdict> verdicts;

  bool all_pass() const;  // no FAIL; NOT_APPLICABLE does not count against
};

// One row per scheduled hole radius. Shell references are closed forms at
// the equal-measure, equal-perimeter and inscribed radii; the FEM columns
// never feed them.
struct RadiusRow {
  double r = 0.0;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  int sigma2_cluster_size = 0;
  double sigma1_shell_RM = 0.0, sigma2_shell_RM = 0.0;
  double sigma1_shell_Rm = 0.0, sigma2_shell_Rm = 0.0;
  double sigma2_shell_RP = 0.0;
  double h1_err_u1 = 0.0;     // vs the constant c0, zero-extended over the hole
  double h1_err_u2 = 0.0;     // vs the aligned unperforated eigenfunction
  double u2_alignment = 0.0;  // boundary inner product after alignment, -> 1
  std::vector<int> nodal_counts;
  bool nodal_u1_ok = false;
  bool nodal_cluster2_ok = false;
  bool nodal_adjacency_ok = false;
  bool nodal_bounds_ok = false;
};

struct AsymptoticsReport {
  double sigma_bar1 = 0.0;  // first nontrivial eigenvalue of the unperforated domain
  double c0 = 0.0;          // limit constant of the ground state, 1/sqrt(perimeter)
  double R_M = 0.0, R_P = 0.0, R_m = 0.0;
  std::vector<RadiusRow> rows;
  std::vector<Verdict> verdicts;        // limit verdicts
  std::vector<Verdict> nodal_verdicts;  // filled only when nodal counting ran
  bool has_nodal = false;

  Table table() const;
  Table nodal_table() const;
};

// FEM eigenvalues on an annulus ladder against the closed forms; rows carry
// relative errors and the error ratio to the previous rung. Resolutions run
// coarse to fine.
CheckReport run_shell_validation(const std::vector<Resolution>& resolutions,
                                 const ShellSpec& shell,
                                 const ToleranceTable& tol = {});

// Full radius sweep: eigenvalues, limit gaps, H1 errors, and (when NODAL is
// among plan.checks) nodal counts. ScheduleTooCoarse when a radius leaves
// fewer than two radial layers inside (r, 2r].
AsymptoticsReport run_shrinking_hole(const ExperimentPlan& plan);

CheckReport to_check_report(const AsymptoticsReport& report);
CheckReport nodal_check_report(const AsymptoticsReport& report);

// Per-radius inequality verdicts against the equal-measure shell (measure)
// and the equal-perimeter shell (perimeter), plus the hole-independent ball
// bounds on the unperforated eigenvalue. A centered disk turns every verdict
// into a two-sided equality check.
CheckReport run_isoperimetric_check(const ExperimentPlan& plan, bool measure,
                                    bool perimeter);
CheckReport isoperimetric_from_report(const AsymptoticsReport& report,
                                      const ExperimentPlan& plan, bool measure,
                                      bool perimeter);

// Boundary mass of the normalized shell eigenfunction against its limit
// value perimeter/(2 pi R_M). enclosure_radius 0 picks 1.5 * max rho;
// InvalidEnclosure when the enclosure does not contain the domain.
CheckReport run_lemma33_check(const DomainSpec& domain,
                              const std::vector<double>& radii,
                              double enclosure_radius = 0.0);

// Transition-profile norms along an epsilon schedule: the squared L2 norm
// tends to the domain measure, the squared gradient norm to zero, both
// monotonically beyond the first entry.
CheckReport run_corrector_check(const std::vector<CorrectorSpec>& schedule,
                                double domain_measure);

// Best constant of the trace inequality at the largest scheduled radius,
// validated on random fields and under one refinement.
CheckReport run_friedrich_check(const ExperimentPlan& plan);

// Geometric schedule (ratio 1/2) from 0.2 * min_boundary_radius, entries
// below four first-layer thicknesses dropped.
std::vector<double> default_radius_schedule(const DomainSpec& domain,
                                            const Resolution& res);
std::vector<CorrectorSpec> default_corrector_schedule(int n);

// Every requested check, in declaration order of CheckKind; the radius sweep
// is solved once and shared by the checks that read it.
std::vector<CheckReport> run_experiment(const ExperimentPlan& plan);

}  // namespace steklov

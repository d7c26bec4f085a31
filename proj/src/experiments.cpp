#include "steklov/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <variant>

#include "steklov/analysis.hpp"
#include "steklov/dense.hpp"
#include "steklov/discretize.hpp"
#include "steklov/eigensolve.hpp"
#include "steklov/errors.hpp"
#include "steklov/threads.hpp"

namespace steklov {

namespace {

constexpr double kPi = std::numbers::pi;

Verdict make_verdict(std::string name, bool pass, std::string detail) {
  Verdict v;
  v.name = std::move(name);
  v.status = pass ? Verdict::PASS : Verdict::FAIL;
  v.detail = std::move(detail);
  return v;
}

struct DecreaseCheck {
  bool pass = true;
  std::string detail;
};

// Strict decrease of v[from..]; slack > 0 demands a margin.
DecreaseCheck check_decreasing(const std::vector<double>& v, std::size_t from,
                               double slack) {
  for (std::size_t i = from; i + 1 < v.size(); ++i) {
    if (!(v[i + 1] < v[i] * (1.0 - slack))) {
      return {false, "stalls at entry " + std::to_string(i + 1) + ": " +
                         format_value(v[i]) + " -> " + format_value(v[i + 1])};
    }
  }
  return {true, v.empty() ? std::string("no entries")
                          : "final " + format_value(v.back())};
}

// Two radial mesh layers must fit inside (r, 2r]: the near-hole layer of the
// eigenfunctions is what the limit checks measure.
void require_resolved_hole(const DomainSpec& domain, const Resolution& res,
                           double r) {
  const int n = res.n_radial;
  const double g = res.grading;
  double sum = 0.0, w = 1.0;
  for (int k = 0; k < n; ++k) {
    sum += w;
    w *= g;
  }
  const double inner_two =
      (std::pow(g, n - 1) + std::pow(g, n - 2)) / sum;
  if ((max_boundary_radius(domain) - r) * inner_two > r) {
    raise(ErrorCode::ScheduleTooCoarse,
          "experiments: radius " + format_value(r) +
              " leaves fewer than two radial layers inside (r, 2r]");
  }
}

const std::vector<int>& cluster_containing(
    const std::vector<std::vector<int>>& clusters, int index) {
  for (const auto& c : clusters) {
    for (int j : c) {
      if (j == index) return c;
    }
  }
  raise(ErrorCode::ValidationError,
        "experiments: eigenvalue index outside every cluster");
}

// f on the perforated mesh, moved to the unperforated mesh of the same ray
// set by linear interpolation along each ray; zero at and below the hole
// circle (the zero-trace extension).
Field transfer_to_unperforated(const Mesh& from, const Field& f,
                               const Mesh& to) {
  if (from.n_rays != to.n_rays) {
    raise(ErrorCode::InvalidSpec, "experiments: meshes share no ray set");
  }
  const std::vector<double> fe = f.expanded();
  Field out = make_field(to);
  const int base = to.has_center ? 1 : 0;
  const int last = from.n_rings - 1;
  for (std::size_t v = 0; v < to.vertex_count(); ++v) {
    if (to.has_center && v == 0) continue;  // origin sits inside the hole
    const int ray = (static_cast<int>(v) - base) % to.n_rays;
    const double s = std::hypot(to.vertices[v][0], to.vertices[v][1]);
    const auto station = [&](int m) {
      const auto& p = from.vertices[from.ring_vertex(m, ray)];
      return std::hypot(p[0], p[1]);
    };
    double value = 0.0;
    if (s <= station(0)) {
      value = 0.0;
    } else if (s >= station(last)) {
      value = fe[from.ring_vertex(last, ray)];
    } else {
      int m = 0;
      while (m + 1 < last && station(m + 1) < s) ++m;
      const double t0 = station(m), t1 = station(m + 1);
      const double f0 = fe[from.ring_vertex(m, ray)];
      const double f1 = fe[from.ring_vertex(m + 1, ray)];
      value = f0 + (f1 - f0) * (s - t0) / (t1 - t0);
    }
    out.values[v] = value;
  }
  return out;
}

std::string pass_str(bool b) { return b ? "pass" : "fail"; }

}  // namespace

const char* check_kind_name(CheckKind kind) {
  switch (kind) {
    case CheckKind::SHELL_VALIDATION: return "SHELL_VALIDATION";
    case CheckKind::SHRINKING_HOLE: return "SHRINKING_HOLE";
    case CheckKind::ISOPERIMETRIC_M: return "ISOPERIMETRIC_M";
    case CheckKind::ISOPERIMETRIC_P: return "ISOPERIMETRIC_P";
    case CheckKind::CORRECTOR: return "CORRECTOR";
    case CheckKind::LEMMA33: return "LEMMA33";
    case CheckKind::FRIEDRICH: return "FRIEDRICH";
    case CheckKind::NODAL: return "NODAL";
  }
  return "?";
}

std::optional<CheckKind> parse_check_kind(const std::string& name) {
  static const CheckKind all[] = {
      CheckKind::SHELL_VALIDATION, CheckKind::SHRINKING_HOLE,
      CheckKind::ISOPERIMETRIC_M,  CheckKind::ISOPERIMETRIC_P,
      CheckKind::CORRECTOR,        CheckKind::LEMMA33,
      CheckKind::FRIEDRICH,        CheckKind::NODAL,
  };
  for (CheckKind k : all) {
    if (name == check_kind_name(k)) return k;
  }
  return std::nullopt;
}

const char* verdict_status_name(Verdict::Status s) {
  switch (s) {
    case Verdict::PASS: return "pass";
    case Verdict::FAIL: return "fail";
    case Verdict::NOT_APPLICABLE: return "not-applicable";
  }
  return "?";
}

bool CheckReport::all_pass() const {
  for (const auto& v : verdicts) {
    if (v.status == Verdict::FAIL) return false;
  }
  return true;
}

void ExperimentPlan::validate() const {
  std::vector<std::string> bad;
  domain.validate();
  if (radius_schedule.empty()) bad.push_back("schedule is empty");
  const double rm = min_boundary_radius(domain);
  for (std::size_t i = 0; i < radius_schedule.size(); ++i) {
    const double r = radius_schedule[i];
    if (!(r > 0.0)) bad.push_back("schedule entry " + std::to_string(i) + " not positive");
    if (!(r < rm)) {
      bad.push_back("schedule entry " + std::to_string(i) +
                    " reaches the outer boundary (min rho = " + format_value(rm) + ")");
    }
    if (i > 0 && !(r < radius_schedule[i - 1])) {
      bad.push_back("schedule not strictly decreasing at entry " + std::to_string(i));
    }
  }
  if (resolution.n_rays < 8) bad.push_back("n_rays below 8");
  if (resolution.n_radial < 2) bad.push_back("n_radial below 2");
  if (!(resolution.grading > 0.0) || resolution.grading > 1.0) {
    bad.push_back("grading outside (0, 1]");
  }
  if (!bad.empty()) {
    std::string msg = "experiments: invalid plan";
    for (const auto& b : bad) msg += "; " + b;
    raise(ErrorCode::ValidationError, msg);
  }
}

CheckReport run_shell_validation(const std::vector<Resolution>& resolutions,
                                 const ShellSpec& shell,
                                 const ToleranceTable& tol) {
  shell.validate();
  if (shell.n != 2) {
    raise(ErrorCode::InvalidSpec, "experiments: shell validation meshes are planar");
  }
  if (!(shell.r > 0.0)) {
    raise(ErrorCode::HoleRequired, "experiments: shell validation needs r > 0");
  }
  if (resolutions.empty()) {
    raise(ErrorCode::InvalidSpec, "experiments: no resolutions given");
  }

  const double exact1 = sigma1_shell(shell);
  const double exact2 = sigma2_shell(shell);
  const DomainSpec dom = DomainSpec::disk(shell.R, shell.r);

  struct Rung {
    double fem1 = 0, fem2 = 0, fem3 = 0;
    double err1 = 0, err2 = 0;
    int cluster_size = 0;
    bool cluster_ok = false;
  };
  std::vector<Rung> rungs(resolutions.size());
  parallel_for_indices(resolutions.size(), [&](std::size_t i) {
    const Resolution& res = resolutions[i];
    const Mesh mesh = build_polar_mesh(dom, res.n_rays, res.n_radial, res.grading);
    const SpectralResult sd = solve_steklov_dirichlet(mesh, 4, tol.cluster_gap);
    Rung rung;
    rung.fem1 = sd.eigenvalues[0];
    rung.fem2 = sd.eigenvalues[1];
    rung.fem3 = sd.eigenvalues[2];
    rung.err1 = std::fabs(rung.fem1 - exact1) / exact1;
    rung.err2 = std::max(std::fabs(rung.fem2 - exact2),
                         std::fabs(rung.fem3 - exact2)) / exact2;
    const auto& cl = cluster_containing(sd.clusters, 1);
    rung.cluster_size = static_cast<int>(cl.size());
    rung.cluster_ok = cl == std::vector<int>{1, 2};
    rungs[i] = rung;
  });

  CheckReport report;
  report.check = "shell_validation";
  report.table.columns = {"n_rays",      "n_radial",       "grading",
                          "sigma1",      "sigma1_exact",   "sigma1_rel_err",
                          "sigma1_ratio", "sigma2",        "sigma3",
                          "sigma2_exact", "sigma2_rel_err", "cluster_size"};
  std::vector<double> ratios;
  for (std::size_t i = 0; i < rungs.size(); ++i) {
    const double ratio = i == 0 ? 0.0 : rungs[i - 1].err1 / rungs[i].err1;
    if (i > 0) ratios.push_back(ratio);
    report.table.rows.push_back({std::to_string(resolutions[i].n_rays),
                                 std::to_string(resolutions[i].n_radial),
                                 format_value(resolutions[i].grading),
                                 format_value(rungs[i].fem1),
                                 format_value(exact1),
                                 format_value(rungs[i].err1),
                                 format_value(ratio),
                                 format_value(rungs[i].fem2),
                                 format_value(rungs[i].fem3),
                                 format_value(exact2),
                                 format_value(rungs[i].err2),
                                 std::to_string(rungs[i].cluster_size)});
  }

  const Rung& fine = rungs.back();
  report.verdicts.push_back(make_verdict(
      "sigma1_accuracy", fine.err1 <= tol.eigen_oracle_rel,
      "rel err " + format_value(fine.err1) + " vs " + format_value(tol.eigen_oracle_rel)));
  if (ratios.empty()) {
    Verdict v;
    v.name = "sigma1_convergence";
    v.status = Verdict::NOT_APPLICABLE;
    v.detail = "single rung";
    report.verdicts.push_back(v);
  } else {
    const double worst = *std::min_element(ratios.begin(), ratios.end());
    report.verdicts.push_back(make_verdict(
        "sigma1_convergence", worst >= tol.ratio_min,
        "min ratio " + format_value(worst) + " vs " + format_value(tol.ratio_min)));
  }
  bool clusters_ok = true;
  for (const Rung& r : rungs) clusters_ok = clusters_ok && r.cluster_ok;
  report.verdicts.push_back(make_verdict(
      "sigma2_cluster", clusters_ok, "pair {2,3} at every rung"));
  report.verdicts.push_back(make_verdict(
      "sigma2_accuracy", fine.err2 <= tol.eigen_oracle_rel,
      "rel err " + format_value(fine.err2) + " vs " + format_value(tol.eigen_oracle_rel)));
  return report;
}

AsymptoticsReport run_shrinking_hole(const ExperimentPlan& plan) {
  plan.validate();
  const ToleranceTable& tol = plan.tolerances;
  const bool with_nodal =
      std::find(plan.checks.begin(), plan.checks.end(), CheckKind::NODAL) !=
      plan.checks.end();
  for (double r : plan.radius_schedule) {
    require_resolved_hole(plan.domain, plan.resolution, r);
  }

  AsymptoticsReport rep;
  rep.has_nodal = with_nodal;
  const EquivalentRadii eq = equivalent_radii(plan.domain);
  rep.R_M = eq.measure;
  rep.R_P = eq.perimeter;
  rep.R_m = min_boundary_radius(plan.domain);

  const Resolution& res = plan.resolution;
  const Mesh mesh0 = build_polar_mesh(plan.domain.with_hole(0.0), res.n_rays,
                                      res.n_radial, res.grading);
  // The discrete ground state of the unperforated problem is the constant
  // with unit polygonal boundary norm, so the limit constant uses the
  // polygonal perimeter.
  rep.c0 = 1.0 / std::sqrt(perimeter(mesh0, BoundaryMarker::OUTER));
  const SpectralResult st = solve_steklov(mesh0, 4, tol.cluster_gap);
  rep.sigma_bar1 = st.eigenvalues[0];
  const std::vector<int>& bar_cluster = cluster_containing(st.clusters, 0);
  const SymmetricOperator K0 = assemble_stiffness(mesh0);
  const SymmetricOperator M0 = assemble_domain_mass(mesh0);
  const SymmetricOperator B0 = assemble_boundary_mass(mesh0, BoundaryMarker::OUTER);

  const int k = with_nodal ? 7 : 3;
  rep.rows.resize(plan.radius_schedule.size());
  parallel_for_indices(plan.radius_schedule.size(), [&](std::size_t i) {
    const double r = plan.radius_schedule[i];
    RadiusRow row;
    row.r = r;
    const Mesh mesh = build_polar_mesh(plan.domain.with_hole(r), res.n_rays,
                                       res.n_radial, res.grading);
    const SpectralResult sd = solve_steklov_dirichlet(mesh, k, tol.cluster_gap);
    row.sigma1 = sd.eigenvalues[0];
    row.sigma2 = sd.eigenvalues[1];
    const std::vector<int>& cl2 = cluster_containing(sd.clusters, 1);
    row.sigma2_cluster_size = static_cast<int>(cl2.size());
    row.sigma1_shell_RM = sigma1_shell({2, r, rep.R_M});
    row.sigma2_shell_RM = sigma2_shell({2, r, rep.R_M});
    row.sigma1_shell_Rm = sigma1_shell({2, r, rep.R_m});
    row.sigma2_shell_Rm = sigma2_shell({2, r, rep.R_m});
    row.sigma2_shell_RP = sigma2_shell({2, r, rep.R_P});
    row.h1_err_u1 = std::sqrt(h1_distance_to_constant(
        mesh, sd.eigenfields[0], rep.c0, kPi * r * r));

    // Outer rings of both meshes coincide, so boundary pairings reduce to
    // copying the ring values across.
    const int outer = mesh.n_rings - 1;
    const int outer0 = mesh0.n_rings - 1;
    const auto pad = [&](const Field& f) {
      std::vector<double> p(mesh0.vertex_count(), 0.0);
      const std::vector<double> fe = f.expanded();
      for (int j = 0; j < mesh.n_rays; ++j) {
        p[mesh0.ring_vertex(outer0, j)] = fe[mesh.ring_vertex(outer, j)];
      }
      return p;
    };

    // Closest unit pair between the discrete eigenspaces: top singular pair
    // of the boundary Gram matrix. Falls back to the raw members only when
    // the spaces are orthogonal, which does not happen for resolved meshes.
    const std::size_t nu = cl2.size(), nv = bar_cluster.size();
    DenseMatrix gram(nv, nu);
    std::vector<std::vector<double>> padded(nu);
    for (std::size_t ui = 0; ui < nu; ++ui) padded[ui] = pad(sd.eigenfields[cl2[ui]]);
    for (std::size_t vi = 0; vi < nv; ++vi) {
      for (std::size_t ui = 0; ui < nu; ++ui) {
        gram(vi, ui) = B0.bilinear(st.eigenfields[bar_cluster[vi]].values, padded[ui]);
      }
    }
    DenseMatrix gtg(nu, nu);
    for (std::size_t a = 0; a < nu; ++a) {
      for (std::size_t b = 0; b < nu; ++b) {
        double s = 0.0;
        for (std::size_t vi = 0; vi < nv; ++vi) s += gram(vi, a) * gram(vi, b);
        gtg(a, b) = s;
      }
    }
    const SymmetricEigen se = jacobi_eigensolve(gtg);
    const std::size_t top = nu - 1;
    const double smax = std::sqrt(std::max(se.values[top], 0.0));
    std::vector<double> bvec(nu), avec(nv, 0.0);
    for (std::size_t a = 0; a < nu; ++a) bvec[a] = se.vectors(a, top);
    if (smax > 0.0) {
      for (std::size_t vi = 0; vi < nv; ++vi) {
        double s = 0.0;
        for (std::size_t a = 0; a < nu; ++a) s += gram(vi, a) * bvec[a];
        avec[vi] = s / smax;
      }
    } else {
      avec[0] = 1.0;
    }
    row.u2_alignment = smax;

    Field u2hat = sd.eigenfields[cl2[0]];
    std::fill(u2hat.values.begin(), u2hat.values.end(), 0.0);
    for (std::size_t ui = 0; ui < nu; ++ui) {
      const Field& member = sd.eigenfields[cl2[ui]];
      for (std::size_t j = 0; j < u2hat.values.size(); ++j) {
        u2hat.values[j] += bvec[ui] * member.values[j];
      }
    }
    std::vector<double> ubar_star(mesh0.vertex_count(), 0.0);
    for (std::size_t vi = 0; vi < nv; ++vi) {
      const Field& member = st.eigenfields[bar_cluster[vi]];
      for (std::size_t j = 0; j < ubar_star.size(); ++j) {
        ubar_star[j] += avec[vi] * member.values[j];
      }
    }
    const Field moved = transfer_to_unperforated(mesh, u2hat, mesh0);
    std::vector<double> diff(mesh0.vertex_count());
    for (std::size_t j = 0; j < diff.size(); ++j) {
      diff[j] = moved.values[j] - ubar_star[j];
    }
    row.h1_err_u2 = std::sqrt(K0.quad_form(diff) + M0.quad_form(diff));

    if (with_nodal) {
      const NodalReport nodal = build_nodal_report(mesh, sd, tol.nodal_zero);
      for (const auto& e : nodal.entries) row.nodal_counts.push_back(e.nodal_count);
      row.nodal_u1_ok = nodal.entries[0].nodal_count == 1;
      row.nodal_cluster2_ok = true;
      row.nodal_adjacency_ok = true;
      for (int idx : cl2) {
        const NodalEntry& e = nodal.entries[idx];
        row.nodal_cluster2_ok = row.nodal_cluster2_ok && e.nodal_count == 2;
        row.nodal_adjacency_ok = row.nodal_adjacency_ok &&
                                 e.nodal_count == 2 && hole_adjacency_check(e);
      }
      const NodalBoundCheck bounds = nodal_bound_check(sd, nodal);
      const std::size_t levels = std::min<std::size_t>(4, bounds.level_pass.size());
      row.nodal_bounds_ok = true;
      for (std::size_t l = 0; l < levels; ++l) {
        row.nodal_bounds_ok = row.nodal_bounds_ok && bounds.level_pass[l];
      }
    }
    rep.rows[i] = std::move(row);
  });

  std::vector<double> gaps, s1, h1u1, h1u2;
  for (const RadiusRow& row : rep.rows) {
    gaps.push_back(std::fabs(row.sigma2 - rep.sigma_bar1));
    s1.push_back(row.sigma1);
    h1u1.push_back(row.h1_err_u1);
    h1u2.push_back(row.h1_err_u2);
  }
  const DecreaseCheck dg = check_decreasing(gaps, 0, tol.decrease_slack);
  rep.verdicts.push_back(make_verdict("sigma2_gap_decreasing", dg.pass, dg.detail));
  rep.verdicts.push_back(make_verdict(
      "sigma2_gap_final", gaps.back() <= tol.limit_rel * rep.sigma_bar1,
      "gap " + format_value(gaps.back()) + " vs " +
          format_value(tol.limit_rel * rep.sigma_bar1)));
  const DecreaseCheck d1 = check_decreasing(s1, 0, tol.decrease_slack);
  rep.verdicts.push_back(make_verdict("sigma1_decreasing", d1.pass, d1.detail));
  bool bound_ok = true;
  double worst_ratio = 0.0;
  for (const RadiusRow& row : rep.rows) {
    const double ratio = row.sigma1 / row.sigma1_shell_Rm;
    worst_ratio = std::max(worst_ratio, ratio);
    bound_ok = bound_ok && ratio <= 1.0 + tol.domain_monotonicity_slack;
  }
  rep.verdicts.push_back(make_verdict(
      "sigma1_shell_bound", bound_ok,
      "max sigma1/shell(R_m) = " + format_value(worst_ratio)));
  const DecreaseCheck du1 = check_decreasing(h1u1, 0, tol.decrease_slack);
  rep.verdicts.push_back(make_verdict("h1_u1_decreasing", du1.pass, du1.detail));
  const DecreaseCheck du2 = check_decreasing(h1u2, 0, tol.decrease_slack);
  rep.verdicts.push_back(make_verdict("h1_u2_decreasing", du2.pass, du2.detail));

  if (with_nodal) {
    bool u1_ok = true, cl2_ok = true, adj_ok = true, bounds_ok = true;
    for (const RadiusRow& row : rep.rows) {
      u1_ok = u1_ok && row.nodal_u1_ok;
      cl2_ok = cl2_ok && row.nodal_cluster2_ok;
      adj_ok = adj_ok && row.nodal_adjacency_ok;
      bounds_ok = bounds_ok && row.nodal_bounds_ok;
    }
    rep.nodal_verdicts.push_back(
        make_verdict("u1_single_domain", u1_ok, "ground state count 1 at every radius"));
    rep.nodal_verdicts.push_back(make_verdict(
        "cluster2_two_domains", cl2_ok, "every second-cluster field splits in two"));
    rep.nodal_verdicts.push_back(make_verdict(
        "hole_adjacency", adj_ok, "both signs reach the inner boundary"));
    rep.nodal_verdicts.push_back(make_verdict(
        "courant_bounds", bounds_ok, "first four cluster levels"));
  }
  return rep;
}

Table AsymptoticsReport::table() const {
  Table t;
  t.columns = {"r",          "sigma1",        "sigma2",
               "sigma2_cluster_size", "sigma2_gap", "h1_err_u1",
               "h1_err_u2",  "u2_alignment",  "sigma1_shell_RM",
               "sigma2_shell_RM", "sigma1_shell_Rm", "sigma2_shell_Rm",
               "sigma_bar1", "c0"};
  for (const RadiusRow& row : rows) {
    t.rows.push_back({format_value(row.r),
                      format_value(row.sigma1),
                      format_value(row.sigma2),
                      std::to_string(row.sigma2_cluster_size),
                      format_value(std::fabs(row.sigma2 - sigma_bar1)),
                      format_value(row.h1_err_u1),
                      format_value(row.h1_err_u2),
                      format_value(row.u2_alignment),
                      format_value(row.sigma1_shell_RM),
                      format_value(row.sigma2_shell_RM),
                      format_value(row.sigma1_shell_Rm),
                      format_value(row.sigma2_shell_Rm),
                      format_value(sigma_bar1),
                      format_value(c0)});
  }
  return t;
}

Table AsymptoticsReport::nodal_table() const {
  if (!has_nodal) {
    raise(ErrorCode::ValidationError, "experiments: nodal columns were not computed");
  }
  Table t;
  t.columns = {"r"};
  const std::size_t k = rows.empty() ? 0 : rows.front().nodal_counts.size();
  for (std::size_t j = 0; j < k; ++j) {
    t.columns.push_back("count_" + std::to_string(j + 1));
  }
  t.columns.insert(t.columns.end(),
                   {"u1_single", "cluster2_two_domains", "hole_adjacency",
                    "courant_bounds"});
  for (const RadiusRow& row : rows) {
    std::vector<std::string> cells{format_value(row.r)};
    for (int c : row.nodal_counts) cells.push_back(std::to_string(c));
    cells.push_back(pass_str(row.nodal_u1_ok));
    cells.push_back(pass_str(row.nodal_cluster2_ok));
    cells.push_back(pass_str(row.nodal_adjacency_ok));
    cells.push_back(pass_str(row.nodal_bounds_ok));
    t.rows.push_back(std::move(cells));
  }
  return t;
}

CheckReport to_check_report(const AsymptoticsReport& report) {
  CheckReport out;
  out.check = "shrinking_hole";
  out.table = report.table();
  out.verdicts = report.verdicts;
  return out;
}

CheckReport nodal_check_report(const AsymptoticsReport& report) {
  CheckReport out;
  out.check = "nodal";
  out.table = report.nodal_table();
  out.verdicts = report.nodal_verdicts;
  return out;
}

CheckReport isoperimetric_from_report(const AsymptoticsReport& report,
                                      const ExperimentPlan& plan, bool measure,
                                      bool perimeter) {
  if (!measure && !perimeter) {
    raise(ErrorCode::InvalidSpec, "experiments: no isoperimetric flavor requested");
  }
  const ToleranceTable& tol = plan.tolerances;
  // A centered disk attains every bound, so the one-sided verdicts become
  // two-sided equality controls.
  const bool disk_control = std::holds_alternative<DiskBoundary>(plan.domain.outer);
  const auto holds = [&](double lhs, double rhs) {
    if (disk_control) return std::fabs(lhs / rhs - 1.0) <= tol.eigen_oracle_rel;
    return lhs <= rhs * (1.0 + tol.inequality_slack);
  };

  CheckReport out;
  out.check = "isoperimetric";
  out.table.columns = {"r", "sigma1", "sigma2"};
  if (measure) {
    out.table.columns.insert(out.table.columns.end(),
                             {"sigma1_shell_RM", "sigma2_shell_RM",
                              "ok_sigma1_RM", "ok_sigma2_RM"});
  }
  if (perimeter) {
    out.table.columns.insert(out.table.columns.end(),
                             {"sigma2_shell_RP", "ok_sigma2_RP"});
  }

  bool ok1M = true, ok2M = true, ok2P = true;
  double worst1M = 0.0, worst2M = 0.0, worst2P = 0.0;
  for (const RadiusRow& row : report.rows) {
    const bool r1M = holds(row.sigma1, row.sigma1_shell_RM);
    const bool r2M = holds(row.sigma2, row.sigma2_shell_RM);
    const bool r2P = holds(row.sigma2, row.sigma2_shell_RP);
    ok1M = ok1M && r1M;
    ok2M = ok2M && r2M;
    ok2P = ok2P && r2P;
    worst1M = std::max(worst1M, row.sigma1 / row.sigma1_shell_RM);
    worst2M = std::max(worst2M, row.sigma2 / row.sigma2_shell_RM);
    worst2P = std::max(worst2P, row.sigma2 / row.sigma2_shell_RP);
    std::vector<std::string> cells{format_value(row.r), format_value(row.sigma1),
                                   format_value(row.sigma2)};
    if (measure) {
      cells.push_back(format_value(row.sigma1_shell_RM));
      cells.push_back(format_value(row.sigma2_shell_RM));
      cells.push_back(pass_str(r1M));
      cells.push_back(pass_str(r2M));
    }
    if (perimeter) {
      cells.push_back(format_value(row.sigma2_shell_RP));
      cells.push_back(pass_str(r2P));
    }
    out.table.rows.push_back(std::move(cells));
  }

  const std::string mode = disk_control ? " (equality control)" : "";
  if (measure) {
    out.verdicts.push_back(make_verdict(
        "sigma1_le_shell_RM", ok1M,
        "max sigma1/shell = " + format_value(worst1M) + mode));
    out.verdicts.push_back(make_verdict(
        "sigma2_le_shell_RM", ok2M,
        "max sigma2/shell = " + format_value(worst2M) + mode));
    const double ball = steklov_ball_sigma1(2, report.R_M).value;
    out.verdicts.push_back(make_verdict(
        "brock", holds(report.sigma_bar1, ball),
        "sigma_bar1 = " + format_value(report.sigma_bar1) + " vs ball " +
            format_value(ball) + mode));
  }
  if (perimeter) {
    out.verdicts.push_back(make_verdict(
        "sigma2_le_shell_RP", ok2P,
        "max sigma2/shell = " + format_value(worst2P) + mode));
    const double product = report.sigma_bar1 * outer_perimeter(plan.domain);
    out.verdicts.push_back(make_verdict(
        "weinstock", holds(product, 2.0 * kPi),
        "sigma_bar1 * perimeter = " + format_value(product) + " vs 2 pi" + mode));
  }
  return out;
}

CheckReport run_isoperimetric_check(const ExperimentPlan& plan, bool measure,
                                    bool perimeter) {
  ExperimentPlan sweep = plan;
  sweep.checks.clear();  // eigenvalues only; no nodal columns
  return isoperimetric_from_report(run_shrinking_hole(sweep), plan, measure,
                                   perimeter);
}

CheckReport run_lemma33_check(const DomainSpec& domain,
                              const std::vector<double>& radii,
                              double enclosure_radius) {
  domain.validate();
  if (radii.empty()) {
    raise(ErrorCode::InvalidSpec, "experiments: no radii given");
  }
  const double rho_max = max_boundary_radius(domain);
  const double enclosure =
      enclosure_radius > 0.0 ? enclosure_radius : 1.5 * rho_max;
  if (enclosure <= rho_max) {
    raise(ErrorCode::InvalidEnclosure,
          "experiments: enclosure radius " + format_value(enclosure) +
              " does not contain the domain (max rho = " + format_value(rho_max) + ")");
  }
  const double rho_min = min_boundary_radius(domain);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !(radii[i] < rho_min)) {
      raise(ErrorCode::ValidationError,
            "experiments: radius entry " + std::to_string(i) +
                " outside (0, min rho)");
    }
    if (i > 0 && !(radii[i] < radii[i - 1])) {
      raise(ErrorCode::ValidationError,
            "experiments: radii must decrease strictly");
    }
  }

  const double R_M = equivalent_radii(domain).measure;
  const double target = outer_perimeter(domain) / (2.0 * kPi * R_M);

  CheckReport out;
  out.check = "lemma33";
  out.table.columns = {"r", "value", "target", "abs_err"};
  std::vector<double> errs;
  for (double r : radii) {
    const ShellSpec shell{2, r, enclosure};
    const double at_RM = radial_eigenfunction_1(shell, R_M);
    const double scale = 1.0 / (at_RM * std::sqrt(2.0 * kPi * R_M));
    const double value = periodic_quadrature([&](double th) {
      const double rho = domain.rho(th);
      const double rp = domain.rho_prime(th);
      const double v = scale * radial_eigenfunction_1(shell, rho);
      return v * v * std::sqrt(rho * rho + rp * rp);
    });
    errs.push_back(std::fabs(value - target));
    out.table.rows.push_back({format_value(r), format_value(value),
                              format_value(target), format_value(errs.back())});
  }

  const double flat = 1e-12 * target;
  const bool all_flat =
      *std::max_element(errs.begin(), errs.end()) <= flat;
  if (all_flat) {
    out.verdicts.push_back(make_verdict(
        "error_decreasing", true, "flat at the target within 1e-12"));
  } else {
    const DecreaseCheck d = check_decreasing(errs, 0, 0.0);
    out.verdicts.push_back(make_verdict("error_decreasing", d.pass, d.detail));
  }
  return out;
}

CheckReport run_corrector_check(const std::vector<CorrectorSpec>& schedule,
                                double domain_measure) {
  if (schedule.empty()) {
    raise(ErrorCode::InvalidSpec, "experiments: empty corrector schedule");
  }
  for (const CorrectorSpec& c : schedule) c.validate();

  CheckReport out;
  out.check = "corrector";
  out.table.columns = {"n",     "p",        "eps",     "r_eps",
                       "l2_sq", "measure_gap", "grad_sq"};
  std::vector<double> gaps, grads;
  for (const CorrectorSpec& c : schedule) {
    const CorrectorNorms norms = corrector_norms(c, domain_measure, 512);
    const double gap = std::fabs(norms.L2_sq - domain_measure);
    gaps.push_back(gap);
    grads.push_back(norms.gradL2_sq);
    out.table.rows.push_back({std::to_string(c.n), format_value(c.p),
                              format_value(c.eps), format_value(c.inner_radius()),
                              format_value(norms.L2_sq), format_value(gap),
                              format_value(norms.gradL2_sq)});
  }

  // The limits hold asymptotically, so monotonicity is demanded beyond the
  // first entry only.
  const DecreaseCheck dl = check_decreasing(gaps, 1, 0.0);
  out.verdicts.push_back(make_verdict("l2_to_measure", dl.pass, dl.detail));
  const DecreaseCheck dgr = check_decreasing(grads, 1, 0.0);
  out.verdicts.push_back(make_verdict("grad_to_zero", dgr.pass, dgr.detail));
  return out;
}

CheckReport run_friedrich_check(const ExperimentPlan& plan) {
  plan.validate();
  const double r = plan.radius_schedule.front();
  const DomainSpec dom = plan.domain.with_hole(r);
  const Resolution& res = plan.resolution;

  const Mesh mesh = build_polar_mesh(dom, res.n_rays, res.n_radial, res.grading);
  const double c2 = friedrich_constant(mesh);
  const Mesh fine = build_polar_mesh(dom, 2 * res.n_rays, 2 * res.n_radial,
                                     res.grading);
  const double c2_fine = friedrich_constant(fine);

  const SymmetricOperator K = assemble_stiffness(mesh);
  const SymmetricOperator M = assemble_domain_mass(mesh);
  const SymmetricOperator B =
      sum_operators(assemble_boundary_mass(mesh, BoundaryMarker::OUTER),
                    assemble_boundary_mass(mesh, BoundaryMarker::INNER));

  std::mt19937_64 rng(0x5d2c1a4f9e8b3706ULL);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  int violations = 0;
  double worst = 0.0;
  std::vector<double> x(mesh.vertex_count());
  for (int trial = 0; trial < 100; ++trial) {
    for (double& v : x) v = uni(rng);
    const double lhs = M.quad_form(x);
    const double rhs = c2 * (K.quad_form(x) + B.quad_form(x));
    worst = std::max(worst, lhs / rhs);
    if (!(lhs <= rhs * (1.0 + 1e-9))) ++violations;
  }

  CheckReport out;
  out.check = "friedrich";
  out.table.columns = {"n_rays", "n_radial", "c2"};
  out.table.rows.push_back({std::to_string(res.n_rays),
                            std::to_string(res.n_radial), format_value(c2)});
  out.table.rows.push_back({std::to_string(2 * res.n_rays),
                            std::to_string(2 * res.n_radial),
                            format_value(c2_fine)});
  out.verdicts.push_back(make_verdict(
      "random_fields", violations == 0,
      std::to_string(violations) + " violations in 100, max quotient ratio " +
          format_value(worst)));
  const double drift = std::fabs(c2_fine / c2 - 1.0);
  out.verdicts.push_back(make_verdict(
      "refinement_stable", drift <= plan.tolerances.domain_monotonicity_slack,
      "relative drift " + format_value(drift)));
  return out;
}

std::vector<double> default_radius_schedule(const DomainSpec& domain,
                                            const Resolution& res) {
  domain.validate();
  const double rm = min_boundary_radius(domain);
  const double rho_max = max_boundary_radius(domain);
  const double g = res.grading;
  double sum = 0.0, w = 1.0;
  for (int k = 0; k < res.n_radial; ++k) {
    sum += w;
    w *= g;
  }
  const double first_layer_frac = std::pow(g, res.n_radial - 1) / sum;
  std::vector<double> schedule;
  double r = 0.2 * rm;
  for (int i = 0; i < 4; ++i, r *= 0.5) {
    if (r >= 4.0 * (rho_max - r) * first_layer_frac) schedule.push_back(r);
  }
  if (schedule.empty()) {
    raise(ErrorCode::ValidationError,
          "experiments: no default radius resolves the hole at this resolution");
  }
  return schedule;
}

std::vector<CorrectorSpec> default_corrector_schedule(int n) {
  if (n != 2 && n != 3) {
    raise(ErrorCode::InvalidSpec, "experiments: default schedules cover n = 2, 3");
  }
  const double p = n == 2 ? 2.0 : 4.0;
  std::vector<CorrectorSpec> out;
  for (double eps : {0.1, 0.05, 0.025, 0.0125}) {
    out.push_back({n, eps, p});
  }
  return out;
}

std::vector<CheckReport> run_experiment(const ExperimentPlan& plan) {
  plan.validate();
  std::vector<CheckKind> order;
  for (CheckKind k : {CheckKind::SHELL_VALIDATION, CheckKind::SHRINKING_HOLE,
                      CheckKind::ISOPERIMETRIC_M, CheckKind::ISOPERIMETRIC_P,
                      CheckKind::CORRECTOR, CheckKind::LEMMA33,
                      CheckKind::FRIEDRICH, CheckKind::NODAL}) {
    if (std::find(plan.checks.begin(), plan.checks.end(), k) != plan.checks.end()) {
      order.push_back(k);
    }
  }

  const auto wants = [&](CheckKind k) {
    return std::find(order.begin(), order.end(), k) != order.end();
  };
  const bool need_sweep = wants(CheckKind::SHRINKING_HOLE) ||
                          wants(CheckKind::NODAL) ||
                          wants(CheckKind::ISOPERIMETRIC_M) ||
                          wants(CheckKind::ISOPERIMETRIC_P);
  std::optional<AsymptoticsReport> sweep;
  if (need_sweep) sweep = run_shrinking_hole(plan);

  std::vector<CheckReport> out;
  bool iso_done = false;
  for (CheckKind kind : order) {
    switch (kind) {
      case CheckKind::SHELL_VALIDATION: {
        std::vector<Resolution> ladder;
        for (int div : {4, 2, 1}) {
          const int nr = plan.resolution.n_rays / div;
          const int nl = plan.resolution.n_radial / div;
          // Fixed-ratio grading is not self-similar under doubling, so the
          // convergence ladder runs uniform radial spacing.
          if (nr >= 8 && nl >= 2) ladder.push_back({nr, nl, 1.0});
        }
        const double R = equivalent_radii(plan.domain).measure;
        const ShellSpec shell{2, plan.radius_schedule.front(), R};
        out.push_back(run_shell_validation(ladder, shell, plan.tolerances));
        break;
      }
      case CheckKind::SHRINKING_HOLE:
        out.push_back(to_check_report(*sweep));
        break;
      case CheckKind::ISOPERIMETRIC_M:
      case CheckKind::ISOPERIMETRIC_P: {
        if (iso_done) break;
        iso_done = true;
        out.push_back(isoperimetric_from_report(
            *sweep, plan, wants(CheckKind::ISOPERIMETRIC_M),
            wants(CheckKind::ISOPERIMETRIC_P)));
        break;
      }
      case CheckKind::CORRECTOR: {
        CheckReport n2 = run_corrector_check(default_corrector_schedule(2),
                                             outer_area(plan.domain));
        const double R_M = equivalent_radii(plan.domain).measure;
        CheckReport n3 = run_corrector_check(default_corrector_schedule(3),
                                             ball_volume(3, R_M));
        CheckReport merged;
        merged.check = "corrector";
        merged.table = n2.table;
        for (auto& row : n3.table.rows) merged.table.rows.push_back(std::move(row));
        for (auto& v : n2.verdicts) {
          v.name = "n2_" + v.name;
          merged.verdicts.push_back(std::move(v));
        }
        for (auto& v : n3.verdicts) {
          v.name = "n3_" + v.name;
          merged.verdicts.push_back(std::move(v));
        }
        out.push_back(std::move(merged));
        break;
      }
      case CheckKind::LEMMA33:
        out.push_back(run_lemma33_check(plan.domain, plan.radius_schedule));
        break;
      case CheckKind::FRIEDRICH:
        out.push_back(run_friedrich_check(plan));
        break;
      case CheckKind::NODAL:
        out.push_back(nodal_check_report(*sweep));
        break;
    }
  }
  return out;
}

}  // namespace steklov

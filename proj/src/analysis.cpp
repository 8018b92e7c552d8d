#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <locale>
#include <sstream>

#include "bck/cli.hpp"
#include "bck/parallel.hpp"
#include "bck/positivity.hpp"

namespace bck::cli {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

struct Context {
  const AnalysisConfig& cfg;
  ChartGrid grid;
  std::vector<std::size_t> valid;  // grid indices with a full stencil margin
  std::vector<ChartPoint> points;  // grid.point(valid[i])
  double margin = 0.0;
};

/// Per-point numeric columns, aligned with Context::points.
struct FieldTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct TaskOutcome {
  json result = json::object();
  bool passed = false;
  std::string status;
  std::optional<FieldTable> fields;
};

double finite(double v, const char* what) {
  if (!std::isfinite(v)) throw EvaluationError(std::string("non-finite value in ") + what);
  return v;
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index j = 0; j < v.size(); ++j) out.push_back(complex_json(v(j)));
  return out;
}

json fields_json(const Context& ctx, const FieldTable& t) {
  json out = json::array();
  for (std::size_t i = 0; i < ctx.points.size(); ++i) {
    json values = json::array();
    for (double v : t.rows[i]) values.push_back(finite(v, "field value"));
    out.push_back({{"index", ctx.valid[i]}, {"z", vector_json(ctx.points[i].coords())}, {"values", values}});
  }
  return out;
}

std::string classify(const std::exception& e) {
  if (dynamic_cast<const DomainError*>(&e)) return "domain";
  if (dynamic_cast<const NotHolomorphicError*>(&e)) return "not_holomorphic";
  if (dynamic_cast<const SingularMetricError*>(&e)) return "singular_metric";
  if (dynamic_cast<const StructuralError*>(&e)) return "structural";
  if (dynamic_cast<const EvaluationError*>(&e)) return "evaluation";
  return "internal";
}

bool is_disc(const kernels::KernelSpec& k, double* nu) {
  if (const auto* d = std::get_if<kernels::DiscPower>(&k.variant())) {
    *nu = d->nu;
    return true;
  }
  return false;
}

void add_scalar_columns(FieldTable& t, const std::string& prefix, int d, bool pairs) {
  if (!pairs) {
    for (int j = 0; j < d; ++j) {
      t.columns.push_back("re_" + prefix + std::to_string(j + 1));
      t.columns.push_back("im_" + prefix + std::to_string(j + 1));
    }
    return;
  }
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) {
      const std::string s = prefix + std::to_string(k + 1) + "_" + std::to_string(j + 1);
      t.columns.push_back("re_" + s);
      t.columns.push_back("im_" + s);
    }
  }
}

template <class Fn>
FieldTable sweep(const Context& ctx, std::vector<std::string> columns, Fn&& fn) {
  FieldTable t{std::move(columns), std::vector<std::vector<double>>(ctx.points.size())};
  parallel_for(ctx.points.size(), ctx.cfg.threads, [&](std::size_t i) { t.rows[i] = fn(ctx.points[i]); });
  return t;
}

double column_max(const FieldTable& t, std::size_t c) {
  double m = 0.0;
  for (const auto& r : t.rows) m = std::max(m, r[c]);
  return m;
}

// ---------------------------------------------------------------------------

TaskOutcome task_psd(const Context& ctx) {
  const auto& k = *ctx.cfg.kernel;
  const auto r = kernels::psd_check(kernels::gram(k, ctx.points), ctx.cfg.tol.psd_tol);
  TaskOutcome out;
  out.passed = r.psd;
  out.result = {{"margin", finite(r.margin, "psd margin")},
                {"hermiticity_defect", r.hermiticity},
                {"psd", r.psd},
                {"pseudo_kernel", k.pseudo()},
                {"points", ctx.points.size()},
                {"tolerance", ctx.cfg.tol.psd_tol}};
  return out;
}

TaskOutcome task_admissibility(const Context& ctx) {
  const auto& k = *ctx.cfg.kernel;
  const double tau = ctx.cfg.tol.admissibility_tau;
  TaskOutcome out;
  out.fields = sweep(ctx, {"sigma_min", "norm", "invertible"}, [&](const ChartPoint& z) {
    const auto a = kernels::admissibility(k, z, tau);
    return std::vector<double>{a.smallest_singular_value, a.norm, a.invertible ? 1.0 : 0.0};
  });
  std::size_t failing = 0;
  double min_sigma = 0.0;
  for (std::size_t i = 0; i < out.fields->rows.size(); ++i) {
    const auto& r = out.fields->rows[i];
    if (r[2] == 0.0) ++failing;
    if (i == 0 || r[0] < min_sigma) min_sigma = r[0];
  }
  out.passed = failing == 0;
  out.result = {{"tau", tau}, {"min_sigma", min_sigma}, {"non_invertible_points", failing}};
  return out;
}

TaskOutcome task_connection(const Context& ctx) {
  const auto& k = *ctx.cfg.kernel;
  const auto h = chern::metric_from_kernel(k);
  const int d = k.base_dim();
  const bool scalar = k.fiber_dim() == 1;
  double nu = 0.0;
  const bool disc = is_disc(k, &nu);
  std::vector<std::string> cols{"norm_A", "holo"};
  FieldTable proto{cols, {}};
  if (scalar) add_scalar_columns(proto, "A", d, false);
  if (disc) proto.columns.push_back("abs_err");
  TaskOutcome out;
  out.fields = sweep(ctx, proto.columns, [&](const ChartPoint& z) {
    const auto a = chern::chern_connection(h, z, ctx.cfg.fd);
    std::vector<double> row{a.norm(), a.type01().norm()};
    if (scalar) {
      for (int j = 0; j < d; ++j) {
        row.push_back(a.dz(j)(0, 0).real());
        row.push_back(a.dz(j)(0, 0).imag());
      }
    }
    if (disc) {
      const Complex exact = nu * std::conj(z[0]) / (1.0 - std::norm(z[0]));
      row.push_back(std::abs(a.dz(0)(0, 0) - exact));
    }
    return row;
  });
  out.result = {{"max_norm_A", column_max(*out.fields, 0)}, {"max_holo", column_max(*out.fields, 1)}};
  out.passed = column_max(*out.fields, 1) == 0.0;
  if (disc) {
    const double err = column_max(*out.fields, out.fields->columns.size() - 1);
    out.result["closed_form_max_abs_err"] = err;
    out.result["tolerance"] = ctx.cfg.tol.connection_abs;
    out.passed = out.passed && err <= ctx.cfg.tol.connection_abs;
  }
  return out;
}

TaskOutcome task_curvature(const Context& ctx) {
  const auto& k = *ctx.cfg.kernel;
  const auto h = chern::metric_from_kernel(k);
  const int d = k.base_dim();
  const bool scalar = k.fiber_dim() == 1;
  double nu = 0.0;
  const bool disc = is_disc(k, &nu);
  const auto other = ctx.cfg.method == chern::CurvatureMethod::nested_fd
                         ? chern::CurvatureMethod::analytic_expansion
                         : chern::CurvatureMethod::nested_fd;
  FieldTable proto{{"norm_R11", "purity", "method_agreement"}, {}};
  if (scalar) add_scalar_columns(proto, "R11_", d, true);
  if (disc) proto.columns.push_back("rel_err");
  TaskOutcome out;
  out.fields = sweep(ctx, proto.columns, [&](const ChartPoint& z) {
    const auto c = chern::curvature(h, z, ctx.cfg.fd, ctx.cfg.method);
    const auto c2 = chern::curvature(h, z, ctx.cfg.fd, other);
    const double scale = std::max(1.0, c.theta.norm());
    // Only the nested route can produce (2,0)/(0,2) parts, so purity is read from it.
    const double purity = std::max(c.purity, c2.purity) / scale;
    std::vector<double> row{c.theta.norm(), purity, (c.theta - c2.theta).norm() / scale};
    if (scalar) {
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
          row.push_back(c.theta.r11(a, b)(0, 0).real());
          row.push_back(c.theta.r11(a, b)(0, 0).imag());
        }
      }
    }
    if (disc) {
      const double exact = nu / std::pow(1.0 - std::norm(z[0]), 2);
      row.push_back(std::abs(c.theta.r11(0, 0)(0, 0) - exact) / exact);
    }
    return row;
  });
  const double purity = column_max(*out.fields, 1);
  const double agreement = column_max(*out.fields, 2);
  out.result = {{"method", chern::to_string(ctx.cfg.method)},
                {"max_purity_rel", purity},
                {"max_method_agreement_rel", agreement},
                {"method_agreement_tolerance", ctx.cfg.tol.method_agreement}};
  out.passed = purity <= ctx.cfg.tol.curvature_rel && agreement <= ctx.cfg.tol.method_agreement;
  if (disc) {
    const double err = column_max(*out.fields, out.fields->columns.size() - 1);
    out.result["closed_form_max_rel_err"] = err;
    out.result["tolerance"] = ctx.cfg.tol.curvature_rel;
    out.passed = out.passed && err <= ctx.cfg.tol.curvature_rel;
  }
  return out;
}

TaskOutcome task_compatibility(const Context& ctx) {
  const auto h = chern::metric_from_kernel(*ctx.cfg.kernel);
  TaskOutcome out;
  out.fields = sweep(ctx, {"metric", "holo", "structure", "metric_rel", "structure_rel"},
                     [&](const ChartPoint& z) {
                       const auto r = chern::compatibility_residuals(h, z, ctx.cfg.fd);
                       const auto a = chern::chern_connection(h, z, ctx.cfg.fd);
                       const double hn = h(z).norm();
                       const double an = a.norm();
                       return std::vector<double>{r.metric, r.holo, r.structure,
                                                  r.metric / std::max(1.0, hn * std::max(1.0, an)),
                                                  r.structure / std::max(1.0, an * an)};
                     });
  const double metric = column_max(*out.fields, 3);
  const double holo = column_max(*out.fields, 1);
  const double structure = column_max(*out.fields, 4);
  const double tol = ctx.cfg.tol.compatibility;
  out.result = {{"max_metric_rel", metric},
                {"max_holo", holo},
                {"max_structure_rel", structure},
                {"max_metric_abs", column_max(*out.fields, 0)},
                {"max_structure_abs", column_max(*out.fields, 2)},
                {"tolerance", tol}};
  out.passed = metric <= tol && holo <= tol && structure <= tol;
  return out;
}

json witness_json(const Context& ctx, const positivity::GriffithsReport& r) {
  return {{"grid_index", ctx.valid[r.witness.point]},
          {"z", vector_json(r.witness.z)},
          {"direction_index", r.witness.direction},
          {"x", vector_json(r.witness.x)},
          {"eigenvector", vector_json(r.witness.eigenvector)},
          {"lambda_min", r.witness.lambda}};
}

positivity::GriffithsReport griffiths_report(const Context& ctx) {
  const auto h = chern::metric_from_kernel(*ctx.cfg.kernel);
  const FdOptions fd = ctx.cfg.fd;
  const auto method = ctx.cfg.method;
  const positivity::CurvatureField theta = [h, fd, method](const ChartPoint& z) {
    return chern::curvature(h, z, fd, method).theta;
  };
  const auto dirs = positivity::sample_directions(ctx.cfg.kernel->base_dim(), ctx.cfg.direction_count,
                                                  ctx.cfg.seed);
  return positivity::griffiths_verdict(h, theta, ctx.points, dirs, ctx.cfg.tol.pos_tol,
                                       ctx.cfg.tol.neg_tol, ctx.cfg.threads);
}

json griffiths_json(const Context& ctx, const positivity::GriffithsReport& r) {
  return {{"verdict", positivity::to_string(r.verdict)},
          {"min_margin", finite(r.min_margin, "Griffiths margin")},
          {"max_hermiticity_defect", r.max_hermiticity},
          {"witness", witness_json(ctx, r)},
          {"directions", r.directions},
          {"direction_seed", ctx.cfg.seed},
          {"pos_tol", ctx.cfg.tol.pos_tol},
          {"neg_tol", ctx.cfg.tol.neg_tol},
          {"sampling_note", r.sampling_note}};
}

TaskOutcome task_griffiths(const Context& ctx) {
  const auto r = griffiths_report(ctx);
  TaskOutcome out;
  out.result = griffiths_json(ctx, r);
  out.passed = r.verdict != positivity::Verdict::indefinite;
  FieldTable t{{"lambda_min"}, {}};
  for (double v : r.point_min) t.rows.push_back({v});
  out.fields = std::move(t);
  return out;
}

TaskOutcome task_dual(const Context& ctx) {
  TaskOutcome out;
  out.fields = sweep(ctx, {"residual", "norm_theta"}, [&](const ChartPoint& z) {
    const auto r = chern::dual_curvature_check(*ctx.cfg.kernel, z, ctx.cfg.fd, ctx.cfg.method);
    return std::vector<double>{r.residual, r.theta.norm()};
  });
  const double res = column_max(*out.fields, 0);
  out.result = {{"max_residual", res}, {"tolerance", ctx.cfg.tol.dual}};
  out.passed = res <= ctx.cfg.tol.dual;
  return out;
}

TaskOutcome task_subbundle(const Context& ctx) {
  const auto h = chern::metric_from_kernel(*ctx.cfg.kernel);
  const Polynomial frame = *ctx.cfg.subbundle_frame;
  const forms::Field0 f = [frame](const ChartPoint& z) { return frame(z); };
  TaskOutcome out;
  out.fields = sweep(ctx, {"residual11", "residual22", "beta_antiholomorphic", "norm_theta1"},
                     [&](const ChartPoint& z) {
                       const auto s = chern::subbundle_split(h, f, z, ctx.cfg.fd, ctx.cfg.method);
                       return std::vector<double>{s.residual11, s.residual22, s.beta_antiholomorphic,
                                                  s.theta1.norm()};
                     });
  const double r11 = column_max(*out.fields, 0);
  const double r22 = column_max(*out.fields, 1);
  const double beta = column_max(*out.fields, 2);
  const double tol = ctx.cfg.tol.subbundle;
  out.result = {{"max_residual11", r11},
                {"max_residual22", r22},
                {"max_beta_antiholomorphic", beta},
                {"rank", frame.cols()},
                {"tolerance", tol}};
  out.passed = r11 <= tol && r22 <= tol && beta <= tol;
  return out;
}

TaskOutcome task_selftest(const Context& ctx) {
  const auto r = run_selftest({ctx.cfg.seed, false});
  TaskOutcome out;
  out.result = to_json(r);
  out.passed = r.all_pass();
  return out;
}

TaskOutcome run_task(const std::string& name, const Context& ctx) {
  if (name == "psd") return task_psd(ctx);
  if (name == "admissibility") return task_admissibility(ctx);
  if (name == "connection") return task_connection(ctx);
  if (name == "curvature") return task_curvature(ctx);
  if (name == "compatibility") return task_compatibility(ctx);
  if (name == "griffiths") return task_griffiths(ctx);
  if (name == "theorem55") {
    TaskOutcome out;
    out.result = run_verify_theorem55(ctx.cfg, ctx.points);
    out.passed = out.result["passed"];
    out.status = out.result["status"];
    out.result.erase("passed");
    out.result.erase("status");
    return out;
  }
  if (name == "dual") return task_dual(ctx);
  if (name == "subbundle") return task_subbundle(ctx);
  if (name == "selftest") return task_selftest(ctx);
  throw ConfigError("unknown task '" + name + "'");
}

std::string csv_text(const json& task, int d) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out.precision(17);
  for (int j = 0; j < d; ++j) out << (j ? "," : "") << "re_z" << j + 1;
  for (int j = 0; j < d; ++j) out << ",im_z" << j + 1;
  for (const auto& c : task["columns"]) out << "," << c.get<std::string>();
  out << "\n";
  for (const auto& f : task["fields"]) {
    bool first = true;
    for (const auto& z : f["z"]) {
      out << (first ? "" : ",") << z[0].get<double>();
      first = false;
    }
    for (const auto& z : f["z"]) out << "," << z[1].get<double>();
    for (const auto& v : f["values"]) out << "," << v.get<double>();
    out << "\n";
  }
  return out.str();
}

}  // namespace

// ---------------------------------------------------------------------------

json run_verify_theorem55(const AnalysisConfig& cfg, const std::vector<ChartPoint>& points) {
  const auto& k = *cfg.kernel;
  if (points.empty()) throw StructuralError("theorem55: no points");
  json premise = json::object();

  // Holomorphy of z -> K(z, w) for a few fixed w (all fiber directions at once).
  const auto ws = kernels::sample_points(k, 3, cfg.seed, 0.5);
  double cr = 0.0;
  for (const auto& w : ws) {
    const forms::Field0 f = [&k, w](const ChartPoint& z) { return k.eval(z, w); };
    cr = std::max(cr, forms::cauchy_riemann_residual(f, points, k.domain(), cfg.fd));
  }
  premise["cauchy_riemann_residual"] = finite(cr, "Cauchy-Riemann residual");
  premise["cr_tol"] = cfg.tol.cr_tol;
  premise["holomorphic"] = cr <= cfg.tol.cr_tol;

  std::size_t failing = 0;
  std::optional<std::size_t> first_failing;
  double min_sigma = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto a = kernels::admissibility(k, points[i], cfg.tol.admissibility_tau);
    if (i == 0 || a.smallest_singular_value < min_sigma) min_sigma = a.smallest_singular_value;
    if (!a.invertible) {
      ++failing;
      if (!first_failing) first_failing = i;
    }
  }
  premise["admissible"] = failing == 0;
  premise["min_sigma"] = min_sigma;
  premise["non_admissible_points"] = failing;
  if (first_failing) premise["first_non_admissible_z"] = vector_json(points[*first_failing].coords());
  const bool met = premise["holomorphic"].get<bool>() && failing == 0;
  premise["met"] = met;

  json out{{"premise", premise}};
  if (!met) {
    out["status"] = "hypothesis_not_met";
    out["passed"] = false;
    out["conclusion"] = nullptr;
    return out;
  }
  const FdOptions fd = cfg.fd;
  const auto method = cfg.method;
  const auto dirs = positivity::sample_directions(k.base_dim(), cfg.direction_count, cfg.seed);
  const auto verdict_for = [&](const chern::MetricField& h) {
    const positivity::CurvatureField theta = [h, fd, method](const ChartPoint& z) {
      return chern::curvature(h, z, fd, method).theta;
    };
    const auto r = positivity::griffiths_verdict(h, theta, points, dirs, cfg.tol.pos_tol,
                                                 cfg.tol.neg_tol, cfg.threads);
    const bool ok = r.min_margin >= -cfg.tol.neg_tol;
    json j{{"verdict", positivity::to_string(r.verdict)},
           {"min_margin", finite(r.min_margin, "Griffiths margin")},
           {"strictly_positive", r.verdict == positivity::Verdict::positive},
           {"not_indefinite", ok},
           {"witness_z", vector_json(r.witness.z)},
           {"witness_x", vector_json(r.witness.x)},
           {"sampling_note", r.sampling_note}};
    return std::pair{ok, j};
  };

  // The Hermitian structure built from the evaluation maps. For line bundles it
  // is K(z,z) itself; for higher rank the literal K(z,z) metric is reported
  // alongside because its Griffiths form can be indefinite.
  const auto [ok, conclusion] = verdict_for(chern::evaluation_dual_metric(k));
  out["conclusion"] = conclusion;
  if (k.fiber_dim() > 1) {
    out["kernel_metric"] = verdict_for(chern::metric_from_kernel(k)).second;
  } else {
    out["kernel_metric"] = conclusion;
  }
  out["status"] = ok ? "pass" : "fail";
  out["passed"] = ok;
  return out;
}

AnalysisResult run_analyze(const AnalysisConfig& cfg) {
  if (!cfg.kernel) throw ConfigError("config has no kernel");
  if (cfg.tasks.empty()) throw ConfigError("no tasks requested");
  const auto start = Clock::now();
  Context ctx{cfg, ChartGrid(cfg.lower, cfg.upper, cfg.resolution), {}, {}, 0.0};

  double scale = 1.0;
  for (double s : cfg.fd.scale) scale = std::max(scale, s);
  ctx.margin = 4.0 * std::max(cfg.fd.first_step, cfg.fd.second_step) * scale *
               (cfg.fd.richardson ? 2.0 : 1.0);
  for (std::size_t i = 0; i < ctx.grid.size(); ++i) {
    const ChartPoint z = ctx.grid.point(i);
    if (cfg.kernel->domain().contains_with_margin(z, ctx.margin)) {
      ctx.valid.push_back(i);
      ctx.points.push_back(z);
    }
  }
  if (ctx.points.empty()) {
    throw ConfigError("no grid point lies inside the kernel domain with the stencil margin");
  }

  json report;
  report["schema"] = kSchema;
  report["version"] = kVersion;
  report["config"] = cfg.raw;
  report["seed"] = cfg.seed;
  report["kernel"] = cfg.kernel->name();
  json res = json::array();
  for (int r : ctx.grid.resolution()) res.push_back(r);
  report["grid"] = {{"lower", vector_json(cfg.lower)},
                    {"upper", vector_json(cfg.upper)},
                    {"resolution", res},
                    {"order", "row-major over real axes (re z1, im z1, re z2, ...), first axis slowest"},
                    {"points", ctx.grid.size()},
                    {"valid_points", ctx.points.size()},
                    {"masked_points", ctx.grid.size() - ctx.points.size()},
                    {"stencil_margin", ctx.margin}};
  report["fd"] = {{"first_step", cfg.fd.first_step},
                  {"second_step", cfg.fd.second_step},
                  {"richardson", cfg.fd.richardson}};

  int exit_code = kOk;
  auto worsen = [&](int code) {
    auto rank = [](int c) {
      switch (c) {
        case kStructuralError: return 3;
        case kDomainError: return 2;
        case kVerdictFailure: return 1;
        default: return 0;
      }
    };
    if (rank(code) > rank(exit_code)) exit_code = code;
  };

  json tasks = json::object();
  for (const auto& name : cfg.tasks) {
    const auto t0 = Clock::now();
    json entry;
    try {
      TaskOutcome o = run_task(name, ctx);
      entry = o.result;
      entry["passed"] = o.passed;
      entry["status"] = o.status.empty() ? (o.passed ? "pass" : "fail") : o.status;
      if (o.fields) {
        entry["columns"] = o.fields->columns;
        entry["fields"] = fields_json(ctx, *o.fields);
      }
      if (!o.passed) worsen(kVerdictFailure);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      const std::string kind = classify(e);
      entry = {{"status", "error"}, {"passed", false}, {"error_kind", kind}, {"error", e.what()}};
      worsen(kind == "domain" ? kDomainError : kStructuralError);
    }
    entry["wall_seconds"] = std::chrono::duration<double>(Clock::now() - t0).count();
    tasks[name] = entry;
  }
  report["tasks"] = tasks;
  report["exit_code"] = exit_code;
  report["wall_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
  return {report, exit_code};
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

void write_outputs(const AnalysisConfig& cfg, const AnalysisResult& result,
                   const std::string& report_path, const std::string& csv_dir) {
  if (!csv_dir.empty()) {
    for (auto it = result.report["tasks"].begin(); it != result.report["tasks"].end(); ++it) {
      if (!it->contains("fields")) continue;
      write_atomic((std::filesystem::path(csv_dir) / (it.key() + ".csv")).string(),
                   csv_text(*it, cfg.kernel->base_dim()));
    }
  }
  if (!report_path.empty()) write_atomic(report_path, result.report.dump(2) + "\n");
}

json strip_timing(json report) {
  report.erase("wall_seconds");
  if (report.contains("tasks")) {
    for (auto& t : report["tasks"]) t.erase("wall_seconds");
  }
  return report;
}

}  // namespace bck::cli

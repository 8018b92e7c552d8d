#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "bck/cli.hpp"

namespace bck::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void require_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) fail(where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) fail("unknown key '" + it.key() + "' in " + where);
  }
}

double number(const json& j, const std::string& what) {
  if (!j.is_number()) fail(what + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(what + " must be finite");
  return v;
}

double positive(const json& j, const std::string& what) {
  const double v = number(j, what);
  if (v <= 0.0) fail(what + " must be positive");
  return v;
}

int integer(const json& j, const std::string& what, int min) {
  if (!j.is_number_integer()) fail(what + " must be an integer");
  const auto v = j.get<long long>();
  if (v < min || v > 1000000) fail(what + " is out of range");
  return static_cast<int>(v);
}

Vector parse_vector(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) fail(what + " must be a non-empty array of complex numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_complex(j[i]);
  return v;
}

kernels::KernelSpec parse_kernel(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    fail("kernel needs a string 'type'");
  }
  const std::string type = j["type"];
  try {
    if (type == "disc_power") {
      require_keys(j, {"type", "nu"}, "kernel");
      return kernels::KernelSpec::disc_power(j.contains("nu") ? number(j["nu"], "kernel.nu") : 1.0);
    }
    if (type == "constant") {
      require_keys(j, {"type", "matrix", "dim"}, "kernel");
      if (!j.contains("matrix")) fail("constant kernel needs 'matrix'");
      const int dim = j.contains("dim") ? integer(j["dim"], "kernel.dim", 1) : 1;
      return kernels::KernelSpec::constant(parse_matrix(j["matrix"]), dim);
    }
    if (type == "universal_grassmann") {
      require_keys(j, {"type", "ambient", "rank"}, "kernel");
      if (!j.contains("ambient") || !j.contains("rank")) fail("universal_grassmann needs 'ambient' and 'rank'");
      return kernels::KernelSpec::universal_grassmann(integer(j["ambient"], "kernel.ambient", 2),
                                                      integer(j["rank"], "kernel.rank", 1));
    }
    if (type == "from_sections") {
      require_keys(j, {"type", "dim", "sections", "monomials", "gram"}, "kernel");
      const int dim = j.contains("dim") ? integer(j["dim"], "kernel.dim", 1) : 1;
      std::optional<Polynomial> poly;
      if (j.contains("monomials")) {
        if (dim != 1) fail("'monomials' shorthand needs dim = 1");
        const json& m = j["monomials"];
        if (!m.is_array() || m.empty()) fail("'monomials' must be a non-empty array of exponents");
        Polynomial p(1, 1, static_cast<Eigen::Index>(m.size()));
        for (std::size_t c = 0; c < m.size(); ++c) {
          Matrix coeff = Matrix::Zero(1, static_cast<Eigen::Index>(m.size()));
          coeff(0, static_cast<Eigen::Index>(c)) = 1.0;
          p.add(coeff, {integer(m[c], "monomial exponent", 0)});
        }
        poly = p;
      } else if (j.contains("sections")) {
        poly = parse_polynomial(j["sections"], dim);
      } else {
        fail("from_sections needs 'sections' or 'monomials'");
      }
      const Matrix g = j.contains("gram") ? parse_matrix(j["gram"])
                                          : Matrix(Matrix::Identity(poly->cols(), poly->cols()));
      return kernels::KernelSpec::from_sections(*poly, g);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail(std::string("invalid kernel: ") + e.what());
  }
  fail("unknown kernel type '" + type + "'");
}

}  // namespace

const std::vector<std::string>& task_order() {
  static const std::vector<std::string> order{"psd",       "admissibility", "connection",
                                              "curvature", "compatibility", "griffiths",
                                              "theorem55", "dual",          "subbundle",
                                              "selftest"};
  return order;
}

Complex parse_complex(const json& j) {
  if (j.is_number()) return {number(j, "complex value"), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], "real part"), number(j[1], "imaginary part")};
  if (j.is_object() && j.contains("re")) {
    require_keys(j, {"re", "im"}, "complex value");
    return {number(j["re"], "real part"), j.contains("im") ? number(j["im"], "imaginary part") : 0.0};
  }
  fail("complex values are numbers, [re, im] pairs or {\"re\", \"im\"} objects");
}

Matrix parse_matrix(const json& j) {
  if (j.is_number()) return Matrix::Constant(1, 1, parse_complex(j));
  if (!j.is_array() || j.empty() || !j[0].is_array()) fail("matrices are arrays of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  if (cols == 0) fail("matrix rows must be non-empty");
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) fail("matrix rows differ in length");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = parse_complex(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

Polynomial parse_polynomial(const json& j, int dim) {
  require_keys(j, {"rows", "cols", "terms"}, "polynomial");
  if (!j.contains("rows") || !j.contains("cols") || !j.contains("terms") || !j["terms"].is_array()) {
    fail("polynomial needs 'rows', 'cols' and a 'terms' array");
  }
  try {
    Polynomial p(dim, integer(j["rows"], "polynomial.rows", 1), integer(j["cols"], "polynomial.cols", 1));
    for (const json& t : j["terms"]) {
      require_keys(t, {"z", "zbar", "coeff"}, "polynomial term");
      if (!t.contains("coeff")) fail("polynomial term needs 'coeff'");
      auto exps = [&](const char* key) {
        std::vector<int> e;
        if (!t.contains(key)) return e;
        if (!t[key].is_array()) fail(std::string("'") + key + "' must be an array of exponents");
        for (const json& x : t[key]) e.push_back(integer(x, "exponent", 0));
        return e;
      };
      p.add(parse_matrix(t["coeff"]), exps("z"), exps("zbar"));
    }
    return p;
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail(std::string("invalid polynomial: ") + e.what());
  }
}

AnalysisConfig parse_config(const json& j) {
  require_keys(j,
               {"kernel", "grid", "fd", "tolerances", "directions", "tasks", "output",
                "curvature_method", "subbundle", "threads"},
               "config");
  AnalysisConfig c;
  c.raw = j;

  if (!j.contains("kernel")) fail("config needs a 'kernel'");
  c.kernel = parse_kernel(j["kernel"]);
  const int d = c.kernel->base_dim();

  if (!j.contains("grid")) fail("config needs a 'grid'");
  const json& g = j["grid"];
  require_keys(g, {"lower", "upper", "resolution"}, "grid");
  if (!g.contains("lower") || !g.contains("upper") || !g.contains("resolution")) {
    fail("grid needs 'lower', 'upper' and 'resolution'");
  }
  c.lower = parse_vector(g["lower"], "grid.lower");
  c.upper = parse_vector(g["upper"], "grid.upper");
  if (c.lower.size() != d || c.upper.size() != d) {
    fail("grid corners must have " + std::to_string(d) + " complex coordinates");
  }
  if (!g["resolution"].is_array()) fail("grid.resolution must be an array");
  for (const json& r : g["resolution"]) c.resolution.push_back(integer(r, "grid.resolution", 2));
  if (c.resolution.size() == 1) c.resolution.assign(static_cast<std::size_t>(2 * d), c.resolution[0]);
  if (c.resolution.size() != static_cast<std::size_t>(2 * d)) {
    fail("grid.resolution needs one entry per real axis (" + std::to_string(2 * d) + ")");
  }
  for (int a = 0; a < d; ++a) {
    if (!(c.lower(a).real() < c.upper(a).real()) || !(c.lower(a).imag() < c.upper(a).imag())) {
      fail("grid.lower must be below grid.upper on every real axis");
    }
  }

  if (j.contains("fd")) {
    const json& f = j["fd"];
    require_keys(f, {"first_step", "second_step", "richardson", "scale"}, "fd");
    if (f.contains("first_step")) c.fd.first_step = positive(f["first_step"], "fd.first_step");
    if (f.contains("second_step")) c.fd.second_step = positive(f["second_step"], "fd.second_step");
    if (f.contains("richardson")) {
      if (!f["richardson"].is_boolean()) fail("fd.richardson must be a boolean");
      c.fd.richardson = f["richardson"];
    }
    if (f.contains("scale")) {
      if (!f["scale"].is_array() || static_cast<int>(f["scale"].size()) != d) {
        fail("fd.scale needs one entry per complex axis");
      }
      for (const json& s : f["scale"]) c.fd.scale.push_back(positive(s, "fd.scale"));
    }
  }

  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    std::vector<std::pair<const char*, double*>> fields{
        {"pos_tol", &c.tol.pos_tol},
        {"neg_tol", &c.tol.neg_tol},
        {"psd_tol", &c.tol.psd_tol},
        {"admissibility_tau", &c.tol.admissibility_tau},
        {"cr_tol", &c.tol.cr_tol},
        {"connection_abs", &c.tol.connection_abs},
        {"curvature_rel", &c.tol.curvature_rel},
        {"method_agreement", &c.tol.method_agreement},
        {"compatibility", &c.tol.compatibility},
        {"dual", &c.tol.dual},
        {"subbundle", &c.tol.subbundle}};
    std::set<std::string> allowed;
    for (auto& [k, _] : fields) allowed.insert(k);
    require_keys(t, allowed, "tolerances");
    for (auto& [k, p] : fields) {
      if (t.contains(k)) *p = positive(t[k], std::string("tolerances.") + k);
    }
  }

  if (j.contains("directions")) {
    const json& dj = j["directions"];
    require_keys(dj, {"count", "seed"}, "directions");
    if (dj.contains("count")) c.direction_count = static_cast<std::size_t>(integer(dj["count"], "directions.count", 0));
    if (dj.contains("seed")) {
      if (!dj["seed"].is_number_unsigned() && !(dj["seed"].is_number_integer() && dj["seed"].get<long long>() >= 0)) {
        fail("directions.seed must be a non-negative integer");
      }
      c.seed = dj["seed"].get<std::uint64_t>();
    }
  }

  if (!j.contains("tasks") || !j["tasks"].is_array()) fail("config needs a 'tasks' array");
  std::set<std::string> requested;
  for (const json& t : j["tasks"]) {
    if (!t.is_string()) fail("task names must be strings");
    const std::string name = t;
    if (std::find(task_order().begin(), task_order().end(), name) == task_order().end()) {
      fail("unknown task '" + name + "'");
    }
    requested.insert(name);
  }
  if (requested.empty()) fail("no tasks requested");
  for (const auto& name : task_order()) {
    if (requested.count(name)) c.tasks.push_back(name);
  }

  if (j.contains("curvature_method")) {
    if (!j["curvature_method"].is_string()) fail("curvature_method must be a string");
    c.method = chern::curvature_method_from_string(j["curvature_method"]);
  }

  if (j.contains("subbundle")) {
    require_keys(j["subbundle"], {"frame"}, "subbundle");
    if (!j["subbundle"].contains("frame")) fail("subbundle needs a 'frame' polynomial");
    c.subbundle_frame = parse_polynomial(j["subbundle"]["frame"], d);
    if (c.subbundle_frame->rows() != c.kernel->fiber_dim()) {
      fail("subbundle frame must have as many rows as the fiber dimension");
    }
  }
  if (requested.count("subbundle") && !c.subbundle_frame) fail("task 'subbundle' needs 'subbundle.frame'");

  if (j.contains("output")) {
    const json& o = j["output"];
    require_keys(o, {"report", "csv_dir"}, "output");
    if (o.contains("report")) {
      if (!o["report"].is_string()) fail("output.report must be a path string");
      c.report_path = o["report"];
    }
    if (o.contains("csv_dir")) {
      if (!o["csv_dir"].is_string()) fail("output.csv_dir must be a path string");
      c.csv_dir = o["csv_dir"];
    }
  }
  if (j.contains("threads")) c.threads = static_cast<unsigned>(integer(j["threads"], "threads", 1));
  return c;
}

AnalysisConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

}  // namespace bck::cli

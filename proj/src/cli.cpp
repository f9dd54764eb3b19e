#include "biharm/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "biharm/error.hpp"
#include "biharm/expression.hpp"

namespace biharm::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;
constexpr double kIdentityTolerance = 1e-7;
constexpr double kOracleTolerance = 1e-9;

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorKind::ConfigError, what);
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() || !std::isfinite(v)) {
    config_error("'" + key + "' expects a number, got '" + text + "'");
  }
  return v;
}

std::uint64_t parse_unsigned(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    config_error("'" + key + "' expects a non-negative integer, got '" + text + "'");
  }
  return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& key) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(parse_double(item, key));
  if (values.empty()) config_error("'" + key + "' is empty");
  return values;
}

std::vector<double> split_numbers(const std::string& text, const std::string& key) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (ss >> item) values.push_back(parse_double(item, key));
  return values;
}

bool is_custom_key(const std::string& key) {
  static const std::vector<std::string> keys = {"g11", "g12", "g13", "g22", "g23", "g33",
                                                "pi1", "pi2", "h11", "h12", "h22", "x_range",
                                                "y_range", "z_range"};
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

void validate(const RunConfig& c) {
  static const std::vector<std::string> commands = {"verify", "sweep", "identities"};
  if (std::find(commands.begin(), commands.end(), c.command) == commands.end()) {
    config_error("unknown command '" + c.command + "'");
  }
  if (!(c.tol.harmonic > 0.0) || !(c.tol.biharmonic > 0.0)) {
    config_error("tolerances must be positive");
  }
  if (c.points && *c.points < 1) config_error("points must be at least 1");
  if (c.jobs < 1) config_error("jobs must be at least 1");
  if (!c.format.empty() && c.format != "json" && c.format != "csv") {
    config_error("format must be json or csv");
  }
  if (!c.entry.empty() && c.entry != "custom") {
    const auto& names = catalog_names();
    if (std::find(names.begin(), names.end(), c.entry) == names.end()) {
      config_error("unknown catalog entry '" + c.entry + "'");
    }
  }
  if (c.command == "verify" && c.entry.empty()) config_error("verify needs an entry");
}

std::string num(double v) { return fmt::format("{}", v); }

Json point_json(const Point3& p) { return Json::array({p.x, p.y, p.z}); }

std::map<std::string, double> expression_parameters(const RunConfig& c) {
  const CatalogParams d;
  return {{"m", c.m.empty() ? d.m : c.m.front()},
          {"l", c.l.empty() ? d.l : c.l.front()},
          {"a", c.a.empty() ? d.a : c.a.front()},
          {"b", c.b.empty() ? d.b : c.b.front()}};
}

CatalogParams first_params(const RunConfig& c) {
  const auto p = expression_parameters(c);
  return {p.at("m"), p.at("l"), p.at("a"), p.at("b")};
}

Json params_json(const CatalogEntry& e) {
  Json j = Json::object();
  for (const std::string& name : e.parameter_names) {
    if (name == "m") j["m"] = e.params.m;
    if (name == "l") j["l"] = e.params.l;
    if (name == "a") j["a"] = e.params.a;
    if (name == "b") j["b"] = e.params.b;
  }
  return j;
}

std::string model_of(const CatalogEntry& e) {
  return e.bcv ? to_string(classify_bcv(*e.bcv)) : std::string();
}

struct OutputTarget {
  std::ofstream file;
  std::ostream* stream;

  OutputTarget(const std::string& path, std::ostream& fallback) : stream(&fallback) {
    if (!path.empty()) {
      file.open(path, std::ios::binary);
      if (!file) config_error("cannot open '" + path + "' for writing");
      stream = &file;
    }
  }
};

template <class F>
void parallel_for(std::size_t n, unsigned jobs, F body) {
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::string describe_error(const std::exception& ex) { return ex.what(); }

// ---- verify ----------------------------------------------------------------

Json report_json(const CatalogEntry& e, const BiharmonicReport& r, const RunConfig& c,
                 std::size_t points) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["entry"] = e.name;
  j["params"] = params_json(e);
  if (e.bcv) {
    j["model"] = model_of(e);
  }
  j["sample"] = {{"points", points}, {"seed", c.seed}};
  j["tolerances"] = {{"harmonic", c.tol.harmonic}, {"biharmonic", c.tol.biharmonic}};
  Json pts = Json::array();
  for (const PointRecord& p : r.points) {
    pts.push_back({{"p", point_json(p.point)},
                   {"r1", p.r1},
                   {"r2", p.r2},
                   {"tension", p.tension},
                   {"K_N", p.K_N},
                   {"jac", p.jacobi},
                   {"rc", p.rc},
                   {"fiber", p.fiber}});
  }
  j["points"] = std::move(pts);
  const Aggregate& a = r.aggregate;
  j["aggregate"] = {{"max_abs_r1", a.max_abs_r1},
                    {"max_abs_r2", a.max_abs_r2},
                    {"median_abs_r", a.median_abs_r},
                    {"max_tension", a.max_tension},
                    {"median_tension", a.median_tension},
                    {"max_jac", a.max_jacobi},
                    {"max_rc", a.max_rc},
                    {"max_fiber", a.max_fiber},
                    {"max_submersion_deviation", a.max_submersion_deviation},
                    {"expected", e.name == "custom" ? Json() : Json(to_string(e.expected))},
                    {"verdict", to_string(a.verdict)}};
  return j;
}

void write_points_csv(std::ostream& os, const BiharmonicReport& r) {
  os << "x,y,z,r1,r2,tension,K_N,jac1,jac2,jac3";
  for (int i = 1; i <= 7; ++i) os << ",rc" << i;
  os << ",fiber\n";
  for (const PointRecord& p : r.points) {
    os << num(p.point.x) << ',' << num(p.point.y) << ',' << num(p.point.z) << ',' << num(p.r1)
       << ',' << num(p.r2) << ',' << num(p.tension) << ',' << num(p.K_N);
    for (double v : p.jacobi) os << ',' << num(v);
    for (double v : p.rc) os << ',' << num(v);
    os << ',' << num(p.fiber) << '\n';
  }
}

CatalogEntry resolve_entry(const RunConfig& c, const std::string& name,
                           const CatalogParams& params) {
  return name == "custom" ? custom_entry(c) : catalog_entry(name, params);
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const CatalogEntry e = resolve_entry(c, c.entry, first_params(c));
  const std::size_t points = c.points.value_or(50);
  const BiharmonicReport r = classify_map(e.spec, e.plan(points, c.seed), c.tol);

  OutputTarget target(c.out, out);
  if (c.format == "csv") {
    write_points_csv(*target.stream, r);
  } else {
    *target.stream << report_json(e, r, c, points).dump(2) << '\n';
  }

  const Verdict v = r.aggregate.verdict;
  const bool ok = e.name == "custom" ? v != Verdict::Inconclusive : v == e.expected;
  err << e.name << ": " << to_string(v);
  if (e.name != "custom") err << " (expected " << to_string(e.expected) << ")";
  err << '\n';
  return ok ? kOk : kFailure;
}

// ---- sweep -----------------------------------------------------------------

struct Cell {
  std::string entry;
  CatalogParams params;
};

std::vector<std::string> selected_entries(const RunConfig& c) {
  if (!c.entry.empty()) return {c.entry};
  return catalog_names();
}

std::vector<Cell> build_grid(const RunConfig& c) {
  std::vector<Cell> cells;
  for (const std::string& name : selected_entries(c)) {
    if (name == "custom") {
      cells.push_back({name, first_params(c)});
      continue;
    }
    auto pick = [](const std::vector<double>& given, std::vector<double> fallback) {
      return given.empty() ? fallback : given;
    };
    std::vector<CatalogParams> grid;
    if (name == "pr1") {
      for (double a : pick(c.a, {0.5, 1.0, 2.0}))
        for (double b : pick(c.b, {0.0, 1.0, 3.0})) grid.push_back({0.0, 0.0, a, b});
    } else if (name == "h2r-exp") {
      for (double m : pick(c.m, {-1.0, -0.25, -0.01})) grid.push_back({m, 0.0, 1.0, 0.0});
    } else if (name == "bcv-z") {
      for (double m : pick(c.m, {-1.0, -0.25, 0.0, 0.25, 1.0}))
        for (double l : pick(c.l, {0.0, 1.0, 2.0})) grid.push_back({m, l, 1.0, 0.0});
    } else {
      grid = default_grid(name);
    }
    for (const auto& p : grid) cells.push_back({name, p});
  }
  return cells;
}

struct SweepRow {
  Cell cell;
  std::string model;
  std::string expected;
  std::optional<Aggregate> aggregate;
  std::string error;
  std::vector<std::string> parameter_names;
};

SweepRow run_cell(const RunConfig& c, const Cell& cell, std::size_t points) {
  SweepRow row;
  row.cell = cell;
  try {
    const CatalogEntry e = resolve_entry(c, cell.entry, cell.params);
    row.model = model_of(e);
    row.expected = e.name == "custom" ? "" : to_string(e.expected);
    row.parameter_names = e.parameter_names;
    row.aggregate = classify_map(e.spec, e.plan(points, c.seed), c.tol).aggregate;
  } catch (const std::exception& ex) {
    row.error = describe_error(ex);
  }
  return row;
}

bool row_ok(const SweepRow& r) {
  if (!r.aggregate) return false;
  if (r.expected.empty()) return r.aggregate->verdict != Verdict::Inconclusive;
  return to_string(r.aggregate->verdict) == r.expected;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string params_cell(const Json& params) {
  std::string cell;
  for (const auto& [key, value] : params.items()) {
    if (!cell.empty()) cell += ';';
    cell += key + "=" + num(value.get<double>());
  }
  return cell;
}

std::string param_field(const SweepRow& r, const char* name, double v) {
  const auto& names = r.parameter_names;
  return std::find(names.begin(), names.end(), name) != names.end() ? num(v) : std::string();
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const std::vector<Cell> cells = build_grid(c);
  const std::size_t points = c.points.value_or(50);
  std::vector<SweepRow> rows(cells.size());
  parallel_for(cells.size(), c.jobs, [&](std::size_t i) { rows[i] = run_cell(c, cells[i], points); });

  OutputTarget target(c.out, out);
  std::ostream& os = *target.stream;
  if (c.format == "json") {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "sweep";
    j["sample"] = {{"points", points}, {"seed", c.seed}};
    Json list = Json::array();
    for (const SweepRow& r : rows) {
      Json cell = {{"entry", r.cell.entry}};
      Json params = Json::object();
      for (const auto& n : r.parameter_names) {
        if (n == "m") params["m"] = r.cell.params.m;
        if (n == "l") params["l"] = r.cell.params.l;
        if (n == "a") params["a"] = r.cell.params.a;
        if (n == "b") params["b"] = r.cell.params.b;
      }
      cell["params"] = params;
      cell["model"] = r.model;
      cell["expected"] = r.expected;
      if (r.aggregate) {
        cell["verdict"] = to_string(r.aggregate->verdict);
        cell["max_abs_r1"] = r.aggregate->max_abs_r1;
        cell["max_abs_r2"] = r.aggregate->max_abs_r2;
        cell["max_tension"] = r.aggregate->max_tension;
        cell["max_jac"] = r.aggregate->max_jacobi;
        cell["max_rc"] = r.aggregate->max_rc;
        cell["max_fiber"] = r.aggregate->max_fiber;
      } else {
        cell["error"] = r.error;
      }
      list.push_back(std::move(cell));
    }
    j["cells"] = std::move(list);
    os << j.dump(2) << '\n';
  } else {
    os << "entry,m,l,a,b,model,expected,verdict,max_abs_r1,max_abs_r2,max_tension,max_jac,max_rc,"
          "max_fiber,error\n";
    for (const SweepRow& r : rows) {
      const CatalogParams& p = r.cell.params;
      os << r.cell.entry << ',' << param_field(r, "m", p.m) << ',' << param_field(r, "l", p.l)
         << ',' << param_field(r, "a", p.a) << ',' << param_field(r, "b", p.b) << ','
         << csv_field(r.model) << ',' << r.expected << ',';
      if (r.aggregate) {
        const Aggregate& a = *r.aggregate;
        os << to_string(a.verdict) << ',' << num(a.max_abs_r1) << ',' << num(a.max_abs_r2) << ','
           << num(a.max_tension) << ',' << num(a.max_jacobi) << ',' << num(a.max_rc) << ','
           << num(a.max_fiber) << ",\n";
      } else {
        os << ",,,,,,," << csv_field(r.error) << '\n';
      }
    }
  }
  const auto failed = std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !row_ok(r); });
  err << rows.size() << " cells, " << failed << " not matching the expected verdict\n";
  return failed == 0 ? kOk : kFailure;
}

// ---- identities ------------------------------------------------------------

struct IdentityRow {
  std::string label;
  Json params = Json::object();
  std::string model;
  std::vector<std::pair<std::string, std::pair<double, double>>> checks;  // name -> (value, limit)
  std::string error;

  bool ok() const {
    if (!error.empty()) return false;
    return std::all_of(checks.begin(), checks.end(),
                       [](const auto& c) { return c.second.first < c.second.second; });
  }
};

double oracle_error(const IntegrabilityValues& got, const IntegrabilityValues& want) {
  double err = std::max({std::abs(got.f1 - want.f1), std::abs(got.f2 - want.f2),
                         std::abs(got.kappa1 - want.kappa1), std::abs(got.kappa2 - want.kappa2)});
  // f3 and sigma share the orientation sign of e3.
  double oriented = std::numeric_limits<double>::infinity();
  for (double s : {1.0, -1.0}) {
    oriented = std::min(oriented, std::max(std::abs(got.f3 - s * want.f3),
                                           std::abs(got.sigma - s * want.sigma)));
  }
  return std::max(err, oriented);
}

IdentityRow entry_identities(const CatalogEntry& e, const RunConfig& c, std::size_t points) {
  IdentityRow row;
  row.label = e.name;
  row.params = params_json(e);
  row.model = model_of(e);
  const FrameTriple frame = build_frame(e.spec);
  const IntegrabilityData data = integrability_data(frame, e.spec.metric);
  double jac = 0.0, rc = 0.0, fiber = 0.0, oracle = 0.0, curvature = 0.0;
  for (const Point3& p : sample_points(e.plan(points, c.seed), e.spec.metric.domain())) {
    for (double v : jacobi_residuals(frame, data, e.spec.metric, p)) jac = std::max(jac, std::abs(v));
    for (double v : rc_residuals(frame, data, e.spec.metric, p)) rc = std::max(rc, std::abs(v));
    fiber = std::max(fiber, std::abs(fiber_constancy_residual(frame, data, p)));
    const double k = base_gauss_curvature(data, frame, p);
    curvature = std::max(curvature, std::abs(k - base_curvature_direct(e.spec, p)));
    if (e.oracle) oracle = std::max(oracle, oracle_error(data.values(p), e.oracle->values(p)));
  }
  row.checks = {{"max_jac", {jac, kIdentityTolerance}},
                {"max_rc", {rc, kIdentityTolerance}},
                {"max_fiber", {fiber, kIdentityTolerance}},
                {"max_curvature_gap", {curvature, kIdentityTolerance}}};
  if (e.oracle) row.checks.push_back({"max_oracle_error", {oracle, kOracleTolerance}});
  return row;
}

IdentityRow bcv_identities(const BCVParams& q, const RunConfig& c, std::size_t points) {
  IdentityRow row;
  row.label = "bcv";
  row.params = {{"m", q.m}, {"l", q.l}};
  row.model = to_string(classify_bcv(q));
  const MetricField g = bcv_metric(q);
  const FrameTriple frame = bcv_frame(q);
  const std::array<VectorField, 3> E = {frame.field(0), frame.field(1), frame.field(2)};

  SamplePlan plan;
  plan.count = points;
  plan.seed = c.seed;
  if (q.m < 0.0) {
    const double r = std::sqrt(-0.9 / q.m);
    plan.lo = {-r, -r, -1.0};
    plan.hi = {r, r, 1.0};
    plan.region = ChartDomain::cylinder(r);
  }
  double connection = 0.0, curvature = 0.0;
  for (const Point3& p : sample_points(plan, g.domain())) {
    Vector3 e[3];
    for (int k = 0; k < 3; ++k) e[k] = E[static_cast<std::size_t>(k)].value(p);
    for (int i = 1; i <= 3; ++i) {
      for (int j = 1; j <= 3; ++j) {
        const Vector3 got = levi_civita(g, E[static_cast<std::size_t>(i - 1)],
                                        E[static_cast<std::size_t>(j - 1)], p);
        const Vector3 coef = bcv_connection_oracle(q, i, j, p.x, p.y);
        for (int a = 0; a < 3; ++a) {
          double want = 0.0;
          for (int k = 0; k < 3; ++k) want += coef[static_cast<std::size_t>(k)] * e[k][a];
          connection = std::max(connection, std::abs(got[static_cast<std::size_t>(a)] - want));
        }
      }
    }
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j)
        for (int k = 1; k <= 3; ++k)
          for (int l = 1; l <= 3; ++l) {
            const double got = curvature_scalar(g, E[i - 1], E[j - 1], E[k - 1], E[l - 1], p);
            curvature = std::max(curvature, std::abs(got - bcv_curvature_oracle(q, i, j, k, l)));
          }
  }
  row.checks = {{"max_connection_error", {connection, kOracleTolerance}},
                {"max_curvature_error", {curvature, kOracleTolerance}}};
  return row;
}

int cmd_identities(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const std::size_t points = c.points.value_or(100);
  std::vector<std::function<IdentityRow()>> tasks;
  if (c.bcv) {
    const BCVParams q = *c.bcv;
    tasks.push_back([&c, q, points] { return bcv_identities(q, c, points); });
    tasks.push_back([&c, q, points] {
      IdentityRow r = entry_identities(bcv_z_projection(q), c, points);
      return r;
    });
  } else {
    for (const Cell& cell : build_grid(c)) {
      tasks.push_back([&c, cell, points] {
        return entry_identities(resolve_entry(c, cell.entry, cell.params), c, points);
      });
    }
  }
  std::vector<IdentityRow> rows(tasks.size());
  parallel_for(tasks.size(), c.jobs, [&](std::size_t i) {
    try {
      rows[i] = tasks[i]();
    } catch (const std::exception& ex) {
      rows[i].label = "error";
      rows[i].error = describe_error(ex);
    }
  });

  OutputTarget target(c.out, out);
  std::ostream& os = *target.stream;
  if (c.format == "csv") {
    os << "entry,params,model,check,value,limit,pass\n";
    for (const IdentityRow& r : rows) {
      if (!r.error.empty()) {
        os << r.label << ",,,error,,," << csv_field(r.error) << '\n';
        continue;
      }
      for (const auto& [name, vl] : r.checks) {
        os << r.label << ',' << params_cell(r.params) << ',' << csv_field(r.model) << ','
           << name << ',' << num(vl.first) << ',' << num(vl.second) << ','
           << (vl.first < vl.second ? "true" : "false") << '\n';
      }
    }
  } else {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "identities";
    j["sample"] = {{"points", points}, {"seed", c.seed}};
    Json list = Json::array();
    for (const IdentityRow& r : rows) {
      Json item = {{"entry", r.label}, {"params", r.params}, {"model", r.model}};
      if (!r.error.empty()) item["error"] = r.error;
      for (const auto& [name, vl] : r.checks) item[name] = vl.first;
      item["pass"] = r.ok();
      list.push_back(std::move(item));
    }
    j["results"] = std::move(list);
    os << j.dump(2) << '\n';
  }
  const auto failed = std::count_if(rows.begin(), rows.end(), [](const IdentityRow& r) { return !r.ok(); });
  err << rows.size() << " identity suites, " << failed << " failing\n";
  return failed == 0 ? kOk : kFailure;
}

}  // namespace

void apply_config_text(const std::string& text, RunConfig& config) {
  std::stringstream ss(text);
  std::string line;
  int number = 0;
  while (std::getline(ss, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      config_error("line " + std::to_string(number) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "command") {
      config.command = value;
    } else if (key == "entry") {
      config.entry = value;
    } else if (key == "m") {
      config.m = parse_list(value, key);
    } else if (key == "l") {
      config.l = parse_list(value, key);
    } else if (key == "a") {
      config.a = parse_list(value, key);
    } else if (key == "b") {
      config.b = parse_list(value, key);
    } else if (key == "points") {
      config.points = parse_unsigned(value, key);
    } else if (key == "seed") {
      config.seed = parse_unsigned(value, key);
    } else if (key == "tol_h") {
      config.tol.harmonic = parse_double(value, key);
    } else if (key == "tol_b") {
      config.tol.biharmonic = parse_double(value, key);
    } else if (key == "format") {
      config.format = value;
    } else if (key == "out") {
      config.out = value;
    } else if (key == "jobs") {
      config.jobs = static_cast<unsigned>(parse_unsigned(value, key));
    } else if (key == "bcv") {
      const auto v = split_numbers(value, key);
      if (v.size() != 2) config_error("'bcv' expects two numbers: m l");
      config.bcv = BCVParams{v[0], v[1]};
    } else if (is_custom_key(key)) {
      config.custom[key] = value;
    } else {
      config_error("line " + std::to_string(number) + ": unknown key '" + key + "'");
    }
  }
  if (!config.custom.empty() && config.entry.empty()) config.entry = "custom";
}

CatalogEntry custom_entry(const RunConfig& config) {
  const auto& keys = config.custom;
  auto get = [&keys](const std::string& key, const std::string& fallback) {
    const auto it = keys.find(key);
    return it == keys.end() ? fallback : it->second;
  };
  for (const char* required : {"g11", "g22", "g33", "pi1", "pi2"}) {
    if (!keys.count(required)) config_error(std::string("custom spec needs '") + required + "'");
  }
  const auto params = expression_parameters(config);
  const std::vector<std::string> xyz = {"x", "y", "z"};
  const std::vector<std::string> uv = {"u", "v"};
  auto coordinate_fn = [&](const std::string& key, const std::string& fallback) {
    auto e = std::make_shared<Expression>(Expression::parse(get(key, fallback), xyz, params));
    return CoordinateFunction([e](const Jet& x, const Jet& y, const Jet& z) {
      const std::array<Jet, 3> v = {x, y, z};
      return e->evaluate<Jet>(std::span<const Jet>(v));
    });
  };
  auto plane_fn = [&](const std::string& key, const std::string& fallback) {
    auto e = std::make_shared<Expression>(Expression::parse(get(key, fallback), uv, params));
    return PlaneFunction([e](const Jet& u, const Jet& v) {
      const std::array<Jet, 2> w = {u, v};
      return e->evaluate<Jet>(std::span<const Jet>(w));
    });
  };

  CatalogEntry e;
  e.name = "custom";
  e.params = first_params(config);
  e.parameter_names = {"m", "l", "a", "b"};
  e.expected = Verdict::Inconclusive;
  double range[3][2];
  const char* range_keys[3] = {"x_range", "y_range", "z_range"};
  for (int k = 0; k < 3; ++k) {
    const auto v = split_numbers(get(range_keys[k], "-1 1"), range_keys[k]);
    if (v.size() != 2 || !(v[0] <= v[1])) {
      config_error(std::string("'") + range_keys[k] + "' expects 'lo hi' with lo <= hi");
    }
    range[k][0] = v[0];
    range[k][1] = v[1];
  }
  e.sample_lo = {range[0][0], range[1][0], range[2][0]};
  e.sample_hi = {range[0][1], range[1][1], range[2][1]};

  e.spec.name = "custom";
  e.spec.metric = MetricField::from_components(
      {coordinate_fn("g11", ""), coordinate_fn("g12", "0"), coordinate_fn("g13", "0"),
       coordinate_fn("g22", ""), coordinate_fn("g23", "0"), coordinate_fn("g33", "")},
      ChartDomain::everywhere());
  e.spec.map = {coordinate_fn("pi1", ""), coordinate_fn("pi2", "")};
  e.spec.base_metric = {plane_fn("h11", "1"), plane_fn("h12", "0"), plane_fn("h22", "1"),
                        ChartDomain::everywhere()};
  e.spec.base_frame = gram_schmidt_frame(e.spec.base_metric);

  const Point3 probe{0.5 * (range[0][0] + range[0][1]), 0.5 * (range[1][0] + range[1][1]),
                     0.5 * (range[2][0] + range[2][1])};
  bool spd = false;
  try {
    spd = e.spec.metric.positive_definite_at(probe);
  } catch (const Error&) {
    spd = false;
  }
  if (!spd) config_error("custom metric is not positive definite at the sample box center");
  return e;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    RunConfig c = config;
    if (c.format.empty()) c.format = c.command == "sweep" ? "csv" : "json";
    if (c.command == "verify") return cmd_verify(c, out, err);
    if (c.command == "sweep") return cmd_sweep(c, out, err);
    return cmd_identities(c, out, err);
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    switch (ex.kind()) {
      case ErrorKind::ConfigError:
      case ErrorKind::ParseError: return kConfigError;
      case ErrorKind::InvalidSubmersion: return kInvalidSubmersion;
      default: return kFailure;
    }
  } catch (const std::exception& ex) {
    err << "internal error: " << ex.what() << '\n';
    return kFailure;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Biharmonicity checks for Riemannian submersions from 3-manifolds"};
  app.name("biharm");
  std::string command, entry, config_path, format, out_path;
  std::string m, l, a, b;
  std::size_t points = 0;
  std::uint64_t seed = 1;
  double tol_h = 0.0, tol_b = 0.0;
  unsigned jobs = 1;
  std::vector<double> bcv;

  app.add_option("command", command, "verify, sweep or identities")->required();
  app.add_option("entry", entry, "catalog entry: pr1, h2r-exp, nil, flat, bcv-z");
  auto* o_m = app.add_option("--m", m, "BCV parameter m (comma-separated list for sweeps)");
  auto* o_l = app.add_option("--l", l, "BCV parameter l");
  auto* o_a = app.add_option("--a", a, "pr1 parameter a");
  auto* o_b = app.add_option("--b", b, "pr1 parameter b");
  auto* o_points = app.add_option("--points", points, "sample points per spec");
  auto* o_seed = app.add_option("--seed", seed, "sampler seed");
  auto* o_tol_h = app.add_option("--tol-h", tol_h, "harmonic tolerance on the tension norm");
  auto* o_tol_b = app.add_option("--tol-b", tol_b, "biharmonic tolerance on the residuals");
  auto* o_format = app.add_option("--format", format, "json or csv");
  auto* o_out = app.add_option("--out", out_path, "output path");
  auto* o_jobs = app.add_option("--jobs", jobs, "worker threads");
  app.add_option("--config", config_path, "key = value configuration file");
  auto* o_bcv = app.add_option("--bcv", bcv, "identities on the BCV space with parameters m l")
                    ->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  RunConfig config;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) config_error("cannot read config '" + config_path + "'");
      std::stringstream text;
      text << in.rdbuf();
      apply_config_text(text.str(), config);
    }
    config.command = command;
    if (!entry.empty()) config.entry = entry;
    if (*o_m) config.m = parse_list(m, "m");
    if (*o_l) config.l = parse_list(l, "l");
    if (*o_a) config.a = parse_list(a, "a");
    if (*o_b) config.b = parse_list(b, "b");
    if (*o_points) config.points = points;
    if (*o_seed) config.seed = seed;
    if (*o_tol_h) config.tol.harmonic = tol_h;
    if (*o_tol_b) config.tol.biharmonic = tol_b;
    if (*o_format) config.format = format;
    if (*o_out) config.out = out_path;
    if (*o_jobs) config.jobs = jobs;
    if (*o_bcv) config.bcv = BCVParams{bcv.at(0), bcv.at(1)};
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return kConfigError;
  }
  return run(config, out, err);
}

}  // namespace biharm::cli

// Copyright 2026 The FrameKit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// framekit: batch front-end over the C API.
//
// Exit status: 0 all checks passed, 1 usage or library error, 2 a
// mathematical check failed (named in the report).

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "framekit/framekit.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheck = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LibraryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void ok(fk_status s, const char* what) {
  if (s != FK_OK) {
    throw LibraryError(std::string(what) + ": " + fk_status_name(s) + ": " + fk_last_error());
  }
}

template <class T, void (*D)(T*)>
struct Deleter {
  void operator()(T* p) const { D(p); }
};
using Triple = std::unique_ptr<fk_triple, Deleter<fk_triple, fk_triple_destroy>>;
using Frame = std::unique_ptr<fk_frame, Deleter<fk_frame, fk_frame_destroy>>;
using DualFrame = std::unique_ptr<fk_dual_frame, Deleter<fk_dual_frame, fk_dual_frame_destroy>>;
using Hierarchy = std::unique_ptr<fk_hierarchy, Deleter<fk_hierarchy, fk_hierarchy_destroy>>;
using Operator = std::unique_ptr<fk_operator, Deleter<fk_operator, fk_operator_destroy>>;

struct Config {
  std::string command;
  std::string fixture;
  std::string j_range;
  std::optional<int> j_fine;
  std::optional<double> q;
  std::uint64_t seed = 20260101;
  double tol = 1e-8;
  int samples = 0;
  std::string output;
  std::string format = "json";
};

struct Check {
  std::string name;
  bool passed;
  double value;
  double tolerance;
};

struct Report {
  json params = json::object();
  json results = json::object();
  std::vector<Check> checks;

  void check_le(const std::string& name, double value, double tol) {
    checks.push_back({name, std::isfinite(value) && value <= tol, value, tol});
  }
  void check_near(const std::string& name, double value, double target, double tol) {
    checks.push_back({name, std::isfinite(value) && std::abs(value - target) <= tol, value, tol});
  }
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

std::vector<int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    size_t used = 0;
    if (dots == std::string::npos) {
      const int v = std::stoi(text, &used);
      if (used != text.size()) throw UsageError("bad level");
      return {v};
    }
    const std::string a = text.substr(0, dots);
    const std::string b = text.substr(dots + 2);
    const int lo = std::stoi(a, &used);
    if (used != a.size()) throw UsageError("bad level");
    const int hi = std::stoi(b, &used);
    if (used != b.size()) throw UsageError("bad level");
    if (hi < lo) throw UsageError("empty range");
    std::vector<int> out;
    for (int j = lo; j <= hi; ++j) out.push_back(j);
    return out;
  } catch (const std::logic_error&) {
    throw UsageError("--J expects an integer or a range lo..hi, got '" + text + "'");
  }
}

unsigned thread_cap() {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FRAMEKIT_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) cap = static_cast<unsigned>(v);
  }
  return cap;
}

// Runs body(i) for i in [0, n) on at most thread_cap() workers; results are
// written by index, so assembly order does not depend on scheduling.
template <class T>
std::vector<T> fan_out(size_t n, const std::function<T(size_t)>& body) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < n; i = next++) {
      try {
        out[i] = body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const size_t workers = std::min<size_t>(thread_cap(), n);
  std::vector<std::thread> pool;
  for (size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<double> random_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> v(static_cast<size_t>(n));
  for (double& x : v) x = dist(rng);
  return v;
}

json bounds_json(const fk_bounds& b) { return {{"lower", b.lower}, {"upper", b.upper}, {"ratio", b.ratio}}; }

// --fixture NAME, or the BPX frame at --J (single level) with --q (default 1).
Frame load_frame(const Config& c, Report& r) {
  fk_frame* f = nullptr;
  if (!c.fixture.empty()) {
    if (!c.j_range.empty()) throw UsageError("--fixture and --J are mutually exclusive");
    ok(fk_frame_fixture(c.fixture.c_str(), &f), "fixture");
    r.params["fixture"] = c.fixture;
    return Frame(f);
  }
  if (c.j_range.empty()) throw UsageError("this command needs --fixture or --J");
  const auto levels = parse_range(c.j_range);
  if (levels.size() != 1) throw UsageError("this command takes a single level for --J");
  const double q = c.q.value_or(1.0);
  fk_hierarchy* h = nullptr;
  ok(fk_hierarchy_build(levels[0], &h), "hierarchy");
  Hierarchy hy(h);
  ok(fk_bpx_frame(hy.get(), q, &f), "bpx frame");
  r.params["J"] = levels[0];
  r.params["q"] = q;
  return Frame(f);
}

// ---- subcommands -----------------------------------------------------------

void run_bounds(const Config& c, Report& r) {
  const Frame f = load_frame(c, r);
  const int samples = c.samples > 0 ? c.samples : 100;
  r.params["seed"] = c.seed;
  r.params["samples"] = samples;

  fk_bounds b{};
  ok(fk_frame_bounds(f.get(), &b), "bounds");
  const bool tight = std::abs(b.upper - b.lower) <= 1e-10 * b.upper;
  r.results["lower"] = b.lower;
  r.results["upper"] = b.upper;
  r.results["ratio"] = b.ratio;
  r.results["tight"] = tight;

  int n = 0, k = 0;
  ok(fk_frame_size(f.get(), &n, &k), "size");
  fk_triple* tp = nullptr;
  ok(fk_frame_triple(f.get(), &tp), "triple");
  const Triple t(tp);

  // A ||g||^2 <= sum_k <g, psi_k>^2 <= B ||g||^2 on seeded functionals.
  std::mt19937_64 rng(c.seed);
  double worst = 0.0;
  std::vector<double> coeffs(static_cast<size_t>(k));
  for (int s = 0; s < samples; ++s) {
    const auto g = random_vector(rng, n);
    double gn = 0.0;
    ok(fk_dual_norm(t.get(), g.data(), n, &gn), "dual norm");
    ok(fk_frame_analysis(f.get(), g.data(), n, coeffs.data(), k), "analysis");
    double energy = 0.0;
    for (double x : coeffs) energy += x * x;
    const double g2 = gn * gn;
    worst = std::max({worst, (b.lower * g2 - energy) / g2, (energy - b.upper * g2) / g2});
  }
  r.check_le("frame_inequality_violation", worst, 1e-10 * std::max(1.0, b.upper));
}

void run_dual(const Config& c, Report& r) {
  const Frame f = load_frame(c, r);
  const int samples = c.samples > 0 ? c.samples : 20;
  r.params["seed"] = c.seed;
  r.params["samples"] = samples;
  fk_dual_report d{};
  ok(fk_verify_dual_theorem(f.get(), c.seed, samples, &d), "dual theorem");
  r.results["primal"] = bounds_json(d.primal);
  r.results["dual"] = bounds_json(d.dual);
  r.results["inverse_bounds"] = {{"lower", 1.0 / d.primal.upper}, {"upper", 1.0 / d.primal.lower}};
  r.check_le("dual_lower_rel_error", d.dual_lower_rel_error, 1e-8);
  r.check_le("dual_upper_rel_error", d.dual_upper_rel_error, 1e-8);
  r.check_le("dual_frame_operator_inverse", d.inverse_rel_residual, 1e-9);
  r.check_le("reconstruction_primal", d.recon_primal_rel_error, 1e-10);
  r.check_le("reconstruction_dual", d.recon_dual_rel_error, 1e-10);
  r.check_le("dual_of_dual", d.dual_of_dual_rel_error, 1e-10);
  r.check_le("analysis_range_angle", d.range_angle_sine, 1e-8);
}

void run_gramian(const Config& c, Report& r) {
  const Frame f = load_frame(c, r);
  const int samples = c.samples > 0 ? c.samples : 20;
  r.params["seed"] = c.seed;
  r.params["samples"] = samples;
  fk_projector_report p{};
  ok(fk_verify_projector(f.get(), c.seed, samples, &p), "projector");
  fk_min_norm_report m{};
  ok(fk_verify_min_norm(f.get(), c.seed, samples, 100, &m), "min norm");
  r.results["projector"] = {{"idempotence", p.idempotence},     {"symmetry", p.symmetry},
                            {"svd_projector", p.svd_projector}, {"swapped", p.swapped},
                            {"split_synthesis", p.split_synthesis}, {"split_range", p.split_range}};
  r.results["min_norm"] = {{"svd_rel_error", m.svd_rel_error},
                           {"perturbations", m.perturbations},
                           {"violations", m.violations},
                           {"min_gap", m.min_gap}};
  r.check_le("idempotence", p.idempotence, 1e-10);
  r.check_le("symmetry", p.symmetry, 1e-10);
  r.check_le("svd_projector", p.svd_projector, 1e-10);
  r.check_le("swapped_gramian", p.swapped, 1e-10);
  r.check_le("split_synthesis", p.split_synthesis, 1e-10);
  r.check_le("split_range", p.split_range, 1e-10);
  r.check_le("min_norm_vs_svd", m.svd_rel_error, 1e-8);
  r.check_le("min_norm_violations", m.violations, 0.0);
}

json rate_json(const std::vector<int>& levels, const std::vector<double>& values, const fk_rate_fit& fit) {
  json rows = json::array();
  for (size_t i = 0; i < levels.size(); ++i) {
    json row = {{"level", levels[i]}, {"value", values[i]}};
    if (i > 0) row["growth"] = values[i] / values[i - 1];
    rows.push_back(row);
  }
  return {{"rows", rows}, {"slope", fit.slope}, {"constant", fit.constant}};
}

void run_rates(const Config& c, Report& r) {
  const int j_fine = c.j_fine.value_or(9);
  const double q = c.q.value_or(1.0);
  r.params["J_fine"] = j_fine;
  r.params["q"] = q;
  fk_hierarchy* hp = nullptr;
  ok(fk_hierarchy_build(j_fine - 1, &hp), "hierarchy");
  const Hierarchy hy(hp);

  const int cap = j_fine + 1;
  std::vector<int> levels(static_cast<size_t>(cap));
  std::vector<double> values(static_cast<size_t>(cap));
  int count = 0;
  fk_rate_fit fit{};
  ok(fk_jackson_rate_sine(hy.get(), 2, -1, levels.data(), values.data(), cap, &count, &fit), "jackson");
  r.results["jackson"] = rate_json({levels.begin(), levels.begin() + count}, {values.begin(), values.begin() + count},
                                   fit);
  r.check_near("jackson_slope", fit.slope, -2.0, 0.15);

  ok(fk_bernstein_rate(hy.get(), q, levels.data(), values.data(), cap, &count, &fit), "bernstein");
  r.results["bernstein"] = rate_json({levels.begin(), levels.begin() + count},
                                     {values.begin(), values.begin() + count}, fit);
  const double target = std::pow(2.0, 2.0 * q);
  double worst = 0.0;
  for (int i = 1; i < count; ++i) {
    if (levels[static_cast<size_t>(i)] < 3) continue;
    const double growth = values[static_cast<size_t>(i)] / values[static_cast<size_t>(i - 1)];
    worst = std::max(worst, std::abs(growth / target - 1.0));
  }
  r.results["bernstein_target_growth"] = target;
  r.check_le("bernstein_growth_rel_deviation", worst, 0.2);
}

void run_norm_equiv(const Config& c, Report& r) {
  const auto levels = parse_range(c.j_range.empty() ? "6" : c.j_range);
  const double q = c.q.value_or(1.0);
  const int samples = c.samples > 0 ? c.samples : 200;
  r.params["J"] = c.j_range.empty() ? "6" : c.j_range;
  r.params["q"] = q;
  r.params["seed"] = c.seed;
  r.params["samples"] = samples;
  const auto reports = fan_out<fk_norm_equiv_report>(levels.size(), [&](size_t i) {
    fk_hierarchy* hp = nullptr;
    ok(fk_hierarchy_build(levels[i], &hp), "hierarchy");
    const Hierarchy hy(hp);
    fk_norm_equiv_report rep{};
    ok(fk_norm_equivalence_study(hy.get(), q, c.seed, samples, &rep), "norm equivalence");
    return rep;
  });
  json rows = json::array();
  double lo = INFINITY, hi = 0.0, homog = 0.0;
  for (size_t i = 0; i < levels.size(); ++i) {
    const auto& rep = reports[i];
    rows.push_back({{"J", levels[i]},
                    {"samples", rep.samples},
                    {"r_min", rep.r_min},
                    {"r_max", rep.r_max},
                    {"spread", rep.spread},
                    {"homogeneity_error", rep.homogeneity_error}});
    lo = std::min(lo, rep.r_min);
    hi = std::max(hi, rep.r_max);
    homog = std::max(homog, rep.homogeneity_error);
  }
  r.results["rows"] = rows;
  r.results["interval"] = {lo, hi};
  r.check_le("spread", hi / lo, 20.0);
  r.check_le("homogeneity", homog, 1e-12);
}

void run_bpx(const Config& c, Report& r) {
  const auto levels = parse_range(c.j_range.empty() ? "2..7" : c.j_range);
  const double q = c.q.value_or(1.0);
  r.params["J"] = c.j_range.empty() ? "2..7" : c.j_range;
  r.params["q"] = q;
  r.params["seed"] = c.seed;
  r.params["tol"] = c.tol;
  const auto rows = fan_out<fk_conditioning_row>(levels.size(), [&](size_t i) {
    fk_conditioning_row row{};
    ok(fk_conditioning_row_compute(levels[i], q, c.tol, c.seed, &row), "conditioning");
    return row;
  });
  json out = json::array();
  for (const auto& row : rows) {
    json j = {{"J", row.finest_level}, {"n", row.n},         {"k", row.k},
              {"lower", row.lower},    {"upper", row.upper}, {"ratio", row.ratio},
              {"kappa_single", row.kappa_single}, {"cg_single", row.cg_single}};
    if (q == 1.0) {
      j["kappa_bpx"] = row.kappa_bpx;
      j["cg_bpx"] = row.cg_bpx;
    }
    out.push_back(j);
  }
  r.results["rows"] = out;

  double max_ratio = 0.0, kappa_dev = 0.0;
  bool increasing = true;
  for (size_t i = 0; i < rows.size(); ++i) {
    max_ratio = std::max(max_ratio, rows[i].ratio);
    if (i == 0) continue;
    increasing = increasing && rows[i].ratio > rows[i - 1].ratio;
    kappa_dev = std::max(kappa_dev, std::abs(rows[i].kappa_single / rows[i - 1].kappa_single / 4.0 - 1.0));
  }
  if (q > 0.0) {
    r.check_le("max_bound_ratio", max_ratio, 60.0);
  } else {
    // negative control: without scaling the ratio must grow with J
    r.checks.push_back({"ratio_strictly_increasing", increasing, increasing ? 1.0 : 0.0, 1.0});
  }
  if (rows.size() > 1) r.check_le("kappa_single_growth_rel_deviation", kappa_dev, 0.2);
}

void run_solve_poisson(const Config& c, Report& r) {
  const auto levels = parse_range(c.j_range.empty() ? "6" : c.j_range);
  r.params["J"] = c.j_range.empty() ? "6" : c.j_range;
  r.params["tol"] = c.tol;
  const auto reports = fan_out<fk_poisson_report>(levels.size(), [&](size_t i) {
    fk_poisson_report rep{};
    ok(fk_solve_poisson_manufactured(levels[i], c.tol, &rep), "poisson");
    return rep;
  });
  json rows = json::array();
  double worst_direct = 0.0, worst_coeff = 0.0;
  int it_lo = INT32_MAX, it_hi = 0;
  for (const auto& s : reports) {
    const bool min_norm_ok = s.coeff_vs_min_norm <= 1e-7;
    rows.push_back({{"J", s.finest_level},
                    {"n", s.n},
                    {"k", s.k},
                    {"iterations", s.iterations},
                    {"residual", s.residual},
                    {"h1_error_vs_direct", s.h1_vs_direct},
                    {"h1_error_vs_exact", s.h1_vs_exact},
                    {"coeff_vs_min_norm", s.coeff_vs_min_norm},
                    {"min_norm_match", min_norm_ok},
                    {"galerkin_orthogonality", s.galerkin_orthogonality}});
    worst_direct = std::max(worst_direct, s.h1_vs_direct);
    worst_coeff = std::max(worst_coeff, s.coeff_vs_min_norm);
    it_lo = std::min(it_lo, s.iterations);
    it_hi = std::max(it_hi, s.iterations);
  }
  r.results["rows"] = rows;
  r.check_le("h1_error_vs_direct", worst_direct, 1e-7);
  r.check_le("coeff_vs_min_norm", worst_coeff, 1e-7);
  if (reports.size() > 1) r.check_le("iteration_spread", static_cast<double>(it_hi) / it_lo, 2.0);
}

// Fixtures get L = H + R R^T (R seeded); BPX frames get the Poisson operator.
Operator load_operator(const Config& c, const fk_frame* f, Report& r) {
  fk_triple* tp = nullptr;
  ok(fk_frame_triple(f, &tp), "triple");
  const Triple t(tp);
  fk_operator* op = nullptr;
  if (c.fixture.empty()) {
    ok(fk_poisson_operator(t.get(), &op), "poisson operator");
    r.params["operator"] = "poisson";
    return Operator(op);
  }
  int n = 0;
  ok(fk_triple_dim(t.get(), &n), "dim");
  const size_t nn = static_cast<size_t>(n);
  std::vector<double> h(nn * nn);
  ok(fk_triple_inner_product(t.get(), h.data(), h.size()), "inner product");
  std::mt19937_64 rng(c.seed);
  const auto rr = random_vector(rng, n * n);
  std::vector<double> l = h;
  for (size_t i = 0; i < nn; ++i) {
    for (size_t j = 0; j < nn; ++j) {
      double s = 0.0;
      for (size_t m = 0; m < nn; ++m) s += rr[i + m * nn] * rr[j + m * nn];
      l[i + j * nn] += s;
    }
  }
  ok(fk_operator_create(t.get(), l.data(), n, &op), "operator");
  r.params["operator"] = "inner_product_plus_gram";
  r.params["seed"] = c.seed;
  return Operator(op);
}

void run_identities(const Config& c, Report& r) {
  Config cc = c;
  if (cc.fixture.empty() && cc.j_range.empty()) cc.fixture = "F1";
  const Frame f = load_frame(cc, r);
  const Operator op = load_operator(cc, f.get(), r);
  fk_identity_report id{};
  ok(fk_operator_identities(f.get(), op.get(), &id), "identities");
  r.results = {{"symmetry", id.symmetry},
               {"min_eigenvalue", id.min_eigenvalue},
               {"norm", id.norm},
               {"norm_bound", id.norm_bound},
               {"min_nonzero_sv", id.min_nonzero_sv},
               {"lower_bound", id.lower_bound},
               {"gram_forward", id.gram_forward},
               {"gram_reversed", id.gram_reversed},
               {"kernel_repr", id.kernel_repr},
               {"kernel_dual_repr", id.kernel_dual_repr},
               {"composition", id.composition},
               {"reconstruction", id.reconstruction},
               {"pseudo_inverse", id.pseudo_inverse}};
  const double scale = std::max(1.0, id.norm);
  r.check_le("symmetry", id.symmetry, 1e-8 * scale);
  r.check_le("non_negativity", -id.min_eigenvalue, 1e-8 * scale);
  r.check_le("norm_upper_bound", (id.norm - id.norm_bound) / scale, 1e-8);
  r.check_le("singular_value_lower_bound", (id.lower_bound - id.min_nonzero_sv) / scale, 1e-8);
  r.check_le("gram_forward", id.gram_forward, 1e-8);
  r.check_le("gram_reversed", id.gram_reversed, 1e-8);
  r.check_le("kernel_repr", id.kernel_repr, 1e-8);
  r.check_le("kernel_dual_repr", id.kernel_dual_repr, 1e-8);
  r.check_le("composition", id.composition, 1e-8);
  r.check_le("reconstruction", id.reconstruction, 1e-8);
  r.check_le("pseudo_inverse", id.pseudo_inverse, 1e-8);
}

// ---- output ----------------------------------------------------------------

json to_json(const Config& c, const Report& r) {
  json checks = json::array();
  for (const auto& k : r.checks) {
    checks.push_back({{"name", k.name}, {"passed", k.passed}, {"value", k.value}, {"tolerance", k.tolerance}});
  }
  return {{"command", c.command}, {"params", r.params}, {"results", r.results}, {"checks", checks}};
}

std::string csv_cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(const json& obj, const std::string& prefix, json& out) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      flatten(*it, key, out);
    } else if (!it->is_array()) {
      out[key] = *it;
    }
  }
}

// One header row then one row per result entry: the "rows" table when the
// command produced one, else the flattened scalar results.
std::string to_csv(const Report& r) {
  std::vector<json> rows;
  if (r.results.contains("rows")) {
    for (const auto& row : r.results["rows"]) {
      json flat = json::object();
      flatten(row, "", flat);
      rows.push_back(flat);
    }
  } else {
    json flat = json::object();
    flatten(r.results, "", flat);
    rows.push_back(flat);
  }
  std::vector<std::string> header;
  for (const auto& row : rows) {
    for (auto it = row.begin(); it != row.end(); ++it) {
      if (std::find(header.begin(), header.end(), it.key()) == header.end()) header.push_back(it.key());
    }
  }
  std::ostringstream os;
  for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < header.size(); ++i) {
      os << (i ? "," : "");
      if (row.contains(header[i])) os << csv_cell(row[header[i]]);
    }
    os << "\n";
  }
  return os.str();
}

int run(const Config& c, std::ostream& err) {
  static const std::map<std::string, void (*)(const Config&, Report&)> commands = {
      {"bounds", run_bounds},       {"dual", run_dual}, {"gramian", run_gramian},
      {"rates", run_rates},         {"norm-equiv", run_norm_equiv},
      {"bpx", run_bpx},             {"solve-poisson", run_solve_poisson},
      {"identities", run_identities}};
  Report r;
  commands.at(c.command)(c, r);

  const std::string payload = c.format == "csv" ? to_csv(r) : to_json(c, r).dump(2) + "\n";
  if (c.output.empty() || c.output == "-") {
    std::cout << payload;
  } else {
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw UsageError("cannot open output file " + c.output);
    f << payload;
  }
  for (const auto& k : r.checks) {
    if (!k.passed) err << "check failed: " << k.name << " value=" << k.value << " tolerance=" << k.tolerance << "\n";
  }
  return r.passed() ? kExitOk : kExitCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"framekit: frame, multiscale and Galerkin studies on a discrete Gelfand triple"};
  app.require_subcommand(1);
  Config c;

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"bounds", "frame bounds of a fixture or BPX frame"},
      {"dual", "canonical dual frame checks"},
      {"gramian", "cross-Gramian projector and minimal-norm checks"},
      {"rates", "Jackson and Bernstein rates of the hat hierarchy"},
      {"norm-equiv", "multiscale dual norm equivalence study"},
      {"bpx", "BPX frame bounds and conditioning over a range of J"},
      {"solve-poisson", "frame-Galerkin solve of the manufactured Poisson problem"},
      {"identities", "operator representation identities"},
  };
  std::vector<CLI::App*> apps;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--fixture", c.fixture, "fixture frame F1..F4");
    sub->add_option("--J", c.j_range, "finest level or range lo..hi");
    sub->add_option("--J-fine", c.j_fine, "fine mesh exponent (rates)");
    sub->add_option("--q", c.q, "smoothness index, 0 <= q < 1.5");
    sub->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
    sub->add_option("--tol", c.tol, "solver tolerance")->capture_default_str();
    sub->add_option("--samples", c.samples, "number of random samples");
    sub->add_option("--output,-o", c.output, "report path (default stdout)");
    sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    apps.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  for (CLI::App* sub : apps) {
    if (sub->parsed()) c.command = sub->get_name();
  }

  try {
    return run(c, std::cerr);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const LibraryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

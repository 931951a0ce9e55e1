#include "dhl/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "dhl/acceptance.hpp"
#include "dhl/error.hpp"
#include "dhl/io.hpp"
#include "dhl/propagation.hpp"
#include "dhl/remez.hpp"

namespace dhl::cli {

namespace {

using io::json;

struct Opts {
  std::string out, format = "json";
  long n = 8;
  std::uint64_t seed = 1;
  std::string boundary, random_mode = "sign", method = "kernel";
  std::string input, example, name = "chelkak34";
  std::string a1 = "0", a2 = "6", b1 = "0", b2 = "6", kind = "rational";
  std::string threshold = "1";
  long radius = -1;
  std::string radii = "1..20";
  long kmin = -1, kmax = -1;
  double c1 = 1.3;
  std::string poly, lo = "0", hi = "1", points, M, intervals, sup;
  long line = 0;
  std::string sigma = "auto";
  double gamma = 0.025;
  double C = 1.0, beta = 0.5, c = 4.0, c_fit = 4.0;
  long K = 20;
  std::string A = "7", bad_fraction = "1/1000";
  int count = 10;
  long max_side = 8;
  std::string level = "quick", only, inject_fault;
  bool timing = false;
};

struct Context {
  std::string command;
  CLI::App* sub = nullptr;
  Opts o;
  std::string config_path;
  std::ostream* out = nullptr;
};

unsigned default_precision() {
  if (const char* env = std::getenv("DHLAB_PRECISION")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    require(end && *end == '\0' && v >= 2 && v <= 100000, "DHLAB_PRECISION must be an integer in [2, 100000]");
    return static_cast<unsigned>(v);
  }
  return 256;
}

ScalarKind parse_kind(const std::string& text) {
  if (text == "float") return ScalarKind::floating(default_precision());
  if (text == "complex") return ScalarKind::complex(default_precision());
  return ScalarKind::parse(text);
}

json config_echo(const Context& ctx) {
  json cfg = json::object();
  for (const CLI::Option* opt : ctx.sub->get_options()) {
    std::string key = opt->get_single_name();
    if (key == "help") continue;
    if (opt->count() > 0)
      cfg[key] = opt->get_expected_min() == 0 ? std::string("true") : opt->as<std::string>();
    else if (!opt->get_default_str().empty())
      cfg[key] = opt->get_default_str();
  }
  if (!ctx.config_path.empty()) cfg["config"] = ctx.config_path;
  return cfg;
}

json header(const Context& ctx, const std::string& kind, bool seeded) {
  json h;
  h["tool"] = kToolName;
  h["version"] = kVersion;
  h["command"] = ctx.command;
  h["config"] = config_echo(ctx);
  h["seed"] = seeded ? json(ctx.o.seed) : json(nullptr);
  h["scalar_kind"] = kind;
  return h;
}

void emit(const Context& ctx, const std::string& payload) {
  if (ctx.o.out.empty())
    *ctx.out << payload;
  else
    io::write_file(ctx.o.out, payload);
}

void emit_json(const Context& ctx, json body, const std::string& kind, bool seeded) {
  body["header"] = header(ctx, kind, seeded);
  emit(ctx, io::dump(body));
}

void emit_csv(const Context& ctx, const std::string& csv, const std::string& kind, bool seeded) {
  json h = header(ctx, kind, seeded);
  h["config"] = h["config"].dump();
  emit(ctx, io::csv_header(h) + csv);
}

const json& unwrap(const json& j, const char* key) { return j.is_object() && j.contains(key) ? j.at(key) : j; }

std::vector<long> parse_radii(const std::string& text) {
  std::vector<long> out;
  auto dots = text.find("..");
  try {
    if (dots != std::string::npos) {
      long a = std::stol(text.substr(0, dots)), b = std::stol(text.substr(dots + 2));
      require(a <= b && b - a <= 100000, "radius range must satisfy a <= b");
      for (long r = a; r <= b; ++r) out.push_back(r);
    } else {
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(std::stol(item));
    }
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const precondition_error*>(&e)) throw;
    throw precondition_error("cannot parse radii '" + text + "'");
  }
  require(!out.empty(), "empty radius list");
  for (long r : out) require(r >= 0, "radii must be nonnegative");
  return out;
}

std::vector<Rational> parse_rationals(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

double parse_real(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw precondition_error(std::string(what) + " must be a finite number");
}

/// Grid from --input or --example; radius is the requested window.
GridFunction grid_source(const Context& ctx, long radius, bool& seeded) {
  const Opts& o = ctx.o;
  seeded = false;
  if (!o.input.empty()) return io::grid_from_json(unwrap(io::read_json_file(o.input), "grid"));
  const std::string name = o.example.empty() ? "chelkak34" : o.example;
  require(radius >= 1, "window radius must be at least 1");
  if (name == "random") {
    seeded = true;
    SplitMix64 rng(o.seed);
    return solve_kernel(random_boundary(radius, rng, o.random_mode));
  }
  if (name == "halfplane") seeded = true;
  auto ex = build_example({name, radius, o.seed});
  require(std::holds_alternative<GridFunction>(ex), "example '" + name + "' is not two-dimensional");
  return std::get<GridFunction>(std::move(ex));
}

json harmonic_json(const HarmonicReport& h) {
  json j{{"harmonic", h.harmonic}, {"checked", h.checked}, {"worst", h.worst}};
  if (h.where) j["where"] = {h.where->n, h.where->m};
  if (h.where_sloped) j["where"] = {half_str(h.where_sloped->s2), half_str(h.where_sloped->k2)};
  return j;
}

// ---- commands ----

int cmd_solve(Context& ctx) {
  const Opts& o = ctx.o;
  BoundaryData data;
  const bool seeded = o.boundary.empty();
  if (!seeded) {
    data = io::boundary_from_json(unwrap(io::read_json_file(o.boundary), "boundary"));
    require(ctx.sub->get_option("--n")->count() == 0 || data.N == o.n, "--n differs from the boundary file radius");
  } else {
    require(o.n >= 1 && o.n <= 512, "--n must be in [1, 512]");
    SplitMix64 rng(o.seed);
    data = random_boundary(o.n, rng, o.random_mode);
  }
  GridFunction u;
  json extra = json::object();
  if (o.method == "kernel") {
    u = solve_kernel(data);
  } else if (o.method == "table") {
    require(data.N <= 64, "table method supports N <= 64");
    u = solve_kernel_table(data, build_kernel_table(data.N));
  } else if (o.method == "exact") {
    u = solve_direct(data, DirectMode::ExactRational);
  } else if (o.method == "sor") {
    DirectReport rep;
    u = solve_direct(data, DirectMode::FloatIterative, {}, &rep);
    extra = {{"iterations", rep.iterations}, {"residual", rep.residual}};
  } else {
    throw precondition_error("--method must be kernel, table, exact or sor");
  }
  if (o.format == "csv") {
    emit_csv(ctx, io::grid_to_csv(u), u.kind().name(), seeded);
  } else {
    json body{{"method", o.method}, {"grid", io::grid_to_json(u)}, {"solver", extra}};
    if (seeded) body["boundary"] = io::boundary_to_json(data);
    emit_json(ctx, std::move(body), u.kind().name(), seeded);
  }
  return 0;
}

int cmd_kernel_dump(Context& ctx) {
  require(ctx.o.n >= 1 && ctx.o.n <= 32, "--n must be in [1, 32]");
  emit_csv(ctx, io::kernel_table_csv(build_kernel_table(ctx.o.n)), "float(53)", false);
  return 0;
}

int cmd_extend_lshape(Context& ctx) {
  const Opts& o = ctx.o;
  LShapeData d;
  const bool seeded = o.input.empty();
  if (!seeded) {
    d = io::lshape_from_json(unwrap(io::read_json_file(o.input), "lshape"));
  } else {
    SlopedRect R{parse_half(o.a1), parse_half(o.a2), parse_half(o.b1), parse_half(o.b2)};
    require(R.a_doubled() <= 200 && R.b_doubled() <= 200, "random rectangles are limited to sides <= 100");
    const ScalarKind kind = parse_kind(o.kind);
    require(kind.real(), "--kind must be real");
    SplitMix64 rng(o.seed);
    d = LShapeData::from_function(R, kind, [&](SlopedCell) { return Scalar::from_rational(rng.rational(-1, 1, 16), kind); });
  }
  GridFunction U = extend_lshape(d);
  LShapeBounds b = check_lshape_bounds(U, d);
  json bounds{{"global_ok", b.global_ok}, {"cellwise_ok", b.cellwise_ok}};
  if (b.witness) bounds["witness"] = {half_str(b.witness->s2), half_str(b.witness->k2)};
  json body{{"lshape", io::lshape_to_json(d)}, {"grid", io::grid_to_json(U)}, {"bounds", bounds},
            {"harmonic", harmonic_json(is_harmonic(U))}};
  emit_json(ctx, std::move(body), U.kind().name(), seeded);
  return 0;
}

int cmd_halfplane(Context& ctx) {
  const Opts& o = ctx.o;
  DiagonalSeed seed;
  const bool seeded = o.input.empty();
  if (!seeded) {
    seed = io::seed_from_json(unwrap(io::read_json_file(o.input), "seed"));
  } else {
    require(o.n >= 1 && o.n <= 128, "--n must be in [1, 128]");
    SplitMix64 rng(o.seed);
    seed = random_diagonal_seed(o.n, rng);
  }
  GridFunction u = halfplane_construct(seed);
  bool vanishes = true, nonzero = false;
  for (Cell c : u.cells()) {
    bool z = u.at(c).is_zero();
    if (c.n - c.m >= 0 && !z) vanishes = false;
    if (!z) nonzero = true;
  }
  if (o.format == "csv") {
    emit_csv(ctx, io::grid_to_csv(u), u.kind().name(), seeded);
    return 0;
  }
  json body{{"seed_values", io::seed_to_json(seed)}, {"grid", io::grid_to_json(u)}, {"harmonic", harmonic_json(is_harmonic(u))},
            {"vanishes_on_lower_half", vanishes}, {"nonzero", nonzero}};
  emit_json(ctx, std::move(body), u.kind().name(), seeded);
  return 0;
}

int cmd_example(Context& ctx) {
  const Opts& o = ctx.o;
  require(o.n >= 1 && o.n <= 500, "--n must be in [1, 500]");
  Example ex = build_example({o.name, o.n, o.seed});
  const bool seeded = o.name == "halfplane";
  if (auto* g3 = std::get_if<Grid3Function>(&ex)) {
    if (o.format == "csv") {
      emit_csv(ctx, io::grid3_to_csv(*g3), g3->kind().name(), seeded);
    } else {
      json vals = json::array();
      for (long z = g3->lo(); z < g3->lo() + g3->side(); ++z)
        for (long y = g3->lo(); y < g3->lo() + g3->side(); ++y)
          for (long x = g3->lo(); x < g3->lo() + g3->side(); ++x) vals.push_back(g3->at(x, y, z).str());
      json body{{"name", o.name}, {"cube", {{"lo", g3->lo()}, {"side", g3->side()}, {"values", vals}}}};
      emit_json(ctx, std::move(body), g3->kind().name(), seeded);
    }
    return 0;
  }
  const GridFunction& u = std::get<GridFunction>(ex);
  if (o.format == "csv") {
    emit_csv(ctx, io::grid_to_csv(u), u.kind().name(), seeded);
  } else {
    json body{{"name", o.name}, {"grid", io::grid_to_json(u)}};
    if (o.name == "chelkak34") body["z_minus_includes_zero"] = true;
    emit_json(ctx, std::move(body), u.kind().name(), seeded);
  }
  return 0;
}

int cmd_portion(Context& ctx) {
  const Opts& o = ctx.o;
  const long R = o.radius >= 0 ? o.radius : o.n;
  require(R >= 0 && R <= 2000, "--radius must be in [0, 2000]");
  Rational frac;
  std::string kind;
  bool seeded = false;
  if (o.input.empty() && (o.example.empty() || o.example == "chelkak34")) {
    kind = chelkak_kind().name();
    frac = portion_below(chelkak34_evaluator(R), parse_scalar(o.threshold, chelkak_kind()), Square{{0, 0}, R});
  } else {
    GridFunction u = grid_source(ctx, R, seeded);
    kind = u.kind().name();
    frac = portion_below(u, parse_scalar(o.threshold, u.kind()), Square{u.square().center, R});
  }
  json body{{"radius", R}, {"threshold", o.threshold}, {"fraction", frac.get_str()}, {"value", frac.get_d()},
            {"z_minus_includes_zero", true}};
  emit_json(ctx, std::move(body), kind, seeded);
  return 0;
}

GrowthProfile profile_source(Context& ctx, const std::vector<long>& radii, std::string& kind, bool& seeded) {
  const long rmax = *std::max_element(radii.begin(), radii.end());
  require(rmax <= 1000, "radii must be <= 1000");
  GridFunction u = grid_source(ctx, std::max(rmax, 1L), seeded);
  kind = u.kind().name();
  return growth_profile(u, radii);
}

int cmd_growth(Context& ctx) {
  const Opts& o = ctx.o;
  auto radii = parse_radii(o.radii);
  std::string kind;
  bool seeded = false;
  GrowthProfile p = profile_source(ctx, radii, kind, seeded);
  long kmin = o.kmin >= 0 ? o.kmin : *std::min_element(radii.begin(), radii.end());
  long kmax = o.kmax >= 0 ? o.kmax : *std::max_element(radii.begin(), radii.end());
  double slope = fitted_slope(p, kmin, kmax);
  std::ostringstream csv;
  csv << "K,M,log_M,fitted_slope\n";
  const json slope_text = slope;
  for (std::size_t i = 0; i < p.radii.size(); ++i)
    csv << p.radii[i] << ',' << p.maxima[i].str() << ',' << json(p.log_maxima[i]).dump() << ',' << slope_text.dump() << '\n';
  emit_csv(ctx, csv.str(), kind, seeded);
  return 0;
}

int cmd_doubling(Context& ctx) {
  const Opts& o = ctx.o;
  auto radii = parse_radii(o.radii);
  std::string kind;
  bool seeded = false;
  GrowthProfile p = profile_source(ctx, radii, kind, seeded);
  std::ostringstream csv;
  csv << "K,log_M,log_M2K,power,exponential,label\n";
  for (const auto& r : doubling_report(p, o.c1))
    csv << r.K << ',' << json(r.log_m).dump() << ',' << json(r.log_m2).dump() << ',' << (r.power ? 1 : 0) << ','
        << (r.exponential ? 1 : 0) << ',' << r.label << '\n';
  emit_csv(ctx, csv.str(), kind, seeded);
  return 0;
}

int cmd_remez_check(Context& ctx) {
  const Opts& o = ctx.o;
  require(!o.poly.empty(), "--poly is required");
  Polynomial p = Polynomial::parse(o.poly);
  Interval I{parse_rational(o.lo), parse_rational(o.hi)};
  PolyMax pm = poly_max(p, I);
  json body{{"poly", p.str()}, {"degree", p.degree()}, {"interval", {I.lo.get_str(), I.hi.get_str()}},
            {"poly_max", {{"certified_upper", pm.certified_upper.get_str()}, {"attained", pm.attained.get_str()},
                          {"argmax", pm.argmax.get_str()}, {"critical_points", pm.critical_points}}}};
  bool any = false;
  if (!o.points.empty()) {
    require(!o.M.empty(), "--M is required with --points");
    Rational bound = remez_bound_discrete(p, I, parse_rationals(o.points), parse_rational(o.M));
    body["discrete_bound"] = bound.get_str();
    body["discrete_dominates"] = bound >= pm.certified_upper;
    any = true;
  }
  if (!o.intervals.empty()) {
    require(!o.sup.empty(), "--sup is required with --intervals");
    std::vector<Interval> E;
    std::stringstream ss(o.intervals);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto colon = item.find(':');
      require(colon != std::string::npos, "intervals must look like lo:hi,lo:hi");
      E.push_back({parse_rational(item.substr(0, colon)), parse_rational(item.substr(colon + 1))});
    }
    Rational bound = remez_bound(p, I, E, parse_rational(o.sup));
    body["continuous_bound"] = bound.get_str();
    body["continuous_dominates"] = bound >= pm.certified_upper;
    any = true;
  }
  (void)any;
  emit_json(ctx, std::move(body), "rational", false);
  return 0;
}

json report_json(const PropagationReport& r) {
  return {{"N", r.N},
          {"line", r.m0},
          {"sigma", r.sigma},
          {"gamma", r.gamma},
          {"small_points", r.small_points},
          {"J", r.J},
          {"J0", r.J0},
          {"case", r.case_taken == 1 ? "taylor-dominates" : "sigma-dominates"},
          {"case_index", r.case_taken},
          {"split_lhs", r.split_lhs},
          {"degree", r.degree},
          {"L", r.L},
          {"max_f", r.max_f},
          {"C0", r.C0},
          {"truncation_points", r.trunc_points},
          {"truncation_target", r.trunc_target},
          {"target_half_width", r.target_half},
          {"remez_l", r.remez_l},
          {"remez_factor", r.remez_factor},
          {"certified_bound", r.certified_bound},
          {"true_max", r.true_max},
          {"dominates", r.dominates},
          {"within_proof_regime", r.within_proof_regime}};
}

int cmd_propagate(Context& ctx) {
  const Opts& o = ctx.o;
  BoundaryData data;
  const bool seeded = o.boundary.empty();
  if (!seeded) {
    data = io::boundary_from_json(unwrap(io::read_json_file(o.boundary), "boundary"));
  } else {
    require(o.n >= 2 && o.n <= 256, "--n must be in [2, 256]");
    SplitMix64 rng(o.seed);
    data = random_boundary(o.n, rng, o.random_mode);
  }
  require(o.sigma != "auto", "--sigma is required");
  const double sigma = parse_real(o.sigma, "--sigma");
  auto grid = solve_float(data, true);
  require(2 * std::labs(o.line) < data.N, "line must satisfy |m0| < N/2");
  auto pts = small_points_on_line(grid, data.N, o.line, sigma, o.gamma);
  PropagationReport r = propagate_smallness(data, o.line, sigma, o.gamma, pts);
  require(r.dominates, "post-hoc domination failed: bound " + json(r.certified_bound).dump() + " < true max " +
                           json(r.true_max).dump());
  emit_json(ctx, {{"report", report_json(r)}}, "float(53)", seeded);
  return 0;
}

int cmd_three_circle(Context& ctx) {
  const Opts& o = ctx.o;
  const long N = o.radius >= 0 ? o.radius : o.n;
  bool seeded = false;
  GridFunction u = grid_source(ctx, N, seeded);
  Scalar sigma;
  if (o.sigma == "auto") {
    sigma = Scalar::zero(u.kind());
    const Cell c = u.square().center;
    for (long m = c.m - N / 4; m <= c.m + N / 4; ++m)
      for (long n = c.n - N / 4; n <= c.n + N / 4; ++n) {
        Scalar a = abs(u.at(Cell{n, m}));
        if (compare(a, sigma) > 0) sigma = a;
      }
  } else {
    sigma = parse_scalar(o.sigma, u.kind());
  }
  std::optional<RemainderParams> params;
  if (ctx.sub->get_option("--beta")->count() > 0 || ctx.sub->get_option("--C")->count() > 0)
    params = RemainderParams{o.C, o.beta, o.c};
  ThreeCircleReport r = three_circle_report(u, N, sigma, params, o.c_fit);
  json body{{"N", r.N},
            {"sigma", sigma.str()},
            {"log_sigma", r.log_sigma},
            {"log_M", r.log_M},
            {"log_mid", r.log_mid},
            {"small_fraction", r.small_fraction.get_str()},
            {"c_fit", r.c_fit}};
  if (r.params) body["params"] = {{"C", r.params->C}, {"beta", r.params->beta}, {"c", r.params->c}};
  if (r.holds) body["holds"] = *r.holds;
  if (r.alpha_hat) body["alpha_hat"] = *r.alpha_hat;
  emit_json(ctx, {{"three_circle", body}}, u.kind().name(), seeded);
  return 0;
}

int cmd_goodrect_scan(Context& ctx) {
  const Opts& o = ctx.o;
  bool seeded = false;
  GridFunction U;
  if (!o.input.empty()) {
    U = io::grid_from_json(unwrap(io::read_json_file(o.input), "grid"));
    if (U.coords() == Coords::Standard) U = to_sloped(U);
  } else {
    U = to_sloped(grid_source(ctx, 2 * o.K + 1, seeded));
  }
  GoodnessConfig cfg{parse_rational(o.A), parse_rational(o.bad_fraction)};
  GoodSquareResult r = find_good_square(U, o.K, cfg);
  SquareFamily fam = maximal_good_squares(U, SlopedRect::centered(o.K / 10), cfg, SlopedRect::centered(o.K / 100));
  double log_max = -INFINITY;
  const SlopedRect QK = SlopedRect::centered(o.K);
  for (SlopedCell p : U.sloped_cells())
    if (QK.contains(p)) log_max = std::max(log_max, log_abs(U.at(p)));
  json res{{"K", r.K},
           {"A", cfg.A.get_str()},
           {"bad_fraction_threshold", cfg.bad_fraction.get_str()},
           {"found", r.found},
           {"cells_QK", r.cells_QK},
           {"bad_QK", r.bad_QK},
           {"hypothesis_ok", r.hypothesis_ok},
           {"family_size", r.family_size},
           {"bad_in_9R0", r.bad_in_9R0},
           {"dichotomy_ok", r.dichotomy_ok},
           {"three_good", r.three_good},
           {"vitali_selected", r.selected},
           {"vitali_selected_cells", r.selected_cells},
           {"log_max_QK", std::isfinite(log_max) ? json(log_max) : json(nullptr)},
           {"log_A_200K", 200.0 * static_cast<double>(o.K) * std::log(cfg.A.get_d())}};
  if (r.R0) res["R0"] = io::rect_to_json(*r.R0);
  if (r.square) res["square"] = io::rect_to_json(*r.square);
  emit_json(ctx, {{"scan", res}, {"maximal_family", io::family_to_json(fam)}}, U.kind().name(), seeded);
  return 0;
}

int cmd_vitali(Context& ctx) {
  const Opts& o = ctx.o;
  SquareFamily fam;
  const bool seeded = o.input.empty();
  if (!seeded) {
    fam = io::family_from_json(unwrap(io::read_json_file(o.input), "family"));
  } else {
    require(o.count >= 0 && o.count <= 10000, "--count must be in [0, 10000]");
    const long R = o.radius >= 0 ? o.radius : 10;
    SplitMix64 rng(o.seed);
    fam = random_square_family(rng, SlopedRect::centered(R), o.count, o.max_side);
  }
  SquareFamily sel = vitali_select(fam);
  VitaliCheck chk = verify_vitali(fam, sel);
  json check{{"disjoint", chk.disjoint}, {"covers", chk.covers}};
  if (chk.witness) check["witness"] = {half_str(chk.witness->s2), half_str(chk.witness->k2)};
  emit_json(ctx, {{"family", io::family_to_json(fam)}, {"selected", io::family_to_json(sel)}, {"check", check}}, "rational",
            seeded);
  return 0;
}

int cmd_verify(Context& ctx) {
  const Opts& o = ctx.o;
  acceptance::Options opt;
  require(o.level == "quick" || o.level == "full", "--level must be quick or full");
  opt.full = o.level == "full";
  if (!o.only.empty())
    for (long id : parse_radii(o.only)) {
      require(id >= 1 && id <= acceptance::kCriteria, "--only ids must be in [1, 16]");
      opt.only.insert(static_cast<int>(id));
    }
  if (!o.inject_fault.empty()) {
    require(o.inject_fault == "kernel-sign", "--inject-fault supports kernel-sign only");
    opt.kernel_sign_fault = true;
  }
  auto results = acceptance::run_acceptance(opt);
  std::string text;
  int failed = 0;
  for (const auto& r : results) {
    text += acceptance::format_line(r, o.timing) + "\n";
    if (!r.pass) ++failed;
  }
  text += std::to_string(results.size() - static_cast<std::size_t>(failed)) + "/" + std::to_string(results.size()) + " passed\n";
  emit(ctx, text);
  return failed == 0 ? 0 : 1;
}

struct Command {
  const char* name;
  const char* help;
  std::function<void(CLI::App*, Opts&)> setup;
  std::function<int(Context&)> run;
};

void add_out(CLI::App* s, Opts& o) { s->add_option("--out", o.out, "output file (default: stdout)"); }
void add_seed(CLI::App* s, Opts& o) { s->add_option("--seed", o.seed, "RNG seed")->capture_default_str(); }
void add_source(CLI::App* s, Opts& o) {
  s->add_option("--input", o.input, "grid JSON file");
  s->add_option("--example", o.example, "chelkak34, eigen2d, halfplane or random (Dirichlet solve of random data)");
  s->add_option("--mode", o.random_mode, "random boundary mode: sign or rational")->capture_default_str();
  add_seed(s, o);
}

std::vector<Command> commands() {
  return {
      {"solve", "Dirichlet solve on Q_N",
       [](CLI::App* s, Opts& o) {
         s->add_option("--n", o.n, "radius N")->capture_default_str();
         s->add_option("--boundary", o.boundary, "boundary JSON (default: random data)");
         s->add_option("--mode", o.random_mode, "random data: sign or rational")->capture_default_str();
         s->add_option("--method", o.method, "kernel, table, exact or sor")->capture_default_str();
         s->add_option("--format", o.format, "json or csv")->capture_default_str();
         add_seed(s, o);
         add_out(s, o);
       },
       cmd_solve},
      {"kernel-dump", "Poisson kernel table as CSV",
       [](CLI::App* s, Opts& o) {
         s->add_option("--n", o.n, "radius N")->capture_default_str();
         add_out(s, o);
       },
       cmd_kernel_dump},
      {"extend-lshape", "extension from an L-shaped seed",
       [](CLI::App* s, Opts& o) {
         s->add_option("--input", o.input, "L-shape JSON (default: random values)");
         s->add_option("--a1", o.a1)->capture_default_str();
         s->add_option("--a2", o.a2)->capture_default_str();
         s->add_option("--b1", o.b1)->capture_default_str();
         s->add_option("--b2", o.b2)->capture_default_str();
         s->add_option("--kind", o.kind, "rational or float[(bits)]")->capture_default_str();
         add_seed(s, o);
         add_out(s, o);
       },
       cmd_extend_lshape},
      {"halfplane", "function vanishing on the lower half-plane",
       [](CLI::App* s, Opts& o) {
         s->add_option("--n", o.n, "window radius")->capture_default_str();
         s->add_option("--input", o.input, "diagonal seed JSON (default: random)");
         s->add_option("--format", o.format, "json or csv")->capture_default_str();
         add_seed(s, o);
         add_out(s, o);
       },
       cmd_halfplane},
      {"example", "build a gallery function",
       [](CLI::App* s, Opts& o) {
         s->add_option("--name", o.name, "chelkak34, eigen2d, lift3d or halfplane")->capture_default_str();
         s->add_option("--n", o.n, "window radius")->capture_default_str();
         s->add_option("--format", o.format, "json or csv")->capture_default_str();
         add_seed(s, o);
         add_out(s, o);
       },
       cmd_example},
      {"portion", "exact portion of a square where |u| <= threshold",
       [](CLI::App* s, Opts& o) {
         add_source(s, o);
         s->add_option("--n", o.n, "window radius for generated sources")->capture_default_str();
         s->add_option("--radius", o.radius, "square radius (default --n)");
         s->add_option("--threshold", o.threshold)->capture_default_str();
         add_out(s, o);
       },
       cmd_portion},
      {"growth", "M(K) over radii with a fitted log slope",
       [](CLI::App* s, Opts& o) {
         add_source(s, o);
         s->add_option("--radii", o.radii, "a..b or a,b,c")->capture_default_str();
         s->add_option("--kmin", o.kmin, "fit range start");
         s->add_option("--kmax", o.kmax, "fit range end");
         add_out(s, o);
       },
       cmd_growth},
      {"doubling", "doubling dichotomy per K",
       [](CLI::App* s, Opts& o) {
         add_source(s, o);
         s->add_option("--radii", o.radii, "a..b or a,b,c")->capture_default_str();
         s->add_option("--c1", o.c1)->capture_default_str();
         add_out(s, o);
       },
       cmd_doubling},
      {"remez-check", "certified max and Remez bounds of a polynomial",
       [](CLI::App* s, Opts& o) {
         s->add_option("--poly", o.poly, "coefficients, constant term first");
         s->add_option("--lo", o.lo)->capture_default_str();
         s->add_option("--hi", o.hi)->capture_default_str();
         s->add_option("--points", o.points, "integer points with |p| <= M");
         s->add_option("--M", o.M);
         s->add_option("--intervals", o.intervals, "E as lo:hi,lo:hi");
         s->add_option("--sup", o.sup, "sup of |p| over E");
         add_out(s, o);
       },
       cmd_remez_check},
      {"propagate", "propagation of smallness along one line",
       [](CLI::App* s, Opts& o) {
         s->add_option("--n", o.n, "radius N")->capture_default_str();
         s->add_option("--line", o.line, "line m0")->capture_default_str();
         s->add_option("--sigma", o.sigma, "smallness level");
         s->add_option("--gamma", o.gamma, "small segment is |n| <= gamma N")->capture_default_str();
         s->add_option("--boundary", o.boundary, "boundary JSON (default: random data)");
         s->add_option("--mode", o.random_mode, "random data: sign or rational")->capture_default_str();
         add_seed(s, o);
         add_out(s, o);
       },
       cmd_propagate},
      {"three-circle", "three-square check or fit",
       [](CLI::App* s, Opts& o) {
         add_source(s, o);
         s->add_option("--n", o.n, "window radius for generated sources")->capture_default_str();
         s->add_option("--radius", o.radius, "N of the report (default --n)");
         s->add_option("--sigma", o.sigma, "smallness level or auto")->capture_default_str();
         s->add_option("--C", o.C);
         s->add_option("--beta", o.beta);
         s->add_option("--c", o.c);
         s->add_option("--c-fit", o.c_fit)->capture_default_str();
         add_out(s, o);
       },
       cmd_three_circle},
      {"goodrect-scan", "maximal good squares and the good-square search",
       [](CLI::App* s, Opts& o) {
         add_source(s, o);
         s->add_option("--K", o.K)->capture_default_str();
         s->add_option("--A", o.A)->capture_default_str();
         s->add_option("--bad-fraction", o.bad_fraction)->capture_default_str();
         add_out(s, o);
       },
       cmd_goodrect_scan},
      {"vitali", "greedy disjoint selection with 3x cover check",
       [](CLI::App* s, Opts& o) {
         s->add_option("--input", o.input, "family JSON (default: random)");
         s->add_option("--count", o.count)->capture_default_str();
         s->add_option("--max-side", o.max_side, "doubled side bound")->capture_default_str();
         s->add_option("--radius", o.radius, "ambient Q radius (default 10)");
         add_seed(s, o);
         add_out(s, o);
       },
       cmd_vitali},
      {"verify", "run the acceptance battery",
       [](CLI::App* s, Opts& o) {
         s->add_option("--level", o.level, "quick or full")->capture_default_str();
         s->add_option("--only", o.only, "criterion ids, a..b or a,b");
         s->add_option("--inject-fault", o.inject_fault, "kernel-sign");
         s->add_flag("--timing", o.timing, "append runtimes");
         add_out(s, o);
       },
       cmd_verify},
  };
}

/// JSON config object -> "--key=value" tokens.
std::vector<std::string> config_args(const std::string& path) {
  json j = io::read_json_file(path);
  if (!j.is_object()) throw io_error("config file must hold a JSON object");
  std::vector<std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = *it;
    const std::string key = "--" + it.key();
    if (v.is_boolean()) {
      if (v.get<bool>()) out.push_back(key);
    } else if (v.is_string()) {
      out.push_back(key + "=" + v.get<std::string>());
    } else if (v.is_array()) {
      std::string joined;
      for (const auto& e : v) joined += (joined.empty() ? "" : ",") + (e.is_string() ? e.get<std::string>() : e.dump());
      out.push_back(key + "=" + joined);
    } else if (v.is_number()) {
      out.push_back(key + "=" + v.dump());
    } else {
      throw io_error("config value for '" + it.key() + "' must be a string, number, boolean or array");
    }
  }
  return out;
}

void report(std::ostream& err, const char* kind, const std::string& reason) {
  err << json{{"error", kind}, {"reason", reason}}.dump() << "\n";
}

}  // namespace

std::vector<std::string> command_names() {
  std::vector<std::string> out;
  for (const auto& c : commands()) out.push_back(c.name);
  return out;
}

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  Context ctx;
  ctx.out = &out;
  try {
    std::vector<std::string> args;
    for (std::size_t i = 0; i < args_in.size(); ++i) {
      const std::string& a = args_in[i];
      if (a == "--config") {
        require(i + 1 < args_in.size(), "--config needs a file");
        ctx.config_path = args_in[++i];
      } else if (a.rfind("--config=", 0) == 0) {
        ctx.config_path = a.substr(9);
      } else {
        args.push_back(a);
      }
    }
    if (!ctx.config_path.empty()) {
      auto extra = config_args(ctx.config_path);
      auto pos = std::find_if(args.begin(), args.end(), [](const std::string& a) { return a.rfind("-", 0) != 0; });
      require(pos != args.end(), "--config needs a subcommand");
      args.insert(pos + 1, extra.begin(), extra.end());
    }

    CLI::App app{"Discrete harmonic function laboratory", kToolName};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    auto cmds = commands();
    std::map<CLI::App*, const Command*> by_app;
    for (const auto& c : cmds) {
      CLI::App* s = app.add_subcommand(c.name, c.help);
      s->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
      c.setup(s, ctx.o);
      by_app[s] = &c;
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
      app.parse(rev);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::CallForVersion&) {
      out << kVersion << "\n";
      return 0;
    } catch (const CLI::ParseError& e) {
      report(err, "usage", e.what());
      return 1;
    }
    for (auto& [s, c] : by_app)
      if (s->parsed()) {
        ctx.sub = s;
        ctx.command = c->name;
        return c->run(ctx);
      }
    report(err, "usage", "no subcommand");
    return 1;
  } catch (const precondition_error& e) {
    report(err, "precondition", e.what());
    return 1;
  } catch (const io_error& e) {
    report(err, "io", e.what());
    return 2;
  } catch (const std::exception& e) {
    report(err, "precondition", e.what());
    return 1;
  }
}

}  // namespace dhl::cli

#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "cli/json_io.hpp"

namespace lks::cli {

namespace {

constexpr double kPi = std::numbers::pi;

struct Config {
  std::optional<std::string> input;
  std::optional<std::string> inline_json;
  std::optional<std::string> out;
  std::string frame = "KS3";
  std::string gauge = "sqrt8S";
  std::optional<double> tol;
  std::optional<double> mu;
  bool deg = false;

  std::string to = "lks";

  // lk
  std::optional<double> L, G, mu_p, a_p;
  std::string grid = "181x121";
  unsigned threads = 0;
  double lambda0 = 0.1;
  double Lambda0 = 0.0;
  double tau = 0.0;
  std::optional<double> stride;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;

  // fibre
  std::optional<double> phi;
  std::size_t track_samples = 360;
  std::optional<std::string> tracks;
};

[[noreturn]] void bad(const std::string& msg) { fail(ErrorKind::InvalidArgument, msg); }

KSFrame frame_of(const Config& c) {
  if (c.frame == "KS3") return KSFrame::ks3();
  if (c.frame == "KS1") return KSFrame::ks1();
  bad("unknown frame '" + c.frame + "' (KS1 or KS3)");
}

double angle_in(const Config& c, double v) { return c.deg ? v * kPi / 180.0 : v; }

std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<Json> read_input(const Config& c, std::istream& in, bool required) {
  if (c.inline_json) return parse_json(*c.inline_json);
  if (c.input) {
    if (*c.input == "-") return parse_json(read_all(in));
    std::ifstream f(*c.input, std::ios::binary);
    if (!f) bad("cannot read input file " + *c.input);
    return parse_json(read_all(f));
  }
  if (!required) return std::nullopt;
  return parse_json(read_all(in));
}

// An input state in one of the four charts.
struct StateInput {
  std::string chart;
  double mu = 1.0;
  std::optional<KeplerElements> elements;
  std::optional<CartesianPhaseExt> cartesian;
  std::optional<KSPhase> ks;
  std::optional<LKSState> lks;
};

StateInput parse_state(const Json& j, const Config& c) {
  require_keys(j, {"mu", "elements", "cartesian", "ks", "lks"}, "input");
  StateInput s;
  s.mu = c.mu ? *c.mu : get_number_or(j, "mu", 1.0, "input");
  if (!(s.mu > 0.0)) bad("mu must be positive");
  int charts = 0;
  for (const char* k : {"elements", "cartesian", "ks", "lks"}) charts += j.contains(k);
  if (charts != 1) bad("input needs exactly one of elements, cartesian, ks, lks");

  if (j.contains("elements")) {
    const Json& e = j["elements"];
    const std::string w = "elements";
    require_keys(e, {"a", "e", "I", "arg_pericentre", "node", "true_anomaly", "t"}, w);
    s.chart = "elements";
    s.elements = KeplerElements{get_number(e, "a", w),
                                get_number(e, "e", w),
                                angle_in(c, get_number(e, "I", w)),
                                angle_in(c, get_number(e, "arg_pericentre", w)),
                                angle_in(c, get_number(e, "node", w)),
                                angle_in(c, get_number(e, "true_anomaly", w))};
    const auto cs = elements_to_cartesian(*s.elements, s.mu);
    s.cartesian = CartesianPhaseExt{get_number_or(e, "t", 0.0, w), cs.x, s.mu / (2.0 * s.elements->a), cs.X};
  } else if (j.contains("cartesian")) {
    const Json& e = j["cartesian"];
    const std::string w = "cartesian";
    require_keys(e, {"x", "X", "x_star", "X_star"}, w);
    s.chart = "cartesian";
    CartesianPhaseExt p{get_number_or(e, "x_star", 0.0, w), get_vec3(e, "x", w), 0.0, get_vec3(e, "X", w)};
    p.X_star = e.contains("X_star") ? get_number(e, "X_star", w) : balancing_energy(p, s.mu, std::nullopt);
    s.cartesian = p;
  } else if (j.contains("ks")) {
    const Json& e = j["ks"];
    const std::string w = "ks";
    require_keys(e, {"v", "V", "v_star", "V_star"}, w);
    s.chart = "ks";
    s.ks = KSPhase{get_number_or(e, "v_star", 0.0, w), get_quaternion(e, "v", w), get_number(e, "V_star", w),
                   get_quaternion(e, "V", w)};
  } else {
    const Json& e = j["lks"];
    const std::string w = "lks";
    require_keys(e, {"s", "l", "lambda", "g", "gamma", "S", "L", "Lambda", "G", "Gamma"}, w);
    s.chart = "lks";
    LKSState st;
    st.s = get_number_or(e, "s", 0.0, w);
    st.l = angle_in(c, get_number_or(e, "l", 0.0, w));
    st.lambda = angle_in(c, get_number_or(e, "lambda", 0.0, w));
    st.g = angle_in(c, get_number_or(e, "g", 0.0, w));
    st.gamma = angle_in(c, get_number_or(e, "gamma", 0.0, w));
    st.L = get_number(e, "L", w);
    st.S = get_number_or(e, "S", 2.0 * s.mu * s.mu / (st.L * st.L), w);
    st.Lambda = get_number(e, "Lambda", w);
    st.G = get_number(e, "G", w);
    st.Gamma = get_number_or(e, "Gamma", 0.0, w);
    if (!(st.L > 0.0)) bad("L must be positive");
    s.lks = st;
  }
  return s;
}

double manifold_tol(const Config& c) { return c.tol ? *c.tol : kManifoldTolerance; }

CartesianPhaseExt cartesian_of(const StateInput& s, const KSFrame& frame, const GaugeAlpha& gauge, const Config& c) {
  if (s.cartesian) return *s.cartesian;
  if (s.ks) return project_ks(*s.ks, frame, gauge, manifold_tol(c));
  return lks_to_cartesian(*s.lks);
}

void require_ks3(const Config& c) {
  if (c.frame != "KS3") bad("LKS variables are defined on the KS3 chart only");
}

Json header(const Config& c, double mu) {
  Json j;
  j["frame"] = c.frame;
  j["gauge"] = c.gauge;
  j["mu"] = mu;
  return j;
}

int cmd_transform(const Config& c, std::istream& in, std::ostream& out) {
  const StateInput s = parse_state(*read_input(c, in, true), c);
  const KSFrame frame = frame_of(c);
  const GaugeAlpha gauge = GaugeAlpha::from_name(c.gauge, s.mu);
  if (s.lks) require_ks3(c);

  Json result = header(c, s.mu);
  result["from"] = s.chart;
  result["to"] = c.to;
  std::optional<KSPhase> ks = s.ks;
  std::optional<LKSState> lks = s.lks;
  if (c.to == "elements") {
    const CartesianPhaseExt p = cartesian_of(s, frame, gauge, c);
    result["state"] = to_json(cartesian_to_elements(p.x, p.X, s.mu));
  } else if (c.to == "cartesian") {
    result["state"] = to_json(cartesian_of(s, frame, gauge, c));
  } else if (c.to == "ks") {
    if (!ks) ks = s.lks ? lks_to_ks(*s.lks, gauge) : lift_cartesian(cartesian_of(s, frame, gauge, c), frame, gauge);
    result["state"] = to_json(*ks);
  } else if (c.to == "lks") {
    require_ks3(c);
    if (!lks) lks = s.ks ? ks_to_lks(*s.ks, gauge) : cartesian_to_lks(cartesian_of(s, frame, gauge, c), gauge);
    result["state"] = to_json(*lks);
  } else {
    bad("unknown target chart '" + c.to + "' (elements, cartesian, ks, lks)");
  }

  if (!ks) ks = lks ? lks_to_ks(*lks, gauge) : lift_cartesian(cartesian_of(s, frame, gauge, c), frame, gauge);
  Json res;
  res["J"] = bilinear_J(ks->v, ks->V, frame);
  if (lks) {
    res["Gamma"] = lks->Gamma;
    res["M0"] = hamiltonian_M0(*lks, gauge, s.mu);
  } else {
    res["K0"] = hamiltonian_K0(*ks, frame, gauge, s.mu);
  }
  result["residuals"] = res;
  write_output(dump(result), c.out, out);
  return 0;
}

// Actions and lambda straight from the Cartesian vectors, so that degenerate orbits still classify.
LKSState actions_from_cartesian(const CartesianPhaseExt& p, double mu) {
  const double r = norm(p.x);
  if (!(r > 0.0)) fail(ErrorKind::ZeroRadius, "position is at the origin");
  const double energy = dot(p.X, p.X) / 2.0 - mu / r;
  if (!(energy < 0.0)) bad("classification needs an elliptic state");
  const double a = -mu / (2.0 * energy);
  const double Lo = std::sqrt(mu * a);
  const Vec3 h = cross(p.x, p.X);
  const Vec3 J = Lo * (cross(p.X, h) / mu - p.x / r);
  LKSState s;
  s.L = 2.0 * Lo;
  s.G = 2.0 * h.z;
  s.Lambda = 2.0 * J.z;
  s.S = mu / (2.0 * a);
  const Vec3 M = (J + h) / 2.0, N = (J - h) / 2.0;
  try {
    s.lambda = lambda_from_projections({M, N, {M.x, M.y, 0.0}, {N.x, N.y, 0.0}});
  } catch (const Error&) {
    s.lambda = 0.0;  // the classification does not depend on lambda here
  }
  return s;
}

int cmd_classify(const Config& c, std::istream& in, std::ostream& out) {
  const StateInput s = parse_state(*read_input(c, in, true), c);
  const KSFrame frame = frame_of(c);
  const GaugeAlpha gauge = GaugeAlpha::from_name(c.gauge, s.mu);
  const LKSState st = s.lks ? *s.lks : actions_from_cartesian(cartesian_of(s, frame, gauge, c), s.mu);
  const OrbitClass oc = classify(st, c.tol ? *c.tol : kClassifyTolerance);
  Json result;
  result["class"] = to_string(oc.kind);
  result["undetermined"] = oc.undetermined;
  if (oc.edge) {
    Json e;
    e["case"] = oc.edge->cases;
    e["surviving_combination"] = oc.edge->surviving;
    result["edge"] = e;
  } else {
    result["edge"] = nullptr;
  }
  Json a;
  a["L"] = st.L;
  a["G"] = st.G;
  a["Lambda"] = st.Lambda;
  a["lambda"] = st.lambda;
  result["actions"] = a;
  write_output(dump(result), c.out, out);
  return 0;
}

LKParams lk_params(const Config& c, std::istream& in) {
  double L = 1.0, G = 0.0, mu = 1.0, mu_p = 1.0, a_p = 20.0;
  if (const auto j = read_input(c, in, false)) {
    require_keys(*j, {"L", "G", "mu", "mu_p", "a_p"}, "LK parameters");
    L = get_number_or(*j, "L", L, "LK parameters");
    G = get_number_or(*j, "G", G, "LK parameters");
    mu = get_number_or(*j, "mu", mu, "LK parameters");
    mu_p = get_number_or(*j, "mu_p", mu_p, "LK parameters");
    a_p = get_number_or(*j, "a_p", a_p, "LK parameters");
  }
  if (c.L) L = *c.L;
  if (c.G) G = *c.G;
  if (c.mu) mu = *c.mu;
  if (c.mu_p) mu_p = *c.mu_p;
  if (c.a_p) a_p = *c.a_p;
  if (!(L > 0.0) || !(mu > 0.0) || !(mu_p > 0.0) || !(a_p > 0.0)) bad("L, mu, mu_p and a_p must be positive");
  if (std::abs(G) > L) fail(ErrorKind::NegativeRadicand, "|G| must not exceed L");
  LKParams p = LKParams::from_actions(L, G, mu, mu_p, a_p);
  p.validate();
  return p;
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& g) {
  unsigned long n = 0, m = 0;
  char tail = 0;
  if (std::sscanf(g.c_str(), "%lux%lu%c", &n, &m, &tail) != 2 || n < 2 || m < 2)
    bad("--grid expects NxM with N, M >= 2");
  return {n, m};
}

int cmd_lk_portrait(const Config& c, std::istream& in, std::ostream& out) {
  const LKParams p = lk_params(c, in);
  const auto [n, m] = parse_grid(c.grid);
  const PhasePortrait pp = phase_portrait(p, n, m, c.threads);
  write_output(pp.to_csv(), c.out, out);
  return 0;
}

int cmd_lk_equilibria(const Config& c, std::istream& in, std::ostream& out) {
  const LKParams p = lk_params(c, in);
  Json arr = Json::array();
  for (const Equilibrium& e : find_equilibria(p)) arr.push_back(to_json(e));
  write_output(dump(arr), c.out, out);
  return 0;
}

int cmd_lk_propagate(const Config& c, std::istream& in, std::ostream& out) {
  const LKParams p = lk_params(c, in);
  if (!(c.tau > 0.0)) bad("--tau must be positive");
  SecularOptions opt;
  if (c.tol) opt.rel_tol = *c.tol;
  opt.stride = c.stride;
  const Trajectory tr = propagate_secular({angle_in(c, c.lambda0), c.Lambda0}, p, c.tau, opt);
  write_output(tr.to_csv(), c.out, out);
  return 0;
}

int cmd_lk_validate(const Config& c, std::istream& in, std::ostream& out) {
  const LKParams base = lk_params(c, in);
  std::mt19937_64 gen(c.seed);
  auto uni = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); };

  const double avg_tol = 1e-10;
  double worst = 0.0;
  for (std::size_t i = 0; i < c.samples; ++i) {
    const double L = uni(0.5, 3.0);
    const double G = uni(-0.999, 0.999) * L;
    const double K = uni(-0.999, 0.999) * (L - std::abs(G));
    const double S = uni(0.05, 2.0), lam = uni(-kPi, kPi);
    const LKParams p = LKParams::from_actions(L, G, base.mu, base.mu_p, base.a_p);
    const double num = average_Q_numeric(S, L, K, G, lam, p);
    const double cls = average_Q_closed(S, L, K, G, lam, p);
    const double scale = p.mu_p * L * L * L / (64.0 * std::pow(p.a_p, 3) * S * S);
    worst = std::max(worst, std::abs(num - cls) / scale);
  }
  Json avg;
  avg["samples"] = c.samples;
  avg["max_relative_error"] = worst;
  avg["tolerance"] = avg_tol;
  avg["pass"] = worst < avg_tol;

  // Reference scenario: perturbation strength mu_p a^3 / a_p^3 = 1e-4, a fraction of a libration cycle.
  const double d = kPi / 180.0;
  const KeplerElements el{1.0, 0.3, 65 * d, 45 * d, 20 * d, 30 * d};
  const SecularComparison cmp = compare_secular_with_oracle(el, 1.0, 0.1, 10.0, 3000.0);
  const double drift_tol = 0.05;
  Json sec;
  sec["t_span"] = cmp.t_span;
  sec["tau_span"] = cmp.tau_span;
  sec["Lambda0"] = cmp.Lambda0;
  sec["Lambda_oracle"] = cmp.Lambda_oracle;
  sec["Lambda_secular"] = cmp.Lambda_secular;
  sec["lambda0"] = cmp.lambda0;
  sec["lambda_oracle"] = cmp.lambda_oracle;
  sec["lambda_secular"] = cmp.lambda_secular;
  sec["Lambda_mismatch_over_drift"] = cmp.Lambda_mismatch / std::abs(cmp.Lambda_drift);
  sec["N_relative_drift"] = cmp.N_relative_drift;
  sec["tolerance"] = drift_tol;
  const bool sec_pass = cmp.Lambda_mismatch < drift_tol * std::abs(cmp.Lambda_drift) && cmp.N_relative_drift < 1e-10;
  sec["pass"] = sec_pass;

  Json result;
  result["averaging"] = avg;
  result["secular_vs_oracle"] = sec;
  const bool pass = worst < avg_tol && sec_pass;
  result["pass"] = pass;
  write_output(dump(result), c.out, out);
  return pass ? 0 : exit_code(ErrorCategory::Numerical);
}

Json plane_json(const KSPhase& k, PlaneTag tag, double w) {
  const LissajousResult r = lissajous_inverse(plane_coords(k, tag), w, tag);
  if (const auto* p = std::get_if<LissajousPlane>(&r)) {
    Json j = to_json(*p, w);
    j["circular"] = false;
    return j;
  }
  const auto& cp = std::get<CircularLissajous>(r);
  Json j;
  j["plane"] = to_string(tag);
  j["circular"] = true;
  j["L"] = cp.L;
  j["G"] = cp.G;
  j["combination"] = cp.combination();
  j["longitude"] = cp.longitude;
  return j;
}

int cmd_fibre(const Config& c, std::istream& in, std::ostream& out) {
  const StateInput s = parse_state(*read_input(c, in, true), c);
  const KSFrame frame = frame_of(c);
  const GaugeAlpha gauge = GaugeAlpha::from_name(c.gauge, s.mu);
  const CartesianPhaseExt p = cartesian_of(s, frame, gauge, c);
  const double phi = c.phi ? angle_in(c, *c.phi) : kPi / 2.0;
  if (c.track_samples < 2) bad("--samples must be at least 2");

  const KSPhase base = s.ks ? *s.ks : lift_cartesian(p, frame, gauge);
  const Quaternion q = rotor_q(frame.c(), phi);
  KSPhase rotated = base;
  rotated.v = mul(base.v, q);
  rotated.V = mul(base.V, q);
  const double w = gauge.omega(base.V_star);

  Json result = header(c, s.mu);
  result["phi"] = phi;
  result["omega"] = w;
  Json variants = Json::array();
  std::vector<Json> planes;
  for (const auto& [name, k, angle] : {std::tuple{"base", base, 0.0}, std::tuple{"rotated", rotated, phi}}) {
    Json v;
    v["name"] = name;
    v["phi"] = angle;
    Json pl;
    pl["03"] = plane_json(k, PlaneTag::P03, w);
    pl["12"] = plane_json(k, PlaneTag::P12, w);
    planes.push_back(pl);
    v["planes"] = pl;
    variants.push_back(v);
  }
  result["variants"] = variants;
  if (planes[0]["03"].contains("g") && planes[0]["12"].contains("g") && planes[1]["03"].contains("g") &&
      planes[1]["12"].contains("g")) {
    const double d03 = planes[1]["03"]["g"].get<double>() - planes[0]["03"]["g"].get<double>();
    const double d12 = planes[1]["12"]["g"].get<double>() - planes[0]["12"]["g"].get<double>();
    Json sh;
    sh["g03"] = d03;
    sh["g12"] = d12;
    sh["sum"] = d03 + d12;
    result["shift"] = sh;
  }

  std::string csv;
  if (c.tracks) {
    csv = "variant,tau,v0,v1,v2,v3\n";
    const double period = 2.0 * kPi / w;
    char buf[160];
    for (const auto& [name, k] : {std::pair{"base", base}, std::pair{"rotated", rotated}}) {
      for (std::size_t i = 0; i < c.track_samples; ++i) {
        const double tau = period * double(i) / double(c.track_samples);
        const KSPhase kt = ks_oscillator_flow(k, tau, gauge, s.mu, frame, manifold_tol(c));
        std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%.17g,%.17g\n", name, tau, kt.v.s0, kt.v.v.x, kt.v.v.y,
                      kt.v.v.z);
        csv += buf;
      }
    }
  }
  const std::string text = dump(result);
  // everything is computed before either file is written
  if (c.tracks) write_output(csv, *c.tracks, out);
  write_output(text, c.out, out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Regularized Kepler transforms and Lidov-Kozai secular analysis", "lks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "lks 0.1.0");
  app.add_option("--input", c.input, "JSON input file ('-' for stdin; stdin is the default)");
  app.add_option("--json", c.inline_json, "inline JSON input");
  app.add_option("--out", c.out, "output file (written atomically; stdout by default)");
  app.add_option("--frame", c.frame, "KS frame")->check(CLI::IsMember({"KS1", "KS3"}));
  app.add_option("--gauge", c.gauge, "gauge preset")->check(CLI::IsMember({"const", "sqrt8S", "mu_over_S"}));
  app.add_option("--tol", c.tol, "tolerance (manifold check, classification or secular integration)");
  app.add_option("--mu", c.mu, "central gravitational parameter (overrides the input)");
  app.add_flag("--deg", c.deg, "input angles are in degrees");

  auto* transform = app.add_subcommand("transform", "convert a state between elements, cartesian, ks and lks");
  transform->add_option("--to", c.to, "target chart")->check(CLI::IsMember({"elements", "cartesian", "ks", "lks"}));
  auto* cls = app.add_subcommand("classify", "classify an orbit by its LKS actions");
  auto* fibre = app.add_subcommand("fibre", "Lissajous ellipses of an orbit and of its fibre-rotated copy");
  fibre->add_option("--phi", c.phi, "fibre rotation angle (default pi/2)");
  fibre->add_option("--samples", c.track_samples, "track samples per variant");
  fibre->add_option("--tracks", c.tracks, "CSV file for the quaternion tracks");

  auto* lk = app.add_subcommand("lk", "quadrupole Lidov-Kozai secular model");
  lk->require_subcommand(1);
  lk->add_option("--L", c.L, "LKS action L (default 1)");
  lk->add_option("--G", c.G, "LKS action G (default 0)");
  lk->add_option("--mu-p", c.mu_p, "perturber gravitational parameter (default 1)");
  lk->add_option("--a-p", c.a_p, "perturber orbit radius (default 20)");
  auto* portrait = lk->add_subcommand("portrait", "CSV grid of the secular Hamiltonian");
  portrait->add_option("--grid", c.grid, "lambda x Lambda grid size, NxM");
  portrait->add_option("--threads", c.threads, "worker threads (0 = hardware)");
  auto* equilibria = lk->add_subcommand("equilibria", "JSON list of equilibria with stability");
  auto* propagate = lk->add_subcommand("propagate", "CSV trajectory of the secular flow");
  propagate->add_option("--lambda", c.lambda0, "initial lambda");
  propagate->add_option("--Lambda", c.Lambda0, "initial Lambda");
  propagate->add_option("--tau", c.tau, "span in Sundman time")->required();
  propagate->add_option("--stride", c.stride, "sampling stride");
  auto* validate = lk->add_subcommand("validate", "averaging and secular-vs-direct integration checks");
  validate->add_option("--samples", c.samples, "random action sets for the averaging check");
  validate->add_option("--seed", c.seed, "random seed");
  for (auto* s : {transform, cls, fibre, lk, portrait, equilibria, propagate, validate}) s->fallthrough();

  std::vector<const char*> argv{"lks"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : exit_code(ErrorCategory::InvalidInput);
  }

  try {
    if (*transform) return cmd_transform(c, in, out);
    if (*cls) return cmd_classify(c, in, out);
    if (*fibre) return cmd_fibre(c, in, out);
    if (*portrait) return cmd_lk_portrait(c, in, out);
    if (*equilibria) return cmd_lk_equilibria(c, in, out);
    if (*propagate) return cmd_lk_propagate(c, in, out);
    if (*validate) return cmd_lk_validate(c, in, out);
  } catch (const Error& e) {
    err << dump(error_json(e));
    return exit_code(e.category());
  } catch (const std::exception& e) {
    err << dump(error_json(e));
    return exit_code(ErrorCategory::InvalidInput);
  }
  return exit_code(ErrorCategory::InvalidInput);
}

}  // namespace lks::cli

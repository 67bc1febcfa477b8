#include "bphz/roughsim/wong_zakai.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "bphz/coalgebra.hpp"
#include "bphz/errors.hpp"
#include "bphz/gaussian.hpp"
#include "bphz/model.hpp"
#include "bphz/roughsim/c_eps.hpp"
#include "bphz/roughsim/convolution.hpp"
#include "bphz/roughsim/noise.hpp"
#include "bphz/structure.hpp"
#include "bphz/symbols.hpp"

namespace bphz::roughsim {

TestFunction parse_test_function(const std::string& name) {
  if (name == "linear") return TestFunction::Linear;
  if (name == "quadratic") return TestFunction::Quadratic;
  if (name == "sine") return TestFunction::Sine;
  if (name == "constant") return TestFunction::Constant;
  throw ConfigError("field 'f': unknown function '" + name + "' (expected linear, quadratic, sine or constant)");
}

std::string test_function_name(TestFunction f) {
  switch (f) {
    case TestFunction::Linear:
      return "linear";
    case TestFunction::Quadratic:
      return "quadratic";
    case TestFunction::Sine:
      return "sine";
    case TestFunction::Constant:
      return "constant";
  }
  return "?";
}

double test_function_derivative(TestFunction f, int m, double x) {
  switch (f) {
    case TestFunction::Linear:
      return m == 0 ? x : (m == 1 ? 1.0 : 0.0);
    case TestFunction::Quadratic:
      return m == 0 ? x * x : (m == 1 ? 2.0 * x : (m == 2 ? 2.0 : 0.0));
    case TestFunction::Sine:
      switch (m % 4) {
        case 0:
          return std::sin(x);
        case 1:
          return std::cos(x);
        case 2:
          return -std::sin(x);
        default:
          return -std::cos(x);
      }
    case TestFunction::Constant:
      return m == 0 ? 1.0 : 0.0;
  }
  return 0.0;
}

CEpsMode parse_c_eps_mode(const std::string& name) {
  if (name == "grid") return CEpsMode::Grid;
  if (name == "quadrature") return CEpsMode::Quadrature;
  throw ConfigError("field 'c_eps_mode': expected grid or quadrature, got '" + name + "'");
}

std::string c_eps_mode_name(CEpsMode m) { return m == CEpsMode::Grid ? "grid" : "quadrature"; }

void SimConfig::validate() const {
  if (!(hurst > 0.0 && hurst < 0.5)) throw ConfigError("field 'H': must lie in (0, 1/2)");
  if (!(kappa > 0.0 && kappa < hurst)) throw ConfigError("field 'kappa': must lie in (0, H)");
  if (!(horizon > 0.0)) throw ConfigError("field 'T': must be positive");
  if (n < 16 || (n & (n - 1)) != 0) throw ConfigError("field 'N': must be a power of two >= 16");
  if (paths < 2) throw ConfigError("field 'P': need at least 2 paths");
  if (eps.empty()) throw ConfigError("field 'eps': empty ladder");
  for (double e : eps) {
    if (!(e >= 4.0 * dt() * (1.0 - 1e-12)))
      throw ConfigError("field 'eps': " + std::to_string(e) + " is below 4 grid steps (" + std::to_string(4 * dt()) + ")");
    if (!(2.0 * e <= horizon)) throw ConfigError("field 'eps': " + std::to_string(e) + " exceeds T/2");
  }
  for (double l : lambdas)
    if (!(l > 0.0 && l <= horizon / 2)) throw ConfigError("field 'lambda': values must lie in (0, T/2]");
  Mollifier check(mollifier);
}

SimConfig SimConfig::from_config(const KeyValueConfig& cfg) {
  SimConfig c;
  c.hurst = cfg.get_double("H", c.hurst);
  c.kappa = cfg.get_double("kappa", c.kappa);
  c.horizon = cfg.get_double("T", c.horizon);
  const auto n = cfg.get_int("N", static_cast<long long>(c.n));
  const auto p = cfg.get_int("P", static_cast<long long>(c.paths));
  const auto seed = cfg.get_int("seed", static_cast<long long>(c.seed));
  if (n <= 0) throw ConfigError("field 'N': must be positive");
  if (p <= 0) throw ConfigError("field 'P': must be positive");
  if (seed < 0) throw ConfigError("field 'seed': must be nonnegative");
  c.n = static_cast<std::size_t>(n);
  c.paths = static_cast<std::size_t>(p);
  c.seed = static_cast<std::uint64_t>(seed);
  if (cfg.has("eps")) c.eps = cfg.get_double_list("eps");
  if (cfg.has("lambda")) c.lambdas = cfg.get_double_list("lambda");
  if (cfg.has("f")) c.f = parse_test_function(cfg.get_string("f"));
  c.mollifier = cfg.get_string("mollifier", c.mollifier);
  if (cfg.has("c_eps_mode")) c.c_eps_mode = parse_c_eps_mode(cfg.get_string("c_eps_mode"));
  c.validate();
  return c;
}

KeyValueConfig SimConfig::to_config() const {
  auto num = [](double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << v;
    return os.str();
  };
  auto list = [&](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
    return s;
  };
  KeyValueConfig cfg;
  cfg.set("H", num(hurst));
  cfg.set("kappa", num(kappa));
  cfg.set("T", num(horizon));
  cfg.set("N", std::to_string(n));
  cfg.set("P", std::to_string(paths));
  cfg.set("seed", std::to_string(seed));
  cfg.set("eps", list(eps));
  cfg.set("lambda", list(lambdas));
  cfg.set("f", test_function_name(f));
  cfg.set("mollifier", mollifier);
  cfg.set("c_eps_mode", c_eps_mode_name(c_eps_mode));
  return cfg;
}

namespace {

double trapezoid(const std::vector<double>& v, std::size_t a, std::size_t b, double dt) {
  if (b <= a) return 0.0;
  double acc = 0.5 * (v[a] + v[b]);
  for (std::size_t k = a + 1; k < b; ++k) acc += v[k];
  return acc * dt;
}

double rms(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc / static_cast<double>(v.size()));
}

/// Per-eps data shared by all paths.
struct Level {
  double eps;
  MollifierWeights weights;
  std::vector<double> c_profile;  // C^eps(t_k), k = 0..N
  double c_stationary;
};

/// Renormalized expansions of Xi I(xi^)^m, m = 0..M, with c(D1,X2) free.
struct ModelRoute {
  std::vector<LinComb<Polynomial>> expansions;
  std::string variable;
};

ModelRoute build_model_route(const SimConfig& cfg, int truncation) {
  const auto spec = rough_vol_spec(from_double(cfg.hurst), from_double(cfg.kappa));
  TwistedAntipode antipode(spec);
  ModelRoute route;
  route.variable = SymbolicCovariance::symbol(GaussianVar::d(1), GaussianVar::x(2));
  for (int m = 0; m <= truncation; ++m)
    route.expansions.push_back(renormalized_expansion<Polynomial>(sym::xi_integ_xi_pow(1, 2, m), antipode, SymbolicCovariance{}));
  for (const auto& e : route.expansions)
    for (const auto& [k, t] : e)
      for (const auto& [mono, c] : t.coefficient.terms())
        for (const auto& [name, power] : mono)
          if (name != route.variable) throw DomainError("unexpected covariance " + name + " in the model route");
  return route;
}

}  // namespace

WZResult wz_experiment(const SimConfig& cfg) {
  cfg.validate();
  const double dt = cfg.dt();
  const std::size_t n = cfg.n;
  const KernelSpec kernel(cfg.hurst, cfg.horizon);
  const Mollifier rho(cfg.mollifier);
  const int truncation = rough_vol_truncation(from_double(cfg.hurst), from_double(cfg.kappa));
  const ModelRoute route = build_model_route(cfg, truncation);

  std::size_t pad = 0;
  std::vector<Level> levels;
  for (double e : cfg.eps) {
    Level lv{e, rho.weights(e, dt), {}, 0.0};
    pad = std::max(pad, static_cast<std::size_t>(lv.weights.half));
    levels.push_back(std::move(lv));
  }
  // Simulated cells: [0, T + pad dt); stored arrays carry `pad` zeros before 0.
  const std::size_t cells = n + pad;
  const std::size_t len = pad + cells + 1;
  const auto taps = rl_taps(kernel, dt, cells + 1);
  for (auto& lv : levels) {
    if (cfg.c_eps_mode == CEpsMode::Grid) {
      lv.c_profile = c_eps_grid_profile(lv.weights, taps, n);
      lv.c_stationary = c_eps_grid(lv.weights, taps);
    } else {
      lv.c_stationary = c_eps_stationary(lv.eps, kernel, rho).value;
      lv.c_profile.assign(n + 1, 0.0);
      for (std::size_t k = 0; k <= n; ++k) {
        const double t = static_cast<double>(k) * dt;
        lv.c_profile[k] = t >= lv.eps ? lv.c_stationary : c_eps_at(t, lv.eps, kernel, rho).value;
      }
    }
  }

  FftConvolver fbm(taps, 0, cells + 1);
  std::vector<std::unique_ptr<MollifyPlan>> plans;
  for (const auto& lv : levels) plans.push_back(std::make_unique<MollifyPlan>(lv.weights, len));

  WZResult result;
  result.seed = cfg.seed;
  result.truncation = truncation;
  const std::size_t paths = cfg.paths;
  result.records.resize(levels.size() * paths);

  const auto count = static_cast<long>(paths);
#pragma omp parallel for schedule(dynamic)
  for (long ip = 0; ip < count; ++ip) {
    const auto path = static_cast<std::size_t>(ip);
    const auto dw = brownian_increments(cfg.seed, path, cells, dt);
    const auto w_short = cumulative(dw);
    std::vector<double> x(dw);
    x.push_back(0.0);
    const auto wh_short = fbm.apply(x);
    std::vector<double> w(len, 0.0), wh(len, 0.0);
    for (std::size_t k = 0; k <= cells; ++k) {
      w[pad + k] = w_short[k];
      wh[pad + k] = wh_short[k];
    }
    double ito = 0.0;
    for (std::size_t k = 0; k < n; ++k) ito += test_function_derivative(cfg.f, 0, wh_short[k]) * dw[k];

    for (std::size_t l = 0; l < levels.size(); ++l) {
      const Level& lv = levels[l];
      const auto a = plans[l]->apply(w);
      const auto b = plans[l]->apply(wh);
      std::vector<double> drive(n + 1), counter(n + 1);
      for (std::size_t k = 0; k <= n; ++k) {
        const double xv = b.value[pad + k];
        drive[k] = test_function_derivative(cfg.f, 0, xv) * a.derivative[pad + k];
        counter[k] = lv.c_profile[k] * test_function_derivative(cfg.f, 1, xv);
      }
      WZRecord rec;
      rec.eps = lv.eps;
      rec.path = path;
      rec.ito = ito;
      rec.uncorrected = trapezoid(drive, 0, n, dt);
      rec.corrected = rec.uncorrected - trapezoid(counter, 0, n, dt);

      const auto block = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(lv.eps / dt)));
      double model = 0.0;
      for (std::size_t s = 0; s < n; s += block) {
        const std::size_t e = std::min(s + block, n);
        SamplePath sp;
        sp.dt = dt;
        sp.t0 = static_cast<double>(s) * dt;
        sp.xi.assign(2, std::vector<double>(e - s + 1));
        sp.xi_dot.assign(2, std::vector<double>(e - s + 1));
        for (std::size_t k = s; k <= e; ++k) {
          sp.xi[0][k - s] = a.value[pad + k];
          sp.xi_dot[0][k - s] = a.derivative[pad + k];
          sp.xi[1][k - s] = b.value[pad + k];
          sp.xi_dot[1][k - s] = b.derivative[pad + k];
        }
        double c_mean = 0.0;
        for (std::size_t k = s; k <= e; ++k) c_mean += lv.c_profile[k];
        c_mean /= static_cast<double>(e - s + 1);
        const std::map<std::string, double> subst{{route.variable, c_mean}};
        const double base = sp.xi[1][0];
        double factorial = 1.0;
        for (int m = 0; m <= truncation; ++m) {
          if (m > 0) factorial *= m;
          const double coeff = test_function_derivative(cfg.f, m, base) / factorial;
          if (coeff == 0.0) continue;
          const auto numeric = convert<double>(route.expansions[static_cast<std::size_t>(m)],
                                               [&](const Polynomial& p) { return p.evaluate(subst); });
          const auto values = eval_pi(0, numeric, sp).values;
          model += coeff * trapezoid(values, 0, e - s, dt);
        }
      }
      rec.model = model;
      result.records[l * paths + path] = rec;
    }
  }

  for (std::size_t l = 0; l < levels.size(); ++l) {
    std::vector<double> du(paths), dc(paths), dm(paths);
    for (std::size_t p = 0; p < paths; ++p) {
      const auto& r = result.records[l * paths + p];
      du[p] = r.uncorrected - r.ito;
      dc[p] = r.corrected - r.ito;
      dm[p] = r.model - r.ito;
    }
    result.summary.push_back({levels[l].eps, rms(du), rms(dc), rms(dm), levels[l].c_stationary});
  }
  return result;
}

}  // namespace bphz::roughsim

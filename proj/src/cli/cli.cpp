#include "bphz/cli/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <set>

#include "bphz/cli/manifest.hpp"
#include "bphz/coalgebra.hpp"
#include "bphz/errors.hpp"
#include "bphz/gaussian.hpp"
#include "bphz/model.hpp"
#include "bphz/roughsim/bound_probe.hpp"
#include "bphz/roughsim/c_eps.hpp"
#include "bphz/roughsim/csv.hpp"
#include "bphz/roughsim/wong_zakai.hpp"
#include "bphz/structure.hpp"
#include "bphz/symbol_text.hpp"

namespace bphz::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
namespace rs = roughsim;

constexpr int kReportSchema = 1;

/// Options shared by the symbol-level commands.
struct StructureOptions {
  int d = 0;
  std::string alpha;
  int truncation = StructureSpec::kDefaultTruncation;
  std::string hurst, kappa;
  bool ex = false;
};

int max_noise_index(std::string_view text) {
  int best = 0;
  for (std::size_t p = text.find("Xi_"); p != std::string_view::npos; p = text.find("Xi_", p + 3)) {
    int v = 0;
    for (std::size_t q = p + 3; q < text.size() && std::isdigit(static_cast<unsigned char>(text[q])); ++q)
      v = std::min(v * 10 + (text[q] - '0'), 1 << 20);
    best = std::max(best, v);
  }
  return best;
}

StructureSpec make_structure(const StructureOptions& o, std::string_view symbol_text) {
  if (!o.hurst.empty() || !o.kappa.empty()) {
    if (o.hurst.empty() || o.kappa.empty()) throw ConfigError("--H and --kappa must be given together");
    return rough_vol_spec(parse_rational(o.hurst), parse_rational(o.kappa));
  }
  const int d = o.d > 0 ? o.d : std::max(1, max_noise_index(symbol_text));
  std::vector<Rational> alpha;
  if (o.alpha.empty()) {
    alpha.assign(static_cast<std::size_t>(d), Rational(1, o.truncation + 2));
  } else {
    std::string item;
    std::string list = o.alpha;
    for (char& c : list)
      if (c == ',') c = ' ';
    std::istringstream in(list);
    while (in >> item) alpha.push_back(parse_rational(item));
    if (alpha.size() == 1) alpha.assign(static_cast<std::size_t>(d), alpha.front());
    if (alpha.size() != static_cast<std::size_t>(d))
      throw ConfigError("--alpha: expected 1 or " + std::to_string(d) + " values");
  }
  return StructureSpec(std::move(alpha), o.truncation);
}

void accumulate(PairComb<Rational>& into, const PairComb<Rational>& part, const Rational& c) {
  for (const auto& [k, t] : part) into.add(t.left, t.right, c * t.coefficient);
}

json report_json(const CheckReport& r, const json& params) {
  json j;
  j["schema"] = kReportSchema;
  j["version"] = version_tag();
  j["check"] = r.check;
  j["status"] = r.passed ? "pass" : "fail";
  j["message"] = r.passed ? "all identities hold" : "identity failed";
  j["identities_checked"] = r.identities_checked;
  j["params"] = params;
  j["witnesses"] = r.witnesses;
  j["skipped"] = r.skipped;
  j["notes"] = r.notes;
  return j;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw ConfigError("write failed for '" + path.string() + "'");
}

template <class Writer>
std::string render(Writer&& w) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  w(os);
  return os.str();
}

rs::SimConfig load_sim_config(const std::string& config_path, const std::string& manifest_path) {
  if (!config_path.empty() && !manifest_path.empty()) throw ConfigError("give either --config or --manifest");
  if (!manifest_path.empty()) return rs::SimConfig::from_config(RunManifest::load(manifest_path).config);
  if (config_path.empty()) throw ConfigError("--config is required");
  return rs::SimConfig::from_config(KeyValueConfig::load(config_path));
}

void emit_outputs(const fs::path& dir, const std::string& command, const rs::SimConfig& cfg,
                  const std::vector<std::pair<std::string, std::string>>& files, std::ostream& out) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "'");
  RunManifest m;
  m.command = command;
  m.config = cfg.to_config();
  m.seed = cfg.seed;
  m.version = version_tag();
  for (const auto& [name, text] : files) {
    write_file(dir / name, text);
    m.outputs.emplace_back(name, sha256_hex(text));
    out << "wrote " << (dir / name).string() << "\n";
  }
  write_file(dir / "manifest.json", m.to_json());
  out << "wrote " << (dir / "manifest.json").string() << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Regularity-structure renormalization toolkit"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Cap on worker threads (0: runtime default)")->check(CLI::NonNegativeNumber);

  auto* symbolic = app.add_subcommand("symbolic", "Symbol-level algebra and identity checks");
  symbolic->require_subcommand(1);
  StructureOptions so;
  auto add_structure = [&](CLI::App* sub) {
    sub->add_option("--d", so.d, "Number of noises (default: largest index in the symbol)");
    sub->add_option("--alpha", so.alpha, "Noise regularities alpha_i, comma separated (default 1/(truncation+2))");
    sub->add_option("--truncation", so.truncation, "Largest power of I(Xi_j)")->check(CLI::Range(1, 64));
    sub->add_option("--H", so.hurst, "Use the rough-volatility structure with this H");
    sub->add_option("--kappa", so.kappa, "kappa for the rough-volatility structure");
  };
  std::string symbol;
  auto* dm = symbolic->add_subcommand("delta-minus", "Print Delta_minus of a symbol");
  dm->add_option("symbol", symbol)->required();
  dm->add_flag("--ex", so.ex, "Extraction coproduct (negative-degree left legs)");
  add_structure(dm);
  auto* dp = symbolic->add_subcommand("delta-plus", "Print Delta_plus of a symbol");
  dp->add_option("symbol", symbol)->required();
  dp->add_flag("--ex", so.ex, "Project the right leg onto the positive sector");
  add_structure(dp);
  auto* an = symbolic->add_subcommand("antipode", "Print the twisted antipode of a symbol");
  an->add_option("symbol", symbol)->required();
  add_structure(an);
  auto* ga = symbolic->add_subcommand("g-antipode", "Evaluate g_minus of the twisted antipode");
  std::string cov_path;
  ga->add_option("symbol", symbol)->required();
  ga->add_option("--cov", cov_path, "Covariance matrix file")->required();
  add_structure(ga);
  auto* cb = symbolic->add_subcommand("check-bphz", "Check the renormalized model formula");
  int n_max = 6;
  int d_check = 2;
  std::string report_path;
  cb->add_option("--d", d_check, "Number of noises")->check(CLI::Range(1, 8));
  cb->add_option("--nmax", n_max, "Largest power")->check(CLI::Range(1, 16));
  cb->add_option("--report", report_path, "Also write the JSON report here");
  auto* cg = symbolic->add_subcommand("check-gamma", "Check that renormalization leaves Gamma unchanged");
  cg->add_option("--d", d_check, "Number of noises")->check(CLI::Range(1, 8));
  cg->add_option("--nmax", n_max, "Largest power")->check(CLI::Range(1, 16));
  cg->add_option("--report", report_path, "Also write the JSON report here");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo experiments");
  simulate->require_subcommand(1);
  std::string config_path, manifest_path, out_dir = ".";
  auto* wz = simulate->add_subcommand("wong-zakai", "Wong-Zakai experiment; writes wz.csv, wz_summary.csv");
  auto* bd = simulate->add_subcommand("bounds", "Model-difference scaling probe; writes bounds.csv");
  for (auto* sub : {wz, bd}) {
    sub->add_option("--config", config_path, "Key-value configuration file");
    sub->add_option("--manifest", manifest_path, "Re-run the configuration recorded in a manifest");
    sub->add_option("--out", out_dir, "Output directory");
  }
  auto* ce = simulate->add_subcommand("c-eps", "Correction constant by quadrature");
  double hurst = 0.3, eps = 0.05, horizon = 1.0, dt = 0.0;
  std::optional<double> at_time;
  std::string mollifier = "bump";
  ce->add_option("--H", hurst, "Hurst parameter")->required();
  ce->add_option("--eps", eps, "Mollifier scale")->required()->check(CLI::PositiveNumber);
  ce->add_option("--T", horizon, "Kernel cutoff horizon")->check(CLI::PositiveNumber);
  ce->add_option("--t", at_time, "Time-dependent form with W, W^H started at 0");
  ce->add_option("--dt", dt, "Also print the value for grid processes with this step")->check(CLI::PositiveNumber);
  ce->add_option("--mollifier", mollifier, "bump or bump2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (dm->parsed() || dp->parsed() || an->parsed() || ga->parsed()) {
      const auto spec = make_structure(so, symbol);
      const auto parsed = parse_symbol(symbol, spec);
      if (dm->parsed()) {
        PairComb<Rational> result;
        for (const auto& [k, t] : parsed) {
          accumulate(result, so.ex ? delta_minus_ex(t.forest, spec) : delta_minus(t.forest), t.coefficient);
        }
        out << format_pairs(result) << "\n";
      } else if (dp->parsed()) {
        PairComb<Rational> result;
        for (const auto& [k, t] : parsed) {
          if (!t.forest.is_tree()) throw DomainError("delta-plus acts on trees");
          const TypedTree tree = t.forest.as_tree();
          accumulate(result, so.ex ? delta_plus_ex(tree, spec) : delta_plus(tree), t.coefficient);
        }
        out << format_pairs(result) << "\n";
      } else if (an->parsed()) {
        TwistedAntipode antipode(spec);
        LinComb<Rational> result;
        for (const auto& [k, t] : parsed) result += antipode(t.forest) * t.coefficient;
        out << format_symbol(result) << "\n";
      } else {
        const auto cov = CovarianceSpec::load(cov_path);
        if (cov.d() != spec.d())
          throw ConfigError("covariance is for d = " + std::to_string(cov.d()) + ", symbol needs d = " + std::to_string(spec.d()));
        TwistedAntipode antipode(spec);
        Rational value(0);
        for (const auto& [k, t] : parsed) value += t.coefficient * g_antipode(t.forest, antipode, cov);
        out << to_string(value) << "\n";
      }
      return kSuccess;
    }
    if (cb->parsed() || cg->parsed()) {
      const StructureSpec spec(std::vector<Rational>(static_cast<std::size_t>(d_check), Rational(1, n_max + 2)), n_max);
      const CheckReport report = cb->parsed() ? check_bphz_plain(spec, n_max) : check_gamma_bphz(spec, n_max);
      const json params{{"d", d_check}, {"nmax", n_max}, {"alpha", "1/" + std::to_string(n_max + 2)}};
      const std::string text = report_json(report, params).dump(2) + "\n";
      out << text;
      if (!report_path.empty()) write_file(report_path, text);
      return report.passed ? kSuccess : kCheckFailed;
    }
    if (wz->parsed()) {
      const auto cfg = load_sim_config(config_path, manifest_path);
      const auto result = rs::wz_experiment(cfg);
      emit_outputs(out_dir, "simulate wong-zakai", cfg,
                   {{"wz.csv", render([&](std::ostream& os) { rs::write_wz_csv(os, result); })},
                    {"wz_summary.csv", render([&](std::ostream& os) { rs::write_wz_summary_csv(os, result); })}},
                   out);
      return kSuccess;
    }
    if (bd->parsed()) {
      const auto cfg = load_sim_config(config_path, manifest_path);
      const auto result = rs::model_bound_probe(cfg);
      emit_outputs(out_dir, "simulate bounds", cfg,
                   {{"bounds.csv", render([&](std::ostream& os) { rs::write_bounds_csv(os, result); })},
                    {"bounds_fit.csv", render([&](std::ostream& os) { rs::write_bounds_fit_csv(os, result); })}},
                   out);
      for (const auto& f : result.fits)
        out << f.tau << ": lambda exponent " << rs::format_double(f.lambda_exponent) << ", eps exponent "
            << rs::format_double(f.eps_exponent) << "\n";
      return kSuccess;
    }
    if (ce->parsed()) {
      const rs::KernelSpec kernel(hurst, horizon);
      const rs::Mollifier rho(mollifier);
      const auto q = at_time ? rs::c_eps_at(*at_time, eps, kernel, rho) : rs::c_eps_stationary(eps, kernel, rho);
      out << "c_eps = " << rs::format_double(q.value) << "\n";
      out << "quadrature_error = " << rs::format_double(q.error) << "\n";
      if (!q.converged) out << "warning: quadrature did not reach the requested tolerance\n";
      if (dt > 0.0) {
        const auto w = rho.weights(eps, dt);
        const double grid = at_time ? rs::c_eps_grid(w, rs::rl_taps(kernel, dt, static_cast<std::size_t>(std::ceil((*at_time + 2 * eps) / dt)) + 2),
                                                     static_cast<long>(std::floor(*at_time / dt)))
                                    : rs::c_eps_grid(w, rs::hat_taps(kernel, dt));
        out << "c_eps_grid = " << rs::format_double(grid) << "\n";
      }
      return kSuccess;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  err << "error: no command\n";
  return kUsage;
}

}  // namespace bphz::cli

#include "runner.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "koopnet/affine_wavelet.hpp"
#include "koopnet/errors.hpp"
#include "koopnet/io.hpp"
#include "koopnet/koopman.hpp"
#include "koopnet/repr_analysis.hpp"
#include "koopnet/ridgelet.hpp"

namespace koopnet::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Anything raised while reading the config or its referenced files.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Setup {
  std::string label;
  std::shared_ptr<const KoopmanRep> rep;
  std::uint64_t seed = 0;
};

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::size_t config_size(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj[key].is_number_unsigned())
    throw ConfigError(std::string("group.") + key + " must be a non-negative integer");
  return obj[key].get<std::size_t>();
}

Setup load_setup(const json& config, const fs::path& base, std::optional<std::uint64_t> seed_override) {
  if (!config.contains("group") || !config["group"].is_object()) throw ConfigError("config needs a \"group\" object");
  const json& g = config["group"];
  if (g.contains("builtin") == g.contains("file"))
    throw ConfigError("group needs exactly one of \"builtin\" or \"file\"");

  Setup setup;
  std::shared_ptr<const FiniteGroup> group;
  std::optional<io::ActionTable> file_action;
  try {
    if (g.contains("builtin")) {
      const std::string name = g["builtin"].get<std::string>();
      if (name == "cyclic") {
        const std::size_t n = config_size(g, "n");
        group = std::make_shared<const FiniteGroup>(build_cyclic(n));
        setup.label = "Z_" + std::to_string(n);
      } else if (name == "symmetric") {
        const std::size_t n = config_size(g, "n");
        group = std::make_shared<const FiniteGroup>(build_symmetric(n));
        setup.label = "S_" + std::to_string(n);
      } else if (name == "trivial") {
        group = std::make_shared<const FiniteGroup>(build_cyclic(1));
        setup.label = "trivial";
      } else {
        throw ConfigError("unknown builtin group \"" + name + "\"");
      }
    } else {
      const fs::path path = resolve(base, g["file"].get<std::string>());
      io::GroupDocument doc = io::load_group_file(path);
      group = doc.group;
      file_action = doc.action;
      setup.label = path.stem().string();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("group: ") + e.what());
  } catch (const Error& e) {
    throw ConfigError(std::string("group: ") + e.what());
  }

  std::optional<GAction> action;
  try {
    const json a = config.value("action", json(file_action ? "file" : "regular"));
    if (a.is_string() && a.get<std::string>() == "regular") {
      action = regular_action(group);
    } else if (a.is_string() && a.get<std::string>() == "file") {
      if (!file_action) throw ConfigError("action \"file\" but the group file has no action table");
      action = io::bind_action(group, *file_action);
      setup.label += "/action";
    } else if (a.is_object() && a.contains("trivial")) {
      const std::size_t m = a["trivial"].get<std::size_t>();
      action = trivial_action(group, m);
      setup.label += " on " + std::to_string(m) + " points";
    } else if (a.is_object() && a.contains("file")) {
      const fs::path path = resolve(base, a["file"].get<std::string>());
      action = io::bind_action(group, io::parse_action_document(io::read_text_file(path)));
      setup.label += "/" + path.stem().string();
    } else {
      throw ConfigError("action must be \"regular\", \"file\", {\"trivial\": m} or {\"file\": path}");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("action: ") + e.what());
  } catch (const Error& e) {
    throw ConfigError(std::string("action: ") + e.what());
  }

  try {
    setup.rep = std::make_shared<const KoopmanRep>(std::make_shared<const GAction>(std::move(*action)),
                                                  std::make_shared<const InvariantMeasure>(
                                                      counting_measure(action->num_points())));
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }

  if (seed_override) {
    setup.seed = *seed_override;
  } else if (config.contains("seed") && config["seed"].is_number_unsigned()) {
    setup.seed = config["seed"].get<std::uint64_t>();
  } else {
    throw ConfigError("config needs a non-negative integer \"seed\" (or pass --seed)");
  }
  return setup;
}

double tolerance(const json& config, std::optional<double> override_tol, double fallback) {
  if (override_tol) return *override_tol;
  if (config.contains("tolerance")) {
    if (!config["tolerance"].is_number()) throw ConfigError("\"tolerance\" must be a number");
    return config["tolerance"].get<double>();
  }
  return fallback;
}

std::size_t trials(const json& config, std::size_t fallback) {
  if (!config.contains("trials")) return fallback;
  if (!config["trials"].is_number_unsigned() || config["trials"].get<std::size_t>() == 0)
    throw ConfigError("\"trials\" must be a positive integer");
  return config["trials"].get<std::size_t>();
}

json law_entry(const std::string& name, double gap, double tol, bool exact = false) {
  const bool pass = exact ? gap == 0.0 : gap < tol;
  return json{{"law", name}, {"max_gap", gap}, {"tolerance", exact ? 0.0 : tol}, {"pass", pass}};
}

double scale3(double a, double b, double c) { return std::max(1e-300, a * b * c); }

// --- verify ---------------------------------------------------------------

RunResult run_verify(const json& config, const fs::path& base, std::optional<std::uint64_t> seed,
                     std::optional<double> tol_override) {
  const Setup s = load_setup(config, base, seed);
  const KoopmanRep& rep = *s.rep;
  const double koopman_tol = tolerance(config, tol_override, 1e-10);
  const double voice_tol = tolerance(config, tol_override, 1e-9);
  const std::size_t n_trials = trials(config, 100);
  std::mt19937_64 rng(s.seed);
  const auto& X = rep.space_measure();
  const auto& G = rep.group_measure();
  const std::size_t order = rep.group_order();

  double unitarity = 0.0, right_action = 0.0, adjoint = 0.0, inter_r = 0.0, inter_dnn = 0.0, dual = 0.0,
         single = 0.0;

  for (Element g = 0; g < order; ++g) {
    for (int t = 0; t < 10; ++t) {
      const FieldFunction psi = random_function(X, rng);
      const FieldFunction phi = random_function(X, rng);
      const Complex before = inner_product(psi, phi);
      const Complex after = inner_product(apply_koopman(rep, g, psi), apply_koopman(rep, g, phi));
      unitarity = std::max(unitarity, std::abs(after - before) / (norm(psi) * norm(phi)));

      const FieldFunction f = random_function(X, rng);
      const FieldFunction round_trip = apply_koopman(rep, g, solve_single_layer(rep, g, f));
      single = std::max(single, (round_trip.values() - f.values()).cwiseAbs().maxCoeff());
    }
    for (Element h = 0; h < order; ++h) {
      const Matrix diff = rep.matrix(g) * rep.matrix(h) - rep.matrix(rep.group().product(h, g));
      right_action = std::max(right_action, diff.cwiseAbs().maxCoeff());
      const FieldFunction gamma = random_function(G, rng);
      const FieldFunction lhs = dual_action(rep.group(), g, dual_action(rep.group(), h, gamma));
      const FieldFunction rhs = dual_action(rep.group(), rep.group().product(h, g), gamma);
      dual = std::max(dual, (lhs.values() - rhs.values()).cwiseAbs().maxCoeff());
    }
  }

  for (std::size_t t = 0; t < n_trials; ++t) {
    const FieldFunction psi = random_function(X, rng);
    const FieldFunction f = random_function(X, rng);
    const FieldFunction gamma = random_function(G, rng);
    const double np = norm(psi), nf = norm(f), ng = norm(gamma);
    adjoint = std::max(adjoint, adjointness_gap(rep, psi, gamma, f) / scale3(np, nf, ng));
    for (Element g = 0; g < order; ++g) {
      const IntertwiningGaps gaps = intertwining_gaps(rep, psi, f, gamma, g);
      inter_r = std::max(inter_r, gaps.ridgelet / scale3(np, nf, 1.0));
      inter_dnn = std::max(inter_dnn, gaps.network / scale3(np, ng, 1.0));
    }
  }

  json laws = json::array();
  laws.push_back(law_entry("unitarity", unitarity, koopman_tol));
  laws.push_back(law_entry("right_action", right_action, koopman_tol));
  laws.push_back(law_entry("dual_action_composition", dual, 0.0, true));
  laws.push_back(law_entry("single_layer_round_trip", single, 0.0, true));
  laws.push_back(law_entry("adjointness", adjoint, voice_tol));
  laws.push_back(law_entry("intertwining_ridgelet", inter_r, voice_tol));
  laws.push_back(law_entry("intertwining_network", inter_dnn, voice_tol));

  bool all = true;
  for (const auto& l : laws) all = all && l["pass"].get<bool>();
  RunResult r;
  r.report = json{{"command", "verify"}, {"group", s.label}, {"order", order}, {"num_points", rep.dim()},
                  {"seed", s.seed}, {"laws", laws}, {"pass", all}};
  r.exit_code = all ? kExitPass : kExitCheckFailed;
  if (!all) r.diagnostic = "one or more laws failed";
  return r;
}

// --- decompose -------------------------------------------------------------

double max_cross_inner(const std::vector<Subspace>& subs) {
  double worst = 0.0;
  std::vector<const FieldFunction*> all;
  std::vector<std::size_t> owner;
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (const auto& b : subs[i].basis) {
      all.push_back(&b);
      owner.push_back(i);
    }
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (owner[i] != owner[j]) worst = std::max(worst, std::abs(inner_product(*all[i], *all[j])));
  return worst;
}

RunResult run_decompose(const json& config, const fs::path& base, std::optional<std::uint64_t> seed,
                        std::optional<double> tol_override) {
  const Setup s = load_setup(config, base, seed);
  const KoopmanRep& rep = *s.rep;
  const double tol = tolerance(config, tol_override, 1e-9);
  const std::vector<Subspace> subs = decompose_invariant(rep, s.seed);

  json entries = json::array();
  std::size_t total = 0;
  bool all_irreducible = true;
  double worst_residual = 0.0;
  for (const auto& sub : subs) {
    entries.push_back(json{{"dim", sub.dim()},
                           {"irreducible", sub.irreducible},
                           {"commutant_dim", sub.commutant_dim_restricted},
                           {"invariance_residual", sub.invariance_residual}});
    total += sub.dim();
    all_irreducible = all_irreducible && sub.irreducible;
    worst_residual = std::max(worst_residual, sub.invariance_residual);
  }
  const double orth = max_cross_inner(subs);
  const bool complete = total == rep.dim();
  const bool pass = complete && all_irreducible && orth < tol && worst_residual < tol;

  RunResult r;
  r.report = json{{"command", "decompose"},
                  {"group", s.label},
                  {"order", rep.group_order()},
                  {"num_points", rep.dim()},
                  {"seed", s.seed},
                  {"commutant_dim", compute_commutant(rep).dimension},
                  {"subspaces", entries},
                  {"checks",
                   {{"dimension_sum", total},
                    {"complete", complete},
                    {"max_cross_inner_product", orth},
                    {"max_invariance_residual", worst_residual},
                    {"all_irreducible", all_irreducible}}},
                  {"pass", pass}};
  r.exit_code = pass ? kExitPass : kExitCheckFailed;
  if (!pass) r.diagnostic = "decomposition checks failed";
  return r;
}

// --- reconstruct -----------------------------------------------------------

FieldFunction random_unit_in(const Subspace& sub, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  FieldFunction f = FieldFunction::zeros(sub.basis.front().measure_ptr());
  for (const auto& b : sub.basis) {
    const double re = normal(rng);
    const double im = normal(rng);
    f += Complex(re, im) * b;
  }
  f *= 1.0 / norm(f);
  return f;
}

RunResult run_reconstruct(const json& config, const fs::path& base, std::optional<std::uint64_t> seed,
                          std::optional<double> tol_override) {
  const Setup s = load_setup(config, base, seed);
  const KoopmanRep& rep = *s.rep;
  const double tol = tolerance(config, tol_override, 1e-9);
  const std::size_t n_trials = trials(config, 1);
  const std::vector<Subspace> subs = decompose_invariant(rep, s.seed);
  std::mt19937_64 rng(s.seed);

  json entries = json::array();
  bool pass = true;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const Subspace& sub = subs[i];
    if (!sub.irreducible) {
      pass = false;
      entries.push_back(json{{"group", s.label}, {"subspace", i}, {"subspace_dim", sub.dim()},
                             {"irreducible", false}});
      continue;
    }
    std::optional<std::size_t> partner;
    for (std::size_t j = 0; j < subs.size() && !partner; ++j)
      if (j != i && subs[j].irreducible && !equivalent(rep, sub, subs[j])) partner = j;

    double worst_error = 0.0;
    double c_psi = 0.0;
    std::optional<double> worst_negative;
    for (std::size_t t = 0; t < n_trials; ++t) {
      const AdmissiblePair pair = AdmissiblePair::make(rep, random_unit_in(sub, rng), sub);
      const FieldFunction f = random_unit_in(sub, rng);
      const Reconstruction rec = reconstruct(rep, pair, f);
      worst_error = std::max(worst_error, rec.relative_error);
      c_psi = pair.c_psi();
      if (partner) {
        const FieldFunction outside = random_unit_in(subs[*partner], rng);
        const double leak = norm(dnn_apply(rep, pair.psi(), ridgelet_transform(rep, pair.psi(), outside)));
        worst_negative = std::max(worst_negative.value_or(0.0), leak);
      }
    }
    const bool ok = worst_error < tol && (!worst_negative || *worst_negative < tol);
    pass = pass && ok;
    json entry{{"group", s.label}, {"subspace", i}, {"subspace_dim", sub.dim()}, {"c_psi", c_psi},
               {"relative_error", worst_error}, {"pass", ok}};
    entry["negative_control_norm"] = worst_negative ? json(*worst_negative) : json(nullptr);
    entries.push_back(std::move(entry));
  }

  RunResult r;
  r.report = json{{"command", "reconstruct"}, {"group", s.label}, {"order", rep.group_order()},
                  {"num_points", rep.dim()}, {"seed", s.seed}, {"tolerance", tol},
                  {"trials", n_trials}, {"reconstructions", entries}, {"pass", pass}};
  r.exit_code = pass ? kExitPass : kExitCheckFailed;
  if (!pass) r.diagnostic = "reconstruction error above tolerance";
  return r;
}

// --- wavelet ---------------------------------------------------------------

affine::GridSpec grid_from(const json& w) {
  affine::GridSpec spec;
  if (!w.contains("grid")) return spec;
  const json& g = w["grid"];
  spec.a_min = g.value("a_min", spec.a_min);
  spec.a_max = g.value("a_max", spec.a_max);
  spec.n_a = g.value("n_a", spec.n_a);
  spec.b_min = g.value("b_min", spec.b_min);
  spec.b_max = g.value("b_max", spec.b_max);
  spec.n_b = g.value("n_b", spec.n_b);
  spec.x_min = g.value("x_min", spec.x_min);
  spec.x_max = g.value("x_max", spec.x_max);
  spec.n_x = g.value("n_x", spec.n_x);
  return spec;
}

affine::SampledSignal signal_from(const json& v, const affine::AffineGrid& grid, const fs::path& base,
                                  const char* what) {
  if (v.is_string()) {
    const std::string name = v.get<std::string>();
    if (name == "mexican_hat") return affine::mexican_hat(grid);
    if (name == "gaussian" || name == "gaussian_bump") return affine::gaussian(grid, 1.0);
    if (name == "zero") return affine::sample(grid, [](double) { return 0.0; });
    throw ConfigError(std::string("unknown ") + what + " \"" + name + "\"");
  }
  if (v.is_object() && v.contains("file")) {
    affine::SampledSignal s = io::load_signal_file(resolve(base, v["file"].get<std::string>()));
    if (s.size() != grid.n_x() || std::abs(s.dx - grid.dx()) > 1e-12 * grid.dx() ||
        std::abs(s.x0 - grid.spec().x_min) > 1e-9)
      throw ConfigError(std::string(what) + " file is not sampled on the configured signal grid");
    return s;
  }
  throw ConfigError(std::string(what) + " must be a builtin name or {\"file\": path}");
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

RunResult run_wavelet(const json& config, const fs::path& base, std::optional<double> tol_override) {
  const json w = config.value("wavelet", json::object());
  affine::GridSpec spec;
  affine::SampledSignal psi, f;
  std::optional<affine::AffineGrid> grid;
  try {
    spec = grid_from(w);
    // a signal file fixes the x-grid
    if (w.contains("signal") && w["signal"].is_object() && w["signal"].contains("file")) {
      const affine::SampledSignal s = io::load_signal_file(resolve(base, w["signal"]["file"].get<std::string>()));
      spec.n_x = s.size();
      spec.x_min = s.x0;
      spec.x_max = s.x(s.size() - 1);
    }
    grid.emplace(spec);
    psi = signal_from(w.value("psi", json("mexican_hat")), *grid, base, "psi");
    f = signal_from(w.value("signal", json("gaussian_bump")), *grid, base, "signal");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("wavelet: ") + e.what());
  } catch (const Error& e) {
    throw ConfigError(std::string("wavelet: ") + e.what());
  }
  const double tol = tolerance(config, tol_override, 5e-2);

  json grid_json{{"a_min", spec.a_min}, {"a_max", spec.a_max}, {"n_a", spec.n_a},
                 {"b_min", spec.b_min}, {"b_max", spec.b_max}, {"n_b", spec.n_b},
                 {"x_min", spec.x_min}, {"x_max", spec.x_max}, {"n_x", spec.n_x}};

  RunResult r;
  const affine::AdmissibilityEstimate adm = affine::admissibility_affine(psi);
  json report{{"command", "wavelet"}, {"grid", grid_json}, {"admissible", adm.admissible},
              {"c_psi_refinement", adm.refinement}};
  if (!adm.admissible) {
    report["c_psi"] = nullptr;
    report["pass"] = false;
    r.report = report;
    r.exit_code = kExitCheckFailed;
    r.diagnostic = "inadmissible wavelet: C_psi does not converge as the frequency grid is refined";
    return r;
  }
  report["c_psi"] = adm.c_psi;

  const affine::CoefficientMatrix W = affine::wavelet_transform(*grid, psi, f);
  const affine::SampledSignal rec = affine::wavelet_reconstruct(*grid, psi, W, adm.c_psi);
  const bool degenerate = affine::l2_norm(f) == 0.0;

  bool pass = true;
  if (degenerate) {
    report["relative_error"] = nullptr;
    report["status"] = "not-applicable";
    report["refinement"] = json::array();
  } else {
    const double err = affine::relative_l2_error(rec, f);
    const auto rows = affine::refinement_study(spec, psi, f, adm.c_psi);
    json table = json::array();
    bool decreasing = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      table.push_back(json{{"n_a", rows[i].n_a}, {"n_b", rows[i].n_b}, {"relative_error", rows[i].relative_error}});
      if (i > 0 && !(rows[i].relative_error < rows[i - 1].relative_error)) decreasing = false;
    }
    report["relative_error"] = err;
    report["status"] = err < tol ? "pass" : "fail";
    report["refinement"] = table;
    report["refinement_decreasing"] = decreasing;
    pass = err < tol && decreasing;

    if (w.contains("refinement_csv")) {
      std::ostringstream csv;
      csv.precision(17);
      csv << "n_a,n_b,relative_error\n";
      for (const auto& row : rows) csv << row.n_a << ',' << row.n_b << ',' << row.relative_error << '\n';
      write_text(resolve(base, w["refinement_csv"].get<std::string>()), csv.str());
    }
  }
  if (w.contains("coefficients_csv")) {
    std::ostringstream csv;
    affine::write_coefficients_csv(csv, *grid, W);
    write_text(resolve(base, w["coefficients_csv"].get<std::string>()), csv.str());
  }
  report["tolerance"] = tol;
  report["pass"] = pass;
  r.report = report;
  r.exit_code = pass ? kExitPass : kExitCheckFailed;
  if (!pass) r.diagnostic = "wavelet reconstruction check failed";
  return r;
}

}  // namespace

std::string render(const json& report) { return report.dump(2) + "\n"; }

RunResult run_config(const std::string& command, const json& config, const fs::path& base_dir,
                     std::optional<std::uint64_t> seed, std::optional<double> tol) {
  try {
    if (!config.is_object()) throw ConfigError("config must be a JSON object");
    if (config.contains("pipeline") && config["pipeline"] != command &&
        !(command == "verify" && config["pipeline"] == "single-layer"))
      throw ConfigError("config pipeline \"" + config["pipeline"].dump() + "\" does not match command " + command);
    if (command == "verify") return run_verify(config, base_dir, seed, tol);
    if (command == "decompose") return run_decompose(config, base_dir, seed, tol);
    if (command == "reconstruct") return run_reconstruct(config, base_dir, seed, tol);
    if (command == "wavelet") return run_wavelet(config, base_dir, tol);
    throw ConfigError("unknown command \"" + command + "\"");
  } catch (const ConfigError& e) {
    return RunResult{kExitInputError, nullptr, e.what()};
  } catch (const json::exception& e) {
    return RunResult{kExitInputError, nullptr, std::string("config: ") + e.what()};
  } catch (const SizeLimitError& e) {
    return RunResult{kExitInputError, nullptr, e.what()};
  } catch (const Error& e) {
    return RunResult{kExitCheckFailed, nullptr, e.what()};
  }
}

RunResult run(const Options& options) {
  json config;
  try {
    config = json::parse(io::read_text_file(options.config));
  } catch (const json::parse_error& e) {
    return RunResult{kExitInputError, nullptr, options.config.string() + ": invalid JSON (" + e.what() + ")"};
  } catch (const Error& e) {
    return RunResult{kExitInputError, nullptr, e.what()};
  }
  RunResult result = run_config(options.command, config, options.config.parent_path(), options.seed, options.tol);

  std::optional<fs::path> out = options.out;
  if (!out && config.is_object() && config.contains("output") && config["output"].is_string())
    out = resolve(options.config.parent_path(), config["output"].get<std::string>());
  if (out && !result.report.is_null()) {
    std::ofstream file(*out, std::ios::binary);
    if (!file) return RunResult{kExitInputError, result.report, "cannot write " + out->string()};
    file << render(result.report);
  }
  return result;
}

}  // namespace koopnet::cli

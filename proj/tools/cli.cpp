#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>

#include "bmv/csv.hpp"
#include "bmv/dataset.hpp"
#include "bmv/error.hpp"
#include "bmv/json_io.hpp"
#include "bmv/kernels.hpp"
#include "bmv/mc_validate.hpp"
#include "bmv/normal.hpp"
#include "bmv/presets.hpp"
#include "bmv/scaling_table.hpp"
#include "bmv/slices.hpp"

namespace bmv::cli {

namespace {

using nlohmann::json;

// Raw flag values; an option counts as given when its CLI11 count is > 0.
struct Flags {
  std::string config;
  std::string model;
  std::vector<std::string> n;
  std::vector<std::string> grid;
  std::vector<std::string> families;
  std::vector<double> quantiles;
  std::string density;
  std::string out;
  std::string data;
  std::string delimiter;
  std::uint64_t seed = 0;
  std::int64_t blocks = 0;
  std::int64_t count = 0;
};

// Merges a JSON config with flags: a given flag wins over the file value.
class Settings {
 public:
  Settings(const CLI::App& cmd, const Flags& flags) : cmd_(cmd), flags_(flags) {
    if (!flags.config.empty()) {
      std::ifstream in(flags.config);
      if (!in) throw DomainError("cannot open config " + flags.config);
      try {
        config_ = json::parse(in);
      } catch (const json::parse_error& e) {
        throw DomainError("config " + flags.config + ": " + e.what());
      }
      if (!config_.is_object()) throw DomainError("config must be a JSON object");
      base_ = std::filesystem::path(flags.config).parent_path();
    }
  }

  bool flag(const char* name) const {
    const CLI::Option* o = cmd_.get_option_no_throw(std::string("--") + name);
    return o != nullptr && o->count() > 0;
  }
  bool has(const char* key) const { return flag(key) || config_.contains(key); }
  const json& value(const char* key) const { return config_.at(key); }

  // Paths inside a config file are relative to the file.
  std::filesystem::path config_path(const std::string& p) const {
    const std::filesystem::path path(p);
    return path.is_relative() ? base_ / path : path;
  }

  std::optional<std::string> text(const char* key, const std::string& flag_value) const {
    if (flag(key)) return flag_value;
    if (config_.contains(key)) return value(key).get<std::string>();
    return std::nullopt;
  }

  std::optional<std::filesystem::path> path(const char* key, const std::string& flag_value) const {
    if (flag(key)) return std::filesystem::path(flag_value);
    if (config_.contains(key)) return config_path(value(key).get<std::string>());
    return std::nullopt;
  }

  template <typename T>
  T number(const char* key, T flag_value, T fallback) const {
    if (flag(key)) return flag_value;
    if (config_.contains(key)) return value(key).get<T>();
    return fallback;
  }

  QuadratureConfig quadrature() const {
    QuadratureConfig q;
    if (!config_.contains("quadrature")) return q;
    const auto& j = value("quadrature");
    q.abs_tol = j.value("abs_tol", q.abs_tol);
    q.rel_tol = j.value("rel_tol", q.rel_tol);
    q.max_subdivisions = j.value("max_subdivisions", q.max_subdivisions);
    q.validate();
    return q;
  }

  const Flags& flags() const { return flags_; }

 private:
  const CLI::App& cmd_;
  const Flags& flags_;
  json config_ = json::object();
  std::filesystem::path base_;
};

std::int64_t block_size(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "infinity") return scaling_table::kInfinite;
  const auto v = csv::parse(text);
  if (!v || *v != std::floor(*v) || *v < 1 || *v > 9e18)
    throw DomainError("block size '" + text + "' is not a positive integer");
  return static_cast<std::int64_t>(*v);
}

std::vector<std::int64_t> n_values(const Settings& s, std::vector<std::int64_t> fallback) {
  if (s.flag("n")) {
    std::vector<std::int64_t> out;
    for (const auto& t : s.flags().n) out.push_back(block_size(t));
    return out;
  }
  if (!s.has("n")) return fallback;
  const json& j = s.value("n");
  auto one = [](const json& x) {
    return x.is_string() ? block_size(x.get<std::string>()) : block_size(x.dump());
  };
  std::vector<std::int64_t> out;
  if (j.is_array()) {
    for (const auto& x : j) out.push_back(one(x));
  } else {
    out.push_back(one(j));
  }
  return out;
}

GridAxis axis_from_json(const json& j) {
  if (j.is_string()) return parse_grid_axis(j.get<std::string>());
  GridAxis a{j.at("min").get<double>(), j.at("max").get<double>(), j.at("count").get<int>()};
  a.validate();
  return a;
}

std::array<GridAxis, 2> grid(const Settings& s, SliceMode mode) {
  std::vector<GridAxis> axes;
  if (s.flag("grid")) {
    for (const auto& t : s.flags().grid) axes.push_back(parse_grid_axis(t));
  } else if (s.has("grid")) {
    const json& j = s.value("grid");
    if (j.is_array()) {
      for (const auto& x : j) axes.push_back(axis_from_json(x));
    } else {
      axes.push_back(axis_from_json(j));
    }
  } else {
    return SliceRequest::default_grid(mode);
  }
  if (axes.empty() || axes.size() > 2) throw DomainError("grid takes one or two axes");
  return {axes.front(), axes.back()};
}

std::optional<std::array<BicopFamily, 3>> families(const Settings& s) {
  std::vector<std::string> names;
  if (s.flag("families")) {
    names = s.flags().families;
  } else if (s.has("families")) {
    names = s.value("families").get<std::vector<std::string>>();
  } else {
    return std::nullopt;
  }
  if (names.size() != 3) throw DomainError("families takes exactly three names (c12, c23, c13_2)");
  return std::array<BicopFamily, 3>{family_from_string(names[0]), family_from_string(names[1]),
                                    family_from_string(names[2])};
}

// A model is a preset name, a path to a JSON file, or (in the config) an
// inline JSON object.
json model_json(const Settings& s) {
  json j;
  if (s.flag("model")) {
    j = s.flags().model;
  } else if (s.has("model")) {
    j = s.value("model");
  } else {
    throw DomainError("no model given");
  }
  if (!j.is_string()) return j;
  const std::string name = j.get<std::string>();
  if (presets::vine(name) || presets::scaled(name)) return j;
  const auto path = s.flag("model") ? std::filesystem::path(name) : s.config_path(name);
  std::ifstream in(path);
  if (!in) throw DomainError("model '" + name + "' is neither a preset nor a readable file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError("model file " + path.string() + ": " + e.what());
  }
}

Vine3Spec vine_model(const Settings& s) {
  const json j = model_json(s);
  if (j.is_string()) {
    if (auto v = presets::vine(j.get<std::string>())) return *v;
    throw DomainError("'" + j.get<std::string>() + "' is not a vine preset");
  }
  return j.get<Vine3Spec>();
}

ScaledModel scaled_model(const Settings& s) {
  const auto fam = families(s);
  json j;
  if (s.has("model")) {
    j = model_json(s);
  } else if (s.has("plan")) {
    j = json{{"plan", s.value("plan")}};
  } else {
    throw DomainError("no scaled model given");
  }
  std::optional<ScaledModel> model;
  if (j.is_string()) {
    model = presets::scaled(j.get<std::string>());
    if (!model) throw DomainError("'" + j.get<std::string>() + "' is not a scaled preset");
  } else {
    if (!j.contains("plan")) throw DomainError("scaled model is missing 'plan'");
    std::array<BicopFamily, 3> f{BicopFamily::Gaussian, BicopFamily::Gaussian,
                                 BicopFamily::Gaussian};
    if (j.contains("families")) f = j.at("families").get<std::array<BicopFamily, 3>>();
    model = ScaledModel{j.at("plan").get<ScalingPlan>(), f};
  }
  if (fam) model->families = *fam;
  return *model;
}

void emit(const Settings& s, std::ostream& out, const json& report) {
  const auto path = s.path("out", s.flags().out);
  if (!path) {
    out << report.dump(2) << '\n';
    return;
  }
  std::ofstream file(*path, std::ios::binary);
  if (!file) throw DomainError("cannot write " + path->string());
  file << report.dump(2) << '\n';
}

void run_slices(const Settings& s, bool scaled, std::ostream& out) {
  SliceRequest req;
  if (scaled) {
    req.model = scaled_model(s);
  } else {
    req.model = vine_model(s);
  }
  req.n_values = n_values(s, {10, 50, 1000});
  if (s.flag("quantiles")) {
    req.axis3_quantiles = s.flags().quantiles;
  } else if (s.has("quantiles")) {
    req.axis3_quantiles = s.value("quantiles").get<std::vector<double>>();
  }
  req.grid = grid(s, req.mode());
  if (const auto d = s.text("density", s.flags().density)) {
    if (scaled) throw DomainError("density applies to z-scale slices only");
    if (*d == "copula") {
      req.z_density = ZDensity::Copula;
    } else if (*d == "joint") {
      req.z_density = ZDensity::Joint;
    } else {
      throw DomainError("density must be 'copula' or 'joint'");
    }
  }
  req.quadrature = s.quadrature();
  const auto dir = s.path("out", s.flags().out);
  if (!dir) throw DomainError("slices need an output directory (--out)");
  req.output_dir = *dir;
  for (const auto& f : slices::emit(req)) out << f.path.string() << '\n';
  out << (req.output_dir / slices::kManifest).string() << '\n';
}

void run_scaling_table(const Settings& s, std::ostream& out) {
  std::vector<ScalingPlan> plans;
  if (s.has("plans")) {
    for (const auto& p : s.value("plans")) plans.push_back(p.get<ScalingPlan>());
  } else {
    plans = presets::scaling_plans();
  }
  const auto ns = n_values(s, {});
  if (const auto path = s.path("out", s.flags().out)) {
    std::ofstream file(*path, std::ios::binary);
    if (!file) throw DomainError("cannot write " + path->string());
    scaling_table::write(file, plans, ns);
  } else {
    scaling_table::write(out, plans, ns);
  }
}

void run_fit(const Settings& s, std::ostream& out) {
  const auto data = s.path("data", s.flags().data);
  if (!data) throw DomainError("fit needs a data file (--data)");
  const auto fam = families(s);
  if (!fam) throw DomainError("fit needs three pair families (--families)");
  const auto delim = s.text("delimiter", s.flags().delimiter).value_or(",");
  if (delim.size() != 1) throw DomainError("delimiter must be a single character");
  const auto pit = dataset::ingest_pit(*data, delim[0]);
  const auto fit = dataset::fit_tau(pit.pseudo, *fam);
  emit(s, out,
       {{"rows", pit.data.rows.size()},
        {"columns", pit.data.names},
        {"tau", {{"c12", fit.tau[0]}, {"c23", fit.tau[1]}, {"c13_2", fit.tau[2]}}},
        {"vine", fit.spec}});
}

void run_mc_validate(const Settings& s, std::ostream& out) {
  const Vine3Spec vine = vine_model(s);
  const auto ns = n_values(s, {10});
  const auto blocks = s.number<std::int64_t>("blocks", s.flags().blocks, 100000);
  const auto seed = s.number<std::uint64_t>("seed", s.flags().seed, 1);
  json reports = json::array();
  for (auto n : ns) {
    const McReport r = mc::validate(vine, n, blocks, seed, s.quadrature());
    reports.push_back({{"n", r.n},
                       {"blocks", r.blocks},
                       {"seed", r.seed},
                       {"sup_distance", r.sup_distance},
                       {"cvm_distance", r.cvm_distance},
                       {"threshold", r.threshold},
                       {"pass", r.pass}});
  }
  emit(s, out, {{"model", vine}, {"reports", reports}});
}

void run_simulate(const Settings& s, std::ostream& out) {
  const Vine3Spec vine = vine_model(s);
  const auto count = s.number<std::int64_t>("count", s.flags().count, 5000);
  if (count < 1) throw DomainError("count must be positive");
  const auto seed = s.number<std::uint64_t>("seed", s.flags().seed, 1);
  std::vector<Point3> draws(static_cast<std::size_t>(count));
  kernels::omp::sample_vine(vine, seed, draws);
  Dataset data;
  for (const auto& u : draws)
    data.rows.push_back({normal::quantile(u[0]), normal::quantile(u[1]), normal::quantile(u[2])});
  if (const auto path = s.path("out", s.flags().out)) {
    dataset::write_csv(*path, data);
  } else {
    out << "x1,x2,x3\n";
    for (const auto& r : data.rows)
      out << csv::format(r[0]) << ',' << csv::format(r[1]) << ',' << csv::format(r[2]) << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Block-maxima densities of three-dimensional vine copulas"};
  app.require_subcommand(1);
  Flags flags;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", flags.config, "JSON config; flags override its values");
    cmd->add_option("--out", flags.out, "Output file or directory");
  };
  auto add_model = [&](CLI::App* cmd) {
    cmd->add_option("--model", flags.model, "Preset name or JSON model file");
  };
  auto add_n = [&](CLI::App* cmd) {
    cmd->add_option("--n", flags.n, "Block sizes, comma separated")->delimiter(',');
  };
  auto add_families = [&](CLI::App* cmd) {
    cmd->add_option("--families", flags.families, "Pair families c12,c23,c13_2")->delimiter(',');
  };
  auto add_seed = [&](CLI::App* cmd) { cmd->add_option("--seed", flags.seed, "Random seed"); };
  auto add_slice = [&](CLI::App* cmd) {
    add_common(cmd);
    add_model(cmd);
    add_n(cmd);
    cmd->add_option("--grid", flags.grid, "Axis min:max:count; give twice for separate axes")
        ->expected(1, 2);
    cmd->add_option("--quantiles", flags.quantiles, "Axis-3 quantiles")->delimiter(',');
  };

  auto* slice = app.add_subcommand("slice", "Density slices on the z-scale");
  add_slice(slice);
  slice->add_option("--density", flags.density, "copula (standard normal margins) or joint");
  auto* scaled = app.add_subcommand("scaled-slice", "Density slices of the scaled maxima");
  add_slice(scaled);
  add_families(scaled);
  auto* table = app.add_subcommand("scaling-table", "h, n* and correlation schedule table");
  add_common(table);
  add_n(table);
  auto* fit = app.add_subcommand("fit", "Fit a vine to data by tau inversion");
  add_common(fit);
  add_families(fit);
  fit->add_option("--data", flags.data, "CSV with at least three numeric columns");
  fit->add_option("--delimiter", flags.delimiter, "Field delimiter");
  auto* mcv = app.add_subcommand("mc-validate", "Monte Carlo check of the maxima copula");
  add_common(mcv);
  add_model(mcv);
  add_n(mcv);
  add_seed(mcv);
  mcv->add_option("--blocks", flags.blocks, "Number of simulated blocks");
  auto* sim = app.add_subcommand("simulate", "Draw vine samples on the z-scale");
  add_common(sim);
  add_model(sim);
  add_seed(sim);
  sim->add_option("--count", flags.count, "Number of draws");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  try {
    const CLI::App* cmd = app.get_subcommands().front();
    const Settings settings(*cmd, flags);
    const std::string name = cmd->get_name();
    if (name == "slice") run_slices(settings, false, out);
    if (name == "scaled-slice") run_slices(settings, true, out);
    if (name == "scaling-table") run_scaling_table(settings, out);
    if (name == "fit") run_fit(settings, out);
    if (name == "mc-validate") run_mc_validate(settings, out);
    if (name == "simulate") run_simulate(settings, out);
    return kSuccess;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace bmv::cli

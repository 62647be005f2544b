#include "bmv/slices.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "bmv/blockmax.hpp"
#include "bmv/csv.hpp"
#include "bmv/error.hpp"
#include "bmv/json_io.hpp"
#include "bmv/kernels.hpp"
#include "bmv/normal.hpp"

namespace bmv {

void GridAxis::validate() const {
  if (count < 2) throw DomainError("grid axis needs at least 2 points");
  if (!(min < max) || !std::isfinite(min) || !std::isfinite(max))
    throw DomainError("grid axis needs finite min < max");
}

double GridAxis::at(int i) const {
  if (i == count - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

GridAxis parse_grid_axis(const std::string& text) {
  const auto parts = csv::split(text, ':');
  if (parts.size() != 3) throw DomainError("grid '" + text + "' is not min:max:count");
  const auto lo = csv::parse(parts[0]), hi = csv::parse(parts[1]), count = csv::parse(parts[2]);
  if (!lo || !hi || !count || *count != std::floor(*count) || std::abs(*count) > 1e7)
    throw DomainError("grid '" + text + "' is not min:max:count");
  GridAxis axis{*lo, *hi, static_cast<int>(*count)};
  axis.validate();
  return axis;
}

std::array<GridAxis, 2> SliceRequest::default_grid(SliceMode mode) {
  const GridAxis axis = mode == SliceMode::Z ? GridAxis{-3.0, 3.0, 101} : GridAxis{-2.0, 6.0, 101};
  return {axis, axis};
}

void SliceRequest::validate() const {
  if (n_values.empty()) throw DomainError("no block sizes requested");
  for (auto n : n_values) {
    if (n < 1) throw DomainError("block size n must be >= 1");
    if (mode() == SliceMode::W && n < 2) throw DomainError("scaled slices need n >= 2");
  }
  if (axis3_quantiles.empty()) throw DomainError("no axis-3 quantiles requested");
  for (double q : axis3_quantiles)
    if (!(q > 0.0 && q < 1.0)) throw DomainError("axis-3 quantiles must lie in (0,1)");
  for (const auto& a : grid) a.validate();
  quadrature.validate();
  if (output_dir.empty()) throw DomainError("no output directory given");
}

namespace slices {

namespace {

std::string short_number(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string file_name(SliceMode mode, std::int64_t n, double q) {
  return std::string(mode == SliceMode::Z ? "slice" : "scaled") + "_n" + std::to_string(n) +
         "_q" + short_number(q) + ".csv";
}

kernels::PointFunction density_function(const SliceRequest& req, const BlockMaxModel& model) {
  if (req.mode() == SliceMode::W)
    return [&model](const Point3& w) { return evscale::scaled_joint_pdf(model, w); };
  if (req.z_density == ZDensity::Joint)
    return [&model](const Point3& z) { return blockmax::joint_pdf_z(model, z); };
  return [&model](const Point3& z) {
    const Point3 u{normal::cdf(z[0]), normal::cdf(z[1]), normal::cdf(z[2])};
    return blockmax::max_copula_pdf(model, u) * normal::pdf(z[0]) * normal::pdf(z[1]) *
           normal::pdf(z[2]);
  };
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError("cannot write " + path.string());
  out << text;
  out.close();
  if (!out) throw DomainError("failed writing " + path.string());
}

nlohmann::json model_json(const SliceRequest& req) {
  if (const auto* v = std::get_if<Vine3Spec>(&req.model)) return *v;
  const auto& s = std::get<ScaledModel>(req.model);
  return {{"plan", s.plan}, {"families", s.families}};
}

const char* density_name(const SliceRequest& req) {
  if (req.mode() == SliceMode::W) return "scaled";
  return req.z_density == ZDensity::Joint ? "joint" : "copula";
}

// Removes everything written so far unless disarmed.
class Cleanup {
 public:
  ~Cleanup() {
    if (!armed_) return;
    std::error_code ec;
    for (const auto& p : paths_) std::filesystem::remove(p, ec);
  }
  void add(const std::filesystem::path& p) { paths_.push_back(p); }
  void disarm() { armed_ = false; }

 private:
  std::vector<std::filesystem::path> paths_;
  bool armed_ = true;
};

}  // namespace

Vine3Spec vine_for(const SliceRequest& req, std::int64_t n) {
  if (const auto* v = std::get_if<Vine3Spec>(&req.model)) return *v;
  const auto& s = std::get<ScaledModel>(req.model);
  return evscale::vine_params_for_n(s.plan, n, s.families);
}

double axis3_value(const SliceRequest& req, std::int64_t n, double q) {
  if (req.mode() == SliceMode::W) return evscale::scaled_marginal_quantile(n, q);
  if (req.z_density == ZDensity::Joint)
    return normal::quantile(std::pow(q, 1.0 / static_cast<double>(n)));
  return normal::quantile(q);
}

double independence_factor(const SliceRequest& req, std::int64_t n, double x) {
  if (req.mode() == SliceMode::W) return evscale::scaled_marginal_pdf(n, x);
  if (req.z_density == ZDensity::Joint) return blockmax::marginal_pdf_z(n, x);
  return normal::pdf(x);
}

std::vector<SliceFile> emit(const SliceRequest& req) {
  req.validate();
  const SliceMode mode = req.mode();
  const auto& [ax1, ax2] = req.grid;
  const char* prefix = mode == SliceMode::Z ? "z" : "w";

  std::error_code ec;
  std::filesystem::create_directories(req.output_dir, ec);
  if (ec) throw DomainError("cannot create " + req.output_dir.string() + ": " + ec.message());

  Cleanup cleanup;
  std::vector<SliceFile> files;
  nlohmann::json slices_json = nlohmann::json::array();
  std::vector<Point3> points(static_cast<std::size_t>(ax1.count) * ax2.count);
  std::vector<double> density(points.size());

  for (const auto n : req.n_values) {
    const Vine3Spec vine = vine_for(req, n);
    const BlockMaxModel model = BlockMaxModel::from_vine(vine, n, req.quadrature);
    const auto f = density_function(req, model);
    for (const double q : req.axis3_quantiles) {
      const double x3 = axis3_value(req, n, q);
      for (int i = 0; i < ax1.count; ++i)
        for (int j = 0; j < ax2.count; ++j)
          points[static_cast<std::size_t>(i) * ax2.count + j] = {ax1.at(i), ax2.at(j), x3};
      kernels::omp::evaluate(f, points, density);

      std::string text = std::string(prefix) + "1," + prefix + "2," + prefix + "3,density\n";
      text.reserve(points.size() * 80);
      for (std::size_t k = 0; k < points.size(); ++k) {
        text += csv::format(points[k][0]) + ',' + csv::format(points[k][1]) + ',' +
                csv::format(points[k][2]) + ',' + csv::format(density[k]) + '\n';
      }
      const auto path = req.output_dir / file_name(mode, n, q);
      cleanup.add(path);
      write_text(path, text);
      files.push_back({path, n, q, x3, vine});

      nlohmann::json f1 = nlohmann::json::array(), f2 = nlohmann::json::array();
      for (int i = 0; i < ax1.count; ++i) f1.push_back(independence_factor(req, n, ax1.at(i)));
      for (int j = 0; j < ax2.count; ++j) f2.push_back(independence_factor(req, n, ax2.at(j)));
      slices_json.push_back({{"file", path.filename().string()},
                             {"n", n},
                             {"quantile", q},
                             {"axis3", x3},
                             {"vine", vine},
                             {"independence",
                              {{"axis1", f1},
                               {"axis2", f2},
                               {"axis3", independence_factor(req, n, x3)}}}});
    }
  }

  nlohmann::json names = nlohmann::json::array();
  for (const auto& f : files) names.push_back(f.path.filename().string());
  nlohmann::json grid = nlohmann::json::array();
  for (const auto& a : req.grid) grid.push_back({{"min", a.min}, {"max", a.max}, {"count", a.count}});
  const nlohmann::json manifest{{"files", names},
                                {"model", model_json(req)},
                                {"n", req.n_values},
                                {"mode", prefix},
                                {"density", density_name(req)},
                                {"quantiles", req.axis3_quantiles},
                                {"grid", grid},
                                {"slices", slices_json}};
  const auto manifest_path = req.output_dir / kManifest;
  cleanup.add(manifest_path);
  write_text(manifest_path, manifest.dump(2) + "\n");
  cleanup.disarm();
  return files;
}

}  // namespace slices
}  // namespace bmv

#include "bmv/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <string>

#include "bmv/csv.hpp"
#include "bmv/error.hpp"

namespace bmv::dataset {

namespace {

bool is_missing(std::string_view cell) {
  cell = csv::trim(cell);
  if (cell.empty()) return true;
  std::string lower(cell);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return lower == "na" || lower == "nan" || lower == "null";
}

std::string location(const std::filesystem::path& path, std::size_t line, std::size_t col) {
  return path.string() + ": row " + std::to_string(line) + ", column " + std::to_string(col);
}

// Tie groups of equal adjacent values in a sorted range, as sum t(t-1)/2.
template <typename Eq>
std::int64_t tied_pairs(std::size_t n, Eq equal) {
  std::int64_t pairs = 0, run = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i < n && equal(i - 1, i)) {
      ++run;
    } else {
      pairs += run * (run - 1) / 2;
      run = 1;
    }
  }
  return pairs;
}

// Stable merge sort of y counting strict inversions.
std::int64_t merge_count(std::vector<double>& y, std::vector<double>& buf, std::size_t lo,
                         std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t swaps = merge_count(y, buf, lo, mid) + merge_count(y, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (y[j] < y[i]) {
      swaps += static_cast<std::int64_t>(mid - i);
      buf[k++] = y[j++];
    } else {
      buf[k++] = y[i++];
    }
  }
  while (i < mid) buf[k++] = y[i++];
  while (j < hi) buf[k++] = y[j++];
  std::copy(buf.begin() + lo, buf.begin() + hi, y.begin() + lo);
  return swaps;
}

std::vector<double> column(std::span<const Point3> rows, int j) {
  std::vector<double> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out[i] = rows[i][j];
  return out;
}

BicopSpec invert(BicopFamily family, double tau, const char* pair) {
  try {
    return bicop::tau_to_param(family, std::clamp(tau, -kTauLimit, kTauLimit));
  } catch (const DomainError& e) {
    throw DomainError(std::string("pair ") + pair + ": " + e.what());
  }
}

}  // namespace

Dataset read_csv(const std::filesystem::path& path, char delimiter) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path.string());
  Dataset data;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    const auto cells = csv::split(line, delimiter);
    if (cells.size() < 3) {
      throw DomainError(location(path, line_no, cells.size() + 1) +
                        ": expected at least 3 columns");
    }
    if (first) {
      first = false;
      bool header = true;
      for (int j = 0; j < 3; ++j) header = header && !csv::parse(cells[j]) && !is_missing(cells[j]);
      if (header) {
        for (int j = 0; j < 3; ++j) data.names[j] = std::string(csv::trim(cells[j]));
        continue;
      }
    }
    Point3 row{};
    bool keep = true;
    for (int j = 0; j < 3; ++j) {
      const auto value = csv::parse(cells[j]);
      if (!value) {
        if (!is_missing(cells[j])) {
          throw DomainError(location(path, line_no, j + 1) + ": non-numeric cell '" +
                            std::string(csv::trim(cells[j])) + "'");
        }
        keep = false;
      } else if (!std::isfinite(*value)) {
        keep = false;
      } else {
        row[j] = *value;
      }
    }
    if (keep) data.rows.push_back(row);
  }
  return data;
}

std::vector<double> pseudo_observations(std::span<const double> col) {
  const std::size_t n = col.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return col[a] < col[b]; });
  std::vector<double> out(n);
  const double denom = static_cast<double>(n) + 1.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && col[order[j + 1]] == col[order[i]]) ++j;
    // Ranks i+1..j+1 share their average.
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) out[order[k]] = rank / denom;
    i = j + 1;
  }
  return out;
}

std::vector<Point3> pseudo_observations(std::span<const Point3> rows) {
  std::vector<Point3> out(rows.size());
  for (int j = 0; j < 3; ++j) {
    const auto p = pseudo_observations(column(rows, j));
    for (std::size_t i = 0; i < rows.size(); ++i) out[i][j] = p[i];
  }
  return out;
}

PitResult ingest_pit(const std::filesystem::path& path, char delimiter) {
  PitResult result{read_csv(path, delimiter), {}};
  if (result.data.rows.size() < kMinRows) {
    throw DomainError(path.string() + ": " + std::to_string(result.data.rows.size()) +
                      " usable rows, at least " + std::to_string(kMinRows) + " required");
  }
  result.pseudo = pseudo_observations(result.data.rows);
  return result;
}

double kendall_tau(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("kendall_tau: columns differ in length");
  const std::size_t n = x.size();
  if (n < 2) throw DomainError("kendall_tau: at least 2 observations required");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
  });
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = x[order[i]];
    ys[i] = y[order[i]];
  }
  const auto n0 = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
  const auto n1 = tied_pairs(n, [&](std::size_t a, std::size_t b) { return xs[a] == xs[b]; });
  const auto n3 = tied_pairs(
      n, [&](std::size_t a, std::size_t b) { return xs[a] == xs[b] && ys[a] == ys[b]; });
  std::vector<double> buf(n);
  const auto swaps = merge_count(ys, buf, 0, n);
  const auto n2 = tied_pairs(n, [&](std::size_t a, std::size_t b) { return ys[a] == ys[b]; });
  const double denom =
      std::sqrt(static_cast<double>(n0 - n1) * static_cast<double>(n0 - n2));
  if (denom == 0.0) throw DomainError("kendall_tau: constant column");
  return static_cast<double>(n0 - n1 - n2 + n3 - 2 * swaps) / denom;
}

TauFit fit_tau(std::span<const Point3> pseudo, const std::array<BicopFamily, 3>& families) {
  const auto u1 = column(pseudo, 0), u2 = column(pseudo, 1), u3 = column(pseudo, 2);
  TauFit fit;
  fit.tau[0] = kendall_tau(u1, u2);
  fit.tau[1] = kendall_tau(u2, u3);
  fit.spec.c12 = invert(families[0], fit.tau[0], "(1,2)");
  fit.spec.c23 = invert(families[1], fit.tau[1], "(2,3)");
  std::vector<double> a(pseudo.size()), b(pseudo.size());
  for (std::size_t i = 0; i < pseudo.size(); ++i) {
    a[i] = bicop::hfunc2(fit.spec.c12, u1[i], u2[i]);
    b[i] = bicop::hfunc1(fit.spec.c23, u2[i], u3[i]);
  }
  fit.tau[2] = kendall_tau(a, b);
  fit.spec.c13_2 = invert(families[2], fit.tau[2], "(1,3;2)");
  return fit;
}

void write_csv(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path.string());
  out << data.names[0] << ',' << data.names[1] << ',' << data.names[2] << '\n';
  for (const auto& r : data.rows)
    out << csv::format(r[0]) << ',' << csv::format(r[1]) << ',' << csv::format(r[2]) << '\n';
  if (!out) throw DomainError("failed writing " + path.string());
}

}  // namespace bmv::dataset

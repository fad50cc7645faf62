#include "fairscope/rank_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fairscope/error.hpp"

namespace fairscope {

std::vector<double> fractional_ranks(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && x[order[j]] == x[order[i]]) ++j;
    // Positions i..j-1 hold ranks i+1..j; their mean is (i+1+j)/2.
    const double avg = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    i = j;
  }
  return ranks;
}

namespace {

double pearson(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

bool is_constant(std::span<const double> x) {
  return std::adjacent_find(x.begin(), x.end(), std::not_equal_to<>()) == x.end();
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::LengthMismatch,
                "spearman inputs differ in length (" + std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
  }
  if (x.size() < 3) throw Error(ErrorKind::DegenerateInput, "spearman needs n >= 3, got " + std::to_string(x.size()));
  if (is_constant(x) || is_constant(y)) throw Error(ErrorKind::DegenerateInput, "spearman input is constant");
  const auto rx = fractional_ranks(x);
  const auto ry = fractional_ranks(y);
  return pearson(rx, ry);
}

std::optional<double> fisher_z_difference(double rho_a, std::size_t n_a, double rho_b, std::size_t n_b) {
  if (n_a <= 10 || n_b <= 10) return std::nullopt;
  constexpr double kCap = 1.0 - 1e-12;
  const double za = std::atanh(std::clamp(rho_a, -kCap, kCap));
  const double zb = std::atanh(std::clamp(rho_b, -kCap, kCap));
  const double var = 1.06 / static_cast<double>(n_a - 3) + 1.06 / static_cast<double>(n_b - 3);
  return (za - zb) / std::sqrt(var);
}

CorrelationReport summarize_correlations(double rho_all, double rho_a, std::size_t n_a, double rho_b,
                                         std::size_t n_b) {
  CorrelationReport rep;
  rep.rho_all = rho_all;
  rep.rho_a = rho_a;
  rep.rho_b = rho_b;
  rep.diff_a_minus_b = rho_a - rho_b;
  rep.z_stat = fisher_z_difference(rho_a, n_a, rho_b, n_b);
  rep.n_a = n_a;
  rep.n_b = n_b;
  return rep;
}

namespace {

double group_spearman(const std::vector<double>& truth, const std::vector<double>& pred,
                      std::span<const std::size_t> rows, const std::string& label) {
  try {
    return spearman(gather(pred, rows), gather(truth, rows));
  } catch (const Error& e) {
    throw Error(e.kind(), "group '" + label + "': " + e.detail());
  }
}

}  // namespace

CorrelationReport correlational_accuracy(const AuditTable& table, const GroupPartition& part) {
  const auto truth = table.truth_column();
  const auto pred = table.pred_column();
  const double rho_a = group_spearman(truth, pred, part.idx_a, part.group_a_label);
  const double rho_b = group_spearman(truth, pred, part.idx_b, part.group_b_label);
  const double rho_all = group_spearman(truth, pred, part.included_rows(), "all");
  return summarize_correlations(rho_all, rho_a, part.n_a(), rho_b, part.n_b());
}

}  // namespace fairscope

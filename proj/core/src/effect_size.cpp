#include "fairscope/effect_size.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fairscope/error.hpp"

namespace fairscope {

Moments sample_moments(std::span<const double> x) {
  // Welford update; deterministic for a fixed input order.
  Moments m;
  double m2 = 0.0;
  for (double v : x) {
    ++m.n;
    const double delta = v - m.mean;
    m.mean += delta / static_cast<double>(m.n);
    m2 += delta * (v - m.mean);
  }
  m.variance = m.n > 1 ? m2 / static_cast<double>(m.n - 1) : 0.0;
  return m;
}

namespace {

double pooled_from(const Moments& a, const Moments& b) {
  const double num = static_cast<double>(a.n - 1) * a.variance + static_cast<double>(b.n - 1) * b.variance;
  return std::sqrt(num / static_cast<double>(a.n + b.n - 2));
}

void require_two(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(ErrorKind::TooFewSamples, "cohen's d needs at least 2 values per group, got " +
                                              std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
}

}  // namespace

double pooled_sd(std::span<const double> a, std::span<const double> b) {
  require_two(a, b);
  return pooled_from(sample_moments(a), sample_moments(b));
}

double cohens_d(std::span<const double> a, std::span<const double> b) {
  require_two(a, b);
  const Moments ma = sample_moments(a);
  const Moments mb = sample_moments(b);
  const double s = pooled_from(ma, mb);
  if (!(s > 0.0)) throw Error(ErrorKind::ZeroPooledVariance, "pooled standard deviation is zero");
  return (ma.mean - mb.mean) / s;
}

EffectSizeReport summarize_effect_sizes(double d_true, double d_pred) {
  EffectSizeReport rep;
  rep.d_true = d_true;
  rep.d_pred = d_pred;
  rep.diff_true_minus_pred = d_true - d_pred;
  return rep;
}

namespace {

double labelled_d(std::span<const double> a, std::span<const double> b, const char* column) {
  try {
    return cohens_d(a, b);
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(column) + ": " + e.detail());
  }
}

}  // namespace

EffectSizeReport effect_size_difference(const AuditTable& table, const GroupPartition& part) {
  const auto truth = table.truth_column();
  const auto pred = table.pred_column();
  const auto ta = gather(truth, part.idx_a);
  const auto tb = gather(truth, part.idx_b);
  const auto pa = gather(pred, part.idx_a);
  const auto pb = gather(pred, part.idx_b);

  EffectSizeReport rep = summarize_effect_sizes(labelled_d(ta, tb, "y_true"), labelled_d(pa, pb, "y_pred"));
  rep.mean_a_true = sample_moments(ta).mean;
  rep.mean_b_true = sample_moments(tb).mean;
  rep.mean_a_pred = sample_moments(pa).mean;
  rep.mean_b_pred = sample_moments(pb).mean;
  rep.pooled_sd_true = pooled_sd(ta, tb);
  rep.pooled_sd_pred = pooled_sd(pa, pb);
  rep.sd_ratio_pred_over_true = rep.pooled_sd_pred / rep.pooled_sd_true;
  return rep;
}

RangeRestriction range_restriction(const AuditTable& table) {
  if (table.size() < 2) throw Error(ErrorKind::DegenerateInput, "range restriction needs at least 2 rows");
  const auto truth = table.truth_column();
  const auto pred = table.pred_column();
  RangeRestriction rr;
  const auto [tmin, tmax] = std::minmax_element(truth.begin(), truth.end());
  const auto [pmin, pmax] = std::minmax_element(pred.begin(), pred.end());
  rr.min_true = *tmin;
  rr.max_true = *tmax;
  rr.min_pred = *pmin;
  rr.max_pred = *pmax;
  rr.sd_true = std::sqrt(sample_moments(truth).variance);
  rr.sd_pred = std::sqrt(sample_moments(pred).variance);
  if (!(rr.sd_true > 0.0)) throw Error(ErrorKind::DegenerateInput, "ground truth has zero spread");
  rr.sd_ratio = rr.sd_pred / rr.sd_true;
  return rr;
}

}  // namespace fairscope

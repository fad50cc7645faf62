#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "fairscope/data.hpp"

namespace fairscope {

/// Generative model for synthetic audits. Latent construct t ~ N(mean_g, 1);
/// scores live on the scale through mid + unit * z with unit = (max - min) / 6.
///   y_true  = clamp(t + noise_sd * e1)
///   y_pred  = clamp(signal_weight * t * (attenuation if B) + shift * [B] + pred_noise_sd * e2)
///   rating  = clamp(y_true + unit * rater_noise_sd * e)       per rater
///   f_j     = 0.5 * t + w_j * [B] + e, w_1 = leaky_feature_weight, others 0
///   f_stratum uniform on {0, ..., n_strata - 1} when n_strata > 0
/// Contamination (construct-irrelevant, group-dependent) enters through
/// `contamination_shift_b`; deficiency (lost construct signal) through
/// `deficiency_attenuation_b`. Every generated real is rounded to 4 decimals.
struct SynthSpec {
  std::uint64_t seed = 1;
  std::size_t n_a = 2000;
  std::size_t n_b = 2000;
  std::string group_a_label = "a";
  std::string group_b_label = "b";
  std::string construct = "synthetic";
  ScoreScale scale{1.0, 7.0, true};
  double latent_mean_a = 0.0;
  double latent_mean_b = 0.0;
  double noise_sd = 0.5;
  double pred_noise_sd = 0.5;
  double signal_weight = 1.0;
  double contamination_shift_b = 0.0;
  double deficiency_attenuation_b = 1.0;
  std::size_t n_raters = 3;
  double rater_noise_sd = 0.5;
  std::size_t n_features = 2;
  double leaky_feature_weight = 0.0;
  std::size_t n_strata = 0;

  /// Throws InvalidSpec.
  void validate() const;
  bool operator==(const SynthSpec&) const = default;
};

struct SynthStats {
  std::size_t clamped_true = 0;
  std::size_t clamped_pred = 0;
  std::size_t clamped_ratings = 0;
};

AuditTable generate(const SynthSpec& spec, SynthStats* stats = nullptr);

/// Reads a spec from the flat key = value format (or its JSON encoding).
SynthSpec parse_synth_spec(std::string_view text);

/// FNV-1a 64-bit hash; used to pin fixture bytes.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace fairscope

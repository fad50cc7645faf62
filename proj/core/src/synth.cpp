#include "fairscope/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fairscope/config.hpp"
#include "fairscope/error.hpp"
#include "fairscope/rng.hpp"

namespace fairscope {

void SynthSpec::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidSpec, msg); };
  if (!(scale.min < scale.max) || !std::isfinite(scale.min) || !std::isfinite(scale.max)) {
    fail("scale requires finite min < max");
  }
  if (n_a < 1 || n_b < 1) fail("each group needs at least one subject");
  if (group_a_label.empty() || group_b_label.empty() || group_a_label == group_b_label) {
    fail("group labels must be non-empty and distinct");
  }
  if (!(noise_sd > 0.0) || !(pred_noise_sd > 0.0) || !(rater_noise_sd > 0.0)) fail("all noise SDs must be > 0");
  if (!(deficiency_attenuation_b > 0.0 && deficiency_attenuation_b <= 1.0)) {
    fail("deficiency_attenuation_b must lie in (0, 1]");
  }
  const double reals[] = {latent_mean_a, latent_mean_b, signal_weight, contamination_shift_b, leaky_feature_weight};
  for (double v : reals) {
    if (!std::isfinite(v)) fail("spec values must be finite");
  }
}

namespace {

// Rounds to 4 decimals via the printed text; reloads bit-identical.
double round4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  double out = *parse_real(buf);
  return out == 0.0 ? 0.0 : out;
}

}  // namespace

AuditTable generate(const SynthSpec& spec, SynthStats* stats) {
  spec.validate();
  CounterRng rng(spec.seed);
  SynthStats local;
  const double mid = 0.5 * (spec.scale.min + spec.scale.max);
  const double unit = (spec.scale.max - spec.scale.min) / 6.0;
  auto clamp = [&](double v, std::size_t& counter) {
    const double c = std::clamp(v, spec.scale.min, spec.scale.max);
    if (c != v) ++counter;
    return c;
  };

  AuditTable table;
  table.scale = spec.scale;
  table.construct_name = spec.construct;
  for (std::size_t j = 0; j < spec.n_raters; ++j) table.rater_ids.push_back("rater_" + std::to_string(j + 1));
  for (std::size_t j = 0; j < spec.n_features; ++j) table.feature_names.push_back("f_" + std::to_string(j + 1));
  if (spec.n_strata > 0) table.feature_names.push_back("f_stratum");

  const std::size_t n_total = spec.n_a + spec.n_b;
  const int width = static_cast<int>(std::to_string(n_total).size());
  table.records.reserve(n_total);
  for (std::size_t i = 0; i < n_total; ++i) {
    const bool in_b = i >= spec.n_a;
    SubjectRecord rec;
    char id[32];
    std::snprintf(id, sizeof(id), "s%0*zu", width, i + 1);
    rec.subject_id = id;
    rec.group = in_b ? spec.group_b_label : spec.group_a_label;

    // Draw order per subject is fixed: latent, truth noise, prediction noise,
    // raters, features, stratum.
    const double t = (in_b ? spec.latent_mean_b : spec.latent_mean_a) + rng.normal();
    const double truth_latent = t + spec.noise_sd * rng.normal();
    const double signal = spec.signal_weight * t * (in_b ? spec.deficiency_attenuation_b : 1.0);
    const double pred_latent = signal + (in_b ? spec.contamination_shift_b : 0.0) + spec.pred_noise_sd * rng.normal();
    rec.y_true = round4(clamp(mid + unit * truth_latent, local.clamped_true));
    rec.y_pred = round4(clamp(mid + unit * pred_latent, local.clamped_pred));
    for (std::size_t j = 0; j < spec.n_raters; ++j) {
      const double r = rec.y_true + unit * spec.rater_noise_sd * rng.normal();
      rec.ratings.emplace_back(round4(clamp(r, local.clamped_ratings)));
    }
    for (std::size_t j = 0; j < spec.n_features; ++j) {
      const double w = j == 0 ? spec.leaky_feature_weight : 0.0;
      rec.features.emplace_back(round4(0.5 * t + (in_b ? w : 0.0) + rng.normal()));
    }
    if (spec.n_strata > 0) {
      const auto s = static_cast<std::size_t>(rng.uniform() * static_cast<double>(spec.n_strata));
      rec.features.emplace_back(static_cast<double>(std::min(s, spec.n_strata - 1)));
    }
    table.records.push_back(std::move(rec));
  }
  if (stats) *stats = local;
  return table;
}

SynthSpec parse_synth_spec(std::string_view text) {
  SynthSpec spec;
  auto real = [](const std::string& k, const std::string& v) {
    auto r = parse_real(v);
    if (!r) throw Error(ErrorKind::InvalidSpec, "key '" + k + "' expects a number, got '" + v + "'");
    return *r;
  };
  auto count = [&](const std::string& k, const std::string& v) -> std::uint64_t {
    const double r = real(k, v);
    if (r < 0 || r != std::floor(r) || r > 1e15) {
      throw Error(ErrorKind::InvalidSpec, "key '" + k + "' expects a non-negative integer, got '" + v + "'");
    }
    return static_cast<std::uint64_t>(r);
  };
  KeyValueList kv;
  try {
    kv = parse_key_values(text);
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidSpec, e.what());
  }
  for (const auto& [k, v] : kv) {
    if (k == "seed") {
      // Seeds may exceed 2^53; parse as an integer directly.
      try {
        std::size_t pos = 0;
        spec.seed = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidSpec, "seed must be an unsigned integer, got '" + v + "'");
      }
    } else if (k == "n_per_group") spec.n_a = spec.n_b = count(k, v);
    else if (k == "n_a") spec.n_a = count(k, v);
    else if (k == "n_b") spec.n_b = count(k, v);
    else if (k == "group_a_label") spec.group_a_label = v;
    else if (k == "group_b_label") spec.group_b_label = v;
    else if (k == "construct") spec.construct = v;
    else if (k == "scale_min") spec.scale.min = real(k, v);
    else if (k == "scale_max") spec.scale.max = real(k, v);
    else if (k == "latent_mean_a") spec.latent_mean_a = real(k, v);
    else if (k == "latent_mean_b") spec.latent_mean_b = real(k, v);
    else if (k == "noise_sd") spec.noise_sd = real(k, v);
    else if (k == "pred_noise_sd") spec.pred_noise_sd = real(k, v);
    else if (k == "signal_weight") spec.signal_weight = real(k, v);
    else if (k == "contamination_shift_b") spec.contamination_shift_b = real(k, v);
    else if (k == "deficiency_attenuation_b") spec.deficiency_attenuation_b = real(k, v);
    else if (k == "n_raters") spec.n_raters = count(k, v);
    else if (k == "rater_noise_sd") spec.rater_noise_sd = real(k, v);
    else if (k == "n_features") spec.n_features = count(k, v);
    else if (k == "leaky_feature_weight") spec.leaky_feature_weight = real(k, v);
    else if (k == "n_strata") spec.n_strata = count(k, v);
    else throw Error(ErrorKind::InvalidSpec, "unknown synth key '" + k + "'");
  }
  spec.validate();
  return spec;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace fairscope

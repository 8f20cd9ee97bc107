#pragma once

// Residual statistics over a sample set and the biharmonic classification.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "biharm/jets.hpp"

namespace biharm {

enum class Verdict { kHarmonic, kQuasiHarmonic, kProperBiharmonic, kNotBiharmonic };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kHarmonic: return "harmonic";
    case Verdict::kQuasiHarmonic: return "quasi-harmonic";
    case Verdict::kProperBiharmonic: return "proper-biharmonic";
    case Verdict::kNotBiharmonic: return "not-biharmonic";
  }
  return "?";
}

inline Verdict verdict_from_string(const std::string& s) {
  for (Verdict v : {Verdict::kHarmonic, Verdict::kQuasiHarmonic, Verdict::kProperBiharmonic, Verdict::kNotBiharmonic})
    if (s == to_string(v)) return v;
  throw DomainError("unknown verdict '" + s + "'");
}

/// Too many samples hit singularities of the field.
class SamplingError : public Error {
 public:
  using Error::Error;
};

/// One sample's worth of operator values.
struct OperatorSample {
  double value = 0;
  double laplacian = 0;
  double bilaplacian = 0;
};

struct ResidualReport {
  std::size_t samples = 0;
  std::size_t excluded = 0;  // singular evaluations skipped
  double max_laplacian = 0;
  double mean_laplacian = 0;  // of |Delta f|
  double laplacian_average = 0;  // signed mean of Delta f
  double laplacian_stddev = 0;
  double min_abs_laplacian = 0;
  double max_bilaplacian = 0;
  double mean_bilaplacian = 0;
  double scale = 0;  // max |f|
  double tolerance = 0;
  double max_residual = 0;  // eigen / buckling residual, when one was requested
  Verdict verdict = Verdict::kNotBiharmonic;
};

/**
 * Verdict from sample statistics, with thresholds relative to (1 + scale):
 *   harmonic          max|Delta f| < tau (1 + scale)
 *   quasi-harmonic    Delta f constant (stddev < tau (1 + |mean|)), |mean| > 10 tau,
 *                     and max|Delta^2 f| < tau (1 + scale)
 *   proper            max|Delta^2 f| < tau (1 + scale), max|Delta f| > 10 tau (1 + scale)
 *   not-biharmonic    otherwise
 */
inline Verdict classify_statistics(const ResidualReport& r, double tau) {
  const double rel = tau * (1.0 + r.scale);
  if (r.max_laplacian < rel) return Verdict::kHarmonic;
  const bool bi = r.max_bilaplacian < rel;
  if (bi && r.laplacian_stddev < tau * (1.0 + std::abs(r.laplacian_average)) &&
      std::abs(r.laplacian_average) > 10 * tau)
    return Verdict::kQuasiHarmonic;
  if (bi && r.max_laplacian > 10 * rel) return Verdict::kProperBiharmonic;
  return Verdict::kNotBiharmonic;
}

/// Accumulates operator samples; the reduction runs in sample order so the
/// result is bit-for-bit reproducible.
inline ResidualReport summarize(const std::vector<OperatorSample>& s, std::size_t excluded, double tau) {
  if (s.empty()) throw SamplingError("no usable samples");
  ResidualReport r;
  r.samples = s.size();
  r.excluded = excluded;
  r.tolerance = tau;
  r.min_abs_laplacian = std::abs(s.front().laplacian);
  for (const auto& p : s) {
    r.scale = std::max(r.scale, std::abs(p.value));
    r.max_laplacian = std::max(r.max_laplacian, std::abs(p.laplacian));
    r.min_abs_laplacian = std::min(r.min_abs_laplacian, std::abs(p.laplacian));
    r.mean_laplacian += std::abs(p.laplacian);
    r.laplacian_average += p.laplacian;
    r.max_bilaplacian = std::max(r.max_bilaplacian, std::abs(p.bilaplacian));
    r.mean_bilaplacian += std::abs(p.bilaplacian);
  }
  const double n = static_cast<double>(s.size());
  r.mean_laplacian /= n;
  r.laplacian_average /= n;
  r.mean_bilaplacian /= n;
  double var = 0;
  for (const auto& p : s) var += (p.laplacian - r.laplacian_average) * (p.laplacian - r.laplacian_average);
  r.laplacian_stddev = std::sqrt(var / n);
  r.verdict = classify_statistics(r, tau);
  return r;
}

inline void to_json(nlohmann::json& j, const ResidualReport& r) {
  j = nlohmann::json{{"samples", r.samples},
                     {"excluded", r.excluded},
                     {"max_laplacian", r.max_laplacian},
                     {"mean_laplacian", r.mean_laplacian},
                     {"laplacian_average", r.laplacian_average},
                     {"laplacian_stddev", r.laplacian_stddev},
                     {"min_abs_laplacian", r.min_abs_laplacian},
                     {"max_bilaplacian", r.max_bilaplacian},
                     {"mean_bilaplacian", r.mean_bilaplacian},
                     {"scale", r.scale},
                     {"tolerance", r.tolerance},
                     {"max_residual", r.max_residual},
                     {"verdict", to_string(r.verdict)}};
}

}  // namespace biharm

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fringelab/parallel.hpp"
#include "fringelab/semiclassical.hpp"

namespace fringelab {
namespace {

// Fixed chunking keeps the sample stream independent of the worker count.
constexpr std::uint64_t kChunkSize = 1u << 16;

double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

ClassicalHistogram classical_envelope_oracle(int photons, HalfInteger m_psi, double phi,
                                             std::uint64_t samples, std::uint64_t seed,
                                             VectorLength length) {
  if (photons < 1) throw InvalidArgument("photon number N >= 1 violated");
  validate_half_difference(photons, m_psi, "m_psi");
  if (!std::isfinite(phi)) throw InvalidArgument("phase must be finite");
  if (samples < kMinClassicalSamples) {
    throw InvalidArgument("sample_count >= 10^4 violated: " + std::to_string(samples));
  }

  const double mp = m_psi.value();
  const double radius = std::sqrt(std::max(0.0, vector_length_squared(photons, length) - mp * mp));
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  const std::size_t bins = static_cast<std::size_t>(photons) + 1;
  const double top_edge = 0.5 * photons + 0.5;

  const std::uint64_t chunks = (samples + kChunkSize - 1) / kChunkSize;
  std::vector<std::vector<std::uint64_t>> partial(chunks, std::vector<std::uint64_t>(bins, 0));
  parallel_for(chunks, [&](std::size_t chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
    std::mt19937_64 rng(seq);
    const std::uint64_t begin = chunk * kChunkSize;
    const std::uint64_t end = std::min(samples, begin + kChunkSize);
    auto& counts = partial[chunk];
    for (std::uint64_t i = begin; i < end; ++i) {
      const double theta = 2.0 * std::numbers::pi * unit_interval(rng);
      const double j2 = radius * std::cos(theta);
      const double j_phi = c * mp - s * j2;
      // Bin k covers (N/2 - k - 1/2, N/2 - k + 1/2]; the end bins absorb the edges.
      const double position = std::floor(top_edge - j_phi);
      const auto k = static_cast<std::size_t>(std::clamp(position, 0.0, static_cast<double>(bins - 1)));
      ++counts[k];
    }
  });

  ClassicalHistogram hist;
  hist.photons = photons;
  hist.m_psi = m_psi;
  hist.phi = phi;
  hist.samples = samples;
  hist.seed = seed;
  hist.counts.assign(bins, 0);
  for (const auto& counts : partial) {
    for (std::size_t k = 0; k < bins; ++k) hist.counts[k] += counts[k];
  }
  const double n = static_cast<double>(samples);
  for (std::size_t k = 0; k < bins; ++k) {
    hist.m_values.push_back(HalfInteger::from_twice(photons - 2 * static_cast<int>(k)));
    const double p = static_cast<double>(hist.counts[k]) / n;
    hist.frequencies.push_back(p);
    hist.standard_errors.push_back(std::sqrt(p * (1.0 - p) / n));
  }
  return hist;
}

}  // namespace fringelab

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "canonical_height.hpp"
#include "height_bounds.hpp"
#include "numerics.hpp"
#include "projective.hpp"

namespace hdist {

// The finite sample standing in for P^N(Q-bar): every point with
// coordinates bounded by coord_bound, plus explicit extra points.
// Sampled heights only feed lower bounds, so they stop at a smaller size
// and report a wider interval instead of failing.
inline constexpr std::uint64_t kSampleBitCeiling = std::uint64_t{1} << 22;

struct SampleSpec {
    unsigned long coord_bound = 1;
    std::vector<ProjPoint> extra_points;
    mpq_class eps{1, 1000000};
    CanonicalHeightOptions options{.bit_ceiling = kSampleBitCeiling, .strict = false};
};

std::vector<ProjPoint> sample_points(std::size_t dim, const SampleSpec& spec);

struct DistanceEstimate {
    Dyadic lower;  // certified lower bound for the supremum
    Dyadic upper;  // certified upper bound
    ProjPoint witness;
    HeightInterval witness_gap;
    std::size_t sample_size = 0;
    Dyadic max_gap_width;   // widest pointwise interval seen
    bool all_eps_met = true;
};

enum class DistanceMode { delta_hat, Delta_hat, complexity };

// |h_phi(P) - h_psi(P)|
HeightInterval pointwise_gap(const CertifiedMap& phi, const CertifiedMap& psi, const ProjPoint& p,
                             const mpq_class& eps, const CanonicalHeightOptions& options = {},
                             CanonicalHeightCache* cache = nullptr);

// |(1/deg phi) h_psi(phi(P)) - h_psi(P)|
HeightInterval pointwise_dynamical_gap(const CertifiedMap& phi, const CertifiedMap& psi, const ProjPoint& p,
                                       const mpq_class& eps, const CanonicalHeightOptions& options = {},
                                       CanonicalHeightCache* cache = nullptr);

// Upper bounds from telescoping constants alone.
Dyadic delta_hat_upper(const CertifiedMap& phi, const CertifiedMap& psi);
Dyadic Delta_hat_upper(const CertifiedMap& phi, const CertifiedMap& psi);

// Lower bound = max over the sample of the pointwise lower endpoints;
// upper bound = telescoping constants. For complexity, psi is ignored and
// the power map of phi's degree is used.
DistanceEstimate sup_estimates(DistanceMode mode, const CertifiedMap& phi, const CertifiedMap* psi,
                               const SampleSpec& spec, CanonicalHeightCache* cache = nullptr);

DistanceEstimate estimate_delta_hat(const CertifiedMap& phi, const CertifiedMap& psi, const SampleSpec& spec,
                                    CanonicalHeightCache* cache = nullptr);
DistanceEstimate estimate_Delta_hat(const CertifiedMap& phi, const CertifiedMap& psi, const SampleSpec& spec,
                                    CanonicalHeightCache* cache = nullptr);
DistanceEstimate estimate_complexity(const CertifiedMap& phi, const SampleSpec& spec,
                                     CanonicalHeightCache* cache = nullptr);

}  // namespace hdist

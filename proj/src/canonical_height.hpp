#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "height_bounds.hpp"
#include "morphism.hpp"
#include "numerics.hpp"
#include "projective.hpp"

namespace hdist {

inline constexpr std::uint64_t kDefaultBitCeiling = std::uint64_t{1} << 26;
inline constexpr unsigned kDefaultPreperiodSteps = 256;

struct CanonicalHeightOptions {
    unsigned precision_bits = kDefaultPrecisionBits;
    // Abort (strict) or stop iterating (best effort) once an iterate's
    // coordinates would exceed this many bits.
    std::uint64_t bit_ceiling = kDefaultBitCeiling;
    unsigned preperiod_steps = kDefaultPreperiodSteps;
    // When false, a ceiling hit returns the widest certified interval
    // reachable below the ceiling instead of throwing resource_ceiling.
    bool strict = true;
};

struct CanonicalHeight {
    HeightInterval interval;
    unsigned iterations = 0;   // n in d^-n h(phi^n P)
    bool preperiodic = false;  // exact zero from an orbit revisit
    bool eps_met = true;       // width <= eps
};

// Certified enclosure of the canonical height via the Tate limit. With
// C = telescoping constant of the certificate, n is the least integer with
// C / (d^n (d-1)) <= eps/2, and the result is d^-n h(phi^n P) +- that tail.
// Requires d >= 2 and a verified certificate.
CanonicalHeight canonical_height(const CertifiedMap& phi, const ProjPoint& p, const mpq_class& eps,
                                 const CanonicalHeightOptions& options = {});

struct Preperiodicity {
    bool preperiodic = false;
    unsigned tail = 0;          // steps before entering the cycle
    unsigned cycle_length = 0;
    std::vector<ProjPoint> orbit;  // P, phi(P), ... up to the first repeat
};

// Iterates phi from P for at most max_steps steps and reports an exact
// repeat. With a height_ceiling (nats), iteration stops as soon as an
// iterate's height certainly exceeds it.
Preperiodicity preperiodicity_check(const Morphism& phi, const ProjPoint& p, unsigned max_steps,
                                    std::optional<Dyadic> height_ceiling = std::nullopt);

// Memoizes canonical heights per (map, point, eps) within one computation.
class CanonicalHeightCache {
public:
    const CanonicalHeight& get(const CertifiedMap& phi, const ProjPoint& p, const mpq_class& eps,
                               const CanonicalHeightOptions& options);
    std::size_t size() const noexcept { return entries_.size(); }

private:
    std::map<std::pair<std::string, std::string>, CanonicalHeight> entries_;
};

}  // namespace hdist

#include "distance.hpp"

#include <set>

#include "errors.hpp"

namespace hdist {

namespace {

constexpr unsigned kBoundBits = 64;

const CanonicalHeight& height_of(const CertifiedMap& phi, const ProjPoint& p, const mpq_class& eps,
                                 const CanonicalHeightOptions& options, CanonicalHeightCache* cache,
                                 std::optional<CanonicalHeight>& scratch) {
    if (cache) return cache->get(phi, p, eps, options);
    scratch = canonical_height(phi, p, eps, options);
    return *scratch;
}

// C / (d - 1), rounded up.
Dyadic height_difference_bound(const CertifiedMap& phi) {
    const unsigned d = phi.map.degree();
    if (d < 2) throw Error(ErrorKind::invalid_argument, "canonical heights need degree >= 2");
    return Dyadic::from_rational(phi.telescoping_constant().to_rational() / mpq_class(d - 1), kBoundBits,
                                 Rounding::up);
}

void require_same_space(const CertifiedMap& phi, const CertifiedMap& psi) {
    if (phi.map.dim() != psi.map.dim()) throw Error(ErrorKind::invalid_argument, "maps act on different spaces");
}

}  // namespace

std::vector<ProjPoint> sample_points(std::size_t dim, const SampleSpec& spec) {
    if (spec.coord_bound < 1 && spec.extra_points.empty()) {
        throw Error(ErrorKind::empty_sample, "sample bound must be at least 1");
    }
    std::vector<ProjPoint> points = enumerate_points(dim, spec.coord_bound);
    std::set<ProjPoint> present(points.begin(), points.end());
    for (const auto& p : spec.extra_points) {
        if (p.dim() != dim) throw Error(ErrorKind::invalid_argument, "extra sample point has wrong dimension");
        if (present.insert(p).second) points.push_back(p);
    }
    return points;
}

HeightInterval pointwise_gap(const CertifiedMap& phi, const CertifiedMap& psi, const ProjPoint& p,
                             const mpq_class& eps, const CanonicalHeightOptions& options,
                             CanonicalHeightCache* cache) {
    require_same_space(phi, psi);
    if (phi.map == psi.map) return HeightInterval::exact_zero();
    std::optional<CanonicalHeight> s1, s2;
    const auto& a = height_of(phi, p, eps, options, cache, s1);
    const auto& b = height_of(psi, p, eps, options, cache, s2);
    return interval::abs_diff(a.interval, b.interval);
}

HeightInterval pointwise_dynamical_gap(const CertifiedMap& phi, const CertifiedMap& psi, const ProjPoint& p,
                                       const mpq_class& eps, const CanonicalHeightOptions& options,
                                       CanonicalHeightCache* cache) {
    require_same_space(phi, psi);
    const ProjPoint image = evaluate(phi.map, p, 1).point;
    std::optional<CanonicalHeight> s1, s2;
    const auto& at_image = height_of(psi, image, eps, options, cache, s1);
    const auto& at_point = height_of(psi, p, eps, options, cache, s2);
    const mpq_class inv_degree(1, phi.map.degree());
    return interval::abs_diff(interval::scale(at_image.interval, inv_degree), at_point.interval);
}

Dyadic delta_hat_upper(const CertifiedMap& phi, const CertifiedMap& psi) {
    if (phi.map == psi.map) return Dyadic();
    return height_difference_bound(phi) + height_difference_bound(psi);
}

Dyadic Delta_hat_upper(const CertifiedMap& phi, const CertifiedMap& psi) {
    const unsigned d = phi.map.degree();
    const mpq_class inv_d(1, d);
    const mpq_class c_phi = phi.telescoping_constant().to_rational();
    // h_phi(phi P) = d h_phi(P) exactly.
    if (phi.map == psi.map) return Dyadic();
    if (psi.map.is_power_map()) {
        // h_psi = h and |h(phi P) - d h(P)| <= C_phi.
        return Dyadic::from_rational(c_phi * inv_d, kBoundBits, Rounding::up);
    }
    // Through h on both sides: C_phi/d + (1 + 1/d) C_psi/(d_psi - 1).
    const mpq_class psi_gap = height_difference_bound(psi).to_rational();
    return Dyadic::from_rational(c_phi * inv_d + (1 + inv_d) * psi_gap, kBoundBits, Rounding::up);
}

DistanceEstimate sup_estimates(DistanceMode mode, const CertifiedMap& phi, const CertifiedMap* psi,
                               const SampleSpec& spec, CanonicalHeightCache* cache) {
    std::optional<CertifiedMap> power;
    if (mode == DistanceMode::complexity) {
        power = certify(Morphism::power(phi.map.dim(), std::max(2u, phi.map.degree())));
        psi = &*power;
        mode = DistanceMode::delta_hat;
    }
    if (!psi) throw Error(ErrorKind::invalid_argument, "a second map is required");
    require_same_space(phi, *psi);
    if (sgn(spec.eps) <= 0) throw Error(ErrorKind::invalid_argument, "eps must be positive");

    const std::vector<ProjPoint> points = sample_points(phi.map.dim(), spec);
    if (points.empty()) throw Error(ErrorKind::empty_sample, "empty sample");

    CanonicalHeightCache local;
    CanonicalHeightCache& heights = cache ? *cache : local;

    std::optional<std::size_t> best;
    std::optional<HeightInterval> best_gap;
    Dyadic widest;
    bool all_met = true;
    for (std::size_t k = 0; k < points.size(); ++k) {
        HeightInterval gap = mode == DistanceMode::delta_hat
                                 ? pointwise_gap(phi, *psi, points[k], spec.eps, spec.options, &heights)
                                 : pointwise_dynamical_gap(phi, *psi, points[k], spec.eps, spec.options, &heights);
        const mpq_class allowed = mode == DistanceMode::delta_hat ? mpq_class(2 * spec.eps)
                                                                  : mpq_class(spec.eps * (1 + mpq_class(1, phi.map.degree())));
        if (compare(gap.width(), allowed) > 0) all_met = false;
        widest = max(widest, gap.width());
        if (!best_gap || best_gap->lo() < gap.lo()) {
            best = k;
            best_gap = gap;
        }
    }

    Dyadic upper = mode == DistanceMode::delta_hat ? delta_hat_upper(phi, *psi) : Delta_hat_upper(phi, *psi);
    if (upper < best_gap->lo()) {
        throw Error(ErrorKind::internal, "sampled lower bound exceeds certified upper bound");
    }
    return DistanceEstimate{best_gap->lo(), upper,      points[*best], *best_gap,
                            points.size(),  widest,     all_met};
}

DistanceEstimate estimate_delta_hat(const CertifiedMap& phi, const CertifiedMap& psi, const SampleSpec& spec,
                                    CanonicalHeightCache* cache) {
    return sup_estimates(DistanceMode::delta_hat, phi, &psi, spec, cache);
}

DistanceEstimate estimate_Delta_hat(const CertifiedMap& phi, const CertifiedMap& psi, const SampleSpec& spec,
                                    CanonicalHeightCache* cache) {
    return sup_estimates(DistanceMode::Delta_hat, phi, &psi, spec, cache);
}

DistanceEstimate estimate_complexity(const CertifiedMap& phi, const SampleSpec& spec, CanonicalHeightCache* cache) {
    return sup_estimates(DistanceMode::complexity, phi, nullptr, spec, cache);
}

}  // namespace hdist

#include "canonical_height.hpp"

#include <cmath>
#include <set>

#include "errors.hpp"

namespace hdist {

namespace {

std::uint64_t max_bits(const std::vector<mpz_class>& v) {
    std::uint64_t best = 0;
    for (const auto& x : v) {
        if (sgn(x) != 0) best = std::max<std::uint64_t>(best, mpz_sizeinbase(x.get_mpz_t(), 2));
    }
    return best;
}

mpz_class max_abs(const std::vector<mpz_class>& v) {
    mpz_class best = 0;
    for (const auto& x : v)
        if (cmpabs(x, best) > 0) best = abs(x);
    return best;
}

// One step of phi on a primitive vector. The gcd of the raw tuple divides
// lcm_j R_j, so it is found modulo that small number.
void step(const Morphism& phi, const mpz_class& gcd_modulus, std::vector<mpz_class>& current) {
    std::vector<mpz_class> raw = phi.evaluate_raw(current);
    mpz_class g = gcd_modulus;
    bool all_zero = true;
    for (const auto& v : raw) {
        if (sgn(v) != 0) all_zero = false;
        if (g != 1) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    if (all_zero) throw Error(ErrorKind::base_locus, "orbit entered the base locus");
    for (const auto& v : raw) {
        if (sgn(v) != 0) {
            if (sgn(v) < 0) g = -g;
            break;
        }
    }
    if (g != 1) {
        for (auto& v : raw) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
    current = std::move(raw);
}

}  // namespace

Preperiodicity preperiodicity_check(const Morphism& phi, const ProjPoint& p, unsigned max_steps,
                                    std::optional<Dyadic> height_ceiling) {
    if (max_steps < 1) throw Error(ErrorKind::invalid_argument, "max_steps must be at least 1");
    Preperiodicity out;
    std::map<ProjPoint, unsigned> seen;
    ProjPoint current = p;
    seen.emplace(current, 0);
    out.orbit.push_back(current);
    auto exceeds_ceiling = [&](const ProjPoint& q) {
        return height_ceiling && weil_height(q, 32).lo() > *height_ceiling;
    };
    if (exceeds_ceiling(current)) return out;
    for (unsigned n = 1; n <= max_steps; ++n) {
        current = evaluate(phi, current, 1).point;
        auto it = seen.find(current);
        if (it != seen.end()) {
            out.preperiodic = true;
            out.tail = it->second;
            out.cycle_length = n - it->second;
            return out;
        }
        seen.emplace(current, n);
        out.orbit.push_back(current);
        if (exceeds_ceiling(current)) return out;
    }
    return out;
}

CanonicalHeight canonical_height(const CertifiedMap& phi, const ProjPoint& p, const mpq_class& eps,
                                 const CanonicalHeightOptions& options) {
    const Morphism& map = phi.map;
    const unsigned d = map.degree();
    if (d < 2) throw Error(ErrorKind::invalid_argument, "canonical heights need degree >= 2");
    if (map.status() != MorphismStatus::verified) {
        throw Error(ErrorKind::unverified_morphism, "canonical heights need a verified morphism");
    }
    if (sgn(eps) <= 0) throw Error(ErrorKind::invalid_argument, "eps must be positive");
    if (p.dim() != map.dim()) throw Error(ErrorKind::invalid_argument, "point dimension does not match map");

    const Dyadic c = phi.telescoping_constant();
    const mpq_class c_rat = c.to_rational();
    const mpq_class d_minus_one(d - 1);

    // |h_hat - h| <= C/(d-1) everywhere, so an orbit staying under that
    // height is the only candidate for a preperiodic one.
    const Dyadic orbit_ceiling = Dyadic::from_rational(c_rat / d_minus_one, 64, Rounding::up);
    Preperiodicity pre = preperiodicity_check(map, p, options.preperiod_steps, orbit_ceiling);
    if (pre.preperiodic) return {HeightInterval::exact_zero(), 0, true, true};

    unsigned target = 0;
    mpq_class tail = c_rat / d_minus_one;
    // eps/2 per side, less an eighth of eps reserved for log rounding.
    const mpq_class tail_budget = eps * mpq_class(7, 16);
    while (tail > tail_budget) {
        tail /= d;
        ++target;
    }

    std::vector<mpz_class> current = p.coords();
    unsigned done = 0;
    const std::uint64_t growth_bits = mpz_sizeinbase(phi.cert.row_sum_factor.get_mpz_t(), 2) + 1;
    for (; done < target; ++done) {
        const std::uint64_t next_bits = max_bits(current) * d + growth_bits;
        if (next_bits > options.bit_ceiling) {
            if (options.strict) {
                throw Error(ErrorKind::resource_ceiling,
                            "iterate " + std::to_string(done + 1) + " would need about " +
                                std::to_string(next_bits) + " bits, above the ceiling of " +
                                std::to_string(options.bit_ceiling));
            }
            break;
        }
        step(map, phi.cert.lcm_r, current);
    }

    mpz_class d_pow = ipow(mpz_class(d), done);
    mpq_class tail_n = c_rat / (d_minus_one * mpq_class(d_pow));
    tail_n.canonicalize();
    const Dyadic tail_up = Dyadic::from_rational(tail_n, 64, Rounding::up);
    const mpz_class height = max_abs(current);
    const mpq_class inv_scale(mpz_class(1), d_pow);

    // Working precision large enough that the log rounding, shrunk by d^n,
    // fits in the half of eps the tail leaves free.
    const double est = static_cast<double>(max_bits(current)) / std::pow(static_cast<double>(d), done) + 1.0;
    const double eps_d = std::max(eps.get_d(), 1e-300);
    unsigned work = std::max<unsigned>(options.precision_bits,
                                       static_cast<unsigned>(std::ceil(std::log2(est / eps_d))) + 8);

    HeightInterval result;
    const Dyadic eps_dyadic = Dyadic::from_rational(eps, 64, Rounding::down);
    for (int attempt = 0;; ++attempt) {
        HeightInterval h = log_enclosure(height, work);
        HeightInterval scaled = interval::scale(h, inv_scale, work + 8);
        result = interval::widen(scaled, tail_up);
        if (result.lo().sign() < 0 && result.hi().sign() >= 0) result = {Dyadic(), result.hi()};
        if (done < target || result.width() <= eps_dyadic || attempt >= 8) break;
        work += 64;
    }
    CanonicalHeight out{result, done, false, done == target && result.width() <= eps_dyadic};
    if (options.strict && !out.eps_met) {
        throw Error(ErrorKind::resource_ceiling, "could not reach the requested eps");
    }
    return out;
}

const CanonicalHeight& CanonicalHeightCache::get(const CertifiedMap& phi, const ProjPoint& p,
                                                 const mpq_class& eps, const CanonicalHeightOptions& options) {
    std::string map_key = std::to_string(phi.map.dim()) + "/" + std::to_string(phi.map.degree()) + "/" +
                          eps.get_str() + "/" + std::to_string(options.precision_bits) + "/" +
                          std::to_string(options.bit_ceiling) + (options.strict ? "s" : "b");
    for (const auto& c : phi.map.coefficient_point()) map_key += "," + c.get_str();
    auto key = std::make_pair(std::move(map_key), p.to_string());
    auto it = entries_.find(key);
    if (it != entries_.end()) return it->second;
    return entries_.emplace(std::move(key), canonical_height(phi, p, eps, options)).first->second;
}

}  // namespace hdist

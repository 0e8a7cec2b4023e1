// Runs the eight acceptance criteria and prints one PASS/FAIL line each.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "canonical_height.hpp"
#include "conjugation.hpp"
#include "distance.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "interpolation.hpp"
#include "oracles.hpp"

using namespace hdist;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) detail = what;
        ok = ok && cond;
    }
};

ProjPoint pt(std::initializer_list<long> c) { return ProjPoint::normalize(c); }

mpz_class random_int(std::mt19937_64& rng, long lo, long hi) { return oracle::random_int(rng, lo, hi); }

std::vector<std::vector<mpz_class>> sylvester(const std::vector<mpz_class>& f, const std::vector<mpz_class>& g) {
    const std::size_t d = f.size() - 1;
    std::vector<std::vector<mpz_class>> s(2 * d, std::vector<mpz_class>(2 * d, 0));
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t k = 0; k <= d; ++k) {
            s[r][r + k] = f[k];
            s[d + r][r + k] = g[k];
        }
    return s;
}

bool resultant_nonzero(const Morphism& phi) {
    return oracle::leibniz_det(sylvester(phi.coeffs()[0], phi.coeffs()[1])) != 0;
}

CertifiedMap random_morphism(std::mt19937_64& rng, unsigned d, long bound) {
    for (;;) {
        std::vector<std::vector<mpz_class>> coeffs(2, std::vector<mpz_class>(d + 1));
        for (auto& r : coeffs)
            for (auto& c : r) c = random_int(rng, -bound, bound);
        if (coeffs[0] == std::vector<mpz_class>(d + 1, 0)) continue;
        const Morphism phi(1, d, coeffs);
        if (resultant_nonzero(phi)) return certify(phi);
    }
}

PglMap random_pgl(std::mt19937_64& rng, std::size_t dim, long bound) {
    for (;;) {
        IntMatrix m(dim + 1, dim + 1);
        for (std::size_t r = 0; r <= dim; ++r)
            for (std::size_t c = 0; c <= dim; ++c) m(r, c) = random_int(rng, -bound, bound);
        if (determinant(m) != 0) return PglMap(m);
    }
}

std::vector<ProjPoint> random_points(std::mt19937_64& rng, std::size_t dim, std::size_t count, long bound) {
    std::set<ProjPoint> seen;
    std::vector<ProjPoint> out;
    while (out.size() < count) {
        std::vector<mpz_class> c(dim + 1);
        bool zero = true;
        for (auto& v : c) {
            v = random_int(rng, -bound, bound);
            zero = zero && v == 0;
        }
        if (zero) continue;
        auto p = ProjPoint::normalize(std::span<const mpz_class>(c));
        if (seen.insert(p).second) out.push_back(p);
    }
    return out;
}

const mpq_class kEps(1, 1000000);

Outcome power_map_exactness() {
    Outcome out;
    const auto points = enumerate_points(1, 2);
    out.require(points.size() == 8, "expected 8 points");
    for (unsigned d : {2u, 3u}) {
        const auto phi = certify(Morphism::power(1, d));
        for (const auto& p : points) {
            const auto h = canonical_height(phi, p, mpq_class(1, 1000000000));
            out.require(compare(h.interval.width(), mpq_class(1, 1000000000)) <= 0, "width above 1e-9");
            out.require(oracle::encloses(h.interval, oracle::log_of(p.naive_height())),
                        "interval misses h(P) at " + p.to_string());
            const auto image = evaluate(phi.map, p);
            out.require(image.point.naive_height() == ipow(p.naive_height(), d), "H(phi P) != H(P)^d");
        }
        SampleSpec spec;
        spec.coord_bound = 2;
        const auto e = estimate_Delta_hat(phi, phi, spec);
        out.require(e.upper.is_zero(), "Delta_hat upper not exactly 0");
        out.require(estimate_complexity(phi, spec).upper.is_zero(), "complexity upper not exactly 0");
    }
    return out;
}

Outcome preperiodic_zero() {
    Outcome out;
    const auto phi = certify(Morphism::from_text(1, 2, {"x^2 - y^2", "y^2"}));
    const auto h = canonical_height(phi, pt({0, 1}), kEps);
    out.require(h.preperiodic && h.interval.is_exact_zero(), "[x^2-y^2 : y^2] at [0:1]");
    for (long a : {1L, 2L, 7L, -3L, 100L, 1000L}) {
        const auto ha = canonical_height(certify(Morphism::phi_a(2, a)), pt({0, 1}), kEps);
        out.require(ha.preperiodic && ha.interval.is_exact_zero(), "phi_A at [0:1], A=" + std::to_string(a));
    }
    return out;
}

Outcome certificate_sweep() {
    Outcome out;
    const std::vector<Morphism> maps{Morphism::power(1, 2), Morphism::power(1, 3),
                                     Morphism::from_text(1, 2, {"x^2 + y^2", "x*y"}), Morphism::phi_a(2, 7),
                                     Morphism::power(2, 2)};
    std::size_t checked = 0, violations = 0;
    for (const auto& phi : maps) {
        const auto cert = find_certificate(phi);
        verify_certificate(phi, cert);
        for (const auto& p : enumerate_points(phi.dim(), phi.dim() == 1 ? 50 : 10)) {
            ++checked;
            if (!check_offsets_at(phi, cert, p).all()) ++violations;
        }
    }
    out.require(violations == 0, std::to_string(violations) + " violations");
    out.detail = out.ok ? std::to_string(checked) + " point checks, 0 violations" : out.detail;
    return out;
}

struct SampledSup {
    Dyadic lo, hi;
};

// Pointwise gaps over the fixed sample, with the S-restricted sup.
SampledSup sampled_gap(const CertifiedMap& a, const CertifiedMap& b, const std::vector<ProjPoint>& sample,
                       const SampleSpec& spec, std::vector<HeightInterval>& gaps, CanonicalHeightCache& cache) {
    SampledSup s;
    gaps.clear();
    for (const auto& p : sample) {
        gaps.push_back(pointwise_gap(a, b, p, spec.eps, spec.options, &cache));
        if (s.lo < gaps.back().lo()) s.lo = gaps.back().lo();
        if (s.hi < gaps.back().hi()) s.hi = gaps.back().hi();
    }
    return s;
}

Outcome sandwich_and_triangle() {
    Outcome out;
    std::mt19937_64 rng(2024);
    SampleSpec spec;
    spec.coord_bound = 2;
    spec.eps = kEps;
    const auto sample = sample_points(1, spec);
    std::size_t pairs = 0, triples = 0;
    for (int k = 0; k < 20; ++k) {
        const auto phi = random_morphism(rng, 2 + k % 2, 5);
        const auto psi = random_morphism(rng, 2 + (k / 2) % 2, 5);
        const auto small = estimate_delta_hat(phi, psi, spec);
        const auto big = estimate_Delta_hat(phi, psi, spec);
        const mpq_class d(phi.map.degree());
        out.require(small.lower <= small.upper && big.lower <= big.upper, "lower above upper");
        out.require(mpq_class(big.lower.to_rational() * d / (d + 1)) <= small.upper.to_rational(),
                    "d/(d+1) Delta.lower > delta.upper");
        out.require(small.lower.to_rational() <= mpq_class(big.upper.to_rational() * d / (d - 1)),
                    "delta.lower > d/(d-1) Delta.upper");
        ++pairs;
    }
    const Dyadic tolerance = Dyadic::from_rational(6 * kEps, 64, Rounding::up);
    for (int k = 0; k < 20; ++k) {
        const auto phi = random_morphism(rng, 2 + k % 2, 5);
        const auto nu = random_morphism(rng, 2 + (k / 2) % 2, 5);
        const auto psi = random_morphism(rng, 2, 5);
        CanonicalHeightCache cache;
        std::vector<HeightInterval> g_ab, g_an, g_nb;
        const auto ab = sampled_gap(phi, psi, sample, spec, g_ab, cache);
        const auto an = sampled_gap(phi, nu, sample, spec, g_an, cache);
        const auto nb = sampled_gap(nu, psi, sample, spec, g_nb, cache);
        for (std::size_t i = 0; i < sample.size(); ++i)
            out.require(g_ab[i].lo() <= g_an[i].hi() + g_nb[i].hi(), "pointwise triangle at " + sample[i].to_string());
        out.require(ab.lo <= an.hi + nb.hi + tolerance, "sampled sup triangle");
        out.require(ab.lo <= an.lo + nb.lo + tolerance, "sampled sup triangle within 6 eps");
        ++triples;
    }
    if (out.ok) out.detail = std::to_string(pairs) + " pairs, " + std::to_string(triples) + " triples";
    return out;
}

Outcome interpolation() {
    Outcome out;
    std::mt19937_64 rng(77);
    int round_trips = 0;
    while (round_trips < 200) {
        const bool plane = round_trips % 4 == 3;
        const std::size_t dim = plane ? 2 : 1;
        const unsigned d = plane ? 2 : 1 + round_trips % 4;
        std::vector<std::vector<mpz_class>> coeffs(dim + 1, std::vector<mpz_class>(monomial_count(dim, d)));
        for (auto& r : coeffs)
            for (auto& c : r) c = random_int(rng, -9, 9);
        coeffs[0][0] = 1;
        const Morphism phi(dim, d, coeffs);
        const std::size_t k = monomial_count(dim, d);
        const auto points = random_points(rng, dim, k + 1, 5);
        std::vector<PointValue> pairs;
        bool usable = true;
        for (const auto& p : points) {
            pairs.push_back({p, phi.evaluate_raw(p.coords())});
            bool zero = true;
            for (const auto& v : pairs.back().value) zero = zero && v == 0;
            usable = usable && !zero;
        }
        if (!usable || monomial_matrix(dim, d, {points.begin(), points.begin() + static_cast<long>(k)}).degenerate())
            continue;
        out.require(recover_map(dim, d, pairs) == phi, "round trip failed");
        ++round_trips;
    }
    for (int trial = 0; trial < 100; ++trial) {
        const unsigned d = 1 + trial % 4;
        const auto points = random_points(rng, 1, d + 1, 7);
        mpz_class product = 1;
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i + 1; j < points.size(); ++j)
                product *= points[i].coords()[0] * points[j].coords()[1] - points[j].coords()[0] * points[i].coords()[1];
        out.require(abs(monomial_matrix(1, d, points).det) == abs(product), "Vandermonde mismatch");
    }
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t dim = 1 + trial % 2;
        const unsigned d = dim == 1 ? 2 + trial % 3 : 2;
        const std::size_t k = monomial_count(dim, d);
        std::vector<std::vector<mpz_class>> coords;
        for (const auto& p : random_points(rng, dim, k, 4)) coords.push_back(p.coords());
        const mpz_class base = determinant(monomial_rows(dim, d, coords));
        for (long lambda : {2L, 3L, -2L}) {
            auto scaled = coords;
            for (auto& c : scaled[rng() % k]) c *= lambda;
            out.require(determinant(monomial_rows(dim, d, scaled)) == ipow(mpz_class(lambda), d) * base,
                        "multihomogeneity");
        }
    }
    const auto scan = prop9_scan(Morphism::phi_a(2, 7), 3, 500, 1);
    out.require(scan.configurations == 500, "fewer than 500 configurations");
    out.require(scan.worst.size() == 3, "no worst configuration");
    if (out.ok) {
        out.detail = "200 round trips; max(-slack) over 500 configurations = " + upper_text(scan.max_negative_slack);
    }
    return out;
}

Outcome phi_a_reproduction() {
    Outcome out;
    const std::vector<mpz_class> as{10, 100, 1000};
    ExperimentConfig config;
    const auto report = phi_a_experiment(2, as, config);
    const auto col = [&](const std::string& name) {
        for (std::size_t i = 0; i < report.columns.size(); ++i)
            if (report.columns[i] == name) return i;
        throw Error(ErrorKind::internal, "missing column " + name);
    };
    for (std::size_t i = 0; i < as.size(); ++i) {
        const auto& row = report.rows[i];
        const auto log_a = oracle::log_of(as[i]);
        out.require(oracle::encloses(naive_height(Morphism::phi_a(2, as[i])), log_a), "h(phi_A)");
        const HeightInterval h(Dyadic::from_rational(parse_rational(row[col("h_phi_lo")]), 128, Rounding::down),
                               Dyadic::from_rational(parse_rational(row[col("h_phi_hi")]), 128, Rounding::up));
        out.require(oracle::encloses(h, log_a), "reported h(phi_A) misses log A");
        const ProjPoint witness = ProjPoint::normalize(std::vector<mpz_class>{-as[i], 1});
        for (const char* which : {"Delta", "delta"}) {
            const std::string w = std::string(which);
            out.require(ProjPoint::parse(row[col(w + "_witness")]) == witness, w + " witness");
            out.require(oracle::big_of(parse_rational(row[col(w + "_lower")])) >= log_a - oracle::Big("1e-6"),
                        w + " lower below log A - 1e-6");
        }
        const oracle::Big claimed = boost::multiprecision::log(oracle::big_of(mpz_class(as[i] + 1))) / 2;
        out.require(abs(oracle::big_of(parse_rational(row[col("claimed_hi")])) - claimed) < oracle::Big("1e-15"),
                    "claimed bound column");
        out.require(!row[col("discrepancy")].empty(), "discrepancy column");
    }
    if (out.ok) {
        out.detail = "discrepancies flagged: " + report.summary["discrepancies"].dump() + " of 3";
    }
    return out;
}

Outcome conjugation_identities() {
    Outcome out;
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const auto phi = random_morphism(rng, 2, 3);
        const auto f = random_pgl(rng, 1, 3);
        const auto conj = certify(conjugate(phi.map, f));
        const auto p = random_points(rng, 1, 1, 3)[0];
        const auto a = canonical_height(conj, p, mpq_class(1, 10000)).interval;
        const auto b = canonical_height(phi, f.apply(p), mpq_class(1, 10000)).interval;
        out.require(a.overlaps(b), "h_{phi^f}(P) and h_phi(f P) disjoint");
        out.require(conjugate(conj.map, f.inverse()) == phi.map, "conjugate back is not phi");
    }
    SampleSpec spec;
    spec.coord_bound = 2;
    spec.eps = kEps;
    for (int trial = 0; trial < 3; ++trial) {
        const auto phi = random_morphism(rng, 2, 3);
        const auto g = random_pgl(rng, 1, 1);
        const auto psi = certify(conjugate(phi.map, g));
        const auto search = class_distance_search(phi, psi, 1, spec);
        out.require(search.table[search.best].estimate.lower.is_zero(), "best candidate lower bound not 0");
        bool found = false;
        for (const auto& row : search.table) found = found || (row.f == g && row.estimate.lower.is_zero());
        out.require(found, "g not found with lower bound 0");
    }
    if (out.ok) out.detail = "50 random triples, 3 class searches";
    return out;
}

Outcome finiteness() {
    Outcome out;
    const auto psi = Morphism::power(1, 2);
    const auto report = finiteness_search(1, 2, psi, 1, mpq_class(5), ExperimentConfig{});
    std::size_t oracle_morphisms = 0;
    const std::size_t candidates = report.rows.size();
    const std::size_t k = monomial_count(1, 2);
    const mpq_class scale(static_cast<long>(k * 3));
    const mpq_class c_psi = parse_rational(report.summary["C_psi_measured"].get<std::string>());
    const mpq_class c_prime = parse_rational(report.summary["C_prime_measured"].get<std::string>());
    for (const auto& row : report.rows) {
        const auto phi = parse_map(row[1]);
        const bool morphism = resultant_nonzero(phi);
        if (morphism) ++oracle_morphisms;
        out.require((row[2] == "verified") == morphism, "status disagrees with the resultant for " + row[1]);
        if (!morphism) continue;
        const mpq_class h_lo = parse_rational(row[3]), h_hi = parse_rational(row[4]);
        const mpq_class lower = parse_rational(row[5]), upper = parse_rational(row[6]);
        out.require(h_lo <= scale * upper + c_psi, "height comparison for " + row[1]);
        out.require(lower <= h_hi + c_prime, "distance comparison for " + row[1]);
    }
    out.require(candidates == 364, "candidate count");
    out.require(report.summary["morphisms"].get<std::size_t>() == oracle_morphisms, "morphism count");
    out.require(report.summary["non_morphisms"].get<std::size_t>() == candidates - oracle_morphisms,
                "non-morphism count");
    if (out.ok) {
        out.detail = std::to_string(oracle_morphisms) + " morphisms, " + std::to_string(candidates - oracle_morphisms) +
                     " non-morphisms";
    }
    return out;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double limit_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"power-map exactness", 5, power_map_exactness},
        {"preperiodic zero", 1, preperiodic_zero},
        {"certificate soundness sweep", 60, certificate_sweep},
        {"sandwich and triangle suites", 600, sandwich_and_triangle},
        {"interpolation", 300, interpolation},
        {"phi_A reproduction", 120, phi_a_reproduction},
        {"conjugation identities", 600, conjugation_identities},
        {"finiteness search", 900, finiteness},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criteria[i].run();
        } catch (const std::exception& e) {
            outcome.ok = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (outcome.ok && seconds >= criteria[i].limit_seconds) {
            outcome.ok = false;
            outcome.detail = "over the time limit of " + std::to_string(criteria[i].limit_seconds) + " s";
        }
        if (!outcome.ok) ++failures;
        std::printf("%s %zu %s (%.2f s)%s%s\n", outcome.ok ? "PASS" : "FAIL", i + 1, criteria[i].name, seconds,
                    outcome.detail.empty() ? "" : ": ", outcome.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}

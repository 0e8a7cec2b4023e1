#include <doctest.h>

#include <random>

#include "canonical_height.hpp"
#include "conjugation.hpp"
#include "errors.hpp"
#include "oracles.hpp"

using namespace hdist;

namespace {

ProjPoint pt(std::initializer_list<long> c) { return ProjPoint::normalize(c); }

const mpq_class kEps(1, 1000000);

PglMap random_pgl(std::mt19937_64& rng, std::size_t dim, long bound) {
    for (;;) {
        IntMatrix m(dim + 1, dim + 1);
        for (std::size_t r = 0; r <= dim; ++r)
            for (std::size_t c = 0; c <= dim; ++c) m(r, c) = oracle::random_int(rng, -bound, bound);
        if (determinant(m) != 0) return PglMap(m);
    }
}

CertifiedMap random_morphism(std::mt19937_64& rng, unsigned d, long bound) {
    for (;;) {
        std::vector<std::vector<mpz_class>> coeffs(2, std::vector<mpz_class>(d + 1));
        for (auto& r : coeffs)
            for (auto& c : r) c = oracle::random_int(rng, -bound, bound);
        coeffs[0][0] = 1 + oracle::random_int(rng, 0, bound - 1);
        const Morphism phi(1, d, coeffs);
        if (!oracle::binary_forms_share_zero(phi.coeffs()[0], phi.coeffs()[1])) return certify(phi);
    }
}

}  // namespace

TEST_CASE("conjugation examples") {
    const auto power = Morphism::power(1, 2);
    CHECK(conjugate(power, PglMap::identity(1)) == power);
    CHECK(conjugate(power, PglMap::parse("1,1;0,1")) == Morphism::from_text(1, 2, {"x^2 + 2*x*y", "y^2"}));
    try {
        PglMap::parse("1,1;1,1");
        FAIL("expected singular_matrix");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::singular_matrix);
    }
    CHECK(PglMap::parse("1,1;0,1").inverse() == PglMap::parse("1,-1;0,1"));
    CHECK(PglMap::parse("-2,0;0,-4") == PglMap::parse("1,0;0,2"));
}

TEST_CASE("PGL composition and action") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 40; ++trial) {
        const auto f = random_pgl(rng, 1, 3), g = random_pgl(rng, 1, 3);
        for (const auto& p : enumerate_points(1, 2)) {
            CHECK((f * g).apply(p) == f.apply(g.apply(p)));
            CHECK(f.inverse().apply(f.apply(p)) == p);
        }
        CHECK(f * f.inverse() == PglMap::identity(1));
    }
}

TEST_CASE("conjugating back is exactly the identity") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dim = trial % 5 == 4 ? 2 : 1;
        std::vector<std::vector<mpz_class>> coeffs(dim + 1, std::vector<mpz_class>(monomial_count(dim, 2)));
        for (auto& r : coeffs)
            for (auto& c : r) c = oracle::random_int(rng, -3, 3);
        coeffs[0][0] = 1;
        const Morphism phi(dim, 2, coeffs);
        const auto f = random_pgl(rng, dim, 3);
        CHECK(conjugate(conjugate(phi, f), f.inverse()) == phi);
        const auto g = random_pgl(rng, dim, 3);
        CHECK(conjugate(conjugate(phi, f), g) == conjugate(phi, f * g));
    }
}

TEST_CASE("conjugate acts as f^-1 phi f on points") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        const auto phi = random_morphism(rng, 2, 3);
        const auto f = random_pgl(rng, 1, 3);
        const auto conj = conjugate(phi.map, f);
        CHECK(conj.status() == MorphismStatus::verified);
        for (const auto& p : enumerate_points(1, 2))
            CHECK(evaluate(conj, p).point == f.inverse().apply(evaluate(phi.map, f.apply(p)).point));
    }
}

TEST_CASE("canonical height transforms under conjugation") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 12; ++trial) {
        const auto phi = random_morphism(rng, 2, 3);
        const auto f = random_pgl(rng, 1, 3);
        const auto conj = certify(conjugate(phi.map, f));
        const auto p = enumerate_points(1, 3)[rng() % enumerate_points(1, 3).size()];
        const auto a = canonical_height(conj, p, mpq_class(1, 10000)).interval;
        const auto b = canonical_height(phi, f.apply(p), mpq_class(1, 10000)).interval;
        CHECK(a.overlaps(b));
    }
}

TEST_CASE("PGL enumeration") {
    const auto all = enumerate_pgl(1, 1);
    // the nonsingular {-1,0,1} 2x2 matrices up to sign
    CHECK(all.size() == 24);
    CHECK(std::find(all.begin(), all.end(), PglMap::identity(1)) != all.end());
    for (std::size_t i = 0; i + 1 < all.size(); ++i) CHECK_FALSE(all[i] == all[i + 1]);
}

TEST_CASE("class distance search") {
    SampleSpec spec;
    spec.coord_bound = 2;
    spec.eps = kEps;
    const auto power = certify(Morphism::power(1, 2));
    const auto same = class_distance_search(power, power, 1, spec);
    CHECK(same.table.size() == 24);
    const auto& best = same.table[same.best];
    CHECK(best.estimate.lower.is_zero());
    bool identity_zero = false;
    for (const auto& row : same.table)
        if (row.f == PglMap::identity(1)) identity_zero = row.estimate.lower.is_zero() && row.estimate.upper.is_zero();
    CHECK(identity_zero);

    const auto phi = certify(Morphism::phi_a(2, 2));
    const auto g = PglMap::parse("1,1;0,1");
    const auto psi = certify(conjugate(phi.map, g));
    const auto found = class_distance_search(phi, psi, 1, spec);
    bool hit = false;
    for (const auto& row : found.table)
        if (row.f == g) hit = row.estimate.lower.is_zero() && row.estimate.upper.is_zero();
    CHECK(hit);
    CHECK(found.table[found.best].estimate.lower.is_zero());
    const auto wider = class_distance_search(phi, psi, 2, spec);
    CHECK(wider.table.size() > found.table.size());
    CHECK(wider.table[wider.best].estimate.upper <= found.table[found.best].estimate.upper);
}

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "errors.hpp"
#include "interpolation.hpp"
#include "oracles.hpp"

using namespace hdist;

namespace {

ProjPoint pt(std::initializer_list<long> c) { return ProjPoint::normalize(c); }

// x^d, x^(d-1) y, ..., y^d at (x, y), written out directly.
std::vector<mpz_class> binary_row(const mpz_class& x, const mpz_class& y, unsigned d) {
    std::vector<mpz_class> r;
    for (unsigned k = 0; k <= d; ++k) {
        mpz_class xp, yp;
        mpz_pow_ui(xp.get_mpz_t(), x.get_mpz_t(), d - k);
        mpz_pow_ui(yp.get_mpz_t(), y.get_mpz_t(), k);
        r.push_back(xp * yp);
    }
    return r;
}

std::vector<std::vector<mpz_class>> to_rows(const IntMatrix& m) {
    std::vector<std::vector<mpz_class>> out;
    for (std::size_t r = 0; r < m.rows(); ++r) out.emplace_back(m.row(r).begin(), m.row(r).end());
    return out;
}

std::vector<ProjPoint> random_points(std::mt19937_64& rng, std::size_t dim, std::size_t count, long bound) {
    std::set<ProjPoint> seen;
    std::vector<ProjPoint> out;
    while (out.size() < count) {
        std::vector<mpz_class> c(dim + 1);
        bool zero = true;
        for (auto& v : c) {
            v = oracle::random_int(rng, -bound, bound);
            zero = zero && v == 0;
        }
        if (zero) continue;
        auto p = ProjPoint::normalize(std::span<const mpz_class>(c));
        if (seen.insert(p).second) out.push_back(p);
    }
    return out;
}

Morphism random_map(std::mt19937_64& rng, std::size_t dim, unsigned d, long bound) {
    std::vector<std::vector<mpz_class>> coeffs(dim + 1, std::vector<mpz_class>(monomial_count(dim, d)));
    for (auto& r : coeffs)
        for (auto& c : r) c = oracle::random_int(rng, -bound, bound);
    coeffs[0][0] = 1 + oracle::random_int(rng, 0, bound);
    return Morphism(dim, d, coeffs);
}

std::vector<PointValue> pairs_of(const Morphism& phi, const std::vector<ProjPoint>& points) {
    std::vector<PointValue> pairs;
    for (const auto& p : points) pairs.push_back({p, phi.evaluate_raw(p.coords())});
    return pairs;
}

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::internal;
}

}  // namespace

TEST_CASE("monomial matrix examples") {
    const auto m = monomial_matrix(1, 2, {pt({1, 0}), pt({0, 1}), pt({1, 1})});
    CHECK(to_rows(m.entries) == std::vector<std::vector<mpz_class>>{{1, 0, 0}, {0, 0, 1}, {1, 1, 1}});
    CHECK(abs(m.det) == 1);
    CHECK(m.det == oracle::leibniz_det(to_rows(m.entries)));
    CHECK(m.entries * m.adjugate == [&] {
        IntMatrix s = IntMatrix::identity(3);
        for (std::size_t i = 0; i < 3; ++i) s(i, i) = m.det;
        return s;
    }());
    CHECK(monomial_matrix(1, 2, {pt({1, 0}), pt({1, 0}), pt({0, 1})}).degenerate());
    const auto v = monomial_matrix(1, 2, {pt({1, 1}), pt({1, 2}), pt({1, 3})});
    CHECK(abs(v.det) == 2);
    CHECK(v.det == oracle::leibniz_det(to_rows(v.entries)));
    CHECK(kind_of([] { monomial_matrix(1, 2, {pt({1, 0}), pt({0, 1})}); }) == ErrorKind::wrong_point_count);
}

TEST_CASE("binary determinant is the Vandermonde product") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const unsigned d = 1 + trial % 4;
        const auto points = random_points(rng, 1, d + 1, 6);
        std::vector<std::vector<mpz_class>> rows;
        mpz_class product = 1;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const auto& a = points[i].coords();
            rows.push_back(binary_row(a[0], a[1], d));
            for (std::size_t j = i + 1; j < points.size(); ++j) {
                const auto& b = points[j].coords();
                product *= a[0] * b[1] - b[0] * a[1];
            }
        }
        const auto m = monomial_matrix(1, d, points);
        CHECK(to_rows(m.entries) == rows);
        CHECK(abs(m.det) == abs(product));
        CHECK(m.det == oracle::leibniz_det(rows));
    }
}

TEST_CASE("determinant is homogeneous of degree d in each point") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t dim = 1 + trial % 2;
        const unsigned d = dim == 1 ? 2 + trial % 3 : 2;
        const std::size_t k = monomial_count(dim, d);
        const auto points = random_points(rng, dim, k, 4);
        std::vector<std::vector<mpz_class>> coords;
        for (const auto& p : points) coords.push_back(p.coords());
        const mpz_class base = determinant(monomial_rows(dim, d, coords));
        for (long lambda : {2L, 3L, -2L}) {
            const std::size_t j = rng() % k;
            auto scaled = coords;
            for (auto& c : scaled[j]) c *= lambda;
            mpz_class factor;
            mpz_class l = lambda;
            mpz_pow_ui(factor.get_mpz_t(), l.get_mpz_t(), d);
            CHECK(determinant(monomial_rows(dim, d, scaled)) == factor * base);
        }
    }
}

TEST_CASE("recovery examples") {
    const std::vector<ProjPoint> points{pt({1, 0}), pt({0, 1}), pt({1, 1})};
    CHECK(recover_map(1, 2, {{points[0], {1, 0}}, {points[1], {0, 1}}, {points[2], {1, 1}}}) == Morphism::power(1, 2));
    const auto f = Morphism::from_text(1, 2, {"x^2 + y^2", "x*y"});
    CHECK(recover_map(1, 2, pairs_of(f, points)) == f);

    auto pairs = pairs_of(f, {pt({1, 0}), pt({0, 1}), pt({1, 1}), pt({1, 2}), pt({2, 1})});
    CHECK(recover_map(1, 2, pairs) == f);
    for (auto& c : pairs[0].value) c *= 2;
    CHECK(kind_of([&] { recover_map(1, 2, pairs); }) == ErrorKind::inconsistent_values);

    CHECK(kind_of([] {
              recover_map(1, 2, {{pt({1, 0}), {1, 0}}, {pt({1, 0}), {1, 0}}, {pt({0, 1}), {0, 1}}});
          }) == ErrorKind::degenerate_configuration);
    CHECK_THROWS_AS(recover_map(1, 2, {{pt({1, 0}), {1, 0}}}), Error);
}

TEST_CASE("random round trips recover exactly") {
    std::mt19937_64 rng(31);
    int done = 0;
    for (int trial = 0; done < 200; ++trial) {
        const bool plane = trial % 4 == 3;
        const std::size_t dim = plane ? 2 : 1;
        const unsigned d = plane ? 2 : 1 + trial % 4;
        const auto phi = random_map(rng, dim, d, 9);
        const auto points = random_points(rng, dim, monomial_count(dim, d) + 2, 5);
        const auto pairs = pairs_of(phi, points);
        bool base = false;
        for (const auto& pv : pairs)
            base = base || std::all_of(pv.value.begin(), pv.value.end(), [](const mpz_class& c) { return c == 0; });
        std::vector<PointValue> first(pairs.begin(), pairs.begin() + static_cast<long>(monomial_count(dim, d)));
        std::vector<ProjPoint> first_points;
        for (const auto& pv : first) first_points.push_back(pv.point);
        if (base || monomial_matrix(dim, d, first_points).degenerate()) continue;
        CHECK(recover_map(dim, d, pairs) == phi);
        ++done;
    }
}

TEST_CASE("height inequality slack examples") {
    const std::vector<ProjPoint> points{pt({1, 0}), pt({0, 1}), pt({1, 1})};
    CHECK(prop9_slack(Morphism::power(1, 2), points).contains(Dyadic()));
    const auto slack = prop9_slack(Morphism::phi_a(2, 7), points, 128);
    CHECK(oracle::encloses(slack, oracle::log_of(8) - oracle::log_of(7)));
    CHECK(kind_of([] {
              prop9_slack(Morphism::power(1, 2), {pt({1, 0}), pt({1, 0}), pt({0, 1})});
          }) == ErrorKind::degenerate_configuration);
}

TEST_CASE("slack scan reports a finite running max") {
    const auto phi = Morphism::phi_a(2, 7);
    const auto scan = prop9_scan(phi, 3, 200, 5);
    CHECK(scan.configurations == 200);
    REQUIRE(scan.worst.size() == 3);
    const auto again = prop9_slack(phi, scan.worst);
    CHECK(-again.lo() == scan.max_negative_slack);
    const auto repeat = prop9_scan(phi, 3, 200, 5);
    CHECK(repeat.max_negative_slack == scan.max_negative_slack);
    CHECK(repeat.worst == scan.worst);
}

TEST_CASE("determinant term count") {
    const auto t = determinant_term_count(1, 2);
    CHECK(t.permutations == 6);
    CHECK(t.distinct_monomials == 6);
    const auto t3 = determinant_term_count(1, 3);
    CHECK(t3.permutations == 24);
    CHECK(t3.distinct_monomials == 24);
}

TEST_CASE("degenerate configurations") {
    // distinct points on the line never make a degenerate configuration
    CHECK(degenerate_fraction(1, 2, 3, 200, 1).degenerate == 0);
    const auto plane = degenerate_fraction(2, 2, 1, 300, 1);
    CHECK(plane.drawn == 300);
    CHECK(plane.degenerate > 0);
    CHECK(plane.fraction() < 1.0);
}

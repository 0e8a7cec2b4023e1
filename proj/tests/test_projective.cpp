#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "errors.hpp"
#include "oracles.hpp"
#include "projective.hpp"

using namespace hdist;

namespace {

ProjPoint pt(std::initializer_list<long> c) { return ProjPoint::normalize(c); }

// Normalized points with max |x_i| <= bound, counted by brute force over
// all integer tuples.
std::size_t brute_force_count(std::size_t dim, long bound) {
    std::set<std::vector<long>> seen;
    std::vector<long> x(dim + 1, -bound);
    for (;;) {
        long g = 0;
        for (long v : x) g = std::gcd(g, v);
        if (g != 0) {
            std::vector<long> y = x;
            long sign = 1;
            for (long v : y)
                if (v != 0) {
                    sign = v > 0 ? 1 : -1;
                    break;
                }
            for (long& v : y) v = v / g * sign;
            seen.insert(y);
        }
        std::size_t k = x.size();
        while (k > 0 && x[k - 1] == bound) x[--k] = -bound;
        if (k == 0) break;
        ++x[k - 1];
    }
    return seen.size();
}

}  // namespace

TEST_CASE("normalize examples") {
    const std::vector<mpq_class> raw{mpq_class(2, 3), mpq_class(4, 3)};
    CHECK(ProjPoint::normalize(std::span<const mpq_class>(raw)) == pt({1, 2}));
    CHECK(pt({-2, -4}) == pt({1, 2}));
    CHECK(pt({0, -3, 6}).to_string() == "0:1:-2");
    CHECK_THROWS_AS(pt({0, 0}), Error);
    try {
        pt({0, 0});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::degenerate_point);
    }
}

TEST_CASE("normalize is idempotent and scaling invariant") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<mpq_class> raw(3);
        for (auto& c : raw) c = mpq_class(oracle::random_int(rng, -30, 30), oracle::random_int(rng, 1, 9));
        for (auto& c : raw) c.canonicalize();
        if (raw[0] == 0 && raw[1] == 0 && raw[2] == 0) continue;
        const ProjPoint p = ProjPoint::normalize(std::span<const mpq_class>(raw));
        CHECK(ProjPoint::normalize(std::span<const mpz_class>(p.coords())) == p);
        mpq_class lambda(oracle::random_int(rng, 1, 12), oracle::random_int(rng, 1, 12));
        if (rng() % 2) lambda = -lambda;
        lambda.canonicalize();
        std::vector<mpq_class> scaled;
        for (const auto& c : raw) scaled.push_back(c * lambda);
        CHECK(ProjPoint::normalize(std::span<const mpq_class>(scaled)) == p);
    }
}

TEST_CASE("parse") {
    CHECK(ProjPoint::parse("3:-2") == pt({3, -2}));
    CHECK(ProjPoint::parse("1/2:1/3") == pt({3, 2}));
    CHECK(ProjPoint::parse(" -4 : 6 : 0 ") == pt({2, -3, 0}));
    CHECK_THROWS_AS(ProjPoint::parse("1"), Error);
    CHECK_THROWS_AS(ProjPoint::parse("1:x"), Error);
    CHECK_THROWS_AS(ProjPoint::parse("0:0"), Error);
}

TEST_CASE("weil height examples") {
    CHECK(weil_height(pt({1, 0})).is_exact_zero());
    CHECK(oracle::encloses(weil_height(pt({1, 2, 3})), oracle::log_of(3)));
    CHECK(oracle::encloses(weil_height(pt({-5, 3})), oracle::log_of(5)));
}

TEST_CASE("height zero exactly on coordinates in {-1,0,1}") {
    for (const auto& p : enumerate_points(2, 2)) {
        bool small = true;
        for (const auto& c : p.coords()) small = small && abs(c) <= 1;
        CHECK(weil_height(p).is_exact_zero() == small);
    }
}

TEST_CASE("enumeration examples and counts") {
    const auto p1 = enumerate_points(1, 1);
    REQUIRE(p1.size() == 4);
    const std::set<ProjPoint> expected{pt({0, 1}), pt({1, 0}), pt({1, 1}), pt({1, -1})};
    CHECK(std::set<ProjPoint>(p1.begin(), p1.end()) == expected);
    CHECK(enumerate_points(1, 2).size() == 8);
    CHECK(enumerate_points(2, 1).size() == 13);
    for (std::size_t n = 1; n <= 2; ++n)
        for (long b = 1; b <= 4; ++b) CHECK(enumerate_points(n, b).size() == brute_force_count(n, b));
}

TEST_CASE("enumeration is ordered, distinct and growing") {
    std::size_t previous = 0;
    for (unsigned long b = 1; b <= 6; ++b) {
        const auto pts = enumerate_points(1, b);
        CHECK(pts.size() > previous);
        previous = pts.size();
        CHECK(std::is_sorted(pts.begin(), pts.end()));
        CHECK(std::set<ProjPoint>(pts.begin(), pts.end()).size() == pts.size());
        for (const auto& p : pts) CHECK(p.naive_height() <= b);
    }
}

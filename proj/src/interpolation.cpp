#include "interpolation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "errors.hpp"
#include "polynomial.hpp"

namespace hdist {

namespace {

std::vector<std::size_t> random_subset(std::size_t n, std::size_t k, std::mt19937_64& rng) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    idx.resize(k);
    return idx;
}

}  // namespace

IntMatrix monomial_rows(std::size_t dim, unsigned degree, const std::vector<std::vector<mpz_class>>& coords) {
    const auto monos = monomials(dim, degree);
    IntMatrix a(coords.size(), monos.size());
    for (std::size_t j = 0; j < coords.size(); ++j) {
        if (coords[j].size() != dim + 1) throw Error(ErrorKind::invalid_argument, "point has wrong dimension");
        for (std::size_t c = 0; c < monos.size(); ++c) a(j, c) = evaluate_monomial(monos[c], coords[j]);
    }
    return a;
}

MonomialMatrix monomial_matrix(std::size_t dim, unsigned degree, const std::vector<ProjPoint>& points) {
    const std::size_t k = monomial_count(dim, degree);
    if (points.size() != k) {
        throw Error(ErrorKind::wrong_point_count, "need exactly " + std::to_string(k) + " points, got " +
                                                      std::to_string(points.size()));
    }
    std::vector<std::vector<mpz_class>> coords;
    for (const auto& p : points) {
        if (p.dim() != dim) throw Error(ErrorKind::invalid_argument, "point has wrong dimension");
        coords.push_back(p.coords());
    }
    MonomialMatrix m;
    m.dim = dim;
    m.degree = degree;
    m.points = points;
    m.entries = monomial_rows(dim, degree, coords);
    m.det = determinant(m.entries);
    m.adjugate = adjugate(m.entries);
    return m;
}

Morphism recover_map(std::size_t dim, unsigned degree, const std::vector<PointValue>& pairs) {
    const std::size_t k = monomial_count(dim, degree);
    if (pairs.size() < k) {
        throw Error(ErrorKind::wrong_point_count, "need at least " + std::to_string(k) + " point-value pairs, got " +
                                                      std::to_string(pairs.size()));
    }
    std::vector<ProjPoint> points;
    for (std::size_t j = 0; j < k; ++j) points.push_back(pairs[j].point);
    const MonomialMatrix m = monomial_matrix(dim, degree, points);
    if (m.degenerate()) throw Error(ErrorKind::degenerate_configuration, "points lie on the degenerate locus");
    for (const auto& pv : pairs) {
        if (pv.value.size() != dim + 1) throw Error(ErrorKind::invalid_argument, "value tuple has wrong length");
    }

    // A a_i = v_i, so det * a_i = adj * v_i.
    std::vector<std::vector<mpz_class>> coeffs(dim + 1);
    bool all_zero = true;
    for (std::size_t i = 0; i <= dim; ++i) {
        std::vector<mpz_class> v(k);
        for (std::size_t j = 0; j < k; ++j) v[j] = pairs[j].value[i];
        coeffs[i] = m.adjugate.apply(v);
        for (const auto& c : coeffs[i])
            if (sgn(c) != 0) all_zero = false;
    }
    if (all_zero) throw Error(ErrorKind::inconsistent_values, "all value tuples are zero");
    Morphism phi(dim, degree, std::move(coeffs));

    // raw_j = lambda * value_j for one rational lambda and every j.
    std::optional<mpq_class> lambda;
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        const auto raw = phi.evaluate_raw(pairs[j].point.coords());
        const auto& value = pairs[j].value;
        for (std::size_t i = 0; i <= dim; ++i) {
            if (sgn(value[i]) == 0 || sgn(raw[i]) == 0) {
                if (sgn(value[i]) != sgn(raw[i])) {
                    throw Error(ErrorKind::inconsistent_values,
                                "recovered map does not reproduce the value at " + pairs[j].point.to_string());
                }
                continue;
            }
            mpq_class ratio(raw[i], value[i]);
            ratio.canonicalize();
            if (!lambda) lambda = ratio;
            if (*lambda != ratio) {
                throw Error(ErrorKind::inconsistent_values,
                            "values are not scaled consistently at " + pairs[j].point.to_string());
            }
        }
    }
    return phi;
}

HeightInterval prop9_slack(const Morphism& phi, const std::vector<ProjPoint>& points, unsigned precision_bits) {
    const MonomialMatrix m = monomial_matrix(phi.dim(), phi.degree(), points);
    if (m.degenerate()) throw Error(ErrorKind::degenerate_configuration, "points lie on the degenerate locus");
    const std::size_t k = points.size();
    HeightInterval point_sum;
    HeightInterval image_sum;
    for (const auto& p : points) {
        point_sum = interval::add(point_sum, weil_height(p, precision_bits));
        image_sum = interval::add(image_sum, weil_height(evaluate(phi, p, 1).point, precision_bits));
    }
    const mpq_class weight(static_cast<unsigned long>(phi.degree()) * (k - 1));
    HeightInterval total = interval::add(interval::scale(point_sum, weight), image_sum);
    return interval::sub(total, naive_height(phi, precision_bits));
}

TermCount determinant_term_count(std::size_t dim, unsigned degree) {
    const auto monos = monomials(dim, degree);
    const std::size_t k = monos.size();
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    // Point j contributes the monomial perm[j] in its own variables, so a
    // term is determined by the tuple of monomial indices.
    std::map<std::vector<std::size_t>, long> collected;
    TermCount out;
    do {
        ++out.permutations;
        std::size_t inversions = 0;
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b)
                if (perm[a] > perm[b]) ++inversions;
        collected[perm] += inversions % 2 ? -1 : 1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (const auto& [key, c] : collected)
        if (c != 0) ++out.distinct_monomials;
    return out;
}

Prop9Scan prop9_scan(const Morphism& phi, unsigned long bound, std::size_t configurations, std::uint64_t seed,
                     unsigned precision_bits) {
    const std::size_t k = monomial_count(phi.dim(), phi.degree());
    const auto pool = enumerate_points(phi.dim(), bound);
    if (pool.size() < k) throw Error(ErrorKind::empty_sample, "not enough points at this bound");
    std::mt19937_64 rng(seed);
    Prop9Scan out;
    bool first = true;
    const std::size_t max_draws = configurations * 20 + 100;
    for (std::size_t draw = 0; out.configurations < configurations && draw < max_draws; ++draw) {
        std::vector<ProjPoint> pts;
        for (auto i : random_subset(pool.size(), k, rng)) pts.push_back(pool[i]);
        const MonomialMatrix m = monomial_matrix(phi.dim(), phi.degree(), pts);
        if (m.degenerate()) {
            ++out.degenerate;
            continue;
        }
        ++out.configurations;
        const Dyadic neg = -prop9_slack(phi, pts, precision_bits).lo();
        if (first || out.max_negative_slack < neg) {
            out.max_negative_slack = neg;
            out.worst = pts;
            first = false;
        }
    }
    return out;
}

Genericity degenerate_fraction(std::size_t dim, unsigned degree, unsigned long bound, std::size_t draws,
                               std::uint64_t seed) {
    const std::size_t k = monomial_count(dim, degree);
    const auto pool = enumerate_points(dim, bound);
    if (pool.size() < k) throw Error(ErrorKind::empty_sample, "not enough points at this bound");
    std::mt19937_64 rng(seed);
    Genericity out;
    for (; out.drawn < draws; ++out.drawn) {
        std::vector<std::vector<mpz_class>> coords;
        for (auto i : random_subset(pool.size(), k, rng)) coords.push_back(pool[i].coords());
        if (sgn(determinant(monomial_rows(dim, degree, coords))) == 0) ++out.degenerate;
    }
    return out;
}

}  // namespace hdist

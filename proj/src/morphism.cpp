#include "morphism.hpp"

#include <algorithm>

#include "errors.hpp"

namespace hdist {

const char* to_string(MorphismStatus status) noexcept {
    switch (status) {
        case MorphismStatus::unverified: return "unverified";
        case MorphismStatus::verified: return "verified";
        case MorphismStatus::not_morphism: return "not_morphism";
    }
    return "unknown";
}

Morphism::Morphism(std::size_t dim, unsigned degree, std::vector<std::vector<mpz_class>> coeffs,
                   MorphismStatus status)
    : dim_(dim), degree_(degree), coeffs_(std::move(coeffs)), status_(status) {
    if (dim_ < 1) throw Error(ErrorKind::invalid_argument, "dimension must be at least 1");
    if (degree_ < 1) throw Error(ErrorKind::invalid_argument, "degree must be at least 1");
    const std::size_t k = hdist::monomial_count(dim_, degree_);
    if (coeffs_.size() != dim_ + 1) throw Error(ErrorKind::invalid_argument, "need N+1 coordinate rows");
    for (const auto& row : coeffs_) {
        if (row.size() != k) throw Error(ErrorKind::invalid_argument, "coefficient row has wrong length");
    }
    std::vector<mpz_class> flat = coefficient_point();
    mpz_class g = make_primitive(flat);
    if (sgn(g) == 0) throw Error(ErrorKind::degenerate_point, "all coefficients are zero");
    if (g != 1) {
        for (auto& row : coeffs_)
            for (auto& c : row) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    }
    monomials_ = monomials(dim_, degree_);
}

Morphism Morphism::from_polys(const std::vector<Poly>& coords) {
    if (coords.size() < 2) throw Error(ErrorKind::invalid_argument, "need at least two coordinates");
    const std::size_t dim = coords.size() - 1;
    unsigned degree = 0;
    for (const auto& p : coords) {
        if (!p.is_zero()) degree = p.degree();
    }
    std::vector<std::vector<mpz_class>> rows;
    for (const auto& p : coords) {
        if (!p.is_zero() && p.degree() != degree) {
            throw Error(ErrorKind::degree_mismatch, "coordinate polynomials of different degree");
        }
        rows.push_back(p.is_zero() ? std::vector<mpz_class>(hdist::monomial_count(dim, degree), 0)
                                   : p.dense());
    }
    return Morphism(dim, degree, std::move(rows));
}

Morphism Morphism::from_text(std::size_t dim, unsigned degree, const std::vector<std::string>& coords) {
    if (coords.size() != dim + 1) {
        throw Error(ErrorKind::invalid_argument, "expected " + std::to_string(dim + 1) + " coordinate polynomials");
    }
    std::vector<RationalPoly> parsed;
    mpz_class denominators = 1;
    for (const auto& text : coords) {
        parsed.push_back(parse_polynomial(text, dim, degree));
        for (const auto& [m, c] : parsed.back().terms) {
            mpz_lcm(denominators.get_mpz_t(), denominators.get_mpz_t(), c.get_den_mpz_t());
        }
    }
    const std::size_t k = hdist::monomial_count(dim, degree);
    std::vector<std::vector<mpz_class>> rows(dim + 1, std::vector<mpz_class>(k, 0));
    for (std::size_t i = 0; i <= dim; ++i) {
        for (const auto& [m, c] : parsed[i].terms) {
            rows[i][monomial_index(m)] = c.get_num() * (denominators / c.get_den());
        }
    }
    return Morphism(dim, degree, std::move(rows));
}

Morphism Morphism::power(std::size_t dim, unsigned degree) {
    const std::size_t k = hdist::monomial_count(dim, degree);
    std::vector<std::vector<mpz_class>> rows(dim + 1, std::vector<mpz_class>(k, 0));
    for (std::size_t i = 0; i <= dim; ++i) {
        Monomial m(dim + 1, 0);
        m[i] = degree;
        rows[i][monomial_index(m)] = 1;
    }
    return Morphism(dim, degree, std::move(rows));
}

Morphism Morphism::phi_a(unsigned degree, const mpz_class& a) {
    if (sgn(a) == 0) throw Error(ErrorKind::invalid_argument, "phi_A requires A != 0");
    if (degree < 1) throw Error(ErrorKind::invalid_argument, "degree must be at least 1");
    const std::size_t k = degree + 1;
    std::vector<std::vector<mpz_class>> rows(2, std::vector<mpz_class>(k, 0));
    rows[0][0] = 1;  // x^d
    rows[0][1] = a;  // x^(d-1) y
    rows[1][k - 1] = 1;  // y^d
    return Morphism(1, degree, std::move(rows));
}

Morphism Morphism::with_status(MorphismStatus status) const {
    Morphism copy = *this;
    copy.status_ = status;
    return copy;
}

Poly Morphism::coordinate(std::size_t i) const { return Poly::from_dense(dim_, degree_, coeffs_.at(i)); }

std::vector<std::string> Morphism::coordinate_texts() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i <= dim_; ++i) out.push_back(coordinate(i).to_text());
    return out;
}

std::vector<mpz_class> Morphism::coefficient_point() const {
    std::vector<mpz_class> flat;
    for (const auto& row : coeffs_) flat.insert(flat.end(), row.begin(), row.end());
    return flat;
}

mpz_class Morphism::max_abs_coefficient() const {
    mpz_class best = 0;
    for (const auto& row : coeffs_)
        for (const auto& c : row)
            if (cmpabs(c, best) > 0) best = abs(c);
    return best;
}

bool Morphism::is_power_map() const { return *this == power(dim_, degree_); }

std::vector<mpz_class> Morphism::evaluate_raw(std::span<const mpz_class> x) const {
    if (x.size() != dim_ + 1) throw Error(ErrorKind::invalid_argument, "point dimension does not match map");
    // powers[k][e] = x_k^e
    std::vector<std::vector<mpz_class>> powers(dim_ + 1);
    for (std::size_t k = 0; k <= dim_; ++k) {
        powers[k].resize(degree_ + 1);
        powers[k][0] = 1;
        for (unsigned e = 1; e <= degree_; ++e) powers[k][e] = powers[k][e - 1] * x[k];
    }
    std::vector<mpz_class> values(monomials_.size());
    for (std::size_t m = 0; m < monomials_.size(); ++m) {
        const Monomial& mon = monomials_[m];
        bool any_used = false;
        for (std::size_t k = 0; k <= dim_; ++k) {
            if (mon[k] == 0) continue;
            if (!any_used) {
                values[m] = powers[k][mon[k]];
                any_used = true;
            } else {
                values[m] *= powers[k][mon[k]];
            }
        }
        if (!any_used) values[m] = 1;
    }
    std::vector<mpz_class> out(dim_ + 1, 0);
    for (std::size_t i = 0; i <= dim_; ++i) {
        for (std::size_t m = 0; m < monomials_.size(); ++m) {
            const mpz_class& a = coeffs_[i][m];
            if (sgn(a) == 0) continue;
            if (a == 1) {
                out[i] += values[m];
            } else {
                mpz_addmul(out[i].get_mpz_t(), a.get_mpz_t(), values[m].get_mpz_t());
            }
        }
    }
    return out;
}

Evaluation evaluate(const Morphism& phi, const ProjPoint& p, unsigned iterations) {
    if (iterations < 1) throw Error(ErrorKind::invalid_argument, "iterations must be at least 1");
    if (p.dim() != phi.dim()) throw Error(ErrorKind::invalid_argument, "point dimension does not match map");
    std::vector<mpz_class> raw = phi.evaluate_raw(p.coords());
    std::vector<mpz_class> current = raw;
    for (unsigned n = 0;; ++n) {
        if (sgn(make_primitive(current)) == 0) {
            throw Error(ErrorKind::base_locus, "point lies in the base locus of the map");
        }
        if (n + 1 == iterations) break;
        current = phi.evaluate_raw(current);
    }
    return {ProjPoint::normalize(std::span<const mpz_class>(current)), std::move(raw)};
}

HeightInterval naive_height(const Morphism& phi, unsigned precision_bits) {
    return log_enclosure(phi.max_abs_coefficient(), precision_bits);
}

}  // namespace hdist

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace hdist {

// Exponent tuple (i_0, ..., i_N) of a monomial x_0^i_0 ... x_N^i_N.
using Monomial = std::vector<unsigned>;

unsigned total_degree(const Monomial& m);

// Number of degree-d monomials in N+1 variables, C(N+d, N).
std::size_t monomial_count(std::size_t dim, unsigned degree);

// All degree-d monomials in N+1 variables in graded lexicographic order with
// x0 > x1 > ... > xN, i.e. x0^d first and xN^d last.
std::vector<Monomial> monomials(std::size_t dim, unsigned degree);

// Position of m in monomials(dim, total_degree(m)).
std::size_t monomial_index(const Monomial& m);

// x^m evaluated at integer coordinates.
mpz_class evaluate_monomial(const Monomial& m, std::span<const mpz_class> point);

// Homogeneous polynomial with integer coefficients in N+1 variables. The
// zero polynomial is allowed and has no terms.
class Poly {
public:
    Poly(std::size_t dim, unsigned degree) : dim_(dim), degree_(degree) {}

    // Dense coefficient vector in monomials(dim, degree) order.
    static Poly from_dense(std::size_t dim, unsigned degree, std::span<const mpz_class> coeffs);
    static Poly monomial(std::size_t dim, const Monomial& m, const mpz_class& coeff = 1);
    // Linear form sum_k row[k] * x_k.
    static Poly linear(std::span<const mpz_class> row);

    std::size_t dim() const noexcept { return dim_; }
    unsigned degree() const noexcept { return degree_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    const std::map<Monomial, mpz_class>& terms() const noexcept { return terms_; }
    mpz_class coefficient(const Monomial& m) const;
    void add_term(const Monomial& m, const mpz_class& coeff);

    std::vector<mpz_class> dense() const;
    mpz_class abs_coefficient_sum() const;
    mpz_class max_abs_coefficient() const;

    mpz_class evaluate(std::span<const mpz_class> point) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const mpz_class& c, const Poly& p);
    friend bool operator==(const Poly&, const Poly&) = default;

    Poly pow(unsigned exponent) const;

    // Text such as "x0^2 + 7*x0*x1 - x1^2"; "0" for the zero polynomial.
    std::string to_text() const;

private:
    std::size_t dim_;
    unsigned degree_;
    std::map<Monomial, mpz_class> terms_;
};

// A homogeneous polynomial with rational coefficients, as parsed from text.
struct RationalPoly {
    std::size_t dim = 0;
    unsigned degree = 0;
    std::map<Monomial, mpq_class> terms;
};

// Parses text in variables x0..xN (x, y, z accepted when N <= 2): signed
// terms joined by + and -, each a product of an optional integer or a/b
// coefficient and powers var^k. Every term must have total degree
// `degree`; mixed degrees raise `inhomogeneous`, a single wrong degree
// raises `degree_mismatch`.
RationalPoly parse_polynomial(std::string_view text, std::size_t dim, unsigned degree);

// Degree of a homogeneous polynomial text; nullopt for the zero polynomial.
std::optional<unsigned> polynomial_degree(std::string_view text, std::size_t dim);

}  // namespace hdist

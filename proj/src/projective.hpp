#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "numerics.hpp"

namespace hdist {

// A point of P^N(Q) in canonical integer coordinates: not all zero, gcd 1,
// first nonzero coordinate positive.
class ProjPoint {
public:
    // Normalizes; throws degenerate_point on the zero vector.
    static ProjPoint normalize(std::span<const mpq_class> raw);
    static ProjPoint normalize(std::span<const mpz_class> raw);
    static ProjPoint normalize(std::initializer_list<long> raw);

    // Accepts "x0:x1:...:xN" with integer or rational entries.
    static ProjPoint parse(std::string_view text);

    std::size_t dim() const noexcept { return coords_.size() - 1; }
    const std::vector<mpz_class>& coords() const noexcept { return coords_; }
    const mpz_class& operator[](std::size_t k) const { return coords_[k]; }

    // H(P) = max |x_i| of the canonical representative.
    mpz_class naive_height() const;

    std::string to_string() const;  // "x0:x1:...:xN"

    friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
    friend auto operator<=>(const ProjPoint& a, const ProjPoint& b) {
        return a.coords_ <=> b.coords_;
    }

private:
    explicit ProjPoint(std::vector<mpz_class> coords) : coords_(std::move(coords)) {}
    std::vector<mpz_class> coords_;
};

// Scales an integer vector to gcd 1 with first nonzero entry positive, in
// place; returns the (signed) divisor used. Zero vectors are left alone.
mpz_class make_primitive(std::vector<mpz_class>& v);

// log max_i |x_i|; exact zero when every coordinate lies in {-1, 0, 1}.
HeightInterval weil_height(const ProjPoint& p, unsigned precision_bits = kDefaultPrecisionBits);

// Every normalized point of P^N(Q) with max |x_i| <= bound, each once, in
// lexicographic order of the signed coordinate tuple.
std::vector<ProjPoint> enumerate_points(std::size_t dim, unsigned long bound);

struct ProjPointHash {
    std::size_t operator()(const ProjPoint& p) const noexcept;
};

}  // namespace hdist

#include "projective.hpp"

#include <algorithm>

#include "errors.hpp"

namespace hdist {

mpz_class make_primitive(std::vector<mpz_class>& v) {
    mpz_class g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0) return 0;
    auto lead = std::find_if(v.begin(), v.end(), [](const mpz_class& x) { return sgn(x) != 0; });
    if (sgn(*lead) < 0) g = -g;
    if (g != 1) {
        for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    }
    return g;
}

ProjPoint ProjPoint::normalize(std::span<const mpz_class> raw) {
    if (raw.size() < 2) throw Error(ErrorKind::invalid_argument, "a projective point needs at least two coordinates");
    std::vector<mpz_class> v(raw.begin(), raw.end());
    if (sgn(make_primitive(v)) == 0) throw Error(ErrorKind::degenerate_point, "all coordinates are zero");
    return ProjPoint(std::move(v));
}

ProjPoint ProjPoint::normalize(std::span<const mpq_class> raw) {
    mpz_class denominators = 1;
    for (const auto& q : raw) mpz_lcm(denominators.get_mpz_t(), denominators.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> v;
    v.reserve(raw.size());
    for (const auto& q : raw) v.push_back(q.get_num() * (denominators / q.get_den()));
    return normalize(std::span<const mpz_class>(v));
}

ProjPoint ProjPoint::normalize(std::initializer_list<long> raw) {
    std::vector<mpz_class> v(raw.begin(), raw.end());
    return normalize(std::span<const mpz_class>(v));
}

ProjPoint ProjPoint::parse(std::string_view text) {
    std::vector<mpq_class> raw;
    std::size_t start = 0;
    while (true) {
        std::size_t colon = text.find(':', start);
        raw.push_back(parse_rational(text.substr(start, colon - start)));
        if (colon == std::string_view::npos) break;
        start = colon + 1;
    }
    return normalize(std::span<const mpq_class>(raw));
}

mpz_class ProjPoint::naive_height() const {
    mpz_class best = 0;
    for (const auto& x : coords_) {
        if (cmpabs(x, best) > 0) best = abs(x);
    }
    return best;
}

std::string ProjPoint::to_string() const {
    std::string out;
    for (std::size_t k = 0; k < coords_.size(); ++k) {
        if (k) out += ":";
        out += coords_[k].get_str();
    }
    return out;
}

HeightInterval weil_height(const ProjPoint& p, unsigned precision_bits) {
    return log_enclosure(p.naive_height(), precision_bits);
}

std::vector<ProjPoint> enumerate_points(std::size_t dim, unsigned long bound) {
    if (bound == 0) return {};
    const long b = static_cast<long>(bound);
    std::vector<long> tuple(dim + 1, -b);
    tuple[0] = 0;
    std::vector<ProjPoint> out;
    std::vector<mpz_class> coords(dim + 1);
    while (true) {
        // canonical: first nonzero positive, gcd 1
        long g = 0;
        long lead = 0;
        for (long x : tuple) {
            if (lead == 0) lead = x;
            long a = x < 0 ? -x : x;
            while (a != 0) {
                long t = g % a;
                g = a;
                a = t;
            }
        }
        if (g == 1 && lead > 0) {
            for (std::size_t k = 0; k <= dim; ++k) coords[k] = tuple[k];
            out.push_back(ProjPoint::normalize(std::span<const mpz_class>(coords)));
        }
        // odometer, last coordinate fastest
        std::size_t k = dim;
        while (true) {
            if (tuple[k] < b) {
                ++tuple[k];
                break;
            }
            tuple[k] = (k == 0) ? 0 : -b;
            if (k == 0) return out;
            --k;
        }
    }
}

std::size_t ProjPointHash::operator()(const ProjPoint& p) const noexcept {
    std::size_t h = p.dim();
    for (const auto& x : p.coords()) {
        h ^= std::hash<long>{}(mpz_get_si(x.get_mpz_t())) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

}  // namespace hdist

#include "serialize.hpp"

#include "errors.hpp"
#include "polynomial.hpp"

namespace hdist {

namespace {

constexpr unsigned kDecimalDigits = 20;
constexpr unsigned kReadBits = 192;

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto at = s.find(sep, start);
        out.push_back(trim(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start)));
        if (at == std::string_view::npos) break;
        start = at + 1;
    }
    return out;
}

mpz_class integer_from(const Json& j) {
    mpz_class v;
    if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
    if (j.is_string() && v.set_str(j.get<std::string>(), 10) == 0) return v;
    throw Error(ErrorKind::parse, "expected an integer, got " + j.dump());
}

HeightInterval interval_from(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::parse, "expected an interval [lo, hi]");
    const auto lo = parse_rational(j[0].get<std::string>());
    const auto hi = parse_rational(j[1].get<std::string>());
    return {Dyadic::from_rational(lo, kReadBits, Rounding::down), Dyadic::from_rational(hi, kReadBits, Rounding::up)};
}

Json integer_json(const mpz_class& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

}  // namespace

std::string lower_text(const Dyadic& v) { return v.to_decimal(Rounding::down, kDecimalDigits); }
std::string upper_text(const Dyadic& v) { return v.to_decimal(Rounding::up, kDecimalDigits); }

Json to_json(const HeightInterval& h) { return Json::array({lower_text(h.lo()), upper_text(h.hi())}); }

Json to_json(const ProjPoint& p) {
    Json j = Json::array();
    for (const auto& c : p.coords()) j.push_back(integer_json(c));
    return j;
}

Json to_json(const Morphism& phi) {
    Json j;
    j["N"] = phi.dim();
    j["d"] = phi.degree();
    j["coords"] = phi.coordinate_texts();
    j["status"] = to_string(phi.status());
    return j;
}

Json to_json(const OffsetCertificate& cert) {
    Json j;
    j["t"] = cert.t;
    j["method"] = cert.method;
    Json r = Json::array();
    for (const auto& v : cert.r) r.push_back(integer_json(v));
    j["R"] = r;
    Json g = Json::array();
    for (const auto& row : cert.g) {
        Json texts = Json::array();
        for (const auto& p : row) texts.push_back(p.to_text());
        g.push_back(texts);
    }
    j["G"] = g;
    j["upper_factor"] = integer_json(cert.upper_factor);
    j["lower_factor"] = integer_json(cert.lower_factor);
    j["row_sum_factor"] = integer_json(cert.row_sum_factor);
    j["sharp_lower_factor"] = to_string(cert.sharp_lower_factor);
    j["lcm_R"] = integer_json(cert.lcm_r);
    j["C_G"] = integer_json(cert.c_g);
    j["C_up"] = to_json(cert.c_up);
    j["C_low"] = to_json(cert.c_low);
    j["sharp_up"] = to_json(cert.sharp_up);
    j["sharp_low"] = to_json(cert.sharp_low);
    return j;
}

Json to_json(const DistanceEstimate& e) {
    Json j;
    j["lower"] = lower_text(e.lower);
    j["upper"] = upper_text(e.upper);
    j["witness"] = to_json(e.witness);
    j["witness_gap"] = to_json(e.witness_gap);
    j["sample_size"] = e.sample_size;
    j["max_gap_width"] = upper_text(e.max_gap_width);
    j["all_eps_met"] = e.all_eps_met;
    return j;
}

Morphism morphism_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("coords")) throw Error(ErrorKind::parse, "map JSON needs \"coords\"");
    std::vector<std::string> coords = j.at("coords").get<std::vector<std::string>>();
    const std::size_t dim = j.contains("N") ? j.at("N").get<std::size_t>() : coords.size() - 1;
    if (coords.size() != dim + 1) throw Error(ErrorKind::parse, "\"coords\" must have N+1 entries");
    unsigned degree = 0;
    if (j.contains("d")) {
        degree = j.at("d").get<unsigned>();
    } else {
        for (const auto& c : coords)
            if (auto deg = polynomial_degree(c, dim)) degree = *deg;
    }
    return Morphism::from_text(dim, degree, coords);
}

OffsetCertificate certificate_from_json(const Morphism& phi, const Json& j) {
    try {
        OffsetCertificate cert;
        cert.t = j.at("t").get<unsigned>();
        cert.method = j.at("method").get<std::string>();
        for (const auto& v : j.at("R")) cert.r.push_back(integer_from(v));
        if (cert.t < phi.degree()) throw Error(ErrorKind::invalid_certificate, "t is below the map degree");
        for (const auto& row : j.at("G")) {
            std::vector<Poly> polys;
            for (const auto& text : row) {
                RationalPoly rp = parse_polynomial(text.get<std::string>(), phi.dim(), cert.t - phi.degree());
                Poly p(phi.dim(), cert.t - phi.degree());
                for (const auto& [m, c] : rp.terms) {
                    if (c.get_den() != 1) throw Error(ErrorKind::invalid_certificate, "G has a non-integer coefficient");
                    p.add_term(m, c.get_num());
                }
                polys.push_back(std::move(p));
            }
            cert.g.push_back(std::move(polys));
        }
        cert.upper_factor = integer_from(j.at("upper_factor"));
        cert.lower_factor = integer_from(j.at("lower_factor"));
        cert.row_sum_factor = integer_from(j.at("row_sum_factor"));
        cert.sharp_lower_factor = parse_rational(j.at("sharp_lower_factor").get<std::string>());
        cert.lcm_r = integer_from(j.at("lcm_R"));
        cert.c_g = integer_from(j.at("C_G"));
        cert.c_up = interval_from(j.at("C_up"));
        cert.c_low = interval_from(j.at("C_low"));
        cert.sharp_up = interval_from(j.at("sharp_up"));
        cert.sharp_low = interval_from(j.at("sharp_low"));
        return cert;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::parse, std::string("bad certificate JSON: ") + e.what());
    }
}

std::vector<PointValue> pairs_from_json(const Json& j) {
    const Json& list = j.is_object() ? j.at("pairs") : j;
    std::vector<PointValue> out;
    for (const auto& item : list) {
        const Json& p = item.at("point");
        ProjPoint point = p.is_string() ? ProjPoint::parse(p.get<std::string>()) : [&] {
            std::vector<mpz_class> coords;
            for (const auto& c : p) coords.push_back(integer_from(c));
            return ProjPoint::normalize(std::span<const mpz_class>(coords));
        }();
        std::vector<mpz_class> value;
        for (const auto& v : item.at("value")) value.push_back(integer_from(v));
        out.push_back({std::move(point), std::move(value)});
    }
    return out;
}

Morphism parse_map(std::string_view text) {
    const std::string t = trim(text);
    if (t.empty()) throw Error(ErrorKind::parse, "empty map description");
    if (t.front() == '{') {
        Json j;
        try {
            j = Json::parse(t);
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::parse, std::string("bad map JSON: ") + e.what());
        }
        return morphism_from_json(j);
    }
    auto numbers = [&](std::size_t prefix) {
        auto parts = split(std::string_view(t).substr(prefix), ',');
        std::vector<mpz_class> out;
        for (const auto& s : parts) {
            mpz_class v;
            if (s.empty() || v.set_str(s, 10) != 0) throw Error(ErrorKind::parse, "bad number '" + s + "' in '" + t + "'");
            out.push_back(v);
        }
        if (out.size() != 2) throw Error(ErrorKind::parse, "expected two numbers in '" + t + "'");
        return out;
    };
    auto small = [&](const mpz_class& v) {
        if (sgn(v) < 0 || !v.fits_uint_p()) throw Error(ErrorKind::invalid_argument, "bad size in '" + t + "'");
        return static_cast<unsigned>(v.get_ui());
    };
    if (t.rfind("power:", 0) == 0) {
        auto v = numbers(6);
        return Morphism::power(small(v[0]), small(v[1]));
    }
    if (t.rfind("phi-a:", 0) == 0) {
        auto v = numbers(6);
        return Morphism::phi_a(small(v[0]), v[1]);
    }
    std::string body = t;
    if (body.front() == '[' && body.back() == ']') body = body.substr(1, body.size() - 2);
    auto coords = split(body, ':');
    if (coords.size() < 2) throw Error(ErrorKind::parse, "a map needs at least two coordinates: '" + t + "'");
    const std::size_t dim = coords.size() - 1;
    unsigned degree = 0;
    bool found = false;
    for (const auto& c : coords) {
        if (auto deg = polynomial_degree(c, dim)) {
            if (found && *deg != degree) throw Error(ErrorKind::degree_mismatch, "coordinates of different degree");
            degree = *deg;
            found = true;
        }
    }
    if (!found) throw Error(ErrorKind::degenerate_point, "every coordinate is zero");
    return Morphism::from_text(dim, degree, coords);
}

}  // namespace hdist

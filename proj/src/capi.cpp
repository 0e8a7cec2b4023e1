#include "hdist/hdist.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <sstream>
#include <string>

#include "canonical_height.hpp"
#include "conjugation.hpp"
#include "distance.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "height_bounds.hpp"
#include "interpolation.hpp"
#include "serialize.hpp"

struct hd_point {
    hdist::ProjPoint value;
};

struct hd_map {
    hdist::Morphism value;
};

namespace {

using hdist::ErrorKind;
using hdist::Json;

thread_local std::string last_error;

hd_status status_of(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::degenerate_point:
        case ErrorKind::degenerate_configuration:
        case ErrorKind::singular_matrix: return HD_ERR_DEGENERATE;
        case ErrorKind::not_morphism:
        case ErrorKind::base_locus: return HD_ERR_NOT_MORPHISM;
        case ErrorKind::resource_ceiling: return HD_ERR_RESOURCE;
        case ErrorKind::internal: return HD_ERR_INTERNAL;
        default: return HD_ERR_INVALID;
    }
}

template <class F>
hd_status guarded(F&& body) {
    last_error.clear();
    try {
        body();
        return HD_OK;
    } catch (const hdist::Error& e) {
        last_error = std::string(hdist::to_string(e.kind())) + ": " + e.what();
        return status_of(e.kind());
    } catch (const nlohmann::json::exception& e) {
        last_error = std::string("parse: ") + e.what();
        return HD_ERR_INVALID;
    } catch (const std::bad_alloc&) {
        last_error = "resource-ceiling: out of memory";
        return HD_ERR_RESOURCE;
    } catch (const std::exception& e) {
        last_error = std::string("internal: ") + e.what();
        return HD_ERR_INTERNAL;
    }
}

void require(const void* p, const char* what) {
    if (!p) throw hdist::Error(ErrorKind::invalid_argument, std::string(what) + " is null");
}

char* copy_out(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void emit(const Json& j, char** out) {
    require(out, "output pointer");
    *out = copy_out(j.dump(2));
}

hd_options defaults() {
    hd_options o;
    hd_options_init(&o);
    return o;
}

const hd_options& opts(const hd_options* options) {
    static const hd_options fallback = defaults();
    return options ? *options : fallback;
}

mpq_class eps_of(const hd_options& o) {
    mpq_class eps = hdist::parse_rational(o.eps ? o.eps : "1/1000000");
    if (sgn(eps) <= 0) throw hdist::Error(ErrorKind::invalid_argument, "eps must be positive");
    return eps;
}

hdist::CanonicalHeightOptions height_options(const hd_options& o, bool strict) {
    hdist::CanonicalHeightOptions h;
    h.precision_bits = o.precision_bits;
    h.strict = strict;
    if (!strict) h.bit_ceiling = hdist::kSampleBitCeiling;
    if (o.bit_ceiling) h.bit_ceiling = o.bit_ceiling;
    return h;
}

std::vector<hdist::ProjPoint> points_of(const char* text) {
    std::vector<hdist::ProjPoint> out;
    if (!text) return out;
    std::istringstream in(text);
    std::string token;
    while (in >> token) out.push_back(hdist::ProjPoint::parse(token));
    return out;
}

hdist::SampleSpec sample_of(const hd_options& o, const char* extra_points) {
    hdist::SampleSpec spec;
    spec.coord_bound = o.bound;
    spec.eps = eps_of(o);
    spec.options = height_options(o, false);
    spec.extra_points = points_of(extra_points);
    return spec;
}

Json sample_json(const hdist::SampleSpec& spec) {
    Json j;
    j["coord_bound"] = spec.coord_bound;
    j["eps"] = hdist::to_string(spec.eps);
    j["precision_bits"] = spec.options.precision_bits;
    Json extra = Json::array();
    for (const auto& p : spec.extra_points) extra.push_back(hdist::to_json(p));
    j["extra_points"] = extra;
    return j;
}

}  // namespace

extern "C" {

void hd_options_init(hd_options* options) {
    if (!options) return;
    options->precision_bits = hdist::kDefaultPrecisionBits;
    options->eps = "1/1000000";
    options->bound = 2;
    options->seed = 0;
    options->bit_ceiling = 0;
}

const char* hd_status_name(hd_status status) {
    switch (status) {
        case HD_OK: return "ok";
        case HD_ERR_INVALID: return "invalid-input";
        case HD_ERR_DEGENERATE: return "degenerate-input";
        case HD_ERR_NOT_MORPHISM: return "not-a-morphism";
        case HD_ERR_RESOURCE: return "resource-ceiling";
        case HD_ERR_INTERNAL: return "internal-error";
    }
    return "unknown";
}

const char* hd_last_error(void) { return last_error.c_str(); }

void hd_string_free(char* s) { std::free(s); }

hd_status hd_point_parse(const char* text, hd_point** out) {
    return guarded([&] {
        require(text, "point text");
        require(out, "output pointer");
        *out = new hd_point{hdist::ProjPoint::parse(text)};
    });
}

void hd_point_free(hd_point* point) { delete point; }

hd_status hd_point_to_string(const hd_point* point, char** out) {
    return guarded([&] {
        require(point, "point");
        require(out, "output pointer");
        *out = copy_out(point->value.to_string());
    });
}

hd_status hd_map_parse(const char* text, hd_map** out) {
    return guarded([&] {
        require(text, "map text");
        require(out, "output pointer");
        *out = new hd_map{hdist::parse_map(text)};
    });
}

void hd_map_free(hd_map* map) { delete map; }

hd_status hd_map_to_json(const hd_map* map, char** out) {
    return guarded([&] {
        require(map, "map");
        emit(hdist::to_json(map->value), out);
    });
}

hd_status hd_map_is_morphism(const hd_map* map, int* is_morphism) {
    return guarded([&] {
        require(map, "map");
        require(is_morphism, "output pointer");
        *is_morphism = hdist::classify(map->value).status() == hdist::MorphismStatus::verified ? 1 : 0;
    });
}

hd_status hd_point_height(const hd_point* point, const hd_options* options, char** json) {
    return guarded([&] {
        require(point, "point");
        const auto& o = opts(options);
        Json j;
        j["point"] = hdist::to_json(point->value);
        j["naive_height"] = point->value.naive_height().get_str();
        j["height"] = hdist::to_json(hdist::weil_height(point->value, o.precision_bits));
        emit(j, json);
    });
}

hd_status hd_map_height(const hd_map* map, const hd_options* options, char** json) {
    return guarded([&] {
        require(map, "map");
        const auto& o = opts(options);
        Json j;
        j["map"] = hdist::to_json(hdist::classify(map->value));
        j["max_abs_coefficient"] = map->value.max_abs_coefficient().get_str();
        j["height"] = hdist::to_json(hdist::naive_height(map->value, o.precision_bits));
        emit(j, json);
    });
}

hd_status hd_certificate(const hd_map* map, const char* method, const hd_options* options, char** json) {
    return guarded([&] {
        require(map, "map");
        const auto& o = opts(options);
        hdist::CertificateMethod m = hdist::CertificateMethod::automatic;
        const std::string name = method ? method : "auto";
        if (name == "sylvester") m = hdist::CertificateMethod::sylvester;
        else if (name == "macaulay") m = hdist::CertificateMethod::macaulay;
        else if (name != "auto") throw hdist::Error(ErrorKind::invalid_argument, "unknown method '" + name + "'");
        const auto cert = hdist::find_certificate(map->value, o.precision_bits, m);
        Json j;
        j["map"] = hdist::to_json(map->value.with_status(hdist::MorphismStatus::verified));
        j["certificate"] = hdist::to_json(cert);
        emit(j, json);
    });
}

hd_status hd_check_certificate(const hd_map* map, const char* certificate_json, char** json) {
    return guarded([&] {
        require(map, "map");
        require(certificate_json, "certificate");
        Json parsed = Json::parse(certificate_json);
        const Json& body = parsed.contains("certificate") ? parsed.at("certificate") : parsed;
        const auto cert = hdist::certificate_from_json(map->value, body);
        hdist::verify_certificate(map->value, cert);
        Json j;
        j["valid"] = true;
        j["t"] = cert.t;
        emit(j, json);
    });
}

hd_status hd_canonical_height(const hd_map* map, const hd_point* point, const hd_options* options, char** json) {
    return guarded([&] {
        require(map, "map");
        require(point, "point");
        const auto& o = opts(options);
        const auto certified = hdist::certify(map->value, o.precision_bits);
        const auto h = hdist::canonical_height(certified, point->value, eps_of(o), height_options(o, true));
        Json j;
        j["point"] = hdist::to_json(point->value);
        j["eps"] = hdist::to_string(eps_of(o));
        j["canonical_height"] = hdist::to_json(h.interval);
        j["n_used"] = h.iterations;
        j["preperiodic"] = h.preperiodic;
        j["C_up"] = hdist::to_json(certified.cert.c_up);
        j["C_low"] = hdist::to_json(certified.cert.c_low);
        j["telescoping_constant"] = hdist::upper_text(certified.telescoping_constant());
        emit(j, json);
    });
}

hd_status hd_distance(const hd_map* a, const hd_map* b, const char* mode, const char* extra_points,
                      const hd_options* options, char** json) {
    return guarded([&] {
        require(a, "first map");
        require(b, "second map");
        const std::string m = mode ? mode : "delta";
        if (m != "delta" && m != "Delta") throw hdist::Error(ErrorKind::invalid_argument, "mode is delta or Delta");
        const auto& o = opts(options);
        const auto phi = hdist::certify(a->value, o.precision_bits);
        const auto psi = hdist::certify(b->value, o.precision_bits);
        const auto spec = sample_of(o, extra_points);
        const auto e = m == "delta" ? hdist::estimate_delta_hat(phi, psi, spec)
                                    : hdist::estimate_Delta_hat(phi, psi, spec);
        Json j;
        j["mode"] = m;
        j["estimate"] = hdist::to_json(e);
        j["sample"] = sample_json(spec);
        emit(j, json);
    });
}

hd_status hd_complexity(const hd_map* map, const char* extra_points, const hd_options* options, char** json) {
    return guarded([&] {
        require(map, "map");
        const auto& o = opts(options);
        const auto phi = hdist::certify(map->value, o.precision_bits);
        const auto spec = sample_of(o, extra_points);
        Json j;
        j["mode"] = "complexity";
        j["estimate"] = hdist::to_json(hdist::estimate_complexity(phi, spec));
        j["sample"] = sample_json(spec);
        emit(j, json);
    });
}

hd_status hd_recover(const char* pairs_json, char** json) {
    return guarded([&] {
        require(pairs_json, "pairs");
        const Json parsed = Json::parse(pairs_json);
        const auto pairs = hdist::pairs_from_json(parsed);
        if (pairs.empty()) throw hdist::Error(ErrorKind::wrong_point_count, "no pairs given");
        const std::size_t dim = parsed.contains("N") ? parsed.at("N").get<std::size_t>() : pairs.front().point.dim();
        if (!parsed.contains("d")) throw hdist::Error(ErrorKind::invalid_argument, "pairs JSON needs \"d\"");
        const auto phi = hdist::recover_map(dim, parsed.at("d").get<unsigned>(), pairs);
        Json j;
        j["map"] = hdist::to_json(phi);
        j["pairs_used"] = pairs.size();
        emit(j, json);
    });
}

hd_status hd_prop9(const hd_map* map, const char* points, unsigned long configurations, const hd_options* options,
                   char** json) {
    return guarded([&] {
        require(map, "map");
        const auto& o = opts(options);
        Json j;
        j["map"] = hdist::to_json(map->value);
        if (points) {
            const auto pts = points_of(points);
            const auto slack = hdist::prop9_slack(map->value, pts, o.precision_bits);
            Json list = Json::array();
            for (const auto& p : pts) list.push_back(hdist::to_json(p));
            j["points"] = list;
            j["slack"] = hdist::to_json(slack);
        } else {
            const auto scan = hdist::prop9_scan(map->value, o.bound, configurations, o.seed, o.precision_bits);
            j["configurations"] = scan.configurations;
            j["degenerate_draws"] = scan.degenerate;
            j["max_negative_slack"] = hdist::upper_text(scan.max_negative_slack);
            Json worst = Json::array();
            for (const auto& p : scan.worst) worst.push_back(hdist::to_json(p));
            j["worst_configuration"] = worst;
            j["seed"] = o.seed;
            j["bound"] = o.bound;
        }
        emit(j, json);
    });
}

hd_status hd_conjugate(const hd_map* map, const char* matrix, hd_map** out) {
    return guarded([&] {
        require(map, "map");
        require(matrix, "matrix");
        require(out, "output pointer");
        const auto f = hdist::PglMap::parse(matrix);
        *out = new hd_map{hdist::conjugate(hdist::classify(map->value), f)};
    });
}

hd_status hd_class_distance(const hd_map* a, const hd_map* b, long entry_bound, const hd_options* options,
                            char** json) {
    return guarded([&] {
        require(a, "first map");
        require(b, "second map");
        const auto& o = opts(options);
        const auto phi = hdist::certify(a->value, o.precision_bits);
        const auto psi = hdist::certify(b->value, o.precision_bits);
        const auto spec = sample_of(o, nullptr);
        const auto result = hdist::class_distance_search(phi, psi, entry_bound, spec);
        Json table = Json::array();
        for (const auto& row : result.table) {
            Json r;
            r["f"] = row.f.to_string();
            r["lower"] = hdist::lower_text(row.estimate.lower);
            r["upper"] = hdist::upper_text(row.estimate.upper);
            r["witness"] = hdist::to_json(row.estimate.witness);
            table.push_back(r);
        }
        Json j;
        j["entry_bound"] = entry_bound;
        j["candidates"] = result.table.size();
        j["best_f"] = result.table[result.best].f.to_string();
        j["best"] = hdist::to_json(result.table[result.best].estimate);
        j["sample"] = sample_json(spec);
        j["table"] = table;
        emit(j, json);
    });
}

hd_status hd_experiment(const char* name, const char* params_json, const hd_options* options, const char* format,
                        char** out) {
    return guarded([&] {
        require(name, "experiment name");
        require(out, "output pointer");
        const auto& o = opts(options);
        const Json params = params_json ? Json::parse(params_json) : Json::object();
        hdist::ExperimentConfig config;
        config.sample_bound = o.bound;
        config.eps = eps_of(o);
        config.precision_bits = o.precision_bits;
        config.seed = o.seed;
        auto integer = [](const Json& v) {
            return v.is_string() ? mpz_class(v.get<std::string>()) : mpz_class(std::to_string(v.get<long long>()));
        };

        const std::string which = name;
        hdist::ExperimentReport report;
        if (which == "phi-a") {
            std::vector<mpz_class> a_values;
            for (const auto& v : params.value("A", Json::array({10, 100, 1000}))) a_values.push_back(integer(v));
            report = hdist::phi_a_experiment(params.value("d", 2u), a_values, config);
        } else if (which == "alpha") {
            report = hdist::alpha_scan(params.value("N", std::size_t{1}), params.value("d", 2u),
                                       params.value("coeff_bound", 2L), config);
        } else if (which == "finiteness") {
            const auto psi = hdist::parse_map(params.value("psi", std::string("power:1,2")));
            const mpq_class bound = hdist::parse_rational(params.value("complexity_bound", std::string("5")));
            report = hdist::finiteness_search(params.value("N", std::size_t{1}), params.value("d", 2u), psi,
                                              params.value("coeff_bound", 1L), bound, config);
        } else {
            throw hdist::Error(ErrorKind::invalid_argument, "unknown experiment '" + which + "'");
        }
        const std::string fmt = format ? format : "json";
        if (fmt == "csv") *out = copy_out(report.to_csv());
        else if (fmt == "json") *out = copy_out(report.to_json().dump(2) + "\n");
        else throw hdist::Error(ErrorKind::invalid_argument, "format is json or csv");
    });
}

}  // extern "C"

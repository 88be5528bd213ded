#include "trace.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bessel.hpp"

namespace gkl {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

std::complex<double> i_pow(unsigned kappa) {
    switch (kappa % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

double log_factorial(unsigned n) {
    double s = 0.0;
    for (unsigned t = 2; t <= n; ++t) s += std::log(static_cast<double>(t));
    return s;
}

/// Certified bound on |2 pi sum_{t >= t1} G/c J_{kappa-1}(4 pi sqrt(m)/c)|
/// for c = c_l t, using |G| <= c and |J_nu(x)| <= (x/2)^nu / nu!.
double tail_bound_from(u64 c_l, u64 t1, unsigned kappa, double sqrt_m) {
    if (kappa < 3) throw domain_error("tail bound needs kappa >= 3");
    const unsigned nu = kappa - 1;
    // per-term bound 2 pi (2 pi sqrt_m / c)^nu / nu!; sum_{t>=t1} t^{-nu}
    // <= t1^{-nu} (1 + t1/(nu-1)).
    double logterm = std::log(2.0 * kPi) +
                     nu * (std::log(2.0 * kPi * sqrt_m) -
                           std::log(static_cast<double>(c_l)) -
                           std::log(static_cast<double>(t1))) -
                     log_factorial(nu);
    double zsum = 1.0 + static_cast<double>(t1) / (nu - 1);
    return std::exp(logterm) * zsum;
}

}  // namespace

GeometricSide geometric_side(const ThetaChar& theta, unsigned l, i64 m1, i64 m2,
                             unsigned kappa, u64 c_max) {
    if (m1 <= 0 || m2 <= 0)
        throw domain_error("geometric_side: m1, m2 must be positive");
    if (static_cast<u64>(m1) % theta.p() == 0 || static_cast<u64>(m2) % theta.p() == 0)
        throw domain_error("geometric_side: m1, m2 must be coprime to p");
    if (kappa < 4 || kappa % 2)
        throw domain_error("geometric_side: kappa must be even and >= 4");
    Constants cst = constants(theta, l);

    GeometricSide gs;
    gs.delta = (m1 == m2) ? 1 : 0;
    gs.kappa = kappa;
    gs.c_max = c_max;
    gs.c_l = cst.c_l;

    const double sqrt_m = std::sqrt(static_cast<double>(m1) *
                                    static_cast<double>(m2));
    const std::complex<double> pref = 2.0 * kPi * i_pow(kappa);
    u64 t = 0;
    for (u64 c = cst.c_l; c <= c_max; c += cst.c_l) {
        ++t;
        GeometricTerm term;
        term.c = c;
        term.g = g_global(m1, m2, theta, l, c).z;
        term.bessel = bessel_j(kappa - 1, 4.0 * kPi * sqrt_m /
                                              static_cast<double>(c));
        term.contrib = pref * term.g / static_cast<double>(c) * term.bessel;
        gs.kloosterman_sum += term.contrib;
        gs.terms.push_back(term);
    }
    gs.tail_bound = tail_bound_from(cst.c_l, t + 1, kappa, sqrt_m);
    return gs;
}

std::string geometric_to_json(const GeometricSide& gs) {
    nlohmann::json j;
    j["delta"] = gs.delta;
    j["sum_re"] = gs.kloosterman_sum.real();
    j["sum_im"] = gs.kloosterman_sum.imag();
    j["tail_bound"] = gs.tail_bound;
    j["kappa"] = gs.kappa;
    j["c_max"] = gs.c_max;
    j["c_l"] = gs.c_l;
    j["terms"] = nlohmann::json::array();
    for (const GeometricTerm& t : gs.terms) {
        j["terms"].push_back({{"c", t.c},
                              {"g_re", t.g.real()},
                              {"g_im", t.g.imag()},
                              {"bessel", t.bessel},
                              {"contrib_re", t.contrib.real()},
                              {"contrib_im", t.contrib.imag()}});
    }
    return j.dump(2);
}

SpectralDataset parse_spectral(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw domain_error(std::string("spectral dataset: JSON parse error: ") +
                           e.what());
    }
    SpectralDataset ds;
    try {
        ds.p = j.at("p").get<u64>();
        ds.level_exponent = j.at("level_exponent").get<unsigned>();
        ds.kappa = j.at("kappa").get<unsigned>();
        for (const auto& e : j.at("entries")) {
            SpectralEntry entry;
            entry.label = e.at("label").get<std::string>();
            entry.petersson_norm = e.at("petersson_norm").get<double>();
            if (!(entry.petersson_norm > 0.0))
                throw domain_error("spectral dataset: entry '" + entry.label +
                                   "': petersson_norm must be positive");
            for (const auto& [key, val] : e.at("lambda").items()) {
                u64 m = std::stoull(key);
                entry.lambda[m] = val.get<double>();
            }
            auto l1 = entry.lambda.find(1);
            if (l1 == entry.lambda.end() || l1->second != 1.0)
                throw domain_error("spectral dataset: entry '" + entry.label +
                                   "': lambda_1 must be present and equal 1");
            ds.entries.push_back(std::move(entry));
        }
    } catch (const nlohmann::json::exception& e) {
        throw domain_error(std::string("spectral dataset: schema violation: ") +
                           e.what());
    }
    return ds;
}

SpectralDataset load_spectral(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("spectral dataset: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spectral(ss.str());
}

std::string spectral_to_json(const SpectralDataset& ds) {
    nlohmann::json j;
    j["p"] = ds.p;
    j["level_exponent"] = ds.level_exponent;
    j["kappa"] = ds.kappa;
    j["entries"] = nlohmann::json::array();
    for (const SpectralEntry& e : ds.entries) {
        nlohmann::json lam = nlohmann::json::object();
        for (const auto& [m, v] : e.lambda) lam[std::to_string(m)] = v;
        j["entries"].push_back({{"label", e.label},
                                {"lambda", lam},
                                {"petersson_norm", e.petersson_norm}});
    }
    return j.dump(2);
}

PeterssonResidual petersson_residual(const SpectralDataset& ds,
                                     const ThetaChar& theta, unsigned l, i64 m1,
                                     i64 m2, unsigned kappa, u64 c_max,
                                     double gauge) {
    if (ds.p != theta.p())
        throw domain_error("petersson_residual: dataset prime mismatch");
    if (ds.kappa != kappa)
        throw domain_error("petersson_residual: dataset weight mismatch");
    if (ds.level_exponent != theta.c_pi())
        throw domain_error("petersson_residual: dataset level mismatch");

    PeterssonResidual out;
    out.geometric = geometric_side(theta, l, m1, m2, kappa, c_max);
    for (const SpectralEntry& e : ds.entries) {
        auto a = e.lambda.find(static_cast<u64>(m1));
        auto b = e.lambda.find(static_cast<u64>(m2));
        if (a == e.lambda.end() || b == e.lambda.end())
            throw domain_error("petersson_residual: entry '" + e.label +
                               "' lacks lambda at m1 or m2");
        out.lhs += a->second * b->second / e.petersson_norm;
    }
    Constants cst = constants(theta, l);
    double scale = gauge * static_cast<double>(cst.CF_l) *
                   std::exp((kappa - 1) * std::log(4.0 * kPi) -
                            log_factorial(kappa - 2));
    out.rhs = scale * out.geometric.bracket();
    out.tail_bound = scale * out.geometric.tail_bound;
    out.residual = out.lhs - out.rhs;
    return out;
}

}  // namespace gkl

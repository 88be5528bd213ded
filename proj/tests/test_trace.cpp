#include <doctest.h>

#include <cmath>
#include <complex>

#include <json.hpp>

#include "trace.hpp"

using namespace gkl;

namespace {
ThetaChar inert_theta(u64 p, unsigned cond) {
    EtaleQuadratic alg =
        EtaleQuadratic::make(PrimePower(p, cond + 10), AlgKind::inert);
    return ThetaChar::make(alg, cond, 1);
}
}  // namespace

TEST_CASE("geometric side structure") {
    ThetaChar th = inert_theta(5, 2);
    Constants cst = constants(th, 1);
    GeometricSide gs = geometric_side(th, 1, 1, 1, 12, cst.c_l * 5);
    CHECK(gs.delta == 1);
    CHECK(gs.c_l == cst.c_l);
    CHECK(gs.terms.size() == 5);
    for (const GeometricTerm& t : gs.terms) CHECK(t.c % cst.c_l == 0);
    CHECK(gs.tail_bound > 0.0);
    CHECK(gs.tail_bound < 1e-12);  // kappa = 12, c >= 125: deep in the tail
    GeometricSide off = geometric_side(th, 1, 1, 2, 12, cst.c_l * 5);
    CHECK(off.delta == 0);

    nlohmann::json parsed = nlohmann::json::parse(geometric_to_json(gs));
    CHECK(parsed["delta"] == 1);
    CHECK(parsed["terms"].size() == 5);
    CHECK(parsed["terms"][0].contains("bessel"));
}

TEST_CASE("geometric side input validation") {
    ThetaChar th = inert_theta(5, 2);
    CHECK_THROWS_AS(geometric_side(th, 1, 0, 1, 12, 1000), domain_error);
    CHECK_THROWS_AS(geometric_side(th, 1, 5, 1, 12, 1000), domain_error);
    CHECK_THROWS_AS(geometric_side(th, 1, 1, 1, 3, 1000), domain_error);
    CHECK_THROWS_AS(geometric_side(th, 1, 1, 1, 13, 1000), domain_error);
}

TEST_CASE("spectral dataset round trip") {
    SpectralDataset ds;
    ds.p = 5;
    ds.level_exponent = 4;
    ds.kappa = 12;
    SpectralEntry e;
    e.label = "f1";
    e.lambda = {{1, 1.0}, {2, -0.25}};
    e.petersson_norm = 3.5;
    ds.entries.push_back(e);
    SpectralDataset back = parse_spectral(spectral_to_json(ds));
    CHECK(back.p == 5);
    CHECK(back.level_exponent == 4);
    CHECK(back.entries.size() == 1);
    CHECK(back.entries[0].lambda.at(2) == doctest::Approx(-0.25));
    CHECK(back.entries[0].petersson_norm == doctest::Approx(3.5));
}

TEST_CASE("spectral dataset validation is loud") {
    CHECK_THROWS_AS(parse_spectral("not json"), domain_error);
    CHECK_THROWS_AS(parse_spectral("{\"p\": 5}"), domain_error);
    // lambda_1 must be present and equal to 1
    const char* bad_l1 =
        "{\"p\":5,\"level_exponent\":4,\"kappa\":12,\"entries\":"
        "[{\"label\":\"f\",\"lambda\":{\"1\":0.5},\"petersson_norm\":1.0}]}";
    CHECK_THROWS_AS(parse_spectral(bad_l1), domain_error);
    const char* bad_norm =
        "{\"p\":5,\"level_exponent\":4,\"kappa\":12,\"entries\":"
        "[{\"label\":\"f\",\"lambda\":{\"1\":1.0},\"petersson_norm\":-1.0}]}";
    CHECK_THROWS_AS(parse_spectral(bad_norm), domain_error);
    const char* good =
        "{\"p\":5,\"level_exponent\":4,\"kappa\":12,\"entries\":"
        "[{\"label\":\"f\",\"lambda\":{\"1\":1.0},\"petersson_norm\":2.0}]}";
    CHECK(parse_spectral(good).entries.size() == 1);
}

TEST_CASE("residual wiring rejects mismatched datasets") {
    ThetaChar th = inert_theta(5, 2);  // c(pi) = 4
    SpectralDataset ds;
    ds.p = 5;
    ds.level_exponent = 3;  // != c(pi)
    ds.kappa = 12;
    SpectralEntry e;
    e.label = "f";
    e.lambda = {{1, 1.0}};
    e.petersson_norm = 1.0;
    ds.entries.push_back(e);
    CHECK_THROWS_AS(petersson_residual(ds, th, 1, 1, 1, 12, 625), domain_error);
    ds.level_exponent = 4;
    ds.kappa = 10;
    CHECK_THROWS_AS(petersson_residual(ds, th, 1, 1, 1, 12, 625), domain_error);
}

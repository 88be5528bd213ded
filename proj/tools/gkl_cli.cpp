// Command-line front end; talks to the library exclusively through the
// C API in gkl.h.  Exit codes: 0 success, 1 domain/math error, 2 usage.
#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "gkl.h"

namespace {

struct ThetaFlags {
    std::uint64_t p = 5;
    std::string kind = "inert";
    unsigned cond = 2;
    bool twist = false;
    std::uint64_t alpha0 = 1;
    std::uint64_t tame_exp = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--p", p, "prime p >= 5");
        cmd->add_option("--kind", kind, "algebra kind: split|inert|ramified");
        cmd->add_option("--cond", cond, "conductor c(theta)");
        cmd->add_flag("--twist", twist, "ramified: use D = p*r instead of p");
        cmd->add_option("--alpha0", alpha0, "alpha parameter (unit residue)");
        cmd->add_option("--tame", tame_exp, "split tame exponent mod p-1");
    }

    gkl_theta* build() const {
        return gkl_theta_new(p, kind.c_str(), cond, twist ? 1 : 0, alpha0,
                             tame_exp);
    }
};

int print_or_fail(int rc, char* text) {
    if (rc != GKL_OK) {
        std::fprintf(stderr, "error: %s\n", gkl_last_error());
        return rc == GKL_ERR_USAGE ? 2 : 1;
    }
    std::fputs(text, stdout);
    gkl_free_string(text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized Kloosterman sums, dual sums and trace-formula "
                 "geometric sides"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads,
                   "worker threads (default: GKL_THREADS or 1)");

    // ---- gp ----
    ThetaFlags gp_theta;
    std::int64_t gp_m1 = 1, gp_m2 = 1;
    unsigned gp_k = 3, gp_depth = 0;
    std::uint64_t gp_mu = 1;
    std::string gp_mode = "brute";
    bool gp_grid = false;
    CLI::App* gp_cmd = app.add_subcommand("gp", "gen-Kloosterman table (CSV)");
    gp_theta.attach(gp_cmd);
    gp_cmd->add_option("--m1", gp_m1);
    gp_cmd->add_option("--m2", gp_m2);
    gp_cmd->add_option("--k", gp_k, "v(mu) = -2k");
    gp_cmd->add_option("--mu-unit", gp_mu, "unit part of mu p^{2k} mod p^k");
    gp_cmd->add_option("--depth", gp_depth, "congruence depth (0 = full)");
    gp_cmd->add_option("--mode", gp_mode, "brute|stationary");
    gp_cmd->add_flag("--grid-units", gp_grid, "sweep m1 over units mod p^k");

    // ---- dualsum ----
    ThetaFlags ds_theta;
    std::int64_t ds_m1 = 1, ds_m2 = 1, ds_ell = 1;
    unsigned ds_k = 3;
    bool ds_grid = false;
    CLI::App* ds_cmd = app.add_subcommand("dualsum", "Voronoi-dual sums (CSV)");
    ds_theta.attach(ds_cmd);
    ds_cmd->add_option("--k", ds_k);
    ds_cmd->add_option("--m1", ds_m1);
    ds_cmd->add_option("--m2", ds_m2);
    ds_cmd->add_option("--ell", ds_ell);
    ds_cmd->add_flag("--grid", ds_grid, "sweep m1 over units mod p^k");

    // ---- trace ----
    CLI::App* tr_cmd = app.add_subcommand("trace", "trace-formula geometric side");
    tr_cmd->require_subcommand(1);
    ThetaFlags tr_theta;
    std::int64_t tr_m1 = 1, tr_m2 = 1;
    unsigned tr_l = 0, tr_kappa = 12;
    std::uint64_t tr_cmax = 0;
    double tr_gauge = 1.0;
    std::string tr_data;
    CLI::App* tr_geo = tr_cmd->add_subcommand("geometric", "bracket (JSON)");
    CLI::App* tr_res = tr_cmd->add_subcommand("residual",
                                              "spectral residual (JSON)");
    for (CLI::App* c : {tr_geo, tr_res}) {
        tr_theta.attach(c);
        c->add_option("--l", tr_l, "family radius");
        c->add_option("--m1", tr_m1);
        c->add_option("--m2", tr_m2);
        c->add_option("--kappa", tr_kappa, "weight (even >= 4)");
        c->add_option("--cmax", tr_cmax, "truncation (default c_l * p^2)");
    }
    tr_res->add_option("--data", tr_data, "spectral dataset JSON")->required();
    tr_res->add_option("--gauge", tr_gauge, "norm-convention scalar");

    // ---- verify ----
    std::string vf_suite;
    ThetaFlags vf_theta;
    unsigned vf_l = 0, vf_k = 3, vf_n = 1;
    CLI::App* vf_cmd = app.add_subcommand("verify", "property suites (JSON)");
    vf_cmd->add_option("suite", vf_suite,
                       "classical|average|cancellation|dualsum|bijection|"
                       "orthogonality")
        ->required();
    vf_theta.attach(vf_cmd);
    vf_cmd->add_option("--l", vf_l);
    vf_cmd->add_option("--k", vf_k);
    vf_cmd->add_option("--n", vf_n, "radius (bijection) / j (orthogonality)");

    // ---- bench ----
    ThetaFlags bn_theta;
    std::int64_t bn_m1 = 1, bn_m2 = 1;
    unsigned bn_k = 8;
    CLI::App* bn_cmd = app.add_subcommand("bench", "brute vs stationary (JSON)");
    bn_theta.attach(bn_cmd);
    bn_cmd->add_option("--k", bn_k);
    bn_cmd->add_option("--m1", bn_m1);
    bn_cmd->add_option("--m2", bn_m2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // help/version exit 0, any misuse exits 2
    }
    if (threads) gkl_set_threads(threads);

    auto with_theta = [](const ThetaFlags& tf, auto fn) -> int {
        gkl_theta* t = tf.build();
        if (!t) {
            std::fprintf(stderr, "error: %s\n", gkl_last_error());
            return 1;
        }
        int rc = fn(t);
        gkl_theta_free(t);
        return rc;
    };

    if (gp_cmd->parsed()) {
        return with_theta(gp_theta, [&](gkl_theta* t) {
            char* csv = nullptr;
            int rc = gkl_gp_table_csv(t, gp_m1, gp_m2, gp_k, gp_mu, gp_depth,
                                      gp_mode.c_str(), gp_grid ? 1 : 0, &csv);
            return print_or_fail(rc, csv);
        });
    }
    if (ds_cmd->parsed()) {
        return with_theta(ds_theta, [&](gkl_theta* t) {
            char* csv = nullptr;
            int rc = gkl_dualsum_csv(t, ds_k, ds_m2, ds_ell, ds_m1,
                                     ds_grid ? 1 : 0, &csv);
            return print_or_fail(rc, csv);
        });
    }
    if (tr_cmd->parsed()) {
        const bool residual = tr_res->parsed();
        return with_theta(tr_theta, [&](gkl_theta* t) {
            std::uint64_t cmax = tr_cmax;
            if (cmax == 0) {
                gkl_constants_result cst;
                if (gkl_constants(t, tr_l, &cst) != GKL_OK) {
                    std::fprintf(stderr, "error: %s\n", gkl_last_error());
                    return 1;
                }
                cmax = cst.c_l * tr_theta.p * tr_theta.p;
            }
            char* json = nullptr;
            int rc = residual
                         ? gkl_trace_residual_json(t, tr_data.c_str(), tr_l,
                                                   tr_m1, tr_m2, tr_kappa,
                                                   cmax, tr_gauge, &json)
                         : gkl_trace_geometric_json(t, tr_l, tr_m1, tr_m2,
                                                    tr_kappa, cmax, &json);
            return print_or_fail(rc, json);
        });
    }
    if (vf_cmd->parsed()) {
        char* json = nullptr;
        int rc = gkl_verify_json(vf_suite.c_str(), vf_theta.p,
                                 vf_theta.kind.c_str(), vf_theta.cond, vf_l,
                                 vf_k, vf_n, vf_theta.twist ? 1 : 0, &json);
        if (rc != GKL_OK) {
            std::fprintf(stderr, "error: %s\n", gkl_last_error());
            return rc == GKL_ERR_USAGE ? 2 : 1;
        }
        const bool passed = std::string(json).find("\"pass\": false") ==
                            std::string::npos;
        std::fputs(json, stdout);
        gkl_free_string(json);
        return passed ? 0 : 1;
    }
    if (bn_cmd->parsed()) {
        return with_theta(bn_theta, [&](gkl_theta* t) {
            char* json = nullptr;
            int rc = gkl_bench_json(t, bn_k, bn_m1, bn_m2, &json);
            return print_or_fail(rc, json);
        });
    }
    return 2;
}

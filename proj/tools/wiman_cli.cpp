// Command-line front end: maximal terms, torus maxima, radius sweeps,
// tail experiments, and the sharpness construction.  All output is
// deterministic for a fixed flag set and seed.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "wiman/bounds.hpp"
#include "wiman/log_measure.hpp"
#include "wiman/series.hpp"
#include "wiman/sharpness.hpp"
#include "wiman/sweep.hpp"
#include "wiman/sz_tail.hpp"
#include "wiman/torus.hpp"

namespace {

using namespace wiman;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct RuleOpts {
    std::string name = "sqrthalf";
    double epsilon = 0.5;
    int p = 1;
    std::string json_path;
};

void add_rule_opts(CLI::App* cmd, RuleOpts& o) {
    cmd->add_option("--rule", o.name,
                    "geometric|powerexp|sqrthalf|sqrt|productsqrthalf");
    cmd->add_option("--epsilon", o.epsilon, "powerexp exponent in (0,1)");
    cmd->add_option("--p", o.p, "number of variables")->check(CLI::PositiveNumber);
    cmd->add_option("--rule-json", o.json_path, "JSON file with a serialized rule");
}

CoefficientRule build_rule(const RuleOpts& o) {
    if (!o.json_path.empty()) {
        std::ifstream f(o.json_path);
        if (!f) throw Error("cannot open rule file " + o.json_path);
        std::stringstream ss;
        ss << f.rdbuf();
        return CoefficientRule::from_json(ss.str());
    }
    if (o.name == "geometric") return CoefficientRule::geometric(o.p);
    if (o.name == "powerexp") return CoefficientRule::power_exp(o.epsilon);
    if (o.name == "sqrthalf") return CoefficientRule::sqrt_half();
    if (o.name == "sqrt") return CoefficientRule::sqrt();
    if (o.name == "productsqrthalf") return CoefficientRule::product_sqrt_half(o.p);
    throw Error("unknown rule '" + o.name + "'");
}

struct RadiusOpts {
    std::vector<double> r;
    int k = -1;
};

void add_radius_opts(CLI::App* cmd, RadiusOpts& o) {
    cmd->add_option("--r", o.r, "radius per axis (repeatable)");
    cmd->add_option("--k", o.k, "dyadic radius r = 1 - 2^-k, diagonal");
}

RadiusVector build_radius(const RadiusOpts& o, int p) {
    if (!o.r.empty()) {
        if (static_cast<int>(o.r.size()) != p)
            throw Error("expected " + std::to_string(p) + " radii");
        return RadiusVector(o.r);
    }
    if (o.k >= 1) return RadiusVector::dyadic(p, o.k);
    throw Error("give either --r or --k");
}

struct SignOpts {
    std::string kind = "plusonly";
    std::uint64_t seed = 0;
};

void add_sign_opts(CLI::App* cmd, SignOpts& o) {
    cmd->add_option("--signs", o.kind, "rademacher|unitphase|plusonly");
    cmd->add_option("--seed", o.seed, "sign-model seed");
}

SignModel build_model(const SignOpts& o) {
    return SignModel{sign_kind_from_name(o.kind), o.seed};
}

std::size_t entries_from_mb(double mb) {
    if (!(mb > 0.0)) throw Error("--budget-mb must be > 0");
    return static_cast<std::size_t>(mb * 1024.0 * 1024.0 / sizeof(std::complex<double>));
}

void emit(const std::string& text, const std::string& out_path) {
    std::cout << text;
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw Error("cannot open output file " + out_path);
        f << text;
    }
}

TruncationSpec clamped_truncation(const CoefficientRule& rule, const RadiusVector& r,
                                  double ln_mu, double delta, const TorusGridSpec& grid) {
    TruncationSpec trunc = rule.kind() == RuleKind::Table
                               ? table_truncation(rule)
                               : truncation_degree(ln_mu, r, delta);
    const std::int64_t cap = axis_cap_budget(rule.dim(), grid);
    for (auto& c : trunc.per_axis_caps) c = std::min(c, cap);
    return trunc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maximal term vs maximum modulus experiments in the unit polydisc"};
    app.require_subcommand(1);
    std::function<int()> action;

    // ---- maxterm ------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("maxterm", "maximal term ln mu_f(r) and its argmax");
        auto ro = std::make_shared<RuleOpts>();
        auto rad = std::make_shared<RadiusOpts>();
        auto out = std::make_shared<std::string>();
        add_rule_opts(cmd, *ro);
        add_radius_opts(cmd, *rad);
        cmd->add_option("--out", *out);
        cmd->callback([=, &action] {
            action = [=] {
                CoefficientRule rule = build_rule(*ro);
                MaximalTerm mt = maximal_term(rule, build_radius(*rad, rule.dim()));
                std::string text = "ln_mu " + num(mt.ln_mu) + "\nargmax";
                for (auto n : mt.argmax.entries) text += " " + std::to_string(n);
                text += "\n";
                emit(text, *out);
                return 0;
            };
        });
    }

    // ---- summod -------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("summod", "ln of the modulus sum sum |a_n| r^n");
        auto ro = std::make_shared<RuleOpts>();
        auto rad = std::make_shared<RadiusOpts>();
        auto tol = std::make_shared<double>(1e-12);
        auto out = std::make_shared<std::string>();
        add_rule_opts(cmd, *ro);
        add_radius_opts(cmd, *rad);
        cmd->add_option("--rel-tol", *tol);
        cmd->add_option("--out", *out);
        cmd->callback([=, &action] {
            action = [=] {
                CoefficientRule rule = build_rule(*ro);
                double v = sum_modulus(rule, build_radius(*rad, rule.dim()), *tol);
                emit("ln_sum " + num(v) + "\n", *out);
                return 0;
            };
        });
    }

    // ---- maxmod -------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("maxmod", "torus maximum of one sign realization");
        auto ro = std::make_shared<RuleOpts>();
        auto rad = std::make_shared<RadiusOpts>();
        auto so = std::make_shared<SignOpts>();
        auto delta = std::make_shared<double>(0.25);
        auto realization = std::make_shared<std::uint64_t>(0);
        auto budget_mb = std::make_shared<double>(1024.0);
        auto out = std::make_shared<std::string>();
        add_rule_opts(cmd, *ro);
        add_radius_opts(cmd, *rad);
        add_sign_opts(cmd, *so);
        cmd->add_option("--delta", *delta);
        cmd->add_option("--realization", *realization);
        cmd->add_option("--budget-mb", *budget_mb);
        cmd->add_option("--out", *out);
        cmd->callback([=, &action] {
            action = [=] {
                CoefficientRule rule = build_rule(*ro);
                RadiusVector r = build_radius(*rad, rule.dim());
                TorusGridSpec grid;
                if (rule.dim() > 1) grid.oversample = 2;
                grid.max_padded_entries = entries_from_mb(*budget_mb);
                double ln_mu = maximal_term(rule, r).ln_mu;
                TruncationSpec trunc = clamped_truncation(rule, r, ln_mu, *delta, grid);
                SignRealization signs(build_model(*so), *realization);
                TorusMaxResult res = torus_max(rule, signs, r, trunc, grid);
                std::string text = "ln_max " + num(res.ln_max) + "\ngrid_ln_max " +
                                   num(res.grid_ln_max) + "\ntail_log_bound " +
                                   num(res.tail_log_bound) + "\npsi";
                for (double a : res.argmax_psi) text += " " + num(a);
                text += "\n";
                emit(text, *out);
                return 0;
            };
        });
    }

    // ---- sweep --------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("sweep", "dyadic radius sweep, CSV per k");
        auto ro = std::make_shared<RuleOpts>();
        auto so = std::make_shared<SignOpts>();
        auto cfg = std::make_shared<SweepConfig>();
        auto budget_mb = std::make_shared<double>(-1.0);
        auto out = std::make_shared<std::string>();
        add_rule_opts(cmd, *ro);
        add_sign_opts(cmd, *so);
        cmd->add_option("--delta", cfg->delta);
        cmd->add_option("--k-min", cfg->k_min);
        cmd->add_option("--k-max", cfg->k_max);
        cmd->add_option("--realizations", cfg->realizations);
        cmd->add_option("--budget-mb", *budget_mb);
        cmd->add_option("--out", *out);
        cmd->callback([=, &action] {
            action = [=] {
                cfg->rule = build_rule(*ro);
                cfg->sign_model = build_model(*so);
                if (cfg->rule.dim() > 1) cfg->grid.oversample = 2;
                if (*budget_mb > 0)
                    cfg->grid.max_padded_entries = entries_from_mb(*budget_mb);
                cfg->output_path = *out;
                SweepResult res = run_sweep(*cfg);
                std::cout << sweep_rows_to_csv(res.rows);
                return res.truncated ? 2 : 0;
            };
        });
    }

    // ---- sz-tail ------------------------------------------------------
    {
        auto* cmd = app.add_subcommand(
            "sz-tail", "exceedance frequencies of A * S_N * sqrt(ln N) thresholds");
        auto so = std::make_shared<SignOpts>();
        so->kind = "rademacher";
        auto N_list = std::make_shared<std::vector<std::int64_t>>(
            std::vector<std::int64_t>{64, 256, 1024});
        auto A_min = std::make_shared<double>(1.0);
        auto A_max = std::make_shared<double>(8.0);
        auto A_step = std::make_shared<double>(0.5);
        auto trials = std::make_shared<int>(1000);
        auto p = std::make_shared<int>(1);
        auto out = std::make_shared<std::string>();
        add_sign_opts(cmd, *so);
        cmd->add_option("--n", *N_list, "degrees N (repeatable)");
        cmd->add_option("--a-min", *A_min);
        cmd->add_option("--a-max", *A_max);
        cmd->add_option("--a-step", *A_step);
        cmd->add_option("--trials", *trials);
        cmd->add_option("--p", *p)->check(CLI::PositiveNumber);
        cmd->add_option("--out", *out);
        cmd->callback([=, &action] {
            action = [=] {
                std::int64_t maxN = 0;
                for (auto n : *N_list) maxN = std::max(maxN, n);
                std::vector<double> coeff(static_cast<std::size_t>(maxN) + 1, 1.0);
                std::vector<double> A_grid;
                for (double a = *A_min; a <= *A_max + 1e-12; a += *A_step)
                    A_grid.push_back(a);
                TorusGridSpec grid;
                if (*p > 1) grid.oversample = 2;
                auto rows = sz_tail_experiment(coeff, build_model(*so), *N_list, A_grid,
                                               *trials, *p, grid);
                emit(tail_rows_to_csv(rows), *out);
                return 0;
            };
        });
    }

    // ---- deriv-check --------------------------------------------------
    {
        auto* cmd = app.add_subcommand(
            "deriv-check", "finite-difference log-derivative inequality along one axis");
        auto ro = std::make_shared<RuleOpts>();
        auto rad = std::make_shared<RadiusOpts>();
        auto axis = std::make_shared<int>(0);
        auto delta = std::make_shared<double>(0.25);
        auto h = std::make_shared<double>(-1.0);
        auto out = std::make_shared<std::string>();
        add_rule_opts(cmd, *ro);
        add_radius_opts(cmd, *rad);
        cmd->add_option("--axis", *axis);
        cmd->add_option("--delta", *delta);
        cmd->add_option("--step", *h, "finite-difference step; default 1e-6*(1-r_axis)");
        cmd->add_option("--out", *out);
        cmd->callback([=, &action] {
            action = [=] {
                CoefficientRule rule = build_rule(*ro);
                RadiusVector r = build_radius(*rad, rule.dim());
                double step = *h > 0 ? *h : 1e-6 * (1.0 - r.radius(*axis));
                DerivativeCheck dc = log_derivative_check(rule, r, *axis, *delta, step);
                emit("lhs " + num(dc.lhs) + "\nrhs " + num(dc.rhs) + "\nholds " +
                         (dc.holds ? std::string("1") : std::string("0")) + "\n",
                     *out);
                return 0;
            };
        });
    }

    // ---- logmeasure ---------------------------------------------------
    {
        auto* cmd = app.add_subcommand("logmeasure", "logarithmic measure of radius sets");
        cmd->require_subcommand(1);

        auto lo = std::make_shared<std::vector<double>>();
        auto hi = std::make_shared<std::vector<double>>();
        auto out = std::make_shared<std::string>();

        auto* box = cmd->add_subcommand("box", "exact measure of an axis box");
        box->add_option("--lo", *lo)->required();
        box->add_option("--hi", *hi)->required();
        box->add_option("--out", *out);
        box->callback([=, &action] {
            action = [=] {
                Box b{RadiusVector(*lo), RadiusVector(*hi)};
                LogMeasureEstimate est;
                est.value = box_log_measure(b);
                emit(est.to_json() + "\n", *out);
                return 0;
            };
        });

        auto ro = std::make_shared<RuleOpts>();
        auto threshold = std::make_shared<double>(0.0);
        auto cells = std::make_shared<int>(64);
        auto* region = cmd->add_subcommand(
            "region", "grid measure of {r : ln mu_f(r) >= threshold} in a box");
        add_rule_opts(region, *ro);
        region->add_option("--lo", *lo)->required();
        region->add_option("--hi", *hi)->required();
        region->add_option("--threshold", *threshold);
        region->add_option("--cells", *cells, "cells per axis");
        region->add_option("--out", *out);
        region->callback([=, &action] {
            action = [=] {
                CoefficientRule rule = build_rule(*ro);
                Box b{RadiusVector(*lo), RadiusVector(*hi)};
                auto est = region_log_measure(
                    [&](const RadiusVector& r) {
                        return maximal_term(rule, r).ln_mu >= *threshold;
                    },
                    b, *cells);
                emit(est.to_json() + "\n", *out);
                return 0;
            };
        });

        auto p = std::make_shared<int>(2);
        auto t_star = std::make_shared<double>(-1.0);
        auto upper = std::make_shared<double>(1.0 - 1.0 / 4096.0);
        auto qcells = std::make_shared<int>(256);
        auto* estar = cmd->add_subcommand(
            "estar", "measure of the near-diagonal witness set");
        estar->add_option("--p", *p)->check(CLI::PositiveNumber);
        estar->add_option("--t-star", *t_star, "lower endpoint; default: first dyadic t "
                                               "where the band ordering holds");
        estar->add_option("--upper", *upper);
        estar->add_option("--cells", *qcells);
        estar->add_option("--out", *out);
        estar->callback([=, &action] {
            action = [=] {
                SharpnessProfile prof;
                double ts = *t_star > 0 ? *t_star : prof.default_t_star();
                auto est = prof.estar_log_measure(*p, ts, *upper, *qcells);
                emit(est.to_json() + "\n", *out);
                return 0;
            };
        });
    }

    // ---- sharpness ----------------------------------------------------
    {
        auto* cmd = app.add_subcommand("sharpness", "the slow-growth profile g and its checks");
        cmd->require_subcommand(1);
        auto t = std::make_shared<double>(-1.0);
        auto k = std::make_shared<int>(-1);
        auto inv = std::make_shared<double>(-1.0);
        auto out = std::make_shared<std::string>();

        auto resolve_t = [=] {
            if (*t > 0) return *t;
            if (*k >= 1) return 1.0 - std::ldexp(1.0, -*k);
            throw Error("give either --t or --k");
        };

        auto* c2 = cmd->add_subcommand("check-2s", "band-width inequality at t");
        c2->add_option("--t", *t);
        c2->add_option("--k", *k);
        c2->add_option("--out", *out);
        c2->callback([=, &action] {
            action = [=] {
                SharpnessProfile prof;
                Check2sResult res = prof.check_2s(resolve_t());
                emit("lhs " + num(res.lhs) + "\nrhs " + num(res.rhs) + "\nholds " +
                         (res.holds ? std::string("1") : std::string("0")) + "\n",
                     *out);
                return 0;
            };
        });

        auto* g = cmd->add_subcommand("g", "evaluate g(t) or its inverse");
        g->add_option("--t", *t);
        g->add_option("--k", *k);
        g->add_option("--inverse", *inv, "value v: print g^-1(v) instead");
        g->add_option("--out", *out);
        g->callback([=, &action] {
            action = [=] {
                SharpnessProfile prof;
                std::string text;
                if (*inv > 0)
                    text = "g_inverse " + num(prof.g_inverse(*inv)) + "\n";
                else
                    text = "g " + num(prof.g(resolve_t())) + "\n";
                emit(text, *out);
                return 0;
            };
        });
    }

    // ---- levy ---------------------------------------------------------
    {
        auto* cmd = app.add_subcommand(
            "levy", "paired deterministic/random sweep with slope read-out");
        auto ro = std::make_shared<RuleOpts>();
        auto seed = std::make_shared<std::uint64_t>(1);
        auto k_min = std::make_shared<int>(-1);
        auto k_max = std::make_shared<int>(-1);
        auto realizations = std::make_shared<int>(-1);
        auto delta = std::make_shared<double>(0.25);
        auto budget_mb = std::make_shared<double>(-1.0);
        auto out = std::make_shared<std::string>();
        add_rule_opts(cmd, *ro);
        cmd->add_option("--seed", *seed);
        cmd->add_option("--k-min", *k_min);
        cmd->add_option("--k-max", *k_max);
        cmd->add_option("--realizations", *realizations);
        cmd->add_option("--delta", *delta);
        cmd->add_option("--budget-mb", *budget_mb);
        cmd->add_option("--out", *out, "CSV prefix: writes <out>.det.csv and <out>.random.csv");
        cmd->callback([=, &action] {
            action = [=] {
                SweepConfig cfg;
                cfg.rule = build_rule(*ro);
                const bool poly = cfg.rule.dim() > 1;
                cfg.delta = *delta;
                cfg.k_min = *k_min >= 1 ? *k_min : (poly ? 3 : 4);
                cfg.k_max = *k_max >= 1 ? *k_max : (poly ? 6 : 10);
                cfg.realizations = 1;
                if (poly) {
                    cfg.grid.oversample = 2;
                    cfg.grid.max_padded_entries = std::size_t{1} << 24;
                }
                if (*budget_mb > 0)
                    cfg.grid.max_padded_entries = entries_from_mb(*budget_mb);
                cfg.sign_model = SignModel{SignKind::PlusOnly, *seed};
                if (!out->empty()) cfg.output_path = *out + ".det.csv";
                SweepResult det = run_sweep(cfg);

                cfg.sign_model = SignModel{SignKind::Rademacher, *seed};
                cfg.realizations = *realizations >= 1 ? *realizations : (poly ? 16 : 32);
                if (!out->empty()) cfg.output_path = *out + ".random.csv";
                SweepResult rnd = run_sweep(cfg);

                auto excess = [](const SweepRow& row) {
                    return row.ln_M_median - row.ln_mu;
                };
                auto [sd, ed] = fit_slope(det.rows, excess);
                auto [sr, er] = fit_slope(rnd.rows, excess);
                std::cout << "det_slope " << num(sd) << " stderr " << num(ed) << "\n"
                          << "random_slope " << num(sr) << " stderr " << num(er) << "\n"
                          << "ratio " << num(sr / sd) << "\n";
                return det.truncated || rnd.truncated ? 2 : 0;
            };
        });
    }

    try {
        app.parse(argc, argv);
        return action();
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

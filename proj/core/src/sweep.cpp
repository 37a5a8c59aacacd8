#include "wiman/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "wiman/series.hpp"

namespace wiman {

// Largest per-axis cap c such that a padded grid of extent
// next_pow2(oversample*(c+1)) per axis stays inside the entry budget.
std::int64_t axis_cap_budget(int p, const TorusGridSpec& grid) {
    auto fits = [&](std::size_t extent) {
        std::size_t total = 1;
        for (int j = 0; j < p; ++j) {
            if (total > grid.max_padded_entries / extent) return false;
            total *= extent;
        }
        return true;
    };
    std::size_t extent = 2;
    while (extent * 2 != 0 && fits(extent * 2)) extent *= 2;
    std::int64_t cap =
        static_cast<std::int64_t>(extent / static_cast<std::size_t>(grid.oversample)) - 1;
    return std::max<std::int64_t>(cap, 1);
}

namespace {

// Does the per-axis amplitude profile still carry live mass at the cap?
bool cap_cuts_support(const CoefficientRule& rule, const RadiusVector& r, int axis,
                      std::int64_t cap) {
    const double log_r = r.log_radius(axis);
    if (log_r == kNegInf) return false;
    auto term = [&](double x) { return rule.axis_log_coeff(axis, x) + x * log_r; };
    double x_peak =
        golden_section_max(term, 0.0, static_cast<double>(cap), 0.5);
    return term(static_cast<double>(cap)) > term(x_peak) - 50.0;
}

double fmt_median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void append_num(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    out += buf;
}

} // namespace

void SweepConfig::validate() const {
    if (k_min < 2) throw Error("SweepConfig: k_min must be >= 2");
    if (k_max < k_min) throw Error("SweepConfig: k_max must be >= k_min");
    if (realizations < 1) throw Error("SweepConfig: realizations must be >= 1");
    if (delta < 0.0) throw Error("SweepConfig: delta must be >= 0");
    grid.validate();
}

SweepResult run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const int p = cfg.rule.dim();
    const std::int64_t cap_budget = axis_cap_budget(p, cfg.grid);
    const BoundParams params{cfg.delta, 1.0};
    const BoundForm det_form = p == 1 ? BoundForm::DiscDet : BoundForm::PolyDet;
    const BoundForm rnd_form = p == 1 ? BoundForm::DiscRandom : BoundForm::PolyRandom;

    SweepResult out;
    for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
        RadiusVector r = RadiusVector::dyadic(p, k);
        MaximalTerm mt = maximal_term(cfg.rule, r);

        TruncationSpec trunc = cfg.rule.kind() == RuleKind::Table
                                   ? table_truncation(cfg.rule)
                                   : truncation_degree(mt.ln_mu, r, cfg.delta);
        bool caps_clamped = false;
        std::int64_t min_cap = cap_budget;
        for (auto& c : trunc.per_axis_caps) {
            if (c > cap_budget) { c = cap_budget; caps_clamped = true; }
            min_cap = std::min(min_cap, c);
        }

        SweepRow row;
        row.k = k;
        row.r = r.radius(0);
        row.abscissa = r.total_log_inv_gap();
        row.ln_mu = mt.ln_mu;

        if (cfg.rule.kind() == RuleKind::Table) {
            if (caps_clamped) {
                OnlineLogSum dropped;
                for (const auto& [idx, logmag] : cfg.rule.entries()) {
                    bool outside = false;
                    double lt = logmag;
                    for (int j = 0; j < p; ++j) {
                        auto nj = idx[static_cast<std::size_t>(j)];
                        if (nj > trunc.per_axis_caps[static_cast<std::size_t>(j)]) outside = true;
                        if (nj > 0) lt += static_cast<double>(nj) * r.log_radius(j);
                    }
                    if (outside) dropped.add(lt);
                }
                trunc.tail_log_estimate = dropped.value();
                row.truncated = !dropped.empty();
            }
        } else {
            double cutoff = std::min(std::ceil(2.0 * trunc.total_degree_d1),
                                     static_cast<double>(min_cap));
            trunc.tail_log_estimate = tail_sum(cfg.rule, r, cutoff + 0.5);
            if (caps_clamped)
                for (int j = 0; j < p && !row.truncated; ++j)
                    row.truncated = cap_cuts_support(
                        cfg.rule, r, j, trunc.per_axis_caps[static_cast<std::size_t>(j)]);
        }

        row.ln_M_all.reserve(static_cast<std::size_t>(cfg.realizations));
        double tail = kNegInf;
        for (int t = 0; t < cfg.realizations; ++t) {
            SignRealization signs(cfg.sign_model, static_cast<std::uint64_t>(t));
            TorusMaxResult res = torus_max(cfg.rule, signs, r, trunc, cfg.grid);
            row.ln_M_all.push_back(res.ln_max);
            tail = std::max(tail, res.tail_log_bound);
        }
        row.tail_log_bound = tail;
        row.ln_M_median = fmt_median(row.ln_M_all);
        row.ln_M_min = *std::min_element(row.ln_M_all.begin(), row.ln_M_all.end());
        row.ln_M_max = *std::max_element(row.ln_M_all.begin(), row.ln_M_all.end());

        BoundReport det = ratio_report(det_form, params, mt.ln_mu, row.ln_M_median, r);
        BoundReport rnd = ratio_report(rnd_form, params, mt.ln_mu, row.ln_M_median, r);
        row.ln_bound_det = det.ln_bound;
        row.ln_ratio_det = det.ln_ratio;
        row.ln_bound_random = rnd.ln_bound;
        row.ln_ratio_random = rnd.ln_ratio;
        row.clamped = det.clamp_flag || rnd.clamp_flag;

        out.truncated = out.truncated || row.truncated;
        out.rows.push_back(std::move(row));
    }

    if (!cfg.output_path.empty()) {
        std::ofstream f(cfg.output_path, std::ios::binary);
        if (!f) throw Error("run_sweep: cannot open output file " + cfg.output_path);
        f << sweep_rows_to_csv(out.rows);
        if (!f) throw Error("run_sweep: write failed for " + cfg.output_path);
    }
    return out;
}

std::string sweep_rows_to_csv(const std::vector<SweepRow>& rows) {
    std::string out =
        "k,r,abscissa,ln_mu,ln_M_median,ln_M_min,ln_M_max,ln_bound_det,"
        "ln_ratio_det,ln_bound_random,ln_ratio_random,tail_log_bound,clamped,truncated\n";
    for (const auto& row : rows) {
        out += std::to_string(row.k);
        for (double v : {row.r, row.abscissa, row.ln_mu, row.ln_M_median, row.ln_M_min,
                         row.ln_M_max, row.ln_bound_det, row.ln_ratio_det,
                         row.ln_bound_random, row.ln_ratio_random, row.tail_log_bound}) {
            out += ',';
            append_num(out, v);
        }
        out += row.clamped ? ",1" : ",0";
        out += row.truncated ? ",1\n" : ",0\n";
    }
    return out;
}

std::pair<double, double>
fit_slope(const std::vector<SweepRow>& rows,
          const std::function<double(const SweepRow&)>& response) {
    const std::size_t n = rows.size();
    if (n < 4) throw Error("fit_slope: need at least 4 rows");
    double mx = 0.0, my = 0.0;
    for (const auto& row : rows) {
        mx += row.abscissa;
        my += response(row);
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (const auto& row : rows) {
        double dx = row.abscissa - mx;
        sxx += dx * dx;
        sxy += dx * (response(row) - my);
    }
    if (sxx == 0.0) throw Error("fit_slope: degenerate abscissa");
    double slope = sxy / sxx;
    double intercept = my - slope * mx;
    double sse = 0.0;
    for (const auto& row : rows) {
        double e = response(row) - (intercept + slope * row.abscissa);
        sse += e * e;
    }
    double stderr_slope = std::sqrt(sse / (static_cast<double>(n) - 2.0) / sxx);
    return {slope, stderr_slope};
}

} // namespace wiman

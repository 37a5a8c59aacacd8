#pragma once

#include <cmath>
#include <limits>

namespace wiman {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ln(e^a + e^b) without leaving log-space
inline double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

// Running log-sum-exp accumulator.
class OnlineLogSum {
public:
    void add(double log_term) { total_ = log_add(total_, log_term); }
    double value() const { return total_; }
    bool empty() const { return total_ == kNegInf; }

private:
    double total_ = kNegInf;
};

// Golden-section maximization of a unimodal function on [lo, hi].
// Returns the abscissa of the best point seen; f is evaluated at the
// endpoints too so the result never undershoots them.
template <typename F>
double golden_section_max(F&& f, double lo, double hi, double xtol, int max_iter = 200) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    double best_x = f1 >= f2 ? x1 : x2;
    double best_f = std::max(f1, f2);
    if (f(lo) > best_f) { best_x = lo; best_f = f(lo); }
    if (f(hi) > best_f) { best_x = hi; }
    return best_x;
}

} // namespace wiman

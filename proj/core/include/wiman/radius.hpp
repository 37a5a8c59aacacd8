#pragma once

#include <cmath>
#include <numeric>
#include <vector>

#include "wiman/errors.hpp"

namespace wiman {

// r in [0,1)^p with the cached quantities every functional needs:
// ln(1/(1-r_j)) and ln(r_j)  (ln 0 = -inf is legal, such terms are skipped).
class RadiusVector {
public:
    RadiusVector() = default;

    explicit RadiusVector(std::vector<double> radii) : radii_(std::move(radii)) {
        log_inv_gaps_.reserve(radii_.size());
        log_radii_.reserve(radii_.size());
        for (double r : radii_) {
            if (!(r >= 0.0) || r >= 1.0)
                throw Error("RadiusVector: radius outside [0,1): " + std::to_string(r));
            log_inv_gaps_.push_back(-std::log1p(-r));
            log_radii_.push_back(std::log(r)); // -inf for r == 0
        }
    }

    // diagonal radius r_j = r for all j
    static RadiusVector diagonal(int p, double r) {
        return RadiusVector(std::vector<double>(static_cast<std::size_t>(p), r));
    }

    // dyadic schedule r = 1 - 2^{-k}, diagonal in p dimensions
    static RadiusVector dyadic(int p, int k) {
        return diagonal(p, 1.0 - std::ldexp(1.0, -k));
    }

    int dim() const { return static_cast<int>(radii_.size()); }
    const std::vector<double>& radii() const { return radii_; }
    const std::vector<double>& log_inv_gaps() const { return log_inv_gaps_; }
    const std::vector<double>& log_radii() const { return log_radii_; }

    double radius(int j) const { return radii_[static_cast<std::size_t>(j)]; }
    double log_inv_gap(int j) const { return log_inv_gaps_[static_cast<std::size_t>(j)]; }
    double log_radius(int j) const { return log_radii_[static_cast<std::size_t>(j)]; }

    // sum_j ln(1/(1-r_j)), the natural abscissa for sweeps
    double total_log_inv_gap() const {
        return std::accumulate(log_inv_gaps_.begin(), log_inv_gaps_.end(), 0.0);
    }

private:
    std::vector<double> radii_;
    std::vector<double> log_inv_gaps_;
    std::vector<double> log_radii_;
};

} // namespace wiman

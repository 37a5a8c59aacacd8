#pragma once

#include <cstdint>
#include <vector>

#include "wiman/signs.hpp"
#include "wiman/torus.hpp"

namespace wiman {

// One (N, A) cell of the random trigonometric polynomial tail experiment:
// how often does the torus maximum of sum_{||n|| <= N} c_n X_n e^{i n.psi}
// exceed A * S_N * sqrt(ln N)?
struct TailExperimentRow {
    std::int64_t N = 0;
    double A = 0.0;
    int trials = 0;
    int exceed_count = 0;
    double s_N = 0.0;      // sqrt(sum |c_n|^2)
    double threshold = 0.0; // A * s_N * ln^{1/2} N
};

// Wilson score interval for a binomial proportion (z = 1.96 by default).
struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
};
WilsonInterval wilson_interval(int successes, int trials, double z = 1.96);

// coeff[s] is the magnitude attached to every index of total degree s.
// Each trial draws an independent realization (stream index = trial).
std::vector<TailExperimentRow>
sz_tail_experiment(const std::vector<double>& coeff, SignModel model,
                   const std::vector<std::int64_t>& N_list,
                   const std::vector<double>& A_grid, int trials, int p,
                   const TorusGridSpec& grid);

std::string tail_rows_to_csv(const std::vector<TailExperimentRow>& rows);

} // namespace wiman

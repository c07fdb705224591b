#pragma once

#include <string>
#include <vector>

#include "lk/control.hpp"
#include "lk/driving.hpp"
#include "lk/series.hpp"

namespace lk {

// Taylor coefficients of f_t(z) = sum_{n>=1} a_n(t) z^n.
struct FlowState {
    double t = 0.0;
    std::vector<cplx> a;  // a[n] for n = 0..N, a[0] = 0

    int order() const { return static_cast<int>(a.size()) - 1; }
    TruncatedSeries series() const { return TruncatedSeries(a); }
};

constexpr int kMaxSolveOrder = 200;

// Integrates  da_n = n a_n dx_0 + sum_{k=1}^{n-1} k a_k dx_{n-k},  a_1 = e^{x_0},
// through u_n = e^{-n x_0} a_n, whose equations are pure Stieltjes integrals.
std::vector<FlowState> solve_coefficients(const DrivingSpec& d, const std::vector<double>& t_grid, int N);

constexpr int kClosedFormMaxN = 8;

// a_n(t) = e^{n x_0(t)} sum over compositions (i_1..i_p) of n-1 of
//   prod_j (1 + i_1 + ... + i_{j-1}) * int_{u_1<...<u_p<=t} prod_j e^{-i_j x_0(u_j)} dx_{i_j}(u_j)
cplx coeff_closed_form(const DrivingSpec& d, double t, int n);

struct CoeffBoundRow {
    double t = 0.0;
    int n = 0;            // c_n = a_{n+1} / a_1
    double value = 0.0;   // |c_n(t)|
    double bound = 0.0;   // n (4 w(0,t))^n / 4
    double ratio = 0.0;
};

struct CoeffBoundReport {
    std::vector<CoeffBoundRow> rows;
    double max_ratio = 0.0;
    double omega_total = 0.0;
    // sum_{n>=2} n |a_n / a_1| per state; < 1 is the classical sufficient
    // condition for injectivity on the disc
    std::vector<double> univalence_sums;
    std::vector<double> abs_coeff_sums;  // sum_n |c_n| per state
    bool univalence_surrogate = true;
};

CoeffBoundReport check_coeff_bounds(const std::vector<FlowState>& states, const ControlFunction& omega);

}  // namespace lk

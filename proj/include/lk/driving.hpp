#pragma once

#include <optional>
#include <vector>

#include "lk/control.hpp"
#include "lk/path.hpp"
#include "lk/series.hpp"

namespace lk {

// Generator data for drivings of the form
//   x_n(t) = int_{0 <= s_1 < ... < s_n <= t} dy_1^n ... dy_n^n.
struct GeneratorMeta {
    std::vector<std::vector<PiecewisePath>> y;  // y[n-1][i-1] = y_i^n
    ControlFunction omega0;                     // controls x_0
    ControlFunction omega;                      // controls every y_i^n
};

struct DrivingSpec {
    PiecewisePath x0;                // real, x0(0) = 0
    std::vector<PiecewisePath> x;    // x[k-1] = x_k
    std::optional<GeneratorMeta> generator;

    double horizon() const { return x0.horizon(); }
    int K() const { return static_cast<int>(x.size()); }
    // nullptr when k > K or the path vanishes identically
    const PiecewisePath* active(int k) const;
    void validate() const;
};

// Builds x_1..x_K from generator paths; x_n is exact on the union of the
// knots of y_1^n..y_n^n (a polynomial of degree <= n on each piece).
// Every y must have 1-variation dominated by omega on all knot pairs.
DrivingSpec make_driving(const std::vector<std::vector<PiecewisePath>>& y_paths, const ControlFunction& omega,
                         const PiecewisePath& x0);
DrivingSpec make_driving(const std::vector<std::vector<PiecewisePath>>& y_paths, const ControlFunction& omega,
                         const PiecewisePath& x0, const ControlFunction& omega0);

// int_{s < u_1 < ... < u_n < t} dy_1(u_1) ... dy_n(u_n)
cplx iterated_integral(const std::vector<const PiecewisePath*>& ys, double s, double t);

// Composite Gauss-Legendre value of int_0^t e^{-k x_0} dx_k (independent of the
// local-polynomial machinery).
cplx weighted_increment_gl(const DrivingSpec& d, int k, double t);

// One piece of a partition of [0, T] fine enough that k_max |dx_0| <= 1/2 on it.
// Every path is represented as a polynomial in u in [0, 1].
class LocalFrame {
public:
    LocalFrame(const DrivingSpec& d, double a, double b, int order);

    double a() const { return a_; }
    double b() const { return b_; }
    int order() const { return order_; }
    // e^{-k x_0(u)} x_k'(u)
    const TruncatedSeries& weighted_differential(int k);

private:
    const DrivingSpec& d_;
    double a_, b_;
    int order_;
    TruncatedSeries x0_;
    std::vector<std::optional<TruncatedSeries>> g_;
};

// Sorted breakpoints covering [0, T]: path knots, requested times and the
// refinement required by k_max. hits[i] lists the requested-time indices
// that coincide with breakpoint i.
struct SweepPartition {
    std::vector<double> points;
    std::vector<std::vector<int>> hits;
};
SweepPartition sweep_partition(const DrivingSpec& d, const std::vector<double>& times, int k_max);

// Value at u = 1 of a local polynomial.
inline cplx end_value(const TruncatedSeries& s) {
    cplx acc(0.0);
    for (auto c : s.coeffs()) acc += c;
    return acc;
}

// Default working degree of local polynomials for a level cap n.
inline int local_order(int n) { return n + 30; }

}  // namespace lk

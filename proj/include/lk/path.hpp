#pragma once

#include <vector>

#include "lk/series.hpp"

namespace lk {

// Continuous path on [0, T] made of polynomial pieces. Segment i covers
// [knots[i], knots[i+1]] and is stored as a polynomial in the local
// variable s = (t - knots[i]) / (knots[i+1] - knots[i]).
class PiecewisePath {
public:
    PiecewisePath() = default;

    // Piecewise-linear interpolant of (knots, values).
    PiecewisePath(std::vector<double> knots, std::vector<cplx> values);

    static PiecewisePath zero(double T);
    static PiecewisePath linear(double T, cplx slope);
    static PiecewisePath from_segments(std::vector<double> knots, std::vector<std::vector<cplx>> segments);

    double horizon() const { return knots_.back(); }
    const std::vector<double>& knots() const { return knots_; }
    const std::vector<std::vector<cplx>>& segments() const { return seg_; }
    std::vector<cplx> knot_values() const;

    bool is_linear() const;
    bool is_zero() const;
    bool is_real(double tol = 0.0) const;

    cplx operator()(double t) const;

    // Index of the segment containing t (the left one at interior knots).
    int segment_of(double t) const;

    // Restriction to [a, b] (inside one segment) as a polynomial in u in [0,1],
    // padded to the given order.
    TruncatedSeries local(double a, double b, int order) const;

private:
    std::vector<double> knots_;
    std::vector<std::vector<cplx>> seg_;
};

// Exact 1-variation on [s, t] for piecewise-linear paths. Higher-degree
// segments are integrated with Gauss-Legendre quadrature of |y'|.
double one_variation(const PiecewisePath& y, double s, double t);

// Sorted union of the knots of all paths and the extra times, deduplicated.
std::vector<double> merge_breakpoints(const std::vector<const PiecewisePath*>& paths,
                                      const std::vector<double>& extra);

}  // namespace lk

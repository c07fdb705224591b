#include "lk/driving.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lk {

namespace {

// Largest move of k_max x_0 allowed on one piece; keeps e^{-k x_0} series
// truncation far below double precision at the working degree.
constexpr double kExpStep = 0.5;

int pieces_for(const PiecewisePath& x0, double a, double b, int k_max) {
    const double v = one_variation(x0, a, b) * std::max(k_max, 1);
    return std::max(1, static_cast<int>(std::ceil(v / kExpStep)));
}

}  // namespace

const PiecewisePath* DrivingSpec::active(int k) const {
    if (k < 1 || k > K()) return nullptr;
    const auto& p = x[static_cast<std::size_t>(k - 1)];
    return p.is_zero() ? nullptr : &p;
}

void DrivingSpec::validate() const {
    if (x.empty()) throw std::invalid_argument("driving needs at least x_1");
    if (!x0.is_real(0.0)) throw std::invalid_argument("x_0 must be real-valued");
    if (std::abs(x0(0.0)) != 0.0) throw std::invalid_argument("x_0(0) must vanish");
    const double T = horizon();
    for (std::size_t k = 0; k < x.size(); ++k)
        if (std::abs(x[k].horizon() - T) > 1e-12 * std::max(1.0, T))
            throw std::invalid_argument("x_" + std::to_string(k + 1) + " has a different horizon than x_0");
}

cplx iterated_integral(const std::vector<const PiecewisePath*>& ys, double s, double t) {
    if (ys.empty()) return cplx(1.0);
    if (s > t) throw std::invalid_argument("iterated_integral: s > t");
    if (s == t) return cplx(0.0);
    int degree = 0;
    for (const auto* y : ys) {
        int deg = 0;
        for (const auto& seg : y->segments()) deg = std::max(deg, static_cast<int>(seg.size()) - 1);
        degree += deg;
    }
    const int order = degree + 2;
    auto pts = merge_breakpoints(ys, {s, t});
    const std::size_t n = ys.size();
    // level[k] = integral of the first k differentials up to the current time
    std::vector<cplx> level(n + 1, cplx(0.0));
    level[0] = 1.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i], b = pts[i + 1];
        if (a < s || b > t) continue;
        TruncatedSeries run = TruncatedSeries::constant(1.0, order);
        for (std::size_t k = 1; k <= n; ++k) {
            const auto dy = ys[k - 1]->local(a, b, order).derivative();
            run = series_mul(run, dy).antiderivative();
            run[0] += level[k];
            level[k] = end_value(run);
        }
    }
    return level[n];
}

DrivingSpec make_driving(const std::vector<std::vector<PiecewisePath>>& y_paths, const ControlFunction& omega,
                         const PiecewisePath& x0) {
    return make_driving(y_paths, omega, x0, ControlFunction::from_path_variation(x0));
}

DrivingSpec make_driving(const std::vector<std::vector<PiecewisePath>>& y_paths, const ControlFunction& omega,
                         const PiecewisePath& x0, const ControlFunction& omega0) {
    if (y_paths.empty()) throw std::invalid_argument("make_driving: no generator levels");
    const double T = x0.horizon();
    DrivingSpec d;
    d.x0 = x0;
    for (std::size_t lvl = 0; lvl < y_paths.size(); ++lvl) {
        const auto& ys = y_paths[lvl];
        const std::size_t n = lvl + 1;
        if (ys.size() != n)
            throw std::invalid_argument("make_driving: level " + std::to_string(n) + " needs " + std::to_string(n) +
                                        " paths, got " + std::to_string(ys.size()));
        std::vector<const PiecewisePath*> ptrs;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& y = ys[i];
            if (std::abs(y.horizon() - T) > 1e-12 * std::max(1.0, T))
                throw std::invalid_argument("make_driving: generator horizon differs from x_0");
            const auto& kn = y.knots();
            for (std::size_t a = 0; a < kn.size(); ++a)
                for (std::size_t b = a + 1; b < kn.size(); ++b) {
                    const double var = one_variation(y, kn[a], kn[b]);
                    const double bound = omega(kn[a], kn[b]);
                    if (var > bound * (1.0 + 1e-12) + 1e-15)
                        throw std::invalid_argument("make_driving: y_" + std::to_string(i + 1) + "^" +
                                                    std::to_string(n) + " is not controlled by omega on [" +
                                                    std::to_string(kn[a]) + ", " + std::to_string(kn[b]) + "]");
                }
            ptrs.push_back(&y);
        }
        auto pts = merge_breakpoints(ptrs, {});
        const int order = static_cast<int>(n) + 1;
        std::vector<cplx> level(n + 1, cplx(0.0));
        level[0] = 1.0;
        std::vector<std::vector<cplx>> segs;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const double a = pts[i], b = pts[i + 1];
            TruncatedSeries run = TruncatedSeries::constant(1.0, order);
            for (std::size_t k = 1; k <= n; ++k) {
                run = series_mul(run, ptrs[k - 1]->local(a, b, order).derivative()).antiderivative();
                run[0] += level[k];
                level[k] = end_value(run);
            }
            segs.emplace_back(run.coeffs().begin(), run.coeffs().end());
        }
        d.x.push_back(PiecewisePath::from_segments(pts, std::move(segs)));
    }
    d.generator = GeneratorMeta{y_paths, omega0, omega};
    d.validate();
    return d;
}

cplx weighted_increment_gl(const DrivingSpec& d, int k, double t) {
    const auto* xk = (k >= 1 && k <= d.K()) ? &d.x[static_cast<std::size_t>(k - 1)] : nullptr;
    if (xk == nullptr || t <= 0.0) return cplx(0.0);
    auto pts = merge_breakpoints({&d.x0, xk}, {t});
    cplx total(0.0);
    for (std::size_t i = 0; i + 1 < pts.size() && pts[i + 1] <= t; ++i) {
        const double a = pts[i], b = pts[i + 1];
        const int m = pieces_for(d.x0, a, b, k);
        const int seg = xk->segment_of(0.5 * (a + b));
        const double h = xk->knots()[seg + 1] - xk->knots()[seg];
        const auto& p = xk->segments()[seg];
        auto speed = [&](double u) {
            const double s = (u - xk->knots()[seg]) / h;
            cplx dv(0.0);
            for (std::size_t j = p.size() - 1; j >= 1; --j) dv = dv * s + double(j) * p[j];
            return dv / h;
        };
        for (int j = 0; j < m; ++j) {
            const double lo = a + (b - a) * j / m, hi = a + (b - a) * (j + 1) / m;
            auto re = [&](double u) { return (std::exp(-k * d.x0(u).real()) * speed(u)).real(); };
            auto im = [&](double u) { return (std::exp(-k * d.x0(u).real()) * speed(u)).imag(); };
            using GL = boost::math::quadrature::gauss<double, 20>;
            total += cplx(GL::integrate(re, lo, hi), GL::integrate(im, lo, hi));
        }
    }
    return total;
}

LocalFrame::LocalFrame(const DrivingSpec& d, double a, double b, int order)
    : d_(d), a_(a), b_(b), order_(order), x0_(d.x0.local(a, b, order)), g_(static_cast<std::size_t>(d.K()) + 1) {}

const TruncatedSeries& LocalFrame::weighted_differential(int k) {
    auto& slot = g_.at(static_cast<std::size_t>(k));
    if (!slot) {
        TruncatedSeries e = series_exp(x0_ * cplx(-double(k)));
        slot = series_mul(e, d_.x[static_cast<std::size_t>(k - 1)].local(a_, b_, order_).derivative());
    }
    return *slot;
}

SweepPartition sweep_partition(const DrivingSpec& d, const std::vector<double>& times, int k_max) {
    const double T = d.horizon();
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0 || times[i] > T * (1.0 + 1e-12)) throw std::out_of_range("time grid outside path domain");
        if (i > 0 && times[i] < times[i - 1]) throw std::invalid_argument("time grid must be nondecreasing");
    }
    std::vector<const PiecewisePath*> paths{&d.x0};
    for (int k = 1; k <= std::min(k_max, d.K()); ++k)
        if (const auto* p = d.active(k)) paths.push_back(p);
    auto raw = merge_breakpoints(paths, times);
    SweepPartition part;
    part.points.push_back(raw.front());
    for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
        const int m = pieces_for(d.x0, raw[i], raw[i + 1], k_max);
        for (int j = 1; j < m; ++j) part.points.push_back(raw[i] + (raw[i + 1] - raw[i]) * j / m);
        part.points.push_back(raw[i + 1]);
    }
    part.hits.assign(part.points.size(), {});
    const double scale = std::max(1.0, T);
    std::size_t p = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        while (p < part.points.size() && part.points[p] < times[i] - 1e-13 * scale) ++p;
        if (p == part.points.size()) throw std::logic_error("sweep_partition: requested time not on partition");
        part.hits[p].push_back(static_cast<int>(i));
    }
    return part;
}

}  // namespace lk

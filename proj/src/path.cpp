#include "lk/path.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <stdexcept>

namespace lk {

namespace {

constexpr double kTimeTol = 1e-12;

void validate_knots(const std::vector<double>& knots) {
    if (knots.size() < 2) throw std::invalid_argument("path needs at least two knots");
    if (knots.front() != 0.0) throw std::invalid_argument("path knots must start at 0");
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (!(knots[i] > knots[i - 1])) throw std::invalid_argument("path knots must be strictly increasing");
}

cplx horner(const std::vector<cplx>& p, double s) {
    cplx acc(0.0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * s + *it;
    return acc;
}

}  // namespace

PiecewisePath::PiecewisePath(std::vector<double> knots, std::vector<cplx> values) : knots_(std::move(knots)) {
    validate_knots(knots_);
    if (values.size() != knots_.size()) throw std::invalid_argument("path knots/values length mismatch");
    seg_.reserve(knots_.size() - 1);
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) seg_.push_back({values[i], values[i + 1] - values[i]});
}

PiecewisePath PiecewisePath::zero(double T) { return PiecewisePath({0.0, T}, {cplx(0.0), cplx(0.0)}); }

PiecewisePath PiecewisePath::linear(double T, cplx slope) { return PiecewisePath({0.0, T}, {cplx(0.0), slope * T}); }

PiecewisePath PiecewisePath::from_segments(std::vector<double> knots, std::vector<std::vector<cplx>> segments) {
    validate_knots(knots);
    if (segments.size() + 1 != knots.size()) throw std::invalid_argument("path needs one polynomial per segment");
    for (auto& s : segments)
        if (s.empty()) s.push_back(cplx(0.0));
    PiecewisePath p;
    p.knots_ = std::move(knots);
    p.seg_ = std::move(segments);
    return p;
}

std::vector<cplx> PiecewisePath::knot_values() const {
    std::vector<cplx> v;
    v.reserve(knots_.size());
    for (const auto& s : seg_) v.push_back(s[0]);
    v.push_back(horner(seg_.back(), 1.0));
    return v;
}

bool PiecewisePath::is_linear() const {
    for (const auto& s : seg_)
        for (std::size_t k = 2; k < s.size(); ++k)
            if (s[k] != cplx(0.0)) return false;
    return true;
}

bool PiecewisePath::is_zero() const {
    for (const auto& s : seg_)
        for (auto c : s)
            if (c != cplx(0.0)) return false;
    return true;
}

bool PiecewisePath::is_real(double tol) const {
    for (const auto& s : seg_)
        for (auto c : s)
            if (std::abs(c.imag()) > tol) return false;
    return true;
}

int PiecewisePath::segment_of(double t) const {
    if (t < -kTimeTol || t > horizon() + kTimeTol * std::max(1.0, horizon()))
        throw std::out_of_range("time outside path domain");
    auto it = std::lower_bound(knots_.begin() + 1, knots_.end(), t);
    if (it == knots_.end()) --it;
    return static_cast<int>(it - knots_.begin()) - 1;
}

cplx PiecewisePath::operator()(double t) const {
    const int i = segment_of(t);
    const double s = (t - knots_[i]) / (knots_[i + 1] - knots_[i]);
    return horner(seg_[i], std::clamp(s, 0.0, 1.0));
}

TruncatedSeries PiecewisePath::local(double a, double b, int order) const {
    const int i = segment_of(0.5 * (a + b));
    const double h = knots_[i + 1] - knots_[i];
    const double sa = (a - knots_[i]) / h;
    const double sb = (b - knots_[i]) / h;
    const auto& p = seg_[i];
    if (static_cast<int>(p.size()) - 1 > order) throw std::invalid_argument("local order below segment degree");
    // p(sa + (sb - sa) u) by Horner in the series variable u
    TruncatedSeries lin(order);
    lin[0] = sa;
    if (order >= 1) lin[1] = sb - sa;
    TruncatedSeries acc(order);
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = series_mul(acc, lin);
        acc[0] += *it;
    }
    return acc;
}

double one_variation(const PiecewisePath& y, double s, double t) {
    if (s > t) throw std::invalid_argument("one_variation: s > t");
    const double T = y.horizon();
    if (s < -kTimeTol || t > T + kTimeTol * std::max(1.0, T)) throw std::out_of_range("one_variation: times outside [0,T]");
    s = std::max(s, 0.0);
    t = std::min(t, T);
    if (s == t) return 0.0;
    const auto& kn = y.knots();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < kn.size(); ++i) {
        const double a = std::max(s, kn[i]);
        const double b = std::min(t, kn[i + 1]);
        if (!(b > a)) continue;
        const double h = kn[i + 1] - kn[i];
        const auto& p = y.segments()[i];
        const double sa = (a - kn[i]) / h, sb = (b - kn[i]) / h;
        if (p.size() <= 2) {
            total += (p.size() == 2 ? std::abs(p[1]) : 0.0) * (sb - sa);
            continue;
        }
        auto speed = [&](double u) {
            cplx d(0.0);
            for (std::size_t k = p.size() - 1; k >= 1; --k) d = d * u + double(k) * p[k];
            return std::abs(d);
        };
        total += boost::math::quadrature::gauss<double, 30>::integrate(speed, sa, sb);
    }
    return total;
}

std::vector<double> merge_breakpoints(const std::vector<const PiecewisePath*>& paths, const std::vector<double>& extra) {
    std::vector<double> all(extra.begin(), extra.end());
    for (const auto* p : paths) all.insert(all.end(), p->knots().begin(), p->knots().end());
    std::sort(all.begin(), all.end());
    std::vector<double> out;
    const double scale = all.empty() ? 1.0 : std::max(1.0, std::abs(all.back()));
    for (double v : all)
        if (out.empty() || v - out.back() > 1e-13 * scale) out.push_back(v);
    return out;
}

}  // namespace lk

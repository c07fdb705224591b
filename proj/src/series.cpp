#include "lk/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lk {

TruncatedSeries::TruncatedSeries(int order) {
    if (order < 0) throw std::invalid_argument("series order must be nonnegative");
    c_.assign(static_cast<std::size_t>(order) + 1, cplx(0.0));
}

TruncatedSeries::TruncatedSeries(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("series needs at least one coefficient");
}

TruncatedSeries TruncatedSeries::constant(cplx c, int order) {
    TruncatedSeries s(order);
    s.c_[0] = c;
    return s;
}

TruncatedSeries TruncatedSeries::monomial(int k, cplx c, int order) {
    TruncatedSeries s(order);
    if (k >= 0 && k <= order) s.c_[k] = c;
    return s;
}

cplx TruncatedSeries::eval(cplx z) const {
    cplx acc(0.0);
    for (int k = order(); k >= 0; --k) acc = acc * z + c_[k];
    return acc;
}

TruncatedSeries TruncatedSeries::derivative() const {
    TruncatedSeries d(order());
    for (int k = 1; k <= order(); ++k) d.c_[k - 1] = double(k) * c_[k];
    return d;
}

TruncatedSeries TruncatedSeries::antiderivative() const {
    TruncatedSeries d(order());
    for (int k = 0; k < order(); ++k) d.c_[k + 1] = c_[k] / double(k + 1);
    return d;
}

TruncatedSeries TruncatedSeries::resized(int n) const {
    TruncatedSeries r(n);
    for (int k = 0; k <= std::min(n, order()); ++k) r.c_[k] = c_[k];
    return r;
}

static void require_same_order(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.order() != b.order())
        throw std::invalid_argument("truncation orders differ: " + std::to_string(a.order()) + " vs " +
                                    std::to_string(b.order()));
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
    require_same_order(*this, o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
    require_same_order(*this, o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(cplx s) {
    for (auto& v : c_) v *= s;
    return *this;
}

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
TruncatedSeries operator*(TruncatedSeries a, cplx s) { return a *= s; }
TruncatedSeries operator*(cplx s, TruncatedSeries a) { return a *= s; }
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) { return series_mul(a, b); }

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_order(a, b);
    const int n = a.order();
    TruncatedSeries r(n);
    auto& out = r.data();
    const auto ac = a.coeffs();
    const auto bc = b.coeffs();
    for (int i = 0; i <= n; ++i) {
        if (ac[i] == cplx(0.0)) continue;
        for (int j = 0; i + j <= n; ++j) out[i + j] += ac[i] * bc[j];
    }
    return r;
}

TruncatedSeries series_reciprocal(const TruncatedSeries& a) {
    if (a[0] == cplx(0.0)) throw std::domain_error("series_reciprocal: zero constant term");
    const int n = a.order();
    TruncatedSeries b(n);
    const cplx inv0 = 1.0 / a[0];
    b[0] = inv0;
    for (int k = 1; k <= n; ++k) {
        cplx acc(0.0);
        for (int j = 1; j <= k; ++j) acc += a[j] * b[k - j];
        b[k] = -acc * inv0;
    }
    return b;
}

TruncatedSeries series_log(const TruncatedSeries& a) {
    if (std::abs(a[0] - 1.0) > 1e-14) throw std::domain_error("series_log: constant term must be 1");
    // k L_k = k a_k - sum_{j=1}^{k-1} j L_j a_{k-j}
    const int n = a.order();
    TruncatedSeries l(n);
    for (int k = 1; k <= n; ++k) {
        cplx acc = double(k) * a[k];
        for (int j = 1; j < k; ++j) acc -= double(j) * l[j] * a[k - j];
        l[k] = acc / double(k);
    }
    return l;
}

TruncatedSeries series_exp(const TruncatedSeries& a) {
    // e = exp(a) solves e' = a' e; a_0 contributes the factor exp(a_0).
    const int n = a.order();
    TruncatedSeries e(n);
    e[0] = std::exp(a[0]);
    for (int k = 1; k <= n; ++k) {
        cplx acc(0.0);
        for (int j = 1; j <= k; ++j) acc += double(j) * a[j] * e[k - j];
        e[k] = acc / double(k);
    }
    return e;
}

TruncatedSeries witt_action(int n, const TruncatedSeries& a) {
    if (n < 0) throw std::invalid_argument("witt_action: index must be nonnegative");
    const int order = a.order();
    TruncatedSeries r(order);
    // z^{n+1} * k a_k z^{k-1} = k a_k z^{n+k}
    for (int k = 1; k + n <= order; ++k) r[k + n] = -double(k) * a[k];
    return r;
}

cplx LaurentTail::eval(cplx z) const {
    const cplx w = 1.0 / z;
    cplx acc(0.0);
    for (int k = order(); k >= 0; --k) acc = acc * w + coeffs[k];
    return lead * z + acc;
}

cplx Polynomial::eval(cplx y) const {
    cplx acc(0.0);
    for (int j = degree(); j >= 0; --j) acc = acc * y + coeffs[j];
    return acc;
}

cplx LaurentWindow::entry(int e) const {
    if (e > hi || e < -lo) return cplx(0.0);
    return coeffs[static_cast<std::size_t>(hi - e)];
}

LaurentWindow poly_eval_on_tail(const Polynomial& p, const LaurentTail& g, int N) {
    const int d = p.degree();
    if (d < 0) throw std::invalid_argument("poly_eval_on_tail: empty polynomial");
    if (N < 0) throw std::invalid_argument("poly_eval_on_tail: negative window");
    // z^{-N} in p(g) involves tail coefficients up to c_{d+N-1}
    if (g.order() < d + N - 1)
        throw std::invalid_argument("poly_eval_on_tail: tail order " + std::to_string(g.order()) +
                                    " below deg(p)+N-1 = " + std::to_string(d + N - 1));
    // With x = 1/z, g = z h(x) where h = lead + c_0 x + c_1 x^2 + ...
    // p(g) = z^d q(x), q built by Horner: q <- q h + p_{d-k} x^k.
    const int L = d + N;
    TruncatedSeries h(L);
    h[0] = g.lead;
    for (int k = 0; k + 1 <= L; ++k) h[k + 1] = g.tail(k);
    TruncatedSeries q = TruncatedSeries::constant(p.coeffs[d], L);
    for (int k = 1; k <= d; ++k) {
        q = series_mul(q, h);
        q[k] += p.coeffs[d - k];
    }
    LaurentWindow out;
    out.hi = d;
    out.lo = N;
    out.coeffs.assign(q.coeffs().begin(), q.coeffs().end());
    return out;
}

}  // namespace lk

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace lk {

using cplx = std::complex<double>;

// Coefficients c_0..c_N of a power series, truncated at order N.
// Anything above N is silently dropped by every operation.
class TruncatedSeries {
public:
    TruncatedSeries() : c_(1, cplx(0.0)) {}
    explicit TruncatedSeries(int order);
    explicit TruncatedSeries(std::vector<cplx> coeffs);

    static TruncatedSeries constant(cplx c, int order);
    static TruncatedSeries monomial(int k, cplx c, int order);

    int order() const { return static_cast<int>(c_.size()) - 1; }

    // Out-of-window reads return zero.
    cplx operator[](int k) const { return (k >= 0 && k <= order()) ? c_[k] : cplx(0.0); }
    cplx& operator[](int k) { return c_.at(static_cast<std::size_t>(k)); }

    std::span<const cplx> coeffs() const { return c_; }
    std::vector<cplx>& data() { return c_; }

    cplx eval(cplx z) const;
    TruncatedSeries derivative() const;
    // Antiderivative vanishing at 0; the top coefficient is dropped.
    TruncatedSeries antiderivative() const;
    TruncatedSeries resized(int order) const;

    TruncatedSeries& operator+=(const TruncatedSeries& o);
    TruncatedSeries& operator-=(const TruncatedSeries& o);
    TruncatedSeries& operator*=(cplx s);

private:
    std::vector<cplx> c_;
};

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator*(TruncatedSeries a, cplx s);
TruncatedSeries operator*(cplx s, TruncatedSeries a);
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_reciprocal(const TruncatedSeries& a);
TruncatedSeries series_log(const TruncatedSeries& a);
TruncatedSeries series_exp(const TruncatedSeries& a);

// l_n(a) = -z^{n+1} a'(z), truncated to the order of a.
TruncatedSeries witt_action(int n, const TruncatedSeries& a);

// g(z) = lead z + c_0 + sum_{k=1..N} c_k z^{-k}
struct LaurentTail {
    cplx lead{1.0};
    std::vector<cplx> coeffs{cplx(0.0)};

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    cplx tail(int k) const { return (k >= 0 && k <= order()) ? coeffs[k] : cplx(0.0); }
    cplx eval(cplx z) const;
};

struct Polynomial {
    std::vector<cplx> coeffs;  // coeffs[j] multiplies y^j

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    cplx eval(cplx y) const;
};

// Laurent series with window z^{hi} .. z^{-lo}; entry(e) is the coefficient of z^e.
struct LaurentWindow {
    int hi = 0;
    int lo = 0;
    std::vector<cplx> coeffs;  // coeffs[i] multiplies z^{hi - i}

    cplx entry(int e) const;
};

// p(g(z)) for powers z^{deg p} down to z^{-N}; needs tail coefficients up to c_{deg(p)+N-1}.
LaurentWindow poly_eval_on_tail(const Polynomial& p, const LaurentTail& g, int N);

}  // namespace lk

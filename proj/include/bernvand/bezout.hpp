#pragma once

// Bezout matrices of two degree-(n+1) polynomials given by Bernstein
// coefficients: entries b_ij of
//   (v(s) w(t) - v(t) w(s)) / (s - t) = sum_ij b_ij B^n_i(s) B^n_j(t),
// constructed three ways: an O(n^2) recurrence, the explicit double-binomial
// sum, and a factorization into Hankel and Toeplitz parts whose action is
// applied with FFTs.

#include <span>
#include <stdexcept>
#include <vector>

#include "bernvand/polybases.hpp"
#include "bernvand/scalar_kernels.hpp"
#include "bernvand/structured.hpp"

namespace bernvand {

struct BezoutMatrix {
    int n;  // matrix order is n+1; inputs have degree n+1
    DenseMatrix entries;
};

namespace detail {

inline int bezout_check_inputs(const CoefficientVector& v, const CoefficientVector& w) {
    if (v.basis != Basis::Bernstein || w.basis != Basis::Bernstein)
        throw std::invalid_argument("bezout: inputs must be Bernstein coefficient vectors");
    if (v.coeffs.size() != w.coeffs.size())
        throw std::invalid_argument("bezout: inputs must have equal degree");
    if (v.coeffs.size() < 2)
        throw std::invalid_argument("bezout: inputs must have degree >= 1");
    return static_cast<int>(v.coeffs.size()) - 2;
}

// Recurrence sweep over the full table. The first column and last row are
// direct (the recursive term carries a zero factor there); every other entry
// follows its south-west neighbour:
//   b_ij = [ j (n-i) b_{i+1,j-1} + (n+1)^2 (v_{i+1} w_j - v_j w_{i+1}) ]
//          / [ (i+1)(n-j+1) ].
// Kept in the widest precision; entries are each a short alternating sum of
// binomial-sized terms and lose digits otherwise. Callers that feed the table
// into further cancellation-prone products take it undemoted.
inline std::vector<quadfloat> bezout_recurrence_table(int n, std::span<const quadfloat> v,
                                                      std::span<const quadfloat> w) {
    const std::size_t sz = static_cast<std::size_t>(n) + 1;
    const quadfloat np1sq = static_cast<quadfloat>(n + 1) * (n + 1);
    auto cross = [&](int i, int j) {
        return v[static_cast<std::size_t>(i + 1)] * w[static_cast<std::size_t>(j)] -
               v[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(i + 1)];
    };
    std::vector<quadfloat> t(sz * sz, quadfloat(0));
    auto at = [&](int i, int j) -> quadfloat& {
        return t[static_cast<std::size_t>(i) * sz + static_cast<std::size_t>(j)];
    };
    for (int i = 0; i <= n; ++i)
        at(i, 0) = np1sq * cross(i, 0) / (static_cast<quadfloat>(i + 1) * (n + 1));
    for (int j = 1; j <= n; ++j)
        at(n, j) = np1sq * cross(n, j) / (static_cast<quadfloat>(n + 1) * (n - j + 1));
    for (int j = 1; j <= n; ++j)
        for (int i = n - 1; i >= 0; --i)
            at(i, j) = (static_cast<quadfloat>(j) * (n - i) * at(i + 1, j - 1) +
                        np1sq * cross(i, j)) /
                       (static_cast<quadfloat>(i + 1) * (n - j + 1));
    return t;
}

}  // namespace detail

// Recurrence construction.
inline BezoutMatrix bezout_recurrence(const CoefficientVector& v, const CoefficientVector& w) {
    using detail::quadfloat;
    const int n = detail::bezout_check_inputs(v, w);
    const std::size_t sz = static_cast<std::size_t>(n) + 1;
    std::vector<quadfloat> vq(v.coeffs.begin(), v.coeffs.end());
    std::vector<quadfloat> wq(w.coeffs.begin(), w.coeffs.end());
    std::vector<quadfloat> t = detail::bezout_recurrence_table(n, vq, wq);
    DenseMatrix b(sz, sz);
    for (std::size_t i = 0; i < sz; ++i)
        for (std::size_t j = 0; j < sz; ++j)
            b(i, j) = static_cast<double>(t[i * sz + j]);
    return BezoutMatrix{n, std::move(b)};
}

// Explicit entry formula:
//   b_ij = sum_{k=0}^{min(j, n-i)} binom(n+1, i+k+1) binom(n+1, j-k)
//          (v_{i+k+1} w_{j-k} - v_{j-k} w_{i+k+1}) / (binom(n,i) binom(n,j)).
inline BezoutMatrix bezout_closed_form(const CoefficientVector& v, const CoefficientVector& w) {
    const int n = detail::bezout_check_inputs(v, w);
    const std::size_t sz = static_cast<std::size_t>(n) + 1;
    BinomialTable bt(n + 1);
    DenseMatrix b(sz, sz);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            detail::quadfloat s(0);
            const int kmax = std::min(j, n - i);
            for (int k = 0; k <= kmax; ++k)
                s += static_cast<detail::quadfloat>(bt(n + 1, i + k + 1)) * bt(n + 1, j - k) *
                     (static_cast<detail::quadfloat>(
                          v.coeffs[static_cast<std::size_t>(i + k + 1)]) *
                          w.coeffs[static_cast<std::size_t>(j - k)] -
                      static_cast<detail::quadfloat>(
                          v.coeffs[static_cast<std::size_t>(j - k)]) *
                          w.coeffs[static_cast<std::size_t>(i + k + 1)]);
            b(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = static_cast<double>(
                s / (static_cast<detail::quadfloat>(bt(n, i)) * bt(n, j)));
        }
    return BezoutMatrix{n, std::move(b)};
}

namespace detail {

// Upper-triangular Toeplitz factor: entry (i,j) = binom(n+1, j-i) c_{j-i};
// stored as its first row only (first column is zero below the corner).
inline std::vector<quadfloat> bezout_toeplitz_row(const BinomialTable& bt, int n,
                                                  std::span<const double> c) {
    std::vector<quadfloat> row(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m)
        row[static_cast<std::size_t>(m)] =
            static_cast<quadfloat>(bt(n + 1, m)) * c[static_cast<std::size_t>(m)];
    return row;
}

// Hankel factor: entry (i,j) = binom(n+1, i+j+1) c_{i+j+1}, zero once
// i+j+1 exceeds n+1; stored by anti-diagonals.
inline std::vector<quadfloat> bezout_hankel_anti(const BinomialTable& bt, int n,
                                                 std::span<const double> c) {
    std::vector<quadfloat> anti(2 * static_cast<std::size_t>(n) + 1, quadfloat(0));
    for (int r = 0; r <= 2 * n; ++r)
        if (r + 1 <= n + 1)
            anti[static_cast<std::size_t>(r)] =
                static_cast<quadfloat>(bt(n + 1, r + 1)) * c[static_cast<std::size_t>(r + 1)];
    return anti;
}

}  // namespace detail

// Lazy form of the factorization
//   Bez(v,w) = D^{-1} (H^v T^w - H^w T^v) D^{-1},  D = diag(binom(n,j)).
// apply() runs the five factors right to left; the Hankel and Toeplitz
// actions go through FFT matvecs. Factor entries and the whole pipeline are
// kept in the widest available precision: the two products carry
// binomial-sized intermediates that cancel in the difference, so rounding
// either the entries or the transforms costs ~7 digits at n around 15.
class BezoutOperator {
public:
    BezoutOperator(const CoefficientVector& v, const CoefficientVector& w)
        : n_(detail::bezout_check_inputs(v, w)), dinv_(static_cast<std::size_t>(n_) + 1) {
        BinomialTable bt(n_ + 1);
        hv_ = detail::bezout_hankel_anti(bt, n_, v.coeffs);
        hw_ = detail::bezout_hankel_anti(bt, n_, w.coeffs);
        tv_ = detail::bezout_toeplitz_row(bt, n_, v.coeffs);
        tw_ = detail::bezout_toeplitz_row(bt, n_, w.coeffs);
        for (int j = 0; j <= n_; ++j)
            dinv_[static_cast<std::size_t>(j)] = detail::quadfloat(1) / bt(n_, j);
    }

    int n() const { return n_; }

    std::vector<double> apply(std::span<const double> x) const {
        using detail::quadfloat;
        if (x.size() != dinv_.size())
            throw std::invalid_argument("BezoutOperator::apply: dimension mismatch");
        std::vector<quadfloat> a(x.size());
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = dinv_[i] * x[i];
        std::vector<quadfloat> col0(x.size(), quadfloat(0));
        col0[0] = tw_[0];
        std::vector<quadfloat> y1 = detail::hankel_matvec_anti<quadfloat>(
            hv_, detail::toeplitz_matvec_rc<quadfloat>(tw_, col0, a));
        col0[0] = tv_[0];
        std::vector<quadfloat> y2 = detail::hankel_matvec_anti<quadfloat>(
            hw_, detail::toeplitz_matvec_rc<quadfloat>(tv_, col0, a));
        std::vector<double> y(y1.size());
        for (std::size_t i = 0; i < y1.size(); ++i)
            y[i] = static_cast<double>(dinv_[i] * (y1[i] - y2[i]));
        return y;
    }

private:
    int n_;
    std::vector<detail::quadfloat> hv_, hw_, tv_, tw_, dinv_;
};

inline BezoutOperator bezout_factored(const CoefficientVector& v, const CoefficientVector& w) {
    return BezoutOperator(v, w);
}

}  // namespace bernvand

#pragma once

// Bernstein-Vandermonde matrices V_ij = B^n_j(x_i) on distinct nodes in
// [0,1], and three ways to apply the inverse: pivoted LU, an explicit inverse
// through the Bezout matrix of the node polynomial, and a factorization into
// diagonal, Hankel, Toeplitz and transposed-Vandermonde-like parts whose
// action costs O(n^2) plus FFTs. The factored form has an equispaced variant
// with purely combinatorial coefficients.

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "bernvand/bezout.hpp"
#include "bernvand/polybases.hpp"
#include "bernvand/scalar_kernels.hpp"
#include "bernvand/structured.hpp"

namespace bernvand {

struct BernsteinVandermonde {
    int n;
    NodeSet nodes;
    DenseMatrix v;
};

inline BernsteinVandermonde build_vandermonde(const NodeSet& nodes) {
    const int n = nodes.degree();
    BinomialTable bt(n);
    DenseMatrix v(nodes.size(), nodes.size());
    std::vector<double> row(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        detail::bernstein_row(n, nodes[i], bt, row);
        for (std::size_t j = 0; j < nodes.size(); ++j) v(i, j) = row[j];
    }
    return BernsteinVandermonde{n, nodes, std::move(v)};
}

namespace detail {

// Monomial coefficients of the node polynomial prod_i (x - x_i), by
// incremental expansion in the widest precision: multiplying through by
// (x - x_i) never cancels for nodes in [0,1], so every coefficient comes out
// accurate to the last place. Equals (-1)^{n-k+1} sigma_{n-k+1} at x^k.
inline std::vector<quadfloat> node_polynomial_monomial_xprec(const NodeSet& nodes) {
    const int n = nodes.degree();
    std::vector<quadfloat> c(static_cast<std::size_t>(n) + 2, quadfloat(0));
    c[0] = quadfloat(1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const quadfloat xi = nodes[i];
        for (std::size_t k = i + 1; k >= 1; --k) c[k] = c[k - 1] - xi * c[k];
        c[0] *= -xi;
    }
    return c;
}

inline std::vector<double> node_polynomial_monomial(const NodeSet& nodes) {
    std::vector<quadfloat> x = node_polynomial_monomial_xprec(nodes);
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = static_cast<double>(x[i]);
    return out;
}

inline CoefficientVector node_polynomial_bernstein(const NodeSet& nodes) {
    return monomial_to_bernstein(
        CoefficientVector{Basis::Monomial, node_polynomial_monomial(nodes)});
}

// Monomial to Bernstein at the polynomial's own degree, undemoted.
inline std::vector<quadfloat> monomial_to_bernstein_xprec(std::span<const quadfloat> a,
                                                          const BinomialTable& bt) {
    const int m = static_cast<int>(a.size()) - 1;
    std::vector<quadfloat> out(a.size());
    for (int k = 0; k <= m; ++k) {
        quadfloat acc(0);
        for (int l = 0; l <= k; ++l)
            acc += static_cast<quadfloat>(bt(m - l, k - l)) * a[static_cast<std::size_t>(l)];
        out[static_cast<std::size_t>(k)] = acc / static_cast<quadfloat>(bt(m, k));
    }
    return out;
}

// v'(x_j) = prod_{i != j} (x_j - x_i) for the node polynomial.
inline std::vector<quadfloat> node_polynomial_derivatives_xprec(const NodeSet& nodes) {
    std::vector<quadfloat> d(nodes.size(), quadfloat(1));
    for (std::size_t j = 0; j < nodes.size(); ++j)
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (i != j) d[j] *= static_cast<quadfloat>(nodes[j]) - nodes[i];
    return d;
}

inline std::vector<double> node_polynomial_derivatives(const NodeSet& nodes) {
    std::vector<quadfloat> x = node_polynomial_derivatives_xprec(nodes);
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = static_cast<double>(x[i]);
    return out;
}

}  // namespace detail

// Dense inverse through the Bezout matrix of the node polynomial against the
// constant 1 (whose Bernstein coefficients are all ones):
//   V^{-1} = Bez(v, 1) V^T diag(1 / v'(x_j)).
// Assembled undemoted end to end: rounding v's coefficients or the Bezout
// entries to double first surfaces in the product scaled by kappa_2(V), which
// already passes 1e6 by n = 15 on equispaced nodes.
inline DenseMatrix inverse_via_bezout(const BernsteinVandermonde& bv) {
    using detail::quadfloat;
    const int n = bv.n;
    const std::size_t sz = bv.nodes.size();
    BinomialTable bt(n + 1);
    std::vector<quadfloat> vq = detail::monomial_to_bernstein_xprec(
        detail::node_polynomial_monomial_xprec(bv.nodes), bt);
    std::vector<quadfloat> wq(vq.size(), quadfloat(1));
    std::vector<quadfloat> bez = detail::bezout_recurrence_table(n, vq, wq);
    std::vector<quadfloat> dv = detail::node_polynomial_derivatives_xprec(bv.nodes);
    DenseMatrix out(sz, sz);
    for (std::size_t j = 0; j < sz; ++j) {
        const quadfloat dj = quadfloat(1) / dv[j];
        for (std::size_t i = 0; i < sz; ++i) {
            quadfloat s(0);
            for (std::size_t k = 0; k < sz; ++k)
                s += bez[i * sz + k] * static_cast<quadfloat>(bv.v(j, k));
            out(i, j) = static_cast<double>(s * dj);
        }
    }
    return out;
}

// Lazy factored inverse
//   V^{-1} = D^{-1} (Ht T - H Tt) W^T S^{-1}
// with D = diag(binom(n,j)), S_jj = v'(x_j), W_ij = x_i^j (1-x_i)^{n-j},
// H_ij = binom(n+1, i+j+1), T_ij = binom(n+1, j-i), and Ht, Tt carrying the
// same binomial patterns contracted against the node polynomial's monomial
// coefficients. The single dense factor is W^T; everything else is diagonal,
// Hankel or Toeplitz, applied with FFTs.
class FactoredInverse {
public:
    explicit FactoredInverse(const NodeSet& nodes)
        : FactoredInverse(nodes.degree(), detail::node_polynomial_monomial_xprec(nodes),
                          detail::node_polynomial_derivatives_xprec(nodes),
                          build_wt(nodes.degree(), nodes.values())) {}

    std::size_t size() const { return dinv_.size(); }

    // Factor entries and the whole pipeline sit in the widest precision: the
    // two Hankel-Toeplitz products grow binomial-sized intermediates that
    // cancel in the difference, and the dense factor trades powers of the
    // node spacing against the derivative diagonal. Rounding the factors to
    // double first would cost ~8 digits by n = 18.
    std::vector<double> apply(std::span<const double> b) const {
        using detail::quadfloat;
        if (b.size() != size())
            throw std::invalid_argument("FactoredInverse::apply: dimension mismatch");
        const std::size_t sz = size();
        std::vector<quadfloat> t(sz);
        for (std::size_t j = 0; j < sz; ++j) t[j] = static_cast<quadfloat>(b[j]) / sdiag_[j];
        std::vector<quadfloat> u(sz, quadfloat(0));
        for (std::size_t i = 0; i < sz; ++i)
            for (std::size_t j = 0; j < sz; ++j) u[i] += wt_[i * sz + j] * t[j];
        std::vector<quadfloat> col0(sz, quadfloat(0));
        col0[0] = t_[0];
        std::vector<quadfloat> y1 = detail::hankel_matvec_anti<quadfloat>(
            ht_, detail::toeplitz_matvec_rc<quadfloat>(t_, col0, u));
        col0[0] = tt_[0];
        std::vector<quadfloat> y2 = detail::hankel_matvec_anti<quadfloat>(
            h_, detail::toeplitz_matvec_rc<quadfloat>(tt_, col0, u));
        std::vector<double> y(sz);
        for (std::size_t i = 0; i < sz; ++i)
            y[i] = static_cast<double>(dinv_[i] * (y1[i] - y2[i]));
        return y;
    }

private:
    friend FactoredInverse factored_inverse_equispaced(int n);

    using quadfloat = detail::quadfloat;

    FactoredInverse(int n, std::vector<quadfloat> mono, std::vector<quadfloat> sdiag,
                    std::vector<quadfloat> wt)
        : n_(n),
          wt_(std::move(wt)),
          sdiag_(std::move(sdiag)),
          dinv_(static_cast<std::size_t>(n) + 1) {
        BinomialTable bt(n + 1);
        build_structured(bt, n, mono);
        for (int j = 0; j <= n; ++j)
            dinv_[static_cast<std::size_t>(j)] = quadfloat(1) / bt(n, j);
    }

    // h: plain binomial Hankel, entry (i,j) = binom(n+1, i+j+1).
    // ht: anti-diagonal r carries sum_k binom(n-k+1, n-r) a_k over the node
    //     polynomial's monomial coefficients a.
    // t: plain binomial upper Toeplitz, entry (i,j) = binom(n+1, j-i).
    // tt: row offset m carries sum_k binom(n-k+1, m-k) a_k.
    void build_structured(const BinomialTable& bt, int n, std::span<const quadfloat> mono) {
        h_.assign(2 * static_cast<std::size_t>(n) + 1, quadfloat(0));
        ht_.assign(2 * static_cast<std::size_t>(n) + 1, quadfloat(0));
        for (int r = 0; r <= 2 * n; ++r) {
            h_[static_cast<std::size_t>(r)] = bt(n + 1, r + 1);
            quadfloat s(0);
            for (int k = 0; k <= std::min(r + 1, n + 1); ++k)
                s += static_cast<quadfloat>(bt(n - k + 1, n - r)) *
                     mono[static_cast<std::size_t>(k)];
            ht_[static_cast<std::size_t>(r)] = s;
        }
        t_.assign(static_cast<std::size_t>(n) + 1, quadfloat(0));
        tt_.assign(static_cast<std::size_t>(n) + 1, quadfloat(0));
        for (int m = 0; m <= n; ++m) {
            t_[static_cast<std::size_t>(m)] = bt(n + 1, m);
            quadfloat s(0);
            for (int k = 0; k <= m; ++k)
                s += static_cast<quadfloat>(bt(n - k + 1, m - k)) *
                     mono[static_cast<std::size_t>(k)];
            tt_[static_cast<std::size_t>(m)] = s;
        }
    }

    static std::vector<quadfloat> build_wt(int n, std::span<const double> nodes) {
        const std::size_t sz = nodes.size();
        std::vector<quadfloat> wt(sz * sz);
        for (std::size_t i = 0; i < sz; ++i)
            for (int j = 0; j <= n; ++j)
                wt[static_cast<std::size_t>(j) * sz + i] =
                    ipow<quadfloat>(nodes[i], j) *
                    ipow<quadfloat>(quadfloat(1) - nodes[i], n - j);
        return wt;
    }

    int n_;
    std::vector<quadfloat> h_, ht_, t_, tt_;
    std::vector<quadfloat> wt_;  // row-major (n+1) x (n+1) scaled transpose
    std::vector<quadfloat> sdiag_, dinv_;
};

inline FactoredInverse factored_inverse(const NodeSet& nodes) { return FactoredInverse(nodes); }

// Equispaced specialization on x_i = i/n. Pulling the common powers of n out
// of every factor (they cancel between the dense factor and the derivative
// diagonal) leaves purely combinatorial data: node-polynomial coefficients
// s(n+1,k) / n^{n-k+1} from Stirling numbers, derivative diagonal
// (-1)^{n-j} j! (n-j)!, and dense factor i^j (n-i)^{n-j}.
inline FactoredInverse factored_inverse_equispaced(int n) {
    if (n < 1)
        throw std::invalid_argument("factored_inverse_equispaced: n must be >= 1");
    using quadfloat = detail::quadfloat;
    StirlingTable st(n + 1);
    std::vector<quadfloat> mono(static_cast<std::size_t>(n) + 2);
    for (int k = 0; k <= n + 1; ++k)
        mono[static_cast<std::size_t>(k)] =
            static_cast<quadfloat>(st(n + 1, k)) /
            ipow<quadfloat>(static_cast<quadfloat>(n), n - k + 1);
    std::vector<quadfloat> fact(static_cast<std::size_t>(n) + 1);
    fact[0] = quadfloat(1);
    for (int j = 1; j <= n; ++j)
        fact[static_cast<std::size_t>(j)] = fact[static_cast<std::size_t>(j) - 1] * j;
    std::vector<quadfloat> sdiag(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        quadfloat sign = ((n - j) % 2 == 0) ? quadfloat(1) : quadfloat(-1);
        sdiag[static_cast<std::size_t>(j)] =
            sign * fact[static_cast<std::size_t>(j)] * fact[static_cast<std::size_t>(n - j)];
    }
    const std::size_t sz = static_cast<std::size_t>(n) + 1;
    std::vector<quadfloat> wt(sz * sz);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            wt[static_cast<std::size_t>(j) * sz + static_cast<std::size_t>(i)] =
                ipow<quadfloat>(static_cast<quadfloat>(i), j) *
                ipow<quadfloat>(static_cast<quadfloat>(n - i), n - j);
    return FactoredInverse(n, std::move(mono), std::move(sdiag), std::move(wt));
}

enum class SolveMethod { LU, BezoutInverse, DFT };

// Solves V c = b for the Bernstein coefficients interpolating b over the
// nodes, by the requested route.
inline std::vector<double> solve(SolveMethod method, const NodeSet& nodes,
                                 std::span<const double> b) {
    if (b.size() != nodes.size())
        throw std::invalid_argument("solve: right-hand side size must match node count");
    switch (method) {
        case SolveMethod::LU: {
            BernsteinVandermonde bv = build_vandermonde(nodes);
            return lu_solve(lu_factor(bv.v), b);
        }
        case SolveMethod::BezoutInverse: {
            BernsteinVandermonde bv = build_vandermonde(nodes);
            return matvec(inverse_via_bezout(bv), b);
        }
        case SolveMethod::DFT:
            return factored_inverse(nodes).apply(b);
    }
    throw std::logic_error("solve: unknown method");
}

}  // namespace bernvand

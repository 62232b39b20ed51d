#pragma once

// Polynomial bases on [0,1]: Bernstein basis evaluation, node sets, basis
// conversions (monomial -> Bernstein, Legendre -> Bernstein), shifted
// Legendre polynomials, and L2 norms of Lagrange cardinal polynomials.

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "bernvand/scalar_kernels.hpp"
#include "bernvand/structured.hpp"

namespace bernvand {

enum class Basis { Bernstein, Monomial, Legendre };

struct CoefficientVector {
    Basis basis;
    std::vector<double> coeffs;
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Strictly increasing nodes inside [0,1]; degree() + 1 nodes.
class NodeSet {
public:
    explicit NodeSet(std::vector<double> nodes) : nodes_(std::move(nodes)) {
        if (nodes_.empty())
            throw std::invalid_argument("NodeSet: at least one node required");
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (nodes_[i] < 0.0 || nodes_[i] > 1.0)
                throw std::invalid_argument("NodeSet: nodes must lie in [0,1]");
            if (i > 0 && nodes_[i] <= nodes_[i - 1])
                throw std::invalid_argument("NodeSet: nodes must be strictly increasing");
        }
    }

    int degree() const { return static_cast<int>(nodes_.size()) - 1; }
    std::size_t size() const { return nodes_.size(); }
    double operator[](std::size_t i) const { return nodes_[i]; }
    std::span<const double> values() const { return nodes_; }

private:
    std::vector<double> nodes_;
};

inline NodeSet equispaced_nodes(int n) {
    if (n < 1)
        throw std::invalid_argument("equispaced_nodes: n must be >= 1");
    std::vector<double> x(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) x[static_cast<std::size_t>(i)] = static_cast<double>(i) / n;
    return NodeSet(std::move(x));
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent substream for (seed, tag, k); reruns with the same triple give
// the same stream regardless of what else was drawn before.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t tag, std::uint64_t k) {
    return std::mt19937_64(splitmix64(splitmix64(splitmix64(seed) ^ tag) ^ k));
}

// Uniform in [0,1) from the top 53 bits; avoids distribution-object
// portability concerns.
inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

constexpr std::uint64_t tag_nodes = 0x6e6f646573ULL;
constexpr std::uint64_t tag_coeffs = 0x636f656666ULL;

}  // namespace detail

// One node jittered uniformly inside each of the n+1 equal subintervals of
// [0,1]; strictly increasing by construction.
inline NodeSet random_stratified_nodes(int n, std::uint64_t seed) {
    if (n < 0)
        throw std::invalid_argument("random_stratified_nodes: n must be >= 0");
    auto g = detail::substream(seed, detail::tag_nodes, static_cast<std::uint64_t>(n));
    std::vector<double> x(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j)
        x[static_cast<std::size_t>(j)] = (static_cast<double>(j) + detail::uniform01(g)) / (n + 1);
    return NodeSet(std::move(x));
}

// B^n_j(x) = binom(n,j) x^j (1-x)^{n-j}; a plain product, so there is no
// cancellation at the endpoints.
inline double bernstein_eval(int n, int j, double x) {
    if (n < 0 || j < 0 || j > n)
        throw std::out_of_range("bernstein_eval: need 0 <= j <= n");
    BinomialTable bt(n);
    return bt(n, j) * ipow(x, j) * ipow(1.0 - x, n - j);
}

namespace detail {

// All B^n_j(x) for one x: prefix powers of x forward, suffix powers of (1-x)
// backward, one multiplication per entry.
inline void bernstein_row(int n, double x, const BinomialTable& bt, std::span<double> out) {
    const double y = 1.0 - x;
    double p = 1.0;
    for (int j = 0; j <= n; ++j) {
        out[static_cast<std::size_t>(j)] = p * bt(n, j);
        p *= x;
    }
    p = 1.0;
    for (int j = n; j >= 0; --j) {
        out[static_cast<std::size_t>(j)] *= p;
        p *= y;
    }
}

// Entry (i,j) of the Bernstein mass matrix on [0,1]:
// integral of B^n_i B^n_j = binom(n,i) binom(n,j) / ((2n+1) binom(2n,i+j)).
inline double bernstein_mass_entry(const BinomialTable& bt, int n, int i, int j) {
    return bt(n, i) * bt(n, j) / ((2.0 * n + 1.0) * bt(2 * n, i + j));
}

}  // namespace detail

// Re-expands a monomial-coefficient vector in the Bernstein basis of the same
// degree: b_k = sum_{l<=k} binom(N-l, k-l) a_l / binom(N,k). The sums are
// accumulated in long double: for integer inputs (Legendre columns, node
// polynomials) every term and partial sum stays below 2^63, so the
// accumulation is exact and each output is correctly rounded.
inline CoefficientVector monomial_to_bernstein(const CoefficientVector& v) {
    if (v.basis != Basis::Monomial)
        throw std::invalid_argument("monomial_to_bernstein: input must be in the monomial basis");
    const int n = v.degree();
    BinomialTable bt(n);
    std::vector<double> out(v.coeffs.size());
    for (int k = 0; k <= n; ++k) {
        long double acc = 0.0L;
        for (int l = 0; l <= k; ++l)
            acc += static_cast<long double>(bt(n - l, k - l)) *
                   static_cast<long double>(v.coeffs[static_cast<std::size_t>(l)]);
        out[static_cast<std::size_t>(k)] = static_cast<double>(acc / static_cast<long double>(bt(n, k)));
    }
    return CoefficientVector{Basis::Bernstein, std::move(out)};
}

// Legendre polynomial shifted to [0,1] and normalized by L_j(1) = 1.
inline double legendre_shifted_eval(int j, double x) {
    if (j < 0)
        throw std::invalid_argument("legendre_shifted_eval: j must be >= 0");
    const double u = 2.0 * x - 1.0;
    double pm1 = 1.0, p = u;
    if (j == 0) return 1.0;
    for (int m = 1; m < j; ++m) {
        double next = ((2.0 * m + 1.0) * u * p - m * pm1) / (m + 1.0);
        pm1 = p;
        p = next;
    }
    return p;
}

namespace detail {

// Monomial coefficients of the shifted Legendre polynomial L_j. The
// three-term recurrence only ever divides exact integers below 2^53 by their
// known integer quotients, so the coefficients are exact for j <= 20.
inline std::vector<double> legendre_monomial_coeffs(int j) {
    std::vector<double> pm1{1.0};
    if (j == 0) return pm1;
    std::vector<double> p{-1.0, 2.0};
    for (int m = 1; m < j; ++m) {
        std::vector<double> next(static_cast<std::size_t>(m) + 2, 0.0);
        for (std::size_t k = 0; k < next.size(); ++k) {
            double s = 0.0;
            if (k >= 1) s += 2.0 * p[k - 1];
            if (k < p.size()) s -= p[k];
            s *= (2.0 * m + 1.0);
            if (k < pm1.size()) s -= static_cast<double>(m) * pm1[k];
            next[k] = s / (m + 1.0);
        }
        pm1 = std::move(p);
        p = std::move(next);
    }
    return p;
}

}  // namespace detail

// (n+1) x (n+1) basis-conversion matrix whose column j holds the degree-n
// Bernstein coefficients of the shifted Legendre polynomial L_j.
inline DenseMatrix legendre_to_bernstein_matrix(int n) {
    if (n < 0)
        throw std::invalid_argument("legendre_to_bernstein_matrix: n must be >= 0");
    const std::size_t sz = static_cast<std::size_t>(n) + 1;
    DenseMatrix t(sz, sz);
    for (int j = 0; j <= n; ++j) {
        std::vector<double> mono = detail::legendre_monomial_coeffs(j);
        mono.resize(sz, 0.0);
        CoefficientVector bern =
            monomial_to_bernstein(CoefficientVector{Basis::Monomial, std::move(mono)});
        for (std::size_t i = 0; i < sz; ++i) t(i, static_cast<std::size_t>(j)) = bern.coeffs[i];
    }
    return t;
}

// L2(0,1) norms of the Lagrange cardinal polynomials of the node set:
// each numerator prod_{i != j} (x - x_i) is expanded incrementally in the
// monomial basis, converted to Bernstein, and integrated through the
// closed-form Bernstein mass entries.
inline std::vector<double> lagrange_l2_norms(const NodeSet& nodes) {
    const int n = nodes.degree();
    BinomialTable bt(2 * n > 0 ? 2 * n : 1);
    std::vector<double> w(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        std::vector<double> poly{1.0};
        double denom = 1.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (i == j) continue;
            std::vector<double> next(poly.size() + 1, 0.0);
            for (std::size_t k = 0; k < poly.size(); ++k) {
                next[k + 1] += poly[k];
                next[k] -= nodes[i] * poly[k];
            }
            poly = std::move(next);
            denom *= nodes[j] - nodes[i];
        }
        for (double& c : poly) c /= denom;
        CoefficientVector bern =
            monomial_to_bernstein(CoefficientVector{Basis::Monomial, std::move(poly)});
        double s = 0.0;
        for (int a = 0; a <= n; ++a) {
            double row = 0.0;
            for (int b = 0; b <= n; ++b)
                row += detail::bernstein_mass_entry(bt, n, a, b) *
                       bern.coeffs[static_cast<std::size_t>(b)];
            s += bern.coeffs[static_cast<std::size_t>(a)] * row;
        }
        w[j] = std::sqrt(s);
    }
    return w;
}

// Evaluates a coefficient vector in its own basis: de Casteljau for
// Bernstein, Horner for monomial, the three-term recurrence for Legendre.
inline double evaluate(const CoefficientVector& v, double x) {
    switch (v.basis) {
        case Basis::Bernstein: {
            std::vector<double> b = v.coeffs;
            for (std::size_t r = b.size(); r-- > 1;)
                for (std::size_t k = 0; k + 1 < b.size() && k < r; ++k)
                    b[k] = (1.0 - x) * b[k] + x * b[k + 1];
            return b[0];
        }
        case Basis::Monomial: {
            double s = 0.0;
            for (std::size_t k = v.coeffs.size(); k-- > 0;) s = s * x + v.coeffs[k];
            return s;
        }
        case Basis::Legendre: {
            double s = 0.0;
            for (std::size_t j = 0; j < v.coeffs.size(); ++j)
                s += v.coeffs[j] * legendre_shifted_eval(static_cast<int>(j), x);
            return s;
        }
    }
    throw std::logic_error("evaluate: unknown basis");
}

}  // namespace bernvand

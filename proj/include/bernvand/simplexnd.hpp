#pragma once

// Bernstein bases on the d-simplex: multi-index lattices in graded order
// (first barycentric component descending, recursively on the rest), the
// simplex Bernstein-Vandermonde matrix on the barycentric lattice of an
// m-refined simplex, degree elevation, the simplex mass matrix, and a block
// solver that factors the Vandermonde matrix into blocks of univariate LU
// factors times lower-dimensional Vandermonde and elevation operators.

#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bernvand/polybases.hpp"
#include "bernvand/scalar_kernels.hpp"
#include "bernvand/structured.hpp"
#include "bernvand/vandermonde1d.hpp"

namespace bernvand {

// Barycentric multi-index: d+1 nonnegative parts summing to the order.
struct MultiIndex {
    std::vector<int> parts;
    int order() const { return std::accumulate(parts.begin(), parts.end(), 0); }
    bool operator==(const MultiIndex&) const = default;
};

// Number of multi-indices with d+1 parts of order n: binom(n+d, d).
inline std::size_t lattice_size(int d, int n) {
    double r = 1.0;
    for (int i = 1; i <= d; ++i) r = r * (n + i) / i;
    return static_cast<std::size_t>(r + 0.5);
}

// All multi-indices of order n with d+1 parts, first part descending and the
// same rule applied recursively to the tail. Indices of equal first part form
// contiguous blocks; for d = 1 the ordering reduces to the usual univariate
// basis order (second part ascending 0..n).
class MultiIndexLattice {
public:
    MultiIndexLattice(int d, int n) : d_(d), n_(n) {
        if (d < 0 || n < 0)
            throw std::invalid_argument("MultiIndexLattice: need d >= 0 and n >= 0");
        std::vector<int> prefix;
        emit(d, n, prefix);
        for (std::size_t p = 0; p < indices_.size(); ++p) pos_[indices_[p].parts] = p;
        offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
        if (d >= 1)
            for (int b0 = n - 1; b0 >= 0; --b0)
                offsets_[static_cast<std::size_t>(b0)] =
                    offsets_[static_cast<std::size_t>(b0) + 1] + lattice_size(d - 1, n - b0 - 1);
    }

    int d() const { return d_; }
    int n() const { return n_; }
    std::size_t size() const { return indices_.size(); }
    const MultiIndex& operator[](std::size_t p) const { return indices_[p]; }

    std::size_t index_of(const MultiIndex& mi) const {
        auto it = pos_.find(mi.parts);
        if (it == pos_.end())
            throw std::invalid_argument("MultiIndexLattice: index not in lattice");
        return it->second;
    }

    // Offset of the contiguous block whose first part equals b0.
    std::size_t block_offset(int b0) const {
        if (b0 < 0 || b0 > n_)
            throw std::out_of_range("MultiIndexLattice: block index out of range");
        return offsets_[static_cast<std::size_t>(b0)];
    }

    std::size_t block_size(int b0) const {
        if (d_ == 0) return b0 == n_ ? 1 : 0;
        return lattice_size(d_ - 1, n_ - b0);
    }

private:
    void emit(int d, int rem, std::vector<int>& prefix) {
        if (d == 0) {
            prefix.push_back(rem);
            indices_.push_back(MultiIndex{prefix});
            prefix.pop_back();
            return;
        }
        for (int b0 = rem; b0 >= 0; --b0) {
            prefix.push_back(b0);
            emit(d - 1, rem - b0, prefix);
            prefix.pop_back();
        }
    }

    int d_, n_;
    std::vector<MultiIndex> indices_;
    std::map<std::vector<int>, std::size_t> pos_;
    std::vector<std::size_t> offsets_;
};

inline MultiIndexLattice build_lattice(int d, int n) { return MultiIndexLattice(d, n); }

namespace detail {

// n! / prod(beta_i!) as a product of binomials of exact partial sums; stays
// exact where plain factorial quotients would not.
inline double multinomial(const BinomialTable& bt, std::span<const int> beta) {
    int s = 0;
    double r = 1.0;
    for (int b : beta) {
        s += b;
        r *= bt(s, b);
    }
    return r;
}

}  // namespace detail

// Degree-n Bernstein basis function for multi-index beta at a barycentric
// point (components summing to 1): multinomial(n, beta) prod p_i^{beta_i}.
inline double simplex_bernstein_value(const MultiIndex& beta, std::span<const double> bary) {
    if (bary.size() != beta.parts.size())
        throw std::invalid_argument("simplex_bernstein_value: dimension mismatch");
    BinomialTable bt(beta.order());
    double r = detail::multinomial(bt, beta.parts);
    for (std::size_t i = 0; i < bary.size(); ++i) r *= ipow(bary[i], beta.parts[i]);
    return r;
}

// Value at a barycentric point of the polynomial with simplex Bernstein
// coefficients given in lattice order.
inline double evaluate_simplex(const MultiIndexLattice& lat, std::span<const double> coeffs,
                               std::span<const double> bary) {
    if (coeffs.size() != lat.size())
        throw std::invalid_argument("evaluate_simplex: coefficient count mismatch");
    double s = 0.0;
    for (std::size_t p = 0; p < lat.size(); ++p)
        s += coeffs[p] * simplex_bernstein_value(lat[p], bary);
    return s;
}

struct SimplexVandermonde {
    int d, m, n;
    DenseMatrix v;
};

// Collocation matrix of the degree-n simplex Bernstein basis on the
// barycentric lattice alpha/m, rows over order-m indices and columns over
// order-n indices, both in lattice order. m = 0 is the single-point limit at
// vertex 0 (barycentric (1, 0, ..., 0)): the row picks the coefficient of
// the column index (n, 0, ..., 0).
inline SimplexVandermonde build_simplex_vandermonde(int d, int m, int n) {
    if (d < 1)
        throw std::invalid_argument("build_simplex_vandermonde: d must be >= 1");
    MultiIndexLattice rows(d, m), cols(d, n);
    DenseMatrix v(rows.size(), cols.size());
    BinomialTable bt(n > 0 ? n : 1);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const MultiIndex& alpha = rows[r];
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const MultiIndex& beta = cols[c];
            double e = detail::multinomial(bt, beta.parts);
            if (m == 0) {
                e = (beta.parts[0] == n) ? 1.0 : 0.0;
            } else {
                for (std::size_t i = 0; i < beta.parts.size(); ++i)
                    e *= ipow(alpha.parts[i] / static_cast<double>(m), beta.parts[i]);
            }
            v(r, c) = e;
        }
    }
    return SimplexVandermonde{d, m, n, std::move(v)};
}

// Degree elevation from order n0 to order n1 >= n0 on the d-simplex, stored
// sparsely by rows: entry (gamma, beta) = prod binom(gamma_i, beta_i) /
// binom(n1, n0) wherever beta <= gamma componentwise. Rows sum to one, since
// elevation is exact on constants.
class ElevationMatrix {
public:
    ElevationMatrix(int d, int n0, int n1) : d_(d), n0_(n0), n1_(n1) {
        if (d < 0 || n0 < 0 || n0 > n1)
            throw std::invalid_argument("ElevationMatrix: need 0 <= n0 <= n1");
        MultiIndexLattice from(d, n0), to(d, n1);
        BinomialTable bt(n1 > 0 ? n1 : 1);
        const double scale = 1.0 / bt(n1, n0);
        rows_.resize(to.size());
        cols_ = from.size();
        for (std::size_t r = 0; r < to.size(); ++r) {
            const MultiIndex& gamma = to[r];
            for (std::size_t c = 0; c < from.size(); ++c) {
                const MultiIndex& beta = from[c];
                double e = scale;
                bool ok = true;
                for (std::size_t i = 0; i < beta.parts.size(); ++i) {
                    if (beta.parts[i] > gamma.parts[i]) {
                        ok = false;
                        break;
                    }
                    e *= bt(gamma.parts[i], beta.parts[i]);
                }
                if (ok) rows_[r].emplace_back(c, e);
            }
        }
    }

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    std::vector<double> apply(std::span<const double> c) const {
        if (c.size() != cols_)
            throw std::invalid_argument("ElevationMatrix::apply: dimension mismatch");
        std::vector<double> out(rows_.size(), 0.0);
        for (std::size_t r = 0; r < rows_.size(); ++r)
            for (const auto& [j, e] : rows_[r]) out[r] += e * c[j];
        return out;
    }

    DenseMatrix to_dense() const {
        DenseMatrix m(rows_.size(), cols_);
        for (std::size_t r = 0; r < rows_.size(); ++r)
            for (const auto& [j, e] : rows_[r]) m(r, j) = e;
        return m;
    }

private:
    int d_, n0_, n1_;
    std::size_t cols_;
    std::vector<std::vector<std::pair<std::size_t, double>>> rows_;
};

inline ElevationMatrix elevation(int d, int n0, int n1) { return ElevationMatrix(d, n0, n1); }

namespace detail {

// One elevation step, degree k to k+1, matrix-free:
// out_gamma = (1/(k+1)) sum_i gamma_i c_{gamma - e_i}.
inline std::vector<double> elevate_once(int d, int k, std::span<const double> c) {
    MultiIndexLattice from(d, k), to(d, k + 1);
    std::vector<double> out(to.size(), 0.0);
    for (std::size_t r = 0; r < to.size(); ++r) {
        const MultiIndex& gamma = to[r];
        double s = 0.0;
        MultiIndex probe = gamma;
        for (std::size_t i = 0; i < probe.parts.size(); ++i) {
            if (gamma.parts[i] == 0) continue;
            probe.parts[i] -= 1;
            s += gamma.parts[i] * c[from.index_of(probe)];
            probe.parts[i] += 1;
        }
        out[r] = s / (k + 1);
    }
    return out;
}

}  // namespace detail

// Composed single-step elevation of a coefficient vector from degree n0 to
// degree n1; agrees with ElevationMatrix::apply.
inline std::vector<double> elevate(int d, int n0, int n1, std::span<const double> c) {
    if (n0 > n1)
        throw std::invalid_argument("elevate: need n0 <= n1");
    std::vector<double> out(c.begin(), c.end());
    for (int k = n0; k < n1; ++k) out = detail::elevate_once(d, k, out);
    return out;
}

struct SimplexMass {
    int d, n;
    DenseMatrix m;
};

// Gram matrix of the degree-n simplex Bernstein basis over the unit simplex
// (volume 1/d!):
//   M_ab = multinomial(n,a) multinomial(n,b) prod((a_i+b_i)!) / (2n+d)!.
inline SimplexMass simplex_mass_matrix(int d, int n) {
    if (d < 1 || n < 0)
        throw std::invalid_argument("simplex_mass_matrix: need d >= 1 and n >= 0");
    MultiIndexLattice lat(d, n);
    BinomialTable bt(n > 0 ? n : 1);
    DenseMatrix m(lat.size(), lat.size());
    const double denom = factorial(2 * n + d);
    for (std::size_t r = 0; r < lat.size(); ++r)
        for (std::size_t c = r; c < lat.size(); ++c) {
            double num = detail::multinomial(bt, lat[r].parts) *
                         detail::multinomial(bt, lat[c].parts);
            for (std::size_t i = 0; i < lat[r].parts.size(); ++i)
                num *= factorial(lat[r].parts[i] + lat[c].parts[i]);
            m(r, c) = num / denom;
            m(c, r) = m(r, c);
        }
    return SimplexMass{d, n, std::move(m)};
}

struct BlockReductionReport {
    int d, m, n, alpha0, beta0;
    double scalar;         // binom(n,b0) (a0/m)^{b0} (1 - a0/m)^{n-b0}
    double max_abs_diff;   // block vs scalar * lower-dimensional matrix
};

// Checks that the (alpha0, beta0) block of the simplex Vandermonde matrix is
// the univariate Bernstein value binom(n,b0) t^{b0} (1-t)^{n-b0} at t = a0/m
// times the (d-1)-dimensional matrix on the residual orders.
inline BlockReductionReport block_reduction_check(int d, int m, int n, int alpha0, int beta0) {
    if (d < 2 || m < 1 || alpha0 < 0 || alpha0 > m || beta0 < 0 || beta0 > n)
        throw std::invalid_argument("block_reduction_check: invalid block location");
    SimplexVandermonde big = build_simplex_vandermonde(d, m, n);
    MultiIndexLattice rows(d, m), cols(d, n);
    const double t = alpha0 / static_cast<double>(m);
    BinomialTable bt(n > 0 ? n : 1);
    const double scalar = bt(n, beta0) * ipow(t, beta0) * ipow(1.0 - t, n - beta0);
    SimplexVandermonde sub = build_simplex_vandermonde(d - 1, m - alpha0, n - beta0);
    const std::size_t r0 = rows.block_offset(alpha0), c0 = cols.block_offset(beta0);
    double diff = 0.0;
    for (std::size_t i = 0; i < sub.v.rows(); ++i)
        for (std::size_t j = 0; j < sub.v.cols(); ++j)
            diff = std::max(diff,
                            std::abs(big.v(r0 + i, c0 + j) - scalar * sub.v(i, j)));
    return BlockReductionReport{d, m, n, alpha0, beta0, scalar, diff};
}

// Solves V^{d,n,n} c = b on the lattice of the degree-n simplex by block
// forward and backward substitution. The factorization underneath:
// L blocks are (unpivoted univariate L)_{a0,g} V^{d-1, n-a0, n-g}, U blocks
// are (univariate U)_{b0,g} E^{d-1, n-g, n-b0}, so the forward sweep applies
// lower-dimensional Vandermonde matrices, the backward sweep elevations, and
// the recursion bottoms out in univariate LU solves.
inline std::vector<double> block_lu_solve(int d, int n, std::span<const double> b) {
    if (d < 1)
        throw std::invalid_argument("block_lu_solve: d must be >= 1");
    if (b.size() != lattice_size(d, n))
        throw std::invalid_argument("block_lu_solve: right-hand side has wrong size");
    if (n == 0) return std::vector<double>(b.begin(), b.end());
    if (d == 1) {
        BernsteinVandermonde bv = build_vandermonde(equispaced_nodes(n));
        return lu_solve(lu_factor(bv.v), b);
    }
    LuFactors uni = lu_factor_nopivot(build_vandermonde(equispaced_nodes(n)).v);
    MultiIndexLattice lat(d, n);

    std::vector<std::vector<double>> y(static_cast<std::size_t>(n) + 1);
    for (int a0 = 0; a0 <= n; ++a0) {
        std::size_t off = lat.block_offset(a0), sz = lat.block_size(a0);
        std::vector<double> rhs(b.begin() + static_cast<std::ptrdiff_t>(off),
                                b.begin() + static_cast<std::ptrdiff_t>(off + sz));
        for (int g = 0; g < a0; ++g) {
            double lag = uni.l(static_cast<std::size_t>(a0), static_cast<std::size_t>(g));
            if (lag == 0.0) continue;
            SimplexVandermonde sub = build_simplex_vandermonde(d - 1, n - a0, n - g);
            std::vector<double> w = matvec(sub.v, y[static_cast<std::size_t>(g)]);
            for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] -= lag * w[i];
        }
        y[static_cast<std::size_t>(a0)] = block_lu_solve(d - 1, n - a0, rhs);
    }

    std::vector<double> c(lat.size());
    for (int b0 = n; b0 >= 0; --b0) {
        std::vector<double> rhs = std::move(y[static_cast<std::size_t>(b0)]);
        for (int g = b0 + 1; g <= n; ++g) {
            double ubg = uni.u(static_cast<std::size_t>(b0), static_cast<std::size_t>(g));
            if (ubg == 0.0) continue;
            std::size_t goff = lat.block_offset(g);
            std::span<const double> cg(c.data() + goff, lat.block_size(g));
            std::vector<double> w = elevate(d - 1, n - g, n - b0, cg);
            for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] -= ubg * w[i];
        }
        double diag = uni.u(static_cast<std::size_t>(b0), static_cast<std::size_t>(b0));
        std::size_t off = lat.block_offset(b0);
        for (std::size_t i = 0; i < rhs.size(); ++i) c[off + i] = rhs[i] / diag;
    }
    return c;
}

}  // namespace bernvand

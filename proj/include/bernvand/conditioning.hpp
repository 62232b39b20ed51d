#pragma once

// Conditioning of Bernstein-Vandermonde interpolation measured from the L2
// function norm to the 2-norm of the interpolation values: the Bernstein mass
// matrix and its norm, the condition number both by direct mass-matrix
// whitening and by the cheaper Legendre route, an upper bound from Lagrange
// L2 norms, and a spectral sanity check of the mass matrix against the
// Legendre-to-Bernstein conversion columns.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "bernvand/polybases.hpp"
#include "bernvand/scalar_kernels.hpp"
#include "bernvand/structured.hpp"
#include "bernvand/vandermonde1d.hpp"

namespace bernvand {

struct MassMatrix {
    int n;
    DenseMatrix m;
};

// Gram matrix of the degree-n Bernstein basis in L2(0,1):
//   M_ij = binom(n,i) binom(n,j) / ((2n+1) binom(2n, i+j)).
inline MassMatrix mass_matrix(int n) {
    if (n < 0)
        throw std::invalid_argument("mass_matrix: n must be >= 0");
    BinomialTable bt(2 * n > 0 ? 2 * n : 1);
    const std::size_t sz = static_cast<std::size_t>(n) + 1;
    DenseMatrix m(sz, sz);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                detail::bernstein_mass_entry(bt, n, i, j);
    return MassMatrix{n, std::move(m)};
}

// sqrt(p^T M p): the L2(0,1) norm of the polynomial with Bernstein
// coefficients p.
inline double m_norm(const MassMatrix& mm, std::span<const double> p) {
    if (p.size() != mm.m.rows())
        throw std::invalid_argument("m_norm: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < p.size(); ++j) row += mm.m(i, j) * p[j];
        s += p[i] * row;
    }
    return std::sqrt(s);
}

// Condition number of interpolation from (polynomials, L2 norm) to (values,
// 2-norm). Computed through the Legendre route: the columns of the
// Legendre-to-Bernstein conversion are M-orthogonal with norms 1/sqrt(2j+1),
// so kappa equals the 2-norm condition number of the Legendre-Vandermonde
// matrix with column j scaled by sqrt(2j+1).
inline double kappa_m_to_2(const NodeSet& nodes) {
    const int n = nodes.degree();
    DenseMatrix a(nodes.size(), nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (int j = 0; j <= n; ++j)
            a(i, static_cast<std::size_t>(j)) =
                legendre_shifted_eval(j, nodes[i]) * std::sqrt(2.0 * j + 1.0);
    return condition_number_2(a);
}

// Same quantity by definition: kappa_2 of V M^{-1/2}, with M^{-1/2} from a
// symmetric eigendecomposition. Slower and less accurate for large n; kept
// as the reference implementation.
inline double kappa_m_to_2_whitened(const NodeSet& nodes) {
    const int n = nodes.degree();
    BernsteinVandermonde bv = build_vandermonde(nodes);
    SymmetricEigen e = symmetric_eigen(mass_matrix(n).m);
    const std::size_t sz = nodes.size();
    DenseMatrix isqrt(sz, sz);
    for (std::size_t i = 0; i < sz; ++i)
        for (std::size_t j = 0; j < sz; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < sz; ++k)
                s += e.vectors(i, k) * e.vectors(j, k) / std::sqrt(e.values[k]);
            isqrt(i, j) = s;
        }
    return condition_number_2(matmul(bv.v, isqrt));
}

// Upper bound (n+1)^{3/2} || w ||_2 where w_j is the L2 norm of the j-th
// Lagrange cardinal polynomial of the node set.
inline double kappa_bound(const NodeSet& nodes) {
    std::vector<double> w = lagrange_l2_norms(nodes);
    double nn = static_cast<double>(nodes.size());
    return nn * std::sqrt(nn) * norm2(w);
}

struct SpectralCheckReport {
    int n;
    DenseMatrix q;               // orthonormalized eigenvector columns
    std::vector<double> lambda;  // Rayleigh quotients, one per column
    double orthogonality_error;  // max-norm of Q^T Q - I
    double reconstruction_error;  // max-norm of Q diag(lambda) Q^T - M
};

// The Legendre-to-Bernstein conversion columns diagonalize the mass matrix:
// normalizing them in the 2-norm must give an orthogonal matrix whose
// Rayleigh quotients reconstruct M.
inline SpectralCheckReport spectral_check(int n) {
    MassMatrix mm = mass_matrix(n);
    DenseMatrix t = legendre_to_bernstein_matrix(n);
    const std::size_t sz = t.rows();
    DenseMatrix q(sz, sz);
    for (std::size_t j = 0; j < sz; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < sz; ++i) s += t(i, j) * t(i, j);
        s = std::sqrt(s);
        for (std::size_t i = 0; i < sz; ++i) q(i, j) = t(i, j) / s;
    }
    std::vector<double> lambda(sz);
    for (std::size_t j = 0; j < sz; ++j) {
        std::vector<double> qj(sz);
        for (std::size_t i = 0; i < sz; ++i) qj[i] = q(i, j);
        std::vector<double> mq = matvec(mm.m, qj);
        double s = 0.0;
        for (std::size_t i = 0; i < sz; ++i) s += qj[i] * mq[i];
        lambda[j] = s;
    }
    DenseMatrix qtq = matmul(transpose(q), q);
    for (std::size_t i = 0; i < sz; ++i) qtq(i, i) -= 1.0;
    DenseMatrix recon(sz, sz);
    for (std::size_t i = 0; i < sz; ++i)
        for (std::size_t j = 0; j < sz; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < sz; ++k) s += q(i, k) * lambda[k] * q(j, k);
            recon(i, j) = s - mm.m(i, j);
        }
    return SpectralCheckReport{n, std::move(q), std::move(lambda), max_abs(qtq),
                               max_abs(recon)};
}

struct ConditioningRow {
    int n;
    double kappa_m_to_2;  // L2-to-values condition number
    double bound;         // (n+1)^{3/2} ||w||_2 upper bound
    double kappa_2;       // classical 2-norm condition number of V
};

inline ConditioningRow conditioning_row(const NodeSet& nodes) {
    BernsteinVandermonde bv = build_vandermonde(nodes);
    return ConditioningRow{nodes.degree(), kappa_m_to_2(nodes), kappa_bound(nodes),
                           condition_number_2(bv.v)};
}

}  // namespace bernvand

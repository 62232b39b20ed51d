#pragma once

// Small dense-matrix kernels plus the structured pieces the factored solvers
// need: Toeplitz and Hankel matvecs through a radix-2 FFT (circulant
// embedding), LU with and without partial pivoting, singular values by
// one-sided Jacobi, and a symmetric Jacobi eigensolver. Everything here
// targets matrices of order <= a few hundred; no blocking, no BLAS.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace bernvand {

class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::span<const double> data() const { return a_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

inline std::vector<double> matvec(const DenseMatrix& m, std::span<const double> x) {
    if (x.size() != m.cols())
        throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<double> y(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

inline DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matmul: dimension mismatch");
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline DenseMatrix transpose(const DenseMatrix& a) {
    DenseMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

inline double max_abs(const DenseMatrix& a) {
    double m = 0.0;
    for (double v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

inline double norm2(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

inline double max_abs(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

struct SingularMatrixError : std::runtime_error {
    explicit SingularMatrixError(std::size_t pivot)
        : std::runtime_error("singular matrix: zero pivot at index " + std::to_string(pivot)),
          pivot_index(pivot) {}
    std::size_t pivot_index;
};

namespace detail {

// Widest float the compiler offers, for pipelines whose intermediates carry
// binomial-sized cancellation. Arithmetic on __float128 is compiler-inlined;
// no libquadmath functions are used.
#if defined(__SIZEOF_FLOAT128__)
using quadfloat = __float128;
#else
using quadfloat = long double;
#endif

template <class Real>
inline constexpr bool is_std_float =
    std::is_same_v<Real, float> || std::is_same_v<Real, double> ||
    std::is_same_v<Real, long double>;

// sqrt for any Real: <cmath> when available, otherwise a long double seed
// refined by two Newton steps (quadratic convergence saturates the mantissa).
template <class Real>
Real real_sqrt(Real x) {
    if constexpr (is_std_float<Real>) {
        return std::sqrt(x);
    } else {
        if (x <= Real(0)) return Real(0);
        Real s = static_cast<Real>(std::sqrt(static_cast<long double>(x)));
        s = (s + x / s) / Real(2);
        s = (s + x / s) / Real(2);
        return s;
    }
}

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

template <class Real>
struct cplx {
    Real re{}, im{};
    friend cplx operator+(cplx a, cplx b) { return {a.re + b.re, a.im + b.im}; }
    friend cplx operator-(cplx a, cplx b) { return {a.re - b.re, a.im - b.im}; }
    friend cplx operator*(cplx a, cplx b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
};

// exp(-2 pi i / len) (conjugated for the inverse). Standard floats use the
// library cos/sin; wider types walk the half-angle recursion
// cos(t/2) = sqrt((1+cos t)/2), sin(t/2) = sqrt((1-cos t)/2) down from the
// exact quarter turn, which needs only sqrt.
template <class Real>
cplx<Real> stage_root(std::size_t len, bool inverse) {
    if constexpr (is_std_float<Real>) {
        Real ang = Real(2) * std::numbers::pi_v<Real> / static_cast<Real>(len) *
                   (inverse ? Real(1) : Real(-1));
        return {std::cos(ang), std::sin(ang)};
    } else {
        if (len == 2) return {Real(-1), Real(0)};
        Real c = Real(0);  // cos(2 pi / 4)
        for (std::size_t l = 8; l <= len; l <<= 1) c = real_sqrt((Real(1) + c) / Real(2));
        Real s = real_sqrt(Real(1) - c * c);
        return {c, inverse ? s : -s};
    }
}

// In-place iterative radix-2 transform; a.size() must be a power of two.
template <class Real>
void fft_inplace(std::vector<cplx<Real>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_inplace: length must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const cplx<Real> wl = stage_root<Real>(len, inverse);
        for (std::size_t i = 0; i < n; i += len) {
            cplx<Real> w{Real(1), Real(0)};
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx<Real> u = a[i + k];
                cplx<Real> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w = w * wl;
            }
        }
    }
    if (inverse) {
        const Real f = Real(1) / static_cast<Real>(n);
        for (auto& z : a) {
            z.re *= f;
            z.im *= f;
        }
    }
}

// Circular convolution of the (zero-padded) sequences via FFT.
template <class Real>
std::vector<Real> circulant_matvec(std::span<const Real> first_col, std::span<const Real> x) {
    const std::size_t m = first_col.size();
    std::vector<cplx<Real>> fc(m), fx(m);
    for (std::size_t i = 0; i < m; ++i) fc[i].re = first_col[i];
    for (std::size_t i = 0; i < x.size(); ++i) fx[i].re = x[i];
    fft_inplace(fc, false);
    fft_inplace(fx, false);
    for (std::size_t i = 0; i < m; ++i) fc[i] = fc[i] * fx[i];
    fft_inplace(fc, true);
    std::vector<Real> y(m);
    for (std::size_t i = 0; i < m; ++i) y[i] = fc[i].re;
    return y;
}

}  // namespace detail

// Toeplitz matrix stored by its first row and first column
// (first_row[0] == first_col[0] is required).
class ToeplitzMatrix {
public:
    ToeplitzMatrix(std::vector<double> first_row, std::vector<double> first_col)
        : row_(std::move(first_row)), col_(std::move(first_col)) {
        if (row_.empty() || row_.size() != col_.size())
            throw std::invalid_argument("ToeplitzMatrix: row/col sizes must match and be nonzero");
        if (row_[0] != col_[0])
            throw std::invalid_argument("ToeplitzMatrix: first_row[0] must equal first_col[0]");
    }

    std::size_t size() const { return row_.size(); }
    double entry(std::size_t i, std::size_t j) const {
        return j >= i ? row_[j - i] : col_[i - j];
    }
    const std::vector<double>& first_row() const { return row_; }
    const std::vector<double>& first_col() const { return col_; }

private:
    std::vector<double> row_, col_;
};

// Hankel matrix with constant anti-diagonals: entry(i,j) = anti[i+j],
// anti.size() == 2*size - 1.
class HankelMatrix {
public:
    explicit HankelMatrix(std::vector<double> anti) : anti_(std::move(anti)) {
        if (anti_.empty() || anti_.size() % 2 == 0)
            throw std::invalid_argument("HankelMatrix: anti-diagonal array must have odd length");
    }

    std::size_t size() const { return (anti_.size() + 1) / 2; }
    double entry(std::size_t i, std::size_t j) const { return anti_[i + j]; }
    const std::vector<double>& anti() const { return anti_; }

private:
    std::vector<double> anti_;
};

namespace detail {

// Raw-descriptor Toeplitz action: first_row / first_col as in ToeplitzMatrix.
template <class Real>
std::vector<Real> toeplitz_matvec_rc(std::span<const Real> first_row,
                                     std::span<const Real> first_col, std::span<const Real> x) {
    const std::size_t n = first_row.size();
    if (x.size() != n || first_col.size() != n)
        throw std::invalid_argument("toeplitz_matvec_fft: dimension mismatch");
    const std::size_t m = next_pow2(2 * n - 1);
    std::vector<Real> c(m, Real(0));
    for (std::size_t k = 0; k < n; ++k) c[k] = first_col[k];
    for (std::size_t k = 1; k < n; ++k) c[m - k] = first_row[k];
    std::vector<Real> y = circulant_matvec<Real>(c, x);
    y.resize(n);
    return y;
}

// Raw-descriptor Hankel action: anti-diagonal array of odd length 2n-1.
template <class Real>
std::vector<Real> hankel_matvec_anti(std::span<const Real> anti, std::span<const Real> x) {
    const std::size_t n = (anti.size() + 1) / 2;
    if (x.size() != n)
        throw std::invalid_argument("hankel_matvec_fft: dimension mismatch");
    std::vector<Real> fc(n), fr(n);
    for (std::size_t k = 0; k < n; ++k) {
        fc[k] = anti[k + n - 1];
        fr[k] = anti[n - 1 - k];
    }
    std::vector<Real> xr(x.rbegin(), x.rend());
    return toeplitz_matvec_rc<Real>(fr, fc, xr);
}

}  // namespace detail

// T x in O(N log N): embed T into the circulant of order 2^ceil(log2(2N-1))
// whose first column is (t_0, t_1, ..., t_{N-1}, 0, ..., 0, t_{-(N-1)}, ..., t_{-1})
// with t_k = first_col[k] for k >= 0 and t_{-k} = first_row[k].
inline std::vector<double> toeplitz_matvec_fft(const ToeplitzMatrix& t,
                                               std::span<const double> x) {
    return detail::toeplitz_matvec_rc<double>(t.first_row(), t.first_col(), x);
}

// H x through the Toeplitz identity H x = T (reverse x), where T has
// first column (anti[N-1], ..., anti[2N-2]) and first row (anti[N-1], ..., anti[0]).
inline std::vector<double> hankel_matvec_fft(const HankelMatrix& h, std::span<const double> x) {
    return detail::hankel_matvec_anti<double>(h.anti(), x);
}

struct LuFactors {
    DenseMatrix l;               // unit lower triangular
    DenseMatrix u;               // upper triangular
    std::vector<std::size_t> perm;  // row permutation: PA = LU, P row i takes source perm[i]
};

namespace detail {

inline LuFactors lu_factor_impl(const DenseMatrix& a, bool pivot) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("lu_factor: matrix must be square");
    const std::size_t n = a.rows();
    DenseMatrix w = a;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        if (pivot) {
            for (std::size_t i = k + 1; i < n; ++i)
                if (std::abs(w(i, k)) > std::abs(w(p, k))) p = i;
        }
        if (w(p, k) == 0.0) throw SingularMatrixError(k);
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(w(k, j), w(p, j));
            std::swap(perm[k], perm[p]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            w(i, k) /= w(k, k);
            double lik = w(i, k);
            if (lik == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) w(i, j) -= lik * w(k, j);
        }
    }
    LuFactors f{DenseMatrix::identity(n), DenseMatrix(n, n), std::move(perm)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            (i > j ? f.l(i, j) : f.u(i, j)) = w(i, j);
    return f;
}

}  // namespace detail

inline LuFactors lu_factor(const DenseMatrix& a) { return detail::lu_factor_impl(a, true); }

// No row exchanges; throws on an exactly zero pivot. Used where the block
// factorization needs the pivot-free triangles.
inline LuFactors lu_factor_nopivot(const DenseMatrix& a) {
    return detail::lu_factor_impl(a, false);
}

inline std::vector<double> lu_solve(const LuFactors& f, std::span<const double> b) {
    const std::size_t n = f.l.rows();
    if (b.size() != n)
        throw std::invalid_argument("lu_solve: dimension mismatch");
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[f.perm[i]];
        for (std::size_t j = 0; j < i; ++j) s -= f.l(i, j) * y[j];
        y[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = y[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= f.u(i, j) * y[j];
        if (f.u(i, i) == 0.0) throw SingularMatrixError(i);
        y[i] = s / f.u(i, i);
    }
    return y;
}

// Singular values by one-sided Jacobi on the columns; returned descending.
// Chosen over normal equations so sigma_min keeps full relative accuracy.
inline std::vector<double> singular_values(const DenseMatrix& a) {
    DenseMatrix w = a.rows() >= a.cols() ? a : transpose(a);
    const std::size_t m = w.rows(), n = w.cols();
    const double tol = 1e-15;
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    app += w(i, p) * w(i, p);
                    aqq += w(i, q) * w(i, q);
                    apq += w(i, p) * w(i, q);
                }
                if (std::abs(apq) <= tol * std::sqrt(app * aqq)) continue;
                rotated = true;
                double tau = (aqq - app) / (2.0 * apq);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t), s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    double wp = w(i, p), wq = w(i, q);
                    w(i, p) = c * wp - s * wq;
                    w(i, q) = s * wp + c * wq;
                }
            }
        if (!rotated) break;
    }
    std::vector<double> sv(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += w(i, j) * w(i, j);
        sv[j] = std::sqrt(s);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

// sigma_max / sigma_min; +inf when sigma_min underflows to zero.
inline double condition_number_2(const DenseMatrix& a) {
    std::vector<double> sv = singular_values(a);
    double smin = sv.back(), smax = sv.front();
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return smax / smin;
}

struct SymmetricEigen {
    std::vector<double> values;  // ascending
    DenseMatrix vectors;         // column j pairs with values[j]
};

// Cyclic two-sided Jacobi for symmetric matrices.
inline SymmetricEigen symmetric_eigen(const DenseMatrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("symmetric_eigen: matrix must be square");
    const std::size_t n = a.rows();
    DenseMatrix b = a;
    DenseMatrix v = DenseMatrix::identity(n);
    const double tol = 1e-15;
    double scale = max_abs(a);
    if (scale == 0.0) scale = 1.0;
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(b(p, q)));
        if (off <= tol * scale) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(b(p, q)) <= 1e-300) continue;
                double theta = (b(q, q) - b(p, p)) / (2.0 * b(p, q));
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                double c = 1.0 / std::sqrt(1.0 + t * t), s = c * t;
                for (std::size_t i = 0; i < n; ++i) {
                    double bip = b(i, p), biq = b(i, q);
                    b(i, p) = c * bip - s * biq;
                    b(i, q) = s * bip + c * biq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    double bpj = b(p, j), bqj = b(q, j);
                    b(p, j) = c * bpj - s * bqj;
                    b(q, j) = s * bpj + c * bqj;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    double vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return b(x, x) < b(y, y); });
    SymmetricEigen e{std::vector<double>(n), DenseMatrix(n, n)};
    for (std::size_t j = 0; j < n; ++j) {
        e.values[j] = b(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) e.vectors(i, j) = v(i, order[j]);
    }
    return e;
}

}  // namespace bernvand

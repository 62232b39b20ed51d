#pragma once

// Combinatorial scalar kernels shared by the whole library: binomial and
// signed Stirling-number tables, factorials, and elementary symmetric
// functions of a node set.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace bernvand {

// Triangular table of binomial coefficients binom(i,j) for 0 <= j <= i <= max_n,
// built by Pascal's rule. Entries are exact doubles up to max_n = 56.
class BinomialTable {
public:
    explicit BinomialTable(int max_n) : max_n_(max_n) {
        if (max_n < 0 || max_n > 64)
            throw std::invalid_argument("BinomialTable: max_n must be in [0, 64]");
        rows_.resize(static_cast<std::size_t>(max_n) + 1);
        for (int i = 0; i <= max_n; ++i) {
            auto& row = rows_[static_cast<std::size_t>(i)];
            row.assign(static_cast<std::size_t>(i) + 1, 1.0);
            for (int j = 1; j < i; ++j)
                row[static_cast<std::size_t>(j)] =
                    rows_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
                    rows_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
        }
    }

    int max_n() const { return max_n_; }

    // binom(i,j), with the convention binom(i,j) = 0 for j < 0 or j > i.
    double operator()(int i, int j) const {
        if (j < 0 || j > i) return 0.0;
        if (i < 0 || i > max_n_)
            throw std::out_of_range("BinomialTable: row index exceeds table size");
        return rows_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

private:
    int max_n_;
    std::vector<std::vector<double>> rows_;
};

inline BinomialTable build_binomials(int max_n) { return BinomialTable(max_n); }

// Table of signed Stirling numbers of the first kind s(i,k), defined by
//   prod_{m=0}^{i-1} (y - m) = sum_k s(i,k) y^k,
// filled by s(i,k) = s(i-1,k-1) - (i-1) s(i-1,k). Stored in double precision;
// magnitudes reach ~1e19 at i = 21, so entries are not promised exact beyond
// i = 18 (relative accuracy stays at machine level).
class StirlingTable {
public:
    explicit StirlingTable(int max_n) : max_n_(max_n) {
        if (max_n < 0 || max_n > 32)
            throw std::invalid_argument("StirlingTable: max_n must be in [0, 32]");
        rows_.resize(static_cast<std::size_t>(max_n) + 1);
        rows_[0] = {1.0};
        for (int i = 1; i <= max_n; ++i) {
            auto& row = rows_[static_cast<std::size_t>(i)];
            row.assign(static_cast<std::size_t>(i) + 1, 0.0);
            const auto& prev = rows_[static_cast<std::size_t>(i - 1)];
            for (int k = 1; k <= i; ++k) {
                double lower = (k <= i - 1) ? prev[static_cast<std::size_t>(k)] : 0.0;
                row[static_cast<std::size_t>(k)] =
                    prev[static_cast<std::size_t>(k - 1)] - static_cast<double>(i - 1) * lower;
            }
        }
    }

    int max_n() const { return max_n_; }

    // s(i,k); zero outside 0 <= k <= i.
    double operator()(int i, int k) const {
        if (k < 0 || k > i) return 0.0;
        if (i < 0 || i > max_n_)
            throw std::out_of_range("StirlingTable: row index exceeds table size");
        return rows_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    }

private:
    int max_n_;
    std::vector<std::vector<double>> rows_;
};

inline StirlingTable build_stirling(int max_n) { return StirlingTable(max_n); }

// k! as a double; exact up to k = 18.
inline double factorial(int k) {
    if (k < 0 || k > 170)
        throw std::invalid_argument("factorial: argument out of range");
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= static_cast<double>(i);
    return f;
}

// sigma[k] is the k-th elementary symmetric function of the nodes;
// sigma.size() == nodes.size() + 1 and sigma[0] == 1.
struct SymmetricFunctionVector {
    std::vector<double> sigma;
};

// Elementary symmetric functions via incremental multiplication of the linear
// factors (x - x_i). All updates are additions of same-sign products for
// nodes in [0,1], so no cancellation occurs.
inline SymmetricFunctionVector elementary_symmetric(std::span<const double> nodes) {
    std::vector<double> sigma(nodes.size() + 1, 0.0);
    sigma[0] = 1.0;
    for (std::size_t m = 0; m < nodes.size(); ++m)
        for (std::size_t k = m + 1; k >= 1; --k)
            sigma[k] += nodes[m] * sigma[k - 1];
    return SymmetricFunctionVector{std::move(sigma)};
}

// x^k for integer k >= 0 with the 0^0 = 1 convention.
template <class Real>
Real ipow(Real x, int k) {
    Real r = 1;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

}  // namespace bernvand

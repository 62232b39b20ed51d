#pragma once

// Reproducible experiment drivers behind the CLI: conditioning growth,
// solver accuracy on equispaced and on randomly jittered nodes, and the
// multivariate block solver. Each run emits a CSV (also returned as a
// string) and is byte-identical for a fixed seed.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bernvand/conditioning.hpp"
#include "bernvand/polybases.hpp"
#include "bernvand/simplexnd.hpp"
#include "bernvand/structured.hpp"
#include "bernvand/vandermonde1d.hpp"

namespace bernvand {

enum class Experiment { Conditioning, Equispaced, RandomNodes, BlockLu };

struct ExperimentConfig {
    Experiment experiment = Experiment::Conditioning;
    int n_max = 20;
    std::uint64_t seed = 0;
    int trials = 1;
    std::string output_path;  // empty: return the CSV without writing
};

struct MethodErrors {
    double rel_err_2 = 0.0;   // ||chat - c||_2 / ||c||_2
    double rel_err_m = 0.0;   // same in the L2 function norm
    double residual_2 = 0.0;  // ||V chat - b||_2 / ||b||_2
};

struct SolveReport {
    int n = 0;
    MethodErrors bezout, dft, lu;
};

namespace detail {

inline std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

inline std::vector<double> random_coeffs(std::size_t count, std::uint64_t seed,
                                         std::uint64_t stream_key) {
    auto g = substream(seed, tag_coeffs, stream_key);
    std::vector<double> c(count);
    for (double& v : c) v = 2.0 * uniform01(g) - 1.0;
    return c;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

inline MethodErrors solve_errors(const DenseMatrix& v, const DenseMatrix& mass,
                                 std::span<const double> c, std::span<const double> b,
                                 std::span<const double> chat) {
    std::vector<double> diff(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) diff[i] = chat[i] - c[i];
    std::vector<double> res = matvec(v, chat);
    for (std::size_t i = 0; i < res.size(); ++i) res[i] -= b[i];
    std::vector<double> mdiff = matvec(mass, diff);
    std::vector<double> mc = matvec(mass, c);
    MethodErrors e;
    e.rel_err_2 = norm2(diff) / norm2(c);
    e.rel_err_m = std::sqrt(dot(diff, mdiff)) / std::sqrt(dot(c, mc));
    e.residual_2 = norm2(res) / norm2(b);
    return e;
}

inline void accumulate(MethodErrors& into, const MethodErrors& e) {
    into.rel_err_2 += e.rel_err_2;
    into.rel_err_m += e.rel_err_m;
    into.residual_2 += e.residual_2;
}

inline void scale(MethodErrors& e, double f) {
    e.rel_err_2 *= f;
    e.rel_err_m *= f;
    e.residual_2 *= f;
}

constexpr const char* newton_comment = "# newton: not implemented (external algorithm)\n";

}  // namespace detail

// One row of the univariate solver experiment: draw exact coefficients in
// [-1,1], form b = V c, recover by all three methods, average the errors
// over the trials. equispaced selects the combinatorial factored inverse;
// otherwise nodes are jittered per n and the general factorization is used.
inline SolveReport solve_report(int n, std::uint64_t seed, int trials, bool equispaced) {
    NodeSet nodes = equispaced ? equispaced_nodes(n) : random_stratified_nodes(n, seed);
    BernsteinVandermonde bv = build_vandermonde(nodes);
    MassMatrix mm = mass_matrix(n);
    DenseMatrix binv = inverse_via_bezout(bv);
    FactoredInverse finv = equispaced ? factored_inverse_equispaced(n) : factored_inverse(nodes);
    LuFactors lu = lu_factor(bv.v);
    SolveReport r;
    r.n = n;
    for (int t = 0; t < trials; ++t) {
        std::uint64_t key = (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(t);
        std::vector<double> c = detail::random_coeffs(nodes.size(), seed, key);
        std::vector<double> b = matvec(bv.v, c);
        detail::accumulate(r.bezout, detail::solve_errors(bv.v, mm.m, c, b, matvec(binv, b)));
        detail::accumulate(r.dft, detail::solve_errors(bv.v, mm.m, c, b, finv.apply(b)));
        detail::accumulate(r.lu, detail::solve_errors(bv.v, mm.m, c, b, lu_solve(lu, b)));
    }
    const double f = 1.0 / trials;
    detail::scale(r.bezout, f);
    detail::scale(r.dft, f);
    detail::scale(r.lu, f);
    return r;
}

struct BlockSolveReport {
    int n = 0;
    MethodErrors d2, d3;  // residual and error of the block solver in d = 2, 3
};

inline BlockSolveReport block_solve_report(int n, std::uint64_t seed, int trials) {
    BlockSolveReport r;
    r.n = n;
    for (int d = 2; d <= 3; ++d) {
        SimplexVandermonde sv = build_simplex_vandermonde(d, n, n);
        SimplexMass sm = simplex_mass_matrix(d, n);
        MethodErrors acc;
        for (int t = 0; t < trials; ++t) {
            std::uint64_t key = (static_cast<std::uint64_t>(n) << 32) |
                                (static_cast<std::uint64_t>(d) << 16) |
                                static_cast<std::uint64_t>(t);
            std::vector<double> c = detail::random_coeffs(sv.v.cols(), seed, key);
            std::vector<double> b = matvec(sv.v, c);
            std::vector<double> chat = block_lu_solve(d, n, b);
            detail::accumulate(acc, detail::solve_errors(sv.v, sm.m, c, b, chat));
        }
        detail::scale(acc, 1.0 / trials);
        (d == 2 ? r.d2 : r.d3) = acc;
    }
    return r;
}

inline std::string run_conditioning(const ExperimentConfig& cfg) {
    std::string csv = "n,k2LD,ub,k2V\n";
    for (int n = 1; n <= cfg.n_max; ++n) {
        ConditioningRow row = conditioning_row(equispaced_nodes(n));
        csv += std::to_string(n) + "," + detail::fmt17(row.kappa_m_to_2) + "," +
               detail::fmt17(row.bound) + "," + detail::fmt17(row.kappa_2) + "\n";
    }
    if (!cfg.output_path.empty()) detail::write_text_file(cfg.output_path, csv);
    return csv;
}

namespace detail {

inline std::string solver_csv(const ExperimentConfig& cfg, bool equispaced) {
    std::string csv = newton_comment;
    csv +=
        "n,BezoutL2err,DFTL2err,LUL2err,BezoutMerr,DFTMerr,LUMerr,Bezoutres,DFTres,LUres\n";
    for (int n = 1; n <= cfg.n_max; ++n) {
        SolveReport r = solve_report(n, cfg.seed, cfg.trials, equispaced);
        csv += std::to_string(n) + "," + fmt17(r.bezout.rel_err_2) + "," +
               fmt17(r.dft.rel_err_2) + "," + fmt17(r.lu.rel_err_2) + "," +
               fmt17(r.bezout.rel_err_m) + "," + fmt17(r.dft.rel_err_m) + "," +
               fmt17(r.lu.rel_err_m) + "," + fmt17(r.bezout.residual_2) + "," +
               fmt17(r.dft.residual_2) + "," + fmt17(r.lu.residual_2) + "\n";
    }
    if (!cfg.output_path.empty()) write_text_file(cfg.output_path, csv);
    return csv;
}

}  // namespace detail

inline std::string run_equispaced(const ExperimentConfig& cfg) {
    return detail::solver_csv(cfg, true);
}

inline std::string run_random_nodes(const ExperimentConfig& cfg) {
    return detail::solver_csv(cfg, false);
}

inline std::string run_block_lu(const ExperimentConfig& cfg) {
    std::string csv = "n,2dL2err,3dL2err,2dMerr,3dMerr,2dres,3dres\n";
    for (int n = 1; n <= cfg.n_max; ++n) {
        BlockSolveReport r = block_solve_report(n, cfg.seed, cfg.trials);
        csv += std::to_string(n) + "," + detail::fmt17(r.d2.rel_err_2) + "," +
               detail::fmt17(r.d3.rel_err_2) + "," + detail::fmt17(r.d2.rel_err_m) + "," +
               detail::fmt17(r.d3.rel_err_m) + "," + detail::fmt17(r.d2.residual_2) + "," +
               detail::fmt17(r.d3.residual_2) + "\n";
    }
    if (!cfg.output_path.empty()) detail::write_text_file(cfg.output_path, csv);
    return csv;
}

inline std::string run_experiment(const ExperimentConfig& cfg) {
    switch (cfg.experiment) {
        case Experiment::Conditioning: return run_conditioning(cfg);
        case Experiment::Equispaced: return run_equispaced(cfg);
        case Experiment::RandomNodes: return run_random_nodes(cfg);
        case Experiment::BlockLu: return run_block_lu(cfg);
    }
    throw std::logic_error("run_experiment: unknown experiment");
}

}  // namespace bernvand

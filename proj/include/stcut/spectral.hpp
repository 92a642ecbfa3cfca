#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <utility>
#include <vector>

#include "stcut/graph.hpp"

namespace stcut {

inline Eigen::MatrixXd laplacian(const WeightedGraph& g) {
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(g.n(), g.n());
    for (const auto& [e, w] : g.edges()) {
        const double x = static_cast<double>(w);
        l(e.u, e.u) += x;
        l(e.v, e.v) += x;
        l(e.u, e.v) -= x;
        l(e.v, e.u) -= x;
    }
    return l;
}

// Eigenbasis of a Laplacian split into range and kernel.
struct LaplacianSpectrum {
    Eigen::MatrixXd range_basis;  // columns: eigenvectors with non-zero eigenvalue
    Eigen::VectorXd range_values;
    int kernel_dim = 0;
};

inline LaplacianSpectrum laplacian_spectrum(const Eigen::MatrixXd& l, double tol = 1e-9) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l);
    const auto& vals = solver.eigenvalues();
    const double scale = std::max(1.0, vals.cwiseAbs().maxCoeff());
    std::vector<int> keep;
    for (int i = 0; i < vals.size(); ++i)
        if (vals(i) > tol * scale) keep.push_back(i);
    LaplacianSpectrum out;
    out.kernel_dim = static_cast<int>(vals.size()) - static_cast<int>(keep.size());
    out.range_basis.resize(l.rows(), static_cast<Eigen::Index>(keep.size()));
    out.range_values.resize(static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j) {
        out.range_basis.col(static_cast<Eigen::Index>(j)) = solver.eigenvectors().col(keep[j]);
        out.range_values(static_cast<Eigen::Index>(j)) = vals(keep[j]);
    }
    return out;
}

inline Eigen::MatrixXd pseudo_inverse(const LaplacianSpectrum& sp) {
    return sp.range_basis * sp.range_values.cwiseInverse().asDiagonal() * sp.range_basis.transpose();
}

struct ResistanceProfile {
    std::vector<Edge> edges;
    std::vector<double> weight;
    std::vector<double> resistance;  // chi_e^T L^+ chi_e
    int components = 0;

    double leverage(std::size_t i) const { return weight[i] * resistance[i]; }
    double forster_sum() const {
        double sum = 0;
        for (std::size_t i = 0; i < edges.size(); ++i) sum += leverage(i);
        return sum;
    }
    // n minus the number of connected components.
    int forster_target(int n) const { return n - components; }
};

inline ResistanceProfile resistance_profile(const WeightedGraph& g) {
    const auto sp = laplacian_spectrum(laplacian(g));
    const Eigen::MatrixXd lp = pseudo_inverse(sp);
    ResistanceProfile out;
    out.components = sp.kernel_dim;
    for (const auto& [e, w] : g.edges()) {
        out.edges.push_back(e);
        out.weight.push_back(static_cast<double>(w));
        out.resistance.push_back(lp(e.u, e.u) + lp(e.v, e.v) - 2 * lp(e.u, e.v));
    }
    return out;
}

/// Extreme eigenvalues of L_G^{+/2} L_H L_G^{+/2} on the range of L_G, with
/// L_H scaled by 1/h_scale. Returns {lo, hi}; lo = 0 if H loses a direction.
inline std::pair<double, double> relative_spectrum(const WeightedGraph& g, const WeightedGraph& h, double h_scale = 1.0) {
    const auto sp = laplacian_spectrum(laplacian(g));
    if (sp.range_values.size() == 0) return {1.0, 1.0};
    const Eigen::MatrixXd half = sp.range_values.cwiseSqrt().cwiseInverse().asDiagonal();
    const Eigen::MatrixXd lh = laplacian(h) / h_scale;
    const Eigen::MatrixXd m = half * sp.range_basis.transpose() * lh * sp.range_basis * half;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    // H must also vanish on the kernel of L_G; subgraphs always do.
    return {solver.eigenvalues().minCoeff(), solver.eigenvalues().maxCoeff()};
}

}  // namespace stcut

#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>

#include <Eigen/Core>

#include "localind/graph.hpp"
#include "localind/granger.hpp"

namespace localind {

class StabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// X_t = A X_{t-1} + ε_t with ε_t ~ N(0, noise_scale² I).
struct VarSystem {
    Eigen::MatrixXd coefficients;
    double noise_scale = 1.0;

    std::size_t num_nodes() const { return static_cast<std::size_t>(coefficients.rows()); }
};

struct SampledSystem {
    VarSystem system;
    std::size_t rejections = 0;
};

inline constexpr double kStabilityBound = 0.99;
inline constexpr std::size_t kMaxStabilityRejections = 10000;

/// Coefficients for present edges (self-loops included) ~ Uniform[-1, 1],
/// exact zeros redrawn; absent edges are 0. The whole matrix is redrawn until
/// its spectral radius is below 0.99. Throws StabilityError after 10000
/// consecutive rejections and std::invalid_argument for bidirected input.
SampledSystem sample_var_system(const DirectedMixedGraph& d, Rng& rng, double noise_scale = 1.0);

/// T recorded points after `burn_in` discarded steps; the chain starts at
/// X_1 = ε_1. Throws std::invalid_argument for T < 2.
Dataset simulate_var(const VarSystem& system, std::size_t time_points, Rng& rng, std::size_t burn_in = 100);

/// α→β iff A(β, α) ≠ 0, plus self-loops.
DirectedMixedGraph graph_from_matrix(const Eigen::MatrixXd& a);

/// Spectral radius from the growth of ‖A^(2^j)‖^(1/2^j) under repeated
/// squaring with renormalization. Throws std::invalid_argument for
/// non-square input.
double spectral_radius(const Eigen::MatrixXd& a);

/// Power-iteration estimate: the largest average growth rate of ‖A^k x‖ over
/// a long window, maximized over random restarts. Slower to converge than
/// spectral_radius; used as a cross-check.
double spectral_radius_power(const Eigen::MatrixXd& a, Rng& rng, std::size_t restarts = 4);

/// `n` on the first line, then n rows of space-separated coefficients.
void write_system(std::ostream& out, const VarSystem& system);
VarSystem read_system(std::istream& in);

} // namespace localind

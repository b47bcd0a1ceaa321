#include "localind/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <string>

namespace localind {

SampledSystem sample_var_system(const DirectedMixedGraph& d, Rng& rng, double noise_scale) {
    if (d.has_bidirected_edges()) throw std::invalid_argument("VAR systems are sampled from directed graphs only");
    if (!(noise_scale > 0.0)) throw std::invalid_argument("noise scale must be positive");
    const auto n = static_cast<Eigen::Index>(d.num_nodes());
    const auto edges = d.directed_edges();
    std::uniform_real_distribution<double> coef(-1.0, 1.0);

    SampledSystem out;
    out.system.noise_scale = noise_scale;
    while (true) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        for (auto [alpha, beta] : edges) {
            double v = 0.0;
            while (v == 0.0) v = coef(rng);
            a(static_cast<Eigen::Index>(beta), static_cast<Eigen::Index>(alpha)) = v;
        }
        if (spectral_radius(a) < kStabilityBound) {
            out.system.coefficients = std::move(a);
            return out;
        }
        if (++out.rejections >= kMaxStabilityRejections) {
            throw StabilityError("no stable VAR(1) system after " + std::to_string(kMaxStabilityRejections) +
                                 " consecutive draws");
        }
    }
}

Dataset simulate_var(const VarSystem& system, std::size_t time_points, Rng& rng, std::size_t burn_in) {
    if (time_points < 2) throw std::invalid_argument("simulation needs at least 2 time points");
    const Eigen::Index n = system.coefficients.rows();
    if (system.coefficients.cols() != n) throw std::invalid_argument("coefficient matrix must be square");
    std::normal_distribution<double> noise(0.0, system.noise_scale);
    auto draw = [&] {
        Eigen::VectorXd e(n);
        for (Eigen::Index i = 0; i < n; ++i) e(i) = noise(rng);
        return e;
    };

    Dataset data(static_cast<Eigen::Index>(time_points), n);
    Eigen::VectorXd x = draw();
    const std::size_t total = burn_in + time_points;
    for (std::size_t t = 0; t < total; ++t) {
        if (t > 0) x = system.coefficients * x + draw();
        if (t >= burn_in) data.row(static_cast<Eigen::Index>(t - burn_in)) = x.transpose();
    }
    return data;
}

DirectedMixedGraph graph_from_matrix(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("coefficient matrix must be square");
    DirectedMixedGraph g(static_cast<std::size_t>(a.rows()));
    for (Eigen::Index beta = 0; beta < a.rows(); ++beta) {
        for (Eigen::Index alpha = 0; alpha < a.cols(); ++alpha) {
            if (a(beta, alpha) != 0.0) g.add_edge(static_cast<NodeId>(alpha), static_cast<NodeId>(beta));
        }
    }
    return g;
}

double spectral_radius(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("spectral radius needs a square matrix");
    if (a.size() == 0) return 0.0;
    // m = A^(2^j) / exp(log_norm), kept at unit Frobenius norm.
    double norm = a.norm();
    if (norm == 0.0) return 0.0;
    Eigen::MatrixXd m = a / norm;
    double log_norm = std::log(norm);
    double estimate = norm;
    for (int j = 1; j <= 60; ++j) {
        Eigen::MatrixXd sq = m * m;
        const double s = sq.norm();
        if (s == 0.0 || !std::isfinite(s)) return s == 0.0 ? 0.0 : estimate;
        log_norm = 2.0 * log_norm + std::log(s);
        m = sq / s;
        estimate = std::exp(log_norm / std::ldexp(1.0, j));
    }
    return estimate;
}

double spectral_radius_power(const Eigen::MatrixXd& a, Rng& rng, std::size_t restarts) {
    if (a.rows() != a.cols()) throw std::invalid_argument("spectral radius needs a square matrix");
    if (a.size() == 0) return 0.0;
    constexpr int kBurn = 1000;
    constexpr int kWindow = 100000;
    std::normal_distribution<double> normal;
    double best = 0.0;
    for (std::size_t r = 0; r < std::max<std::size_t>(restarts, 1); ++r) {
        Eigen::VectorXd x(a.rows());
        for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = normal(rng);
        x.normalize();
        double log_growth = 0.0;
        bool vanished = false;
        for (int k = 0; k < kBurn + kWindow; ++k) {
            x = a * x;
            const double s = x.norm();
            if (s == 0.0) {
                vanished = true;
                break;
            }
            x /= s;
            if (k >= kBurn) log_growth += std::log(s);
        }
        if (!vanished) best = std::max(best, std::exp(log_growth / kWindow));
    }
    return best;
}

void write_system(std::ostream& out, const VarSystem& system) {
    const Eigen::Index n = system.coefficients.rows();
    out << n << '\n';
    char buf[40];
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", system.coefficients(i, j));
            out << (j > 0 ? " " : "") << buf;
        }
        out << '\n';
    }
}

VarSystem read_system(std::istream& in) {
    long long n = -1;
    if (!(in >> n) || n < 0) throw std::invalid_argument("system file must start with the node count");
    VarSystem system;
    system.coefficients.resize(n, n);
    for (long long i = 0; i < n; ++i) {
        for (long long j = 0; j < n; ++j) {
            if (!(in >> system.coefficients(i, j))) throw std::invalid_argument("system file has too few coefficients");
        }
    }
    return system;
}

} // namespace localind

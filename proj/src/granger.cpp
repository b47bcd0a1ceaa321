#include "localind/granger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/distributions/fisher_f.hpp>

namespace localind {

namespace {

constexpr double kRidge = 1e-8;

struct Fit {
    double rss = 0.0;
    bool degenerate = false;
};

Fit least_squares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
    Fit fit;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    Eigen::VectorXd coef;
    if (qr.rank() < x.cols()) {
        fit.degenerate = true;
        const Eigen::MatrixXd gram =
            x.transpose() * x + kRidge * Eigen::MatrixXd::Identity(x.cols(), x.cols());
        coef = gram.ldlt().solve(x.transpose() * y);
    } else {
        coef = qr.solve(y);
    }
    fit.rss = (y - x * coef).squaredNorm();
    return fit;
}

// Intercept column plus `lag` lagged copies of each listed coordinate, for
// the response rows t = lag..T-1 (0-based).
Eigen::MatrixXd design(const Dataset& data, const std::vector<NodeId>& columns, std::size_t lag) {
    const auto rows = static_cast<Eigen::Index>(data.rows()) - static_cast<Eigen::Index>(lag);
    Eigen::MatrixXd x(rows, 1 + static_cast<Eigen::Index>(columns.size() * lag));
    x.col(0).setOnes();
    Eigen::Index col = 1;
    for (NodeId v : columns) {
        for (std::size_t l = 1; l <= lag; ++l) {
            x.col(col++) = data.col(static_cast<Eigen::Index>(v)).segment(static_cast<Eigen::Index>(lag - l), rows);
        }
    }
    return x;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (char ch : line) {
        if (ch == '"') {
            quoted = !quoted;
        } else if (ch == ',' && !quoted) {
            fields.emplace_back();
        } else if (ch != '\r') {
            fields.back() += ch;
        }
    }
    return fields;
}

} // namespace

GrangerResult granger_f_test(const Dataset& data, NodeId alpha, NodeId beta, NodeSet c, std::size_t lag) {
    const auto n = static_cast<std::size_t>(data.cols());
    if (alpha >= n || beta >= n || !c.is_subset_of(NodeSet::full(n))) {
        throw std::invalid_argument("Granger test indices out of range");
    }
    if (lag == 0) throw std::invalid_argument("Granger test needs lag >= 1");
    if (c.contains(alpha)) return GrangerResult{};

    const std::vector<NodeId> restricted = c.members();
    std::vector<NodeId> unrestricted = restricted;
    unrestricted.push_back(alpha);

    const std::size_t time_points = static_cast<std::size_t>(data.rows());
    const std::size_t k_u = 1 + lag * unrestricted.size();
    if (time_points <= lag || time_points - lag <= k_u) {
        throw InsufficientDataError("Granger test needs more than " + std::to_string(k_u + lag) + " time points, got " +
                                    std::to_string(time_points));
    }
    const std::size_t df2 = time_points - lag - k_u;
    const auto rows = static_cast<Eigen::Index>(time_points - lag);
    const Eigen::VectorXd y = data.col(static_cast<Eigen::Index>(beta)).tail(rows);

    const Fit fit_r = least_squares(design(data, restricted, lag), y);
    const Fit fit_u = least_squares(design(data, unrestricted, lag), y);

    GrangerResult result;
    result.degenerate = fit_r.degenerate || fit_u.degenerate;
    const double gain = std::max(0.0, fit_r.rss - fit_u.rss);
    if (!(fit_u.rss > 0.0) || !std::isfinite(fit_u.rss)) {
        result.degenerate = true;
        result.f_statistic = gain > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        result.p_value = gain > 0.0 ? 0.0 : 1.0;
        return result;
    }
    result.f_statistic = (gain / static_cast<double>(lag)) / (fit_u.rss / static_cast<double>(df2));
    const boost::math::fisher_f_distribution<double> dist(static_cast<double>(lag), static_cast<double>(df2));
    result.p_value = boost::math::cdf(boost::math::complement(dist, result.f_statistic));
    return result;
}

GrangerTest::GrangerTest(Dataset data, std::size_t lag) : data_(std::move(data)), lag_(lag) {
    if (lag_ == 0) throw std::invalid_argument("lag must be at least 1");
    if (data_.cols() == 0 || data_.cols() > static_cast<Eigen::Index>(NodeSet::kMaxNodes)) {
        throw std::invalid_argument("dataset must have between 1 and 64 columns");
    }
}

GrangerResult GrangerTest::test(NodeId alpha, NodeId beta, NodeSet c) const {
    const auto key = std::make_tuple(alpha, beta, c.bits());
    {
        std::lock_guard lock(mutex_);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    const GrangerResult result = granger_f_test(data_, alpha, beta, c, lag_);
    std::lock_guard lock(mutex_);
    cache_.emplace(key, result);
    return result;
}

std::size_t GrangerTest::cached_tests() const {
    std::lock_guard lock(mutex_);
    return cache_.size();
}

EmpiricalModel::EmpiricalModel(std::shared_ptr<const GrangerTest> test, double significance)
    : IndependenceModel(test ? test->num_nodes() : 0), test_(std::move(test)), significance_(significance) {
    if (!test_) throw std::invalid_argument("EmpiricalModel needs a Granger test");
    if (!(significance > 0.0 && significance < 1.0)) throw std::invalid_argument("significance level must lie in (0, 1)");
}

EmpiricalModel::Outcome EmpiricalModel::granger_query(NodeId alpha, NodeId beta, NodeSet c) const {
    check_triple(NodeSet::single(alpha), NodeSet::single(beta), c);
    Outcome outcome;
    outcome.result = test_->test(alpha, beta, c);
    outcome.independent = outcome.result.p_value > significance_;
    std::lock_guard lock(log_mutex_);
    log_.emplace(std::make_tuple(alpha, beta, c.bits()), outcome);
    return outcome;
}

bool EmpiricalModel::evaluate(NodeSet a, NodeSet b, NodeSet c) const {
    for (NodeId alpha : a - c) {
        for (NodeId beta : b) {
            if (!granger_query(alpha, beta, c).independent) return false;
        }
    }
    return true;
}

bool EmpiricalModel::any_degenerate() const {
    std::lock_guard lock(log_mutex_);
    for (const auto& [key, outcome] : log_) {
        if (outcome.result.degenerate) return true;
    }
    return false;
}

void EmpiricalModel::write_cache_csv(std::ostream& out) const {
    std::lock_guard lock(log_mutex_);
    // Map order is by mask; the documented order is by the sorted member list.
    std::vector<std::pair<std::tuple<NodeId, NodeId, NodeSet>, Outcome>> rows;
    for (const auto& [key, outcome] : log_) {
        rows.push_back({{std::get<0>(key), std::get<1>(key), NodeSet(std::get<2>(key))}, outcome});
    }
    std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
        const auto& [a1, b1, c1] = x.first;
        const auto& [a2, b2, c2] = y.first;
        if (a1 != a2) return a1 < a2;
        if (b1 != b2) return b1 < b2;
        return c1.members() < c2.members();
    });
    out << "alpha,beta,C,p,decision,flag\n";
    for (const auto& [key, outcome] : rows) {
        const auto& [alpha, beta, c] = key;
        out << alpha << ',' << beta << ",\"" << to_string(c) << "\"," << format_double(outcome.result.p_value) << ','
            << (outcome.independent ? "independent" : "dependent") << ','
            << (outcome.result.degenerate ? "degenerate" : "ok") << '\n';
    }
}

std::unique_ptr<ExplicitModel> read_cache_as_model(std::istream& in, std::size_t n) {
    std::vector<IndependenceTriple> triples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (line_no == 1 && !fields.empty() && fields[0] == "alpha") continue;
        if (fields.size() < 5) throw std::invalid_argument("cache line " + std::to_string(line_no) + ": too few fields");
        const NodeSet alpha = parse_node_set(fields[0]);
        const NodeSet beta = parse_node_set(fields[1]);
        if (alpha.size() != 1 || beta.size() != 1) {
            throw std::invalid_argument("cache line " + std::to_string(line_no) + ": alpha and beta must be single nodes");
        }
        if (fields[4] == "independent") {
            triples.push_back({alpha, beta, parse_node_set(fields[2])});
        } else if (fields[4] != "dependent") {
            throw std::invalid_argument("cache line " + std::to_string(line_no) + ": unknown decision '" + fields[4] + "'");
        }
    }
    // Singleton triples have no proper nonempty parts, so decomposition holds vacuously.
    return std::make_unique<ExplicitModel>(n, std::move(triples), true);
}

std::unique_ptr<ExplicitModel> load_cache_as_model(const std::string& path, std::size_t n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open cache file " + path);
    return read_cache_as_model(in, n);
}

void write_dataset(std::ostream& out, const Dataset& data) {
    for (Eigen::Index t = 0; t < data.rows(); ++t) {
        for (Eigen::Index j = 0; j < data.cols(); ++j) {
            if (j > 0) out << ',';
            out << format_double(data(t, j));
        }
        out << '\n';
    }
}

Dataset read_dataset(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        for (const auto& field : split_csv_line(line)) {
            std::size_t used = 0;
            double value = 0.0;
            try {
                value = std::stod(field, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0) throw std::invalid_argument("dataset row " + std::to_string(rows.size() + 1) + ": bad number '" + field + "'");
            row.push_back(value);
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw std::invalid_argument("dataset row " + std::to_string(rows.size() + 1) + " has a different column count");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("dataset is empty");
    Dataset data(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t t = 0; t < rows.size(); ++t) {
        for (std::size_t j = 0; j < rows[t].size(); ++j) data(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) = rows[t][j];
    }
    return data;
}

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset " + path);
    return read_dataset(in);
}

} // namespace localind

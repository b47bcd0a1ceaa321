#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include <Eigen/Core>

#include "localind/independence.hpp"
#include "localind/node_set.hpp"

namespace localind {

/// Rows are time points, columns are coordinate processes.
using Dataset = Eigen::MatrixXd;

class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GrangerResult {
    double p_value = 1.0;
    double f_statistic = 0.0;
    /// The unrestricted design was rank deficient and a ridge fit (1e-8) was used.
    bool degenerate = false;
};

/// Conditional Granger F-test of "X^β is Granger-noncausal for X^α given X^C".
///
/// Regresses X_t^β on an intercept plus `lag` lagged values of every
/// coordinate in C (restricted) and of C ∪ {α} (unrestricted), over
/// t = lag+1..T, and compares the residual sums of squares with an
/// F(lag, T - lag - k_u) reference, k_u counting the unrestricted regressors
/// including the intercept. Returns p = 1 when α ∈ C. Throws
/// InsufficientDataError when T - lag <= k_u.
GrangerResult granger_f_test(const Dataset& data, NodeId alpha, NodeId beta, NodeSet c, std::size_t lag = 1);

/// Dataset plus a memo of Granger F-tests; shared by all empirical models
/// built on the same data so thresholds can be swept without refitting.
class GrangerTest {
public:
    explicit GrangerTest(Dataset data, std::size_t lag = 1);

    const Dataset& data() const { return data_; }
    std::size_t num_nodes() const { return static_cast<std::size_t>(data_.cols()); }
    std::size_t lag() const { return lag_; }

    GrangerResult test(NodeId alpha, NodeId beta, NodeSet c) const;
    std::size_t cached_tests() const;

private:
    Dataset data_;
    std::size_t lag_;
    mutable std::mutex mutex_;
    mutable std::map<std::tuple<NodeId, NodeId, std::uint64_t>, GrangerResult> cache_;
};

/// Independence model answered by Granger tests at a significance level:
/// independent iff p > level. Composite queries are the conjunction of the
/// singleton tests over α ∈ A∖C, β ∈ B.
class EmpiricalModel final : public IndependenceModel {
public:
    EmpiricalModel(std::shared_ptr<const GrangerTest> test, double significance);

    struct Outcome {
        GrangerResult result;
        bool independent = true;
    };

    double significance() const { return significance_; }
    const GrangerTest& granger() const { return *test_; }

    /// Singleton query with the p-value; logged like any other query.
    Outcome granger_query(NodeId alpha, NodeId beta, NodeSet c) const;

    /// True if any logged test fell back to the ridge fit.
    bool any_degenerate() const;

    /// Logged singleton tests as CSV `alpha,beta,C,p,decision,flag`, sorted by
    /// (alpha, beta, C). C is quoted and comma-joined; flag is `ok` or
    /// `degenerate`.
    void write_cache_csv(std::ostream& out) const;

    bool is_decomposition_closed() const override { return true; }

protected:
    bool evaluate(NodeSet a, NodeSet b, NodeSet c) const override;

private:
    std::shared_ptr<const GrangerTest> test_;
    double significance_;
    mutable std::mutex log_mutex_;
    mutable std::map<std::tuple<NodeId, NodeId, std::uint64_t>, Outcome> log_;
};

/// Reads a cache written by EmpiricalModel::write_cache_csv back as an
/// explicit model holding the singleton triples decided independent.
std::unique_ptr<ExplicitModel> read_cache_as_model(std::istream& in, std::size_t n);
std::unique_ptr<ExplicitModel> load_cache_as_model(const std::string& path, std::size_t n);

/// Headerless CSV, one row per time point, 17 significant digits.
void write_dataset(std::ostream& out, const Dataset& data);
Dataset read_dataset(std::istream& in);
Dataset load_dataset(const std::string& path);

} // namespace localind

#include <doctest.h>

#include <Eigen/Dense>
#include <boost/math/special_functions/beta.hpp>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "localind/granger.hpp"
#include "localind/simulate.hpp"

using namespace localind;

namespace {

Dataset noise(std::size_t t, std::size_t n, Rng& rng) {
    std::normal_distribution<double> z;
    Dataset x(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = z(rng);
    }
    return x;
}

// Residual sum of squares from the normal equations.
double rss(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
    const Eigen::VectorXd coef = (x.transpose() * x).ldlt().solve(x.transpose() * y);
    return (y - x * coef).squaredNorm();
}

} // namespace

TEST_SUITE("granger") {
    TEST_CASE("F statistic and p-value match a direct computation") {
        Rng rng(21);
        const Dataset x = noise(80, 3, rng);
        const Eigen::Index rows = 79;
        const Eigen::VectorXd y = x.col(2).tail(rows);
        Eigen::MatrixXd restricted(rows, 2);
        restricted.col(0).setOnes();
        restricted.col(1) = x.col(1).head(rows);
        Eigen::MatrixXd full(rows, 3);
        full << restricted, x.col(0).head(rows);
        const double rss_r = rss(restricted, y);
        const double rss_u = rss(full, y);
        const double df2 = 79.0 - 3.0;
        const double f = (rss_r - rss_u) / (rss_u / df2);
        const double p = boost::math::ibeta(df2 / 2.0, 0.5, df2 / (df2 + f));

        const auto result = granger_f_test(x, 0, 2, {1});
        CHECK(result.f_statistic == doctest::Approx(f).epsilon(1e-9));
        CHECK(result.p_value == doctest::Approx(p).epsilon(1e-9));
        CHECK_FALSE(result.degenerate);
    }

    TEST_CASE("alpha in the conditioning set is independent by rule") {
        Rng rng(1);
        const auto r = granger_f_test(noise(50, 3, rng), 0, 1, {0, 2});
        CHECK(r.p_value == 1.0);
        CHECK_FALSE(r.degenerate);
    }

    TEST_CASE("too few time points") {
        Rng rng(1);
        CHECK_THROWS_AS(granger_f_test(noise(4, 3, rng), 0, 1, {2}), InsufficientDataError);
        CHECK_NOTHROW(granger_f_test(noise(6, 3, rng), 0, 1, {2}));
        CHECK_THROWS(granger_f_test(noise(10, 2, rng), 0, 2, {}));
    }

    TEST_CASE("constant column is flagged degenerate") {
        Rng rng(3);
        Dataset x = noise(60, 3, rng);
        x.col(1).setConstant(2.0);
        CHECK(granger_f_test(x, 1, 0, {}).degenerate);
    }

    TEST_CASE("strong dependence is detected") {
        const auto g = fixture::running_example();
        Rng rng(17);
        std::size_t rejections = 0;
        const int reps = 200;
        for (int r = 0; r < reps; ++r) {
            auto system = sample_var_system(g, rng).system;
            system.coefficients(1, 0) = 0.9;
            if (spectral_radius(system.coefficients) >= 0.99) system.coefficients(1, 1) = 0.0;
            const Dataset x = simulate_var(system, 100, rng);
            if (granger_f_test(x, 0, 1, {1, 2, 3}).p_value <= 0.05) ++rejections;
        }
        CHECK(rejections > reps * 0.8);
    }

    TEST_CASE("empirical model caches and logs") {
        Rng rng(5);
        auto test = std::make_shared<GrangerTest>(noise(100, 3, rng));
        const EmpiricalModel model(test, 0.05);
        model.independent({0, 1}, {2}, {});
        CHECK(test->cached_tests() == 2);
        model.independent({0}, {2}, {});
        CHECK(test->cached_tests() == 2);
        CHECK_THROWS(EmpiricalModel(test, 0.0));

        std::stringstream csv;
        model.write_cache_csv(csv);
        const std::string text = csv.str();
        CHECK(text.rfind("alpha,beta,C,p,decision,flag\n", 0) == 0);
        const auto back = read_cache_as_model(csv, 3);
        CHECK(back->independent({0}, {2}, {}) == model.independent({0}, {2}, {}));
        CHECK(back->independent({1}, {2}, {}) == model.independent({1}, {2}, {}));
    }

    TEST_CASE("dataset round trip keeps full precision") {
        Rng rng(9);
        const Dataset x = noise(5, 2, rng);
        std::stringstream s;
        write_dataset(s, x);
        CHECK(read_dataset(s) == x);
        std::istringstream bad("1,2\n3\n");
        CHECK_THROWS(read_dataset(bad));
    }
}

#include "localind/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "localind/granger.hpp"
#include "localind/independence.hpp"
#include "localind/simulate.hpp"

namespace localind {

namespace {

std::string format_threshold(double t) {
    if (std::isnan(t)) return "oracle";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", t);
    return buf;
}

std::string format_mean(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string csv_text(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += (ch == '\n' || ch == '\r') ? ' ' : ch;
    }
    return out + "\"";
}

bool same_threshold(double x, double y) { return (std::isnan(x) && std::isnan(y)) || x == y; }

std::size_t clamp_bound(std::optional<std::size_t> bound, std::size_t n) {
    const std::size_t top = n == 0 ? 0 : n - 1;
    return bound ? std::min(*bound, top) : top;
}

struct Instance {
    std::size_t n = 0;
    std::size_t repetition = 0;
    std::size_t u = 0;
};

// One repetition: returns its records in (threshold, algorithm) order.
std::vector<ExperimentRecord> run_repetition(const ExperimentConfig& config, const Instance& inst, bool partial) {
    // Same stream in both modes, so partial observation with u_max = 0 replays run_comparison.
    std::seed_seq seq{static_cast<std::uint64_t>(config.seed + inst.repetition), static_cast<std::uint64_t>(inst.n)};
    Rng rng(seq);

    const std::vector<double> thresholds =
        config.oracle ? std::vector<double>{std::numeric_limits<double>::quiet_NaN()} : config.thresholds;
    std::vector<ExperimentRecord> records;
    for (double threshold : thresholds) {
        for (Algorithm algorithm : config.algorithms) {
            ExperimentRecord r;
            r.repetition = inst.repetition;
            r.n = inst.n;
            r.algorithm = algorithm;
            r.threshold = threshold;
            records.push_back(r);
        }
    }
    auto fail_all = [&](const std::string& why) {
        for (auto& r : records) {
            r.failed = true;
            r.failure = why;
        }
        return records;
    };

    try {
        std::size_t u = 0;
        if (partial && config.u_max.value_or(inst.n) > 0) {
            std::uniform_int_distribution<std::size_t> hidden(0, config.u_max.value_or(inst.n));
            u = hidden(rng);
        }
        const std::size_t total = inst.n + u;
        const DirectedMixedGraph truth_full = sample_graph(total, rng);
        const NodeSet observed = NodeSet::full(inst.n);
        const DirectedMixedGraph target =
            partial ? latent_projection(truth_full, observed).graph.directed_part() : truth_full;
        for (auto& r : records) {
            r.u = u;
            r.true_edges = target.num_proper_edges();
        }

        std::shared_ptr<const GrangerTest> granger;
        if (!config.oracle) {
            const SampledSystem sampled = sample_var_system(truth_full, rng, config.noise_scale);
            Dataset data = simulate_var(sampled.system, config.time_points, rng, config.burn_in);
            if (partial) data = Dataset(data.leftCols(static_cast<Eigen::Index>(inst.n)));
            granger = std::make_shared<GrangerTest>(std::move(data), config.lag);
        }

        for (auto& r : records) {
            // A fresh model per run so tests_used counts this algorithm's queries only;
            // Granger fits are shared through the test memo.
            std::unique_ptr<IndependenceModel> model;
            std::shared_ptr<const IndependenceModel> restricted;
            const EmpiricalModel* empirical = nullptr;
            if (config.oracle) {
                restricted = restrict_to_observed(std::make_shared<GraphOracleModel>(truth_full), observed);
            } else {
                auto em = std::make_unique<EmpiricalModel>(granger, r.threshold);
                empirical = em.get();
                model = std::move(em);
            }
            const IndependenceModel& m = config.oracle ? *restricted : *model;

            std::optional<std::size_t> parameter;
            if (r.algorithm == Algorithm::dsgs) parameter = clamp_bound(config.dsgs_k, inst.n);
            if (r.algorithm == Algorithm::ca) parameter = clamp_bound(config.ca_max_level, inst.n);

            try {
                const auto start = std::chrono::steady_clock::now();
                const LearnResult result = learn(r.algorithm, m, parameter);
                r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                const EdgeComparison cmp = compare_edges(target, result.graph);
                r.surplus = cmp.surplus;
                r.missing = cmp.missing;
                r.difference = cmp.difference;
                r.tests_used = result.tests_used;
                if (empirical && empirical->any_degenerate()) {
                    r.failed = true;
                    r.failure = "degenerate regression";
                }
            } catch (const std::exception& e) {
                r.failed = true;
                r.failure = e.what();
            }
        }
    } catch (const std::exception& e) {
        return fail_all(e.what());
    }
    return records;
}

ExperimentResult run_batch(const ExperimentConfig& config, bool partial) {
    config.validate();
    std::vector<Instance> instances;
    for (std::size_t n : config.n_values) {
        for (std::size_t rep = 0; rep < config.repetitions; ++rep) instances.push_back({n, rep, 0});
    }
    std::vector<std::vector<ExperimentRecord>> per_instance(instances.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < instances.size(); i = next++) {
            per_instance[i] = run_repetition(config, instances[i], partial);
        }
    };
    const std::size_t threads = std::min(config.threads, instances.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    ExperimentResult result;
    result.partial_observation = partial;
    for (auto& recs : per_instance) {
        for (auto& r : recs) result.records.push_back(std::move(r));
    }
    if (partial && config.oracle) {
        for (const auto& r : result.records) {
            if (r.algorithm == Algorithm::cs && !r.failed) result.latent_cs_violations += r.missing;
        }
    }
    result.summary = summarize(result.records);
    return result;
}

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace

void ExperimentConfig::validate() const {
    if (n_values.empty()) throw std::invalid_argument("at least one n is required");
    for (std::size_t n : n_values) {
        if (n < 1 || n > 16) throw std::invalid_argument("n must lie in 1..16");
    }
    if (repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
    if (time_points < 2) throw std::invalid_argument("time points must be at least 2");
    if (!oracle && thresholds.empty()) throw std::invalid_argument("at least one threshold is required");
    for (double t : thresholds) {
        if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("thresholds must lie in (0, 1)");
    }
    if (algorithms.empty()) throw std::invalid_argument("at least one algorithm is required");
    if (lag < 1) throw std::invalid_argument("lag must be at least 1");
    if (threads < 1) throw std::invalid_argument("threads must be at least 1");
    if (!(noise_scale > 0.0)) throw std::invalid_argument("noise scale must be positive");
    for (std::size_t n : n_values) {
        if (n + u_max.value_or(n) > NodeSet::kMaxNodes) throw std::invalid_argument("n + u_max exceeds 64 nodes");
    }
}

EdgeComparison compare_edges(const DirectedMixedGraph& truth, const DirectedMixedGraph& output) {
    if (truth.num_nodes() != output.num_nodes()) throw std::invalid_argument("compare_edges: node counts differ");
    EdgeComparison out;
    for (NodeId beta = 0; beta < truth.num_nodes(); ++beta) {
        const NodeSet self = NodeSet::single(beta);
        const NodeSet t = truth.parents(beta) - self;
        const NodeSet o = output.parents(beta) - self;
        out.surplus += (o - t).size();
        out.missing += (t - o).size();
    }
    out.difference = out.surplus + out.missing;
    return out;
}

ExperimentResult run_comparison(const ExperimentConfig& config) { return run_batch(config, false); }

ExperimentResult run_partial_observation(const ExperimentConfig& config) { return run_batch(config, true); }

std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records) {
    std::vector<SummaryRow> rows;
    std::vector<std::array<double, 4>> sums;
    for (const auto& r : records) {
        auto it = std::find_if(rows.begin(), rows.end(), [&](const SummaryRow& s) {
            return s.algorithm == r.algorithm && s.n == r.n && same_threshold(s.threshold, r.threshold);
        });
        if (it == rows.end()) {
            SummaryRow s;
            s.algorithm = r.algorithm;
            s.threshold = r.threshold;
            s.n = r.n;
            rows.push_back(s);
            sums.push_back({0, 0, 0, 0});
            it = rows.end() - 1;
        }
        auto& sum = sums[static_cast<std::size_t>(it - rows.begin())];
        ++it->repetitions;
        if (r.failed) {
            ++it->failed;
            continue;
        }
        sum[0] += static_cast<double>(r.surplus);
        sum[1] += static_cast<double>(r.missing);
        sum[2] += static_cast<double>(r.difference);
        sum[3] += static_cast<double>(r.tests_used);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double ok = static_cast<double>(rows[i].repetitions - rows[i].failed);
        const double nan = std::numeric_limits<double>::quiet_NaN();
        rows[i].mean_surplus = ok > 0 ? sums[i][0] / ok : nan;
        rows[i].mean_missing = ok > 0 ? sums[i][1] / ok : nan;
        rows[i].mean_difference = ok > 0 ? sums[i][2] / ok : nan;
        rows[i].mean_tests = ok > 0 ? sums[i][3] / ok : nan;
    }
    return rows;
}

std::size_t dsgs_query_bound(std::size_t n, std::size_t k) {
    if (n == 0) return 0;
    std::size_t total = 0;
    for (std::size_t i = 0; i <= std::min(k, n - 1); ++i) total += binomial(n - 1, i);
    return n * (n - 1) * total;
}

std::vector<TestCountRow> report_test_counts(const std::vector<ExperimentRecord>& records,
                                             std::optional<std::size_t> dsgs_k) {
    std::vector<TestCountRow> rows;
    std::vector<std::vector<std::size_t>> counts;
    for (const auto& r : records) {
        if (r.failed) continue;
        auto it = std::find_if(rows.begin(), rows.end(),
                               [&](const TestCountRow& t) { return t.algorithm == r.algorithm && t.n == r.n; });
        if (it == rows.end()) {
            TestCountRow t;
            t.algorithm = r.algorithm;
            t.n = r.n;
            rows.push_back(t);
            counts.emplace_back();
            it = rows.end() - 1;
        }
        counts[static_cast<std::size_t>(it - rows.begin())].push_back(r.tests_used);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto& c = counts[i];
        std::sort(c.begin(), c.end());
        TestCountRow& row = rows[i];
        row.min = c.front();
        row.max = c.back();
        row.median = c[(c.size() - 1) / 2];
        const std::size_t n = row.n;
        switch (row.algorithm) {
        case Algorithm::cm:
            row.expected = n * (n - 1);
            row.expectation_met = row.min == *row.expected && row.max == *row.expected;
            break;
        case Algorithm::dsgs:
            row.expected = dsgs_query_bound(n, clamp_bound(dsgs_k, n));
            row.expectation_met = row.max <= *row.expected;
            break;
        case Algorithm::ca:
            if (n == 5) row.reference_range = std::pair<std::size_t, std::size_t>{20, 142};
            if (n == 7) row.reference_range = std::pair<std::size_t, std::size_t>{45, 621};
            if (n == 9) row.reference_range = std::pair<std::size_t, std::size_t>{79, 1509};
            break;
        case Algorithm::cs:
            break;
        }
    }
    return rows;
}

void write_records_csv(std::ostream& out, const ExperimentResult& result, bool include_timing) {
    out << "repetition,n," << (result.partial_observation ? "u," : "")
        << "algorithm,threshold,surplus,missing,difference,tests_used,true_edges,failed,failure"
        << (include_timing ? ",seconds" : "") << '\n';
    for (const auto& r : result.records) {
        out << r.repetition << ',' << r.n << ',';
        if (result.partial_observation) out << r.u << ',';
        out << to_string(r.algorithm) << ',' << format_threshold(r.threshold) << ',' << r.surplus << ',' << r.missing << ','
            << r.difference << ',' << r.tests_used << ',' << r.true_edges << ',' << (r.failed ? 1 : 0) << ','
            << (r.failure.empty() ? "" : csv_text(r.failure));
        if (include_timing) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6f", r.seconds);
            out << ',' << buf;
        }
        out << '\n';
    }
}

void write_summary_csv(std::ostream& out, const ExperimentResult& result) {
    out << "algorithm,threshold,n,repetitions,failed,mean_surplus,mean_missing,mean_difference,mean_tests\n";
    for (const auto& s : result.summary) {
        out << to_string(s.algorithm) << ',' << format_threshold(s.threshold) << ',' << s.n << ',' << s.repetitions << ','
            << s.failed << ',' << format_mean(s.mean_surplus) << ',' << format_mean(s.mean_missing) << ','
            << format_mean(s.mean_difference) << ',' << format_mean(s.mean_tests) << '\n';
    }
}

void write_test_counts_csv(std::ostream& out, const std::vector<TestCountRow>& rows) {
    out << "algorithm,n,min,median,max,expected,expectation_met,reference_min,reference_max\n";
    for (const auto& r : rows) {
        out << to_string(r.algorithm) << ',' << r.n << ',' << r.min << ',' << r.median << ',' << r.max << ',';
        if (r.expected) out << *r.expected;
        out << ',' << (r.expected ? (r.expectation_met ? "yes" : "no") : "") << ',';
        if (r.reference_range) out << r.reference_range->first << ',' << r.reference_range->second;
        else out << ',';
        out << '\n';
    }
}

void write_meta(std::ostream& out, const ExperimentConfig& config, const ExperimentResult& result) {
    auto join = [](const auto& values, auto fmt) {
        std::string s;
        for (const auto& v : values) s += (s.empty() ? "" : ",") + fmt(v);
        return s;
    };
    std::size_t failed = 0;
    for (const auto& r : result.records) failed += r.failed ? 1 : 0;

    out << "version=" << kVersion << '\n';
    out << "experiment=" << (result.partial_observation ? "partial" : "run") << '\n';
    if (result.partial_observation) out << "target=latent-projection-directed\n";
    out << "n=" << join(config.n_values, [](std::size_t v) { return std::to_string(v); }) << '\n';
    out << "m=" << config.repetitions << '\n';
    out << "t=" << config.time_points << '\n';
    out << "thresholds=" << (config.oracle ? "oracle" : join(config.thresholds, format_threshold)) << '\n';
    out << "algorithms=" << join(config.algorithms, [](Algorithm a) { return to_string(a); }) << '\n';
    out << "seed=" << config.seed << '\n';
    out << "oracle=" << (config.oracle ? "true" : "false") << '\n';
    out << "dsgs_k=" << (config.dsgs_k ? std::to_string(*config.dsgs_k) : "n-1") << '\n';
    out << "ca_max_level=" << (config.ca_max_level ? std::to_string(*config.ca_max_level) : "n-1") << '\n';
    out << "lag=" << config.lag << '\n';
    out << "burn_in=" << config.burn_in << '\n';
    out << "noise_scale=" << format_threshold(config.noise_scale) << '\n';
    if (result.partial_observation) out << "u_max=" << (config.u_max ? std::to_string(*config.u_max) : "n") << '\n';
    out << "metrics=directed edges without self-loops\n";
    out << "records=" << result.records.size() << '\n';
    out << "failed_records=" << failed << '\n';
    if (result.partial_observation && config.oracle) out << "latent_cs_violations=" << result.latent_cs_violations << '\n';
}

void write_experiment(const std::string& dir, const ExperimentConfig& config, const ExperimentResult& result) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto open = [&](const char* name) {
        std::ofstream out(fs::path(dir) / name);
        if (!out) throw std::runtime_error("cannot write " + (fs::path(dir) / name).string());
        return out;
    };
    {
        auto out = open("records.csv");
        write_records_csv(out, result, config.record_timing);
    }
    {
        auto out = open("summary.csv");
        write_summary_csv(out, result);
    }
    {
        auto out = open("test_counts.csv");
        write_test_counts_csv(out, report_test_counts(result.records, config.dsgs_k));
    }
    {
        auto out = open("meta.txt");
        write_meta(out, config, result);
    }
}

} // namespace localind

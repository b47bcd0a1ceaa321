// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fixtures.hpp"
#include "localind/experiments.hpp"
#include "localind/faithfulness.hpp"
#include "localind/granger.hpp"
#include "localind/learn.hpp"
#include "localind/separation.hpp"
#include "localind/simulate.hpp"
#include "oracles.hpp"

using namespace localind;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances and sizes.
constexpr double kSeparationBudgetSeconds = 60.0;
constexpr std::size_t kRandomSeparationInstances = 500;
constexpr std::size_t kRandomModelPairs = 300;
constexpr std::size_t kRandomOracleGraphs = 200;
constexpr std::size_t kDetectableModels = 20;
constexpr std::size_t kCalibrationReps = 2000;
constexpr double kCalibrationLevel = 0.05;
constexpr double kCalibrationTolerance = 0.02;
constexpr double kDifferenceBand = 1.5;
constexpr std::size_t kPartialPairs = 200;

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Settings {
    std::string cli;
    std::string workdir = "acceptance_work";
    std::size_t threads = 0;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Every directed mixed graph on n nodes.
std::vector<DirectedMixedGraph> all_mixed_graphs(std::size_t n) {
    std::vector<DirectedEdge> slots;
    std::vector<DirectedEdge> bi_slots;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = 0; v < n; ++v) {
            if (u != v) slots.push_back({u, v});
            if (u < v) bi_slots.push_back({u, v});
        }
    }
    const std::size_t bits = slots.size() + bi_slots.size();
    std::vector<DirectedMixedGraph> out;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
        DirectedMixedGraph g(n);
        for (std::size_t i = 0; i < slots.size(); ++i) {
            if ((code >> i) & 1U) g.add_edge(slots[i].first, slots[i].second);
        }
        for (std::size_t i = 0; i < bi_slots.size(); ++i) {
            if ((code >> (slots.size() + i)) & 1U) g.add_bidirected(bi_slots[i].first, bi_slots[i].second);
        }
        out.push_back(g);
    }
    return out;
}

std::vector<DirectedMixedGraph> all_directed_graphs(std::size_t n) {
    std::vector<DirectedMixedGraph> out;
    for (std::uint64_t code = 0; code < oracle::num_directed_graphs(n); ++code) out.push_back(oracle::graph_from_code(n, code));
    return out;
}

// Separations of d, indexed in for_each_nontrivial_triple order.
std::vector<bool> separation_bits(const DirectedMixedGraph& d) {
    std::vector<bool> bits;
    const SeparationTable table(d);
    for_each_nontrivial_triple(d.num_nodes(), false,
                               [&](const IndependenceTriple& t) { bits.push_back(table.separated(t.a, t.b, t.c)); });
    return bits;
}

// I(D) together with a set of extra singleton independences. Both parts are
// decomposition-closed, so the union is too.
class AugmentedModel final : public IndependenceModel {
public:
    AugmentedModel(DirectedMixedGraph d, std::vector<IndependenceTriple> extra)
        : IndependenceModel(d.num_nodes()), d_(std::move(d)), extra_(std::move(extra)) {}
    bool is_decomposition_closed() const override { return true; }

protected:
    bool evaluate(NodeSet a, NodeSet b, NodeSet c) const override {
        if (mu_separated(d_, a, b, c)) return true;
        return std::find(extra_.begin(), extra_.end(), IndependenceTriple{a, b, c}) != extra_.end();
    }

private:
    DirectedMixedGraph d_;
    std::vector<IndependenceTriple> extra_;
};

IndependenceTriple random_singleton_triple(std::size_t n, Rng& rng) {
    std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(n - 1));
    const NodeId alpha = node(rng);
    NodeId beta = node(rng);
    if (beta == alpha) beta = static_cast<NodeId>((alpha + 1) % n);
    NodeSet c = oracle::random_subset(n, rng, 0.4);
    c.erase(alpha);
    return {NodeSet::single(alpha), NodeSet::single(beta), c};
}

// ---------------------------------------------------------------------------

Outcome separation_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    std::size_t queries = 0;
    std::size_t mismatches = 0;
    for (std::size_t n = 1; n <= 3; ++n) {
        const NodeSet all = NodeSet::full(n);
        for (const auto& d : all_mixed_graphs(n)) {
            for_each_submask(all, [&](NodeSet a) {
                for_each_submask(all, [&](NodeSet b) {
                    for_each_submask(all, [&](NodeSet c) {
                        ++queries;
                        if (mu_separated(d, a, b, c) != mu_separated_oracle(d, a, b, c)) ++mismatches;
                    });
                });
            });
        }
    }
    Rng rng(101);
    std::uniform_real_distribution<double> density(0.0, 0.5);
    for (std::size_t n = 4; n <= 6; ++n) {
        for (std::size_t i = 0; i < kRandomSeparationInstances; ++i) {
            const double p = density(rng);
            const auto d = oracle::random_graph(n, rng, p, p / 2.0);
            const NodeSet a = oracle::random_subset(n, rng, 0.3);
            const NodeSet b = oracle::random_subset(n, rng, 0.3);
            const NodeSet c = oracle::random_subset(n, rng, 0.4);
            ++queries;
            if (mu_separated(d, a, b, c) != mu_separated_oracle(d, a, b, c)) ++mismatches;
        }
    }
    const double elapsed = seconds_since(start);
    return {mismatches == 0 && elapsed < kSeparationBudgetSeconds,
            std::to_string(queries) + " queries, " + std::to_string(mismatches) + " mismatches, " +
                fmt("%.1f", elapsed) + " s"};
}

Outcome running_example() {
    const auto g = fixture::running_example();
    // 0-based: the usual 1-based labels 1..4 are 0..3 here.
    const bool first = mu_separated(g, {0}, {3}, {1, 2, 3});
    const bool second = mu_separated(g, {0}, {3}, {1, 3});
    const auto witness = connecting_walk_witness(g, {0}, {3}, {1, 3});
    std::string detail = std::string("given {2,3,4}: ") + (first ? "separated" : "connected") +
                         "; given {2,4}: " + (second ? "separated" : "connected");
    if (witness) detail += " via " + witness->to_string();
    return {first && !second, detail};
}

// Model family for the n = 3 exhaustive pairing: every graphical model plus
// a seeded batch of non-graphical closed models.
std::vector<ExplicitModel> model_family_n3() {
    std::vector<ExplicitModel> family;
    for (const auto& d : all_directed_graphs(3)) family.push_back(materialize(GraphOracleModel(d)));
    Rng rng(303);
    for (int i = 0; i < 64; ++i) family.push_back(oracle::random_closed_model(3, rng));
    return family;
}

Outcome transitive_closure_theorem(const std::vector<ExplicitModel>& family) {
    std::size_t pairs = 0;
    std::size_t mismatches = 0;
    std::size_t faithful = 0;
    for (const auto& d : all_directed_graphs(3)) {
        for (const auto& model : family) {
            const bool f = is_faithful(model, d);
            faithful += f ? 1 : 0;
            if (is_transitively_closed(model, d) != f) ++mismatches;
            ++pairs;
        }
    }
    Rng rng(304);
    for (std::size_t i = 0; i < kRandomModelPairs; ++i) {
        const auto model = oracle::random_closed_model(4, rng);
        const auto d = oracle::random_graph(4, rng, std::uniform_real_distribution<double>(0.0, 0.6)(rng));
        const bool f = is_faithful(model, d);
        faithful += f ? 1 : 0;
        if (is_transitively_closed(model, d) != f) ++mismatches;
        ++pairs;
    }
    return {mismatches == 0, std::to_string(pairs) + " pairs (" + std::to_string(faithful) + " faithful), " +
                                 std::to_string(mismatches) + " mismatches"};
}

Outcome edge_transitive_graph_criterion(const std::vector<ExplicitModel>& family) {
    std::size_t models = 0;
    std::size_t unfaithful = 0;
    for (const auto& model : family) {
        ++models;
        if (!is_faithful(model, edge_transitive_graph(model))) ++unfaithful;
    }
    Rng rng(305);
    for (std::size_t i = 0; i < kRandomModelPairs; ++i) {
        const auto model = oracle::random_closed_model(4, rng);
        ++models;
        if (!is_faithful(model, edge_transitive_graph(model))) ++unfaithful;
    }
    std::size_t graphs = 0;
    std::size_t wrong = 0;
    for (std::size_t n = 1; n <= 3; ++n) {
        for (const auto& d : all_directed_graphs(n)) {
            ++graphs;
            if (edge_transitive_graph(GraphOracleModel(d)) != d) ++wrong;
        }
    }
    for (std::size_t n = 4; n <= 5; ++n) {
        for (std::size_t i = 0; i < kRandomOracleGraphs; ++i) {
            const auto d = sample_graph(n, rng);
            ++graphs;
            if (edge_transitive_graph(GraphOracleModel(d)) != d) ++wrong;
        }
    }
    return {unfaithful == 0 && wrong == 0, std::to_string(models) + " models, " + std::to_string(unfaithful) +
                                               " not faithful to F_I; " + std::to_string(graphs) + " graphs, " +
                                               std::to_string(wrong) + " with F_I != D"};
}

Outcome hierarchy() {
    Rng rng(505);
    std::size_t instances = 0;
    std::size_t disagreements = 0;
    std::size_t chain_breaks = 0;
    std::array<std::size_t, 4> holds{};
    for (std::size_t i = 0; i < kRandomModelPairs; ++i) {
        const std::size_t n = 2 + i % 3;
        const auto model = oracle::random_closed_model(n, rng);
        const auto d = oracle::random_graph(n, rng, std::uniform_real_distribution<double>(0.0, 0.6)(rng));
        const auto levels = check_conditions_hierarchy(model, d);
        const bool parent = check_parent_faithful(model, d).holds;
        const bool ancestor = check_ancestor_faithful(model, d).holds;
        const bool trek = check_trek_faithful(model, d).holds;
        const bool full = is_faithful(model, d);
        const bool closed = is_transitively_closed(model, d);
        ++instances;
        if (levels.d0 != parent || levels.d0_d1p != ancestor || levels.d0_d1p_d3p != trek ||
            levels.d0_d1p_d2_d3p != full || closed != levels.d0_d1p_d2_d3p) {
            ++disagreements;
        }
        if ((full && !trek) || (trek && !ancestor) || (ancestor && !parent)) ++chain_breaks;
        holds[0] += parent;
        holds[1] += ancestor;
        holds[2] += trek;
        holds[3] += full;
    }
    return {disagreements == 0 && chain_breaks == 0,
            std::to_string(instances) + " instances, " + std::to_string(disagreements) + " disagreements, " +
                std::to_string(chain_breaks) + " chain violations; holding parent/ancestor/trek/full = " +
                std::to_string(holds[0]) + "/" + std::to_string(holds[1]) + "/" + std::to_string(holds[2]) + "/" +
                std::to_string(holds[3])};
}

Outcome oracle_learning() {
    std::vector<DirectedMixedGraph> graphs;
    for (std::size_t n = 1; n <= 3; ++n) {
        for (const auto& d : all_directed_graphs(n)) graphs.push_back(d);
    }
    Rng rng(606);
    for (std::size_t n = 4; n <= 6; ++n) {
        for (std::size_t i = 0; i < kRandomOracleGraphs; ++i) graphs.push_back(sample_graph(n, rng));
    }
    std::map<std::string, std::size_t> wrong;
    for (const auto& d : graphs) {
        const std::size_t n = d.num_nodes();
        for (const Algorithm a : {Algorithm::cm, Algorithm::cs, Algorithm::ca, Algorithm::dsgs}) {
            const std::optional<std::size_t> parameter =
                a == Algorithm::dsgs ? std::optional<std::size_t>(n - 1) : std::nullopt;
            if (learn(a, GraphOracleModel(d), parameter).graph != d) ++wrong[to_string(a)];
        }
    }
    std::size_t perturbed = 0;
    std::size_t not_subgraph = 0;
    for (std::size_t i = 0; i < kRandomOracleGraphs; ++i) {
        const std::size_t n = 3 + i % 3;
        const auto d = sample_graph(n, rng);
        std::vector<IndependenceTriple> extra;
        for (int e = std::uniform_int_distribution<int>(1, 4)(rng); e > 0; --e) extra.push_back(random_singleton_triple(n, rng));
        const AugmentedModel model(d, extra);
        const auto out = dsgs(model, graph_order(d).value).graph;
        ++perturbed;
        if (!is_subgraph(out, d)) ++not_subgraph;
    }
    std::size_t total_wrong = 0;
    std::string detail = std::to_string(graphs.size()) + " graphs; wrong outputs:";
    for (const char* name : {"cm", "cs", "ca", "dsgs"}) {
        total_wrong += wrong[name];
        detail += std::string(" ") + name + "=" + std::to_string(wrong[name]);
    }
    detail += "; perturbed dsgs(order) not a subgraph: " + std::to_string(not_subgraph) + "/" + std::to_string(perturbed);
    return {total_wrong == 0 && not_subgraph == 0, detail};
}

Outcome detectability() {
    Rng rng(707);
    std::size_t constructed = 0;
    std::size_t attempts = 0;
    std::size_t found_map = 0;
    while (constructed < kDetectableModels && attempts < 5000) {
        ++attempts;
        const std::size_t n = 3 + attempts % 2;
        const auto d = sample_graph(n, rng);
        const auto extra = random_singleton_triple(n, rng);
        if (mu_separated(d, extra.a, extra.b, extra.c)) continue;
        const AugmentedModel model(d, {extra});
        if (!check_causal_minimality(model, d, MinimalityMode::definitional)) continue;
        ++constructed;
        if (find_perfect_map(model).has_value()) ++found_map;
    }

    std::size_t graphical = 0;
    std::size_t graphical_wrong = 0;
    for (int i = 0; i < 40; ++i) {
        const auto d = sample_graph(2 + i % 3, rng);
        const auto map = find_perfect_map(GraphOracleModel(d));
        ++graphical;
        if (!map || separation_bits(*map) != separation_bits(d)) ++graphical_wrong;
    }

    std::size_t comparisons = 0;
    std::size_t counterexamples = 0;
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto graphs = all_directed_graphs(n);
        std::vector<std::vector<bool>> bits;
        for (const auto& g : graphs) bits.push_back(separation_bits(g));
        for (std::size_t i = 0; i < graphs.size(); ++i) {
            for (std::size_t j = 0; j < graphs.size(); ++j) {
                bool included = true;
                for (std::size_t t = 0; t < bits[i].size() && included; ++t) {
                    if (bits[i][t] && !bits[j][t]) included = false;
                }
                if (!included) continue;
                ++comparisons;
                if (!is_subgraph(graphs[j], graphs[i])) ++counterexamples;
            }
        }
    }
    return {constructed >= kDetectableModels && found_map == 0 && graphical_wrong == 0 && counterexamples == 0,
            std::to_string(constructed) + " minimal unfaithful models (" + std::to_string(attempts) + " draws), " +
                std::to_string(found_map) + " with a perfect map; " + std::to_string(graphical - graphical_wrong) + "/" +
                std::to_string(graphical) + " graphical models mapped; " + std::to_string(comparisons) +
                " included pairs, " + std::to_string(counterexamples) + " not reversed subgraphs"};
}

Outcome calibration() {
    Rng rng(808);
    const VarSystem null_system{Eigen::MatrixXd::Zero(2, 2), 1.0};
    std::size_t rejections = 0;
    for (std::size_t r = 0; r < kCalibrationReps; ++r) {
        const Dataset x = simulate_var(null_system, 100, rng);
        if (granger_f_test(x, 0, 1, {}).p_value <= kCalibrationLevel) ++rejections;
    }
    const double rate = static_cast<double>(rejections) / static_cast<double>(kCalibrationReps);
    return {std::abs(rate - kCalibrationLevel) <= kCalibrationTolerance,
            "rejection rate " + fmt("%.4f", rate) + " over " + std::to_string(kCalibrationReps) + " null datasets"};
}

struct ComparisonRun {
    ExperimentResult result;
    double seconds = 0.0;
};

ComparisonRun comparison_run(const Settings& settings) {
    ExperimentConfig cfg;
    cfg.n_values = {5, 7};
    cfg.repetitions = 100;
    cfg.time_points = 100;
    cfg.thresholds = {0.01, 0.05, 0.1};
    cfg.seed = 2024;
    cfg.threads = settings.threads;
    const auto start = std::chrono::steady_clock::now();
    ComparisonRun run;
    run.result = run_comparison(cfg);
    run.seconds = seconds_since(start);
    return run;
}

Outcome comparison_ordering(const ComparisonRun& run) {
    bool pass = true;
    std::ostringstream detail;
    detail << fmt("%.0f", run.seconds) << " s;";
    std::map<std::pair<std::size_t, double>, std::map<Algorithm, SummaryRow>> grouped;
    for (const auto& row : run.result.summary) grouped[{row.n, row.threshold}][row.algorithm] = row;
    for (const auto& [key, rows] : grouped) {
        const auto& dsgs_row = rows.at(Algorithm::dsgs);
        bool lowest = true;
        for (const auto& [algorithm, row] : rows) {
            if (row.mean_surplus < dsgs_row.mean_surplus) lowest = false;
        }
        const double gap = std::abs(rows.at(Algorithm::cm).mean_difference - rows.at(Algorithm::cs).mean_difference);
        const bool close = gap <= kDifferenceBand;
        pass = pass && lowest && close;
        detail << " n=" << key.first << " a=" << fmt("%g", key.second) << ": surplus";
        for (const auto& [algorithm, row] : rows) detail << ' ' << to_string(algorithm) << '=' << fmt("%.2f", row.mean_surplus);
        detail << (lowest ? "" : " (dsgs not lowest)") << ", |cm-cs| diff=" << fmt("%.2f", gap)
               << (close ? "" : " (too wide)") << ';';
    }
    std::size_t failed = 0;
    for (const auto& r : run.result.records) failed += r.failed ? 1 : 0;
    detail << " failed records " << failed;
    return {pass, detail.str()};
}

Outcome test_counts(const ComparisonRun& run) {
    bool pass = true;
    std::ostringstream detail;
    for (const auto& row : report_test_counts(run.result.records)) {
        if (row.algorithm == Algorithm::cm) {
            pass = pass && row.min == row.n * (row.n - 1) && row.max == row.n * (row.n - 1);
            detail << "cm n=" << row.n << " uses " << row.min << ".." << row.max << " (expected " << row.n * (row.n - 1)
                   << "); ";
        }
        if (row.algorithm == Algorithm::dsgs) {
            pass = pass && row.expectation_met;
            detail << "dsgs n=" << row.n << " max " << row.max << "; ";
        }
        if (row.algorithm == Algorithm::ca && row.reference_range) {
            detail << "ca n=" << row.n << " observed " << row.min << ".." << row.max << " (median " << row.median
                   << ") beside reported " << row.reference_range->first << ".." << row.reference_range->second << "; ";
        }
    }
    return {pass, detail.str()};
}

Outcome partial_observation() {
    Rng rng(1111);
    std::size_t pairs = 0;
    std::size_t violations = 0;
    std::size_t queries = 0;
    std::size_t mismatches = 0;
    auto check_restriction = [&](const DirectedMixedGraph& d, NodeSet observed) {
        const auto projection = latent_projection(d, observed);
        const auto restricted = restrict_to_observed(std::make_shared<GraphOracleModel>(d), observed);
        for_each_nontrivial_triple(observed.size(), true, [&](const IndependenceTriple& t) {
            ++queries;
            if (restricted->independent(t.a, t.b, t.c) != mu_separated(projection.graph, t.a, t.b, t.c)) ++mismatches;
        });
    };
    for (std::size_t i = 0; i < kPartialPairs; ++i) {
        const std::size_t total = 3 + i % 4;
        const auto d = sample_graph(total, rng);
        NodeSet observed = oracle::random_subset(total, rng, 0.6);
        if (observed.size() < 2) observed = NodeSet{0, static_cast<NodeId>(total - 1)};
        const auto projection = latent_projection(d, observed);
        const auto restricted = restrict_to_observed(std::make_shared<GraphOracleModel>(d), observed);
        const auto out = cs(*restricted).graph;
        ++pairs;
        for (NodeId a = 0; a < observed.size(); ++a) {
            for (NodeId b = 0; b < observed.size(); ++b) {
                if (!out.has_edge(a, b) && projection.graph.has_edge(a, b)) ++violations;
            }
        }
        if (total <= 5) check_restriction(d, observed);
    }
    for (std::size_t n = 1; n <= 3; ++n) {
        for (const auto& d : all_directed_graphs(n)) {
            for_each_submask(NodeSet::full(n), [&](NodeSet observed) { check_restriction(d, observed); });
        }
    }
    return {violations == 0 && mismatches == 0,
            std::to_string(pairs) + " (D, O) pairs, " + std::to_string(violations) +
                " CS-absent edges present in the projection; " + std::to_string(queries) + " singleton queries, " +
                std::to_string(mismatches) + " restriction mismatches"};
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Runs each command in two fresh directories and compares every file produced.
Outcome cli_determinism(const Settings& settings) {
    if (settings.cli.empty()) return {false, "no CLI path given (--cli)"};
    const std::string cli = fs::absolute(settings.cli).string();
    const fs::path root = fs::absolute(settings.workdir) / "determinism";
    fs::remove_all(root);
    const fs::path graph = root / "example.txt";
    fs::create_directories(root);
    save_graph(graph.string(), fixture::running_example());

    const std::string g = "\"" + graph.string() + "\"";
    const std::vector<std::string> commands = {
        "check order " + g + " > order.txt",
        "check sep " + g + " --a 0 --b 3 --c 1,3 > sep.txt",
        "check faith " + g + " oracle:" + g + " --level all > faith.txt",
        "learn cs oracle:" + g + " --out cs.txt --stats cs_stats.csv --audit cs_audit.csv",
        "simulate --graph " + g + " --t 200 --seed 7 --out data.csv --system system.txt",
        "learn dsgs data:data.csv --alpha 0.05 --out dsgs.txt --cache-out cache.csv --stats dsgs_stats.csv",
        "trim " + g + " cache.csv --out trimmed.txt",
        "learn edge-transitive oracle:" + g + " --out et.txt",
        "experiment run --n 4,5 --m 12 --t 100 --seed 5 --threads 3 --out run > run.log",
        "experiment partial --n 4 --m 12 --seed 6 --u-max 2 --oracle --out partial > partial.log",
    };
    std::vector<std::map<std::string, std::string>> outputs;
    for (const char* round : {"a", "b"}) {
        const fs::path dir = root / round;
        fs::create_directories(dir);
        for (const auto& cmd : commands) {
            const std::string line = "cd \"" + dir.string() + "\" && \"" + cli + "\" " + cmd;
            if (std::system(line.c_str()) != 0) return {false, "command failed: " + cmd};
        }
        std::map<std::string, std::string> files;
        for (const auto& entry : fs::recursive_directory_iterator(dir)) {
            if (entry.is_regular_file()) files[fs::relative(entry.path(), dir).string()] = read_file(entry.path());
        }
        outputs.push_back(std::move(files));
    }
    std::size_t differing = 0;
    std::string first_diff;
    for (const auto& [name, content] : outputs[0]) {
        const auto it = outputs[1].find(name);
        if (it == outputs[1].end() || it->second != content) {
            ++differing;
            if (first_diff.empty()) first_diff = name;
        }
    }
    if (outputs[0].size() != outputs[1].size()) ++differing;
    return {differing == 0 && !outputs[0].empty(),
            std::to_string(commands.size()) + " commands, " + std::to_string(outputs[0].size()) + " files, " +
                std::to_string(differing) + " differing" + (first_diff.empty() ? "" : " (first: " + first_diff + ")")};
}

} // namespace

int main(int argc, char** argv) {
    Settings settings;
    std::vector<int> only;
    CLI::App app{"localind acceptance suite"};
    app.add_option("--cli", settings.cli, "Path to the localind executable");
    app.add_option("--workdir", settings.workdir, "Scratch directory");
    app.add_option("--threads", settings.threads, "Worker threads for the comparison run (0 = hardware)");
    app.add_option("--only", only, "Run only these criteria");
    CLI11_PARSE(app, argc, argv);
    if (settings.threads == 0) settings.threads = std::max(1U, std::thread::hardware_concurrency());

    std::vector<ExplicitModel> family;
    auto model_family = [&]() -> const std::vector<ExplicitModel>& {
        if (family.empty()) family = model_family_n3();
        return family;
    };
    std::optional<ComparisonRun> comparison;
    auto comparison_result = [&]() -> const ComparisonRun& {
        if (!comparison) comparison = comparison_run(settings);
        return *comparison;
    };

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"separation reachability matches walk enumeration", separation_equivalence},
        {"running example separation queries", running_example},
        {"transitive closure iff faithfulness", [&] { return transitive_closure_theorem(model_family()); }},
        {"edge-transitive graph is faithful and recovers graphs", [&] { return edge_transitive_graph_criterion(model_family()); }},
        {"condition hierarchy matches direct checkers", hierarchy},
        {"oracle learning is exact", oracle_learning},
        {"unfaithful minimal models have no perfect map", detectability},
        {"Granger test size under the null", calibration},
        {"algorithm comparison orderings", [&] { return comparison_ordering(comparison_result()); }},
        {"test-count accounting", [&] { return test_counts(comparison_result()); }},
        {"partial observation", partial_observation},
        {"CLI determinism", [&] { return cli_determinism(settings); }},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i + 1);
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        if (!outcome.pass) ++failures;
        std::cout << (outcome.pass ? "PASS" : "FAIL") << " [" << id << "] " << criteria[i].first << ": "
                  << outcome.detail << " (" << fmt("%.1f", seconds_since(start)) << " s)" << std::endl;
    }
    return failures == 0 ? 0 : 1;
}

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "localind/experiments.hpp"
#include "localind/faithfulness.hpp"
#include "localind/granger.hpp"
#include "localind/graph.hpp"
#include "localind/independence.hpp"
#include "localind/learn.hpp"
#include "localind/separation.hpp"
#include "localind/simulate.hpp"

using namespace localind;

namespace {

struct ModelOptions {
    std::string spec;
    double alpha = 0.05;
    std::size_t lag = 1;
    std::optional<std::size_t> n;
};

// oracle:<graph> | data:<csv> | cache:<csv> | <explicit model file>
std::shared_ptr<IndependenceModel> load_model(const ModelOptions& opt, std::shared_ptr<EmpiricalModel>* empirical = nullptr) {
    const std::string& spec = opt.spec;
    auto starts = [&](const std::string& prefix) { return spec.rfind(prefix, 0) == 0; };
    if (starts("oracle:")) return std::make_shared<GraphOracleModel>(load_graph(spec.substr(7)));
    if (starts("data:")) {
        auto test = std::make_shared<GrangerTest>(load_dataset(spec.substr(5)), opt.lag);
        auto model = std::make_shared<EmpiricalModel>(test, opt.alpha);
        if (empirical) *empirical = model;
        return model;
    }
    if (starts("cache:")) {
        if (!opt.n) throw std::invalid_argument("cache models need --n");
        return load_cache_as_model(spec.substr(6), *opt.n);
    }
    return load_explicit_model(spec, opt.n);
}

template <typename F>
void with_output(const std::string& path, F&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write(out);
}

std::vector<std::string> split(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string witness_text(const FaithfulnessCheck& check) {
    return check.witness ? "\"" + to_string(*check.witness) + "\"" : "";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local independence graphs: separation, faithfulness, structure learning and simulation"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    // check
    auto* check = app.add_subcommand("check", "Graph and model diagnostics");
    check->require_subcommand(1);

    std::string order_graph;
    auto* order = check->add_subcommand("order", "Pair orders as CSV alpha,beta,order");
    order->add_option("graph", order_graph, "Edge-list graph file")->required();

    std::string sep_graph, sep_a, sep_b, sep_c;
    auto* sep = check->add_subcommand("sep", "Is B mu-separated from A given C?");
    sep->add_option("graph", sep_graph, "Edge-list graph file")->required();
    sep->add_option("--a", sep_a, "Comma-separated source nodes")->required();
    sep->add_option("--b", sep_b, "Comma-separated target nodes")->required();
    sep->add_option("--c", sep_c, "Comma-separated conditioning nodes");

    std::string faith_graph, faith_level = "all";
    ModelOptions faith_model;
    std::optional<std::size_t> faith_k;
    bool faith_pairwise = false;
    auto* faith = check->add_subcommand("faith", "Faithfulness levels of a model against a graph");
    faith->add_option("graph", faith_graph, "Edge-list graph file")->required();
    faith->add_option("model", faith_model.spec, "oracle:<graph>, data:<csv>, cache:<csv> or an A;B;C model file")
        ->required();
    faith->add_option("--level", faith_level, "parent|ancestor|trek|full|all")
        ->check(CLI::IsMember({"parent", "ancestor", "trek", "full", "all"}));
    faith->add_option("--k", faith_k, "Also report k-faithfulness");
    faith->add_option("--alpha", faith_model.alpha, "Significance level for data models");
    faith->add_option("--lag", faith_model.lag, "Granger lag for data models");
    faith->add_flag("--pairwise", faith_pairwise, "Singleton triples only (decomposition-closed models)");

    // learn
    std::string learn_algo, learn_out, learn_stats, learn_cache_out, learn_audit;
    ModelOptions learn_model;
    std::optional<std::size_t> learn_k;
    auto* learn_cmd = app.add_subcommand("learn", "Structure learning");
    learn_cmd->add_option("algorithm", learn_algo, "cm|cs|ca|dsgs|edge-transitive")
        ->required()
        ->check(CLI::IsMember({"cm", "cs", "ca", "dsgs", "edge-transitive"}));
    learn_cmd->add_option("modelfile", learn_model.spec, "Model spec (same forms as --model)");
    learn_cmd->add_option("--model", learn_model.spec, "oracle:<graph>, data:<csv>, cache:<csv> or an A;B;C model file");
    learn_cmd->add_option("--alpha", learn_model.alpha, "Significance level for data models");
    learn_cmd->add_option("--lag", learn_model.lag, "Granger lag for data models");
    learn_cmd->add_option("--n", learn_model.n, "Node count for cache and model files");
    learn_cmd->add_option("--k", learn_k, "dsgs subset bound, ca level bound or edge-transitive bound");
    learn_cmd->add_option("--out", learn_out, "Output edge list (stdout by default)");
    learn_cmd->add_option("--stats", learn_stats, "Write a stats CSV row");
    learn_cmd->add_option("--cache-out", learn_cache_out, "Write the Granger test cache (data models)");
    learn_cmd->add_option("--audit", learn_audit, "Write the query audit trail as CSV");

    // trim
    std::string trim_graph, trim_model, trim_out;
    auto* trim_cmd = app.add_subcommand("trim", "Remove edges that violate D0-D3 for a model");
    trim_cmd->add_option("graph", trim_graph, "Edge-list graph file")->required();
    trim_cmd->add_option("cache", trim_model, "Granger cache CSV, or model spec with a prefix")->required();
    trim_cmd->add_option("--out", trim_out, "Output edge list (stdout by default)");

    // simulate
    std::string sim_graph, sim_out, sim_system;
    std::size_t sim_t = 100, sim_burn = 100;
    std::uint64_t sim_seed = 1;
    double sim_noise = 1.0;
    auto* sim = app.add_subcommand("simulate", "Sample a stable VAR(1) system on a graph and simulate it");
    sim->add_option("--graph", sim_graph, "Edge-list graph file")->required();
    sim->add_option("--t", sim_t, "Recorded time points");
    sim->add_option("--seed", sim_seed, "Random seed");
    sim->add_option("--burn-in", sim_burn, "Discarded initial steps");
    sim->add_option("--noise", sim_noise, "Noise standard deviation");
    sim->add_option("--out", sim_out, "Dataset CSV (stdout by default)");
    sim->add_option("--system", sim_system, "Write the coefficient matrix");

    // experiment
    auto* exp = app.add_subcommand("experiment", "Batch algorithm comparison");
    exp->require_subcommand(1);
    ExperimentConfig cfg;
    std::string exp_n = "5", exp_thresholds = "0.01,0.05,0.1", exp_algos = "cm,cs,ca,dsgs", exp_out = "results";
    std::optional<std::size_t> exp_u_max;
    auto add_experiment_flags = [&](CLI::App* sub) {
        sub->add_option("--n", exp_n, "Comma-separated node counts");
        sub->add_option("--m", cfg.repetitions, "Repetitions per n");
        sub->add_option("--t", cfg.time_points, "Time points per dataset");
        sub->add_option("--thresholds", exp_thresholds, "Comma-separated significance levels");
        sub->add_option("--algos", exp_algos, "Comma-separated algorithms");
        sub->add_option("--seed", cfg.seed, "Base seed");
        sub->add_option("--out", exp_out, "Output directory");
        sub->add_option("--dsgs-k", cfg.dsgs_k, "dSGS subset bound (n-1 by default)");
        sub->add_option("--ca-max-level", cfg.ca_max_level, "CA level bound (n-1 by default)");
        sub->add_option("--lag", cfg.lag, "Granger lag");
        sub->add_option("--burn-in", cfg.burn_in, "Discarded simulation steps");
        sub->add_option("--threads", cfg.threads, "Worker threads");
        sub->add_flag("--oracle", cfg.oracle, "Use the separation oracle of the true graph");
        sub->add_flag("--timing", cfg.record_timing, "Add a seconds column to records.csv");
    };
    auto* exp_run = exp->add_subcommand("run", "Full observation");
    add_experiment_flags(exp_run);
    auto* exp_partial = exp->add_subcommand("partial", "Partial observation with hidden nodes");
    add_experiment_flags(exp_partial);
    exp_partial->add_option("--u-max", exp_u_max, "Largest number of hidden nodes (n by default)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*order) {
            const auto g = load_graph(order_graph);
            std::cout << "alpha,beta,order\n";
            for (NodeId a = 0; a < g.num_nodes(); ++a) {
                for (NodeId b = 0; b < g.num_nodes(); ++b) {
                    if (a == b) continue;
                    const PairOrder o = pair_order(g, a, b);
                    std::cout << a << ',' << b << ',' << (o ? std::to_string(*o) : "inf") << '\n';
                }
            }
        } else if (*sep) {
            const auto g = load_graph(sep_graph);
            const NodeSet a = parse_node_set(sep_a), b = parse_node_set(sep_b), c = parse_node_set(sep_c);
            for (NodeSet s : {a, b, c}) {
                if (!s.is_subset_of(g.nodes())) throw std::invalid_argument("node set mentions nodes outside the graph");
            }
            if (mu_separated(g, a, b, c)) {
                std::cout << "separated\n";
            } else {
                std::cout << "connected\n";
                if (auto w = connecting_walk_witness(g, a, b, c)) std::cout << w->to_string() << '\n';
            }
        } else if (*faith) {
            const auto g = load_graph(faith_graph);
            if (!faith_model.n) faith_model.n = g.num_nodes();
            const auto model = load_model(faith_model);
            const TripleScope scope = faith_pairwise ? TripleScope::pairwise : TripleScope::full;
            std::cout << "level,holds,witness\n";
            auto row = [](const std::string& name, const FaithfulnessCheck& c) {
                std::cout << name << ',' << (c.holds ? "true" : "false") << ',' << witness_text(c) << '\n';
            };
            const bool all = faith_level == "all";
            if (all || faith_level == "parent") row("parent", check_parent_faithful(*model, g, scope));
            if (all || faith_level == "ancestor") row("ancestor", check_ancestor_faithful(*model, g, scope));
            if (all || faith_level == "trek") row("trek", check_trek_faithful(*model, g, scope));
            if (all || faith_level == "full") row("full", check_faithful(*model, g, scope));
            if (faith_k) row("k=" + std::to_string(*faith_k), check_k_faithful(*model, g, *faith_k, scope));
        } else if (*learn_cmd) {
            if (learn_model.spec.empty()) throw std::invalid_argument("learn needs a model (positional or --model)");
            std::shared_ptr<EmpiricalModel> empirical;
            const auto model = load_model(learn_model, &empirical);
            DirectedMixedGraph out;
            std::size_t tests = 0;
            std::vector<AuditEntry> audit;
            const std::size_t before = model->query_count();
            if (learn_algo == "edge-transitive") {
                out = learn_k ? edge_transitive_graph_bounded(*model, *learn_k) : edge_transitive_graph(*model);
                tests = model->query_count() - before;
            } else {
                LearnResult r = learn(parse_algorithm(learn_algo), *model, learn_k);
                out = std::move(r.graph);
                tests = r.tests_used;
                audit = std::move(r.audit);
            }
            with_output(learn_out, [&](std::ostream& os) { write_graph(os, out); });
            if (!learn_stats.empty()) {
                with_output(learn_stats, [&](std::ostream& os) {
                    os << "algorithm,n,tests_used,edges\n"
                       << learn_algo << ',' << out.num_nodes() << ',' << tests << ',' << out.num_proper_edges() << '\n';
                });
            }
            if (!learn_audit.empty()) {
                with_output(learn_audit, [&](std::ostream& os) {
                    os << "alpha,beta,C,independent\n";
                    for (const auto& e : audit) {
                        os << e.alpha << ',' << e.beta << ",\"" << to_string(e.c) << "\"," << (e.independent ? 1 : 0) << '\n';
                    }
                });
            }
            if (!learn_cache_out.empty()) {
                if (!empirical) throw std::invalid_argument("--cache-out needs a data: model");
                with_output(learn_cache_out, [&](std::ostream& os) { empirical->write_cache_csv(os); });
            }
        } else if (*trim_cmd) {
            const auto g = load_graph(trim_graph);
            ModelOptions opt;
            opt.n = g.num_nodes();
            const bool prefixed = trim_model.rfind("oracle:", 0) == 0 || trim_model.rfind("cache:", 0) == 0 ||
                                  trim_model.rfind("data:", 0) == 0;
            opt.spec = prefixed ? trim_model : "cache:" + trim_model;
            const auto model = load_model(opt);
            const auto out = trim(*model, g);
            with_output(trim_out, [&](std::ostream& os) { write_graph(os, out); });
        } else if (*sim) {
            const auto g = load_graph(sim_graph);
            Rng rng(sim_seed);
            const SampledSystem s = sample_var_system(g, rng, sim_noise);
            const Dataset data = simulate_var(s.system, sim_t, rng, sim_burn);
            with_output(sim_out, [&](std::ostream& os) { write_dataset(os, data); });
            if (!sim_system.empty()) with_output(sim_system, [&](std::ostream& os) { write_system(os, s.system); });
        } else if (*exp_run || *exp_partial) {
            cfg.n_values.clear();
            for (const auto& v : split(exp_n)) cfg.n_values.push_back(std::stoul(v));
            cfg.thresholds.clear();
            for (const auto& v : split(exp_thresholds)) cfg.thresholds.push_back(std::stod(v));
            cfg.algorithms.clear();
            for (const auto& v : split(exp_algos)) cfg.algorithms.push_back(parse_algorithm(v));
            cfg.u_max = exp_u_max;
            const ExperimentResult result = *exp_partial ? run_partial_observation(cfg) : run_comparison(cfg);
            write_experiment(exp_out, cfg, result);
            std::size_t failed = 0;
            for (const auto& r : result.records) failed += r.failed ? 1 : 0;
            std::cerr << result.records.size() << " records written to " << exp_out << " (" << failed
                      << " failed, excluded from means)\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

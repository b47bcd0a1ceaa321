#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "localind/experiments.hpp"
#include "localind/faithfulness.hpp"
#include "localind/granger.hpp"
#include "localind/graph.hpp"
#include "localind/independence.hpp"
#include "localind/learn.hpp"
#include "localind/separation.hpp"
#include "localind/simulate.hpp"

namespace py = pybind11;
using namespace localind;

namespace {

using Nodes = std::vector<NodeId>;

NodeSet to_set(const Nodes& v) {
    for (NodeId x : v) {
        if (x >= NodeSet::kMaxNodes) throw py::value_error("node index out of range");
    }
    return NodeSet(v);
}

std::optional<std::size_t> optional_parameter(const py::object& o) {
    if (o.is_none()) return std::nullopt;
    return o.cast<std::size_t>();
}

py::dict record_dict(const ExperimentRecord& r) {
    py::dict d;
    d["repetition"] = r.repetition;
    d["n"] = r.n;
    d["u"] = r.u;
    d["algorithm"] = to_string(r.algorithm);
    d["threshold"] = r.threshold;
    d["surplus"] = r.surplus;
    d["missing"] = r.missing;
    d["difference"] = r.difference;
    d["tests_used"] = r.tests_used;
    d["true_edges"] = r.true_edges;
    d["failed"] = r.failed;
    d["failure"] = r.failure;
    return d;
}

ExperimentConfig make_config(const std::vector<std::size_t>& n, std::size_t m, std::size_t t,
                             const std::vector<double>& thresholds, const std::vector<std::string>& algorithms,
                             std::uint64_t seed, bool oracle, std::optional<std::size_t> u_max, std::size_t threads) {
    ExperimentConfig cfg;
    cfg.n_values = n;
    cfg.repetitions = m;
    cfg.time_points = t;
    cfg.thresholds = thresholds;
    cfg.algorithms.clear();
    for (const auto& a : algorithms) cfg.algorithms.push_back(parse_algorithm(a));
    cfg.seed = seed;
    cfg.oracle = oracle;
    cfg.u_max = u_max;
    cfg.threads = threads;
    return cfg;
}

} // namespace

PYBIND11_MODULE(_localind, m) {
    m.doc() = "Local independence graphs, mu-separation, faithfulness and structure learning";
    m.attr("__version__") = kVersion;

    py::class_<DirectedMixedGraph>(m, "Graph")
        .def(py::init<std::size_t>(), py::arg("n"))
        .def(py::init<std::size_t, const std::vector<DirectedEdge>&, const std::vector<DirectedEdge>&>(), py::arg("n"),
             py::arg("edges"), py::arg("bidirected") = std::vector<DirectedEdge>{})
        .def_static("complete", &DirectedMixedGraph::complete)
        .def_static("parse", &parse_graph, py::arg("text"))
        .def_property_readonly("num_nodes", &DirectedMixedGraph::num_nodes)
        .def("has_edge", &DirectedMixedGraph::has_edge)
        .def("has_bidirected", &DirectedMixedGraph::has_bidirected)
        .def("add_edge", &DirectedMixedGraph::add_edge)
        .def("remove_edge", &DirectedMixedGraph::remove_edge)
        .def("parents", [](const DirectedMixedGraph& g, NodeId b) { return g.parents(b).members(); })
        .def("edges", &DirectedMixedGraph::directed_edges, "Directed edges including self-loops")
        .def("proper_edges", &DirectedMixedGraph::proper_edges)
        .def("bidirected_edges", &DirectedMixedGraph::bidirected_edges)
        .def("to_text", &format_graph)
        .def("__eq__", [](const DirectedMixedGraph& a, const DirectedMixedGraph& b) { return a == b; })
        .def("__repr__", [](const DirectedMixedGraph& g) {
            return "<Graph n=" + std::to_string(g.num_nodes()) + " edges=" + std::to_string(g.num_proper_edges()) + ">";
        });

    m.def("ancestors", [](const DirectedMixedGraph& g, const Nodes& b) { return ancestors(g, to_set(b)).members(); });
    m.def("is_subgraph", &is_subgraph);
    m.def(
        "latent_projection",
        [](const DirectedMixedGraph& g, const Nodes& observed) {
            auto p = latent_projection(g, to_set(observed));
            return py::make_tuple(p.graph, p.index_map);
        },
        "Returns (graph, index_map)");
    m.def("pair_order", &pair_order, "None stands for an infinite order");
    m.def("graph_order", [](const DirectedMixedGraph& g) { return graph_order(g).value; });
    m.def("sample_graph", [](std::size_t n, std::uint64_t seed) {
        Rng rng(seed);
        return sample_graph(n, rng);
    });

    m.def("mu_separated", [](const DirectedMixedGraph& g, const Nodes& a, const Nodes& b, const Nodes& c) {
        return mu_separated(g, to_set(a), to_set(b), to_set(c));
    });
    m.def("mu_separated_oracle", [](const DirectedMixedGraph& g, const Nodes& a, const Nodes& b, const Nodes& c) {
        return mu_separated_oracle(g, to_set(a), to_set(b), to_set(c));
    });
    m.def(
        "connecting_walk",
        [](const DirectedMixedGraph& g, const Nodes& a, const Nodes& b, const Nodes& c) -> std::optional<std::string> {
            auto w = connecting_walk_witness(g, to_set(a), to_set(b), to_set(c));
            if (!w) return std::nullopt;
            return w->to_string();
        },
        "Arrow notation of a connecting walk, or None when separated");

    py::class_<IndependenceModel, std::shared_ptr<IndependenceModel>>(m, "IndependenceModel")
        .def_property_readonly("num_nodes", &IndependenceModel::num_nodes)
        .def("independent",
             [](const IndependenceModel& model, const Nodes& a, const Nodes& b, const Nodes& c) {
                 return model.independent(to_set(a), to_set(b), to_set(c));
             })
        .def_property_readonly("query_count", &IndependenceModel::query_count)
        .def_property_readonly("decomposition_closed", &IndependenceModel::is_decomposition_closed);

    py::class_<GraphOracleModel, IndependenceModel, std::shared_ptr<GraphOracleModel>>(m, "GraphOracleModel")
        .def(py::init<DirectedMixedGraph>());

    py::class_<ExplicitModel, IndependenceModel, std::shared_ptr<ExplicitModel>>(m, "ExplicitModel")
        .def(py::init([](std::size_t n, const std::vector<std::tuple<Nodes, Nodes, Nodes>>& triples, bool closed) {
                 std::vector<IndependenceTriple> ts;
                 for (const auto& [a, b, c] : triples) ts.push_back({to_set(a), to_set(b), to_set(c)});
                 return std::make_shared<ExplicitModel>(n, std::move(ts), closed);
             }),
             py::arg("n"), py::arg("triples"), py::arg("decomposition_closed") = false)
        .def("triples", [](const ExplicitModel& model) {
            std::vector<std::tuple<Nodes, Nodes, Nodes>> out;
            for (const auto& t : model.triples()) out.emplace_back(t.a.members(), t.b.members(), t.c.members());
            return out;
        });

    py::class_<RestrictedModel, IndependenceModel, std::shared_ptr<RestrictedModel>>(m, "RestrictedModel");
    m.def("restrict_to_observed", [](std::shared_ptr<IndependenceModel> model, const Nodes& observed) {
        return restrict_to_observed(std::move(model), to_set(observed));
    });

    py::class_<EmpiricalModel, IndependenceModel, std::shared_ptr<EmpiricalModel>>(m, "EmpiricalModel")
        .def(py::init([](const Eigen::MatrixXd& data, double significance, std::size_t lag) {
                 return std::make_shared<EmpiricalModel>(std::make_shared<GrangerTest>(data, lag), significance);
             }),
             py::arg("data"), py::arg("significance") = 0.05, py::arg("lag") = 1)
        .def("p_value", [](const EmpiricalModel& model, NodeId alpha, NodeId beta, const Nodes& c) {
            return model.granger_query(alpha, beta, to_set(c)).result.p_value;
        });

    m.def(
        "granger_f_test",
        [](const Eigen::MatrixXd& data, NodeId alpha, NodeId beta, const Nodes& c, std::size_t lag) {
            const GrangerResult r = granger_f_test(data, alpha, beta, to_set(c), lag);
            py::dict d;
            d["p_value"] = r.p_value;
            d["f_statistic"] = r.f_statistic;
            d["degenerate"] = r.degenerate;
            return d;
        },
        py::arg("data"), py::arg("alpha"), py::arg("beta"), py::arg("c"), py::arg("lag") = 1);

    m.def("is_faithful", [](const IndependenceModel& model, const DirectedMixedGraph& g) { return is_faithful(model, g); });
    m.def("is_k_faithful", [](const IndependenceModel& model, const DirectedMixedGraph& g, std::size_t k) {
        return is_k_faithful(model, g, k);
    });
    m.def("is_transitively_closed", &is_transitively_closed);
    m.def("edge_transitive_graph", &edge_transitive_graph);
    m.def("trim", &trim);
    m.def("find_perfect_map", &find_perfect_map);
    m.def("conditions_hierarchy", [](const IndependenceModel& model, const DirectedMixedGraph& g) {
        const ConditionHierarchy h = check_conditions_hierarchy(model, g);
        py::dict d;
        d["parent"] = h.d0;
        d["ancestor"] = h.d0_d1p;
        d["trek"] = h.d0_d1p_d3p;
        d["full"] = h.d0_d1p_d2_d3p;
        return d;
    });

    m.def(
        "learn",
        [](const std::string& algorithm, const IndependenceModel& model, const py::object& parameter) {
            LearnResult r = learn(parse_algorithm(algorithm), model, optional_parameter(parameter));
            return py::make_tuple(r.graph, r.tests_used);
        },
        py::arg("algorithm"), py::arg("model"), py::arg("parameter") = py::none(),
        "Returns (graph, tests_used)");

    m.def(
        "sample_var_system",
        [](const DirectedMixedGraph& g, std::uint64_t seed) {
            Rng rng(seed);
            return sample_var_system(g, rng).system.coefficients;
        },
        py::arg("graph"), py::arg("seed"));
    m.def(
        "simulate_var",
        [](const Eigen::MatrixXd& a, std::size_t t, std::uint64_t seed, std::size_t burn_in) {
            Rng rng(seed);
            return simulate_var(VarSystem{a, 1.0}, t, rng, burn_in);
        },
        py::arg("coefficients"), py::arg("t"), py::arg("seed"), py::arg("burn_in") = 100);
    m.def("spectral_radius", &spectral_radius);

    m.def(
        "run_comparison",
        [](const std::vector<std::size_t>& n, std::size_t m_reps, std::size_t t, const std::vector<double>& thresholds,
           const std::vector<std::string>& algorithms, std::uint64_t seed, bool oracle, bool partial,
           std::optional<std::size_t> u_max, std::size_t threads) {
            const ExperimentConfig cfg = make_config(n, m_reps, t, thresholds, algorithms, seed, oracle, u_max, threads);
            ExperimentResult result;
            {
                py::gil_scoped_release release;
                result = partial ? run_partial_observation(cfg) : run_comparison(cfg);
            }
            py::list out;
            for (const auto& r : result.records) out.append(record_dict(r));
            return out;
        },
        py::arg("n") = std::vector<std::size_t>{5}, py::arg("m") = 100, py::arg("t") = 100,
        py::arg("thresholds") = std::vector<double>{0.01, 0.05, 0.1},
        py::arg("algorithms") = std::vector<std::string>{"cm", "cs", "ca", "dsgs"}, py::arg("seed") = 1,
        py::arg("oracle") = false, py::arg("partial") = false, py::arg("u_max") = py::none(), py::arg("threads") = 1,
        "Experiment records as a list of dicts");
}

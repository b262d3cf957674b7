#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aklt/reports.hpp"

namespace py = pybind11;
using namespace aklt;

namespace {

Vec3 to_vec3(const std::array<double, 3>& a) { return Vec3{a[0], a[1], a[2]}; }

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges,
                 const std::map<int, int>& spins) {
    std::map<int, Spin> ov;
    for (auto [v, tw] : spins) ov.emplace(v, Spin(tw));
    return Graph(n, edges, ov);
}

py::dict report_to_dict(const ProtocolReport& rep) {
    py::dict d;
    d["nu"] = rep.nu;
    d["p"] = rep.p;
    d["gamma"] = rep.gamma;
    d["s_graph"] = rep.s_graph;
    d["s_e"] = spin_to_string(rep.s_e);
    d["nu_bond_se"] = rep.nu_se;
    d["homogeneous"] = rep.homogeneous;
    if (rep.homogeneous) d["lambda"] = rep.lambda;
    if (rep.bound_thm4) d["bound_matching"] = *rep.bound_thm4;
    if (rep.bound_thm4_design) d["bound_matching_design"] = *rep.bound_thm4_design;
    if (rep.bound_thm5) d["bound_coloring"] = *rep.bound_thm5;
    if (rep.bound_thm5_design) d["bound_coloring_design"] = *rep.bound_thm5_design;
    if (rep.samples)
        d["tests_required"] = *rep.samples;
    else
        d["tests_required"] = py::none();
    return d;
}

PChoice parse_pchoice(const std::string& p) {
    if (p == "uniform") return PChoice::Uniform;
    if (p == "optimal") return PChoice::Optimal;
    if (p == "sizes") return PChoice::SizeWeighted;
    throw validation_error("p must be uniform|optimal|sizes (or pass a list)");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "verification protocols for AKLT states on graphs";
    m.attr("__version__") = kToolVersion;

    py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<guard_error>(m, "GuardError", PyExc_RuntimeError);

    py::class_<Spin>(m, "Spin")
        .def(py::init<int>(), py::arg("twice"))
        .def_readonly("twice", &Spin::twice)
        .def_property_readonly("value", &Spin::value)
        .def_property_readonly("dim", &Spin::dim)
        .def("__repr__", [](Spin s) { return "Spin(" + spin_to_string(s) + ")"; });
    m.def("parse_spin", &parse_spin);

    py::class_<Graph>(m, "Graph")
        .def(py::init(&make_graph), py::arg("n"), py::arg("edges"),
             py::arg("spins") = std::map<int, int>{})
        .def_readonly("n", &Graph::n)
        .def_readonly("edges", &Graph::edges)
        .def("degree", &Graph::degree)
        .def("spin", &Graph::spin)
        .def_property_readonly("hilbert_dim", &Graph::hilbert_dim)
        .def("__repr__", [](const Graph& g) {
            return "Graph(n=" + std::to_string(g.n) + ", edges=" +
                   std::to_string(g.edges.size()) + ")";
        });
    m.def("catalog", &catalog, py::arg("name"));
    m.def("degree_data", [](const Graph& g) {
        auto d = degree_data(g);
        py::dict out;
        out["degrees"] = d.degrees;
        out["delta"] = d.delta;
        out["s_e"] = spin_to_string(d.s_e_max);
        out["g"] = d.g_overlap;
        return out;
    });
    m.def("enumerate_matchings", [](const Graph& g) {
        auto e = enumerate_matchings(g);
        py::dict out;
        out["matching_number"] = e.matching_number;
        out["maximal"] = e.maximal;
        out["maximum"] = e.maximum;
        return out;
    });
    m.def("edge_colorings", [](const Graph& g) {
        auto c = edge_colorings(g);
        py::dict out;
        out["chromatic_index"] = c.chromatic_index;
        out["optimal"] = c.optimal;
        out["trivial"] = c.trivial;
        return out;
    });
    m.def("chromatic_number", &chromatic_number);
    m.def("cycle_matching_covers", &cycle_matching_covers, py::arg("n"), py::arg("m"));

    m.def("spin_operators", [](const std::string& s) {
        auto ops = spin_operators(parse_spin(s));
        return py::make_tuple(ops[0], ops[1], ops[2]);
    });
    m.def("spin_along",
          [](const std::string& s, std::array<double, 3> r) {
              return spin_along(parse_spin(s), to_vec3(r));
          });
    m.def("spin_eigenprojector",
          [](const std::string& s, int twice_m, std::array<double, 3> r) {
              return spin_eigenprojector(parse_spin(s), twice_m, to_vec3(r));
          });
    m.def("eigenstate_fidelity",
          [](const std::string& s, std::array<double, 3> r, std::array<double, 3> t, int sr,
             int ss) { return eigenstate_fidelity(parse_spin(s), to_vec3(r), to_vec3(t), sr, ss); });
    m.def("max_spin_projector", [](const std::string& s1, const std::string& s2) {
        return max_spin_projector(parse_spin(s1), parse_spin(s2));
    });
    m.def("pair_outcome_probability",
          [](const std::string& s1, int tm1, const std::string& s2, int tm2,
             std::array<double, 3> r, std::array<double, 3> t) {
              return pair_outcome_probability(parse_spin(s1), tm1, parse_spin(s2), tm2,
                                              to_vec3(r), to_vec3(t));
          });

    py::class_<SphereDistribution>(m, "SphereDistribution")
        .def_readonly("name", &SphereDistribution::name)
        .def_readonly("isotropic", &SphereDistribution::isotropic)
        .def_property_readonly("points",
                               [](const SphereDistribution& mu) {
                                   std::vector<std::tuple<double, double, double, double>> out;
                                   for (const auto& p : mu.points)
                                       out.push_back({p.v.x, p.v.y, p.v.z, p.w});
                                   return out;
                               })
        .def("__repr__", [](const SphereDistribution& mu) {
            return "SphereDistribution(" + mu.name + ")";
        });
    m.def("builtin_distribution", &builtin_distribution);
    m.def("symmetrize", &symmetrize);
    m.def("frame_potential", &frame_potential);
    m.def("design_strength", &design_strength);
    m.def("distinct_test_count", &distinct_test_count);

    m.def("spectral_gap", [](const Graph& g) { return spectral_gap(g); });
    m.def("ground_space", [](const Graph& g) {
        auto gs = ground_space(g);
        py::dict out;
        out["energy"] = gs.energy;
        out["degeneracy"] = gs.degeneracy;
        out["basis"] = gs.basis;
        return out;
    });
    m.def("chain_graph",
          [](const std::string& kind, int n) { return chain_graph(parse_chain_kind(kind), n); });
    m.def("knabe_bound", &knabe_bound);
    m.def("gosset_mozgunov_bound", &gosset_mozgunov_bound);

    m.def("canonical_test", [](const std::string& s1, const std::string& s2,
                               std::array<double, 3> r) {
        return canonical_test(parse_spin(s1), parse_spin(s2), to_vec3(r));
    });
    m.def("bond_gap", [](const std::string& s1, const std::string& s2,
                         const std::string& mu_name) {
        return bond_operator(parse_spin(s1), parse_spin(s2), resolve_distribution(mu_name)).gap;
    });
    m.def("nu_s", [](const std::string& s, const std::string& mu_name) {
        return nu_S(parse_spin(s), resolve_distribution(mu_name));
    });

    m.def("s_of_triple", [](const std::string& s1, const std::string& s2, const std::string& s3) {
        return s_of_triple(parse_spin(s1), parse_spin(s2), parse_spin(s3));
    });
    m.def("s_of_graph", &s_of_graph);
    m.def("sample_count", [](double nu, double eps, double delta) -> py::object {
        auto n = sample_count(nu, eps, delta);
        if (!n) return py::none();
        return py::cast(*n);
    });

    m.def("resolve_cover", &resolve_cover, py::arg("graph"), py::arg("kind"));
    m.def(
        "evaluate_protocol",
        [](const Graph& g, const std::string& mu, const std::string& cover, const std::string& p,
           double eps, double delta) {
            auto dist = resolve_distribution(mu);
            auto cov = resolve_cover(g, cover);
            return report_to_dict(evaluate_protocol(g, dist, cov, parse_pchoice(p), {}, eps, delta));
        },
        py::arg("graph"), py::arg("mu") = "mu32", py::arg("cover") = "optimal",
        py::arg("p") = "uniform", py::arg("epsilon") = kDefaultEpsilon,
        py::arg("delta") = kDefaultDelta);
    m.def("optimize_probabilities",
          [](const Graph& g, const std::string& mu, const std::string& cover) {
              auto res = optimize_probabilities(g, resolve_distribution(mu),
                                                resolve_cover(g, cover));
              py::dict out;
              out["p"] = res.p;
              out["nu"] = res.nu;
              out["converged"] = res.converged;
              out["iterations"] = res.iterations;
              return out;
          });
    m.def("protocol_gap",
          [](const Graph& g, const std::string& mu, const std::string& cover,
             const std::vector<double>& p) {
              auto cov = resolve_cover(g, cover);
              std::vector<double> probs = p;
              if (probs.empty()) probs.assign(cov.size(), 1.0 / cov.size());
              ProtocolSpec spec{g, resolve_distribution(mu), cov, probs};
              return protocol_gap(spec);
          },
          py::arg("graph"), py::arg("mu") = "mu32", py::arg("cover") = "optimal",
          py::arg("p") = std::vector<double>{});

    m.def(
        "simulate",
        [](const Graph& g, const std::string& mu, const std::string& cover,
           const std::string& noise, std::uint64_t runs, std::uint64_t seed) {
            auto cov = resolve_cover(g, cover);
            std::vector<double> probs(cov.size(), 1.0 / cov.size());
            ProtocolSpec spec{g, resolve_distribution(mu), cov, probs};
            Simulator sim(spec, NoisyStateModel::parse(noise));
            auto res = sim.run(runs, seed);
            py::dict out;
            out["n_runs"] = res.n_runs;
            out["n_pass"] = res.n_pass;
            out["pass_rate"] = res.pass_rate;
            out["std_error"] = res.std_error;
            out["seed"] = res.seed;
            out["exact_pass_probability"] = sim.exact_pass_probability();
            return out;
        },
        py::arg("graph"), py::arg("mu") = "mu32", py::arg("cover") = "optimal",
        py::arg("noise") = "target", py::arg("runs") = 10000, py::arg("seed") = 1);

    m.def("render_table", &render_table);
}

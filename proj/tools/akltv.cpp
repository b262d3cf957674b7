// akltv: construct, analyze, optimize, and simulate verification protocols
// for AKLT states on graphs.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "aklt/reports.hpp"

namespace {

using nlohmann::ordered_json;

void emit(const ordered_json& doc, const std::string& out_path) {
    std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw aklt::validation_error("cannot write to " + out_path);
        out << text;
    }
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw aklt::validation_error("cannot write to " + out_path);
        out << text;
    }
}

ordered_json report_head(const std::string& command) {
    ordered_json doc;
    doc["tool"] = "akltv";
    doc["version"] = aklt::kToolVersion;
    doc["command"] = command;
    return doc;
}

ordered_json gap_json(double x) {
    ordered_json j;
    j["value"] = x;
    if (auto r = aklt::detect_rational(x))
        j["rational"] = std::to_string(r->num) + "/" + std::to_string(r->den);
    return j;
}

ordered_json protocol_report_json(const aklt::ProtocolReport& rep) {
    ordered_json j;
    j["nu"] = gap_json(rep.nu);
    j["p"] = rep.p;
    j["gamma"] = gap_json(rep.gamma);
    j["s_graph"] = rep.s_graph;
    j["s_e"] = aklt::spin_to_string(rep.s_e);
    j["nu_bond_se"] = gap_json(rep.nu_se);
    j["homogeneous"] = rep.homogeneous;
    if (rep.homogeneous) j["lambda"] = rep.lambda;
    if (rep.bound_thm4) j["bound_matching"] = *rep.bound_thm4;
    if (rep.bound_thm4_design) j["bound_matching_design"] = *rep.bound_thm4_design;
    if (rep.bound_thm5) j["bound_coloring"] = *rep.bound_thm5;
    if (rep.bound_thm5_design) j["bound_coloring_design"] = *rep.bound_thm5_design;
    j["epsilon"] = rep.epsilon;
    j["delta"] = rep.delta;
    if (rep.samples)
        j["tests_required"] = *rep.samples;
    else
        j["tests_required"] = "inf";
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification protocols for AKLT states on graphs"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "write output to a file instead of stdout");

    // ---- gap ----
    auto* gap_cmd = app.add_subcommand("gap", "spectral gap of an AKLT Hamiltonian");
    std::string gap_chain, gap_catalog, gap_graph;
    int gap_n = 0;
    bool gap_bounds = false;
    gap_cmd->add_option("--chain", gap_chain, "chain kind: closed|open|openh1|open11");
    gap_cmd->add_option("--n", gap_n, "chain length");
    gap_cmd->add_option("--catalog", gap_catalog, "catalog graph name");
    gap_cmd->add_option("--graph", gap_graph, "graph file (JSON or edge list)");
    gap_cmd->add_flag("--bounds", gap_bounds, "include Knabe / Gosset-Mozgunov bounds");

    // ---- bond ----
    auto* bond_cmd = app.add_subcommand("bond", "bond verification gap nu_S(mu)");
    std::string bond_mu = "mu32", bond_s, bond_s1, bond_s2;
    bond_cmd->add_option("--mu", bond_mu, "distribution name or file");
    bond_cmd->add_option("--S", bond_s, "total spin, e.g. 2 or 7/2");
    bond_cmd->add_option("--S1", bond_s1, "first spin of the pair");
    bond_cmd->add_option("--S2", bond_s2, "second spin of the pair");

    // ---- protocol ----
    auto* proto_cmd = app.add_subcommand("protocol", "evaluate a verification protocol");
    std::string pr_catalog, pr_graph, pr_mu = "mu32", pr_cover = "optimal", pr_p = "uniform",
                pr_spec;
    double pr_eps = aklt::kDefaultEpsilon, pr_delta = aklt::kDefaultDelta;
    proto_cmd->add_option("--catalog", pr_catalog, "catalog graph name");
    proto_cmd->add_option("--graph", pr_graph, "graph file");
    proto_cmd->add_option("--mu", pr_mu, "distribution name or file");
    proto_cmd->add_option("--cover,--coloring", pr_cover,
                          "trivial|optimal|maximal|Mn|M<k>");
    proto_cmd->add_option("--p", pr_p, "uniform|optimal|sizes|comma list");
    proto_cmd->add_option("--spec", pr_spec, "protocol spec JSON file");
    proto_cmd->add_option("--epsilon", pr_eps, "target infidelity");
    proto_cmd->add_option("--delta", pr_delta, "significance level");

    // ---- tables ----
    auto* tables_cmd = app.add_subcommand("tables", "regenerate a paper table as CSV");
    std::string which;
    int tab_nmax = 10;
    tables_cmd->add_option("which", which, "I|II|III|IV|V")->required();
    tables_cmd->add_option("--nmax", tab_nmax, "chain-length cap for tables I and IV");

    // ---- simulate ----
    auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo protocol runs");
    std::string sm_catalog, sm_graph, sm_mu = "mu32", sm_cover = "optimal", sm_p = "uniform",
                sm_spec, sm_noise = "target";
    std::uint64_t sm_runs = 10000, sm_seed = 1;
    sim_cmd->add_option("--catalog", sm_catalog, "catalog graph name");
    sim_cmd->add_option("--graph", sm_graph, "graph file");
    sim_cmd->add_option("--mu", sm_mu, "distribution name or file");
    sim_cmd->add_option("--cover,--coloring", sm_cover, "trivial|optimal|maximal|Mn|M<k>");
    sim_cmd->add_option("--p", sm_p, "uniform|optimal|sizes|comma list");
    sim_cmd->add_option("--spec", sm_spec, "protocol spec JSON file");
    sim_cmd->add_option("--noise", sm_noise, "target|depolarize:EPS|ranktwo:EPS");
    sim_cmd->add_option("--runs", sm_runs, "number of runs");
    sim_cmd->add_option("--seed", sm_seed, "RNG seed");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);

        std::string cmdline;
        for (int i = 0; i < argc; ++i) cmdline += std::string(i ? " " : "") + argv[i];

        if (*gap_cmd) {
            ordered_json doc = report_head(cmdline);
            if (!gap_chain.empty()) {
                if (gap_n < 2) throw aklt::validation_error("--chain needs --n");
                if (gap_n > 10) throw aklt::guard_error("chain gaps limited to n <= 10");
                auto kind = aklt::parse_chain_kind(gap_chain);
                auto row = aklt::chain_gap(kind, gap_n, gap_bounds || gap_n > 2);
                doc["inputs"] = {{"chain", gap_chain}, {"n", gap_n}};
                doc["outputs"]["gamma"] = gap_json(row.gamma);
                if (row.knabe) doc["outputs"]["knabe_c_n"] = *row.knabe;
                if (row.gosset_mozgunov)
                    doc["outputs"]["gosset_mozgunov_c_n"] = *row.gosset_mozgunov;
            } else {
                aklt::Graph g = !gap_catalog.empty() ? aklt::resolve_graph(gap_catalog)
                                                     : aklt::resolve_graph(gap_graph);
                doc["inputs"] = {{"graph", !gap_catalog.empty() ? gap_catalog : gap_graph}};
                doc["outputs"]["hilbert_dim"] = g.hilbert_dim();
                doc["outputs"]["gamma"] = gap_json(aklt::spectral_gap(g));
            }
            emit(doc, out_path);
            return 0;
        }

        if (*bond_cmd) {
            ordered_json doc = report_head(cmdline);
            auto mu = aklt::resolve_distribution(bond_mu);
            aklt::Spin s_total;
            if (!bond_s.empty()) {
                s_total = aklt::parse_spin(bond_s);
            } else if (!bond_s1.empty() && !bond_s2.empty()) {
                s_total = aklt::Spin(aklt::parse_spin(bond_s1).twice +
                                     aklt::parse_spin(bond_s2).twice);
            } else {
                throw aklt::validation_error("bond needs --S or --S1/--S2");
            }
            if (s_total.twice > 8) throw aklt::guard_error("bond gaps tabulated for S <= 4");
            if (s_total.twice == 0) throw aklt::validation_error("total spin must be positive");
            doc["inputs"] = {{"mu", bond_mu}, {"S", aklt::spin_to_string(s_total)}};
            doc["outputs"]["nu"] = gap_json(aklt::nu_S(s_total, mu));
            if (mu.isotropic) {
                doc["outputs"]["vertices"] = "inf";
                doc["outputs"]["tests"] = "inf";
                doc["outputs"]["design_strength"] = "inf";
            } else {
                doc["outputs"]["vertices"] = mu.points.size();
                doc["outputs"]["tests"] = aklt::distinct_test_count(mu);
                doc["outputs"]["design_strength"] = aklt::design_strength(mu);
            }
            emit(doc, out_path);
            return 0;
        }

        auto build_file_spec = [](const std::string& spec_path, const std::string& cat,
                                  const std::string& graph_file, const std::string& mu_ref,
                                  const std::string& cover_ref,
                                  const std::string& p_ref) -> aklt::ProtocolFileSpec {
            if (!spec_path.empty()) {
                std::ifstream in(spec_path);
                if (!in) throw aklt::validation_error("cannot open file: " + spec_path);
                std::ostringstream ss;
                ss << in.rdbuf();
                return aklt::parse_protocol_spec_text(ss.str());
            }
            aklt::ProtocolFileSpec spec;
            spec.graph_label = !cat.empty() ? cat : graph_file;
            if (spec.graph_label.empty())
                throw aklt::validation_error("need --catalog, --graph, or --spec");
            spec.graph = aklt::resolve_graph(spec.graph_label);
            spec.mu = aklt::resolve_distribution(mu_ref);
            spec.cover_label = cover_ref;
            spec.cover = aklt::resolve_cover(spec.graph, cover_ref);
            if (p_ref == "uniform") {
                spec.pchoice = aklt::PChoice::Uniform;
            } else if (p_ref == "optimal") {
                spec.pchoice = aklt::PChoice::Optimal;
            } else if (p_ref == "sizes") {
                spec.pchoice = aklt::PChoice::SizeWeighted;
            } else {
                spec.pchoice = aklt::PChoice::Explicit;
                std::istringstream ps(p_ref);
                std::string tok;
                while (std::getline(ps, tok, ',')) spec.explicit_p.push_back(std::stod(tok));
            }
            return spec;
        };

        if (*proto_cmd) {
            ordered_json doc = report_head(cmdline);
            auto spec = build_file_spec(pr_spec, pr_catalog, pr_graph, pr_mu, pr_cover, pr_p);
            auto rep = aklt::evaluate_protocol(spec.graph, spec.mu, spec.cover, spec.pchoice,
                                               spec.explicit_p, pr_eps, pr_delta);
            doc["inputs"] = {{"graph", spec.graph_label},
                             {"mu", spec.mu.name},
                             {"cover", spec.cover_label},
                             {"p", pr_p}};
            doc["outputs"] = protocol_report_json(rep);
            emit(doc, out_path);
            return 0;
        }

        if (*tables_cmd) {
            if (which == "I" || which == "1")
                emit_text(aklt::render_table1(tab_nmax), out_path);
            else if (which == "IV" || which == "4")
                emit_text(aklt::render_table4(tab_nmax), out_path);
            else
                emit_text(aklt::render_table(which), out_path);
            return 0;
        }

        if (*sim_cmd) {
            ordered_json doc = report_head(cmdline);
            auto spec = build_file_spec(sm_spec, sm_catalog, sm_graph, sm_mu, sm_cover, sm_p);
            std::vector<double> p;
            const int m = static_cast<int>(spec.cover.size());
            switch (spec.pchoice) {
                case aklt::PChoice::Uniform:
                    p.assign(m, 1.0 / m);
                    break;
                case aklt::PChoice::SizeWeighted: {
                    double total = 0;
                    for (const auto& mm : spec.cover) total += mm.size();
                    for (const auto& mm : spec.cover) p.push_back(mm.size() / total);
                    break;
                }
                case aklt::PChoice::Optimal:
                    p = aklt::optimize_probabilities(spec.graph, spec.mu, spec.cover).p;
                    break;
                case aklt::PChoice::Explicit:
                    p = spec.explicit_p;
                    break;
            }
            aklt::ProtocolSpec pspec{spec.graph, spec.mu, spec.cover, p};
            auto noise = aklt::NoisyStateModel::parse(sm_noise);
            aklt::Simulator sim(pspec, noise);
            auto res = sim.run(sm_runs, sm_seed);
            doc["inputs"] = {{"graph", spec.graph_label}, {"mu", spec.mu.name},
                             {"cover", spec.cover_label}, {"noise", noise.describe()},
                             {"runs", sm_runs}};
            doc["seed"] = sm_seed;
            doc["rng"] = aklt::Philox::name();
            doc["outputs"]["n_runs"] = res.n_runs;
            doc["outputs"]["n_pass"] = res.n_pass;
            doc["outputs"]["pass_rate"] = res.pass_rate;
            doc["outputs"]["std_error"] = res.std_error;
            doc["outputs"]["exact_pass_probability"] = sim.exact_pass_probability();
            emit(doc, out_path);
            return 0;
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    } catch (const aklt::guard_error& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return 3;
    } catch (const aklt::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}

#include "aklt/reports.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace aklt {

std::string format_gap(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", x);
    std::string out = buf;
    if (auto r = detect_rational(x)) {
        if (r->den > 1)
            out += "(" + std::to_string(r->num) + "/" + std::to_string(r->den) + ")";
        else
            out += "(" + std::to_string(r->num) + ")";
    }
    return out;
}

ChainGapRow chain_gap(ChainKind kind, int n, bool with_bounds) {
    ChainGapRow row;
    row.kind = kind;
    row.n = n;
    row.gamma = spectral_gap(chain_graph(kind, n));
    if (with_bounds && n > 2) {
        double gamma11 = (kind == ChainKind::OpenOneOne)
                             ? row.gamma
                             : spectral_gap(chain_graph(ChainKind::OpenOneOne, n));
        row.knabe = knabe_bound(gamma11, n);
        row.gosset_mozgunov = gosset_mozgunov_bound(gamma11, n);
    }
    return row;
}

ProtocolReport evaluate_protocol(const Graph& g, const SphereDistribution& mu,
                                 const MatchingCover& cover, PChoice pchoice,
                                 std::vector<double> explicit_p, double epsilon, double delta) {
    ProtocolReport rep;
    rep.epsilon = epsilon;
    rep.delta = delta;
    const int m = static_cast<int>(cover.size());
    std::vector<double> p;
    switch (pchoice) {
        case PChoice::Uniform:
            p.assign(m, 1.0 / m);
            break;
        case PChoice::SizeWeighted: {
            double total = 0;
            for (const auto& mm : cover) total += mm.size();
            for (const auto& mm : cover) p.push_back(mm.size() / total);
            break;
        }
        case PChoice::Optimal: {
            auto opt = optimize_probabilities(g, mu, cover);
            p = opt.p;
            break;
        }
        case PChoice::Explicit: {
            p = std::move(explicit_p);
            double total = 0;
            for (double x : p) total += x;
            if (std::abs(total - 1.0) > 1e-9)
                throw validation_error("explicit probabilities must sum to 1");
            break;
        }
    }

    ProtocolSpec spec{g, mu, cover, p};
    spec.validate();
    rep.p = p;
    Vector psi = aklt_ground_state(g);
    ProtocolOperator op(g, mu, cover, p);
    rep.nu = protocol_gap(op, psi);

    auto dd = degree_data(g);
    rep.s_e = dd.s_e_max;
    rep.nu_se = nu_S(dd.s_e_max, mu);
    rep.gamma = spectral_gap(g);
    rep.s_graph = s_of_graph(g);
    rep.samples = sample_count(rep.nu, epsilon, delta);

    const bool is_design = design_strength(symmetrize(mu)) >= dd.s_e_max.twice;
    if (pchoice == PChoice::Uniform || pchoice == PChoice::Optimal) {
        auto b4 = theorem4_bound(rep.nu_se, rep.gamma, rep.s_graph, dd.g_overlap, m);
        if (b4.applicable) {
            rep.bound_thm4 = b4.main;
            if (is_design) rep.bound_thm4_design = b4.design_main;
        }
    }
    bool size_weighted_ok = pchoice == PChoice::SizeWeighted || pchoice == PChoice::Optimal;
    if (pchoice == PChoice::Uniform) {
        // uniform == size-weighted when all classes are the same size
        std::size_t s0 = cover.front().size();
        size_weighted_ok = std::all_of(cover.begin(), cover.end(),
                                       [&](const Matching& mm) { return mm.size() == s0; });
    }
    if (size_weighted_ok && is_edge_coloring(g, cover)) {
        std::vector<int> sizes;
        for (const auto& mm : cover) sizes.push_back(static_cast<int>(mm.size()));
        auto b5 = theorem5_bound(rep.nu_se, rep.gamma, static_cast<int>(g.edges.size()),
                                 dd.s_e_max, sizes);
        rep.bound_thm5 = b5.main;
        if (is_design) rep.bound_thm5_design = b5.design;
    }

    if (op.dim() <= kDenseDimGuard && op.dim() <= 1024) {
        auto [flag, lambda] = homogeneity_check(op.dense(), psi);
        rep.homogeneous = flag;
        rep.lambda = lambda;
    }
    return rep;
}

// -------------------------------------------------------------------- tables

std::string render_table1(int n_max) {
    if (n_max < 3 || n_max > 10) throw validation_error("table I covers n = 3..10");
    std::ostringstream out;
    out << "quantity";
    for (int n = 3; n <= n_max; ++n) out << ",n=" << n;
    out << "\n";
    const ChainKind kinds[4] = {ChainKind::OpenHalfHalf, ChainKind::OpenHalfOne,
                                ChainKind::OpenOneOne, ChainKind::Closed};
    const char* labels[4] = {"gamma_H_half_half", "gamma_H_half_one", "gamma_H_one_one",
                             "gamma_H_ring"};
    std::vector<double> gamma11(n_max + 1, 0.0);
    for (int k = 0; k < 4; ++k) {
        out << labels[k];
        for (int n = 3; n <= n_max; ++n) {
            double g = spectral_gap(chain_graph(kinds[k], n));
            if (kinds[k] == ChainKind::OpenOneOne) gamma11[n] = g;
            out << "," << format_gap(g);
        }
        out << "\n";
    }
    out << "knabe_c_n";
    for (int n = 3; n <= n_max; ++n) out << "," << format_gap(knabe_bound(gamma11[n], n));
    out << "\n";
    out << "gosset_mozgunov_c_n";
    for (int n = 3; n <= n_max; ++n)
        out << "," << format_gap(gosset_mozgunov_bound(gamma11[n], n));
    out << "\n";
    return out.str();
}

std::string render_table2() {
    std::ostringstream out;
    out << "distribution,vertices,tests,design_strength";
    for (int ts = 2; ts <= 8; ++ts) out << ",nu_" << spin_to_string(Spin(ts));
    out << "\n";
    for (const auto& name : builtin_distribution_names()) {
        SphereDistribution mu = builtin_distribution(name);
        out << name;
        if (mu.isotropic) {
            out << ",inf,inf,inf";
        } else {
            int strength = design_strength(mu);
            out << "," << mu.points.size() << "," << distinct_test_count(mu) << "," << strength;
        }
        for (int ts = 2; ts <= 8; ++ts) out << "," << format_gap(nu_S(Spin(ts), mu));
        out << "\n";
    }
    return out.str();
}

std::string render_table3() {
    std::ostringstream out;
    out << "s1,s3";
    for (int ts2 = 1; ts2 <= 6; ++ts2) out << ",s2=" << spin_to_string(Spin(ts2));
    out << "\n";
    for (int ts1 = 1; ts1 <= 6; ++ts1)
        for (int ts3 = ts1; ts3 <= 6; ++ts3) {
            out << spin_to_string(Spin(ts1)) << "," << spin_to_string(Spin(ts3));
            for (int ts2 = 1; ts2 <= 6; ++ts2) {
                double s = s_of_triple(Spin(ts1), Spin(ts2), Spin(ts3));
                out << "," << format_gap(s * s);
            }
            out << "\n";
        }
    return out.str();
}

std::string render_table4(int n_max) {
    if (n_max < 3 || n_max > 10) throw validation_error("table IV covers n = 3..10");
    std::ostringstream out;
    out << "chain";
    for (int n = 3; n <= n_max; ++n) out << ",n=" << n;
    out << "\n";
    for (bool closed : {true, false}) {
        out << (closed ? "closed" : "open");
        for (int n = 3; n <= n_max; ++n) {
            Graph g = catalog((closed ? "chain-closed-" : "chain-open-") + std::to_string(n));
            auto en = enumerate_matchings(g);
            out << ",(" << en.matching_number << ";" << en.maximal.size() << ";"
                << en.maximum.size() << ")";
        }
        out << "\n";
    }
    return out.str();
}

std::string render_table5(int row_min, int row_max) {
    if (row_min < 1 || row_max > 30 || row_min > row_max)
        throw validation_error("table V rows run 1..30");
    std::ostringstream out;
    out << "no,vertices,edges,delta,matching_number,chromatic_number,chromatic_index,"
           "dim_h,gamma,nu_trivial,nu_optimal,nu_optimized,p_optimized\n";
    SphereDistribution mu = builtin_distribution("mu32");
    for (int k = row_min; k <= row_max; ++k) {
        Graph g = catalog("atlas-" + std::to_string(k));
        auto dd = degree_data(g);
        auto en = enumerate_matchings(g);
        auto col = edge_colorings(g);
        double gamma = spectral_gap(g);
        Vector psi = aklt_ground_state(g);

        ProtocolOperator tri(g, mu, col.trivial,
                             std::vector<double>(col.trivial.size(), 1.0 / col.trivial.size()));
        double nu_tri = protocol_gap(tri, psi);
        ProtocolOperator opt(g, mu, col.optimal,
                             std::vector<double>(col.optimal.size(), 1.0 / col.optimal.size()));
        double nu_opt = protocol_gap(opt, psi);
        auto best = optimize_probabilities(g, mu, col.optimal);

        out << k << "," << g.n << "," << g.edges.size() << "," << dd.delta << ","
            << en.matching_number << "," << chromatic_number(g) << "," << col.chromatic_index
            << "," << g.hilbert_dim() << "," << format_gap(gamma) << "," << format_gap(nu_tri)
            << "," << format_gap(nu_opt) << "," << format_gap(best.nu) << ",";
        for (std::size_t i = 0; i < best.p.size(); ++i) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.4f", best.p[i]);
            out << (i ? ";" : "") << buf;
        }
        out << "\n";
    }
    return out.str();
}

std::string render_table(const std::string& which) {
    if (which == "I" || which == "1") return render_table1();
    if (which == "II" || which == "2") return render_table2();
    if (which == "III" || which == "3") return render_table3();
    if (which == "IV" || which == "4") return render_table4();
    if (which == "V" || which == "5") return render_table5();
    throw validation_error("unknown table: " + which + " (expected I..V)");
}

// ------------------------------------------------------------------- files

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

Graph resolve_graph(const std::string& ref) {
    if (ref.empty()) throw validation_error("empty graph reference");
    if (ref.front() == '{') return graph_from_json_text(ref);
    try {
        return catalog(ref);
    } catch (const validation_error&) {
        if (!std::filesystem::exists(ref)) throw;
    }
    std::string text = read_file(ref);
    auto nonspace = text.find_first_not_of(" \t\r\n");
    if (nonspace != std::string::npos && text[nonspace] == '{')
        return graph_from_json_text(text);
    return graph_from_edge_list_text(text);
}

SphereDistribution resolve_distribution(const std::string& ref) {
    if (ref.empty()) return builtin_distribution("mu32");
    if (ref.front() == '[') return distribution_from_json_text(ref);
    try {
        return builtin_distribution(ref);
    } catch (const validation_error&) {
        if (!std::filesystem::exists(ref)) throw;
    }
    return distribution_from_json_text(read_file(ref));
}

ProtocolFileSpec parse_protocol_spec_text(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("bad protocol spec JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("graph"))
        throw validation_error("protocol spec needs a \"graph\" field");
    ProtocolFileSpec spec;
    if (j.at("graph").is_string()) {
        spec.graph_label = j.at("graph").get<std::string>();
        spec.graph = resolve_graph(spec.graph_label);
    } else {
        spec.graph_label = "inline";
        spec.graph = graph_from_json_text(j.at("graph").dump());
    }
    spec.mu = j.contains("mu") && j.at("mu").is_string()
                  ? resolve_distribution(j.at("mu").get<std::string>())
                  : (j.contains("mu") ? distribution_from_json_text(j.at("mu").dump())
                                      : builtin_distribution("mu32"));
    if (!j.contains("cover") || j.at("cover").is_string()) {
        spec.cover_label = j.contains("cover") ? j.at("cover").get<std::string>() : "trivial";
        spec.cover = resolve_cover(spec.graph, spec.cover_label);
    } else {
        spec.cover_label = "explicit";
        for (const auto& m : j.at("cover")) {
            Matching match;
            for (const auto& idx : m) {
                int i = idx.get<int>();
                if (i < 0 || i >= static_cast<int>(spec.graph.edges.size()))
                    throw validation_error("edge index out of range in cover");
                match.push_back(spec.graph.edges[i]);
            }
            spec.cover.push_back(match);
        }
    }
    if (!j.contains("p") || (j.at("p").is_string() && j.at("p") == "uniform")) {
        spec.pchoice = PChoice::Uniform;
    } else if (j.at("p").is_string() && j.at("p") == "optimal") {
        spec.pchoice = PChoice::Optimal;
    } else if (j.at("p").is_string() && j.at("p") == "sizes") {
        spec.pchoice = PChoice::SizeWeighted;
    } else if (j.at("p").is_array()) {
        spec.pchoice = PChoice::Explicit;
        for (const auto& x : j.at("p")) spec.explicit_p.push_back(x.get<double>());
    } else {
        throw validation_error("\"p\" must be uniform, optimal, sizes, or a list");
    }
    return spec;
}

}  // namespace aklt

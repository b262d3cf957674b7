#pragma once

#include <optional>
#include <string>

#include "aklt/protocol.hpp"
#include "aklt/simulate.hpp"

namespace aklt {

constexpr const char* kToolVersion = "0.1.0";
constexpr double kDefaultEpsilon = 0.01;
constexpr double kDefaultDelta = 0.01;

// "0.8333(5/6)": four decimals, plus the exact rational when one matches
// within 1e-9 with denominator <= 200.
std::string format_gap(double x);

// Chain-gap bundle behind the `gap --chain` command and the acceptance suite.
struct ChainGapRow {
    ChainKind kind;
    int n = 0;
    double gamma = 0;
    std::optional<double> knabe;             // c~_n from gamma(H11(n))
    std::optional<double> gosset_mozgunov;   // c_n
};
ChainGapRow chain_gap(ChainKind kind, int n, bool with_bounds);

// One evaluated verification protocol, as reported by the CLI.
struct ProtocolReport {
    double nu = 0;
    std::vector<double> p;
    bool homogeneous = false;
    double lambda = 0;  // valid when homogeneous
    std::optional<double> bound_thm4;
    std::optional<double> bound_thm4_design;
    std::optional<double> bound_thm5;
    std::optional<double> bound_thm5_design;
    std::optional<std::uint64_t> samples;  // nullopt = infinite
    double epsilon = kDefaultEpsilon, delta = kDefaultDelta;
    double gamma = 0;
    double s_graph = 0;
    double nu_se = 0;
    Spin s_e;
};

enum class PChoice { Uniform, SizeWeighted, Optimal, Explicit };

ProtocolReport evaluate_protocol(const Graph& g, const SphereDistribution& mu,
                                 const MatchingCover& cover, PChoice pchoice,
                                 std::vector<double> explicit_p = {},
                                 double epsilon = kDefaultEpsilon,
                                 double delta = kDefaultDelta);

// The five paper tables as CSV text, regenerated end to end.
std::string render_table1(int n_max = 10);
std::string render_table2();
std::string render_table3();
std::string render_table4(int n_max = 10);
std::string render_table5(int row_min = 1, int row_max = 30);
std::string render_table(const std::string& which);  // "I".."V" or "1".."5"

// spec text for a protocol: {"graph":..., "mu":..., "cover":..., "p":...}
struct ProtocolFileSpec {
    Graph graph;
    std::string graph_label;
    SphereDistribution mu;
    MatchingCover cover;
    PChoice pchoice = PChoice::Uniform;
    std::vector<double> explicit_p;
    std::string cover_label;
};
ProtocolFileSpec parse_protocol_spec_text(const std::string& json_text);

// Resolve "atlas-3" / file path / inline JSON into a graph.
Graph resolve_graph(const std::string& ref);
SphereDistribution resolve_distribution(const std::string& ref);

}  // namespace aklt

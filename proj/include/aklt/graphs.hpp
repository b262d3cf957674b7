#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "aklt/halfint.hpp"

namespace aklt {

using Edge = std::pair<int, int>;            // normalized u < v
using Matching = std::vector<Edge>;          // pairwise vertex-disjoint
using MatchingCover = std::vector<Matching>;  // union covers the edge set

// A simple connected undirected graph with an optional per-vertex spin
// assignment overriding the default deg(j)/2.
struct Graph {
    int n = 0;
    std::vector<Edge> edges;            // sorted, unique, loop-free
    std::map<int, Spin> spin_override;  // vertex -> spin

    Graph() = default;
    Graph(int n_vertices, std::vector<Edge> edge_list,
          std::map<int, Spin> overrides = {});

    int degree(int v) const;
    int max_degree() const;
    Spin spin(int v) const;  // override if present, else deg(v)/2
    std::vector<int> site_dims() const;
    std::int64_t hilbert_dim() const;
    int edge_index(const Edge& e) const;  // -1 if absent
    bool is_matching(const Matching& m) const;
};

struct DegreeData {
    std::vector<int> degrees;
    int delta = 0;       // Delta(G)
    Spin s_e_max;        // S_E = max over edges of S_j + S_k
    int g_overlap = 0;   // g = 2 S_E - 2
};

DegreeData degree_data(const Graph& g);

struct MatchingEnumeration {
    std::vector<Matching> maximal;
    std::vector<Matching> maximum;
    int matching_number = 0;  // upsilon(G)
};

// Exhaustive enumeration; guarded at 16 vertices.
MatchingEnumeration enumerate_matchings(const Graph& g);

struct EdgeColorings {
    int chromatic_index = 0;       // chi'(G)
    MatchingCover optimal;         // chi' disjoint matchings, lexicographic-first
    MatchingCover trivial;         // one class per edge
};

// Exact chromatic index by backtracking search starting at Delta(G) colors.
EdgeColorings edge_colorings(const Graph& g);

// The cyclic-shift maximum matchings M_1..M_m of the odd cycle C_n,
// M_j = {{j,j+1},{j+2,j+3},...} (vertices mod n, 0-based internally).
MatchingCover cycle_matching_covers(int n, int m);

// Built-in graphs: chain-open-N, chain-closed-N, chain-open11-N,
// chain-openh1-N, star-N, complete-N, atlas-K (K=1..30), and lattice patches
// triangular-RxC, kagome-RxC, squareoctagon-RxC.
Graph catalog(const std::string& name);

// Invariant columns of the atlas table, for cross-checking.
struct AtlasRow {
    int vertices, edges, delta, matching_number, chromatic_number, chromatic_index;
    std::int64_t hilbert_dim;
};
AtlasRow atlas_invariants(int k);  // k = 1..30

int chromatic_number(const Graph& g);  // exact, guarded at 16 vertices

// Parsers for the external graph formats (JSON object or "u v" lines).
Graph graph_from_json_text(const std::string& text);
Graph graph_from_edge_list_text(const std::string& text);
std::string graph_to_json_text(const Graph& g);

}  // namespace aklt

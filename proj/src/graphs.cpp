#include "aklt/graphs.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace aklt {

namespace {

constexpr int kMatchingVertexGuard = 16;

void check_connected(int n, const std::vector<Edge>& edges) {
    if (n <= 0) throw validation_error("graph needs at least one vertex");
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                stack.push_back(v);
            }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
        throw validation_error("graph is not connected");
}

}  // namespace

Graph::Graph(int n_vertices, std::vector<Edge> edge_list, std::map<int, Spin> overrides)
    : n(n_vertices), spin_override(std::move(overrides)) {
    for (auto& [u, v] : edge_list) {
        if (u == v) throw validation_error("loops are not allowed");
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw validation_error("edge endpoint out of range");
        if (u > v) std::swap(u, v);
    }
    std::sort(edge_list.begin(), edge_list.end());
    if (std::adjacent_find(edge_list.begin(), edge_list.end()) != edge_list.end())
        throw validation_error("duplicate edge");
    edges = std::move(edge_list);
    if (n > 1) check_connected(n, edges);
    for (auto& [v, s] : spin_override)
        if (v < 0 || v >= n) throw validation_error("spin override on unknown vertex");
}

int Graph::degree(int v) const {
    int d = 0;
    for (auto [a, b] : edges) d += (a == v) + (b == v);
    return d;
}

int Graph::max_degree() const {
    int d = 0;
    for (int v = 0; v < n; ++v) d = std::max(d, degree(v));
    return d;
}

Spin Graph::spin(int v) const {
    auto it = spin_override.find(v);
    if (it != spin_override.end()) return it->second;
    return Spin(degree(v));  // twice the default spin deg/2
}

std::vector<int> Graph::site_dims() const {
    std::vector<int> dims(n);
    for (int v = 0; v < n; ++v) dims[v] = spin(v).dim();
    return dims;
}

std::int64_t Graph::hilbert_dim() const {
    std::int64_t d = 1;
    for (int v = 0; v < n; ++v) d *= spin(v).dim();
    return d;
}

int Graph::edge_index(const Edge& e) const {
    Edge key{std::min(e.first, e.second), std::max(e.first, e.second)};
    auto it = std::lower_bound(edges.begin(), edges.end(), key);
    if (it == edges.end() || *it != key) return -1;
    return static_cast<int>(it - edges.begin());
}

bool Graph::is_matching(const Matching& m) const {
    std::set<int> used;
    for (auto& e : m) {
        if (edge_index(e) < 0) return false;
        if (used.count(e.first) || used.count(e.second)) return false;
        used.insert(e.first);
        used.insert(e.second);
    }
    return true;
}

DegreeData degree_data(const Graph& g) {
    DegreeData d;
    d.degrees.resize(g.n);
    for (int v = 0; v < g.n; ++v) {
        d.degrees[v] = g.degree(v);
        d.delta = std::max(d.delta, d.degrees[v]);
    }
    int best = 0;
    for (auto [u, v] : g.edges) best = std::max(best, g.spin(u).twice + g.spin(v).twice);
    d.s_e_max = Spin(best);
    d.g_overlap = best - 2;  // 2 S_E - 2 in integer form
    return d;
}

MatchingEnumeration enumerate_matchings(const Graph& g) {
    if (g.n > kMatchingVertexGuard)
        throw guard_error("matching enumeration limited to 16 vertices");
    MatchingEnumeration out;
    const auto& es = g.edges;
    std::vector<Edge> current;
    std::vector<char> used(g.n, 0);

    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
        if (idx == es.size()) {
            bool maximal = true;
            for (auto [u, v] : es)
                if (!used[u] && !used[v]) { maximal = false; break; }
            if (maximal) out.maximal.push_back(current);
            out.matching_number =
                std::max(out.matching_number, static_cast<int>(current.size()));
            return;
        }
        auto [u, v] = es[idx];
        if (!used[u] && !used[v]) {
            used[u] = used[v] = 1;
            current.push_back(es[idx]);
            rec(idx + 1);
            current.pop_back();
            used[u] = used[v] = 0;
        }
        rec(idx + 1);
    };
    rec(0);

    // second pass for maximum matchings (with the found upsilon)
    std::function<void(std::size_t)> rec2 = [&](std::size_t idx) {
        if (static_cast<int>(current.size()) == out.matching_number) {
            out.maximum.push_back(current);
            return;
        }
        if (idx == es.size()) return;
        auto [u, v] = es[idx];
        if (!used[u] && !used[v]) {
            used[u] = used[v] = 1;
            current.push_back(es[idx]);
            rec2(idx + 1);
            current.pop_back();
            used[u] = used[v] = 0;
        }
        rec2(idx + 1);
    };
    rec2(0);
    std::sort(out.maximal.begin(), out.maximal.end());
    std::sort(out.maximum.begin(), out.maximum.end());
    return out;
}

EdgeColorings edge_colorings(const Graph& g) {
    if (g.n > kMatchingVertexGuard)
        throw guard_error("edge coloring limited to 16 vertices");
    EdgeColorings out;
    const auto& es = g.edges;
    for (auto& e : es) out.trivial.push_back({e});

    const int ne = static_cast<int>(es.size());
    std::vector<std::vector<int>> adj(ne);
    for (int i = 0; i < ne; ++i)
        for (int j = 0; j < i; ++j) {
            bool share = es[i].first == es[j].first || es[i].first == es[j].second ||
                         es[i].second == es[j].first || es[i].second == es[j].second;
            if (share) { adj[i].push_back(j); adj[j].push_back(i); }
        }

    for (int k = std::max(1, g.max_degree()); ; ++k) {
        std::vector<int> color(ne, -1);
        std::function<bool(int)> bt = [&](int i) -> bool {
            if (i == ne) return true;
            int maxused = -1;
            for (int j = 0; j < i; ++j) maxused = std::max(maxused, color[j]);
            for (int c = 0; c < k; ++c) {
                bool clash = false;
                for (int j : adj[i])
                    if (color[j] == c) { clash = true; break; }
                if (!clash) {
                    color[i] = c;
                    if (bt(i + 1)) return true;
                    color[i] = -1;
                }
                if (c > maxused) break;  // new colors are interchangeable
            }
            return false;
        };
        if (bt(0)) {
            out.chromatic_index = k;
            out.optimal.assign(k, {});
            for (int i = 0; i < ne; ++i) out.optimal[color[i]].push_back(es[i]);
            out.optimal.erase(std::remove_if(out.optimal.begin(), out.optimal.end(),
                                             [](const Matching& m) { return m.empty(); }),
                              out.optimal.end());
            out.chromatic_index = static_cast<int>(out.optimal.size());
            return out;
        }
        if (k > g.max_degree())
            throw std::runtime_error("edge coloring search failed past Vizing bound");
    }
}

int chromatic_number(const Graph& g) {
    if (g.n > kMatchingVertexGuard)
        throw guard_error("chromatic number limited to 16 vertices");
    std::vector<std::vector<int>> adj(g.n);
    for (auto [u, v] : g.edges) { adj[u].push_back(v); adj[v].push_back(u); }
    for (int k = 1; k <= g.n; ++k) {
        std::vector<int> color(g.n, -1);
        std::function<bool(int)> bt = [&](int v) -> bool {
            if (v == g.n) return true;
            int maxused = -1;
            for (int u = 0; u < v; ++u) maxused = std::max(maxused, color[u]);
            for (int c = 0; c < k; ++c) {
                bool clash = false;
                for (int u : adj[v])
                    if (color[u] == c) { clash = true; break; }
                if (!clash) {
                    color[v] = c;
                    if (bt(v + 1)) return true;
                    color[v] = -1;
                }
                if (c > maxused) break;
            }
            return false;
        };
        if (bt(0)) return k;
    }
    return g.n;
}

MatchingCover cycle_matching_covers(int n, int m) {
    if (n < 3 || n % 2 == 0)
        throw validation_error("cyclic matching covers require an odd cycle length");
    if (m < 3 || m > n)
        throw validation_error("need 3 <= m <= n matchings to cover the odd cycle");
    MatchingCover cover;
    for (int j = 0; j < m; ++j) {
        Matching mj;
        for (int t = 0; t + 1 < n - 1; t += 2) {
            int a = (j + t) % n, b = (j + t + 1) % n;
            mj.push_back({std::min(a, b), std::max(a, b)});
        }
        std::sort(mj.begin(), mj.end());
        cover.push_back(mj);
    }
    return cover;
}

// ------------------------------------------------------------------ catalog

namespace {

// Atlas of the 30 connected graphs on two to five vertices, ordered to match
// the published table; invariants are cross-checked in the test suite.
const std::vector<std::vector<Edge>>& atlas_edges() {
    static const std::vector<std::vector<Edge>> atlas = {
        /* 1 K2        */ {{0, 1}},
        /* 2 P3        */ {{0, 1}, {1, 2}},
        /* 3 C3        */ {{0, 1}, {0, 2}, {1, 2}},
        /* 4 K1,3      */ {{0, 1}, {0, 2}, {0, 3}},
        /* 5 P4        */ {{0, 1}, {1, 2}, {2, 3}},
        /* 6 paw       */ {{0, 1}, {0, 2}, {0, 3}, {1, 2}},
        /* 7 C4        */ {{0, 1}, {0, 3}, {1, 2}, {2, 3}},
        /* 8 diamond   */ {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}},
        /* 9 K4        */ {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}},
        /* 10 K1,4     */ {{0, 1}, {0, 2}, {0, 3}, {0, 4}},
        /* 11 P5       */ {{0, 1}, {1, 2}, {2, 3}, {3, 4}},
        /* 12 spider   */ {{0, 1}, {1, 2}, {1, 4}, {2, 3}},
        /* 13 C5       */ {{0, 1}, {0, 4}, {1, 2}, {2, 3}, {3, 4}},
        /* 14 cricket  */ {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}},
        /* 15 bull     */ {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 4}},
        /* 16 banner   */ {{0, 1}, {0, 3}, {0, 4}, {1, 2}, {2, 3}},
        /* 17 tadpole  */ {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {3, 4}},
        /* 18 K2,3     */ {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}},
        /* 19 house    */ {{0, 1}, {0, 2}, {0, 4}, {1, 2}, {2, 3}, {3, 4}},
        /* 20          */ {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}},
        /* 21          */ {{0, 1}, {0, 2}, {0, 4}, {1, 2}, {1, 3}, {2, 3}},
        /* 22          */ {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 4}, {2, 3}},
        /* 23          */ {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}},
        /* 24          */ {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 4}, {2, 3}},
        /* 25          */ {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}},
        /* 26          */ {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {2, 3}},
        /* 27 wheel W4 */ {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 3}, {1, 4}, {2, 3}, {2, 4}},
        /* 28          */ {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}},
        /* 29 K5 - e   */ {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}},
        /* 30 K5      */ {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}},
    };
    return atlas;
}

Graph lattice_triangular(int rows, int cols) {
    if (rows < 2 || cols < 2) throw validation_error("triangular patch needs at least 2x2");
    auto vid = [cols](int i, int j) { return i * cols + j; };
    std::vector<Edge> es;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            if (j + 1 < cols) es.push_back({vid(i, j), vid(i, j + 1)});
            if (i + 1 < rows) es.push_back({vid(i, j), vid(i + 1, j)});
            if (i + 1 < rows && j - 1 >= 0) es.push_back({vid(i + 1, j - 1), vid(i, j)});
        }
    return Graph(rows * cols, es);
}

Graph lattice_kagome(int cells_x, int cells_y) {
    if (cells_x < 1 || cells_y < 1) throw validation_error("kagome patch needs at least 1x1");
    auto vid = [cells_y](int x, int y, int s) { return (x * cells_y + y) * 3 + s; };
    std::vector<Edge> es;
    auto add = [&es](int a, int b) { es.push_back({std::min(a, b), std::max(a, b)}); };
    for (int x = 0; x < cells_x; ++x)
        for (int y = 0; y < cells_y; ++y) {
            int a = vid(x, y, 0), b = vid(x, y, 1), c = vid(x, y, 2);
            add(a, b); add(b, c); add(c, a);                       // up triangle
            if (x + 1 < cells_x) add(b, vid(x + 1, y, 0));         // down-triangle sides
            if (y + 1 < cells_y) add(c, vid(x, y + 1, 0));
            if (x + 1 < cells_x && y - 1 >= 0) add(b, vid(x + 1, y - 1, 2));
        }
    return Graph(cells_x * cells_y * 3, es);
}

Graph lattice_square_octagon(int cells_x, int cells_y) {
    if (cells_x < 1 || cells_y < 1)
        throw validation_error("square-octagon patch needs at least 1x1");
    // one square of four vertices per cell, linked horizontally and vertically
    auto vid = [cells_y](int x, int y, int s) { return (x * cells_y + y) * 4 + s; };
    std::vector<Edge> es;
    auto add = [&es](int a, int b) { es.push_back({std::min(a, b), std::max(a, b)}); };
    for (int x = 0; x < cells_x; ++x)
        for (int y = 0; y < cells_y; ++y) {
            int v0 = vid(x, y, 0), v1 = vid(x, y, 1), v2 = vid(x, y, 2), v3 = vid(x, y, 3);
            add(v0, v1); add(v1, v2); add(v2, v3); add(v3, v0);    // the square
            if (x + 1 < cells_x) add(v1, vid(x + 1, y, 3));        // east link
            if (y + 1 < cells_y) add(v2, vid(x, y + 1, 0));        // north link
        }
    return Graph(cells_x * cells_y * 4, es);
}

bool parse_dims(const std::string& spec, int& a, int& b) {
    auto x = spec.find('x');
    if (x == std::string::npos) return false;
    try {
        a = std::stoi(spec.substr(0, x));
        b = std::stoi(spec.substr(x + 1));
    } catch (...) { return false; }
    return true;
}

}  // namespace

AtlasRow atlas_invariants(int k) {
    // |V|, |E|, Delta, upsilon, chi, chi', dim H  -- the printed table columns
    static const AtlasRow rows[30] = {
        {2, 1, 1, 1, 2, 1, 4},     {3, 2, 2, 1, 2, 2, 12},    {3, 3, 2, 1, 3, 3, 27},
        {4, 3, 3, 1, 2, 3, 32},    {4, 3, 2, 2, 2, 2, 36},    {4, 4, 3, 2, 3, 3, 72},
        {4, 4, 2, 2, 2, 2, 81},    {4, 5, 3, 2, 3, 3, 144},   {4, 6, 3, 2, 4, 3, 256},
        {5, 4, 4, 1, 2, 4, 80},    {5, 4, 2, 2, 2, 2, 108},   {5, 4, 3, 2, 2, 3, 96},
        {5, 5, 2, 2, 3, 3, 243},   {5, 5, 4, 2, 3, 4, 180},   {5, 5, 3, 2, 3, 3, 192},
        {5, 5, 3, 2, 2, 3, 216},   {5, 5, 3, 2, 3, 3, 216},   {5, 6, 3, 2, 2, 3, 432},
        {5, 6, 3, 2, 3, 3, 432},   {5, 6, 4, 2, 3, 4, 360},   {5, 6, 3, 2, 3, 3, 384},
        {5, 6, 4, 2, 3, 4, 405},   {5, 7, 4, 2, 3, 4, 675},   {5, 7, 4, 2, 3, 4, 720},
        {5, 7, 3, 2, 3, 4, 768},   {5, 7, 4, 2, 4, 4, 640},   {5, 8, 4, 2, 3, 4, 1280},
        {5, 8, 4, 2, 4, 4, 1200},  {5, 9, 4, 2, 4, 5, 2000},  {5, 10, 4, 2, 5, 5, 3125},
    };
    if (k < 1 || k > 30) throw validation_error("atlas index must be 1..30");
    return rows[k - 1];
}

Graph catalog(const std::string& name) {
    auto starts = [&name](const std::string& p) {
        return name.rfind(p, 0) == 0;
    };
    auto tail_int = [&name](std::size_t prefix) -> int {
        try {
            return std::stoi(name.substr(prefix));
        } catch (...) {
            throw validation_error("cannot parse size in catalog name: " + name);
        }
    };
    if (starts("atlas-")) {
        int k = tail_int(6);
        if (k < 1 || k > 30) throw validation_error("atlas index must be 1..30");
        const auto& es = atlas_edges()[k - 1];
        int n = 0;
        for (auto [u, v] : es) n = std::max({n, u + 1, v + 1});
        return Graph(n, es);
    }
    if (starts("chain-closed-")) {
        int n = tail_int(13);
        if (n < 3) throw validation_error("closed chain needs at least 3 vertices");
        std::vector<Edge> es;
        for (int i = 0; i < n; ++i) es.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
        return Graph(n, es);
    }
    auto open_chain = [&](int n) {
        if (n < 2) throw validation_error("open chain needs at least 2 vertices");
        std::vector<Edge> es;
        for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
        return es;
    };
    if (starts("chain-open-")) {
        int n = tail_int(11);
        return Graph(n, open_chain(n));  // boundary spins default to 1/2
    }
    if (starts("chain-open11-")) {
        int n = tail_int(13);
        std::map<int, Spin> ov{{0, Spin::one()}, {n - 1, Spin::one()}};
        return Graph(n, open_chain(n), ov);
    }
    if (starts("chain-openh1-")) {
        int n = tail_int(13);
        std::map<int, Spin> ov{{n - 1, Spin::one()}};
        return Graph(n, open_chain(n), ov);
    }
    if (starts("star-")) {
        int n = tail_int(5);
        if (n < 2) throw validation_error("star needs at least 2 vertices");
        std::vector<Edge> es;
        for (int i = 1; i < n; ++i) es.push_back({0, i});
        return Graph(n, es);
    }
    if (starts("complete-")) {
        int n = tail_int(9);
        if (n < 2) throw validation_error("complete graph needs at least 2 vertices");
        std::vector<Edge> es;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) es.push_back({i, j});
        return Graph(n, es);
    }
    int a = 0, b = 0;
    if (starts("triangular-") && parse_dims(name.substr(11), a, b)) return lattice_triangular(a, b);
    if (starts("kagome-") && parse_dims(name.substr(7), a, b)) return lattice_kagome(a, b);
    if (starts("squareoctagon-") && parse_dims(name.substr(14), a, b))
        return lattice_square_octagon(a, b);
    throw validation_error("unknown catalog graph: " + name);
}

// ------------------------------------------------------------------- files

Graph graph_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("bad graph JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw validation_error("graph JSON needs fields \"n\" and \"edges\"");
    int n = j.at("n").get<int>();
    std::vector<Edge> es;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw validation_error("each edge must be a pair [u, v]");
        es.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    std::map<int, Spin> ov;
    if (j.contains("spins"))
        for (auto& [key, val] : j.at("spins").items())
            ov.emplace(std::stoi(key), Spin(val.get<int>()));
    return Graph(n, es, ov);
}

Graph graph_from_edge_list_text(const std::string& text) {
    std::istringstream in(text);
    std::vector<Edge> es;
    int n = 0;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        int u, v;
        if (!(ls >> u >> v)) {
            if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
            throw validation_error("bad edge line: " + line);
        }
        es.push_back({u, v});
        n = std::max({n, u + 1, v + 1});
    }
    return Graph(n, es);
}

std::string graph_to_json_text(const Graph& g) {
    nlohmann::ordered_json j;
    j["n"] = g.n;
    auto arr = nlohmann::ordered_json::array();
    for (auto [u, v] : g.edges) arr.push_back({u, v});
    j["edges"] = arr;
    if (!g.spin_override.empty()) {
        nlohmann::ordered_json ov;
        for (auto& [v, s] : g.spin_override) ov[std::to_string(v)] = s.twice;
        j["spins"] = ov;
    }
    return j.dump();
}

}  // namespace aklt

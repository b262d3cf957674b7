#include "aklt/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>

namespace aklt {

void ProtocolSpec::validate() const {
    if (cover.empty()) throw validation_error("protocol needs at least one matching");
    if (p.size() != cover.size())
        throw validation_error("probability vector length must match the cover");
    double total = 0;
    for (double x : p) {
        if (x < -1e-15) throw validation_error("probabilities must be nonnegative");
        total += x;
    }
    if (std::abs(total - 1.0) > 1e-12) throw validation_error("probabilities must sum to 1");
    std::set<Edge> covered;
    for (const auto& m : cover) {
        if (!graph.is_matching(m))
            throw validation_error("cover member is not a matching of the graph");
        covered.insert(m.begin(), m.end());
    }
    if (covered.size() != graph.edges.size())
        throw validation_error("matching cover does not cover the edge set");
}

namespace {

SphereDistribution realize(const SphereDistribution& mu, const Graph& g) {
    if (!mu.isotropic) return mu;
    // Omega_S depends on moments of order <= 2 S_E only, and mu32 is a
    // 9-design, so it realizes the isotropic protocol exactly for S_E <= 9/2.
    int se = degree_data(g).s_e_max.twice;
    if (se > 9)
        throw guard_error("isotropic protocol realization needs S_E <= 9/2");
    SphereDistribution m = builtin_distribution("mu32");
    m.name = "isotropic(mu32)";
    return m;
}

}  // namespace

ProtocolOperator::ProtocolOperator(const Graph& g, const SphereDistribution& mu,
                                   MatchingCover cover, std::vector<double> p)
    : dims_(g.site_dims()), cover_(std::move(cover)), p_(std::move(p)) {
    if (p_.size() != cover_.size())
        throw validation_error("probability vector length must match the cover");
    SphereDistribution dist = realize(mu, g);
    bond_.reserve(g.edges.size());
    for (auto [u, v] : g.edges)
        bond_.push_back(bond_operator(g.spin(u), g.spin(v), dist).omega);
    for (const auto& m : cover_) {
        if (!g.is_matching(m)) throw validation_error("cover member is not a matching");
        std::vector<int> idx;
        for (const auto& e : m) idx.push_back(g.edge_index(e));
        cover_edges_.push_back(idx);
    }
    edges_ = g.edges;
}

void ProtocolOperator::set_probabilities(std::vector<double> p) {
    if (p.size() != cover_.size())
        throw validation_error("probability vector length must match the cover");
    p_ = std::move(p);
}

void ProtocolOperator::apply_matching(int l, const Complex* x, Complex* y) const {
    const std::int64_t d = dim();
    Eigen::Map<Vector> out(y, d);
    out = Eigen::Map<const Vector>(x, d);
    Vector scratch(d);
    for (int ei : cover_edges_[l]) {
        auto [u, v] = edges_[ei];
        scratch.setZero();
        apply_two_site(bond_[ei], dims_, u, v, out.data(), scratch.data(), Complex(1));
        out.swap(scratch);
    }
}

void ProtocolOperator::apply(const Complex* x, Complex* y) const {
    const std::int64_t d = dim();
    Eigen::Map<Vector> out(y, d);
    out.setZero();
    Vector tmp(d);
    for (int l = 0; l < cover_size(); ++l) {
        if (p_[l] == 0) continue;
        apply_matching(l, x, tmp.data());
        out += p_[l] * tmp;
    }
}

ComplexOperator ProtocolOperator::deflated(const Vector& psi) const {
    return {dim(), [this, psi](const Complex* x, Complex* y) {
                apply(x, y);
                Eigen::Map<const Vector> xm(x, psi.size());
                Eigen::Map<Vector> ym(y, psi.size());
                ym -= psi * psi.dot(xm);
            }};
}

Matrix ProtocolOperator::dense() const {
    const std::int64_t d = dim();
    if (d > kDenseDimGuard)
        throw guard_error("dense protocol operator limited to dimension 7000");
    Matrix out = Matrix::Zero(d, d);
    Vector e(d), col(d);
    for (std::int64_t c = 0; c < d; ++c) {
        e.setZero();
        e(c) = 1;
        apply(e.data(), col.data());
        out.col(c) = col;
    }
    return out;
}

Matrix ProtocolOperator::matching_test_dense(int l) const {
    const std::int64_t d = dim();
    if (d > kDenseDimGuard)
        throw guard_error("dense matching test limited to dimension 7000");
    Matrix out = Matrix::Zero(d, d);
    Vector e(d), col(d);
    for (std::int64_t c = 0; c < d; ++c) {
        e.setZero();
        e(c) = 1;
        apply_matching(l, e.data(), col.data());
        out.col(c) = col;
    }
    return out;
}

Matrix matching_test(const Graph& g, const SphereDistribution& mu, const Matching& m) {
    ProtocolOperator op(g, mu, {m}, {1.0});
    return op.matching_test_dense(0);
}

Vector aklt_ground_state(const Graph& g) {
    GroundSpace gs = ground_space(g);
    if (gs.degeneracy != 1)
        throw validation_error("AKLT ground state is not unique for this spin assignment");
    return gs.basis[0].cast<Complex>();
}

double protocol_gap(const ProtocolOperator& op, const Vector& psi) {
    const std::int64_t d = op.dim();
    if (d <= 512) {
        Matrix omega = op.dense();
        Matrix deflated = omega - psi * psi.adjoint();
        RealVector w = eigenvalues_herm(deflated);
        return 1.0 - w(w.size() - 1);
    }
    auto top = lanczos_extreme(op.deflated(psi), /*largest=*/true, /*max_iter=*/500,
                               /*tol=*/1e-11);
    return 1.0 - top.value;
}

double protocol_gap(const ProtocolSpec& spec) {
    spec.validate();
    ProtocolOperator op(spec.graph, spec.mu, spec.cover, spec.p);
    return protocol_gap(op, aklt_ground_state(spec.graph));
}

// ------------------------------------------------------------ LP / SDP part

namespace {

// Primal simplex for: maximize c.x st A x <= b, x >= 0, b >= 0. Dantzig
// pricing, falling back to Bland's rule if pivoting drags on.
struct SimplexLP {
    // returns optimal x
    static std::vector<double> solve(const std::vector<std::vector<double>>& a,
                                     const std::vector<double>& b,
                                     const std::vector<double>& c) {
        const int m = static_cast<int>(a.size());
        const int n = static_cast<int>(c.size());
        // tableau rows: m constraints + objective; columns: n vars + m slacks + rhs
        std::vector<std::vector<double>> t(m + 1, std::vector<double>(n + m + 1, 0.0));
        std::vector<int> basis(m);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) t[i][j] = a[i][j];
            t[i][n + i] = 1.0;
            t[i][n + m] = b[i];
            basis[i] = n + i;
        }
        for (int j = 0; j < n; ++j) t[m][j] = -c[j];  // minimize -c.x

        constexpr double kCostTol = 1e-11, kPivotTol = 1e-11;
        for (int iter = 0; iter < 50000; ++iter) {
            const bool bland = iter > 5000;
            int pivot_col = -1;
            double most_negative = -kCostTol;
            for (int j = 0; j < n + m; ++j) {
                if (t[m][j] < most_negative) {
                    pivot_col = j;
                    if (bland) break;
                    most_negative = t[m][j];
                }
            }
            if (pivot_col < 0) break;
            int pivot_row = -1;
            double best_ratio = 0;
            for (int i = 0; i < m; ++i) {
                if (t[i][pivot_col] > kPivotTol) {
                    double ratio = t[i][n + m] / t[i][pivot_col];
                    if (pivot_row < 0 || ratio < best_ratio - 1e-15 ||
                        (std::abs(ratio - best_ratio) <= 1e-15 &&
                         basis[i] < basis[pivot_row])) {
                        pivot_row = i;
                        best_ratio = ratio;
                    }
                }
            }
            if (pivot_row < 0) throw std::runtime_error("LP unbounded");
            double pv = t[pivot_row][pivot_col];
            for (auto& x : t[pivot_row]) x /= pv;
            for (int i = 0; i <= m; ++i) {
                if (i == pivot_row) continue;
                double f = t[i][pivot_col];
                if (f == 0) continue;
                for (int j = 0; j <= n + m; ++j) t[i][j] -= f * t[pivot_row][j];
            }
            basis[pivot_row] = pivot_col;
        }
        std::vector<double> x(n, 0.0);
        for (int i = 0; i < m; ++i)
            if (basis[i] < n) x[basis[i]] = t[i][n + m];
        return x;
    }
};

// min_p max_k (C p)_k over the simplex via the positive-game LP.
std::pair<std::vector<double>, double> min_max_game(const std::vector<std::vector<double>>& cuts,
                                                    int m) {
    constexpr double kShift = 1.5;
    std::vector<std::vector<double>> a(cuts.size(), std::vector<double>(m));
    std::vector<double> b(cuts.size(), 1.0), c(m, 1.0);
    for (std::size_t k = 0; k < cuts.size(); ++k)
        for (int l = 0; l < m; ++l) a[k][l] = cuts[k][l] + kShift;
    std::vector<double> y = SimplexLP::solve(a, b, c);
    double total = 0;
    for (double v : y) total += v;
    if (total <= 0) throw std::runtime_error("degenerate game LP");
    std::vector<double> p(m);
    for (int l = 0; l < m; ++l) p[l] = std::max(0.0, y[l] / total);
    double norm = 0;
    for (double v : p) norm += v;
    for (auto& v : p) v /= norm;
    return {p, 1.0 / total - kShift};
}

// top eigenvectors of the deflated protocol operator at probabilities p,
// within `window` of the maximum (at most max_count). `hints` carries
// warm-start vectors between calls at nearby probabilities.
std::vector<std::pair<double, Vector>> top_eigs(const ProtocolOperator& op, const Vector& psi,
                                                double window, int max_count,
                                                std::vector<Vector>* hints = nullptr) {
    std::vector<std::pair<double, Vector>> out;
    const std::int64_t d = op.dim();
    if (d <= 512) {
        Matrix omega = op.dense() - psi * psi.adjoint();
        RealVector w;
        Matrix v;
        eigh_herm(omega, w, v);
        double top = w(w.size() - 1);
        for (int i = static_cast<int>(w.size()) - 1;
             i >= 0 && w(i) >= top - window && static_cast<int>(out.size()) < max_count; --i)
            out.push_back({w(i), v.col(i)});
        return out;
    }
    std::vector<Vector> found;
    double top = 0;
    for (int k = 0; k < max_count; ++k) {
        ComplexOperator defl{d, [&](const Complex* x, Complex* y) {
            op.apply(x, y);
            Eigen::Map<const Vector> xm(x, d);
            Eigen::Map<Vector> ym(y, d);
            ym -= psi * psi.dot(xm);
            for (const auto& f : found) ym -= 3.0 * f.dot(xm) * f;
        }};
        const Vector* start =
            (hints && k < static_cast<int>(hints->size())) ? &(*hints)[k] : nullptr;
        auto pair = lanczos_extreme(defl, /*largest=*/true, /*max_iter=*/500, /*tol=*/1e-11,
                                    static_cast<std::uint64_t>(k), start);
        if (k == 0) top = pair.value;
        if (pair.value < top - window) break;
        found.push_back(pair.vector);
        out.push_back({pair.value, pair.vector});
    }
    if (hints) {
        hints->clear();
        for (const auto& [val, vec] : out) hints->push_back(vec);
    }
    return out;
}

}  // namespace

OptimizeResult optimize_probabilities(const Graph& g, const SphereDistribution& mu,
                                      const MatchingCover& cover) {
    const int m = static_cast<int>(cover.size());
    Vector psi = aklt_ground_state(g);
    ProtocolOperator op(g, mu, cover, std::vector<double>(m, 1.0 / m));
    OptimizeResult res;
    if (m == 1) {
        res.p = {1.0};
        res.nu = protocol_gap(op, psi);
        res.converged = true;
        return res;
    }

    const double tol = 1e-9;
    std::vector<std::vector<double>> cuts;
    std::vector<double> p(m, 1.0 / m);
    std::vector<double> p_best = p;
    double upper = std::numeric_limits<double>::infinity();
    double lower = -std::numeric_limits<double>::infinity();

    Vector tx(op.dim());
    std::vector<Vector> hints;
    // Any Rayleigh quotient yields a valid cut, so a generous window around
    // the top eigenvalue captures the coalescing eigenspace near the optimum.
    auto add_cuts_at = [&](const std::vector<double>& probs) -> double {
        op.set_probabilities(probs);
        auto tops = top_eigs(op, psi, /*window=*/2e-2, /*max_count=*/8, &hints);
        for (const auto& [val, vec] : tops) {
            std::vector<double> cut(m);
            const double overlap = std::norm(Complex(psi.dot(vec)));
            for (int l = 0; l < m; ++l) {
                op.apply_matching(l, vec.data(), tx.data());
                cut[l] = std::real(Complex(vec.dot(tx))) - overlap;  // v' Tbar_l v
            }
            // duplicate rows degrade the LP; keep the cut set clean and small
            bool dup = false;
            for (const auto& existing : cuts) {
                double dist = 0;
                for (int l = 0; l < m; ++l) dist = std::max(dist, std::abs(existing[l] - cut[l]));
                if (dist < 1e-12) { dup = true; break; }
            }
            if (!dup) cuts.push_back(cut);
        }
        if (cuts.size() > 192) cuts.erase(cuts.begin(), cuts.end() - 192);
        return tops.front().first;
    };

    const bool trace = std::getenv("AKLT_TRACE_SDP") != nullptr;
    for (int it = 0; it < 300; ++it) {
        double lam = add_cuts_at(p);
        if (lam < upper) {
            upper = lam;
            p_best = p;
        }
        auto [p_next, lp_value] = min_max_game(cuts, m);
        lower = std::max(lower, lp_value);
        res.iterations = it + 1;
        if (trace)
            std::fprintf(stderr, "sdp it=%d upper=%.12f lower=%.12f lp=%.12f\n", it, upper,
                         lower, lp_value);
        if (upper - lower <= tol) {
            res.converged = true;
            break;
        }
        p = p_next;
    }

    // Flat optima: pull the optimizer toward the uniform vector as far as the
    // objective allows, so symmetric color classes end with equal weights.
    std::vector<double> uniform(m, 1.0 / m);
    auto objective = [&](const std::vector<double>& probs) {
        op.set_probabilities(probs);
        return top_eigs(op, psi, 1e-12, 1, &hints).front().first;
    };
    double lo = 0, hi = 1;
    if (objective(uniform) <= upper + 1e-9) {
        p_best = uniform;
    } else {
        // slack kept tiny so the pull only resolves genuine ties
        for (int it = 0; it < 30; ++it) {
            double mid = (lo + hi) / 2;
            std::vector<double> cand(m);
            for (int l = 0; l < m; ++l)
                cand[l] = (1 - mid) * p_best[l] + mid * uniform[l];
            if (objective(cand) <= upper + 1e-10)
                lo = mid;
            else
                hi = mid;
        }
        for (int l = 0; l < m; ++l) p_best[l] = (1 - lo) * p_best[l] + lo * uniform[l];
    }

    res.p = p_best;
    op.set_probabilities(p_best);
    res.nu = 1.0 - top_eigs(op, psi, 1e-12, 1).front().first;
    return res;
}

// ----------------------------------------------------------------- bounds

double s_of_triple(Spin s1, Spin s2, Spin s3) {
    if (s1.twice > 6 || s2.twice > 6 || s3.twice > 6)
        throw guard_error("s(P12 P23) computed for spins up to 3");
    std::vector<int> dims{s1.dim(), s2.dim(), s3.dim()};
    RealMatrix p12 = embed_two_site(max_spin_projector(s1, s2), dims, 0, 1);
    RealMatrix p23 = embed_two_site(max_spin_projector(s2, s3), dims, 1, 2);
    RealMatrix prod = p12 * p23 * p12;
    RealVector w = eigenvalues_sym(prod);
    for (int i = static_cast<int>(w.size()) - 1; i >= 0; --i)
        if (w(i) < 1.0 - 1e-6) return std::sqrt(std::max(0.0, w(i)));
    return 0.0;
}

double s_of_graph(const Graph& g) {
    double best = 0;
    for (std::size_t a = 0; a < g.edges.size(); ++a)
        for (std::size_t b = a + 1; b < g.edges.size(); ++b) {
            auto [u1, v1] = g.edges[a];
            auto [u2, v2] = g.edges[b];
            int shared = -1, o1 = -1, o2 = -1;
            if (u1 == u2) { shared = u1; o1 = v1; o2 = v2; }
            else if (u1 == v2) { shared = u1; o1 = v1; o2 = u2; }
            else if (v1 == u2) { shared = v1; o1 = u1; o2 = v2; }
            else if (v1 == v2) { shared = v1; o1 = u1; o2 = u2; }
            if (shared < 0) continue;
            best = std::max(best, s_of_triple(g.spin(o1), g.spin(shared), g.spin(o2)));
        }
    return best;
}

Theorem4Bound theorem4_bound(double nu_se, double gamma, double s, double g_overlap, int m) {
    Theorem4Bound b;
    if (m < 2 || g_overlap <= 0 || s <= 0) return b;  // single-edge graphs etc.
    b.applicable = true;
    const double x = gamma / (s * s * g_overlap * g_overlap);
    const double root = std::sqrt(1 + x);
    const double f = (m == 2) ? (root - 1) / root : (root - 1) / (root + 1);
    const double se = (g_overlap + 2) / 2.0;        // S_E
    const double two_se_p1 = g_overlap + 3;          // 2 S_E + 1
    b.main = nu_se / m * f;
    b.weak = nu_se * gamma / (24.0 * m * (se - 1) * (se - 1));
    b.design_main = 2.0 / (m * two_se_p1) * f;
    b.design_weak = gamma / (12.0 * m * two_se_p1 * (se - 1) * (se - 1));
    return b;
}

Theorem5Bound theorem5_bound(double nu_se, double gamma, int edge_count, Spin s_e,
                             const std::vector<int>& class_sizes) {
    int total = 0;
    for (int s : class_sizes) total += s;
    if (total != edge_count)
        throw validation_error("coloring class sizes must sum to the edge count");
    Theorem5Bound b;
    b.main = nu_se * gamma / edge_count;
    b.design = 2.0 * gamma / ((s_e.twice + 1) * edge_count);
    b.saturating =
        std::all_of(class_sizes.begin(), class_sizes.end(), [](int s) { return s == 1; });
    return b;
}

bool is_edge_coloring(const Graph& g, const MatchingCover& cover) {
    std::set<Edge> seen;
    std::size_t total = 0;
    for (const auto& m : cover) {
        if (!g.is_matching(m)) return false;
        total += m.size();
        seen.insert(m.begin(), m.end());
    }
    return seen.size() == g.edges.size() && total == g.edges.size();
}

std::optional<std::uint64_t> sample_count(double nu, double epsilon, double delta) {
    if (nu < 0 || nu > 1) throw validation_error("nu must lie in [0, 1]");
    if (epsilon <= 0 || epsilon >= 1) throw validation_error("epsilon must lie in (0, 1)");
    if (delta <= 0 || delta > 1) throw validation_error("delta must lie in (0, 1]");
    if (delta == 1.0) return 0;
    if (nu == 0.0) return std::nullopt;  // no test distinguishes the target
    long double base = 1.0L - static_cast<long double>(nu) * epsilon;
    if (base <= 0.0L) return 1;
    long double ratio = std::log(static_cast<long double>(delta)) / std::log(base);
    auto n = static_cast<std::uint64_t>(std::ceil(ratio - 1e-15L));
    // settle the boundary exactly: smallest N with base^N <= delta
    auto pass = [&](std::uint64_t k) { return std::pow(base, static_cast<long double>(k)) <= delta; };
    while (n > 0 && pass(n - 1)) --n;
    while (!pass(n)) ++n;
    return n;
}

std::pair<bool, double> homogeneity_check(const Matrix& omega, const Vector& psi, double tol) {
    const auto d = omega.rows();
    double lambda = (std::real(omega.trace()) - 1.0) / (d - 1);
    Matrix proj = Matrix::Identity(d, d) - psi * psi.adjoint();
    Matrix dev = omega - psi * psi.adjoint() - lambda * proj;
    RealVector w = eigenvalues_herm(dev);
    double norm = std::max(std::abs(w(0)), std::abs(w(w.size() - 1)));
    return {norm <= tol, lambda};
}

MatchingCover resolve_cover(const Graph& g, const std::string& kind) {
    if (kind == "trivial") return edge_colorings(g).trivial;
    if (kind == "optimal") return edge_colorings(g).optimal;
    if (kind == "maximal") {
        auto en = enumerate_matchings(g);
        if (static_cast<int>(en.maximal.size()) > kMaximalCoverGuard)
            throw guard_error("maximal-matching cover limited to 17 matchings, graph has " +
                              std::to_string(en.maximal.size()));
        return MatchingCover(en.maximal.begin(), en.maximal.end());
    }
    if (!kind.empty() && kind[0] == 'M') {
        // cyclic covers M_1..M_m of an odd cycle; "Mn" takes the full orbit
        bool is_cycle = true;
        for (int v = 0; v < g.n; ++v)
            if (g.degree(v) != 2) { is_cycle = false; break; }
        if (!is_cycle || static_cast<int>(g.edges.size()) != g.n)
            throw validation_error("M covers are defined for cycle graphs");
        int m = (kind == "Mn") ? g.n : std::stoi(kind.substr(1));
        return cycle_matching_covers(g.n, m);
    }
    throw validation_error("unknown cover kind: " + kind);
}

}  // namespace aklt

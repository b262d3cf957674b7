#include "aklt/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

namespace aklt {

void LocalTermOperator::apply(const double* x, double* y) const {
    for (const auto& t : terms) apply_two_site(t.op, dims, t.i, t.j, x, y, 1.0);
}

RealOperator LocalTermOperator::as_operator() const {
    return {dim(), [this](const double* x, double* y) { apply(x, y); }};
}

RealMatrix LocalTermOperator::dense() const {
    const std::int64_t d = dim();
    if (d > kDenseDimGuard)
        throw guard_error("dense Hamiltonian limited to dimension 7000, got " +
                          std::to_string(d));
    RealMatrix h = RealMatrix::Zero(d, d);
    for (const auto& t : terms) h += embed_two_site(t.op, dims, t.i, t.j);
    return h;
}

LocalTermOperator aklt_operator(const Graph& g) {
    LocalTermOperator h;
    h.dims = g.site_dims();
    if (product_dim(h.dims) > kSparseDimGuard)
        throw guard_error("Hilbert dimension exceeds the 1e5 guard: " +
                          std::to_string(product_dim(h.dims)));
    for (auto [u, v] : g.edges)
        h.terms.push_back({u, v, max_spin_projector(g.spin(u), g.spin(v))});
    return h;
}

namespace {

// Lowest eigenpairs with previously found vectors shifted up and out of the
// way; returns pairs in discovery order until the first value above `stop`.
std::vector<EigenPair<double>> deflated_lowest(const LocalTermOperator& h, double stop,
                                               int max_vectors) {
    std::vector<EigenPair<double>> found;
    const std::int64_t n = h.dim();
    const double shift = 2.0 * (static_cast<double>(h.terms.size()) + 1.0);
    for (int k = 0; k < max_vectors; ++k) {
        RealOperator op{n, [&](const double* x, double* y) {
            h.apply(x, y);
            Eigen::Map<const RealVector> xm(x, n);
            Eigen::Map<RealVector> ym(y, n);
            for (const auto& f : found) ym += shift * f.vector.dot(xm) * f.vector;
        }};
        auto pair = lanczos_extreme(op, /*largest=*/false, /*max_iter=*/900,
                                    /*tol=*/1e-9, /*salt=*/static_cast<std::uint64_t>(k));
        found.push_back(pair);
        if (pair.value > stop) break;
    }
    return found;
}

}  // namespace

double spectral_gap(const LocalTermOperator& h) {
    const std::int64_t d = h.dim();
    if (d <= kDenseDimGuard) {
        RealVector w = eigenvalues_sym(h.dense());
        if (w(0) > kZeroEnergyTol)
            throw validation_error("Hamiltonian is not frustration-free (ground energy " +
                                   std::to_string(w(0)) + ")");
        for (int i = 1; i < w.size(); ++i)
            if (w(i) > kZeroEnergyTol) return w(i);
        throw validation_error("no eigenvalue above the zero-energy threshold");
    }
    auto found = deflated_lowest(h, kZeroEnergyTol, /*max_vectors=*/9);
    if (found.front().value > kZeroEnergyTol)
        throw validation_error("Hamiltonian is not frustration-free (ground energy " +
                               std::to_string(found.front().value) + ")");
    for (const auto& f : found)
        if (f.value > kZeroEnergyTol) return f.value;
    throw validation_error("ground degeneracy exceeds the deflation budget");
}

double spectral_gap(const Graph& g) { return spectral_gap(aklt_operator(g)); }

GroundSpace ground_space(const LocalTermOperator& h) {
    GroundSpace gs;
    const std::int64_t d = h.dim();
    if (d <= kDenseDimGuard) {
        RealVector w;
        RealMatrix v;
        eigh_sym(h.dense(), w, v);
        for (int i = 0; i < w.size() && w(i) <= kZeroEnergyTol; ++i) {
            gs.basis.push_back(v.col(i));
            gs.energy = std::max(gs.energy, w(i));
        }
    } else {
        auto found = deflated_lowest(h, kZeroEnergyTol, /*max_vectors=*/9);
        for (const auto& f : found)
            if (f.value <= kZeroEnergyTol) {
                gs.basis.push_back(f.vector);
                gs.energy = std::max(gs.energy, f.value);
            }
    }
    gs.degeneracy = static_cast<int>(gs.basis.size());
    if (gs.degeneracy == 0) throw validation_error("no zero-energy state found");
    return gs;
}

GroundSpace ground_space(const Graph& g) { return ground_space(aklt_operator(g)); }

double knabe_bound(double gamma_open, int k) {
    if (k <= 2) throw validation_error("Knabe bound needs k > 2");
    return (static_cast<double>(k - 1) / (k - 2)) * (gamma_open - 1.0 / (k - 1));
}

double gosset_mozgunov_bound(double gamma_open, int k) {
    if (k <= 2) throw validation_error("Gosset-Mozgunov bound needs k > 2");
    double kk = k;
    return (5.0 / 6.0) * ((kk * kk + kk) / (kk * kk - 4)) * (gamma_open - 6.0 / (kk * (kk + 1)));
}

ChainKind parse_chain_kind(const std::string& name) {
    if (name == "closed") return ChainKind::Closed;
    if (name == "open") return ChainKind::OpenHalfHalf;
    if (name == "openh1") return ChainKind::OpenHalfOne;
    if (name == "open11") return ChainKind::OpenOneOne;
    throw validation_error("unknown chain kind: " + name +
                           " (expected closed|open|openh1|open11)");
}

std::string chain_kind_name(ChainKind kind) {
    switch (kind) {
        case ChainKind::Closed: return "closed";
        case ChainKind::OpenHalfHalf: return "open";
        case ChainKind::OpenHalfOne: return "openh1";
        case ChainKind::OpenOneOne: return "open11";
    }
    return "?";
}

Graph chain_graph(ChainKind kind, int n) {
    switch (kind) {
        case ChainKind::Closed: return catalog("chain-closed-" + std::to_string(n));
        case ChainKind::OpenHalfHalf: return catalog("chain-open-" + std::to_string(n));
        case ChainKind::OpenHalfOne: return catalog("chain-openh1-" + std::to_string(n));
        case ChainKind::OpenOneOne: return catalog("chain-open11-" + std::to_string(n));
    }
    throw validation_error("bad chain kind");
}

}  // namespace aklt

#include "aklt/simulate.hpp"

#include <cmath>
#include <map>

#include "aklt/spin_ops.hpp"

namespace aklt {

// --------------------------------------------------------------- philox

namespace {

inline void philox_round(std::uint32_t c[4], const std::uint32_t k[2]) {
    constexpr std::uint64_t kMul0 = 0xD2511F53u, kMul1 = 0xCD9E8D57u;
    std::uint64_t p0 = kMul0 * c[0];
    std::uint64_t p1 = kMul1 * c[2];
    std::uint32_t out[4];
    out[0] = static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0];
    out[1] = static_cast<std::uint32_t>(p1);
    out[2] = static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1];
    out[3] = static_cast<std::uint32_t>(p0);
    for (int i = 0; i < 4; ++i) c[i] = out[i];
}

}  // namespace

Philox::Philox(std::uint64_t seed, std::uint64_t stream) {
    key_[0] = static_cast<std::uint32_t>(seed);
    key_[1] = static_cast<std::uint32_t>(seed >> 32);
    counter_[0] = 0;
    counter_[1] = 0;
    counter_[2] = static_cast<std::uint32_t>(stream);
    counter_[3] = static_cast<std::uint32_t>(stream >> 32);
}

void Philox::refill() {
    std::uint32_t c[4] = {counter_[0], counter_[1], counter_[2], counter_[3]};
    std::uint32_t k[2] = {key_[0], key_[1]};
    constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        philox_round(c, k);
        k[0] += kW0;
        k[1] += kW1;
    }
    for (int i = 0; i < 4; ++i) out_[i] = c[i];
    have_ = 4;
    if (++counter_[0] == 0) ++counter_[1];  // 64-bit draw counter per stream
}

std::uint32_t Philox::next_u32() {
    if (have_ == 0) refill();
    return out_[4 - have_--];
}

double Philox::uniform() {
    std::uint64_t hi = next_u32(), lo = next_u32();
    return ((hi << 20) | (lo >> 12)) * (1.0 / 4503599627370496.0);  // 52 bits
}

// ----------------------------------------------------------- state models

NoisyStateModel NoisyStateModel::target() { return {}; }

NoisyStateModel NoisyStateModel::depolarized(double eps) {
    if (eps < 0 || eps > 1) throw validation_error("noise strength must lie in [0,1]");
    NoisyStateModel m;
    m.kind = Kind::Depolarized;
    m.epsilon = eps;
    return m;
}

NoisyStateModel NoisyStateModel::rank_two_worst(double eps) {
    if (eps < 0 || eps > 1) throw validation_error("noise strength must lie in [0,1]");
    NoisyStateModel m;
    m.kind = Kind::RankTwoWorst;
    m.epsilon = eps;
    return m;
}

NoisyStateModel NoisyStateModel::custom_state(Matrix sigma) {
    if (std::abs(sigma.trace().real() - 1.0) > 1e-10 || std::abs(sigma.trace().imag()) > 1e-10)
        throw validation_error("density matrix must have unit trace");
    if (!is_hermitian(sigma, 1e-10)) throw validation_error("density matrix must be Hermitian");
    RealVector w = eigenvalues_herm(sigma);
    if (w(0) < -1e-10) throw validation_error("density matrix must be positive semidefinite");
    NoisyStateModel m;
    m.kind = Kind::Custom;
    m.custom = std::move(sigma);
    return m;
}

NoisyStateModel NoisyStateModel::parse(const std::string& text) {
    if (text == "target" || text.empty()) return target();
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    double eps = 0;
    if (colon != std::string::npos) {
        try {
            eps = std::stod(text.substr(colon + 1));
        } catch (...) {
            throw validation_error("cannot parse noise strength in: " + text);
        }
    }
    if (head == "depolarize") return depolarized(eps);
    if (head == "ranktwo") return rank_two_worst(eps);
    throw validation_error("unknown noise model: " + text);
}

std::string NoisyStateModel::describe() const {
    switch (kind) {
        case Kind::Target: return "target";
        case Kind::Depolarized: return "depolarize:" + std::to_string(epsilon);
        case Kind::RankTwoWorst: return "ranktwo:" + std::to_string(epsilon);
        case Kind::Custom: return "custom";
    }
    return "?";
}

// -------------------------------------------------------------- simulator

Simulator::Simulator(const ProtocolSpec& spec, const NoisyStateModel& state)
    : graph_(spec.graph),
      mu_(spec.mu.isotropic ? builtin_distribution("mu32") : spec.mu),
      op_(spec.graph, spec.mu, spec.cover, spec.p),
      dims_(spec.graph.site_dims()) {
    spec.validate();
    const std::int64_t d = op_.dim();
    if (d > kDenseDimGuard) throw guard_error("simulation limited to dimension 7000");
    psi_ = aklt_ground_state(graph_);

    switch (state.kind) {
        case NoisyStateModel::Kind::Target:
            mix_w_ = {1.0};
            mix_state_ = {psi_};
            sigma_ = psi_ * psi_.adjoint();
            break;
        case NoisyStateModel::Kind::Depolarized: {
            // sigma = (1-eps) |psi><psi| + eps I/d, realized as a mixture of
            // the target and uniformly random basis states.
            mix_w_ = {1.0 - state.epsilon};
            mix_state_ = {psi_};
            for (std::int64_t i = 0; i < d; ++i) {
                Vector e = Vector::Zero(d);
                e(i) = 1;
                mix_w_.push_back(state.epsilon / d);
                mix_state_.push_back(e);
            }
            sigma_ = (1.0 - state.epsilon) * (psi_ * psi_.adjoint()).eval() +
                     state.epsilon / d * Matrix::Identity(d, d);
            break;
        }
        case NoisyStateModel::Kind::RankTwoWorst: {
            // worst case saturating tr(Omega sigma) = 1 - nu eps
            auto top = lanczos_extreme(op_.deflated(psi_), /*largest=*/true, 500, 1e-11);
            Vector phi = top.vector;
            phi -= psi_ * psi_.dot(phi);
            phi.normalize();
            mix_w_ = {1.0 - state.epsilon, state.epsilon};
            mix_state_ = {psi_, phi};
            sigma_ = (1.0 - state.epsilon) * (psi_ * psi_.adjoint()).eval() +
                     state.epsilon * (phi * phi.adjoint()).eval();
            break;
        }
        case NoisyStateModel::Kind::Custom: {
            if (state.custom.rows() != d)
                throw validation_error("density matrix dimension mismatch");
            sigma_ = state.custom;
            RealVector w;
            Matrix v;
            eigh_herm(sigma_, w, v);
            for (int i = 0; i < w.size(); ++i)
                if (w(i) > 1e-12) {
                    mix_w_.push_back(w(i));
                    mix_state_.push_back(v.col(i));
                }
            break;
        }
    }

    axis_weights_.reserve(mu_.points.size());
    for (const auto& p : mu_.points) axis_weights_.push_back(p.w);
    // rotation into the S_r eigenbasis, per axis and per spin value present
    std::map<int, std::vector<Matrix>> per_spin;
    for (int v = 0; v < graph_.n; ++v) {
        int tw = graph_.spin(v).twice;
        if (per_spin.count(tw)) continue;
        Spin s(tw);
        std::vector<Matrix> rot(mu_.points.size());
        for (std::size_t k = 0; k < mu_.points.size(); ++k) {
            Matrix u(s.dim(), s.dim());
            for (int c = 0; c < s.dim(); ++c)
                u.col(c) = spin_eigenvector(s, s.twice - 2 * c, mu_.points[k].v);
            rot[k] = u;
        }
        per_spin.emplace(tw, std::move(rot));
    }
    rotation_store_ = std::move(per_spin);
    site_rotations_.resize(graph_.n);
    for (int v = 0; v < graph_.n; ++v)
        site_rotations_[v] = &rotation_store_.at(graph_.spin(v).twice);
}

double Simulator::exact_pass_probability() const {
    const std::int64_t d = op_.dim();
    Vector col(d);
    double total = 0;
    for (std::size_t k = 0; k < mix_w_.size(); ++k) {
        op_.apply(mix_state_[k].data(), col.data());
        total += mix_w_[k] * std::real(Complex(mix_state_[k].dot(col)));
    }
    return total;
}

double Simulator::lambda_homogeneous() const {
    auto [flag, lambda] = homogeneity_check(op_.dense(), psi_);
    if (!flag) throw validation_error("protocol is not homogeneous");
    return lambda;
}

namespace {

// index of a weighted choice; weights sum to 1
template <class W>
int draw_choice(Philox& rng, const W& weights) {
    double u = rng.uniform();
    double acc = 0;
    int last = static_cast<int>(weights.size()) - 1;
    for (int i = 0; i <= last; ++i) {
        acc += weights[i];
        if (u < acc) return i;
    }
    return last;
}

}  // namespace

bool Simulator::single_run(Philox& rng) const {
    int comp = draw_choice(rng, mix_w_);
    Vector state = mix_state_[comp];
    Vector scratch(state.size());
    int l = draw_choice(rng, op_.probabilities());

    bool pass = true;
    for (const auto& e : op_.cover()[l]) {
        const int axis = draw_choice(rng, axis_weights_);
        const int u = e.first, v = e.second;  // normalized u < v
        const Matrix& uu = (*site_rotations_[u])[axis];
        const Matrix& uv = (*site_rotations_[v])[axis];
        const int du = static_cast<int>(uu.rows()), dv = static_cast<int>(uv.rows());

        // pair-space strides
        std::int64_t pre = 1, mid = 1, post = 1;
        for (int k = 0; k < u; ++k) pre *= dims_[k];
        for (int k = u + 1; k < v; ++k) mid *= dims_[k];
        for (int k = v + 1; k < static_cast<int>(dims_.size()); ++k) post *= dims_[k];
        const std::int64_t stride_a = mid * dv * post, stride_b = post;

        // rotate the pair into the measurement basis: (Uu (x) Uv)^dagger
        Matrix pair_rot(du * dv, du * dv);
        for (int a = 0; a < du; ++a)
            for (int b = 0; b < dv; ++b)
                for (int c = 0; c < du; ++c)
                    for (int dd = 0; dd < dv; ++dd)
                        pair_rot(a * dv + b, c * dv + dd) = std::conj(uu(c, a)) * std::conj(uv(dd, b));
        scratch.setZero();
        apply_two_site(pair_rot, dims_, u, v, state.data(), scratch.data(), Complex(1));

        // Born probabilities of the joint outcome (m1, m2)
        std::vector<double> probs(du * dv, 0.0);
        for (std::int64_t pp = 0; pp < pre; ++pp)
            for (std::int64_t mm = 0; mm < mid; ++mm)
                for (std::int64_t qq = 0; qq < post; ++qq) {
                    const std::int64_t base = ((pp * du) * mid + mm) * dv * post + qq;
                    for (int a = 0; a < du; ++a)
                        for (int b = 0; b < dv; ++b)
                            probs[a * dv + b] +=
                                std::norm(scratch(base + a * stride_a + b * stride_b));
                }
        const int outcome = draw_choice(rng, probs);
        const int oa = outcome / dv, ob = outcome % dv;
        // the two extremal parallel outcomes (S1,S2) / (-S1,-S2) reject
        if ((oa == 0 && ob == 0) || (oa == du - 1 && ob == dv - 1)) pass = false;

        // collapse onto the outcome, renormalize, rotate back
        for (std::int64_t pp = 0; pp < pre; ++pp)
            for (std::int64_t mm = 0; mm < mid; ++mm)
                for (std::int64_t qq = 0; qq < post; ++qq) {
                    const std::int64_t base = ((pp * du) * mid + mm) * dv * post + qq;
                    for (int a = 0; a < du; ++a)
                        for (int b = 0; b < dv; ++b)
                            if (a != oa || b != ob)
                                scratch(base + a * stride_a + b * stride_b) = 0;
                }
        double nrm = scratch.norm();
        if (nrm > 1e-300) scratch /= nrm;
        Matrix pair_back(du * dv, du * dv);
        for (int a = 0; a < du; ++a)
            for (int b = 0; b < dv; ++b)
                for (int c = 0; c < du; ++c)
                    for (int dd = 0; dd < dv; ++dd)
                        pair_back(a * dv + b, c * dv + dd) = uu(a, c) * uv(b, dd);
        state.setZero();
        apply_two_site(pair_back, dims_, u, v, scratch.data(), state.data(), Complex(1));
    }
    return pass;
}

RunResult Simulator::run(std::uint64_t n_runs, std::uint64_t seed) const {
    RunResult res;
    res.n_runs = n_runs;
    res.seed = seed;
    for (std::uint64_t r = 0; r < n_runs; ++r) {
        Philox rng(seed, /*stream=*/r);
        if (single_run(rng)) ++res.n_pass;
    }
    res.pass_rate = n_runs ? static_cast<double>(res.n_pass) / n_runs : 0.0;
    res.std_error = n_runs ? std::sqrt(std::max(res.pass_rate * (1 - res.pass_rate), 0.0) /
                                       static_cast<double>(n_runs))
                           : 0.0;
    return res;
}

double estimate_fidelity_homogeneous(double pass_rate, double lambda, double nu) {
    if (nu <= 0) throw validation_error("homogeneous inversion needs nu > 0");
    return (pass_rate - lambda) / nu;
}

}  // namespace aklt

#include "aklt/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

namespace aklt {

void SphereDistribution::validate() const {
    if (isotropic) return;
    if (points.empty()) throw validation_error("distribution has no points");
    double total = 0;
    for (const auto& p : points) {
        if (p.w <= 0) throw validation_error("weights must be positive");
        if (std::abs(p.v.norm() - 1.0) > 1e-12)
            throw validation_error("distribution points must be unit vectors");
        total += p.w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw validation_error("weights must sum to 1");
}

namespace {

SphereDistribution equal_weight(std::string name, std::vector<Vec3> pts) {
    SphereDistribution mu;
    mu.name = std::move(name);
    double w = 1.0 / pts.size();
    for (auto& v : pts) mu.points.push_back({v.normalized(), w});
    return mu;
}

std::vector<Vec3> icosahedron_vertices() {
    const double b = (1 + std::sqrt(5.0)) / 2;
    std::vector<Vec3> pts;
    for (double s1 : {1.0, -1.0})
        for (double s2 : {1.0, -1.0}) {
            pts.push_back({s1, s2 * b, 0});
            pts.push_back({s1 * b, 0, s2});
            pts.push_back({0, s1, s2 * b});
        }
    return pts;
}

std::vector<Vec3> dodecahedron_vertices() {
    const double b = (1 + std::sqrt(5.0)) / 2;
    std::vector<Vec3> pts;
    for (double s1 : {1.0, -1.0})
        for (double s2 : {1.0, -1.0}) {
            pts.push_back({s1 * b, s2 / b, 0});
            pts.push_back({s1 / b, 0, s2 * b});
            pts.push_back({0, s1 * b, s2 / b});
        }
    for (double sx : {1.0, -1.0})
        for (double sy : {1.0, -1.0})
            for (double sz : {1.0, -1.0}) pts.push_back({sx, sy, sz});
    return pts;
}

// 24-point orbit of the cube rotation group: a spherical 7-design.
SphereDistribution make_mu24() {
    const double theta = std::atan(3 * std::sqrt(10.0) / 20);
    double u[3];
    for (int j = 1; j <= 3; ++j)
        u[j - 1] = std::sqrt((1 + 2 * std::sqrt(0.4) * std::cos((theta + 2 * j * std::numbers::pi) / 3)) / 3);
    struct Perm { int p[3]; int sgn; };
    const Perm perms[6] = {{{0, 1, 2}, 1}, {{1, 2, 0}, 1}, {{2, 0, 1}, 1},
                           {{0, 2, 1}, -1}, {{2, 1, 0}, -1}, {{1, 0, 2}, -1}};
    std::vector<Vec3> pts;
    for (int a1 : {1, -1})
        for (int a2 : {1, -1})
            for (const auto& pm : perms)
                pts.push_back({a1 * u[pm.p[0]], a2 * u[pm.p[1]], a1 * a2 * pm.sgn * u[pm.p[2]]});
    return equal_weight("mu24", pts);
}

// Pentakis dodecahedron: icosahedron at total weight 5/14, dodecahedron 9/14.
SphereDistribution make_mu32() {
    SphereDistribution mu;
    mu.name = "mu32";
    for (auto& v : icosahedron_vertices()) mu.points.push_back({v.normalized(), 5.0 / 168});
    for (auto& v : dodecahedron_vertices()) mu.points.push_back({v.normalized(), 9.0 / 280});
    return mu;
}

}  // namespace

const std::vector<std::string>& builtin_distribution_names() {
    static const std::vector<std::string> names = {
        "tetrahedron", "octahedron", "cube", "icosahedron",
        "dodecahedron", "mu24", "mu32", "isotropic"};
    return names;
}

SphereDistribution builtin_distribution(const std::string& name) {
    SphereDistribution mu;
    if (name == "tetrahedron") {
        mu = equal_weight(name, {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}});
    } else if (name == "octahedron") {
        mu = equal_weight(name, {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
    } else if (name == "cube") {
        std::vector<Vec3> pts;
        for (double sx : {1.0, -1.0})
            for (double sy : {1.0, -1.0})
                for (double sz : {1.0, -1.0}) pts.push_back({sx, sy, sz});
        mu = equal_weight(name, pts);
    } else if (name == "icosahedron") {
        mu = equal_weight(name, icosahedron_vertices());
    } else if (name == "dodecahedron") {
        mu = equal_weight(name, dodecahedron_vertices());
    } else if (name == "mu24") {
        mu = make_mu24();
    } else if (name == "mu32") {
        mu = make_mu32();
    } else if (name == "isotropic") {
        mu.name = name;
        mu.isotropic = true;
        return mu;
    } else {
        throw validation_error("unknown distribution: " + name);
    }
    mu.validate();
    return mu;
}

SphereDistribution symmetrize(const SphereDistribution& mu) {
    if (mu.isotropic) return mu;
    SphereDistribution out;
    out.name = mu.name + "_sym";
    auto add = [&out](const Vec3& v, double w) {
        for (auto& p : out.points) {
            double d = std::sqrt((p.v.x - v.x) * (p.v.x - v.x) + (p.v.y - v.y) * (p.v.y - v.y) +
                                 (p.v.z - v.z) * (p.v.z - v.z));
            if (d < 1e-10) {
                p.w += w;
                return;
            }
        }
        out.points.push_back({v, w});
    };
    for (const auto& p : mu.points) {
        add(p.v, p.w / 2);
        add(-p.v, p.w / 2);
    }
    return out;
}

int distinct_test_count(const SphereDistribution& mu) {
    if (mu.isotropic) return -1;  // infinite; callers print it specially
    std::vector<char> merged(mu.points.size(), 0);
    int count = 0;
    for (std::size_t i = 0; i < mu.points.size(); ++i) {
        if (merged[i]) continue;
        ++count;
        for (std::size_t j = i + 1; j < mu.points.size(); ++j) {
            const Vec3 a = mu.points[i].v, b = -mu.points[j].v;
            if (std::abs(a.x - b.x) < 1e-10 && std::abs(a.y - b.y) < 1e-10 &&
                std::abs(a.z - b.z) < 1e-10)
                merged[j] = 1;
        }
    }
    return count;
}

double frame_potential(const SphereDistribution& mu, int t) {
    if (t < 0 || t % 2 != 0)
        throw validation_error("frame potential defined here for even t only");
    if (mu.isotropic) return 1.0 / (t + 1);
    double s = 0;
    for (const auto& p : mu.points)
        for (const auto& q : mu.points) s += p.w * q.w * std::pow(p.v.dot(q.v), t);
    return s;
}

double isotropic_moment(int a, int b, int c) {
    if (a % 2 || b % 2 || c % 2) return 0.0;
    auto dfact = [](int n) {
        double r = 1;
        for (; n > 1; n -= 2) r *= n;
        return r;
    };
    return dfact(a - 1) * dfact(b - 1) * dfact(c - 1) / dfact(a + b + c + 1);
}

int design_strength(const SphereDistribution& mu) {
    if (mu.isotropic) return kDesignStrengthUnbounded;
    mu.validate();
    int strength = 0;
    for (int k = 1; k <= kDesignStrengthCap; ++k) {
        for (int a = 0; a <= k; ++a)
            for (int b = 0; a + b <= k; ++b) {
                int c = k - a - b;
                double m = 0;
                for (const auto& p : mu.points)
                    m += p.w * std::pow(p.v.x, a) * std::pow(p.v.y, b) * std::pow(p.v.z, c);
                if (std::abs(m - isotropic_moment(a, b, c)) > 1e-10) return strength;
            }
        strength = k;
    }
    return strength;
}

SphereDistribution distribution_from_json_text(const std::string& text, bool* rescaled) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("bad distribution JSON: ") + e.what());
    }
    if (!j.is_array()) throw validation_error("distribution JSON must be a list");
    SphereDistribution mu;
    mu.name = "custom";
    double total = 0;
    for (const auto& item : j) {
        if (!item.contains("v") || !item.contains("w"))
            throw validation_error("each distribution point needs \"v\" and \"w\"");
        auto v = item.at("v");
        if (!v.is_array() || v.size() != 3) throw validation_error("\"v\" must be [x,y,z]");
        Vec3 dir{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
        if (std::abs(dir.norm() - 1.0) > 1e-9)
            throw validation_error("distribution points must be unit vectors");
        double w = item.at("w").get<double>();
        if (w <= 0) throw validation_error("weights must be positive");
        mu.points.push_back({dir.normalized(), w});
        total += w;
    }
    if (mu.points.empty()) throw validation_error("distribution has no points");
    if (rescaled) *rescaled = std::abs(total - 1.0) > 1e-12;
    for (auto& p : mu.points) p.w /= total;
    return mu;
}

}  // namespace aklt

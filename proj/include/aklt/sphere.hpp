#pragma once

#include <string>
#include <vector>

#include "aklt/linalg.hpp"

namespace aklt {

struct WeightedDirection {
    Vec3 v;
    double w = 0;
};

// A finite weighted set of unit vectors (weights positive, summing to 1).
// The isotropic (uniform) distribution is carried as a flag and handled
// analytically wherever it appears.
struct SphereDistribution {
    std::string name;  // informational
    std::vector<WeightedDirection> points;
    bool isotropic = false;

    void validate() const;  // unit norms, positive weights, sum 1
    std::size_t support_size() const { return points.size(); }
};

// tetrahedron, octahedron, cube, icosahedron, dodecahedron, mu24, mu32,
// isotropic.
SphereDistribution builtin_distribution(const std::string& name);
const std::vector<std::string>& builtin_distribution_names();  // the 8 above

// Average of mu and its center inversion, antipodal duplicates merged.
SphereDistribution symmetrize(const SphereDistribution& mu);

// Number of distinct canonical tests: antipodal pairs count once.
int distinct_test_count(const SphereDistribution& mu);

// f_t(mu) = sum_{r,s} w_r w_s (r.s)^t for even t >= 0.
double frame_potential(const SphereDistribution& mu, int t);

// Largest t <= 11 such that mu reproduces all isotropic moments of order <= t.
// The isotropic distribution reports the unbounded sentinel.
constexpr int kDesignStrengthCap = 11;
constexpr int kDesignStrengthUnbounded = 1 << 20;
int design_strength(const SphereDistribution& mu);

// E_iso[x^a y^b z^c] over the unit sphere.
double isotropic_moment(int a, int b, int c);

// File format: JSON list of {"v":[x,y,z],"w":weight}. Unnormalized weights
// are rescaled (with a warning flag for the caller).
SphereDistribution distribution_from_json_text(const std::string& text, bool* rescaled = nullptr);

}  // namespace aklt

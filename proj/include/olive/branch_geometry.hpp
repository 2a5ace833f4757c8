#pragma once

#include <cstdint>
#include <vector>

#include "olive/bezier.hpp"
#include "olive/mesh.hpp"

namespace olive {

// Parametric lanceolate olive leaf, a lightweight stand-in for a scanned
// leaf. Local frame: length along +x from the stem at the origin, blade in
// the xz-plane, curl bending the tip out of plane along +y.
struct LeafParams {
    double length = 6.0; // cm
    double width = 1.3;  // cm, must be < length
    double curl = 0.12;  // tip lift as a fraction of length
    int segments = 8;    // bands along the length
};

void validate(const LeafParams& params);

// Tube mesh swept along the curve for t in [0, prune_t]: ring centers lie on
// the curve, radius tapers linearly base -> tip, ends are capped with fans.
// Watertight (V - E + F = 2).
TriMesh tessellate_branch(const BezierCurve& curve, double radius_base,
                          double radius_tip, int rings, int sides,
                          double prune_t = 1.0);

// Single low-polygon leaf (<= 64 triangles) with UVs covering [0,1]^2.
// Seed jitters the in-plane proportions only, so curl = 0 stays planar.
TriMesh make_leaf(const LeafParams& params, std::uint64_t rng_seed);

// `count` instance poses along the curve: translation at stratified-random
// t, rotation within orientation_jitter_deg of the rotation-minimizing
// tangent frame, uniform scale within [1 - size_jitter, 1 + size_jitter].
// Jitter bounds are hard bounds. Calling with zero jitters replays the
// canonical (unjittered) poses for the same seed.
std::vector<InstanceTransform> scatter_on_curve(const BezierCurve& curve,
                                                int count,
                                                double orientation_jitter_deg,
                                                double size_jitter,
                                                std::uint64_t rng_seed);

// Seeded degree-5 branch curve marching roughly along +x with lateral
// wander; the raw material for branch prototypes and `export-mesh branch`.
BezierCurve random_branch_curve(std::uint64_t rng_seed, double length = 40.0,
                                double wander = 7.0);

} // namespace olive

#pragma once

#include <cstdint>

#include "olive/mesh.hpp"

namespace olive {

// Parametric olive shape. The fruit starts as the ellipsoid
// x^2/a^2 + y^2/b^2 + z^2/c^2 = 1 (long axis +z), grows a tip along +z,
// is Laplacian-smoothed, and is finally normalized to `final_dims`.
struct OliveShapeParams {
    double a = 1.2; // semi-axis, cm
    double b = 1.2; // semi-axis, cm
    double c = 2.3; // semi-axis, cm

    double tip_fraction = 0.25;  // portion of the +z extent that gets extended
    double tip_extension = 0.2;  // cm of added length at the pole
    int smoothing_iterations = 2;
    double smoothing_lambda = 0.5;

    int lat_segments = 24; // >= 8
    int lon_segments = 24; // >= 8

    double scale_jitter = 0.0; // uniform factor in [1 - j, 1 + j], j in [0,1)

    // Bounding-box extents (x, y, z) the finished fruit is scaled to;
    // any non-positive component disables normalization on that axis.
    Vec3 final_dims = Vec3(1.4, 1.4, 2.5);
};

void validate(const OliveShapeParams& params);

// Lat/lon tessellation of the ellipsoid with shared pole vertices and a
// shared longitude seam, so the result is watertight (V - E + F = 2).
// Normals are the analytic ellipsoid normals.
TriMesh generate_ellipsoid(const OliveShapeParams& params);

// Displaces vertices with z above (1 - tip_fraction) * c along +z by
// tip_extension * s^2, where s ramps linearly from 0 at the region border
// to 1 at the pole. Topology is unchanged; normals are recomputed.
TriMesh extend_tip(const TriMesh& mesh, const OliveShapeParams& params);

// Uniform Laplacian smoothing: each vertex moves toward the centroid of its
// edge-connected neighbors by `lambda` per iteration.
TriMesh smooth(const TriMesh& mesh, int iterations, double lambda = 0.5);

// Full pipeline: ellipsoid -> tip extension -> smoothing -> normalization to
// final_dims -> seeded uniform scale jitter. Pure in (params, seed).
TriMesh make_olive(const OliveShapeParams& params, std::uint64_t rng_seed);

} // namespace olive

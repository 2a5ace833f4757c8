#include "olive/olive_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "olive/errors.hpp"
#include "olive/rng.hpp"

namespace olive {

namespace {

constexpr double kPi = 3.14159265358979323846;

} // namespace

void validate(const OliveShapeParams& params) {
    if (params.a <= 0.0 || params.b <= 0.0 || params.c <= 0.0)
        throw ParamError("ellipsoid semi-axes must be positive");
    if (params.lat_segments < 8 || params.lon_segments < 8)
        throw ParamError("segment counts must be >= 8");
    if (params.tip_fraction <= 0.0 || params.tip_fraction >= 1.0)
        throw ParamError("tip_fraction must lie in (0,1)");
    if (params.tip_extension < 0.0)
        throw ParamError("tip_extension must be non-negative");
    if (params.smoothing_iterations < 0)
        throw ParamError("smoothing_iterations must be non-negative");
    if (params.scale_jitter < 0.0 || params.scale_jitter >= 1.0)
        throw ParamError("scale_jitter must lie in [0,1)");
}

TriMesh generate_ellipsoid(const OliveShapeParams& params) {
    validate(params);
    const int lat = params.lat_segments;
    const int lon = params.lon_segments;

    TriMesh mesh;
    mesh.material_id = "olive";
    mesh.closed = true;

    // North pole (+z), interior rings, south pole. Shared seam keeps the
    // mesh watertight; u wraps at the last band.
    mesh.vertices.emplace_back(0.0, 0.0, params.c);
    mesh.normals.emplace_back(0.0, 0.0, 1.0);
    mesh.uvs.emplace_back(0.5, 1.0);

    for (int i = 1; i < lat; ++i) {
        const double theta = kPi * static_cast<double>(i) / lat; // from +z
        const double st = std::sin(theta);
        const double ct = std::cos(theta);
        for (int j = 0; j < lon; ++j) {
            const double phi = 2.0 * kPi * static_cast<double>(j) / lon;
            const Vec3 p(params.a * st * std::cos(phi),
                         params.b * st * std::sin(phi),
                         params.c * ct);
            mesh.vertices.push_back(p);
            // Analytic gradient of the implicit ellipsoid.
            Vec3 n(p.x() / (params.a * params.a),
                   p.y() / (params.b * params.b),
                   p.z() / (params.c * params.c));
            mesh.normals.push_back(n.normalized());
            mesh.uvs.emplace_back(static_cast<double>(j) / lon,
                                  1.0 - static_cast<double>(i) / lat);
        }
    }

    mesh.vertices.emplace_back(0.0, 0.0, -params.c);
    mesh.normals.emplace_back(0.0, 0.0, -1.0);
    mesh.uvs.emplace_back(0.5, 0.0);

    const auto ring = [lon](int i, int j) -> std::uint32_t {
        return static_cast<std::uint32_t>(1 + (i - 1) * lon + (j % lon));
    };
    const std::uint32_t north = 0;
    const std::uint32_t south = static_cast<std::uint32_t>(mesh.vertices.size() - 1);

    for (int j = 0; j < lon; ++j)
        mesh.triangles.push_back({north, ring(1, j), ring(1, j + 1)});
    for (int i = 1; i < lat - 1; ++i) {
        for (int j = 0; j < lon; ++j) {
            const std::uint32_t a = ring(i, j);
            const std::uint32_t b = ring(i, j + 1);
            const std::uint32_t c = ring(i + 1, j + 1);
            const std::uint32_t d = ring(i + 1, j);
            // Outward winding: ring i+1 sits below ring i.
            mesh.triangles.push_back({a, c, b});
            mesh.triangles.push_back({a, d, c});
        }
    }
    for (int j = 0; j < lon; ++j)
        mesh.triangles.push_back({south, ring(lat - 1, j + 1), ring(lat - 1, j)});

    return mesh;
}

TriMesh extend_tip(const TriMesh& mesh, const OliveShapeParams& params) {
    validate(params);
    TriMesh out = mesh;
    const double z0 = (1.0 - params.tip_fraction) * params.c;
    const double span = params.c - z0;
    for (Vec3& v : out.vertices) {
        if (v.z() > z0) {
            const double s = std::min(1.0, (v.z() - z0) / span);
            v.z() += params.tip_extension * s * s;
        }
    }
    recompute_normals(out);
    return out;
}

TriMesh smooth(const TriMesh& mesh, int iterations, double lambda) {
    if (iterations < 0) throw ParamError("iterations must be non-negative");
    TriMesh out = mesh;
    if (iterations == 0 || out.vertices.empty()) return out;

    // Unique edge-connected neighbor lists per vertex.
    std::vector<std::vector<std::uint32_t>> neighbors(out.vertices.size());
    for (const auto& tri : out.triangles) {
        for (int k = 0; k < 3; ++k) {
            const std::uint32_t a = tri[k];
            const std::uint32_t b = tri[(k + 1) % 3];
            neighbors[a].push_back(b);
            neighbors[b].push_back(a);
        }
    }
    for (auto& list : neighbors) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }

    std::vector<Vec3> next(out.vertices.size());
    for (int it = 0; it < iterations; ++it) {
        for (std::size_t i = 0; i < out.vertices.size(); ++i) {
            if (neighbors[i].empty()) {
                next[i] = out.vertices[i];
                continue;
            }
            Vec3 centroid = Vec3::Zero();
            for (std::uint32_t j : neighbors[i]) centroid += out.vertices[j];
            centroid /= static_cast<double>(neighbors[i].size());
            next[i] = out.vertices[i] + lambda * (centroid - out.vertices[i]);
        }
        out.vertices.swap(next);
    }
    recompute_normals(out);
    return out;
}

TriMesh make_olive(const OliveShapeParams& params, std::uint64_t rng_seed) {
    validate(params);
    TriMesh mesh = generate_ellipsoid(params);
    mesh = extend_tip(mesh, params);
    mesh = smooth(mesh, params.smoothing_iterations, params.smoothing_lambda);

    // Normalize each axis to the configured harvest-size extents.
    const Eigen::AlignedBox3d box = bounding_box(mesh);
    Vec3 scale = Vec3::Ones();
    for (int axis = 0; axis < 3; ++axis) {
        const double extent = box.sizes()[axis];
        if (params.final_dims[axis] > 0.0 && extent > 0.0)
            scale[axis] = params.final_dims[axis] / extent;
    }
    const Vec3 center = box.center();
    for (Vec3& v : mesh.vertices)
        v = scale.cwiseProduct(v - center);

    Rng rng(rng_seed);
    const double jitter =
        rng.uniform(1.0 - params.scale_jitter, 1.0 + params.scale_jitter);
    for (Vec3& v : mesh.vertices) v *= jitter;

    recompute_normals(mesh);
    return mesh;
}

} // namespace olive

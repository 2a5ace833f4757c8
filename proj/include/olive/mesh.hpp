#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace olive {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Quat = Eigen::Quaterniond;

// Indexed triangle mesh with per-vertex normals and UVs. Positions are in
// centimeters. `closed` marks watertight meshes (sphere topology), which the
// renderer may backface-cull.
struct TriMesh {
    std::vector<Vec3> vertices;
    std::vector<Vec3> normals;
    std::vector<Vec2> uvs;
    std::vector<std::array<std::uint32_t, 3>> triangles;
    std::string material_id;
    bool closed = false;

    [[nodiscard]] std::size_t vertex_count() const { return vertices.size(); }
    [[nodiscard]] std::size_t triangle_count() const { return triangles.size(); }
};

// V - E + F over unique undirected edges; 2 for sphere topology.
int euler_characteristic(const TriMesh& mesh);

double surface_area(const TriMesh& mesh);

Eigen::AlignedBox3d bounding_box(const TriMesh& mesh);

// Area-weighted per-vertex normals from the triangle fan around each vertex.
void recompute_normals(TriMesh& mesh);

// Throws GeometryError on out-of-range indices, degenerate (zero-area)
// triangles, or non-unit normals.
void validate(const TriMesh& mesh);

// Rigid pose plus uniform scale, applied as translate * rotate * scale.
struct InstanceTransform {
    Vec3 translation = Vec3::Zero();
    Quat rotation = Quat::Identity();
    double scale = 1.0;

    [[nodiscard]] Vec3 apply(const Vec3& p) const {
        return translation + rotation * (scale * p);
    }
    [[nodiscard]] Vec3 apply_direction(const Vec3& d) const { return rotation * d; }

    // Composition: (a * b).apply(p) == a.apply(b.apply(p)).
    [[nodiscard]] InstanceTransform operator*(const InstanceTransform& rhs) const {
        InstanceTransform out;
        out.translation = apply(rhs.translation);
        out.rotation = rotation * rhs.rotation;
        out.scale = scale * rhs.scale;
        return out;
    }
};

// Copy of the mesh with the transform baked into vertices and normals.
TriMesh transformed(const TriMesh& mesh, const InstanceTransform& t);

} // namespace olive

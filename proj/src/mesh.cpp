#include "olive/mesh.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "olive/errors.hpp"

namespace olive {

int euler_characteristic(const TriMesh& mesh) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (const auto& tri : mesh.triangles) {
        for (int k = 0; k < 3; ++k) {
            std::uint32_t a = tri[k];
            std::uint32_t b = tri[(k + 1) % 3];
            if (a > b) std::swap(a, b);
            edges.emplace(a, b);
        }
    }
    const auto v = static_cast<long>(mesh.vertices.size());
    const auto e = static_cast<long>(edges.size());
    const auto f = static_cast<long>(mesh.triangles.size());
    return static_cast<int>(v - e + f);
}

double surface_area(const TriMesh& mesh) {
    double area = 0.0;
    for (const auto& tri : mesh.triangles) {
        const Vec3& a = mesh.vertices[tri[0]];
        const Vec3& b = mesh.vertices[tri[1]];
        const Vec3& c = mesh.vertices[tri[2]];
        area += 0.5 * (b - a).cross(c - a).norm();
    }
    return area;
}

Eigen::AlignedBox3d bounding_box(const TriMesh& mesh) {
    Eigen::AlignedBox3d box;
    for (const Vec3& v : mesh.vertices) box.extend(v);
    return box;
}

void recompute_normals(TriMesh& mesh) {
    mesh.normals.assign(mesh.vertices.size(), Vec3::Zero());
    for (const auto& tri : mesh.triangles) {
        const Vec3& a = mesh.vertices[tri[0]];
        const Vec3& b = mesh.vertices[tri[1]];
        const Vec3& c = mesh.vertices[tri[2]];
        const Vec3 n = (b - a).cross(c - a); // area-weighted
        mesh.normals[tri[0]] += n;
        mesh.normals[tri[1]] += n;
        mesh.normals[tri[2]] += n;
    }
    for (Vec3& n : mesh.normals) {
        const double len = n.norm();
        n = len > 0.0 ? Vec3(n / len) : Vec3::UnitZ();
    }
}

void validate(const TriMesh& mesh) {
    const auto n = mesh.vertices.size();
    if (mesh.normals.size() != n || mesh.uvs.size() != n)
        throw GeometryError("mesh attribute arrays disagree with vertex count");
    for (const auto& tri : mesh.triangles) {
        for (std::uint32_t idx : tri)
            if (idx >= n) throw GeometryError("triangle index out of range");
        const Vec3& a = mesh.vertices[tri[0]];
        const Vec3& b = mesh.vertices[tri[1]];
        const Vec3& c = mesh.vertices[tri[2]];
        if (0.5 * (b - a).cross(c - a).norm() <= 1e-10)
            throw GeometryError("degenerate (zero-area) triangle");
    }
    for (const Vec3& nrm : mesh.normals)
        if (std::abs(nrm.norm() - 1.0) > 1e-6)
            throw GeometryError("non-unit vertex normal");
}

TriMesh transformed(const TriMesh& mesh, const InstanceTransform& t) {
    TriMesh out = mesh;
    for (Vec3& v : out.vertices) v = t.apply(v);
    for (Vec3& n : out.normals) n = t.apply_direction(n);
    return out;
}

} // namespace olive

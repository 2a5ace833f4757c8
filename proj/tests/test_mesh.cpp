#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <sstream>

#include "olive/errors.hpp"
#include "olive/mesh.hpp"
#include "olive/obj_export.hpp"

using namespace olive;

namespace {

TriMesh unit_tetrahedron() {
    TriMesh mesh;
    mesh.vertices = {Vec3(1, 1, 1), Vec3(1, -1, -1), Vec3(-1, 1, -1), Vec3(-1, -1, 1)};
    mesh.triangles = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
    mesh.uvs.assign(4, Vec2(0.5, 0.5));
    recompute_normals(mesh);
    return mesh;
}

} // namespace

TEST_CASE("tetrahedron is a topological sphere") {
    CHECK(euler_characteristic(unit_tetrahedron()) == 2);
}

TEST_CASE("validate catches bad indices and degenerate triangles") {
    TriMesh mesh = unit_tetrahedron();
    CHECK_NOTHROW(validate(mesh));

    TriMesh bad_index = mesh;
    bad_index.triangles.push_back({0, 1, 9});
    CHECK_THROWS_AS(validate(bad_index), GeometryError);

    TriMesh degenerate = mesh;
    degenerate.vertices.push_back(degenerate.vertices[0]);
    degenerate.normals.push_back(Vec3::UnitZ());
    degenerate.uvs.push_back(Vec2(0, 0));
    degenerate.triangles.push_back({0, 0, 4});
    CHECK_THROWS_AS(validate(degenerate), GeometryError);
}

TEST_CASE("instance transforms compose like their matrix product") {
    InstanceTransform a;
    a.translation = Vec3(1, 2, 3);
    a.rotation = Quat(Eigen::AngleAxisd(0.7, Vec3::UnitY()));
    a.scale = 2.0;
    InstanceTransform b;
    b.translation = Vec3(-4, 0, 1);
    b.rotation = Quat(Eigen::AngleAxisd(-1.1, Vec3(1, 1, 0).normalized()));
    b.scale = 0.5;

    const Vec3 p(0.3, -0.8, 2.2);
    const Vec3 via_compose = (a * b).apply(p);
    const Vec3 via_chain = a.apply(b.apply(p));
    CHECK((via_compose - via_chain).norm() < 1e-12);
}

TEST_CASE("surface area of the unit tetrahedron matches the closed form") {
    // Edge length 2*sqrt(2); area = sqrt(3) * edge^2.
    const double edge = 2.0 * std::sqrt(2.0);
    CHECK(surface_area(unit_tetrahedron()) ==
          doctest::Approx(std::sqrt(3.0) * edge * edge).epsilon(1e-12));
}

TEST_CASE("obj export emits well-formed records that reparse") {
    const TriMesh mesh = unit_tetrahedron();
    std::ostringstream out;
    write_obj(out, mesh);
    const std::string text = out.str();

    std::istringstream in(text);
    std::string line;
    int v = 0, vt = 0, vn = 0, f = 0;
    while (std::getline(in, line)) {
        if (line.rfind("v ", 0) == 0) ++v;
        if (line.rfind("vt ", 0) == 0) ++vt;
        if (line.rfind("vn ", 0) == 0) ++vn;
        if (line.rfind("f ", 0) == 0) {
            ++f;
            int a, b, c;
            CHECK(std::sscanf(line.c_str(), "f %d/%*d/%*d %d/%*d/%*d %d/%*d/%*d",
                              &a, &b, &c) == 3);
            for (int idx : {a, b, c}) {
                CHECK(idx >= 1);
                CHECK(idx <= static_cast<int>(mesh.vertex_count()));
            }
        }
    }
    CHECK(v == 4);
    CHECK(vt == 4);
    CHECK(vn == 4);
    CHECK(f == 4);
}

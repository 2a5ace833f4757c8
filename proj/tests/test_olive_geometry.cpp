#include <doctest.h>

#include <cmath>

#include "olive/errors.hpp"
#include "olive/olive_geometry.hpp"

using namespace olive;

namespace {

double ellipsoid_residual(const TriMesh& mesh, const OliveShapeParams& p) {
    double worst = 0.0;
    for (const Vec3& v : mesh.vertices) {
        const double r = v.x() * v.x() / (p.a * p.a) + v.y() * v.y() / (p.b * p.b) +
                         v.z() * v.z() / (p.c * p.c);
        worst = std::max(worst, std::abs(r - 1.0));
    }
    return worst;
}

} // namespace

TEST_CASE("ellipsoid vertices satisfy the implicit equation") {
    const OliveShapeParams params;
    const TriMesh mesh = generate_ellipsoid(params);
    CHECK(ellipsoid_residual(mesh, params) < 1e-6);

    // Pole vertex sits exactly on the long axis.
    CHECK(mesh.vertices[0].x() == 0.0);
    CHECK(mesh.vertices[0].y() == 0.0);
    CHECK(mesh.vertices[0].z() == doctest::Approx(2.3).epsilon(1e-15));
}

TEST_CASE("unit-sphere degenerate case") {
    OliveShapeParams params;
    params.a = params.b = params.c = 1.0;
    const TriMesh mesh = generate_ellipsoid(params);
    for (const Vec3& v : mesh.vertices)
        CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("default ellipsoid bounding box is 2.4 x 2.4 x 4.6") {
    const TriMesh mesh = generate_ellipsoid(OliveShapeParams{});
    const auto box = bounding_box(mesh);
    CHECK(box.sizes().x() == doctest::Approx(2.4).epsilon(0.01));
    CHECK(box.sizes().y() == doctest::Approx(2.4).epsilon(0.01));
    CHECK(box.sizes().z() == doctest::Approx(4.6).epsilon(0.01));
}

TEST_CASE("ellipsoid is closed, valid, and rejects bad parameters") {
    const TriMesh mesh = generate_ellipsoid(OliveShapeParams{});
    CHECK(euler_characteristic(mesh) == 2);
    CHECK_NOTHROW(validate(mesh));

    OliveShapeParams bad;
    bad.a = -1.0;
    CHECK_THROWS_AS(generate_ellipsoid(bad), ParamError);
    bad = OliveShapeParams{};
    bad.lat_segments = 4;
    CHECK_THROWS_AS(generate_ellipsoid(bad), ParamError);
}

TEST_CASE("zero tip extension is the identity") {
    OliveShapeParams params;
    params.tip_extension = 0.0;
    const TriMesh mesh = generate_ellipsoid(params);
    const TriMesh out = extend_tip(mesh, params);
    REQUIRE(out.vertices.size() == mesh.vertices.size());
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
        CHECK((out.vertices[i] - mesh.vertices[i]).norm() == 0.0);
}

TEST_CASE("tip extension adds exactly tip_extension at the pole") {
    const OliveShapeParams params;
    const TriMesh mesh = generate_ellipsoid(params);
    const TriMesh out = extend_tip(mesh, params);

    const double before = bounding_box(mesh).max().z();
    const double after = bounding_box(out).max().z();
    CHECK(after - before == doctest::Approx(params.tip_extension).epsilon(1e-6));

    // Vertices outside the tip region are untouched.
    const double z0 = (1.0 - params.tip_fraction) * params.c;
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
        if (mesh.vertices[i].z() <= z0)
            CHECK((out.vertices[i] - mesh.vertices[i]).norm() == 0.0);
    CHECK(out.triangle_count() == mesh.triangle_count());
}

TEST_CASE("one smoothing step moves tetrahedron vertices halfway to the rest") {
    TriMesh tetra;
    tetra.vertices = {Vec3(1, 1, 1), Vec3(1, -1, -1), Vec3(-1, 1, -1),
                      Vec3(-1, -1, 1)};
    tetra.triangles = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
    tetra.uvs.assign(4, Vec2(0, 0));
    recompute_normals(tetra);

    const TriMesh out = smooth(tetra, 1, 0.5);
    for (std::size_t i = 0; i < 4; ++i) {
        Vec3 centroid = Vec3::Zero();
        for (std::size_t j = 0; j < 4; ++j)
            if (j != i) centroid += tetra.vertices[j];
        centroid /= 3.0;
        const Vec3 expected = 0.5 * (tetra.vertices[i] + centroid);
        CHECK((out.vertices[i] - expected).norm() < 1e-12);
    }
}

TEST_CASE("smoothing is identity at zero iterations and contracts the mesh") {
    const TriMesh mesh = generate_ellipsoid(OliveShapeParams{});
    const TriMesh same = smooth(mesh, 0);
    CHECK((same.vertices[10] - mesh.vertices[10]).norm() == 0.0);

    // Convex-combination containment: a smoothed sphere stays inside the
    // original radius, and surface area never grows per iteration.
    OliveShapeParams sphere_params;
    sphere_params.a = sphere_params.b = sphere_params.c = 1.0;
    TriMesh sphere = generate_ellipsoid(sphere_params);
    double prev_area = surface_area(sphere);
    for (int it = 0; it < 3; ++it) {
        sphere = smooth(sphere, 1);
        const double area = surface_area(sphere);
        CHECK(area <= prev_area + 1e-12);
        prev_area = area;
        for (const Vec3& v : sphere.vertices) CHECK(v.norm() <= 1.0 + 1e-9);
    }
}

TEST_CASE("make_olive is deterministic in (params, seed)") {
    const OliveShapeParams params;
    const TriMesh a = make_olive(params, 1234);
    const TriMesh b = make_olive(params, 1234);
    REQUIRE(a.vertices.size() == b.vertices.size());
    for (std::size_t i = 0; i < a.vertices.size(); ++i)
        CHECK((a.vertices[i] - b.vertices[i]).norm() == 0.0);

    const TriMesh c = make_olive(params, 1235);
    CHECK((a.vertices[5] - c.vertices[5]).norm() == 0.0); // jitter 0: seed inert
}

TEST_CASE("default olive lands on the harvest dimensions") {
    const TriMesh olive = make_olive(OliveShapeParams{}, 7);
    const auto box = bounding_box(olive);
    CHECK(box.sizes().z() == doctest::Approx(2.5).epsilon(0.02));
    CHECK(box.sizes().x() == doctest::Approx(1.4).epsilon(0.02));
    CHECK(box.sizes().y() == doctest::Approx(1.4).epsilon(0.02));
    CHECK(euler_characteristic(olive) == 2);
    CHECK_NOTHROW(validate(olive));
}

TEST_CASE("scale jitter keeps the diagonal within its bound over many seeds") {
    OliveShapeParams params;
    params.scale_jitter = 0.05;
    params.lat_segments = 8;
    params.lon_segments = 8;

    OliveShapeParams no_jitter = params;
    no_jitter.scale_jitter = 0.0;
    const double base = bounding_box(make_olive(no_jitter, 0)).diagonal().norm();

    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const double diag = bounding_box(make_olive(params, seed)).diagonal().norm();
        CHECK(diag >= base * 0.95 - 1e-9);
        CHECK(diag <= base * 1.05 + 1e-9);
    }
}

TEST_CASE("topology is preserved end to end") {
    const OliveShapeParams params;
    const TriMesh ellipsoid = generate_ellipsoid(params);
    const TriMesh olive = make_olive(params, 3);
    CHECK(olive.triangle_count() == ellipsoid.triangle_count());
    CHECK(olive.vertex_count() == ellipsoid.vertex_count());
    for (std::size_t t = 0; t < olive.triangles.size(); ++t)
        CHECK(olive.triangles[t] == ellipsoid.triangles[t]);
}

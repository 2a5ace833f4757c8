#include <doctest.h>

#include <cmath>

#include "olive/errors.hpp"
#include "olive/olive_geometry.hpp"
#include "olive/render.hpp"

using namespace olive;

namespace {

constexpr double kPi = 3.14159265358979323846;

SceneGraph minimal_scene() {
    SceneGraph scene;
    scene.camera.position = Vec3(0, 0, 8);
    scene.camera.look_at = Vec3::Zero();
    scene.camera.vertical_fov = 45.0;
    scene.materials = [] {
        std::vector<Material> mats;
        for (const auto& preset : builtin_presets()) {
            Material m;
            m.kind = MaterialKind::olive_skin;
            m.olive = preset;
            mats.push_back(m);
        }
        Material leaf;
        leaf.kind = MaterialKind::leaf;
        mats.push_back(leaf);
        return mats;
    }();
    scene.lights.push_back({Vec3(0, 0, -1), Rgb(1, 1, 1)});
    scene.ambient = Rgb(0.3, 0.3, 0.3);
    scene.background = Background::overcast;
    return scene;
}

void add_instance(SceneGraph& scene, std::shared_ptr<const TriMesh> mesh,
                  SemanticClass cls, const Vec3& pos, int material = 0) {
    SceneInstance inst;
    inst.mesh = std::move(mesh);
    inst.transform.translation = pos;
    inst.material = material;
    inst.semantic_class = cls;
    scene.instances.push_back(std::move(inst));
}

std::shared_ptr<const TriMesh> quad_mesh(double half, double z,
                                         const std::string& id) {
    auto mesh = std::make_shared<TriMesh>();
    mesh->material_id = id;
    mesh->vertices = {Vec3(-half, -half, z), Vec3(half, -half, z),
                      Vec3(half, half, z), Vec3(-half, half, z)};
    mesh->normals.assign(4, Vec3::UnitZ());
    mesh->uvs = {Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)};
    mesh->triangles = {{0, 1, 2}, {0, 2, 3}};
    return mesh;
}

// Does the center ray of pixel (px, py) hit the origin-centered ellipsoid
// with semi-axes scaled by `s`? Camera replicated from the test scene.
bool analytic_ellipsoid_hit(const CameraSpec& cam, int width, int height, int px,
                            int py, const Vec3& radii, double s) {
    const double tan_half = std::tan(0.5 * cam.vertical_fov * kPi / 180.0);
    const double aspect = static_cast<double>(width) / height;
    const double ndc_x = (2.0 * (px + 0.5) / width - 1.0) * tan_half * aspect;
    const double ndc_y = (1.0 - 2.0 * (py + 0.5) / height) * tan_half;
    const Vec3 dir(ndc_x, ndc_y, -1.0);
    const Vec3 origin = cam.position;

    double A = 0, B = 0, C = -1;
    for (int i = 0; i < 3; ++i) {
        const double r = radii[i] * s;
        A += dir[i] * dir[i] / (r * r);
        B += 2.0 * origin[i] * dir[i] / (r * r);
        C += origin[i] * origin[i] / (r * r);
    }
    const double disc = B * B - 4 * A * C;
    if (disc < 0) return false;
    const double t = (-B - std::sqrt(disc)) / (2 * A);
    return t > 0;
}

} // namespace

TEST_CASE("no olives means an all-zero mask") {
    SceneGraph scene = minimal_scene();
    add_instance(scene, quad_mesh(3.0, 0.0, "leaf"), SemanticClass::leaf,
                 Vec3::Zero(), 11);
    RenderConfig config;
    config.width = config.height = 32;
    const ImageMaskPair pair = render(scene, config);
    CHECK(pair.image.width == pair.mask.width);
    CHECK(pair.image.height == pair.mask.height);
    for (std::uint8_t v : pair.mask.data) CHECK(v == 0);
}

TEST_CASE("olive silhouette matches the analytic ellipsoid") {
    SceneGraph scene = minimal_scene();
    OliveShapeParams params;
    params.lat_segments = 48;
    params.lon_segments = 48;
    auto ellipsoid = std::make_shared<TriMesh>(generate_ellipsoid(params));
    add_instance(scene, ellipsoid, SemanticClass::olive, Vec3::Zero(), 0);

    RenderConfig config;
    config.width = config.height = 48;
    config.samples_per_pixel = 1;
    const ImageMaskPair pair = render(scene, config);

    const Vec3 radii(params.a, params.b, params.c);
    int interior = 0;
    for (int y = 0; y < 48; ++y) {
        for (int x = 0; x < 48; ++x) {
            if (analytic_ellipsoid_hit(scene.camera, 48, 48, x, y, radii, 0.97)) {
                CHECK(pair.mask.at(x, y) == 255); // strict interior
                ++interior;
            } else if (!analytic_ellipsoid_hit(scene.camera, 48, 48, x, y, radii,
                                               1.03)) {
                CHECK(pair.mask.at(x, y) == 0); // strict exterior
            }
        }
    }
    CHECK(interior > 100); // the fruit actually fills a chunk of the frame
}

TEST_CASE("mask is visibility-based: an occluded olive contributes nothing") {
    SceneGraph scene = minimal_scene();
    OliveShapeParams params;
    params.lat_segments = 12;
    params.lon_segments = 12;
    auto olive = std::make_shared<TriMesh>(make_olive(params, 1));
    add_instance(scene, olive, SemanticClass::olive, Vec3::Zero(), 0);

    RenderConfig config;
    config.width = config.height = 32;

    const ImageMaskPair visible = render(scene, config);
    int on = 0;
    for (std::uint8_t v : visible.mask.data) on += v == 255;
    CHECK(on > 0);

    // Opaque leaf quad between camera and fruit.
    add_instance(scene, quad_mesh(4.0, 0.0, "leaf"), SemanticClass::leaf,
                 Vec3(0, 0, 4.0), 11);
    const ImageMaskPair hidden = render(scene, config);
    for (std::uint8_t v : hidden.mask.data) CHECK(v == 0);
}

TEST_CASE("raycast oracle: empty scene is all background") {
    const SceneGraph scene = minimal_scene();
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x)
            CHECK(raycast_reference(scene, x, y, 8, 8) == SemanticClass::background);
    CHECK_THROWS_AS(raycast_reference(scene, 8, 0, 8, 8), ParamError);
}

TEST_CASE("raycast oracle sees the olive at the projected center") {
    SceneGraph scene = minimal_scene();
    OliveShapeParams params;
    params.lat_segments = 12;
    params.lon_segments = 12;
    auto olive = std::make_shared<TriMesh>(make_olive(params, 1));
    add_instance(scene, olive, SemanticClass::olive, Vec3::Zero(), 0);
    // Center instance projects to the raster center.
    CHECK(raycast_reference(scene, 16, 16, 32, 32) == SemanticClass::olive);
}

TEST_CASE("rendered center-sample classes equal the raycast map") {
    SceneGraph scene = minimal_scene();
    OliveShapeParams params;
    params.lat_segments = 10;
    params.lon_segments = 10;
    auto olive = std::make_shared<TriMesh>(make_olive(params, 2));
    add_instance(scene, olive, SemanticClass::olive, Vec3(0.6, -0.4, 0), 0);
    add_instance(scene, olive, SemanticClass::olive, Vec3(-1.4, 1.0, -2.0), 3);
    add_instance(scene, quad_mesh(0.8, 0.0, "leaf"), SemanticClass::leaf,
                 Vec3(0.2, 0.4, 2.0), 11);

    RenderConfig config;
    config.width = config.height = 32;
    const auto rendered = render_class_map(scene, config);
    const auto traced = raycast_class_map(scene, 32, 32);
    REQUIRE(rendered.size() == traced.size());
    int agree = 0;
    for (std::size_t i = 0; i < rendered.size(); ++i) agree += rendered[i] == traced[i];
    CHECK(agree == static_cast<int>(rendered.size())); // exact, not just >= 99%
}

TEST_CASE("at one sample per pixel the mask equals the raycast indicator") {
    SceneGraph scene = minimal_scene();
    OliveShapeParams params;
    params.lat_segments = 10;
    params.lon_segments = 10;
    auto olive = std::make_shared<TriMesh>(make_olive(params, 5));
    add_instance(scene, olive, SemanticClass::olive, Vec3(0.3, 0.1, 0.5), 4);
    add_instance(scene, quad_mesh(1.2, 0.0, "leaf"), SemanticClass::leaf,
                 Vec3(-0.6, -0.6, 1.5), 11);

    RenderConfig config;
    config.width = config.height = 24;
    config.samples_per_pixel = 1;
    const ImageMaskPair pair = render(scene, config);
    for (int y = 0; y < 24; ++y) {
        for (int x = 0; x < 24; ++x) {
            const bool olive_hit =
                raycast_reference(scene, x, y, 24, 24) == SemanticClass::olive;
            CHECK(pair.mask.at(x, y) == (olive_hit ? 255 : 0));
        }
    }
}

TEST_CASE("output is invariant to tile size and thread count") {
    SceneGraph scene = minimal_scene();
    OliveShapeParams params;
    params.lat_segments = 10;
    params.lon_segments = 10;
    auto olive = std::make_shared<TriMesh>(make_olive(params, 3));
    for (int i = 0; i < 5; ++i)
        add_instance(scene, olive, SemanticClass::olive,
                     Vec3(-2.0 + i, 0.4 * i - 1.0, -0.5 * i), i % 11);

    RenderConfig config;
    config.width = config.height = 40;

    config.tile_size = 8;
    config.threads = 2;
    const ImageMaskPair a = render(scene, config);
    config.tile_size = 64;
    config.threads = 1;
    const ImageMaskPair b = render(scene, config);
    config.tile_size = 13;
    config.threads = 4;
    const ImageMaskPair c = render(scene, config);

    CHECK(a.image.data == b.image.data);
    CHECK(a.mask.data == b.mask.data);
    CHECK(a.image.data == c.image.data);
    CHECK(a.mask.data == c.mask.data);
}

TEST_CASE("mask values are binary and dimensions always agree") {
    SceneGraph scene = minimal_scene();
    OliveShapeParams params;
    params.lat_segments = 8;
    params.lon_segments = 8;
    auto olive = std::make_shared<TriMesh>(make_olive(params, 9));
    add_instance(scene, olive, SemanticClass::olive, Vec3(0.2, 0.2, 0), 1);

    RenderConfig config;
    config.width = 37;
    config.height = 23;
    config.samples_per_pixel = 3; // non-square grid still works
    const ImageMaskPair pair = render(scene, config);
    CHECK(pair.image.width == 37);
    CHECK(pair.mask.height == 23);
    for (std::uint8_t v : pair.mask.data) CHECK((v == 0 || v == 255));
}

TEST_CASE("camera inside geometry still renders") {
    SceneGraph scene = minimal_scene();
    OliveShapeParams params;
    params.a = params.b = params.c = 20.0; // camera sits inside this shell
    params.lat_segments = 8;
    params.lon_segments = 8;
    auto shell = std::make_shared<TriMesh>(generate_ellipsoid(params));
    add_instance(scene, shell, SemanticClass::leaf, Vec3::Zero(), 11);
    RenderConfig config;
    config.width = config.height = 16;
    CHECK_NOTHROW(render(scene, config));
}

TEST_CASE("configuration errors") {
    const SceneGraph scene = minimal_scene();
    RenderConfig config;
    config.width = 0;
    CHECK_THROWS_AS(render(scene, config), ConfigError);
    config = RenderConfig{};
    config.samples_per_pixel = 0;
    CHECK_THROWS_AS(render(scene, config), ConfigError);
    config = RenderConfig{};
    config.mask_coverage_threshold = 0.0;
    CHECK_THROWS_AS(render(scene, config), ConfigError);
}

TEST_CASE("renders are byte-identical across repeated calls") {
    SceneGraph scene = minimal_scene();
    OliveShapeParams params;
    params.lat_segments = 10;
    params.lon_segments = 10;
    auto olive = std::make_shared<TriMesh>(make_olive(params, 8));
    add_instance(scene, olive, SemanticClass::olive, Vec3(0.1, -0.3, 0.2), 6);

    RenderConfig config;
    config.width = config.height = 32;
    const ImageMaskPair a = render(scene, config);
    const ImageMaskPair b = render(scene, config);
    CHECK(a.image.data == b.image.data);
    CHECK(a.mask.data == b.mask.data);
}

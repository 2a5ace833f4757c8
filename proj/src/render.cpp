#include "olive/render.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "olive/errors.hpp"
#include "olive/texture.hpp"

namespace olive {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kRayTMin = 1e-6;
constexpr double kBoxMargin = 1e-3; // pixels; gating slack over fp error

struct CameraFrame {
    Vec3 origin;
    Eigen::Matrix3d cam_to_world; // columns: right, up, back
    double tan_half = 1.0;
    double aspect = 1.0;
    int width = 0;
    int height = 0;
};

CameraFrame make_camera(const CameraSpec& spec, int width, int height) {
    CameraFrame cam;
    cam.origin = spec.position;
    cam.width = width;
    cam.height = height;
    cam.aspect = static_cast<double>(width) / height;
    cam.tan_half = std::tan(0.5 * spec.vertical_fov * kPi / 180.0);

    Vec3 back = spec.position - spec.look_at; // camera looks along -back
    if (back.squaredNorm() < 1e-18) back = Vec3::UnitZ();
    back.normalize();
    Vec3 up_hint = Vec3::UnitY();
    if (std::abs(back.dot(up_hint)) > 0.999) up_hint = Vec3::UnitX();
    const Vec3 right = up_hint.cross(back).normalized();
    const Vec3 up = back.cross(right);
    cam.cam_to_world.col(0) = right;
    cam.cam_to_world.col(1) = up;
    cam.cam_to_world.col(2) = back;
    return cam;
}

// World ray through raster position (sx, sy) in pixels, top-left origin.
// Unnormalized so both render paths use byte-identical directions.
Vec3 ray_direction(const CameraFrame& cam, double sx, double sy) {
    const double ndc_x = (2.0 * sx / cam.width - 1.0) * cam.tan_half * cam.aspect;
    const double ndc_y = (1.0 - 2.0 * sy / cam.height) * cam.tan_half;
    return cam.cam_to_world * Vec3(ndc_x, ndc_y, -1.0);
}

struct ScreenBox {
    double min_x = 0, min_y = 0, max_x = -1, max_y = -1;

    [[nodiscard]] bool contains(double x, double y) const {
        return x >= min_x && x <= max_x && y >= min_y && y <= max_y;
    }
    [[nodiscard]] bool empty() const { return max_x < min_x || max_y < min_y; }
};

struct PreparedInstance {
    const TriMesh* mesh = nullptr;
    std::vector<Vec3> world;       // transformed vertices
    std::vector<Vec3> world_normals;
    std::vector<Eigen::Vector2f> proj; // raster coords, valid only if !behind
    std::vector<bool> behind;          // in front of the near plane
    std::vector<ScreenBox> tri_boxes;
    ScreenBox box;
    SemanticClass semantic_class = SemanticClass::background;
    int material = 0;
    bool cull_backfaces = false;
};

struct PreparedScene {
    CameraFrame cam;
    std::vector<PreparedInstance> instances;
    const SceneGraph* scene = nullptr;
};

PreparedScene prepare(const SceneGraph& scene, int width, int height) {
    PreparedScene prep;
    prep.cam = make_camera(scene.camera, width, height);
    prep.scene = &scene;

    const Eigen::Matrix3d world_to_cam = prep.cam.cam_to_world.transpose();
    const ScreenBox full{-kBoxMargin, -kBoxMargin,
                         static_cast<double>(width) + kBoxMargin,
                         static_cast<double>(height) + kBoxMargin};

    for (const SceneInstance& inst : scene.instances) {
        if (!inst.mesh || inst.mesh->triangles.empty()) continue;
        PreparedInstance p;
        p.mesh = inst.mesh.get();
        p.semantic_class = inst.semantic_class;
        p.material = inst.material;
        p.cull_backfaces = inst.mesh->closed;

        const std::size_t n = inst.mesh->vertices.size();
        p.world.resize(n);
        p.world_normals.resize(n);
        p.proj.resize(n);
        p.behind.assign(n, false);

        bool any_behind = false;
        ScreenBox box;
        box.min_x = box.min_y = 1e30;
        box.max_x = box.max_y = -1e30;
        for (std::size_t i = 0; i < n; ++i) {
            const Vec3 w = inst.transform.apply(inst.mesh->vertices[i]);
            p.world[i] = w;
            p.world_normals[i] = inst.transform.apply_direction(inst.mesh->normals[i]);
            const Vec3 c = world_to_cam * (w - prep.cam.origin);
            if (c.z() >= -1e-9) {
                p.behind[i] = true;
                any_behind = true;
                continue;
            }
            const double inv = -1.0 / c.z();
            const double sx = (c.x() * inv / (prep.cam.tan_half * prep.cam.aspect) + 1.0) *
                              0.5 * width;
            const double sy = (1.0 - c.y() * inv / prep.cam.tan_half) * 0.5 * height;
            p.proj[i] = Eigen::Vector2f(static_cast<float>(sx), static_cast<float>(sy));
            box.min_x = std::min(box.min_x, sx);
            box.min_y = std::min(box.min_y, sy);
            box.max_x = std::max(box.max_x, sx);
            box.max_y = std::max(box.max_y, sy);
        }

        if (any_behind) {
            p.box = full; // projection unusable; never gate these out
        } else {
            p.box = ScreenBox{box.min_x - kBoxMargin, box.min_y - kBoxMargin,
                              box.max_x + kBoxMargin, box.max_y + kBoxMargin};
            // Whole instance off screen: no raster sample can query it.
            if (p.box.max_x < 0 || p.box.max_y < 0 ||
                p.box.min_x > static_cast<double>(width) ||
                p.box.min_y > static_cast<double>(height))
                continue;
        }

        p.tri_boxes.resize(inst.mesh->triangles.size());
        for (std::size_t t = 0; t < inst.mesh->triangles.size(); ++t) {
            const auto& tri = inst.mesh->triangles[t];
            if (p.behind[tri[0]] || p.behind[tri[1]] || p.behind[tri[2]]) {
                p.tri_boxes[t] = full;
                continue;
            }
            ScreenBox tb;
            tb.min_x = tb.min_y = 1e30;
            tb.max_x = tb.max_y = -1e30;
            for (std::uint32_t idx : tri) {
                const auto& q = p.proj[idx];
                tb.min_x = std::min(tb.min_x, static_cast<double>(q.x()));
                tb.min_y = std::min(tb.min_y, static_cast<double>(q.y()));
                tb.max_x = std::max(tb.max_x, static_cast<double>(q.x()));
                tb.max_y = std::max(tb.max_y, static_cast<double>(q.y()));
            }
            p.tri_boxes[t] = ScreenBox{tb.min_x - kBoxMargin, tb.min_y - kBoxMargin,
                                       tb.max_x + kBoxMargin, tb.max_y + kBoxMargin};
        }
        prep.instances.push_back(std::move(p));
    }
    return prep;
}

// Möller-Trumbore. The one visibility predicate in the project: the tile
// rasterizer and the brute-force raycaster call exactly this.
bool intersect_triangle(const Vec3& origin, const Vec3& dir, const Vec3& a,
                        const Vec3& b, const Vec3& c, bool cull, double& t,
                        double& u, double& v) {
    const Vec3 edge1 = b - a;
    const Vec3 edge2 = c - a;
    const Vec3 pvec = dir.cross(edge2);
    const double det = edge1.dot(pvec);
    if (cull) {
        if (det <= 1e-18) return false; // back-facing or parallel
    } else if (std::abs(det) <= 1e-18) {
        return false;
    }
    const double inv_det = 1.0 / det;
    const Vec3 tvec = origin - a;
    u = tvec.dot(pvec) * inv_det;
    if (u < 0.0 || u > 1.0) return false;
    const Vec3 qvec = tvec.cross(edge1);
    v = dir.dot(qvec) * inv_det;
    if (v < 0.0 || u + v > 1.0) return false;
    t = edge2.dot(qvec) * inv_det;
    return t > kRayTMin;
}

struct Hit {
    double t = std::numeric_limits<double>::infinity();
    int instance = -1;
    std::uint32_t tri = 0;
    double u = 0, v = 0;

    [[nodiscard]] bool valid() const { return instance >= 0; }
};

// Nearest hit for the ray through raster position (sx, sy); instances and
// triangles are visited in list order, ties keep the first hit (strict <).
Hit trace(const PreparedScene& prep, double sx, double sy, const Vec3& dir) {
    Hit best;
    for (std::size_t i = 0; i < prep.instances.size(); ++i) {
        const PreparedInstance& inst = prep.instances[i];
        if (!inst.box.contains(sx, sy)) continue;
        for (std::size_t k = 0; k < inst.mesh->triangles.size(); ++k) {
            if (!inst.tri_boxes[k].contains(sx, sy)) continue;
            const auto& tri = inst.mesh->triangles[k];
            double t, u, v;
            if (intersect_triangle(prep.cam.origin, dir, inst.world[tri[0]],
                                   inst.world[tri[1]], inst.world[tri[2]],
                                   inst.cull_backfaces, t, u, v) &&
                t < best.t) {
                best.t = t;
                best.instance = static_cast<int>(i);
                best.tri = static_cast<std::uint32_t>(k);
                best.u = u;
                best.v = v;
            }
        }
    }
    return best;
}

Rgb sky_color(const SceneGraph& scene, const CameraFrame& cam, double sx, double sy) {
    // Screen-stable gradient: vertical coordinate of the camera-space ray.
    const double y = (1.0 - 2.0 * sy / cam.height) * cam.tan_half;
    const double x = (2.0 * sx / cam.width - 1.0) * cam.tan_half * cam.aspect;
    switch (scene.background) {
    case Background::sunny_sky: {
        const double h = std::clamp(0.5 + 1.2 * y, 0.0, 1.0);
        Rgb base = Rgb(0.78, 0.86, 0.97) +
                   h * (Rgb(0.33, 0.52, 0.92) - Rgb(0.78, 0.86, 0.97));
        const double n =
            value_noise_2d(scene.background_seed, Vec2(2.2 * x + 7.0, 2.2 * y + 3.0), 4);
        const double c = std::clamp((n - 0.55) / 0.25, 0.0, 1.0);
        const double w = 0.7 * c * c * (3 - 2 * c);
        return base + w * (Rgb(0.97, 0.97, 0.99) - base);
    }
    case Background::overcast: {
        const double h = std::clamp(0.5 + y, 0.0, 1.0);
        return Rgb(0.58, 0.60, 0.63) + h * (Rgb(0.73, 0.74, 0.76) - Rgb(0.58, 0.60, 0.63));
    }
    default:
        // Plane backdrops normally catch every ray; dim canopy fallback.
        return Rgb(0.18, 0.22, 0.16);
    }
}

Rgb shade_hit(const PreparedScene& prep, const Hit& hit, const Vec3& dir,
              const RenderConfig& config) {
    const PreparedInstance& inst =
        prep.instances[static_cast<std::size_t>(hit.instance)];
    const auto& tri = inst.mesh->triangles[hit.tri];
    const double w0 = 1.0 - hit.u - hit.v;

    const Vec2 uv = w0 * inst.mesh->uvs[tri[0]] + hit.u * inst.mesh->uvs[tri[1]] +
                    hit.v * inst.mesh->uvs[tri[2]];
    Vec3 n = (w0 * inst.world_normals[tri[0]] + hit.u * inst.world_normals[tri[1]] +
              hit.v * inst.world_normals[tri[2]]);
    const double len = n.norm();
    n = len > 1e-12 ? Vec3(n / len)
                    : (inst.world[tri[1]] - inst.world[tri[0]])
                          .cross(inst.world[tri[2]] - inst.world[tri[0]])
                          .normalized();
    if (n.dot(dir) > 0.0) n = -n; // two-sided

    static const Material kFallbackMaterial{};
    const Material& mat =
        inst.material >= 0 &&
                inst.material < static_cast<int>(prep.scene->materials.size())
            ? prep.scene->materials[static_cast<std::size_t>(inst.material)]
            : kFallbackMaterial;
    const SurfaceSample surf = sample_material(mat, uv);
    if (surf.normal_perturbation.squaredNorm() > 0.0) {
        // Orthonormal basis around n (Duff et al.).
        const double sign = std::copysign(1.0, n.z());
        const double a = -1.0 / (sign + n.z());
        const double b = n.x() * n.y() * a;
        const Vec3 tangent(1.0 + sign * n.x() * n.x() * a, sign * b, -sign * n.x());
        const Vec3 bitangent(b, sign + n.y() * n.y() * a, -n.y());
        Vec3 np = n + surf.normal_perturbation.x() * tangent +
                  surf.normal_perturbation.y() * bitangent;
        const double nl = np.norm();
        if (nl > 1e-12) {
            np /= nl;
            if (np.dot(dir) < 0.0) n = np; // keep facing the viewer
        }
    }

    Rgb light = prep.scene->ambient;
    for (const DirectionalLight& lamp : prep.scene->lights) {
        const double lambert = std::max(0.0, n.dot(-lamp.direction));
        if (lambert <= 0.0) continue;
        if (config.shadow_rays) {
            const Vec3 p = prep.cam.origin + hit.t * dir;
            const Vec3 shadow_origin = p + 1e-4 * n;
            bool occluded = false;
            for (const PreparedInstance& other : prep.instances) {
                for (const auto& otri : other.mesh->triangles) {
                    double t, u, v;
                    if (intersect_triangle(shadow_origin, -lamp.direction,
                                           other.world[otri[0]], other.world[otri[1]],
                                           other.world[otri[2]], false, t, u, v)) {
                        occluded = true;
                        break;
                    }
                }
                if (occluded) break;
            }
            if (occluded) continue;
        }
        light += lambert * lamp.intensity;
    }
    return (surf.albedo * light).cwiseMin(1.0);
}

std::uint8_t quantize(double linear) {
    const double g = std::pow(std::clamp(linear, 0.0, 1.0), 1.0 / 2.2);
    return static_cast<std::uint8_t>(std::floor(g * 255.0 + 0.5));
}

std::vector<Vec2> subsample_offsets(int spp) {
    const int k = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(spp))));
    std::vector<Vec2> offsets;
    offsets.reserve(static_cast<std::size_t>(spp));
    for (int j = 0; j < k && static_cast<int>(offsets.size()) < spp; ++j)
        for (int i = 0; i < k && static_cast<int>(offsets.size()) < spp; ++i)
            offsets.emplace_back((i + 0.5) / k, (j + 0.5) / k);
    return offsets;
}

void check_config(const RenderConfig& config) {
    if (config.width <= 0 || config.height <= 0)
        throw ConfigError("render raster dimensions must be positive");
    if (config.samples_per_pixel < 1)
        throw ConfigError("samples_per_pixel must be >= 1");
    if (!(config.mask_coverage_threshold > 0.0 && config.mask_coverage_threshold <= 1.0))
        throw ConfigError("mask_coverage_threshold must lie in (0,1]");
    if (config.tile_size < 1) throw ConfigError("tile_size must be >= 1");
}

struct Tile {
    int x0, y0, x1, y1;
};

template <typename PixelFn>
void for_each_tile_parallel(int width, int height, int tile_size, int threads,
                            PixelFn&& fn) {
    std::vector<Tile> tiles;
    for (int y = 0; y < height; y += tile_size)
        for (int x = 0; x < width; x += tile_size)
            tiles.push_back({x, y, std::min(x + tile_size, width),
                             std::min(y + tile_size, height)});

    int worker_count = threads > 0
                           ? threads
                           : static_cast<int>(std::thread::hardware_concurrency());
    if (worker_count < 1) worker_count = 1;
    worker_count = std::min<int>(worker_count, static_cast<int>(tiles.size()));

    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tiles.size()) return;
            fn(tiles[i]);
        }
    };
    if (worker_count <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(worker_count));
        for (int i = 0; i < worker_count; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
}

// Visibility for every subsample of a tile, identical in outcome to calling
// trace() per sample: the loop order only inverts (instance, triangle) to
// the outside, and updates use the same strict-< comparison.
void resolve_tile(const PreparedScene& prep, const Tile& tile,
                  const std::vector<Vec2>& offsets, std::vector<Hit>& hits,
                  std::vector<Vec3>& dirs) {
    const int tw = tile.x1 - tile.x0;
    const int th = tile.y1 - tile.y0;
    const int spp = static_cast<int>(offsets.size());
    const std::size_t total = static_cast<std::size_t>(tw) * th * spp;
    hits.assign(total, Hit{});
    dirs.resize(total);

    auto sample_index = [&](int x, int y, int s) {
        return (static_cast<std::size_t>(y - tile.y0) * tw + (x - tile.x0)) * spp + s;
    };
    for (int y = tile.y0; y < tile.y1; ++y)
        for (int x = tile.x0; x < tile.x1; ++x)
            for (int s = 0; s < spp; ++s)
                dirs[sample_index(x, y, s)] = ray_direction(
                    prep.cam, x + offsets[static_cast<std::size_t>(s)].x(),
                    y + offsets[static_cast<std::size_t>(s)].y());

    for (std::size_t i = 0; i < prep.instances.size(); ++i) {
        const PreparedInstance& inst = prep.instances[i];
        if (inst.box.max_x < tile.x0 || inst.box.min_x > tile.x1 ||
            inst.box.max_y < tile.y0 || inst.box.min_y > tile.y1)
            continue;
        for (std::size_t k = 0; k < inst.mesh->triangles.size(); ++k) {
            const ScreenBox& tb = inst.tri_boxes[k];
            // Clamp before the int casts; grazing projections can be huge.
            const double lo_x = static_cast<double>(tile.x0) - 1.0;
            const double hi_x = static_cast<double>(tile.x1) + 1.0;
            const double lo_y = static_cast<double>(tile.y0) - 1.0;
            const double hi_y = static_cast<double>(tile.y1) + 1.0;
            const int px0 = std::max(
                tile.x0, static_cast<int>(std::floor(std::clamp(tb.min_x, lo_x, hi_x))));
            const int px1 = std::min(
                tile.x1 - 1, static_cast<int>(std::ceil(std::clamp(tb.max_x, lo_x, hi_x))));
            const int py0 = std::max(
                tile.y0, static_cast<int>(std::floor(std::clamp(tb.min_y, lo_y, hi_y))));
            const int py1 = std::min(
                tile.y1 - 1, static_cast<int>(std::ceil(std::clamp(tb.max_y, lo_y, hi_y))));
            if (px0 > px1 || py0 > py1) continue;
            const auto& tri = inst.mesh->triangles[k];
            const Vec3& a = inst.world[tri[0]];
            const Vec3& b = inst.world[tri[1]];
            const Vec3& c = inst.world[tri[2]];
            for (int y = py0; y <= py1; ++y) {
                for (int x = px0; x <= px1; ++x) {
                    for (int s = 0; s < spp; ++s) {
                        const double sx = x + offsets[static_cast<std::size_t>(s)].x();
                        const double sy = y + offsets[static_cast<std::size_t>(s)].y();
                        if (!tb.contains(sx, sy)) continue;
                        Hit& best = hits[sample_index(x, y, s)];
                        double t, u, v;
                        if (intersect_triangle(prep.cam.origin,
                                               dirs[sample_index(x, y, s)], a, b, c,
                                               inst.cull_backfaces, t, u, v) &&
                            t < best.t) {
                            best.t = t;
                            best.instance = static_cast<int>(i);
                            best.tri = static_cast<std::uint32_t>(k);
                            best.u = u;
                            best.v = v;
                        }
                    }
                }
            }
        }
    }
}

} // namespace

ImageMaskPair render(const SceneGraph& scene, const RenderConfig& config) {
    check_config(config);
    const PreparedScene prep = prepare(scene, config.width, config.height);
    const std::vector<Vec2> offsets = subsample_offsets(config.samples_per_pixel);
    const int spp = config.samples_per_pixel;

    ImageMaskPair out;
    out.image = ImageRGB8(config.width, config.height);
    out.mask = ImageGray8(config.width, config.height);
    out.scene_seed = scene.seed;

    for_each_tile_parallel(
        config.width, config.height, config.tile_size, config.threads,
        [&](const Tile& tile) {
            std::vector<Hit> hits;
            std::vector<Vec3> dirs;
            resolve_tile(prep, tile, offsets, hits, dirs);
            const int tw = tile.x1 - tile.x0;
            for (int y = tile.y0; y < tile.y1; ++y) {
                for (int x = tile.x0; x < tile.x1; ++x) {
                    Rgb accum = Rgb::Zero();
                    int olive_hits = 0;
                    for (int s = 0; s < spp; ++s) {
                        const std::size_t idx =
                            (static_cast<std::size_t>(y - tile.y0) * tw +
                             (x - tile.x0)) * spp + static_cast<std::size_t>(s);
                        const Hit& hit = hits[idx];
                        if (hit.valid()) {
                            accum += shade_hit(prep, hit, dirs[idx], config);
                            if (prep.instances[static_cast<std::size_t>(hit.instance)]
                                    .semantic_class == SemanticClass::olive)
                                ++olive_hits;
                        } else {
                            accum += sky_color(scene, prep.cam,
                                               x + offsets[static_cast<std::size_t>(s)].x(),
                                               y + offsets[static_cast<std::size_t>(s)].y());
                        }
                    }
                    accum /= static_cast<double>(spp);
                    std::uint8_t* px = out.image.px(x, y);
                    px[0] = quantize(accum[0]);
                    px[1] = quantize(accum[1]);
                    px[2] = quantize(accum[2]);
                    const double coverage = static_cast<double>(olive_hits) / spp;
                    out.mask.at(x, y) =
                        coverage >= config.mask_coverage_threshold ? 255 : 0;
                }
            }
        });

    return out;
}

SemanticClass raycast_reference(const SceneGraph& scene, int px, int py, int width,
                                int height) {
    if (px < 0 || py < 0 || px >= width || py >= height)
        throw ParamError("pixel outside raster bounds");
    const PreparedScene prep = prepare(scene, width, height);
    const double sx = px + 0.5;
    const double sy = py + 0.5;
    const Hit hit = trace(prep, sx, sy, ray_direction(prep.cam, sx, sy));
    return hit.valid()
               ? prep.instances[static_cast<std::size_t>(hit.instance)].semantic_class
               : SemanticClass::background;
}

std::vector<SemanticClass> raycast_class_map(const SceneGraph& scene, int width,
                                             int height) {
    const PreparedScene prep = prepare(scene, width, height);
    std::vector<SemanticClass> map(static_cast<std::size_t>(width) * height,
                                   SemanticClass::background);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double sx = x + 0.5;
            const double sy = y + 0.5;
            const Hit hit = trace(prep, sx, sy, ray_direction(prep.cam, sx, sy));
            if (hit.valid())
                map[static_cast<std::size_t>(y) * width + x] =
                    prep.instances[static_cast<std::size_t>(hit.instance)].semantic_class;
        }
    }
    return map;
}

std::vector<SemanticClass> render_class_map(const SceneGraph& scene,
                                            const RenderConfig& config) {
    check_config(config);
    RenderConfig single = config;
    single.samples_per_pixel = 1;
    const PreparedScene prep = prepare(scene, single.width, single.height);
    const std::vector<Vec2> offsets = subsample_offsets(1);

    std::vector<SemanticClass> map(
        static_cast<std::size_t>(single.width) * single.height,
        SemanticClass::background);
    for_each_tile_parallel(
        single.width, single.height, single.tile_size, single.threads,
        [&](const Tile& tile) {
            std::vector<Hit> hits;
            std::vector<Vec3> dirs;
            resolve_tile(prep, tile, offsets, hits, dirs);
            const int tw = tile.x1 - tile.x0;
            for (int y = tile.y0; y < tile.y1; ++y) {
                for (int x = tile.x0; x < tile.x1; ++x) {
                    const Hit& hit =
                        hits[static_cast<std::size_t>(y - tile.y0) * tw + (x - tile.x0)];
                    if (hit.valid())
                        map[static_cast<std::size_t>(y) * single.width + x] =
                            prep.instances[static_cast<std::size_t>(hit.instance)]
                                .semantic_class;
                }
            }
        });
    return map;
}

} // namespace olive

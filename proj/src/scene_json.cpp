#include <fstream>

#include "olive/errors.hpp"
#include "olive/scene.hpp"

namespace olive {

namespace {

nlohmann::json vec3_to_json(const Vec3& v) {
    return nlohmann::json::array({v.x(), v.y(), v.z()});
}

Vec3 vec3_from_json(const nlohmann::json& j, const Vec3& fallback) {
    if (j.is_null()) return fallback;
    if (!j.is_array() || j.size() != 3)
        throw ConfigError("expected a 3-element array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

} // namespace

nlohmann::json to_json(const SceneConfig& c) {
    nlohmann::json j;
    j["seed"] = c.seed;
    if (c.prototype_seed) j["prototype_seed"] = *c.prototype_seed;
    j["leaf_layers"] = c.leaf_layers;
    j["branch_layers"] = c.branch_layers;
    j["occluder_layer"] = c.occluder_layer;
    j["olives_per_session"] = c.olives_per_session;
    j["leaves_per_layer"] = c.leaves_per_layer;
    j["branches_per_layer"] = c.branches_per_layer;
    j["leaves_per_branch"] = c.leaves_per_branch;
    j["leaf_orientation_jitter"] = c.leaf_orientation_jitter;
    j["leaf_size_jitter"] = c.leaf_size_jitter;
    j["olive_orientation_jitter"] = c.olive_orientation_jitter;
    j["olive_size_jitter"] = c.olive_size_jitter;
    j["background"] = to_string(c.background);
    j["lighting"] = to_string(c.lighting);
    j["layer_spacing"] = c.layer_spacing;
    j["plane_extent"] = c.plane_extent;
    j["camera"] = {{"position", vec3_to_json(c.camera.position)},
                   {"look_at", vec3_to_json(c.camera.look_at)},
                   {"vertical_fov", c.camera.vertical_fov},
                   {"image_width", c.camera.image_width},
                   {"image_height", c.camera.image_height}};
    j["olive_shape"] = {{"a", c.olive_shape.a},
                        {"b", c.olive_shape.b},
                        {"c", c.olive_shape.c},
                        {"tip_fraction", c.olive_shape.tip_fraction},
                        {"tip_extension", c.olive_shape.tip_extension},
                        {"smoothing_iterations", c.olive_shape.smoothing_iterations},
                        {"smoothing_lambda", c.olive_shape.smoothing_lambda},
                        {"lat_segments", c.olive_shape.lat_segments},
                        {"lon_segments", c.olive_shape.lon_segments},
                        {"scale_jitter", c.olive_shape.scale_jitter},
                        {"final_dims", vec3_to_json(c.olive_shape.final_dims)}};
    j["leaf_shape"] = {{"length", c.leaf_shape.length},
                       {"width", c.leaf_shape.width},
                       {"curl", c.leaf_shape.curl},
                       {"segments", c.leaf_shape.segments}};
    return j;
}

SceneConfig scene_config_from_json(const nlohmann::json& j) {
    SceneConfig c;
    c.seed = j.value("seed", c.seed);
    if (j.contains("prototype_seed") && !j["prototype_seed"].is_null())
        c.prototype_seed = j["prototype_seed"].get<std::uint64_t>();
    c.leaf_layers = j.value("leaf_layers", c.leaf_layers);
    c.branch_layers = j.value("branch_layers", c.branch_layers);
    c.occluder_layer = j.value("occluder_layer", c.occluder_layer);
    c.olives_per_session = j.value("olives_per_session", c.olives_per_session);
    c.leaves_per_layer = j.value("leaves_per_layer", c.leaves_per_layer);
    c.branches_per_layer = j.value("branches_per_layer", c.branches_per_layer);
    c.leaves_per_branch = j.value("leaves_per_branch", c.leaves_per_branch);
    c.leaf_orientation_jitter =
        j.value("leaf_orientation_jitter", c.leaf_orientation_jitter);
    c.leaf_size_jitter = j.value("leaf_size_jitter", c.leaf_size_jitter);
    c.olive_orientation_jitter =
        j.value("olive_orientation_jitter", c.olive_orientation_jitter);
    c.olive_size_jitter = j.value("olive_size_jitter", c.olive_size_jitter);
    if (j.contains("background"))
        c.background = background_from_string(j["background"].get<std::string>());
    if (j.contains("lighting"))
        c.lighting = lighting_from_string(j["lighting"].get<std::string>());
    c.layer_spacing = j.value("layer_spacing", c.layer_spacing);
    c.plane_extent = j.value("plane_extent", c.plane_extent);
    if (j.contains("camera")) {
        const auto& jc = j["camera"];
        c.camera.position = vec3_from_json(jc.value("position", nlohmann::json()),
                                           c.camera.position);
        c.camera.look_at =
            vec3_from_json(jc.value("look_at", nlohmann::json()), c.camera.look_at);
        c.camera.vertical_fov = jc.value("vertical_fov", c.camera.vertical_fov);
        c.camera.image_width = jc.value("image_width", c.camera.image_width);
        c.camera.image_height = jc.value("image_height", c.camera.image_height);
    }
    if (j.contains("olive_shape")) {
        const auto& js = j["olive_shape"];
        c.olive_shape.a = js.value("a", c.olive_shape.a);
        c.olive_shape.b = js.value("b", c.olive_shape.b);
        c.olive_shape.c = js.value("c", c.olive_shape.c);
        c.olive_shape.tip_fraction = js.value("tip_fraction", c.olive_shape.tip_fraction);
        c.olive_shape.tip_extension =
            js.value("tip_extension", c.olive_shape.tip_extension);
        c.olive_shape.smoothing_iterations =
            js.value("smoothing_iterations", c.olive_shape.smoothing_iterations);
        c.olive_shape.smoothing_lambda =
            js.value("smoothing_lambda", c.olive_shape.smoothing_lambda);
        c.olive_shape.lat_segments = js.value("lat_segments", c.olive_shape.lat_segments);
        c.olive_shape.lon_segments = js.value("lon_segments", c.olive_shape.lon_segments);
        c.olive_shape.scale_jitter = js.value("scale_jitter", c.olive_shape.scale_jitter);
        c.olive_shape.final_dims = vec3_from_json(
            js.value("final_dims", nlohmann::json()), c.olive_shape.final_dims);
    }
    if (j.contains("leaf_shape")) {
        const auto& js = j["leaf_shape"];
        c.leaf_shape.length = js.value("length", c.leaf_shape.length);
        c.leaf_shape.width = js.value("width", c.leaf_shape.width);
        c.leaf_shape.curl = js.value("curl", c.leaf_shape.curl);
        c.leaf_shape.segments = js.value("segments", c.leaf_shape.segments);
    }
    return c;
}

SceneConfig load_scene_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("bad config JSON in " + path.string() + ": " + e.what());
    }
    return scene_config_from_json(j);
}

void save_scene_config(const std::filesystem::path& path, const SceneConfig& config) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write config: " + path.string());
    out << to_json(config).dump(2) << "\n";
}

} // namespace olive

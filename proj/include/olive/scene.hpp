#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "olive/branch_geometry.hpp"
#include "olive/mesh.hpp"
#include "olive/olive_geometry.hpp"
#include "olive/texture.hpp"

namespace olive {

enum class Background { sunny_sky, overcast, ground_plane, leaf_plane };
enum class Lighting { day, evening };
enum class SemanticClass { olive, leaf, branch, background };

std::string to_string(Background value);
std::string to_string(Lighting value);
std::string to_string(SemanticClass value);
Background background_from_string(const std::string& name);
Lighting lighting_from_string(const std::string& name);

// Ideal pinhole camera; output raster defaults to the 256x256 patch size.
struct CameraSpec {
    Vec3 position = Vec3(0.0, 0.0, 60.0);
    Vec3 look_at = Vec3::Zero();
    double vertical_fov = 50.0; // degrees, in (0, 180)
    int image_width = 256;
    int image_height = 256;
};

// One rendering session: layer stack, scatter densities, jitter bounds,
// backdrop and lighting. All randomness is keyed off `seed`; prototype
// meshes are keyed off `prototype_seed` (defaults to `seed`) so per-pair
// re-scatters can share one set of prototypes.
struct SceneConfig {
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> prototype_seed;

    int leaf_layers = 4;
    int branch_layers = 2;
    int occluder_layer = 0; // index of the leaf layer in front of the olives

    int olives_per_session = 2600;
    int leaves_per_layer = 600;
    int branches_per_layer = 12;
    int leaves_per_branch = 25;

    double leaf_orientation_jitter = 9.0;   // degrees
    double leaf_size_jitter = 0.10;         // fraction
    double olive_orientation_jitter = 45.0; // degrees
    double olive_size_jitter = 0.05;        // fraction

    Background background = Background::sunny_sky;
    Lighting lighting = Lighting::day;
    CameraSpec camera;

    double layer_spacing = 12.0; // cm between scatter planes
    double plane_extent = 100.0; // cm, side of the square scatter plane

    OliveShapeParams olive_shape;
    LeafParams leaf_shape;
};

void validate(const SceneConfig& config);

nlohmann::json to_json(const SceneConfig& config);
SceneConfig scene_config_from_json(const nlohmann::json& j);
SceneConfig load_scene_config(const std::filesystem::path& path);
void save_scene_config(const std::filesystem::path& path, const SceneConfig& config);

struct DirectionalLight {
    Vec3 direction = -Vec3::UnitZ(); // direction light travels
    Rgb intensity = Rgb::Ones();
};

struct SceneInstance {
    std::shared_ptr<const TriMesh> mesh;
    InstanceTransform transform;
    int material = 0;
    SemanticClass semantic_class = SemanticClass::leaf;
    int layer = 0;          // stack index, 0 = closest to the camera
    double layer_depth = 0; // cm along the camera axis, larger = farther
};

struct SceneGraph {
    std::uint64_t seed = 0;
    std::vector<SceneInstance> instances;
    std::vector<Material> materials;
    std::vector<DirectionalLight> lights;
    Rgb ambient = Rgb(0.25, 0.25, 0.25);
    Background background = Background::sunny_sky;
    std::uint64_t background_seed = 0;
    CameraSpec camera;

    [[nodiscard]] std::size_t count_class(SemanticClass cls) const;
};

// Deterministic scene construction: prototypes from prototype_seed, every
// instance pose drawn from a child stream keyed by (layer, instance index).
// Calling with zeroed jitter fields replays canonical poses.
SceneGraph assemble_scene(const SceneConfig& config);

// Derived per-session configs: distinct child seeds, backgrounds cycling
// through the enum in declaration order starting from config.background,
// lighting alternating day/evening.
std::vector<SceneConfig> session_plan(const SceneConfig& config, int sessions,
                                      int pairs_per_session);

} // namespace olive

#include "olive/scene.hpp"

#include <cmath>
#include <fstream>

#include "olive/errors.hpp"
#include "olive/rng.hpp"

namespace olive {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegToRad = kPi / 180.0;

// Material slots: the 11 olive presets, then leaf, branch, backdrop.
constexpr int kLeafMaterial = 11;
constexpr int kBranchMaterial = 12;
constexpr int kBackgroundMaterial = 13;

constexpr double kBranchTiltDeg = 12.0;
constexpr double kBranchSizeJitter = 0.10;
constexpr int kLeafPrototypes = 3;
constexpr int kBranchPrototypes = 2;

struct BranchPrototype {
    std::shared_ptr<const TriMesh> tube;
    std::vector<std::pair<InstanceTransform, int>> leaves; // pose, leaf proto
};

// One scattered pose on a z = -depth plane. Draw order is fixed: x, y,
// spin, jitter axis, jitter angle, scale — zero jitters replay the
// canonical pose from the same stream.
InstanceTransform plane_pose(Rng& stream, double extent, double depth,
                             const Quat& base, double jitter_deg,
                             double size_jitter) {
    InstanceTransform pose;
    const double half = 0.5 * extent;
    const double x = stream.uniform(-half, half);
    const double y = stream.uniform(-half, half);
    const double spin = stream.uniform(0.0, 2.0 * kPi);
    const Vec3 axis = stream.unit_vector();
    const double angle = stream.uniform(0.0, jitter_deg) * kDegToRad;
    pose.translation = Vec3(x, y, -depth);
    pose.rotation = Quat(Eigen::AngleAxisd(angle, axis)) *
                    Quat(Eigen::AngleAxisd(spin, Vec3::UnitZ())) * base;
    pose.scale = stream.uniform(1.0 - size_jitter, 1.0 + size_jitter);
    return pose;
}

std::shared_ptr<const TriMesh> make_background_plane(double extent, double depth) {
    auto mesh = std::make_shared<TriMesh>();
    mesh->material_id = "background";
    const double h = 0.5 * extent;
    mesh->vertices = {Vec3(-h, -h, -depth), Vec3(h, -h, -depth),
                      Vec3(h, h, -depth), Vec3(-h, h, -depth)};
    mesh->normals.assign(4, Vec3::UnitZ());
    mesh->uvs = {Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)};
    mesh->triangles = {{0, 1, 2}, {0, 2, 3}};
    return mesh;
}

} // namespace

std::string to_string(Background value) {
    switch (value) {
    case Background::sunny_sky: return "sunny_sky";
    case Background::overcast: return "overcast";
    case Background::ground_plane: return "ground_plane";
    case Background::leaf_plane: return "leaf_plane";
    }
    return "sunny_sky";
}

std::string to_string(Lighting value) {
    return value == Lighting::day ? "day" : "evening";
}

std::string to_string(SemanticClass value) {
    switch (value) {
    case SemanticClass::olive: return "olive";
    case SemanticClass::leaf: return "leaf";
    case SemanticClass::branch: return "branch";
    case SemanticClass::background: return "background";
    }
    return "background";
}

Background background_from_string(const std::string& name) {
    if (name == "sunny_sky") return Background::sunny_sky;
    if (name == "overcast") return Background::overcast;
    if (name == "ground_plane") return Background::ground_plane;
    if (name == "leaf_plane") return Background::leaf_plane;
    throw ConfigError("unknown background: " + name);
}

Lighting lighting_from_string(const std::string& name) {
    if (name == "day") return Lighting::day;
    if (name == "evening") return Lighting::evening;
    throw ConfigError("unknown lighting: " + name);
}

void validate(const SceneConfig& config) {
    if (config.leaf_layers < 0 || config.branch_layers < 0 ||
        config.olives_per_session < 0 || config.leaves_per_layer < 0 ||
        config.branches_per_layer < 0 || config.leaves_per_branch < 0)
        throw ConfigError("instance counts must be non-negative");
    if (config.leaf_orientation_jitter < 0.0 || config.olive_orientation_jitter < 0.0)
        throw ConfigError("orientation jitters must be non-negative");
    if (config.leaf_size_jitter < 0.0 || config.leaf_size_jitter >= 1.0 ||
        config.olive_size_jitter < 0.0 || config.olive_size_jitter >= 1.0)
        throw ConfigError("size jitters must lie in [0,1)");
    const bool has_instances =
        (config.leaf_layers > 0 && config.leaves_per_layer > 0) ||
        (config.branch_layers > 0 && config.branches_per_layer > 0) ||
        config.olives_per_session > 0;
    if (has_instances && config.plane_extent <= 0.0)
        throw ConfigError("plane_extent must be positive when scattering instances");
    if (config.olives_per_session > 0 && config.leaf_layers < 1)
        throw ConfigError("olive layer requires at least one leaf layer as occluder");
    if (config.leaf_layers > 0 &&
        (config.occluder_layer < 0 || config.occluder_layer >= config.leaf_layers))
        throw ConfigError("occluder_layer out of range");
    if (config.layer_spacing <= 0.0)
        throw ConfigError("layer_spacing must be positive");
    if (!(config.camera.vertical_fov > 0.0 && config.camera.vertical_fov < 180.0))
        throw ConfigError("camera vertical_fov must lie in (0,180)");
    if (config.camera.image_width <= 0 || config.camera.image_height <= 0)
        throw ConfigError("camera image dimensions must be positive");
}

SceneGraph assemble_scene(const SceneConfig& config) {
    validate(config);

    SceneGraph scene;
    scene.seed = config.seed;
    scene.camera = config.camera;
    scene.background = config.background;

    const std::uint64_t proto_seed = config.prototype_seed.value_or(config.seed);
    Rng proto_rng(proto_seed);
    scene.background_seed = proto_rng.child(0xb6).next_u64();

    // Materials.
    for (const OliveTextureSpec& preset : builtin_presets()) {
        Material m;
        m.kind = MaterialKind::olive_skin;
        m.olive = preset;
        scene.materials.push_back(m);
    }
    {
        Material leaf;
        leaf.kind = MaterialKind::leaf;
        leaf.color = Rgb(0.26, 0.36, 0.15);
        leaf.seed = proto_rng.child(0x111).next_u64();
        scene.materials.push_back(leaf);

        Material branch;
        branch.kind = MaterialKind::branch;
        branch.seed = proto_rng.child(0x112).next_u64();
        scene.materials.push_back(branch);

        Material backdrop;
        backdrop.kind = config.background == Background::leaf_plane
                            ? MaterialKind::leaf_litter
                            : MaterialKind::ground;
        backdrop.seed = scene.background_seed;
        scene.materials.push_back(backdrop);
    }

    // Prototypes.
    std::shared_ptr<const TriMesh> olive_proto;
    if (config.olives_per_session > 0)
        olive_proto = std::make_shared<TriMesh>(
            make_olive(config.olive_shape, proto_rng.child(1).next_u64()));

    std::vector<std::shared_ptr<const TriMesh>> leaf_protos;
    for (int i = 0; i < kLeafPrototypes; ++i)
        leaf_protos.push_back(std::make_shared<TriMesh>(make_leaf(
            config.leaf_shape, proto_rng.child(0x20 + static_cast<std::uint64_t>(i)).next_u64())));

    std::vector<BranchPrototype> branch_protos;
    if (config.branch_layers > 0 && config.branches_per_layer > 0) {
        for (int i = 0; i < kBranchPrototypes; ++i) {
            Rng stream = proto_rng.child(0x40 + static_cast<std::uint64_t>(i));
            BranchPrototype proto;
            const BezierCurve curve = random_branch_curve(stream.next_u64());
            proto.tube = std::make_shared<TriMesh>(
                tessellate_branch(curve, 0.7, 0.3, 8, 6, 0.9));
            const auto poses = scatter_on_curve(
                curve, config.leaves_per_branch, config.leaf_orientation_jitter,
                config.leaf_size_jitter, stream.next_u64());
            Rng pick = stream.child(7);
            for (const auto& pose : poses)
                proto.leaves.emplace_back(
                    pose, static_cast<int>(pick.next_below(kLeafPrototypes)));
            branch_protos.push_back(std::move(proto));
        }
    }

    // Layer stack, front to back: leaf layers up to the occluder, the olive
    // layer right behind it, then remaining leaf and branch layers
    // alternating.
    enum class LayerKind { leaf, olive, branch };
    std::vector<LayerKind> stack;
    {
        int next_leaf = 0;
        int branches_left = config.branch_layers;
        for (; next_leaf <= std::min(config.occluder_layer, config.leaf_layers - 1);
             ++next_leaf)
            stack.push_back(LayerKind::leaf);
        if (config.olives_per_session > 0) stack.push_back(LayerKind::olive);
        while (next_leaf < config.leaf_layers || branches_left > 0) {
            if (next_leaf < config.leaf_layers) {
                stack.push_back(LayerKind::leaf);
                ++next_leaf;
            }
            if (branches_left > 0) {
                stack.push_back(LayerKind::branch);
                --branches_left;
            }
        }
    }

    Rng root(config.seed);
    const Quat leaf_base(Eigen::AngleAxisd(0.5 * kPi, Vec3::UnitX()));
    const Quat identity = Quat::Identity();

    for (std::size_t k = 0; k < stack.size(); ++k) {
        Rng layer_rng = root.child(static_cast<std::uint64_t>(k));
        const double depth = static_cast<double>(k) * config.layer_spacing;
        switch (stack[k]) {
        case LayerKind::leaf: {
            for (int i = 0; i < config.leaves_per_layer; ++i) {
                Rng stream = layer_rng.child(static_cast<std::uint64_t>(i));
                SceneInstance inst;
                inst.transform = plane_pose(stream, config.plane_extent, depth,
                                            leaf_base,
                                            config.leaf_orientation_jitter,
                                            config.leaf_size_jitter);
                inst.mesh = leaf_protos[stream.next_below(kLeafPrototypes)];
                inst.material = kLeafMaterial;
                inst.semantic_class = SemanticClass::leaf;
                inst.layer = static_cast<int>(k);
                inst.layer_depth = depth;
                scene.instances.push_back(std::move(inst));
            }
            break;
        }
        case LayerKind::olive: {
            for (int i = 0; i < config.olives_per_session; ++i) {
                Rng stream = layer_rng.child(static_cast<std::uint64_t>(i));
                SceneInstance inst;
                inst.transform = plane_pose(stream, config.plane_extent, depth,
                                            identity,
                                            config.olive_orientation_jitter,
                                            config.olive_size_jitter);
                inst.mesh = olive_proto;
                inst.material = static_cast<int>(stream.next_below(11));
                inst.semantic_class = SemanticClass::olive;
                inst.layer = static_cast<int>(k);
                inst.layer_depth = depth;
                scene.instances.push_back(std::move(inst));
            }
            break;
        }
        case LayerKind::branch: {
            for (int i = 0; i < config.branches_per_layer; ++i) {
                Rng stream = layer_rng.child(static_cast<std::uint64_t>(i));
                const InstanceTransform pose =
                    plane_pose(stream, config.plane_extent, depth, identity,
                               kBranchTiltDeg, kBranchSizeJitter);
                const auto& proto =
                    branch_protos[stream.next_below(kBranchPrototypes)];
                SceneInstance tube;
                tube.transform = pose;
                tube.mesh = proto.tube;
                tube.material = kBranchMaterial;
                tube.semantic_class = SemanticClass::branch;
                tube.layer = static_cast<int>(k);
                tube.layer_depth = depth;
                scene.instances.push_back(std::move(tube));
                for (const auto& [leaf_pose, leaf_idx] : proto.leaves) {
                    SceneInstance leaf;
                    leaf.transform = pose * leaf_pose;
                    leaf.mesh = leaf_protos[static_cast<std::size_t>(leaf_idx)];
                    leaf.material = kLeafMaterial;
                    leaf.semantic_class = SemanticClass::leaf;
                    leaf.layer = static_cast<int>(k);
                    leaf.layer_depth = depth;
                    scene.instances.push_back(std::move(leaf));
                }
            }
            break;
        }
        }
    }

    if (config.background == Background::ground_plane ||
        config.background == Background::leaf_plane) {
        const double depth =
            static_cast<double>(stack.size()) * config.layer_spacing + 30.0;
        // Extent covers the widest frustum slice at that depth with margin.
        SceneInstance plane;
        plane.mesh = make_background_plane(std::max(config.plane_extent, 1.0) * 4.0, depth);
        plane.transform = InstanceTransform{};
        plane.material = kBackgroundMaterial;
        plane.semantic_class = SemanticClass::background;
        plane.layer = static_cast<int>(stack.size());
        plane.layer_depth = depth;
        scene.instances.push_back(std::move(plane));
    }

    if (config.lighting == Lighting::day) {
        scene.lights.push_back(
            {Vec3(-0.35, -0.45, -1.0).normalized(), Rgb(1.05, 1.00, 0.88)});
        scene.ambient = Rgb(0.30, 0.32, 0.30);
    } else {
        scene.lights.push_back(
            {Vec3(0.60, -0.25, -1.0).normalized(), Rgb(0.42, 0.40, 0.52)});
        scene.ambient = Rgb(0.12, 0.12, 0.17);
    }

    return scene;
}

std::size_t SceneGraph::count_class(SemanticClass cls) const {
    std::size_t n = 0;
    for (const auto& inst : instances)
        if (inst.semantic_class == cls) ++n;
    return n;
}

std::vector<SceneConfig> session_plan(const SceneConfig& config, int sessions,
                                      int pairs_per_session) {
    if (sessions < 1) throw ParamError("sessions must be >= 1");
    if (pairs_per_session < 0) throw ParamError("pairs_per_session must be >= 0");

    static const Background kBackgroundCycle[] = {
        Background::sunny_sky, Background::overcast, Background::ground_plane,
        Background::leaf_plane};

    Rng plan = Rng(config.seed).child(0x5e55);
    const int bg_base = static_cast<int>(config.background);
    const int light_base = static_cast<int>(config.lighting);

    std::vector<SceneConfig> out;
    out.reserve(static_cast<std::size_t>(sessions));
    for (int i = 0; i < sessions; ++i) {
        SceneConfig derived = config;
        derived.seed = plan.child(static_cast<std::uint64_t>(i)).next_u64();
        derived.prototype_seed = derived.seed;
        derived.background = kBackgroundCycle[(bg_base + i) % 4];
        derived.lighting = static_cast<Lighting>((light_base + i) % 2);
        out.push_back(std::move(derived));
    }
    return out;
}

} // namespace olive

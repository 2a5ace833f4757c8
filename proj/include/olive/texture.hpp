#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "olive/mesh.hpp"

namespace olive {

using Rgb = Eigen::Array3d; // linear color, channels in [0,1]

// Fractal value noise: bilinear lattice interpolation with a smoothstep
// fade, octave frequencies doubling, amplitudes halving, normalized to
// [0,1]. At integer lattice points (octaves = 1) the value equals the
// lattice hash exactly.
double value_noise_2d(std::uint64_t seed, const Vec2& p, int octaves);

// One olive skin recipe. The eleven builtin presets cover the harvest
// progression from bright green to near-black, plus dust and dacus-olea
// spot variants.
struct OliveTextureSpec {
    int variant_id = 0;
    Rgb base_color = Rgb(0.45, 0.55, 0.18);
    Rgb secondary_color = Rgb(0.30, 0.20, 0.25);
    double color_mix_noise_scale = 0.0; // 0 disables mixing
    double roughness = 0.5;
    double bump_amplitude = 0.0;
    double bump_frequency = 8.0;
    double dust_intensity = 0.0;
    int spot_count = 0;
    double spot_radius = 0.06; // UV units
    double distortion = 0.0;   // UV-domain warp strength
    std::uint64_t seed = 0;
};

struct SurfaceSample {
    Rgb albedo = Rgb::Zero();
    double roughness = 0.5;
    Vec3 normal_perturbation = Vec3::Zero(); // tangent-space (du, dv, 0) offset
};

// Pure in (spec, uv): noise-blended base/secondary color, darkened inside
// spot disks, lightened by the dust field, bump from central differences of
// a noise height field. Outputs clamp to [0,1].
SurfaceSample sample_olive_texture(const OliveTextureSpec& spec, const Vec2& uv);

// The eleven builtin olive texture presets, variant_id 0..10.
std::vector<OliveTextureSpec> builtin_presets();

// Scene material: either an olive skin or one of the procedural flat-ish
// materials used for leaves, branches and backdrop planes.
enum class MaterialKind { olive_skin, leaf, branch, ground, leaf_litter, flat };

struct Material {
    MaterialKind kind = MaterialKind::flat;
    OliveTextureSpec olive;             // used when kind == olive_skin
    Rgb color = Rgb(0.5, 0.5, 0.5);     // base for the flat kinds
    std::uint64_t seed = 0;
};

SurfaceSample sample_material(const Material& material, const Vec2& uv);

} // namespace olive

#include "olive/texture.hpp"

#include <cmath>

#include "olive/errors.hpp"
#include "olive/rng.hpp"

namespace olive {

namespace {

double fade(double t) { return t * t * (3.0 - 2.0 * t); }

double lerp(double a, double b, double t) { return a + (b - a) * t; }

double noise_octave(std::uint64_t seed, const Vec2& p) {
    const double fx = std::floor(p.x());
    const double fy = std::floor(p.y());
    const auto ix = static_cast<std::int64_t>(fx);
    const auto iy = static_cast<std::int64_t>(fy);
    const double tx = fade(p.x() - fx);
    const double ty = fade(p.y() - fy);
    const double v00 = Rng::hash01(seed, ix, iy);
    const double v10 = Rng::hash01(seed, ix + 1, iy);
    const double v01 = Rng::hash01(seed, ix, iy + 1);
    const double v11 = Rng::hash01(seed, ix + 1, iy + 1);
    return lerp(lerp(v00, v10, tx), lerp(v01, v11, tx), ty);
}

double smoothstep(double edge0, double edge1, double x) {
    const double t = std::clamp((x - edge0) / (edge1 - edge0), 0.0, 1.0);
    return t * t * (3.0 - 2.0 * t);
}

Rgb clamp01(const Rgb& c) { return c.cwiseMax(0.0).cwiseMin(1.0); }

// Height field backing the bump perturbation.
double bump_height(const OliveTextureSpec& spec, const Vec2& uv) {
    return value_noise_2d(spec.seed ^ 0xb0b5ULL, spec.bump_frequency * uv, 3);
}

} // namespace

double value_noise_2d(std::uint64_t seed, const Vec2& p, int octaves) {
    if (octaves < 1) throw ParamError("octaves must be >= 1");
    double sum = 0.0;
    double amp = 1.0;
    double total = 0.0;
    double freq = 1.0;
    for (int k = 0; k < octaves; ++k) {
        sum += amp * noise_octave(seed + static_cast<std::uint64_t>(k), freq * p);
        total += amp;
        amp *= 0.5;
        freq *= 2.0;
    }
    return sum / total;
}

SurfaceSample sample_olive_texture(const OliveTextureSpec& spec, const Vec2& uv) {
    SurfaceSample out;
    out.roughness = std::clamp(spec.roughness, 0.0, 1.0);

    // UV-domain warp applied to the color field.
    Vec2 q = uv;
    if (spec.distortion > 0.0) {
        const double wx = value_noise_2d(spec.seed ^ 0xd157ULL, 3.0 * uv, 2) - 0.5;
        const double wy = value_noise_2d(spec.seed ^ 0xd158ULL, 3.0 * uv, 2) - 0.5;
        q += spec.distortion * Vec2(wx, wy);
    }

    Rgb albedo = spec.base_color;
    if (spec.color_mix_noise_scale > 0.0) {
        const double n =
            value_noise_2d(spec.seed, spec.color_mix_noise_scale * q, 3);
        const double w = smoothstep(0.35, 0.65, n);
        albedo = spec.base_color + w * (spec.secondary_color - spec.base_color);
    }

    // Dust lightens toward a pale gray where its mask is dense.
    if (spec.dust_intensity > 0.0) {
        const double mask =
            value_noise_2d(spec.seed ^ 0xd05fULL, 6.0 * q, 2);
        const double w = spec.dust_intensity * smoothstep(0.5, 0.9, mask);
        albedo += w * (Rgb(0.82, 0.78, 0.70) - albedo);
    }

    // Dacus olea punctures: near-black disks at seeded centers.
    if (spec.spot_count > 0) {
        Rng spots = Rng(spec.seed).child(0x5b07);
        double darken = 1.0;
        for (int s = 0; s < spec.spot_count; ++s) {
            const Vec2 center(spots.next_double(), spots.next_double());
            const double d = (uv - center).norm();
            const double inside =
                1.0 - smoothstep(spec.spot_radius * 0.7, spec.spot_radius, d);
            darken = std::min(darken, 1.0 - 0.92 * inside);
        }
        albedo *= darken;
    }

    out.albedo = clamp01(albedo);

    if (spec.bump_amplitude > 0.0) {
        const double h = 5e-3;
        const double dhdu = (bump_height(spec, uv + Vec2(h, 0)) -
                             bump_height(spec, uv - Vec2(h, 0))) /
                            (2.0 * h);
        const double dhdv = (bump_height(spec, uv + Vec2(0, h)) -
                             bump_height(spec, uv - Vec2(0, h))) /
                            (2.0 * h);
        out.normal_perturbation =
            spec.bump_amplitude * Vec3(-dhdu, -dhdv, 0.0);
    }
    return out;
}

std::vector<OliveTextureSpec> builtin_presets() {
    std::vector<OliveTextureSpec> presets;
    auto add = [&](Rgb base, Rgb secondary, double mix_scale, double rough,
                   double bump_amp, double bump_freq, double dust, int spots,
                   double spot_radius, double distortion) {
        OliveTextureSpec spec;
        spec.variant_id = static_cast<int>(presets.size());
        spec.base_color = base;
        spec.secondary_color = secondary;
        spec.color_mix_noise_scale = mix_scale;
        spec.roughness = rough;
        spec.bump_amplitude = bump_amp;
        spec.bump_frequency = bump_freq;
        spec.dust_intensity = dust;
        spec.spot_count = spots;
        spec.spot_radius = spot_radius;
        spec.distortion = distortion;
        spec.seed = 0x011fe000ULL + static_cast<std::uint64_t>(spec.variant_id);
        presets.push_back(spec);
    };

    // 0-2: green fruit, progressively more mottled.
    add({0.42, 0.56, 0.16}, {0.52, 0.60, 0.22}, 4.0, 0.45, 0.20, 9.0, 0.0, 0, 0.06, 0.0);
    add({0.38, 0.52, 0.15}, {0.58, 0.58, 0.24}, 6.0, 0.50, 0.30, 11.0, 0.0, 0, 0.06, 0.3);
    add({0.35, 0.48, 0.14}, {0.30, 0.34, 0.10}, 8.0, 0.55, 0.35, 13.0, 0.0, 0, 0.06, 0.5);
    // 3-4: two-tone turning fruit (green with purple blush).
    add({0.40, 0.50, 0.16}, {0.30, 0.12, 0.22}, 3.0, 0.40, 0.25, 9.0, 0.0, 0, 0.06, 0.6);
    add({0.34, 0.42, 0.14}, {0.22, 0.08, 0.18}, 5.0, 0.42, 0.30, 10.0, 0.0, 0, 0.06, 0.8);
    // 5-6: ripe purple to near-black.
    add({0.18, 0.07, 0.16}, {0.30, 0.14, 0.24}, 5.0, 0.35, 0.25, 8.0, 0.0, 0, 0.06, 0.4);
    add({0.07, 0.04, 0.08}, {0.14, 0.08, 0.14}, 4.0, 0.30, 0.20, 7.0, 0.0, 0, 0.06, 0.2);
    // 7-8: dusty fruit, lighter patches.
    add({0.40, 0.52, 0.16}, {0.48, 0.54, 0.22}, 4.0, 0.60, 0.25, 9.0, 0.55, 0, 0.06, 0.3);
    add({0.16, 0.08, 0.15}, {0.26, 0.12, 0.20}, 4.0, 0.62, 0.25, 9.0, 0.65, 0, 0.06, 0.3);
    // 9-10: dacus olea damage (black punctures), green and turning hosts.
    add({0.41, 0.53, 0.16}, {0.50, 0.55, 0.22}, 4.0, 0.48, 0.30, 10.0, 0.0, 2, 0.07, 0.3);
    add({0.30, 0.30, 0.14}, {0.22, 0.10, 0.18}, 5.0, 0.50, 0.30, 10.0, 0.35, 3, 0.06, 0.4);

    return presets;
}

SurfaceSample sample_material(const Material& material, const Vec2& uv) {
    switch (material.kind) {
    case MaterialKind::olive_skin:
        return sample_olive_texture(material.olive, uv);
    case MaterialKind::leaf: {
        SurfaceSample out;
        // Olive leaves: sage green top with a pale midrib, slight mottle.
        const double mottle = value_noise_2d(material.seed ^ 0x1eafULL, Vec2(9.0 * uv.x(), 5.0 * uv.y()), 2);
        const double rib = std::exp(-std::pow((uv.y() - 0.5) / 0.05, 2.0));
        Rgb albedo = material.color + 0.10 * (mottle - 0.5) * Rgb(0.8, 1.0, 0.6);
        albedo += rib * Rgb(0.10, 0.12, 0.06);
        // Fade toward the pale underside tint near the edges.
        const double edge = std::abs(uv.y() - 0.5) * 2.0;
        albedo += 0.08 * edge * Rgb(0.25, 0.28, 0.18);
        out.albedo = clamp01(albedo);
        out.roughness = 0.45;
        return out;
    }
    case MaterialKind::branch: {
        SurfaceSample out;
        // Dark brown bark with dark noise along the length.
        const double n = value_noise_2d(material.seed ^ 0xba2cULL, Vec2(4.0 * uv.x(), 18.0 * uv.y()), 3);
        const double dark = 0.45 + 0.55 * smoothstep(0.25, 0.75, n);
        out.albedo = clamp01(Rgb(0.23, 0.14, 0.08) * dark);
        out.roughness = 0.8;
        return out;
    }
    case MaterialKind::ground: {
        SurfaceSample out;
        const double broad = value_noise_2d(material.seed ^ 0x6000ULL, 6.0 * uv, 3);
        const double fine = value_noise_2d(material.seed ^ 0x6001ULL, 40.0 * uv, 2);
        Rgb soil = Rgb(0.42, 0.33, 0.22) * (0.7 + 0.5 * broad);
        Rgb grass = Rgb(0.30, 0.38, 0.16) * (0.6 + 0.6 * fine);
        const double w = smoothstep(0.35, 0.7, broad);
        out.albedo = clamp01(soil + w * (grass - soil));
        out.roughness = 0.9;
        return out;
    }
    case MaterialKind::leaf_litter: {
        SurfaceSample out;
        const double blotch = value_noise_2d(material.seed ^ 0x11ddULL, 24.0 * uv, 3);
        const double shade = value_noise_2d(material.seed ^ 0x11deULL, 7.0 * uv, 2);
        Rgb light = Rgb(0.34, 0.44, 0.18);
        Rgb dark = Rgb(0.12, 0.20, 0.08);
        Rgb albedo = dark + smoothstep(0.3, 0.7, blotch) * (light - dark);
        albedo *= 0.7 + 0.5 * shade;
        out.albedo = clamp01(albedo);
        out.roughness = 0.7;
        return out;
    }
    case MaterialKind::flat:
    default: {
        SurfaceSample out;
        out.albedo = clamp01(material.color);
        return out;
    }
    }
}

} // namespace olive

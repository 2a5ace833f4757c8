#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "olive/image.hpp"
#include "olive/scene.hpp"

namespace olive {

struct RenderConfig {
    int width = 256;
    int height = 256;
    int samples_per_pixel = 4; // stratified subsample grid
    int tile_size = 32;
    double mask_coverage_threshold = 0.5; // fraction of olive subsamples
    bool shadow_rays = false;
    int threads = 0; // 0 = hardware concurrency
};

// The dataset atom: aligned RGB render and binary olive visibility mask.
struct ImageMaskPair {
    ImageRGB8 image;
    ImageGray8 mask;
    std::uint64_t scene_seed = 0;
    std::string config_hash;
};

// Deterministic tile-parallel render. Per-subsample visibility is resolved
// with the same ray/triangle predicate raycast_reference uses, so at
// samples_per_pixel = 1 the mask equals the raycast olive indicator
// exactly. Output bytes are invariant to tile size and thread count.
ImageMaskPair render(const SceneGraph& scene, const RenderConfig& config);

// Brute-force nearest-hit class for the ray through the center of pixel
// (px, py) on a width x height raster; background on miss. Test oracle.
SemanticClass raycast_reference(const SceneGraph& scene, int px, int py,
                                int width, int height);

// Whole-raster raycast oracle (one scene preparation for all pixels).
std::vector<SemanticClass> raycast_class_map(const SceneGraph& scene, int width,
                                             int height);

// Winning class of the center subsample per pixel via the full render path;
// row-major, for rasterizer/raycaster agreement checks.
std::vector<SemanticClass> render_class_map(const SceneGraph& scene,
                                            const RenderConfig& config);

} // namespace olive

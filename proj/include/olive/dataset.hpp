#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "olive/render.hpp"
#include "olive/scene.hpp"

namespace olive {

enum class DatasetColorspace { rgb, iga };

struct SessionRecord {
    std::uint64_t seed = 0;
    std::string background;
    std::string lighting;
    int pair_count = 0;
    int olive_instance_count = 0;
};

// Bookkeeping for one generated dataset; written as out/manifest.json.
// `config_hash` covers everything that determines the pixels (scene config,
// render config, session/pair counts, colorspace) and excludes `created`.
struct DatasetManifest {
    std::string version = "1";
    std::string created; // ISO-8601 UTC
    std::vector<SessionRecord> sessions;
    long total_pairs = 0;
    int image_width = 0;
    int image_height = 0;
    std::string colorspace = "rgb";
    std::string config_hash;

    [[nodiscard]] nlohmann::json to_json() const;
    static DatasetManifest from_json(const nlohmann::json& j);
};

struct DatasetOptions {
    DatasetColorspace colorspace = DatasetColorspace::rgb;
    RenderConfig render;  // width/height are taken from the scene camera
    int threads = 0;      // parallel pair workers; 0 = hardware concurrency
    double camera_jitter_cm = 2.0; // per-pair camera pan amplitude
};

// SHA-256 hex digest of the canonicalized generation inputs.
std::string config_digest(const SceneConfig& config, const RenderConfig& render,
                          int sessions, int pairs_per_session,
                          DatasetColorspace colorspace);

// Renders sessions x pairs image/mask pairs into out_dir/images and
// out_dir/masks (stems <session>_<index>, masks suffixed _mask), writes
// out_dir/manifest.json, and returns the manifest. Per-pair variation is a
// scatter reseed plus a small camera pan. Pairs whose files already exist
// under a matching config_hash are skipped, so interrupted runs resume.
// Output bytes are a pure function of the inputs.
DatasetManifest generate_dataset(const SceneConfig& config, int sessions,
                                 int pairs_per_session,
                                 const std::filesystem::path& out_dir,
                                 const DatasetOptions& options = {});

} // namespace olive

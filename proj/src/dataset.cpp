#include "olive/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <mutex>
#include <thread>

#include <openssl/evp.h>

#include "olive/colorspace.hpp"
#include "olive/errors.hpp"
#include "olive/rng.hpp"

namespace olive {

namespace {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& payload) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(payload.data(), payload.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string iso_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string session_tag(int session) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "s%02d", session);
    return buf;
}

std::string pair_stem(int session, int pair) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s_%04d", session_tag(session).c_str(), pair);
    return buf;
}

// Atomic publish: render output lands under a temp name, then renames into
// place so interrupted runs never leave torn PNGs.
void write_png_atomic(const fs::path& final_path, const ImageRGB8& image) {
    const fs::path tmp = final_path.string() + ".tmp";
    write_png(tmp, image);
    fs::rename(tmp, final_path);
}

void write_png_atomic(const fs::path& final_path, const ImageGray8& image) {
    const fs::path tmp = final_path.string() + ".tmp";
    write_png(tmp, image);
    fs::rename(tmp, final_path);
}

// Pair-level scene derivation: fresh scatter seed, session-stable
// prototypes, small camera pan.
SceneConfig derive_pair_config(const SceneConfig& session_config, int pair,
                               double camera_jitter_cm) {
    SceneConfig cfg = session_config;
    cfg.prototype_seed = session_config.prototype_seed.value_or(session_config.seed);
    Rng pair_rng = Rng(session_config.seed).child(0x9a12).child(
        static_cast<std::uint64_t>(pair));
    cfg.seed = pair_rng.next_u64();
    const double dx = pair_rng.uniform(-camera_jitter_cm, camera_jitter_cm);
    const double dy = pair_rng.uniform(-camera_jitter_cm, camera_jitter_cm);
    cfg.camera.position += Vec3(dx, dy, 0.0);
    cfg.camera.look_at += Vec3(dx, dy, 0.0);
    return cfg;
}

} // namespace

nlohmann::json DatasetManifest::to_json() const {
    nlohmann::json j;
    j["version"] = version;
    j["created"] = created;
    j["total_pairs"] = total_pairs;
    j["image_width"] = image_width;
    j["image_height"] = image_height;
    j["colorspace"] = colorspace;
    j["config_hash"] = config_hash;
    nlohmann::json sess = nlohmann::json::array();
    for (const SessionRecord& s : sessions)
        sess.push_back({{"seed", s.seed},
                        {"background", s.background},
                        {"lighting", s.lighting},
                        {"pair_count", s.pair_count},
                        {"olive_instance_count", s.olive_instance_count}});
    j["sessions"] = sess;
    return j;
}

DatasetManifest DatasetManifest::from_json(const nlohmann::json& j) {
    DatasetManifest m;
    m.version = j.value("version", m.version);
    m.created = j.value("created", m.created);
    m.total_pairs = j.value("total_pairs", m.total_pairs);
    m.image_width = j.value("image_width", m.image_width);
    m.image_height = j.value("image_height", m.image_height);
    m.colorspace = j.value("colorspace", m.colorspace);
    m.config_hash = j.value("config_hash", m.config_hash);
    if (j.contains("sessions")) {
        for (const auto& js : j["sessions"]) {
            SessionRecord s;
            s.seed = js.value("seed", std::uint64_t{0});
            s.background = js.value("background", std::string{});
            s.lighting = js.value("lighting", std::string{});
            s.pair_count = js.value("pair_count", 0);
            s.olive_instance_count = js.value("olive_instance_count", 0);
            m.sessions.push_back(std::move(s));
        }
    }
    return m;
}

std::string config_digest(const SceneConfig& config, const RenderConfig& render,
                          int sessions, int pairs_per_session,
                          DatasetColorspace colorspace) {
    nlohmann::json j;
    j["scene"] = to_json(config);
    j["render"] = {{"samples_per_pixel", render.samples_per_pixel},
                   {"mask_coverage_threshold", render.mask_coverage_threshold},
                   {"shadow_rays", render.shadow_rays}};
    j["sessions"] = sessions;
    j["pairs_per_session"] = pairs_per_session;
    j["colorspace"] = colorspace == DatasetColorspace::iga ? "iga" : "rgb";
    // nlohmann::json objects keep sorted keys, so dump() is canonical.
    return sha256_hex(j.dump());
}

DatasetManifest generate_dataset(const SceneConfig& config, int sessions,
                                 int pairs_per_session, const fs::path& out_dir,
                                 const DatasetOptions& options) {
    if (sessions < 1) throw ParamError("sessions must be >= 1");
    if (pairs_per_session < 0) throw ParamError("pairs_per_session must be >= 0");
    validate(config);

    const fs::path images_dir = out_dir / "images";
    const fs::path masks_dir = out_dir / "masks";
    const fs::path manifest_path = out_dir / "manifest.json";
    std::error_code ec;
    fs::create_directories(images_dir, ec);
    fs::create_directories(masks_dir, ec);
    if (!fs::is_directory(images_dir) || !fs::is_directory(masks_dir))
        throw IoError("cannot create dataset directories under " + out_dir.string());

    const std::string digest = config_digest(config, options.render, sessions,
                                             pairs_per_session, options.colorspace);

    // Resume bookkeeping: reuse `created` and skip finished pairs only when
    // the recorded hash matches this configuration.
    bool resumable = false;
    std::string created = iso_now();
    if (fs::exists(manifest_path)) {
        std::ifstream in(manifest_path);
        nlohmann::json j;
        if (in && (in >> j, !j.is_discarded())) {
            const DatasetManifest previous = DatasetManifest::from_json(j);
            if (previous.config_hash == digest) {
                resumable = true;
                if (!previous.created.empty()) created = previous.created;
            }
        }
    }

    const std::vector<SceneConfig> plan =
        session_plan(config, sessions, pairs_per_session);

    DatasetManifest manifest;
    manifest.created = created;
    manifest.image_width = config.camera.image_width;
    manifest.image_height = config.camera.image_height;
    manifest.colorspace =
        options.colorspace == DatasetColorspace::iga ? "iga" : "rgb";
    manifest.config_hash = digest;

    RenderConfig render_config = options.render;
    render_config.width = config.camera.image_width;
    render_config.height = config.camera.image_height;
    render_config.threads = 1; // parallelism lives at the pair level

    struct Task {
        int session;
        int pair;
    };
    std::vector<Task> tasks;
    tasks.reserve(static_cast<std::size_t>(sessions) * pairs_per_session);
    for (int s = 0; s < sessions; ++s)
        for (int p = 0; p < pairs_per_session; ++p) tasks.push_back({s, p});

    std::vector<int> olive_counts(static_cast<std::size_t>(sessions), 0);
    for (int s = 0; s < sessions; ++s)
        olive_counts[static_cast<std::size_t>(s)] = plan[static_cast<std::size_t>(s)].olives_per_session;

    std::atomic<std::size_t> next{0};
    std::atomic<long> rendered{0};
    std::atomic<long> skipped{0};
    std::mutex failure_mutex;
    std::exception_ptr failure;

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (failure) return;
            }
            const Task task = tasks[i];
            const std::string stem = pair_stem(task.session, task.pair);
            const fs::path image_path = images_dir / (stem + ".png");
            const fs::path mask_path = masks_dir / (stem + "_mask.png");
            try {
                if (resumable && fs::exists(image_path) && fs::exists(mask_path)) {
                    skipped.fetch_add(1);
                    continue;
                }
                const SceneConfig pair_config = derive_pair_config(
                    plan[static_cast<std::size_t>(task.session)], task.pair,
                    options.camera_jitter_cm);
                const SceneGraph scene = assemble_scene(pair_config);
                ImageMaskPair pair = render(scene, render_config);
                if (options.colorspace == DatasetColorspace::iga)
                    pair.image = convert_image_iga(pair.image);
                write_png_atomic(image_path, pair.image);
                write_png_atomic(mask_path, pair.mask);
                rendered.fetch_add(1);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    int workers = options.threads > 0
                      ? options.threads
                      : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    workers = std::min<int>(workers, std::max<int>(1, static_cast<int>(tasks.size())));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // Manifest reflects what is actually on disk, so a failed run still
    // flushes a partial manifest before the error propagates.
    long total = 0;
    for (int s = 0; s < sessions; ++s) {
        SessionRecord record;
        record.seed = plan[static_cast<std::size_t>(s)].seed;
        record.background = to_string(plan[static_cast<std::size_t>(s)].background);
        record.lighting = to_string(plan[static_cast<std::size_t>(s)].lighting);
        record.olive_instance_count = olive_counts[static_cast<std::size_t>(s)];
        int complete = 0;
        for (int p = 0; p < pairs_per_session; ++p) {
            const std::string stem = pair_stem(s, p);
            if (fs::exists(images_dir / (stem + ".png")) &&
                fs::exists(masks_dir / (stem + "_mask.png")))
                ++complete;
        }
        record.pair_count = complete;
        total += complete;
        manifest.sessions.push_back(std::move(record));
    }
    manifest.total_pairs = total;

    {
        const fs::path tmp = manifest_path.string() + ".tmp";
        std::ofstream out(tmp);
        if (!out) throw IoError("cannot write manifest: " + manifest_path.string());
        out << manifest.to_json().dump(2) << "\n";
        out.close();
        fs::rename(tmp, manifest_path);
    }

    if (failure) std::rethrow_exception(failure);
    return manifest;
}

} // namespace olive

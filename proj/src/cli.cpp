#include "olive/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "olive/colorspace.hpp"
#include "olive/dataset.hpp"
#include "olive/errors.hpp"
#include "olive/evaluation.hpp"
#include "olive/obj_export.hpp"
#include "olive/render.hpp"
#include "olive/rng.hpp"

namespace olive {

namespace {

namespace fs = std::filesystem;

SceneConfig resolve_config(const std::string& config_path,
                           std::optional<std::uint64_t> seed) {
    SceneConfig config;
    if (!config_path.empty()) config = load_scene_config(config_path);
    if (seed) config.seed = *seed;
    return config;
}

int run_generate(const std::string& config_path, std::optional<std::uint64_t> seed,
                 int sessions, int pairs, const std::string& out,
                 const std::string& colorspace, int threads, int spp) {
    SceneConfig config = resolve_config(config_path, seed);
    DatasetOptions options;
    options.colorspace = colorspace == "iga" ? DatasetColorspace::iga
                                             : DatasetColorspace::rgb;
    options.threads = threads;
    options.render.samples_per_pixel = spp;
    const DatasetManifest manifest =
        generate_dataset(config, sessions, pairs, out, options);
    std::cout << "wrote " << manifest.total_pairs << " image-mask pairs to " << out
              << " (" << manifest.colorspace << ", " << manifest.image_width << "x"
              << manifest.image_height << ")\n";
    return 0;
}

int run_preview(const std::string& config_path, std::optional<std::uint64_t> seed,
                const std::string& out, int spp) {
    SceneConfig config = resolve_config(config_path, seed);
    const SceneGraph scene = assemble_scene(config);
    RenderConfig render_config;
    render_config.width = config.camera.image_width;
    render_config.height = config.camera.image_height;
    render_config.samples_per_pixel = spp;
    const ImageMaskPair pair = render(scene, render_config);
    fs::create_directories(out);
    const fs::path image_path = fs::path(out) / "preview.png";
    const fs::path mask_path = fs::path(out) / "preview_mask.png";
    write_png(image_path, pair.image);
    write_png(mask_path, pair.mask);
    std::cout << "wrote " << image_path.string() << " and " << mask_path.string()
              << "\n";
    return 0;
}

int run_export_mesh(const std::string& kind, std::uint64_t seed,
                    const std::string& out) {
    TriMesh mesh;
    if (kind == "olive") {
        mesh = make_olive(OliveShapeParams{}, seed);
    } else if (kind == "leaf") {
        mesh = make_leaf(LeafParams{}, seed);
    } else if (kind == "branch") {
        mesh = tessellate_branch(random_branch_curve(seed), 0.7, 0.3, 12, 8, 0.9);
    } else {
        std::cerr << "unknown mesh kind: " << kind << " (olive|leaf|branch)\n";
        return 1;
    }
    write_obj(fs::path(out), mesh);
    std::cout << "wrote " << out << " (" << mesh.vertex_count() << " vertices, "
              << mesh.triangle_count() << " triangles)\n";
    return 0;
}

int run_list_textures() {
    nlohmann::json j = nlohmann::json::array();
    for (const OliveTextureSpec& spec : builtin_presets()) {
        j.push_back({{"variant_id", spec.variant_id},
                     {"base_color", {spec.base_color[0], spec.base_color[1],
                                     spec.base_color[2]}},
                     {"secondary_color",
                      {spec.secondary_color[0], spec.secondary_color[1],
                       spec.secondary_color[2]}},
                     {"color_mix_noise_scale", spec.color_mix_noise_scale},
                     {"roughness", spec.roughness},
                     {"bump_amplitude", spec.bump_amplitude},
                     {"bump_frequency", spec.bump_frequency},
                     {"dust_intensity", spec.dust_intensity},
                     {"spot_count", spec.spot_count},
                     {"spot_radius", spec.spot_radius},
                     {"distortion", spec.distortion},
                     {"seed", spec.seed}});
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_convert_iga(const std::string& in_dir, const std::string& out_dir,
                    const std::string& intensity) {
    const int converted =
        convert_directory_iga(in_dir, out_dir, intensity_mode_from_string(intensity));
    std::cout << "converted " << converted << " images to IGA (" << intensity
              << ")\n";
    return 0;
}

int run_eval_iou(const std::string& pred, const std::string& gt, int threshold,
                 const std::string& report_path) {
    const EvalReport report = evaluate_dirs(pred, gt, threshold);
    std::cout << "micro IoU: " << report.micro_iou << "\n";
    std::cout << "macro IoU: " << report.macro_iou << "\n";
    std::cout << "images: " << report.per_image.size()
              << " warnings: " << report.warning_count << "\n";
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) throw IoError("cannot write report: " + report_path);
        out << report.to_json().dump(2) << "\n";
    }
    return 0;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Synthetic olive-grove dataset toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // --seed/--config may follow the subcommand

    std::string config_path;
    std::optional<std::uint64_t> seed;
    app.add_option("--config", config_path, "Scene config JSON")->capture_default_str();
    app.add_option("--seed", seed, "Override the scene seed");

    auto* generate = app.add_subcommand("generate", "Render an image-mask dataset");
    int sessions = 16;
    int pairs = 2;
    std::string out_dir = "dataset";
    std::string colorspace = "rgb";
    int threads = 0;
    int spp = 4;
    generate->add_option("--sessions", sessions, "Rendering sessions")
        ->check(CLI::PositiveNumber);
    generate->add_option("--pairs", pairs, "Image-mask pairs per session")
        ->check(CLI::NonNegativeNumber);
    generate->add_option("--out", out_dir, "Output directory");
    generate->add_option("--colorspace", colorspace, "rgb or iga")
        ->check(CLI::IsMember({"rgb", "iga"}));
    generate->add_option("--threads", threads, "Worker threads (0 = auto)");
    generate->add_option("--spp", spp, "Subsamples per pixel")
        ->check(CLI::PositiveNumber);

    auto* preview = app.add_subcommand("preview", "Render one scene to a PNG pair");
    std::string preview_out = ".";
    int preview_spp = 4;
    preview->add_option("--out", preview_out, "Output directory");
    preview->add_option("--spp", preview_spp, "Subsamples per pixel")
        ->check(CLI::PositiveNumber);

    auto* export_mesh =
        app.add_subcommand("export-mesh", "Write a prototype mesh as Wavefront OBJ");
    std::string mesh_kind;
    std::string mesh_out = "mesh.obj";
    export_mesh->add_option("kind", mesh_kind, "olive, leaf or branch")->required();
    export_mesh->add_option("--out", mesh_out, "Output .obj path");

    auto* list_textures =
        app.add_subcommand("list-textures", "Print the builtin olive texture presets");

    auto* convert =
        app.add_subcommand("convert-iga", "Convert a directory of PNGs to IGA");
    std::string conv_in;
    std::string conv_out;
    std::string intensity = "mean";
    convert->add_option("--in", conv_in, "Input directory")->required();
    convert->add_option("--out", conv_out, "Output directory")->required();
    convert->add_option("--intensity", intensity, "mean, max or luma709")
        ->check(CLI::IsMember({"mean", "max", "luma709"}));

    auto* eval = app.add_subcommand("eval-iou", "Score predicted masks against ground truth");
    std::string pred_dir;
    std::string gt_dir;
    int threshold = 128;
    std::string report_path;
    eval->add_option("--pred", pred_dir, "Predicted mask directory")->required();
    eval->add_option("--gt", gt_dir, "Ground-truth mask directory")->required();
    eval->add_option("--threshold", threshold, "Binarization threshold (0-255)")
        ->check(CLI::Range(0, 255));
    eval->add_option("--report", report_path, "Write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            app.exit(e);
            return 0;
        }
        app.exit(e);
        return 1;
    }

    try {
        if (generate->parsed())
            return run_generate(config_path, seed, sessions, pairs, out_dir,
                                colorspace, threads, spp);
        if (preview->parsed())
            return run_preview(config_path, seed, preview_out, preview_spp);
        if (export_mesh->parsed())
            return run_export_mesh(mesh_kind, seed.value_or(0), mesh_out);
        if (list_textures->parsed()) return run_list_textures();
        if (convert->parsed()) return run_convert_iga(conv_in, conv_out, intensity);
        if (eval->parsed())
            return run_eval_iou(pred_dir, gt_dir, threshold, report_path);
    } catch (const ParamError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

} // namespace olive

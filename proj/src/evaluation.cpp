#include "olive/evaluation.hpp"

#include <algorithm>
#include <map>

#include "olive/errors.hpp"

namespace olive {

namespace {

void check_dims(const MaskPair& pair) {
    if (pair.prediction.width != pair.ground_truth.width ||
        pair.prediction.height != pair.ground_truth.height)
        throw ShapeError("mask dimensions differ");
}

ImageGray8 binarize(const ImageGray8& image, int threshold) {
    ImageGray8 out = image;
    for (std::uint8_t& v : out.data) v = v >= threshold ? 255 : 0;
    return out;
}

std::string normalized_stem(const std::filesystem::path& path) {
    std::string stem = path.stem().string();
    static const std::string suffix = "_mask";
    if (stem.size() > suffix.size() &&
        stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0)
        stem.erase(stem.size() - suffix.size());
    return stem;
}

std::map<std::string, std::filesystem::path> index_masks(
    const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
    std::map<std::string, fs::path> index;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".png")
            index[normalized_stem(entry.path())] = entry.path();
    return index;
}

} // namespace

PixelCounts pixel_counts(const MaskPair& pair) {
    check_dims(pair);
    PixelCounts counts;
    const std::size_t n = pair.prediction.data.size();
    for (std::size_t i = 0; i < n; ++i) {
        const bool p = pair.prediction.data[i] != 0;
        const bool g = pair.ground_truth.data[i] != 0;
        counts.tp += p && g;
        counts.fp += p && !g;
        counts.fn += !p && g;
    }
    return counts;
}

double iou(const MaskPair& pair) {
    const PixelCounts c = pixel_counts(pair);
    const std::uint64_t uni = c.tp + c.fp + c.fn;
    if (uni == 0) return 1.0; // both masks empty: perfect agreement
    return static_cast<double>(c.tp) / static_cast<double>(uni);
}

double jaccard_loss(const MaskPair& pair) { return 1.0 - iou(pair); }

nlohmann::json EvalReport::to_json() const {
    nlohmann::json j;
    j["micro_iou"] = micro_iou;
    j["macro_iou"] = macro_iou;
    j["counts"] = {{"tp", counts.tp}, {"fp", counts.fp}, {"fn", counts.fn}};
    j["image_count"] = per_image.size();
    j["warning_count"] = warning_count;
    j["skipped"] = skipped;
    nlohmann::json images = nlohmann::json::array();
    for (const auto& [name, value] : per_image)
        images.push_back({{"name", name}, {"iou", value}});
    j["per_image"] = images;
    return j;
}

EvalReport evaluate_dirs(const std::filesystem::path& pred_dir,
                         const std::filesystem::path& gt_dir, int threshold) {
    const auto pred_index = index_masks(pred_dir);
    const auto gt_index = index_masks(gt_dir);

    EvalReport report;
    std::vector<std::pair<std::string, std::pair<std::filesystem::path,
                                                 std::filesystem::path>>> pairs;
    for (const auto& [stem, path] : pred_index) {
        const auto it = gt_index.find(stem);
        if (it == gt_index.end())
            report.skipped.push_back(stem);
        else
            pairs.push_back({stem, {path, it->second}});
    }
    for (const auto& [stem, path] : gt_index)
        if (!pred_index.count(stem)) report.skipped.push_back(stem);
    std::sort(report.skipped.begin(), report.skipped.end());
    report.warning_count = static_cast<int>(report.skipped.size());

    if (pairs.empty())
        throw FormatError("no overlapping mask filenames between " +
                          pred_dir.string() + " and " + gt_dir.string());

    double iou_sum = 0.0;
    for (const auto& [stem, paths] : pairs) {
        MaskPair pair;
        pair.prediction = binarize(read_png_gray(paths.first), threshold);
        pair.ground_truth = binarize(read_png_gray(paths.second), threshold);
        const PixelCounts c = pixel_counts(pair);
        report.counts.tp += c.tp;
        report.counts.fp += c.fp;
        report.counts.fn += c.fn;
        const double value = iou(pair);
        iou_sum += value;
        report.per_image.emplace_back(stem, value);
    }

    const std::uint64_t uni =
        report.counts.tp + report.counts.fp + report.counts.fn;
    report.micro_iou = uni == 0 ? 1.0
                                : static_cast<double>(report.counts.tp) /
                                      static_cast<double>(uni);
    report.macro_iou = iou_sum / static_cast<double>(pairs.size());
    return report;
}

} // namespace olive

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "olive/image.hpp"

namespace olive {

// Prediction/ground-truth mask pair; values are 0 or 255 after
// thresholding, equal dimensions required.
struct MaskPair {
    ImageGray8 prediction;
    ImageGray8 ground_truth;
};

struct PixelCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
};

// |P intersect G| / |P union G|; both-empty pairs score 1.0 (agreement that
// nothing is there), empty-vs-nonempty scores 0.0.
double iou(const MaskPair& pair);

// 1 - iou(pair).
double jaccard_loss(const MaskPair& pair);

PixelCounts pixel_counts(const MaskPair& pair);

struct EvalReport {
    std::vector<std::pair<std::string, double>> per_image; // (stem, IoU)
    double micro_iou = 1.0; // pooled pixel counts, the headline figure
    double macro_iou = 1.0; // mean of per-image IoU
    PixelCounts counts;
    std::vector<std::string> skipped; // stems present on only one side
    int warning_count = 0;

    [[nodiscard]] nlohmann::json to_json() const;
};

// Scores same-stem .png masks from two directories. A trailing "_mask"
// suffix is stripped when pairing, so dataset masks named s00_0001_mask.png
// pair with predictions named s00_0001.png. Grayscale inputs are binarized
// at `threshold` (>= maps to 255). Throws FormatError when the stem sets do
// not intersect.
EvalReport evaluate_dirs(const std::filesystem::path& pred_dir,
                         const std::filesystem::path& gt_dir,
                         int threshold = 128);

} // namespace olive

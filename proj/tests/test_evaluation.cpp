#include <doctest.h>

#include <filesystem>

#include "olive/errors.hpp"
#include "olive/evaluation.hpp"
#include "olive/rng.hpp"

using namespace olive;

namespace {

ImageGray8 mask_of(int w, int h, std::initializer_list<int> on_pixels) {
    ImageGray8 mask(w, h);
    for (int idx : on_pixels) mask.data[static_cast<std::size_t>(idx)] = 255;
    return mask;
}

// Brute-force per-pixel double loop, the oracle the fast path must match.
double iou_oracle(const ImageGray8& p, const ImageGray8& g) {
    long inter = 0, uni = 0;
    for (int y = 0; y < p.height; ++y) {
        for (int x = 0; x < p.width; ++x) {
            const bool a = p.at(x, y) != 0;
            const bool b = g.at(x, y) != 0;
            inter += a && b;
            uni += a || b;
        }
    }
    return uni == 0 ? 1.0 : static_cast<double>(inter) / uni;
}

} // namespace

TEST_CASE("identical, disjoint, and half-overlap masks") {
    const ImageGray8 full = mask_of(4, 4, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11,
                                           12, 13, 14, 15});
    const ImageGray8 left = mask_of(4, 4, {0, 1, 4, 5, 8, 9, 12, 13});
    const ImageGray8 empty(4, 4);

    CHECK(iou({full, full}) == 1.0);
    CHECK(iou({left, left}) == 1.0);
    CHECK(iou({mask_of(4, 4, {0}), mask_of(4, 4, {15})}) == 0.0);
    CHECK(iou({left, full}) == doctest::Approx(0.5).epsilon(1e-15)); // 8/16
    CHECK(jaccard_loss({left, full}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(jaccard_loss({full, full}) == 0.0);
    CHECK(jaccard_loss({mask_of(4, 4, {0}), mask_of(4, 4, {15})}) == 1.0);

    // Empty-vs-empty scores 1, empty-vs-nonempty scores 0.
    CHECK(iou({empty, empty}) == 1.0);
    CHECK(iou({empty, full}) == 0.0);
}

TEST_CASE("dimension mismatch raises a shape error") {
    CHECK_THROWS_AS(iou({ImageGray8(4, 4), ImageGray8(4, 5)}), ShapeError);
}

TEST_CASE("symmetry and exact oracle agreement on random masks") {
    Rng rng(21);
    for (int trial = 0; trial < 1000; ++trial) {
        ImageGray8 p(16, 16), g(16, 16);
        for (auto& v : p.data) v = rng.next_double() < 0.3 ? 255 : 0;
        for (auto& v : g.data) v = rng.next_double() < 0.3 ? 255 : 0;
        const double fast = iou({p, g});
        CHECK(fast == iou_oracle(p, g)); // exact, same integer arithmetic
        CHECK(fast == iou({g, p}));
    }
}

TEST_CASE("monotonicity: true positives help, false positives hurt") {
    Rng rng(22);
    ImageGray8 gt(16, 16);
    for (auto& v : gt.data) v = rng.next_double() < 0.4 ? 255 : 0;

    ImageGray8 pred(16, 16);
    double prev = iou({pred, gt});
    for (int y = 0; y < 16; ++y) {
        for (int x = 0; x < 16; ++x) {
            if (gt.at(x, y) == 0) continue;
            pred.at(x, y) = 255; // add one true positive
            const double now = iou({pred, gt});
            CHECK(now >= prev - 1e-15);
            prev = now;
        }
    }
    for (int y = 0; y < 16; ++y) {
        for (int x = 0; x < 16; ++x) {
            if (gt.at(x, y) != 0) continue;
            pred.at(x, y) = 255; // add one false positive
            const double now = iou({pred, gt});
            CHECK(now <= prev + 1e-15);
            prev = now;
        }
    }
}

TEST_CASE("directory evaluation: identical dirs, thresholds, stems") {
    namespace fs = std::filesystem;
    const fs::path pred = fs::temp_directory_path() / "olv_eval_pred";
    const fs::path gt = fs::temp_directory_path() / "olv_eval_gt";
    fs::remove_all(pred);
    fs::remove_all(gt);
    fs::create_directories(pred);
    fs::create_directories(gt);

    const ImageGray8 a = mask_of(8, 8, {0, 1, 2, 3, 9, 10});
    const ImageGray8 b = mask_of(8, 8, {0, 1, 2, 3, 4, 5, 6, 7});
    write_png(pred / "s00_0000.png", a);
    write_png(gt / "s00_0000_mask.png", a); // "_mask" suffix pairs by stem
    write_png(pred / "s00_0001.png", b);
    write_png(gt / "s00_0001_mask.png", b);
    write_png(pred / "only_pred.png", a); // unmatched -> skipped

    const EvalReport report = evaluate_dirs(pred, gt);
    CHECK(report.per_image.size() == 2);
    CHECK(report.micro_iou == 1.0);
    CHECK(report.macro_iou == 1.0);
    CHECK(report.warning_count == 1);
    REQUIRE(report.skipped.size() == 1);
    CHECK(report.skipped[0] == "only_pred");
    CHECK(report.counts.fp == 0);
    CHECK(report.counts.fn == 0);

    // A half-overlap pair drags the aggregate down as counted.
    write_png(pred / "s00_0002.png", mask_of(8, 8, {0, 1}));
    write_png(gt / "s00_0002_mask.png", mask_of(8, 8, {0, 1, 2, 3}));
    const EvalReport mixed = evaluate_dirs(pred, gt);
    CHECK(mixed.per_image.size() == 3);
    // micro: TP = 6+8+2, FP = 0, FN = 2.
    CHECK(mixed.counts.tp == 16);
    CHECK(mixed.counts.fn == 2);
    CHECK(mixed.micro_iou == doctest::Approx(16.0 / 18.0).epsilon(1e-12));
    CHECK(mixed.macro_iou == doctest::Approx((1.0 + 1.0 + 0.5) / 3.0).epsilon(1e-12));

    const nlohmann::json j = mixed.to_json();
    CHECK(j["image_count"] == 3);
    CHECK(j["counts"]["tp"] == 16);

    fs::remove_all(pred);
    fs::remove_all(gt);
}

TEST_CASE("no overlapping stems is an error, not a score") {
    namespace fs = std::filesystem;
    const fs::path pred = fs::temp_directory_path() / "olv_eval_p2";
    const fs::path gt = fs::temp_directory_path() / "olv_eval_g2";
    fs::remove_all(pred);
    fs::remove_all(gt);
    fs::create_directories(pred);
    fs::create_directories(gt);
    write_png(pred / "a.png", ImageGray8(4, 4));
    write_png(gt / "b.png", ImageGray8(4, 4));
    CHECK_THROWS_AS(evaluate_dirs(pred, gt), FormatError);
    fs::remove_all(pred);
    fs::remove_all(gt);
}

TEST_CASE("binarization threshold is respected") {
    namespace fs = std::filesystem;
    const fs::path pred = fs::temp_directory_path() / "olv_eval_p3";
    const fs::path gt = fs::temp_directory_path() / "olv_eval_g3";
    fs::remove_all(pred);
    fs::remove_all(gt);
    fs::create_directories(pred);
    fs::create_directories(gt);

    ImageGray8 soft(2, 2);
    soft.data = {0, 100, 128, 255}; // values below 128 drop at the default
    ImageGray8 hard(2, 2);
    hard.data = {0, 0, 255, 255};
    write_png(pred / "x.png", soft);
    write_png(gt / "x.png", hard);

    CHECK(evaluate_dirs(pred, gt, 128).micro_iou == 1.0);
    CHECK(evaluate_dirs(pred, gt, 50).micro_iou ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    fs::remove_all(pred);
    fs::remove_all(gt);
}

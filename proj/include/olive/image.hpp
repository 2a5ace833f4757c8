#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace olive {

// Interleaved 8-bit RGB raster, row-major from the top-left corner.
struct ImageRGB8 {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data; // 3 * width * height

    ImageRGB8() = default;
    ImageRGB8(int w, int h)
        : width(w), height(h),
          data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3, 0) {}

    std::uint8_t* px(int x, int y) {
        return data.data() + 3 * (static_cast<std::size_t>(y) * width + x);
    }
    [[nodiscard]] const std::uint8_t* px(int x, int y) const {
        return data.data() + 3 * (static_cast<std::size_t>(y) * width + x);
    }
};

// Single-channel 8-bit raster; masks hold only 0 or 255.
struct ImageGray8 {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data; // width * height

    ImageGray8() = default;
    ImageGray8(int w, int h)
        : width(w), height(h),
          data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0) {}

    std::uint8_t& at(int x, int y) {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    [[nodiscard]] std::uint8_t at(int x, int y) const {
        return data[static_cast<std::size_t>(y) * width + x];
    }
};

// PNG output, fixed encoder settings so identical rasters produce identical
// bytes. Throws IoError on filesystem failure.
void write_png(const std::filesystem::path& path, const ImageRGB8& image);
void write_png(const std::filesystem::path& path, const ImageGray8& image);

// PNG input; any color type is expanded/collapsed to the requested layout
// (gray reads use the BT.601 integer luma for color inputs). Throws IoError
// or FormatError.
ImageRGB8 read_png_rgb(const std::filesystem::path& path);
ImageGray8 read_png_gray(const std::filesystem::path& path);

} // namespace olive

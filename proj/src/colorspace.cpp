#include "olive/colorspace.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "olive/errors.hpp"

namespace olive {

namespace {

std::uint8_t round_half_away(double x) {
    // Inputs are non-negative and <= 255 for every 8-bit source triple.
    return static_cast<std::uint8_t>(std::floor(x + 0.5));
}

} // namespace

IntensityMode intensity_mode_from_string(const std::string& name) {
    if (name == "mean") return IntensityMode::mean;
    if (name == "max") return IntensityMode::max;
    if (name == "luma709") return IntensityMode::luma709;
    throw ConfigError("unknown intensity mode: " + name);
}

std::string to_string(IntensityMode mode) {
    switch (mode) {
    case IntensityMode::mean: return "mean";
    case IntensityMode::max: return "max";
    case IntensityMode::luma709: return "luma709";
    }
    return "mean";
}

std::array<std::uint8_t, 3> rgb_to_iga(std::uint8_t r, std::uint8_t g,
                                       std::uint8_t b, IntensityMode mode) {
    std::uint8_t intensity = 0;
    switch (mode) {
    case IntensityMode::mean:
        intensity = round_half_away((static_cast<int>(r) + g + b) / 3.0);
        break;
    case IntensityMode::max:
        intensity = std::max({r, g, b});
        break;
    case IntensityMode::luma709:
        intensity = round_half_away(0.2126 * r + 0.7152 * g + 0.0722 * b);
        break;
    }
    const std::uint8_t avg_rb = round_half_away((static_cast<int>(r) + b) / 2.0);
    return {intensity, g, avg_rb};
}

ImageRGB8 convert_image_iga(const ImageRGB8& image, IntensityMode mode) {
    if (image.width < 0 || image.height < 0 ||
        image.data.size() !=
            static_cast<std::size_t>(image.width) * image.height * 3)
        throw FormatError("convert_image_iga expects a 3-channel 8-bit raster");
    ImageRGB8 out(image.width, image.height);
    for (std::size_t i = 0; i + 2 < image.data.size(); i += 3) {
        const auto iga = rgb_to_iga(image.data[i], image.data[i + 1],
                                    image.data[i + 2], mode);
        out.data[i] = iga[0];
        out.data[i + 1] = iga[1];
        out.data[i + 2] = iga[2];
    }
    return out;
}

int convert_directory_iga(const std::filesystem::path& in_dir,
                          const std::filesystem::path& out_dir,
                          IntensityMode mode) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(in_dir))
        throw IoError("not a directory: " + in_dir.string());
    fs::create_directories(out_dir);

    std::vector<fs::path> inputs;
    for (const auto& entry : fs::directory_iterator(in_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".png")
            inputs.push_back(entry.path());
    std::sort(inputs.begin(), inputs.end());

    int converted = 0;
    for (const fs::path& path : inputs) {
        const ImageRGB8 image = read_png_rgb(path);
        write_png(out_dir / path.filename(), convert_image_iga(image, mode));
        ++converted;
    }
    return converted;
}

} // namespace olive

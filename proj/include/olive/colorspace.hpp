#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>

#include "olive/image.hpp"

namespace olive {

// How the I channel of the IGA space is computed. `mean` is the default;
// the alternatives exist to probe the ambiguity in the source definition.
enum class IntensityMode { mean, max, luma709 };

IntensityMode intensity_mode_from_string(const std::string& name);
std::string to_string(IntensityMode mode);

// RGB -> (I, G, Avg(R,B)): intensity, pass-through green, red/blue average.
// Rounding is half-away-from-zero on 8-bit data.
std::array<std::uint8_t, 3> rgb_to_iga(std::uint8_t r, std::uint8_t g,
                                       std::uint8_t b,
                                       IntensityMode mode = IntensityMode::mean);

// Per-pixel rgb_to_iga with channel order (I, G, A); dimensions preserved.
ImageRGB8 convert_image_iga(const ImageRGB8& image,
                            IntensityMode mode = IntensityMode::mean);

// Converts every .png in `in_dir` (non-recursive) and writes the result
// under the same filename in `out_dir`; returns the number converted.
// Mask conversion is the caller's mistake to avoid: this treats every input
// as an RGB image.
int convert_directory_iga(const std::filesystem::path& in_dir,
                          const std::filesystem::path& out_dir,
                          IntensityMode mode = IntensityMode::mean);

} // namespace olive

#include "olive/image.hpp"

#include <cstdio>
#include <memory>

#include <png.h>

#include "olive/errors.hpp"

namespace olive {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

void write_png_impl(const std::filesystem::path& path, int width, int height,
                    int color_type, int channels, const std::uint8_t* data) {
    if (width <= 0 || height <= 0)
        throw IoError("refusing to write empty raster: " + path.string());
    FilePtr file(std::fopen(path.string().c_str(), "wb"));
    if (!file) throw IoError("cannot open for writing: " + path.string());

    png_structp png =
        png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("png write failed: " + path.string());
    }

    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(width),
                 static_cast<png_uint_32>(height), 8, color_type,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_set_compression_level(png, 6);
    png_write_info(png, info);

    std::vector<png_bytep> rows(static_cast<std::size_t>(height));
    const std::size_t stride = static_cast<std::size_t>(width) * channels;
    for (int y = 0; y < height; ++y)
        rows[static_cast<std::size_t>(y)] =
            const_cast<png_bytep>(data + static_cast<std::size_t>(y) * stride);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngReader() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    }
};

// Decodes to packed 8-bit RGB rows regardless of the source color type.
ImageRGB8 read_png_rgb8(const std::filesystem::path& path) {
    FilePtr file(std::fopen(path.string().c_str(), "rb"));
    if (!file) throw IoError("cannot open: " + path.string());

    unsigned char header[8];
    if (std::fread(header, 1, 8, file.get()) != 8 || png_sig_cmp(header, 0, 8))
        throw FormatError("not a PNG file: " + path.string());

    PngReader r;
    r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!r.png) throw IoError("png_create_read_struct failed");
    r.info = png_create_info_struct(r.png);
    if (!r.info) throw IoError("png_create_info_struct failed");
    if (setjmp(png_jmpbuf(r.png)))
        throw FormatError("corrupt PNG: " + path.string());

    png_init_io(r.png, file.get());
    png_set_sig_bytes(r.png, 8);
    png_read_info(r.png, r.info);

    png_set_palette_to_rgb(r.png);
    png_set_expand_gray_1_2_4_to_8(r.png);
    if (png_get_valid(r.png, r.info, PNG_INFO_tRNS))
        png_set_tRNS_to_alpha(r.png);
    png_set_strip_16(r.png);
    png_set_strip_alpha(r.png);
    png_set_gray_to_rgb(r.png);
    png_read_update_info(r.png, r.info);

    const int width = static_cast<int>(png_get_image_width(r.png, r.info));
    const int height = static_cast<int>(png_get_image_height(r.png, r.info));
    if (png_get_channels(r.png, r.info) != 3)
        throw FormatError("unsupported PNG layout: " + path.string());

    ImageRGB8 image(width, height);
    std::vector<png_bytep> rows(static_cast<std::size_t>(height));
    for (int y = 0; y < height; ++y) rows[static_cast<std::size_t>(y)] = image.px(0, y);
    png_read_image(r.png, rows.data());
    return image;
}

} // namespace

void write_png(const std::filesystem::path& path, const ImageRGB8& image) {
    write_png_impl(path, image.width, image.height, PNG_COLOR_TYPE_RGB, 3,
                   image.data.data());
}

void write_png(const std::filesystem::path& path, const ImageGray8& image) {
    write_png_impl(path, image.width, image.height, PNG_COLOR_TYPE_GRAY, 1,
                   image.data.data());
}

ImageRGB8 read_png_rgb(const std::filesystem::path& path) {
    return read_png_rgb8(path);
}

ImageGray8 read_png_gray(const std::filesystem::path& path) {
    const ImageRGB8 rgb = read_png_rgb8(path);
    ImageGray8 gray(rgb.width, rgb.height);
    for (int y = 0; y < rgb.height; ++y) {
        for (int x = 0; x < rgb.width; ++x) {
            const std::uint8_t* p = rgb.px(x, y);
            // BT.601 integer luma; exact passthrough for gray sources.
            gray.at(x, y) = static_cast<std::uint8_t>(
                (299 * p[0] + 587 * p[1] + 114 * p[2] + 500) / 1000);
        }
    }
    return gray;
}

} // namespace olive

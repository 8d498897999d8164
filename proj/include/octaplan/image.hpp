// Minimal raster image output: PPM and uncompressed-deflate PNG.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace octa {

struct Image {
    int width = 0, height = 0;
    std::vector<std::uint8_t> rgb; // 3 bytes per pixel, row-major

    void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
        std::size_t i = 3 * (static_cast<std::size_t>(y) * width + x);
        rgb[i] = r;
        rgb[i + 1] = g;
        rgb[i + 2] = b;
    }
};

Image make_image(int width, int height);

// Symmetric diverging color map on [-1, 1]: blue - white - red; 0 -> white.
void diverging_color(double t, std::uint8_t& r, std::uint8_t& g, std::uint8_t& b);

void write_ppm(const Image& img, const std::string& path);
void write_png(const Image& img, const std::string& path);
// dispatch on extension (.png / .ppm)
void write_image(const Image& img, const std::string& path);

} // namespace octa

#include "octaplan/image.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace octa {

namespace {

std::uint32_t crc32(const std::uint8_t* data, std::size_t len, std::uint32_t crc = 0xffffffffu) {
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xedb88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    for (std::size_t i = 0; i < len; ++i) crc = table[(crc ^ data[i]) & 0xff] ^ (crc >> 8);
    return crc;
}

void put_u32(std::vector<std::uint8_t>& v, std::uint32_t x) {
    v.push_back(static_cast<std::uint8_t>(x >> 24));
    v.push_back(static_cast<std::uint8_t>(x >> 16));
    v.push_back(static_cast<std::uint8_t>(x >> 8));
    v.push_back(static_cast<std::uint8_t>(x));
}

void chunk(std::vector<std::uint8_t>& out, const char* type,
           const std::vector<std::uint8_t>& data) {
    put_u32(out, static_cast<std::uint32_t>(data.size()));
    std::vector<std::uint8_t> body(type, type + 4);
    body.insert(body.end(), data.begin(), data.end());
    out.insert(out.end(), body.begin(), body.end());
    put_u32(out, crc32(body.data(), body.size()) ^ 0xffffffffu);
}

} // namespace

Image make_image(int width, int height) {
    Image img;
    img.width = width;
    img.height = height;
    img.rgb.assign(static_cast<std::size_t>(width) * height * 3, 255);
    return img;
}

void diverging_color(double t, std::uint8_t& r, std::uint8_t& g, std::uint8_t& b) {
    t = std::clamp(t, -1.0, 1.0);
    auto mix = [](double a, double bb, double s) {
        return static_cast<std::uint8_t>(std::lround(a + (bb - a) * s));
    };
    // exact swap symmetry: color(-t) is color(t) with red and blue exchanged
    if (t >= 0.0) { // white -> red
        r = mix(255, 190, t);
        g = mix(255, 40, t);
        b = mix(255, 60, t);
    } else { // white -> blue
        r = mix(255, 60, -t);
        g = mix(255, 40, -t);
        b = mix(255, 190, -t);
    }
}

void write_ppm(const Image& img, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_ppm: cannot open " + path);
    f << "P6\n" << img.width << " " << img.height << "\n255\n";
    f.write(reinterpret_cast<const char*>(img.rgb.data()),
            static_cast<std::streamsize>(img.rgb.size()));
    if (!f) throw std::runtime_error("write_ppm: write failed for " + path);
}

void write_png(const Image& img, const std::string& path) {
    // filter byte 0 per scanline
    std::vector<std::uint8_t> raw;
    raw.reserve(static_cast<std::size_t>(img.height) * (img.width * 3 + 1));
    for (int y = 0; y < img.height; ++y) {
        raw.push_back(0);
        const std::uint8_t* row = img.rgb.data() + static_cast<std::size_t>(y) * img.width * 3;
        raw.insert(raw.end(), row, row + img.width * 3);
    }
    // zlib stream with stored (uncompressed) deflate blocks
    std::vector<std::uint8_t> z{0x78, 0x01};
    std::size_t pos = 0;
    while (pos < raw.size()) {
        std::size_t n = std::min<std::size_t>(65535, raw.size() - pos);
        z.push_back(pos + n == raw.size() ? 1 : 0);
        z.push_back(static_cast<std::uint8_t>(n & 0xff));
        z.push_back(static_cast<std::uint8_t>(n >> 8));
        z.push_back(static_cast<std::uint8_t>(~n & 0xff));
        z.push_back(static_cast<std::uint8_t>((~n >> 8) & 0xff));
        z.insert(z.end(), raw.begin() + pos, raw.begin() + pos + n);
        pos += n;
    }
    std::uint32_t s1 = 1, s2 = 0;
    for (std::uint8_t byte : raw) {
        s1 = (s1 + byte) % 65521;
        s2 = (s2 + s1) % 65521;
    }
    put_u32(z, (s2 << 16) | s1);

    std::vector<std::uint8_t> out{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    std::vector<std::uint8_t> ihdr;
    put_u32(ihdr, static_cast<std::uint32_t>(img.width));
    put_u32(ihdr, static_cast<std::uint32_t>(img.height));
    ihdr.push_back(8); // bit depth
    ihdr.push_back(2); // color type RGB
    ihdr.push_back(0);
    ihdr.push_back(0);
    ihdr.push_back(0);
    chunk(out, "IHDR", ihdr);
    chunk(out, "IDAT", z);
    chunk(out, "IEND", {});

    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_png: cannot open " + path);
    f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!f) throw std::runtime_error("write_png: write failed for " + path);
}

void write_image(const Image& img, const std::string& path) {
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".ppm") == 0)
        write_ppm(img, path);
    else
        write_png(img, path);
}

} // namespace octa

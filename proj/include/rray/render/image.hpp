#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rray::render {

struct Rgb8 {
    std::uint8_t r = 0, g = 0, b = 0;

    bool operator==(const Rgb8&) const = default;
};

struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data; // row-major RGB8, 3 * width * height bytes

    Image() = default;
    Image(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(3) * w * h) {}

    void set(int px, int py, Rgb8 c) {
        const std::size_t i = 3 * (static_cast<std::size_t>(py) * width + px);
        data[i] = c.r;
        data[i + 1] = c.g;
        data[i + 2] = c.b;
    }

    Rgb8 get(int px, int py) const {
        const std::size_t i = 3 * (static_cast<std::size_t>(py) * width + px);
        return {data[i], data[i + 1], data[i + 2]};
    }

    bool operator==(const Image&) const = default;
};

// Binary PPM (P6, maxval 255). These bytes are the determinism contract.
std::vector<std::uint8_t> ppm_bytes(const Image& img);

void write_ppm(const Image& img, const std::string& path);

Image read_ppm(const std::string& path);

} // namespace rray::render

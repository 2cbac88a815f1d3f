#include "rray/render/image.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "rray/core/error.hpp"

namespace rray::render {

std::vector<std::uint8_t> ppm_bytes(const Image& img) {
    std::ostringstream head;
    head << "P6\n" << img.width << " " << img.height << "\n255\n";
    const std::string h = head.str();
    std::vector<std::uint8_t> out;
    out.reserve(h.size() + img.data.size());
    out.insert(out.end(), h.begin(), h.end());
    out.insert(out.end(), img.data.begin(), img.data.end());
    return out;
}

void write_ppm(const Image& img, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    const auto bytes = ppm_bytes(img);
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoError("short write to '" + path + "'");
}

Image read_ppm(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for reading");
    std::string magic;
    int w = 0, h = 0, maxval = 0;
    f >> magic >> w >> h >> maxval;
    if (magic != "P6" || maxval != 255 || w <= 0 || h <= 0)
        throw IoError("'" + path + "' is not an 8-bit P6 PPM");
    f.get(); // single whitespace byte after the header
    Image img(w, h);
    f.read(reinterpret_cast<char*>(img.data.data()),
           static_cast<std::streamsize>(img.data.size()));
    if (f.gcount() != static_cast<std::streamsize>(img.data.size()))
        throw IoError("'" + path + "' truncated");
    return img;
}

} // namespace rray::render

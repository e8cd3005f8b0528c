#include "stegim/image.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace stegim {

RasterImage::RasterImage(int w, int h, int ch, std::uint8_t fill)
    : width(w), height(h), channels(ch),
      samples(static_cast<std::size_t>(w) * h * ch, fill) {
    if (w < 1 || h < 1 || (ch != 1 && ch != 3))
        throw std::invalid_argument("image dimensions must be >=1 and channels 1 or 3");
}

TamperMap TamperMap::pixel_map(int w, int h) {
    TamperMap m;
    m.img_w = w;
    m.img_h = h;
    m.cell = 1;
    m.grid_w = w;
    m.grid_h = h;
    m.flags.assign(static_cast<std::size_t>(w) * h, 0);
    return m;
}

TamperMap TamperMap::block_map(int w, int h, int cell) {
    TamperMap m;
    m.img_w = w;
    m.img_h = h;
    m.cell = cell;
    m.grid_w = w / cell;
    m.grid_h = h / cell;
    m.flags.assign(static_cast<std::size_t>(m.grid_w) * m.grid_h, 0);
    return m;
}

std::size_t TamperMap::count() const {
    std::size_t n = 0;
    for (auto f : flags) n += f != 0;
    return n;
}

TamperMap TamperMap::coarsen(int block) const {
    if (cell != 1)
        throw std::invalid_argument("coarsen expects a pixel-granularity map");
    TamperMap out = block_map(img_w, img_h, block);
    for (int y = 0; y < grid_h; ++y) {
        for (int x = 0; x < grid_w; ++x) {
            if (!get(x, y)) continue;
            int bx = x / block, by = y / block;
            if (bx < out.grid_w && by < out.grid_h) out.set(bx, by);
        }
    }
    return out;
}

RasterImage TamperMap::to_image() const {
    RasterImage img(img_w, img_h, 1, 0);
    for (int cy = 0; cy < grid_h; ++cy)
        for (int cx = 0; cx < grid_w; ++cx) {
            if (!get(cx, cy)) continue;
            for (int y = cy * cell; y < (cy + 1) * cell; ++y)
                for (int x = cx * cell; x < (cx + 1) * cell; ++x)
                    img.at(x, y) = 255;
        }
    return img;
}

HsvPixel rgb_to_hsv(Rgb px) {
    int r = px.r, g = px.g, b = px.b;
    int v = std::max({r, g, b});
    int lo = std::min({r, g, b});
    int delta = v - lo;
    HsvPixel out;
    out.v = v;
    if (delta == 0) return out; // grayscale: h = s = 0
    out.s = static_cast<double>(delta) / v;
    double hp; // position on the hue hexagon, in [0,6)
    if (r == v) {
        hp = static_cast<double>(g - b) / delta;
        if (hp < 0) hp += 6.0;
    } else if (g == v) {
        hp = static_cast<double>(b - r) / delta + 2.0;
    } else {
        hp = static_cast<double>(r - g) / delta + 4.0;
    }
    if (hp >= 6.0) hp -= 6.0;
    out.h = 60.0 * hp;
    return out;
}

Rgb hsv_to_rgb(const HsvPixel& px) {
    int v = px.v;
    int delta = static_cast<int>(std::llround(px.s * v));
    if (delta == 0)
        return {static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v),
                static_cast<std::uint8_t>(v)};
    double hp = px.h / 60.0;
    if (hp < 0) hp = 0;
    if (hp >= 6.0) hp -= 6.0;
    int sector = static_cast<int>(hp);
    if (sector > 5) sector = 5;
    // t recovers the integer offset of the middle channel inside the sector
    int t = static_cast<int>(std::llround((hp - sector) * delta));
    int lo = v - delta;
    int a = lo + t;         // ascending middle value
    int d = v - t;          // descending middle value
    int r, g, b;
    switch (sector) {
        case 0:  r = v; g = a; b = lo; break;
        case 1:  r = d; g = v; b = lo; break;
        case 2:  r = lo; g = v; b = a; break;
        case 3:  r = lo; g = d; b = v; break;
        case 4:  r = a; g = lo; b = v; break;
        default: r = v; g = lo; b = d; break;
    }
    return {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
            static_cast<std::uint8_t>(b)};
}

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
// pos tracks the byte offset for error reporting.
std::string next_token(const std::vector<std::uint8_t>& d, std::size_t& pos) {
    while (pos < d.size()) {
        if (std::isspace(d[pos])) {
            ++pos;
        } else if (d[pos] == '#') {
            while (pos < d.size() && d[pos] != '\n') ++pos;
        } else {
            break;
        }
    }
    std::size_t start = pos;
    while (pos < d.size() && !std::isspace(d[pos]) && d[pos] != '#') ++pos;
    if (start == pos)
        throw ImageFormatError("unexpected end of header", start);
    return std::string(d.begin() + start, d.begin() + pos);
}

int parse_header_int(const std::vector<std::uint8_t>& d, std::size_t& pos,
                     const char* what) {
    std::size_t at = pos;
    std::string tok = next_token(d, pos);
    try {
        std::size_t used = 0;
        long v = std::stol(tok, &used);
        if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw ImageFormatError(std::string("malformed ") + what + " field '" + tok + "'", at);
    }
}

} // namespace

RasterImage decode_netpbm(const std::vector<std::uint8_t>& data) {
    std::size_t pos = 0;
    if (data.size() < 2)
        throw ImageFormatError("file too short for a PGM/PPM magic", 0);
    std::string magic = next_token(data, pos);
    int channels;
    if (magic == "P5")
        channels = 1;
    else if (magic == "P6")
        channels = 3;
    else
        throw ImageFormatError("unsupported magic '" + magic + "', want P5 or P6", 0);

    int w = parse_header_int(data, pos, "width");
    int h = parse_header_int(data, pos, "height");
    std::size_t maxval_at = pos;
    int maxval = parse_header_int(data, pos, "maxval");
    if (w < 1 || h < 1)
        throw ImageFormatError("image dimensions must be at least 1x1", maxval_at);
    if (maxval != 255)
        throw ImageFormatError("maxval " + std::to_string(maxval) + " unsupported, want 255",
                               maxval_at);
    if (pos >= data.size() || !std::isspace(data[pos]))
        throw ImageFormatError("missing whitespace after maxval", pos);
    ++pos; // exactly one whitespace byte separates header and samples

    RasterImage img;
    img.width = w;
    img.height = h;
    img.channels = channels;
    std::size_t need = img.sample_count();
    if (data.size() - pos < need)
        throw ImageFormatError("truncated sample data: have " +
                                   std::to_string(data.size() - pos) + " of " +
                                   std::to_string(need) + " bytes",
                               data.size());
    img.samples.assign(data.begin() + pos, data.begin() + pos + need);
    return img;
}

std::vector<std::uint8_t> encode_netpbm(const RasterImage& img) {
    if (img.width < 1 || img.height < 1 ||
        (img.channels != 1 && img.channels != 3) ||
        img.samples.size() != img.sample_count())
        throw std::invalid_argument("invalid RasterImage");
    std::string header = (img.channels == 1 ? "P5\n" : "P6\n") +
                         std::to_string(img.width) + " " +
                         std::to_string(img.height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.samples.begin(), img.samples.end());
    return out;
}

RasterImage load_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    try {
        return decode_netpbm(data);
    } catch (ImageFormatError& e) {
        throw ImageFormatError(ImageFormatError::Verbatim{}, path + ": " + e.what(),
                               e.offset);
    }
}

void save_image(const RasterImage& img, const std::string& path) {
    auto data = encode_netpbm(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out) throw IoError("write failed for '" + path + "'");
}

} // namespace stegim

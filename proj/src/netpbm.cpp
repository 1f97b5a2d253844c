#include "monospec/netpbm.hpp"

#include <fstream>
#include <limits>

namespace monospec {
namespace {

// Netpbm headers allow '#' comments between tokens and any ASCII whitespace
// as separators; a single whitespace byte terminates the maxval before the
// raster.
int next_header_token(std::istream& in, const std::string& path) {
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (!std::isspace(c)) {
            break;
        }
        c = in.get();
    }
    if (c == EOF) throw IoError(path + ": truncated netpbm header");
    long value = 0;
    bool any = false;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        if (value > std::numeric_limits<int>::max()) throw IoError(path + ": header value overflow");
        any = true;
        c = in.get();
    }
    if (!any) throw IoError(path + ": malformed netpbm header");
    if (c != EOF) in.unget();
    return static_cast<int>(value);
}

void read_header(std::istream& in, const std::string& path, const char* magic, int& w, int& h) {
    char m0 = static_cast<char>(in.get());
    char m1 = static_cast<char>(in.get());
    if (m0 != magic[0] || m1 != magic[1])
        throw IoError(path + ": expected " + magic + " netpbm magic");
    w = next_header_token(in, path);
    h = next_header_token(in, path);
    int maxval = next_header_token(in, path);
    if (maxval != 255) throw IoError(path + ": only maxval 255 is supported");
    int sep = in.get();
    if (sep == EOF || !std::isspace(sep)) throw IoError(path + ": missing raster separator");
    if (w <= 0 || h <= 0) throw IoError(path + ": non-positive dimensions");
}

}  // namespace

GrayPlane read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    int w = 0, h = 0;
    read_header(in, path, "P5", w, h);
    GrayPlane img(w, h);
    in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.size()))
        throw IoError(path + ": truncated PGM raster");
    return img;
}

void write_pgm(const GrayPlane& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.size()));
    if (!out) throw IoError("write failed: " + path);
}

ColorImage read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    int w = 0, h = 0;
    read_header(in, path, "P6", w, h);
    ColorImage img(w, h);
    std::vector<std::uint8_t> row(static_cast<std::size_t>(w) * 3);
    for (int r = 0; r < h; ++r) {
        in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size()));
        if (in.gcount() != static_cast<std::streamsize>(row.size()))
            throw IoError(path + ": truncated PPM raster");
        for (int c = 0; c < w; ++c) {
            img.r.at(r, c) = row[3 * c + 0];
            img.g.at(r, c) = row[3 * c + 1];
            img.b.at(r, c) = row[3 * c + 2];
        }
    }
    return img;
}

void write_ppm(const ColorImage& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    const int w = img.width(), h = img.height();
    out << "P6\n" << w << " " << h << "\n255\n";
    std::vector<std::uint8_t> row(static_cast<std::size_t>(w) * 3);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            row[3 * c + 0] = img.r.at(r, c);
            row[3 * c + 1] = img.g.at(r, c);
            row[3 * c + 2] = img.b.at(r, c);
        }
        out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace monospec

#include "fbfpen/pgm.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fbfpen {

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
            continue;
        }
        if (!std::isspace(c)) {
            tok.push_back(static_cast<char>(c));
            while ((c = in.peek()) != EOF && !std::isspace(c)) {
                tok.push_back(static_cast<char>(in.get()));
            }
            return tok;
        }
    }
    throw std::runtime_error("pgm: truncated header");
}

std::size_t parse_size(const std::string& tok, const char* what) {
    try {
        const long long v = std::stoll(tok);
        if (v <= 0) throw std::runtime_error("");
        return static_cast<std::size_t>(v);
    } catch (...) {
        throw std::runtime_error(std::string("pgm: bad ") + what + " '" + tok + "'");
    }
}

} // namespace

Image read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("pgm: cannot open '" + path + "'");

    const std::string magic = next_token(in);
    if (magic == "P3" || magic == "P6")
        throw std::runtime_error("pgm: '" + path + "' is a color image; grayscale only");
    if (magic != "P2" && magic != "P5")
        throw std::runtime_error("pgm: '" + path + "' is not a P2/P5 PGM");

    const std::size_t cols = parse_size(next_token(in), "width");
    const std::size_t rows = parse_size(next_token(in), "height");
    const std::size_t maxval = parse_size(next_token(in), "maxval");
    if (maxval != 255) throw std::runtime_error("pgm: only maxval 255 is supported");

    Image img;
    img.rows = rows;
    img.cols = cols;
    img.pix.resize(rows * cols);

    if (magic == "P5") {
        in.get();  // single whitespace after maxval
        std::vector<unsigned char> raw(rows * cols);
        in.read(reinterpret_cast<char*>(raw.data()),
                static_cast<std::streamsize>(raw.size()));
        if (static_cast<std::size_t>(in.gcount()) != raw.size())
            throw std::runtime_error("pgm: truncated pixel data in '" + path + "'");
        for (std::size_t i = 0; i < raw.size(); ++i) img.pix[i] = raw[i] / 255.0;
    } else {
        for (std::size_t i = 0; i < img.pix.size(); ++i) {
            const std::size_t v = parse_size(next_token(in), "pixel");
            if (v > 255) throw std::runtime_error("pgm: pixel value out of range");
            img.pix[i] = static_cast<double>(v) / 255.0;
        }
    }
    return img;
}

namespace {
unsigned char quantize(double v) {
    const double c = std::min(1.0, std::max(0.0, v));
    return static_cast<unsigned char>(std::lround(c * 255.0));
}
} // namespace

void write_pgm(const std::string& path, const Image& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("pgm: cannot write '" + path + "'");
    out << "P5\n" << img.cols << " " << img.rows << "\n255\n";
    std::vector<unsigned char> raw(img.size());
    for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = quantize(img.pix[i]);
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size()));
}

void write_pgm_ascii(const std::string& path, const Image& img) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("pgm: cannot write '" + path + "'");
    out << "P2\n" << img.cols << " " << img.rows << "\n255\n";
    for (std::size_t i = 0; i < img.rows; ++i) {
        for (std::size_t j = 0; j < img.cols; ++j) {
            out << static_cast<int>(quantize(img.pix[i * img.cols + j]));
            out << (j + 1 == img.cols ? '\n' : ' ');
        }
    }
}

Mask read_mask_pgm(const std::string& path) {
    const Image img = read_pgm(path);
    Mask m;
    m.rows = img.rows;
    m.cols = img.cols;
    m.observed.resize(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) m.observed[i] = img.pix[i] > 0.5;
    return m;
}

void write_mask_pgm(const std::string& path, const Mask& mask) {
    Image img;
    img.rows = mask.rows;
    img.cols = mask.cols;
    img.pix.resize(mask.size());
    for (std::size_t i = 0; i < mask.size(); ++i)
        img.pix[i] = mask.observed[i] ? 1.0 : 0.0;
    write_pgm(path, img);
}

} // namespace fbfpen

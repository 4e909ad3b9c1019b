#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "dsmg/deconvolution.hpp"
#include "dsmg/errors.hpp"

namespace dsmg {

namespace {

class PgmParser {
public:
    PgmParser(std::string bytes, std::string name) : bytes_(std::move(bytes)), name_(std::move(name)) {}

    GrayImage parse() {
        if (bytes_.size() < 2 || bytes_[0] != 'P' || (bytes_[1] != '2' && bytes_[1] != '5'))
            fail(0, "expected magic P2 or P5");
        const bool binary = bytes_[1] == '5';
        pos_ = 2;
        const long width = integer("width");
        const long height = integer("height");
        const long maxval = integer("maxval");
        if (width < 1 || height < 1) fail(pos_, "width and height must be positive");
        if (maxval < 1 || maxval > 255) fail(pos_, "maxval must lie in [1, 255]");

        GrayImage img(static_cast<int>(width), static_cast<int>(height));
        const double scale = 1.0 / static_cast<double>(maxval);
        if (binary) {
            // exactly one whitespace byte separates the header from the raster
            if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_])))
                fail(pos_, "expected whitespace after maxval");
            ++pos_;
            if (bytes_.size() - pos_ < img.size()) fail(bytes_.size(), "raster is truncated");
            for (std::size_t i = 0; i < img.size(); ++i) {
                const auto v = static_cast<unsigned char>(bytes_[pos_ + i]);
                if (v > maxval) fail(pos_ + i, "sample exceeds maxval");
                img.pixels[i] = v * scale;
            }
        } else {
            for (std::size_t i = 0; i < img.size(); ++i) {
                skip_space_and_comments();
                const std::size_t at = pos_;
                const long v = integer("sample");
                if (v > maxval) fail(at, "sample exceeds maxval");
                img.pixels[i] = static_cast<double>(v) * scale;
            }
        }
        return img;
    }

private:
    [[noreturn]] void fail(std::size_t offset, const std::string& what) const {
        std::ostringstream os;
        os << name_ << ": " << what << " at byte " << offset;
        raise(ErrorKind::MalformedFile, os.str());
    }

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const auto c = static_cast<unsigned char>(bytes_[pos_]);
            if (std::isspace(c)) {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    long integer(const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1'000'000'000L) fail(start, std::string(what) + " is too large");
            ++pos_;
        }
        if (pos_ == start) fail(start, std::string("expected ") + what);
        return value;
    }

    std::string bytes_;
    std::string name_;
    std::size_t pos_ = 0;
};

}  // namespace

GrayImage read_pgm(std::istream& in, const std::string& name) {
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return PgmParser(std::move(bytes), name).parse();
}

GrayImage read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::MalformedFile, path + ": cannot open file");
    return read_pgm(in, path);
}

void write_pgm(const GrayImage& image, std::ostream& out, PgmFormat format) {
    if (image.width < 1 || image.height < 1 || image.size() != static_cast<std::size_t>(image.width) * image.height)
        raise(ErrorKind::DimensionMismatch, "image dimensions do not match its pixel count");
    auto quantize = [](double v) {
        return static_cast<int>(std::lround(std::clamp(std::isfinite(v) ? v : 0.0, 0.0, 1.0) * 255.0));
    };
    out << (format == PgmFormat::Binary ? "P5" : "P2") << '\n' << image.width << ' ' << image.height << "\n255\n";
    if (format == PgmFormat::Binary) {
        for (double v : image.pixels) out.put(static_cast<char>(quantize(v)));
    } else {
        for (int y = 0; y < image.height; ++y) {
            for (int x = 0; x < image.width; ++x) out << (x ? " " : "") << quantize(image.at(x, y));
            out << '\n';
        }
    }
}

void write_pgm(const GrayImage& image, const std::string& path, PgmFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorKind::MalformedFile, path + ": cannot open file for writing");
    write_pgm(image, out, format);
    if (!out) raise(ErrorKind::MalformedFile, path + ": write failed");
}

}  // namespace dsmg

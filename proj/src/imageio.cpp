#include "vosedge/imageio.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "vosedge/error.hpp"

namespace vosedge {

namespace fs = std::filesystem;

namespace {

std::string lower_extension(const fs::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext;
}

std::optional<ImageFormat> format_from_extension(const fs::path& path) {
    const std::string ext = lower_extension(path);
    if (ext == ".png") return ImageFormat::Png;
    if (ext == ".ppm" || ext == ".pgm" || ext == ".pnm") return ImageFormat::Pnm;
    return std::nullopt;
}

std::optional<ImageFormat> format_from_magic(const std::string& bytes) {
    static constexpr unsigned char kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (bytes.size() >= 8 && std::equal(std::begin(kPngMagic), std::end(kPngMagic), bytes.begin(),
                                        [](unsigned char a, char b) { return a == static_cast<unsigned char>(b); })) {
        return ImageFormat::Png;
    }
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] >= '1' && bytes[1] <= '7') return ImageFormat::Pnm;
    return std::nullopt;
}

std::string read_file(const fs::path& path) {
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) {
        throw ImageIoError(IoErrorKind::MissingFile, path.string(), "");
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ImageIoError(IoErrorKind::MissingFile, path.string(), "cannot open");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ImageIoError(IoErrorKind::WriteFailed, path.string(), "cannot open for writing");
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
        throw ImageIoError(IoErrorKind::WriteFailed, path.string(), "short write");
    }
}

std::uint8_t to_byte(double c) {
    return static_cast<std::uint8_t>(std::clamp(std::floor(c + 0.5), 0.0, 255.0));
}

// ---------------------------------------------------------------- PNM

class PnmReader {
public:
    PnmReader(const std::string& bytes, const fs::path& path) : bytes_(bytes), path_(path.string()) {}

    RgbImage read() {
        if (bytes_.size() < 2 || bytes_[0] != 'P') header_error("missing magic number");
        const char kind = bytes_[1];
        pos_ = 2;
        if (kind != '2' && kind != '3' && kind != '5' && kind != '6') {
            throw ImageIoError(IoErrorKind::UnsupportedFormat, path_, std::string("PNM type P") + kind);
        }
        const bool ascii = kind == '2' || kind == '3';
        const std::size_t channels = (kind == '3' || kind == '6') ? 3 : 1;

        const std::size_t width = header_number("width");
        const std::size_t height = header_number("height");
        const std::size_t maxval = header_number("maxval");
        if (width == 0 || height == 0) header_error("zero image dimension");
        if (maxval != 255) {
            throw ImageIoError(IoErrorKind::UnsupportedFormat, path_, "maxval " + std::to_string(maxval));
        }
        if (pos_ >= bytes_.size()) {
            throw ImageIoError(IoErrorKind::TruncatedData, path_, "no pixel data");
        }
        if (!std::isspace(static_cast<unsigned char>(bytes_[pos_]))) header_error("expected whitespace after maxval");
        ++pos_;

        RgbImage img(width, height);
        auto px = img.data();
        const std::size_t samples = width * height * channels;
        std::vector<std::uint8_t> raw(samples);
        if (ascii) {
            for (std::size_t i = 0; i < samples; ++i) raw[i] = ascii_sample();
        } else {
            if (bytes_.size() - std::min(pos_, bytes_.size()) < samples) {
                throw ImageIoError(IoErrorKind::TruncatedData, path_,
                                   "expected " + std::to_string(samples) + " bytes of pixel data");
            }
            std::copy_n(bytes_.begin() + static_cast<std::ptrdiff_t>(pos_), samples, raw.begin());
        }
        for (std::size_t i = 0; i < px.size(); ++i) {
            if (channels == 3) {
                px[i] = {double(raw[3 * i]), double(raw[3 * i + 1]), double(raw[3 * i + 2])};
            } else {
                const double v = raw[i];
                px[i] = {v, v, v};
            }
        }
        return img;
    }

private:
    [[noreturn]] void header_error(const std::string& why) const {
        throw ImageIoError(IoErrorKind::MalformedHeader, path_, why);
    }

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::optional<std::size_t> number() {
        skip_space_and_comments();
        std::size_t value = 0;
        std::size_t digits = 0;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            value = value * 10 + static_cast<std::size_t>(bytes_[pos_] - '0');
            if (value > (std::size_t{1} << 31)) return std::nullopt;
            ++pos_;
            ++digits;
        }
        if (digits == 0) return std::nullopt;
        return value;
    }

    std::size_t header_number(const char* what) {
        auto v = number();
        if (!v) header_error(std::string("bad or missing ") + what);
        return *v;
    }

    std::uint8_t ascii_sample() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size()) {
            throw ImageIoError(IoErrorKind::TruncatedData, path_, "not enough samples");
        }
        const auto v = number();
        if (!v || *v > 255) {
            throw ImageIoError(IoErrorKind::MalformedData, path_, "bad sample value");
        }
        return static_cast<std::uint8_t>(*v);
    }

    const std::string& bytes_;
    std::string path_;
    std::size_t pos_ = 0;
};

std::string pnm_header(char kind, std::size_t w, std::size_t h, unsigned maxval) {
    return std::string("P") + kind + "\n" + std::to_string(w) + " " + std::to_string(h) + "\n" +
           std::to_string(maxval) + "\n";
}

// ---------------------------------------------------------------- PNG

RgbImage decode_png(const std::string& bytes, const fs::path& path) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
        throw ImageIoError(IoErrorKind::MalformedHeader, path.string(), image.message);
    }
    if (image.format & PNG_FORMAT_FLAG_LINEAR) {
        png_image_free(&image);
        throw ImageIoError(IoErrorKind::UnsupportedFormat, path.string(), "16-bit PNG");
    }
    image.format = PNG_FORMAT_RGBA;
    std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        throw ImageIoError(IoErrorKind::TruncatedData, path.string(), image.message);
    }
    RgbImage img(image.width, image.height);
    auto px = img.data();
    for (std::size_t i = 0; i < px.size(); ++i) {
        px[i] = {double(buffer[4 * i]), double(buffer[4 * i + 1]), double(buffer[4 * i + 2])};
    }
    return img;
}

void encode_png(const fs::path& path, std::size_t w, std::size_t h, png_uint_32 format, const void* buffer) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(w);
    image.height = static_cast<png_uint_32>(h);
    image.format = format;
    if (!png_image_write_to_file(&image, path.string().c_str(), 0, buffer, 0, nullptr)) {
        throw ImageIoError(IoErrorKind::WriteFailed, path.string(), image.message);
    }
}

bool is_pnm_path(const fs::path& path) {
    const auto fmt = format_from_extension(path);
    return fmt && *fmt == ImageFormat::Pnm;
}

void require_known_extension(const fs::path& path) {
    if (!format_from_extension(path)) {
        throw ImageIoError(IoErrorKind::UnsupportedFormat, path.string(),
                           "unknown extension '" + path.extension().string() + "'");
    }
}

}  // namespace

RgbImage load_image(const fs::path& path) {
    const std::string bytes = read_file(path);
    const auto magic = format_from_magic(bytes);
    if (!magic) {
        throw ImageIoError(IoErrorKind::UnsupportedFormat, path.string(), "unrecognised file signature");
    }
    const auto ext = format_from_extension(path);
    if (ext && *ext != *magic) {
        throw ImageIoError(IoErrorKind::FormatMismatch, path.string(), "");
    }
    if (*magic == ImageFormat::Png) return decode_png(bytes, path);
    return PnmReader(bytes, path).read();
}

void save_image(const RgbImage& img, const fs::path& path) {
    require_known_extension(path);
    const auto px = img.data();
    std::string rgb(px.size() * 3, '\0');
    for (std::size_t i = 0; i < px.size(); ++i) {
        rgb[3 * i] = static_cast<char>(to_byte(px[i].r));
        rgb[3 * i + 1] = static_cast<char>(to_byte(px[i].g));
        rgb[3 * i + 2] = static_cast<char>(to_byte(px[i].b));
    }
    if (is_pnm_path(path)) {
        write_file(path, pnm_header('6', img.width(), img.height(), 255) + rgb);
    } else {
        encode_png(path, img.width(), img.height(), PNG_FORMAT_RGB, rgb.data());
    }
}

void save_edge_map(const EdgeMap& em, const fs::path& path) {
    require_known_extension(path);
    std::string gray(em.size(), '\0');
    const auto src = em.data();
    for (std::size_t i = 0; i < src.size(); ++i) gray[i] = src[i] ? static_cast<char>(255) : '\0';
    if (is_pnm_path(path)) {
        write_file(path, pnm_header('5', em.width(), em.height(), 255) + gray);
    } else {
        encode_png(path, em.width(), em.height(), PNG_FORMAT_GRAY, gray.data());
    }
}

EdgeMap load_edge_map(const fs::path& path) {
    const RgbImage img = load_image(path);
    EdgeMap em(img.width(), img.height(), 0);
    const auto src = img.data();
    auto dst = em.data();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i].r > 127.0 ? 1 : 0;
    return em;
}

std::uint16_t quantize_response(double response) noexcept {
    const double scaled = std::floor(response / kMaxDistance * 65535.0 + 0.5);
    return static_cast<std::uint16_t>(std::clamp(scaled, 0.0, 65535.0));
}

void save_response_map(const ResponseMap& rm, const fs::path& path) {
    const auto src = rm.response.data();
    if (lower_extension(path) == ".csv") {
        std::string text;
        char buf[32];
        for (std::size_t y = 0; y < rm.height(); ++y) {
            for (std::size_t x = 0; x < rm.width(); ++x) {
                if (x) text += ',';
                // Shortest representation that reads back to the same double.
                const auto res = std::to_chars(buf, buf + sizeof buf, rm.response.at(x, y));
                text.append(buf, res.ptr);
            }
            text += '\n';
        }
        write_file(path, text);
        return;
    }
    require_known_extension(path);
    if (is_pnm_path(path)) {
        std::string data(src.size() * 2, '\0');
        for (std::size_t i = 0; i < src.size(); ++i) {
            const std::uint16_t v = quantize_response(src[i]);
            data[2 * i] = static_cast<char>(v >> 8);
            data[2 * i + 1] = static_cast<char>(v & 0xff);
        }
        write_file(path, pnm_header('5', rm.width(), rm.height(), 65535) + data);
        return;
    }
    std::vector<png_uint_16> data(src.size());
    std::transform(src.begin(), src.end(), data.begin(), quantize_response);
    encode_png(path, rm.width(), rm.height(), PNG_FORMAT_LINEAR_Y, data.data());
}

}  // namespace vosedge

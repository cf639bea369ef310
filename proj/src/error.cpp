#include "vosedge/error.hpp"

#include "vosedge/image.hpp"

namespace vosedge {

const char* to_string(IoErrorKind kind) noexcept {
    switch (kind) {
        case IoErrorKind::MissingFile: return "missing file";
        case IoErrorKind::UnsupportedFormat: return "unsupported format";
        case IoErrorKind::MalformedHeader: return "malformed header";
        case IoErrorKind::TruncatedData: return "truncated pixel data";
        case IoErrorKind::MalformedData: return "malformed pixel data";
        case IoErrorKind::FormatMismatch: return "extension does not match file contents";
        case IoErrorKind::WriteFailed: return "write failed";
    }
    return "i/o error";
}

ImageIoError::ImageIoError(IoErrorKind kind, std::string path, const std::string& detail)
    : std::runtime_error(path + ": " + to_string(kind) + (detail.empty() ? "" : " (" + detail + ")")),
      kind_(kind),
      path_(std::move(path)) {}

void validate_image(const RgbImage& img) {
    if (img.empty()) {
        throw InvalidArgument("image is empty");
    }
    for (const auto& p : img.data()) {
        if (!p.is_valid()) {
            throw InvalidArgument("image pixel outside [0, 255] or not finite");
        }
    }
}

std::size_t edge_count(const EdgeMap& em) noexcept {
    std::size_t n = 0;
    for (auto v : em.data()) n += v != 0;
    return n;
}

}  // namespace vosedge

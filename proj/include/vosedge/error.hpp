#pragma once

#include <stdexcept>
#include <string>

namespace vosedge {

/// Thrown when a caller violates an operation's precondition
/// (bad operator order k, empty scheme list, out-of-range threshold, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class IoErrorKind {
    MissingFile,
    UnsupportedFormat,
    MalformedHeader,
    TruncatedData,
    MalformedData,
    FormatMismatch,
    WriteFailed,
};

const char* to_string(IoErrorKind kind) noexcept;

class ImageIoError : public std::runtime_error {
public:
    ImageIoError(IoErrorKind kind, std::string path, const std::string& detail);

    IoErrorKind kind() const noexcept { return kind_; }
    const std::string& path() const noexcept { return path_; }

private:
    IoErrorKind kind_;
    std::string path_;
};

}  // namespace vosedge

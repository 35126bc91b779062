#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace disklab {

// Error carries a stable machine-readable code alongside the human message.
// Codes in use: OutsideDisk, SlopeTooLarge, EmptyPath, ZeroOnPath, BranchJump,
// DegreeTooHigh, UnknownGallery, BadParam, ZeroOnContour, NonSimpleContour,
// BadEps, ArcsinDomain, TanBlowup, IoError, EmptyInput, BadFormat,
// NonUniformGrid.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
    throw Error(code, what);
}

} // namespace disklab

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vtham {

// Raised when an input exceeds a configured search bound (vertex count,
// group size, oracle size). Distinct from invalid_argument: the request is
// well-formed, the engine just refuses to attempt it.
class capability_error : public std::runtime_error {
public:
    explicit capability_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed textual input (graph6 lines, group tables). Carries the byte
// offset of the first offending character.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (byte " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace vtham

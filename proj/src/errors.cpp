#include "wrinkle/errors.hpp"

#include <utility>

namespace wrinkle {

Error::Error(std::string code, const std::string& message)
    : std::runtime_error(message), code_(std::move(code)) {}

}  // namespace wrinkle

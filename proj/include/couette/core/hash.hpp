#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace couette {

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex_digest(std::uint64_t h);

}  // namespace couette

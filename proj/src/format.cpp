#include "ebsg/format.hpp"

#include <array>
#include <charconv>

namespace ebsg {

std::string format_double(double value)
{
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc()) {
        return "nan";
    }
    return std::string(buf.data(), ptr);
}

}  // namespace ebsg

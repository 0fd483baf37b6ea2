#ifndef EBSG_FORMAT_HPP
#define EBSG_FORMAT_HPP

#include <string>

namespace ebsg {

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

}  // namespace ebsg

#endif

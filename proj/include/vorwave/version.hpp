#ifndef VORWAVE_VERSION_HPP
#define VORWAVE_VERSION_HPP

namespace vorwave {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace vorwave

#endif

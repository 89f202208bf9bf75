#ifndef KT_VERSION_HPP
#define KT_VERSION_HPP

namespace kt {

inline constexpr const char* kToolVersion = "0.1.0";

} // namespace kt

#endif

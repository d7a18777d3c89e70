#ifndef EOGEC_VERSION_HPP
#define EOGEC_VERSION_HPP

namespace eogec {

inline constexpr const char* kVersion = "0.1.0";

} // namespace eogec

#endif

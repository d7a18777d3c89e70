#ifndef EOGEC_UNICODE_HPP
#define EOGEC_UNICODE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace eogec::uni {

// Minimal UTF-8 codec. Invalid bytes decode to U+FFFD, one per byte.
std::vector<char32_t> decode(std::string_view s);
void encode(char32_t cp, std::string& out);
std::string encode(const std::vector<char32_t>& cps);

} // namespace eogec::uni

#endif

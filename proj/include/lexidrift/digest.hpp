#pragma once

#include <string>
#include <string_view>

namespace lexidrift {

// 64-bit FNV-1a content digest, hex-encoded. Not cryptographic; used to key
// pipeline stage resumption and to let a manifest reader re-check artifacts.
std::string fnv1a_hex(std::string_view content);
std::string digest_file(const std::string& path);

}  // namespace lexidrift

#include "lexidrift/digest.hpp"

#include <cstdint>
#include <cstdio>

#include "lexidrift/common.hpp"

namespace lexidrift {

std::string fnv1a_hex(std::string_view content) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : content) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string digest_file(const std::string& path) {
    return fnv1a_hex(read_text_file(path));
}

}  // namespace lexidrift

#include "citesim/util.hpp"

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>

namespace citesim {

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t state) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = state;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file for hashing: " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof buf);
        h = fnv1a(buf, static_cast<std::size_t>(in.gcount()), h);
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

std::vector<std::string> split_tsv(const std::string& line) {
    std::string trimmed = line;
    if (!trimmed.empty() && trimmed.back() == '\r') trimmed.pop_back();
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = trimmed.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(trimmed.substr(start));
            break;
        }
        fields.push_back(trimmed.substr(start, tab - start));
        start = tab + 1;
    }
    return fields;
}

bool parse_int(const std::string& text, long long& out) {
    if (text.empty()) return false;
    errno = 0;
    char* end = nullptr;
    long long value = std::strtoll(text.c_str(), &end, 10);
    if (errno == ERANGE || end != text.c_str() + text.size()) return false;
    out = value;
    return true;
}

}  // namespace citesim

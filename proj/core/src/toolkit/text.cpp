#include "when2tool/toolkit/text.hpp"

#include "when2tool/toolkit/arith.hpp"

#include <openssl/evp.h>

#include <cctype>

namespace when2tool::toolkit {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string to_hex(const unsigned char* p, std::size_t n) {
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(hex[p[i] >> 4]);
        out.push_back(hex[p[i] & 0xf]);
    }
    return out;
}

std::string hex64(std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * (7 - i)));
    return to_hex(b, 8);
}

std::string evp_digest(const EVP_MD* md, std::string_view input) {
    unsigned char out[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(input.data(), input.size(), out, &len, md, nullptr) != 1) throw ToolError("digest failed");
    return to_hex(out, len);
}

}  // namespace

std::uint64_t fnv1a_custom(std::string_view s) {
    std::uint64_t h = kFnv1aCustomOffset;
    for (unsigned char c : s) {
        h ^= c;
        h *= kFnv1aCustomPrime;
    }
    return h;
}

std::uint64_t djb2_custom(std::string_view s) {
    std::uint64_t h = kDjb2CustomInit;
    for (unsigned char c : s) h = h * kDjb2CustomMul + c;
    return h;
}

std::uint64_t sdbm_custom(std::string_view s) {
    std::uint64_t h = 0;
    for (unsigned char c : s) h = c + (h << 7) + (h << 17) - h;
    return h;
}

std::uint64_t murmur_custom(std::string_view s) {
    const std::uint64_t m = kMurmurCustomMul;
    const int r = kMurmurCustomShift;
    std::uint64_t h = kMurmurCustomSeed ^ (static_cast<std::uint64_t>(s.size()) * m);
    std::size_t i = 0;
    for (; i + 8 <= s.size(); i += 8) {
        std::uint64_t k = 0;
        for (int b = 0; b < 8; ++b) k |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[i + b])) << (8 * b);
        k *= m;
        k ^= k >> r;
        k *= m;
        h ^= k;
        h *= m;
    }
    const std::size_t rem = s.size() - i;
    if (rem) {
        for (std::size_t b = rem; b-- > 0;) h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(s[i + b])) << (8 * b);
        h *= m;
    }
    h ^= h >> r;
    h *= m;
    h ^= h >> r;
    return h;
}

std::uint64_t jenkins_custom(std::string_view s) {
    std::uint64_t h = 0;
    for (unsigned char c : s) {
        h += c;
        h += h << 11;
        h ^= h >> 5;
    }
    h += h << 4;
    h ^= h >> 13;
    h += h << 17;
    return h;
}

std::string hash_compute(std::string_view algorithm, std::string_view input) {
    const std::string a = lower(algorithm);
    if (a == "md5") return evp_digest(EVP_md5(), input);
    if (a == "sha1") return evp_digest(EVP_sha1(), input);
    if (a == "sha256") return evp_digest(EVP_sha256(), input);
    if (a == "fnv1a_custom") return hex64(fnv1a_custom(input));
    if (a == "djb2_custom") return hex64(djb2_custom(input));
    if (a == "sdbm_custom") return hex64(sdbm_custom(input));
    if (a == "murmur_custom") return hex64(murmur_custom(input));
    if (a == "jenkins_custom") return hex64(jenkins_custom(input));
    throw ToolError("unknown hash algorithm: " + std::string(algorithm));
}

namespace {

constexpr std::array<std::string_view, 26> kMorse{
    ".-",   "-...", "-.-.", "-..",  ".",   "..-.", "--.",  "....", "..",   ".---", "-.-",  ".-..", "--",
    "-.",   "---",  ".--.", "--.-", ".-.", "...",  "-",    "..-",  "...-", ".--",  "-..-", "-.--", "--.."};

std::string morse_encode(std::string_view text) {
    std::string out;
    bool word_start = true;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == ' ') {
            if (!word_start) out += " /";
            word_start = true;
            continue;
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) {
            throw ToolError(std::string("character '") + c + "' is not in the morse alphabet");
        }
        if (!out.empty()) out += ' ';
        out += kMorse[static_cast<std::size_t>(std::toupper(static_cast<unsigned char>(c)) - 'A')];
        word_start = false;
    }
    if (out.size() >= 2 && out.substr(out.size() - 2) == " /") out.resize(out.size() - 2);
    return out;
}

std::string morse_decode(std::string_view text) {
    std::string out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && text[i] == ' ') ++i;
        if (i >= text.size()) break;
        std::size_t j = i;
        while (j < text.size() && text[j] != ' ') ++j;
        const std::string_view sym = text.substr(i, j - i);
        if (sym == "/") {
            out += ' ';
        } else {
            bool found = false;
            for (std::size_t k = 0; k < kMorse.size(); ++k) {
                if (kMorse[k] == sym) {
                    out += static_cast<char>('A' + k);
                    found = true;
                    break;
                }
            }
            if (!found) throw ToolError("unknown morse symbol: " + std::string(sym));
        }
        i = j;
    }
    return out;
}

// Maps letter index 0..25 through `table` (encode) or its inverse (decode).
template <typename Fwd>
std::string substitute(std::string_view text, Fwd fwd, CodecDirection dir) {
    int inv[26];
    for (int i = 0; i < 26; ++i) inv[fwd(i)] = i;
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == ' ') {
            out += ' ';
            continue;
        }
        const bool up = c >= 'A' && c <= 'Z';
        const bool lo = c >= 'a' && c <= 'z';
        if (!up && !lo) throw ToolError(std::string("character '") + c + "' is outside the cipher alphabet");
        const int x = up ? c - 'A' : c - 'a';
        const int y = dir == CodecDirection::encode ? fwd(x) : inv[x];
        out += static_cast<char>((up ? 'A' : 'a') + y);
    }
    return out;
}

}  // namespace

std::string codec(std::string_view scheme, CodecDirection dir, std::string_view text, int shift) {
    const std::string s = lower(scheme);
    if (s == "morse") return dir == CodecDirection::encode ? morse_encode(text) : morse_decode(text);
    if (s == "rot13") return substitute(text, [](int x) { return (x + 13) % 26; }, dir);
    if (s == "caesar") {
        const int k = ((shift % 26) + 26) % 26;
        return substitute(text, [k](int x) { return (x + k) % 26; }, dir);
    }
    if (s == "scramble1") return substitute(text, [](int x) { return kScramble1[static_cast<std::size_t>(x)] - 'A'; }, dir);
    if (s == "scramble2") return substitute(text, [](int x) { return kScramble2[static_cast<std::size_t>(x)] - 'A'; }, dir);
    if (s == "alpha7") return substitute(text, [](int x) { return (7 * x + 3) % 26; }, dir);
    if (s == "reverse") return substitute(text, [](int x) { return 25 - x; }, dir);
    throw ToolError("unknown scheme: " + std::string(scheme));
}

}  // namespace when2tool::toolkit

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace when2tool::toolkit {

inline constexpr std::array<std::string_view, 8> kHashAlgorithms{
    "md5", "sha1", "sha256", "fnv1a_custom", "djb2_custom", "sdbm_custom", "murmur_custom", "jenkins_custom"};

inline constexpr std::array<std::string_view, 5> kCustomHashes{
    "fnv1a_custom", "djb2_custom", "sdbm_custom", "murmur_custom", "jenkins_custom"};

// Parameters of the custom 64-bit hashes. Fixed for the lifetime of the benchmark.
inline constexpr std::uint64_t kFnv1aCustomOffset = 0x84222325cbf29ce4ULL;
inline constexpr std::uint64_t kFnv1aCustomPrime = 0x00000100000001c3ULL;
inline constexpr std::uint64_t kDjb2CustomInit = 7919;
inline constexpr std::uint64_t kDjb2CustomMul = 37;
inline constexpr std::uint64_t kMurmurCustomSeed = 0x2545f4914f6cdd1dULL;
inline constexpr std::uint64_t kMurmurCustomMul = 0xc6a4a7935bd1e997ULL;
inline constexpr int kMurmurCustomShift = 45;

/// Lowercase hex digest. Algorithm names are case-insensitive.
std::string hash_compute(std::string_view algorithm, std::string_view input);

std::uint64_t fnv1a_custom(std::string_view s);
std::uint64_t djb2_custom(std::string_view s);
std::uint64_t sdbm_custom(std::string_view s);
std::uint64_t murmur_custom(std::string_view s);
std::uint64_t jenkins_custom(std::string_view s);

inline constexpr std::array<std::string_view, 7> kCodecSchemes{
    "morse", "rot13", "caesar", "scramble1", "scramble2", "alpha7", "reverse"};

// Substitution tables: plaintext A..Z maps to the letter at the same index.
inline constexpr std::string_view kScramble1 = "QWERTYUIOPASDFGHJKLZXCVBNM";
inline constexpr std::string_view kScramble2 = "MNBVCXZLKJHGFDSAPOIUYTREWQ";

enum class CodecDirection { encode, decode };

/// Letters keep their case under substitution schemes; spaces pass through.
/// Morse uses '.' and '-' within a letter, ' ' between letters and " / " between words;
/// decoding Morse yields uppercase.
std::string codec(std::string_view scheme, CodecDirection dir, std::string_view text, int shift = 0);

}  // namespace when2tool::toolkit

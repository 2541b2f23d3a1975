#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace when2tool {

enum class Category { scale, knowledge, execution };
enum class Difficulty { easy, medium, hard };
enum class Split { train, test };

inline constexpr Difficulty kDifficulties[] = {Difficulty::easy, Difficulty::medium, Difficulty::hard};
inline constexpr Split kSplits[] = {Split::train, Split::test};

// "A-scale", "B-knowledge", "C-execution"
std::string_view to_string(Category c);
std::string_view to_string(Difficulty d);
std::string_view to_string(Split s);

Category parse_category(std::string_view s);
Difficulty parse_difficulty(std::string_view s);
Split parse_split(std::string_view s);

/// Bad caller input (counts, sizes, malformed arguments).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Unknown environment, missing artifact, inconsistent run setup.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace when2tool

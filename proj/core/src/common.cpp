#include "when2tool/common.hpp"

namespace when2tool {

std::string_view to_string(Category c) {
    switch (c) {
        case Category::scale: return "A-scale";
        case Category::knowledge: return "B-knowledge";
        case Category::execution: return "C-execution";
    }
    return "?";
}

std::string_view to_string(Difficulty d) {
    switch (d) {
        case Difficulty::easy: return "easy";
        case Difficulty::medium: return "medium";
        case Difficulty::hard: return "hard";
    }
    return "?";
}

std::string_view to_string(Split s) { return s == Split::train ? "train" : "test"; }

Category parse_category(std::string_view s) {
    if (s == "A-scale" || s == "A" || s == "scale") return Category::scale;
    if (s == "B-knowledge" || s == "B" || s == "knowledge") return Category::knowledge;
    if (s == "C-execution" || s == "C" || s == "execution") return Category::execution;
    throw ArgumentError("unknown category: " + std::string(s));
}

Difficulty parse_difficulty(std::string_view s) {
    if (s == "easy") return Difficulty::easy;
    if (s == "medium") return Difficulty::medium;
    if (s == "hard") return Difficulty::hard;
    throw ArgumentError("unknown difficulty: " + std::string(s));
}

Split parse_split(std::string_view s) {
    if (s == "train") return Split::train;
    if (s == "test") return Split::test;
    throw ArgumentError("unknown split: " + std::string(s));
}

}  // namespace when2tool

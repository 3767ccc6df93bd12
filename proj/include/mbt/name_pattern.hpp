#pragma once

#include <regex>
#include <string>
#include <string_view>

#include "mbt/program.hpp"

namespace mbt {

// A sprite or text pattern. "/.../" is a regular expression searched as a
// substring; anything else is an exact name.
class NamePattern {
public:
    NamePattern() = default;
    NamePattern(std::string source, bool case_sensitive);

    bool matches(std::string_view text) const;
    bool is_regex() const { return is_regex_; }
    const std::string& source() const { return source_; }
    // Source without the surrounding slashes.
    std::string display() const;

    // First sprite whose name matches, or -1.
    int resolve(const SpriteProgram& program) const;

private:
    std::string source_;
    std::string body_;
    bool is_regex_ = false;
    bool case_sensitive_ = false;
    std::regex re_;
};

bool is_regex_pattern(std::string_view s);

}  // namespace mbt

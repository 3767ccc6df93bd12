#include "mbt/name_pattern.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace mbt {

bool is_regex_pattern(std::string_view s) { return s.size() >= 2 && s.front() == '/' && s.back() == '/'; }

NamePattern::NamePattern(std::string source, bool case_sensitive)
    : source_(std::move(source)), is_regex_(is_regex_pattern(source_)), case_sensitive_(case_sensitive) {
    body_ = is_regex_ ? source_.substr(1, source_.size() - 2) : source_;
    if (is_regex_) {
        auto flags = std::regex::ECMAScript;
        if (!case_sensitive_) flags |= std::regex::icase;
        try {
            re_ = std::regex(body_, flags);
        } catch (const std::regex_error& e) {
            throw std::invalid_argument("invalid pattern " + source_ + ": " + e.what());
        }
    }
}

bool NamePattern::matches(std::string_view text) const {
    if (is_regex_) return std::regex_search(text.begin(), text.end(), re_);
    if (case_sensitive_) return text == body_;
    return text.size() == body_.size() &&
           std::equal(text.begin(), text.end(), body_.begin(), [](char a, char b) {
               return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
           });
}

std::string NamePattern::display() const { return body_; }

int NamePattern::resolve(const SpriteProgram& program) const {
    for (std::size_t i = 0; i < program.sprites.size(); ++i) {
        if (matches(program.sprites[i].name)) return static_cast<int>(i);
    }
    return -1;
}

}  // namespace mbt

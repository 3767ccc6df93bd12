#include <gtest/gtest.h>

#include "mbt/corpus.hpp"
#include "mbt/name_pattern.hpp"

using mbt::NamePattern;

TEST(NamePattern, RegexAlternation) {
    NamePattern p("/(Apple|Apfel)/", false);
    EXPECT_TRUE(p.is_regex());
    EXPECT_TRUE(p.matches("Apfel"));
    EXPECT_TRUE(p.matches("Apple"));
    EXPECT_FALSE(p.matches("Bananas"));
}

TEST(NamePattern, RegexIsSubstringAndCaseFolded) {
    NamePattern p("/End/", false);
    EXPECT_TRUE(p.matches("ende!"));
    EXPECT_TRUE(p.matches("The End"));
    EXPECT_FALSE(NamePattern("/End/", true).matches("ende!"));
    EXPECT_TRUE(NamePattern("/End/", true).matches("Ende!"));
}

TEST(NamePattern, LiteralIsExact) {
    NamePattern p("Bowl", false);
    EXPECT_FALSE(p.is_regex());
    EXPECT_FALSE(p.matches("Bowl2"));
    EXPECT_TRUE(p.matches("bowl"));
    EXPECT_FALSE(NamePattern("Bowl", true).matches("bowl"));
}

TEST(NamePattern, InvalidRegexThrows) { EXPECT_THROW(NamePattern("/(unclosed/", false), std::invalid_argument); }

TEST(NamePattern, ResolveFindsFirstSprite) {
    auto p = mbt::build_fruit_catcher("sample");
    EXPECT_EQ(NamePattern("/Banan/", false).resolve(p), 2);
    EXPECT_EQ(NamePattern("apple", false).resolve(p), 1);
    EXPECT_EQ(NamePattern("Pear", false).resolve(p), -1);
    EXPECT_EQ(NamePattern("/(Apple|Apfel)/", false).display(), "(Apple|Apfel)");
}

TEST(NamePattern, Detection) {
    EXPECT_TRUE(mbt::is_regex_pattern("/x/"));
    EXPECT_FALSE(mbt::is_regex_pattern("/"));
    EXPECT_FALSE(mbt::is_regex_pattern("x/"));
}

#include "doctest.h"

#include "depthlab/errors.hpp"
#include "depthlab/sequences.hpp"

using namespace depthlab;

TEST_CASE("standard enumeration of binary strings") {
    CHECK(nth_string(0) == "0");
    CHECK(nth_string(1) == "1");
    CHECK(nth_string(2) == "00");
    CHECK(nth_string(3) == "01");
    CHECK(nth_string(4) == "10");
    CHECK(nth_string(5) == "11");
    CHECK(nth_string(6) == "000");

    for (std::uint64_t i = 0; i < 300; ++i) CHECK(string_rank(nth_string(i)) == i);
    CHECK(string_rank("0") == 0);
    CHECK(string_rank("000") == 6);
    CHECK_THROWS_AS(string_rank(""), DomainError);
}

TEST_CASE("first_of picks the length-lexicographic minimum") {
    CHECK(first_of({"10", "1", "0", "000"}) == "0");
    CHECK(first_of({"111", "00"}) == "00");
    CHECK_THROWS_AS(first_of({}), DomainError);
}

TEST_CASE("generator fixed points") {
    CHECK(generate(SequenceSpec::parse("periodic:01"), 7) == "0101010");
    CHECK(generate(SequenceSpec::parse("champernowne"), 10) == "0100011011");
    // membership bits of s_0..s_6 = 0,1,00,01,10,11,000
    CHECK(generate(SequenceSpec::parse("charfn:evens"), 7) == "0011110");
    CHECK(generate(SequenceSpec::parse("charfn:palindromes"), 7) == "1110011");
    // frozen from an independent xorshift64* implementation
    CHECK(generate(SequenceSpec::parse("prng:7"), 16) == "1100001001111100");
    // block j = (0^{2^j} 1) x 4^j: 01 then (001)x4 then (00001)x16 ...
    CHECK(generate(SequenceSpec::parse("blockdeep"), 19) == "0100100100100100001");
}

TEST_CASE("generators are prefix consistent") {
    for (const char* text :
         {"periodic:0011", "champernowne", "prng:42", "charfn:palindromes", "blockdeep"}) {
        SequenceSpec spec = SequenceSpec::parse(text);
        Bits longer = generate(spec, 257);
        CHECK(generate(spec, 100) == longer.substr(0, 100));
        CHECK(longer.size() == 257);
    }
}

TEST_CASE("prng output depends on the seed and is roughly balanced") {
    Bits a = generate(SequenceSpec::parse("prng:1"), 4096);
    Bits b = generate(SequenceSpec::parse("prng:2"), 4096);
    CHECK(a != b);
    std::size_t ones = 0;
    for (char c : a) ones += c == '1';
    CHECK(ones > 1800);
    CHECK(ones < 2300);
}

TEST_CASE("sequence spec parsing") {
    CHECK(SequenceSpec::parse("periodic:010").to_string() == "periodic:010");
    CHECK(SequenceSpec::parse("prng:99").to_string() == "prng:99");
    CHECK(SequenceSpec::parse("blockdeep").to_string() == "blockdeep");
    CHECK_THROWS_AS(SequenceSpec::parse("periodic:"), ConfigError);
    CHECK_THROWS_AS(SequenceSpec::parse("periodic:01x"), ConfigError);
    CHECK_THROWS_AS(SequenceSpec::parse("charfn:odds"), ConfigError);
    CHECK_THROWS_AS(SequenceSpec::parse("prng:abc"), ConfigError);
    CHECK_THROWS_AS(SequenceSpec::parse("fibonacci"), ConfigError);
}

TEST_CASE("generation ceiling is enforced") {
    CHECK_THROWS_AS(generate(SequenceSpec::parse("blockdeep"), kGenerateCeiling + 1), ConfigError);
    CHECK(generate(SequenceSpec::parse("periodic:1"), kGenerateCeiling).size() == kGenerateCeiling);
}

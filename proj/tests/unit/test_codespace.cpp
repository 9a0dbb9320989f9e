#include "irisdd/codespace.hpp"
#include "irisdd/dataset.hpp"
#include "irisdd/errors.hpp"
#include "support.hpp"

#include <doctest.h>

#include <sstream>

using namespace irisdd;
using irisdd::testing::random_bits;

namespace {

IrisCode code(std::vector<std::uint8_t> bits, std::int64_t id = 0, std::int64_t sample = 0) {
    return IrisCode(BitVector::from_bits(bits), id, sample);
}

}  // namespace

TEST_CASE("compare marks agreeing positions") {
    const auto c = compare(code({1, 0, 1, 1}, 0, 0), code({1, 1, 1, 0}, 0, 1));
    CHECK(c.bits.to_bits() == std::vector<std::uint8_t>{1, 0, 1, 0});
    CHECK(c.label == Label::genuine);
    CHECK(c.left == SampleRef{0, 0});
    CHECK(c.right == SampleRef{0, 1});

    const auto a = code({1, 0, 0, 1, 1}, 3, 0);
    CHECK(compare(a, a).bits.popcount() == 5);
    const auto inv = compare(a, code({0, 1, 1, 0, 0}, 4, 0));
    CHECK(inv.bits.popcount() == 0);
    CHECK(inv.label == Label::imposter);
}

TEST_CASE("compare rejects length mismatch") {
    CHECK_THROWS_AS(compare(code({1, 0}), code({1, 0, 1})), DimensionError);
}

TEST_CASE("iris codes reject empty and non-binary input") {
    CHECK_THROWS_AS(code({}), ValidationError);
    CHECK_THROWS_AS(code({0, 2, 1}), ValidationError);
}

TEST_CASE("complement flips bits and keeps labels") {
    const auto c = irisdd::testing::comparison_of({1, 0, 1, 0});
    const auto n = complement(c);
    CHECK(n.bits.to_bits() == std::vector<std::uint8_t>{0, 1, 0, 1});
    CHECK(n.label == c.label);
    CHECK(n.left == c.left);
    CHECK(complement(irisdd::testing::comparison_of({1, 1, 1})).bits.popcount() == 0);
    CHECK(complement(n).bits == c.bits);

    // Padding stays clear for lengths that are not a word multiple.
    const auto odd = complement(irisdd::testing::comparison_of(std::vector<std::uint8_t>(70, 1)));
    CHECK(odd.bits.popcount() == 0);
    CHECK(odd.bits.words()[1] == 0);
}

TEST_CASE("hamming similarity") {
    CHECK(hamming_similarity(irisdd::testing::comparison_of({1, 0, 1, 0})) == 0.5);
    CHECK(hamming_similarity(irisdd::testing::comparison_of(std::vector<std::uint8_t>(129, 1))) ==
          1.0);

    std::mt19937_64 rng(11);
    const auto bits = random_bits(rng, 4096);
    const double naive = static_cast<double>(irisdd::testing::naive_count(bits)) / 4096.0;
    CHECK(hamming_similarity(irisdd::testing::comparison_of(bits)) == naive);
}

TEST_CASE("packed popcount matches per-element count on random codes") {
    std::mt19937_64 rng(2024);
    for (int n = 0; n < 1000; ++n) {
        const std::size_t ell = 1 + rng() % 300;
        const auto a = random_bits(rng, ell);
        const auto b = random_bits(rng, ell);
        std::size_t agree = 0;
        for (std::size_t i = 0; i < ell; ++i) agree += a[i] == b[i];
        const auto c = compare(code(a, 0, 0), code(b, 1, 0));
        REQUIRE(c.bits.popcount() == agree);
        REQUIRE(complement(c).bits.popcount() == ell - agree);
    }
}

TEST_CASE("similarity properties on random pairs") {
    std::mt19937_64 rng(5);
    for (int n = 0; n < 200; ++n) {
        const std::size_t ell = 1 + rng() % 5000;
        const auto a = code(random_bits(rng, ell), 0, 0);
        const auto b = code(random_bits(rng, ell), 1, 0);
        const auto ab = compare(a, b);
        CHECK(hamming_similarity(ab) == hamming_similarity(compare(b, a)));
        CHECK(hamming_similarity(compare(a, a)) == 1.0);
        CHECK(std::abs(hamming_similarity(ab) + hamming_similarity(complement(ab)) - 1.0) <= 1e-15);
    }
}

TEST_CASE("hex layout puts bit i in digit i/4, most significant first") {
    BitVector bits(6);
    bits.set(0, true);  // digit 0, value 8
    bits.set(5, true);  // digit 1, position 2 -> value 4
    CHECK(encode_hex(bits) == "84");
    CHECK(decode_hex("84", 6) == bits);
    CHECK(encode_hex(BitVector::from_bits(std::vector<std::uint8_t>{1, 0, 1, 1})) == "b");
    CHECK_THROWS_AS(decode_hex("85", 6), ParseError);  // padding bit set
    CHECK_THROWS_AS(decode_hex("8", 6), ParseError);
    CHECK_THROWS_AS(decode_hex("8g", 6), ParseError);
}

TEST_CASE("dataset text round trip") {
    std::mt19937_64 rng(3);
    Dataset ds;
    ds.ell = 37;
    for (std::int64_t id = 0; id < 3; ++id) {
        for (std::int64_t s = 0; s < 4; ++s) ds.codes.push_back(code(random_bits(rng, 37), id, s));
    }
    std::ostringstream out;
    write_dataset(out, ds);
    CHECK(out.str().rfind("ell=37 codes=12\n", 0) == 0);
    std::istringstream in(out.str());
    const Dataset back = read_dataset(in);
    REQUIRE(back.codes.size() == ds.codes.size());
    for (std::size_t i = 0; i < ds.codes.size(); ++i) {
        CHECK(back.codes[i].bits == ds.codes[i].bits);
        CHECK(back.codes[i].ref() == ds.codes[i].ref());
    }
}

TEST_CASE("dataset parser errors carry line numbers") {
    auto parse_line = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            read_dataset(in);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 9999;
    };
    CHECK(parse_line("") == 1);
    CHECK(parse_line("ell=4 code=1\n0 0 f\n") == 1);
    CHECK(parse_line("ell=4 codes=2\n0 0 f\n0 x f\n") == 3);
    CHECK(parse_line("ell=4 codes=2\n0 0 f\n0 0 e\n") == 3);   // duplicate sample
    CHECK(parse_line("ell=4 codes=1\n0 0 f f\n") == 2);        // mask column
    CHECK(parse_line("ell=4 codes=1\n0 0 ff\n") == 2);
    CHECK(parse_line("ell=4 codes=2\n0 0 f\n") == 0);          // count mismatch

    std::istringstream masked("ell=4 codes=1\n0 0 f f\n");
    CHECK_THROWS_WITH_AS(read_dataset(masked), doctest::Contains("mask"), ParseError);
}

TEST_CASE("dataset validation") {
    Dataset ds;
    ds.ell = 4;
    ds.codes.push_back(code({1, 0, 1, 0}, 1, 0));
    ds.codes.push_back(code({1, 0, 1, 0}, 0, 2));
    CHECK_NOTHROW(ds.validate());
    CHECK(ds.identities() == std::vector<std::int64_t>{0, 1});
    ds.sort();
    CHECK(ds.codes.front().identity_id == 0);
    ds.codes.push_back(code({1, 0, 1}, 2, 0));
    CHECK_THROWS_AS(ds.validate(), DimensionError);
    ds.codes.back() = code({1, 0, 1, 1}, 1, 0);
    CHECK_THROWS_AS(ds.validate(), ValidationError);
}

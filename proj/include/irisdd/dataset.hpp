#pragma once

// Labeled code collections and their text format:
//
//   ell=<int> codes=<int>
//   <identity_id> <sample_id> <hex>
//   ...
//
// Bit i is stored in hex digit i/4 at position 3 - i%4 (most significant bit
// first); the final digit is zero-padded.

#include "irisdd/codespace.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace irisdd {

struct Dataset {
    std::size_t ell = 0;
    std::vector<IrisCode> codes;

    // Distinct identity ids, ascending.
    std::vector<std::int64_t> identities() const;

    // Throws ValidationError on empty ell, length mismatch or duplicate (identity, sample).
    void validate() const;

    // Codes ordered by (identity_id, sample_id).
    void sort();
};

std::string encode_hex(const BitVector& bits);
BitVector decode_hex(std::string_view hex, std::size_t ell);

void write_dataset(std::ostream& out, const Dataset& dataset);
void write_dataset(const std::filesystem::path& path, const Dataset& dataset);

// Throws ParseError (with line number) on malformed input, IoError if unreadable.
Dataset read_dataset(std::istream& in);
Dataset read_dataset(const std::filesystem::path& path);

// Concatenation of two datasets with equal ell.
Dataset merge(const Dataset& a, const Dataset& b);

}  // namespace irisdd

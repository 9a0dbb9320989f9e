#include "irisdd/dataset.hpp"

#include "irisdd/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace irisdd {

std::vector<std::int64_t> Dataset::identities() const {
    std::vector<std::int64_t> ids;
    ids.reserve(codes.size());
    for (const auto& c : codes) ids.push_back(c.identity_id);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

void Dataset::validate() const {
    if (ell == 0) throw ValidationError("dataset code length must be positive");
    std::set<SampleRef> seen;
    for (const auto& c : codes) {
        if (c.ell() != ell) {
            throw DimensionError("code (" + std::to_string(c.identity_id) + ", " +
                                 std::to_string(c.sample_id) + ") has length " +
                                 std::to_string(c.ell()) + ", dataset ell is " +
                                 std::to_string(ell));
        }
        if (!seen.insert(c.ref()).second) {
            throw ValidationError("duplicate sample (" + std::to_string(c.identity_id) + ", " +
                                  std::to_string(c.sample_id) + ")");
        }
    }
}

void Dataset::sort() {
    std::stable_sort(codes.begin(), codes.end(),
                     [](const IrisCode& a, const IrisCode& b) { return a.ref() < b.ref(); });
}

std::string encode_hex(const BitVector& bits) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out((bits.size() + 3) / 4, '0');
    for (std::size_t d = 0; d < out.size(); ++d) {
        unsigned v = 0;
        for (std::size_t k = 0; k < 4; ++k) {
            const std::size_t i = d * 4 + k;
            if (i < bits.size() && bits.test(i)) v |= 1u << (3 - k);
        }
        out[d] = digits[v];
    }
    return out;
}

namespace {

int hex_value(char ch) {
    if (ch >= '0' && ch <= '9') return ch - '0';
    if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
    if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
    return -1;
}

BitVector decode_hex_at(std::string_view hex, std::size_t ell, std::size_t line) {
    const std::size_t expected = (ell + 3) / 4;
    if (hex.size() != expected) {
        throw ParseError("expected " + std::to_string(expected) + " hex digits, got " +
                             std::to_string(hex.size()),
                         line);
    }
    BitVector bits(ell);
    for (std::size_t d = 0; d < hex.size(); ++d) {
        const int v = hex_value(hex[d]);
        if (v < 0) throw ParseError(std::string("invalid hex digit '") + hex[d] + "'", line);
        for (std::size_t k = 0; k < 4; ++k) {
            if (!((v >> (3 - k)) & 1)) continue;
            const std::size_t i = d * 4 + k;
            if (i >= ell) throw ParseError("nonzero padding bits in final hex digit", line);
            bits.set(i, true);
        }
    }
    return bits;
}

template <class T>
bool parse_number(std::string_view text, T& value) {
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

}  // namespace

BitVector decode_hex(std::string_view hex, std::size_t ell) { return decode_hex_at(hex, ell, 0); }

void write_dataset(std::ostream& out, const Dataset& dataset) {
    out << "ell=" << dataset.ell << " codes=" << dataset.codes.size() << '\n';
    for (const auto& c : dataset.codes) {
        out << c.identity_id << ' ' << c.sample_id << ' ' << encode_hex(c.bits) << '\n';
    }
}

void write_dataset(const std::filesystem::path& path, const Dataset& dataset) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_dataset(out, dataset);
    if (!out) throw IoError("failed writing " + path.string());
}

Dataset read_dataset(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("missing header line", 1);

    Dataset ds;
    std::size_t declared = 0;
    {
        const auto fields = split_ws(line);
        if (fields.size() != 2 || !fields[0].starts_with("ell=") ||
            !fields[1].starts_with("codes=") || !parse_number(fields[0].substr(4), ds.ell) ||
            !parse_number(fields[1].substr(6), declared)) {
            throw ParseError("header must read 'ell=<int> codes=<int>'", 1);
        }
        if (ds.ell == 0) throw ParseError("ell must be positive", 1);
    }

    std::size_t lineno = 1;
    std::set<SampleRef> seen;
    while (std::getline(in, line)) {
        ++lineno;
        const auto fields = split_ws(line);
        if (fields.empty()) continue;
        if (fields.size() == 4) throw ParseError("masked iris codes are not supported", lineno);
        if (fields.size() != 3) {
            throw ParseError("expected '<identity_id> <sample_id> <hex>'", lineno);
        }
        std::int64_t identity = 0;
        std::int64_t sample = 0;
        if (!parse_number(fields[0], identity)) throw ParseError("bad identity_id", lineno);
        if (!parse_number(fields[1], sample)) throw ParseError("bad sample_id", lineno);
        if (!seen.insert({identity, sample}).second) {
            throw ParseError("duplicate sample (" + std::to_string(identity) + ", " +
                                 std::to_string(sample) + ")",
                             lineno);
        }
        ds.codes.emplace_back(decode_hex_at(fields[2], ds.ell, lineno), identity, sample);
    }
    if (ds.codes.size() != declared) {
        throw ParseError("header declares " + std::to_string(declared) + " codes, found " +
                             std::to_string(ds.codes.size()),
                         0);
    }
    return ds;
}

Dataset read_dataset(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return read_dataset(in);
    } catch (const ParseError& e) {
        throw e.in_source(path.string());
    }
}

Dataset merge(const Dataset& a, const Dataset& b) {
    if (a.ell != b.ell) {
        throw DimensionError("cannot merge datasets with ell " + std::to_string(a.ell) + " and " +
                             std::to_string(b.ell));
    }
    Dataset out{a.ell, a.codes};
    out.codes.insert(out.codes.end(), b.codes.begin(), b.codes.end());
    out.validate();
    return out;
}

}  // namespace irisdd

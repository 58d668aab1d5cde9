#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "aifv/bitstring.hpp"
#include "aifv/error.hpp"

namespace aifv {

/// Container for an encoded message:
///   "AIFV" | version 0x01 | symbol count (u64 LE) | bit count (u64 LE) | payload
/// with payload bits packed MSB-first and zero-padded to a whole byte.
struct Bitstream {
    std::uint64_t symbol_count = 0;
    BitString bits;
};

inline constexpr std::string_view bitstream_magic = "AIFV";
inline constexpr unsigned char bitstream_version = 0x01;
inline constexpr std::size_t bitstream_header_size = 4 + 1 + 8 + 8;

namespace detail {

inline void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
}

inline std::uint64_t get_u64(std::string_view in, std::size_t pos) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{static_cast<unsigned char>(in[pos + i])} << (8 * i);
    return v;
}

}  // namespace detail

inline std::string write_bitstream(const Bitstream& stream) {
    std::string out(bitstream_magic);
    out.push_back(static_cast<char>(bitstream_version));
    detail::put_u64(out, stream.symbol_count);
    detail::put_u64(out, stream.bits.size());
    for (std::size_t pos = 0; pos < stream.bits.size(); pos += 8)
        out.push_back(static_cast<char>(stream.bits.chunk(pos) >> 56));
    return out;
}

inline Bitstream read_bitstream(std::string_view in) {
    if (in.size() < bitstream_header_size || in.substr(0, 4) != bitstream_magic)
        throw Error(Errc::parse_error, "not an AIFV bitstream");
    if (static_cast<unsigned char>(in[4]) != bitstream_version)
        throw Error(Errc::parse_error, "unsupported bitstream version " + std::to_string(static_cast<unsigned char>(in[4])));
    Bitstream out;
    out.symbol_count = detail::get_u64(in, 5);
    std::uint64_t bit_count = detail::get_u64(in, 13);
    std::string_view payload = in.substr(bitstream_header_size);
    if (bit_count > payload.size() * 8 || payload.size() != (bit_count + 7) / 8)
        throw Error(Errc::parse_error, "bit count does not match the payload size");
    for (std::uint64_t i = 0; i < bit_count; ++i)
        out.bits.push_back((static_cast<unsigned char>(payload[i / 8]) >> (7 - i % 8)) & 1u);
    if (bit_count % 8 != 0) {
        unsigned pad_mask = (1u << (8 - bit_count % 8)) - 1u;
        if (static_cast<unsigned char>(payload.back()) & pad_mask)
            throw Error(Errc::parse_error, "non-zero padding bits");
    }
    return out;
}

}  // namespace aifv

#pragma once

/// @file cache.hpp
/// On-disk cache of the mu column.
///
/// Layout (all integers little-endian):
///   bytes 0-3    magic "STJZ"
///   bytes 4-7    format version, uint32 = 1
///   bytes 8-15   limit N, uint64
///   N bytes      byte(n-1) = mu(n) + 1, one of {0, 1, 2}
///   4 bytes      CRC-32 (IEEE) of the payload

#include <zlib.h>

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "stieltjes/arith_tables.hpp"

namespace stieltjes {

inline constexpr std::array<char, 4> cache_magic = {'S', 'T', 'J', 'Z'};
inline constexpr std::uint32_t cache_version = 1;
inline constexpr std::size_t cache_header_size = 16;

class cache_error : public std::runtime_error {
public:
    enum class kind { io, format, version, checksum, truncated, payload };

    cache_error(kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
    kind code() const { return kind_; }

private:
    kind kind_;
};

namespace detail {

inline std::uint32_t crc32_ieee(std::span<const unsigned char> bytes) {
    uLong crc = ::crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths; feed large payloads in chunks
    constexpr std::size_t chunk = 1u << 30;
    for (std::size_t off = 0; off < bytes.size(); off += chunk) {
        const auto len = std::min(chunk, bytes.size() - off);
        crc = ::crc32(crc, bytes.data() + off, static_cast<uInt>(len));
    }
    return static_cast<std::uint32_t>(crc);
}

template <typename T>
void put_le(std::vector<unsigned char>& out, T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i)
        out.push_back(static_cast<unsigned char>((value >> (8 * i)) & 0xFF));
}

template <typename T>
T get_le(const unsigned char* p) {
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
        v |= static_cast<T>(p[i]) << (8 * i);
    return v;
}

} // namespace detail

/// Serializes the mu column of `table` into the cache byte layout.
inline std::vector<unsigned char> encode_cache(const ArithTable& table) {
    const auto n = table.limit();
    std::vector<unsigned char> out;
    out.reserve(cache_header_size + n + 4);
    out.insert(out.end(), cache_magic.begin(), cache_magic.end());
    detail::put_le<std::uint32_t>(out, cache_version);
    detail::put_le<std::uint64_t>(out, n);
    const auto mu = table.mu();
    for (std::uint64_t i = 1; i <= n; ++i)
        out.push_back(static_cast<unsigned char>(mu[i] + 1));
    const auto crc = detail::crc32_ieee(
        std::span<const unsigned char>(out).subspan(cache_header_size, n));
    detail::put_le<std::uint32_t>(out, crc);
    return out;
}

inline ArithTable decode_cache(std::span<const unsigned char> bytes) {
    using k = cache_error::kind;
    if (bytes.size() >= 4 && !std::equal(cache_magic.begin(), cache_magic.end(), bytes.begin()))
        throw cache_error(k::format, "cache: bad magic (not an STJZ file)");
    if (bytes.size() < cache_header_size)
        throw cache_error(k::truncated, "cache: truncated header");
    const auto version = detail::get_le<std::uint32_t>(bytes.data() + 4);
    if (version != cache_version)
        throw cache_error(k::version, "cache: unsupported format version " +
                                          std::to_string(version));
    const auto n = detail::get_le<std::uint64_t>(bytes.data() + 8);
    if (n == 0 || n > max_table_limit)
        throw cache_error(k::format, "cache: limit " + std::to_string(n) + " out of range");
    if (bytes.size() < cache_header_size + n + 4)
        throw cache_error(k::truncated, "cache: truncated payload");
    if (bytes.size() > cache_header_size + n + 4)
        throw cache_error(k::format, "cache: trailing bytes after checksum");
    const auto payload = bytes.subspan(cache_header_size, n);
    const auto stored = detail::get_le<std::uint32_t>(bytes.data() + cache_header_size + n);
    if (detail::crc32_ieee(payload) != stored)
        throw cache_error(k::checksum, "cache: CRC-32 mismatch");

    std::vector<std::int8_t> mu(n + 1, 0);
    for (std::uint64_t i = 0; i < n; ++i) {
        if (payload[i] > 2)
            throw cache_error(k::payload, "cache: invalid mu byte at offset " + std::to_string(i));
        mu[i + 1] = static_cast<std::int8_t>(payload[i] - 1);
    }
    return table_from_mu(std::move(mu));
}

inline void save_cache(const ArithTable& table, const std::filesystem::path& path) {
    const auto bytes = encode_cache(table);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw cache_error(cache_error::kind::io, "cache: cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw cache_error(cache_error::kind::io, "cache: write failed for " + path.string());
}

inline ArithTable load_cache(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw cache_error(cache_error::kind::io, "cache: cannot open " + path.string());
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_cache(bytes);
}

/// Reads only the header and returns the stored limit.
inline std::uint64_t peek_cache_limit(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw cache_error(cache_error::kind::io, "cache: cannot open " + path.string());
    std::array<unsigned char, cache_header_size> header{};
    in.read(reinterpret_cast<char*>(header.data()), header.size());
    if (in.gcount() >= 4 && !std::equal(cache_magic.begin(), cache_magic.end(), header.begin()))
        throw cache_error(cache_error::kind::format, "cache: bad magic (not an STJZ file)");
    if (in.gcount() != static_cast<std::streamsize>(header.size()))
        throw cache_error(cache_error::kind::truncated, "cache: truncated header");
    if (detail::get_le<std::uint32_t>(header.data() + 4) != cache_version)
        throw cache_error(cache_error::kind::version, "cache: unsupported format version");
    return detail::get_le<std::uint64_t>(header.data() + 8);
}

} // namespace stieltjes

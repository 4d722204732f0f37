#include "lgrpo/dump.hpp"

#include "lgrpo/error.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <string>

namespace lgrpo {

namespace {

constexpr std::array<char, 4> kMagic = {'L', 'G', 'R', 'D'};

class Writer {
public:
    void u16(std::uint16_t v) {
        put(static_cast<std::uint8_t>(v & 0xFF));
        put(static_cast<std::uint8_t>(v >> 8));
    }
    void u32(std::uint32_t v) {
        for (int s = 0; s < 32; s += 8) {
            put(static_cast<std::uint8_t>((v >> s) & 0xFF));
        }
    }
    void f32(double v) {
        const auto f = static_cast<float>(v);
        if (!std::isfinite(f)) {
            fail(ErrorCode::InvalidArgument, "value is not representable as a finite 32-bit float");
        }
        u32(std::bit_cast<std::uint32_t>(f));
    }
    void raw(std::span<const char> s) {
        for (char c : s) {
            put(static_cast<std::uint8_t>(c));
        }
    }
    std::vector<std::byte> take() { return std::move(bytes_); }
    void reserve(std::size_t n) { bytes_.reserve(n); }

private:
    void put(std::uint8_t b) { bytes_.push_back(static_cast<std::byte>(b)); }
    std::vector<std::byte> bytes_;
};

class Reader {
public:
    Reader(std::span<const std::byte> bytes, std::size_t start) : bytes_(bytes), pos_(start) {}

    std::size_t offset() const noexcept { return pos_; }
    std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

    std::uint16_t u16(const char* what) {
        need(2, what);
        const auto v = static_cast<std::uint16_t>(byte(0) | (byte(1) << 8));
        pos_ += 2;
        return v;
    }
    std::uint32_t u32(const char* what) {
        need(4, what);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            v |= static_cast<std::uint32_t>(byte(i)) << (8 * i);
        }
        pos_ += 4;
        return v;
    }
    float f32(const char* what) { return std::bit_cast<float>(u32(what)); }

private:
    void need(std::size_t n, const char* what) {
        if (remaining() < n) {
            fail(ErrorCode::TruncatedFile, std::string("file truncated at byte offset ") +
                                               std::to_string(bytes_.size()) + " while reading " + what +
                                               " starting at offset " + std::to_string(pos_));
        }
    }
    unsigned byte(std::size_t i) const { return std::to_integer<unsigned>(bytes_[pos_ + i]); }

    std::span<const std::byte> bytes_;
    std::size_t pos_;
};

} // namespace

std::vector<std::byte> encode_group_dump(std::span<const TrajectoryGroup> groups) {
    if (groups.empty()) {
        fail(ErrorCode::EmptyInput, "cannot write a dump with no groups");
    }
    const std::size_t dim = groups.front().dim();
    const bool labels = groups.front().has_labels();
    std::size_t total = kDumpHeaderSize;
    for (const auto& g : groups) {
        if (g.dim() != dim) {
            fail(ErrorCode::DimensionMismatch, "all groups in a dump must share one dimension");
        }
        if (g.has_labels() != labels) {
            fail(ErrorCode::ShapeMismatch, "labels must be present for all groups or for none");
        }
        total += 4 + g.size() * dim * 4 + (labels ? g.size() * 4 : 0);
    }
    if (groups.size() > std::numeric_limits<std::uint32_t>::max() ||
        dim > std::numeric_limits<std::uint32_t>::max()) {
        fail(ErrorCode::InvalidArgument, "dump counts exceed 32 bits");
    }

    Writer w;
    w.reserve(total);
    w.raw(kMagic);
    w.u16(kDumpVersion);
    w.u16(labels ? kDumpFlagLabels : 0);
    w.u32(static_cast<std::uint32_t>(groups.size()));
    w.u32(static_cast<std::uint32_t>(dim));
    for (const auto& g : groups) {
        w.u32(static_cast<std::uint32_t>(g.size()));
        for (const auto& v : g.vectors()) {
            for (double x : v.values()) {
                w.f32(x);
            }
        }
        if (labels) {
            for (double l : *g.labels()) {
                w.f32(l);
            }
        }
    }
    return w.take();
}

std::vector<TrajectoryGroup> decode_group_dump(std::span<const std::byte> bytes) {
    if (bytes.size() < kMagic.size()) {
        fail(ErrorCode::TruncatedFile, "file truncated at byte offset " + std::to_string(bytes.size()) +
                                           " while reading magic starting at offset 0");
    }
    for (std::size_t i = 0; i < kMagic.size(); ++i) {
        if (std::to_integer<char>(bytes[i]) != kMagic[i]) {
            fail(ErrorCode::BadMagic, "not a group dump (magic is not \"LGRD\")");
        }
    }
    Reader r(bytes, kMagic.size());
    const auto version = r.u16("version");
    if (version != kDumpVersion) {
        fail(ErrorCode::UnsupportedVersion, "unsupported dump version " + std::to_string(version));
    }
    const auto flags = r.u16("flags");
    if ((flags & ~kDumpFlagLabels) != 0) {
        fail(ErrorCode::MalformedDump, "unknown flag bits set");
    }
    const bool labels = (flags & kDumpFlagLabels) != 0;
    const auto group_count = r.u32("group_count");
    const auto dim = r.u32("dimension");
    if (group_count == 0 || dim == 0) {
        fail(ErrorCode::MalformedDump, "group_count and dimension must be > 0");
    }

    auto at = [&] { return std::to_string(r.offset()); };
    std::vector<TrajectoryGroup> groups;
    for (std::uint32_t g = 0; g < group_count; ++g) {
        const auto size = r.u32("g_size");
        if (size == 0) {
            fail(ErrorCode::MalformedDump, "group " + std::to_string(g) + " has g_size 0");
        }
        const std::size_t payload = static_cast<std::size_t>(size) * (static_cast<std::size_t>(dim) + (labels ? 1 : 0)) * 4;
        if (r.remaining() < payload) {
            fail(ErrorCode::TruncatedFile, "file truncated at byte offset " + std::to_string(bytes.size()) +
                                               ": group " + std::to_string(g) + " needs " +
                                               std::to_string(payload) + " bytes from offset " + at());
        }
        std::vector<LatentVector> vectors;
        vectors.reserve(size);
        for (std::uint32_t i = 0; i < size; ++i) {
            std::vector<double> values(dim);
            for (auto& x : values) {
                const std::size_t where = r.offset();
                x = r.f32("vector");
                if (!std::isfinite(x)) {
                    fail(ErrorCode::MalformedDump, "non-finite vector value at byte offset " + std::to_string(where));
                }
            }
            vectors.emplace_back(std::move(values));
        }
        std::optional<std::vector<double>> group_labels;
        if (labels) {
            group_labels.emplace(size);
            for (auto& l : *group_labels) {
                const std::size_t where = r.offset();
                l = r.f32("label");
                if (!(l >= 0.0 && l <= 1.0)) {
                    fail(ErrorCode::LabelOutOfRange, "label outside [0, 1] at byte offset " + std::to_string(where));
                }
            }
        }
        groups.emplace_back(std::move(vectors), std::move(group_labels));
    }
    if (r.remaining() != 0) {
        fail(ErrorCode::MalformedDump, std::to_string(r.remaining()) + " unexpected trailing bytes at offset " + at());
    }
    return groups;
}

void write_group_dump(std::span<const TrajectoryGroup> groups, const std::filesystem::path& path) {
    const auto bytes = encode_group_dump(groups);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        fail(ErrorCode::IoFailure, "cannot open '" + path.string() + "' for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
        fail(ErrorCode::IoFailure, "failed writing '" + path.string() + "'");
    }
}

std::vector<TrajectoryGroup> read_group_dump(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorCode::IoFailure, "cannot open '" + path.string() + "' for reading");
    }
    std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        fail(ErrorCode::IoFailure, "failed reading '" + path.string() + "'");
    }
    return decode_group_dump(std::as_bytes(std::span<const char>(buf)));
}

} // namespace lgrpo

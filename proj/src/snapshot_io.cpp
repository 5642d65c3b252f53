#include "eclab/snapshot_io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace eclab {

namespace {

constexpr std::size_t kHeaderBytes = 4 + 4 + 4 + 4 * 8;

template <class T>
void put(std::vector<unsigned char>& out, T value) {
    unsigned char raw[sizeof(T)];
    std::memcpy(raw, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(std::begin(raw), std::end(raw));
    out.insert(out.end(), std::begin(raw), std::end(raw));
}

template <class T>
T get(std::span<const unsigned char> bytes, std::size_t& offset) {
    if (offset + sizeof(T) > bytes.size()) throw SnapshotFormatError("snapshot truncated");
    unsigned char raw[sizeof(T)];
    std::memcpy(raw, bytes.data() + offset, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(std::begin(raw), std::end(raw));
    offset += sizeof(T);
    T value;
    std::memcpy(&value, raw, sizeof(T));
    return value;
}

}  // namespace

std::vector<unsigned char> encode_snapshot(const SpectralField& field, double time, double alpha, double epsilon) {
    const Grid& g = field.grid();
    const int n = g.n();
    std::vector<unsigned char> out;
    out.reserve(kHeaderBytes + g.size() * 16);
    for (char c : {'P', 'E', 'C', 'F'}) out.push_back(static_cast<unsigned char>(c));
    put<std::uint32_t>(out, kSnapshotVersion);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(n));
    put<double>(out, g.length());
    put<double>(out, time);
    put<double>(out, alpha);
    put<double>(out, epsilon);
    for (int m1 = -n / 2; m1 < n / 2; ++m1) {
        for (int m2 = -n / 2; m2 < n / 2; ++m2) {
            const Complex c = field.coeff(m1, m2);
            put<double>(out, c.real());
            put<double>(out, c.imag());
        }
    }
    return out;
}

Snapshot decode_snapshot(std::span<const unsigned char> bytes) {
    if (bytes.size() < kHeaderBytes || std::memcmp(bytes.data(), "PECF", 4) != 0) {
        throw SnapshotFormatError("not a PECF snapshot");
    }
    std::size_t offset = 4;
    const auto version = get<std::uint32_t>(bytes, offset);
    if (version != kSnapshotVersion) throw SnapshotFormatError("unsupported snapshot version " + std::to_string(version));
    const auto n = get<std::uint32_t>(bytes, offset);
    const double length = get<double>(bytes, offset);
    Snapshot snap{0.0, 0.0, 0.0, SpectralField(Grid(static_cast<int>(n), length))};
    snap.time = get<double>(bytes, offset);
    snap.alpha = get<double>(bytes, offset);
    snap.epsilon = get<double>(bytes, offset);
    if (bytes.size() != kHeaderBytes + static_cast<std::size_t>(n) * n * 16) {
        throw SnapshotFormatError("snapshot size does not match header");
    }
    const int half = static_cast<int>(n) / 2;
    for (int m1 = -half; m1 < half; ++m1) {
        for (int m2 = -half; m2 < half; ++m2) {
            const double re = get<double>(bytes, offset);
            const double im = get<double>(bytes, offset);
            snap.field.coeff(m1, m2) = Complex(re, im);
        }
    }
    return snap;
}

void save_snapshot(const std::filesystem::path& path, const SpectralField& field, double time, double alpha,
                   double epsilon) {
    const auto bytes = encode_snapshot(field, time, alpha, epsilon);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

Snapshot load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_snapshot(bytes);
}

}  // namespace eclab

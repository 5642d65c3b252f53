#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include "eclab/field.hpp"

namespace eclab {

/// Binary snapshot layout, all little-endian:
///   "PECF" | version u32 | n u32 | L f64 | t f64 | alpha f64 | eps f64 |
///   n*n complex coefficients as (re, im) f64 pairs,
///   row-major in m1 then m2, each from -n/2 to n/2 - 1.
inline constexpr std::uint32_t kSnapshotVersion = 1;

struct Snapshot {
    double time = 0.0;
    double alpha = 0.0;
    double epsilon = 0.0;
    SpectralField field;
};

class SnapshotFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<unsigned char> encode_snapshot(const SpectralField& field, double time, double alpha, double epsilon);
Snapshot decode_snapshot(std::span<const unsigned char> bytes);

void save_snapshot(const std::filesystem::path& path, const SpectralField& field, double time, double alpha,
                   double epsilon);
Snapshot load_snapshot(const std::filesystem::path& path);

}  // namespace eclab

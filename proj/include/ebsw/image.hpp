#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ebsw/measure.hpp"

namespace ebsw {

/// 8-bit RGB raster, row-major, 3 bytes per pixel.
struct Image {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> rgb;

  std::size_t pixel_count() const noexcept { return width * height; }
  friend bool operator==(const Image&, const Image&) = default;
};

/// Binary PPM (P6, maxval 255). Header comments are allowed.
/// Throws FormatError on a malformed header or short pixel data.
Image parse_ppm(const std::string& bytes);
Image read_ppm(const std::filesystem::path& path);
std::string encode_ppm(const Image& img);
void write_ppm(const Image& img, const std::filesystem::path& path);

/// Pixels as points in [0,1]^3 (channel / 255). Throws EmptyInputError for a zero-pixel image.
EmpiricalMeasure image_palette(const Image& img);

/// Scales a [0,1] palette by 255, rounds to the nearest integer and clamps to [0,255].
std::vector<std::uint8_t> round_palette(const EmpiricalMeasure& palette);

}  // namespace ebsw

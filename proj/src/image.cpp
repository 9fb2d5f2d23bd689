#include "ebsw/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ebsw/error.hpp"

namespace ebsw {

namespace {

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string next_token(const std::string& s, std::size_t& pos) {
  while (pos < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[pos]))) {
      ++pos;
    } else if (s[pos] == '#') {
      while (pos < s.size() && s[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
  const std::size_t start = pos;
  while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) && s[pos] != '#') ++pos;
  return s.substr(start, pos - start);
}

std::size_t parse_dim(const std::string& tok, const char* what) {
  if (tok.empty() || tok.size() > 9 || tok.find_first_not_of("0123456789") != std::string::npos) {
    throw FormatError(std::string("malformed PPM header: bad ") + what + " '" + tok + "'");
  }
  return static_cast<std::size_t>(std::stoul(tok));
}

}  // namespace

Image parse_ppm(const std::string& bytes) {
  std::size_t pos = 0;
  if (next_token(bytes, pos) != "P6") throw FormatError("malformed PPM header: expected magic 'P6'");
  Image img;
  img.width = parse_dim(next_token(bytes, pos), "width");
  img.height = parse_dim(next_token(bytes, pos), "height");
  if (parse_dim(next_token(bytes, pos), "maxval") != 255) throw FormatError("unsupported PPM maxval (need 255)");
  // Exactly one whitespace byte separates the header from the raster.
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw FormatError("malformed PPM header: missing separator before pixel data");
  }
  ++pos;
  const std::size_t need = img.width * img.height * 3;
  if (bytes.size() - pos < need) throw FormatError("PPM pixel data is truncated");
  img.rgb.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                 bytes.begin() + static_cast<std::ptrdiff_t>(pos + need));
  return img;
}

Image read_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ppm(buf.str());
}

std::string encode_ppm(const Image& img) {
  std::string out = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.append(img.rgb.begin(), img.rgb.end());
  return out;
}

void write_ppm(const Image& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << encode_ppm(img);
  if (!out.flush()) throw IoError("write failed for " + path.string());
}

EmpiricalMeasure image_palette(const Image& img) {
  if (img.pixel_count() == 0) throw EmptyInputError("image has no pixels");
  std::vector<double> coords(img.rgb.size());
  for (std::size_t k = 0; k < coords.size(); ++k) coords[k] = img.rgb[k] / 255.0;
  return EmpiricalMeasure(img.pixel_count(), 3, std::move(coords));
}

std::vector<std::uint8_t> round_palette(const EmpiricalMeasure& palette) {
  const auto data = palette.points().data();
  std::vector<std::uint8_t> out(data.size());
  for (std::size_t k = 0; k < data.size(); ++k) {
    const double v = std::nearbyint(data[k] * 255.0);
    out[k] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
  }
  return out;
}

}  // namespace ebsw

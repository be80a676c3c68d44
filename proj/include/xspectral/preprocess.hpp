#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "xspectral/error.hpp"
#include "xspectral/image.hpp"

namespace xspectral::preprocess {

/// Placement of the three normalized-iris strips on the 256x256 canvas.
/// 3 x 171 overshoots the 512-column source, so the last strip is 170 wide;
/// rows are chosen so the strips sit centered with equal outer margins.
struct PackLayout {
  std::array<int, 3> strip_widths{171, 171, 170};
  std::array<int, 3> row_offsets{32, 96, 160};
  int strip_height = 64;
  int canvas = 256;
  int source_width = 512;
  int source_height = 64;
};

inline constexpr int kPeriocularSourceWidth = 640;
inline constexpr int kPeriocularSourceHeight = 480;
inline constexpr int kCanvasSize = 256;

namespace detail {

/// Bilinear resampling with the half-pixel center convention, one channel at
/// a time, rounding to nearest. Double arithmetic keeps it reproducible.
inline Image resize_bilinear(const Image& src, int dst_w, int dst_h) {
  Image dst(dst_w, dst_h, src.channels);
  const double sx = static_cast<double>(src.width) / dst_w;
  const double sy = static_cast<double>(src.height) / dst_h;
  for (int r = 0; r < dst_h; ++r) {
    double fy = (r + 0.5) * sy - 0.5;
    fy = std::clamp(fy, 0.0, static_cast<double>(src.height - 1));
    const int y0 = static_cast<int>(std::floor(fy));
    const int y1 = std::min(y0 + 1, src.height - 1);
    const double wy = fy - y0;
    for (int c = 0; c < dst_w; ++c) {
      double fx = (c + 0.5) * sx - 0.5;
      fx = std::clamp(fx, 0.0, static_cast<double>(src.width - 1));
      const int x0 = static_cast<int>(std::floor(fx));
      const int x1 = std::min(x0 + 1, src.width - 1);
      const double wx = fx - x0;
      for (int ch = 0; ch < src.channels; ++ch) {
        const double top = (1.0 - wx) * src.at(x0, y0, ch) + wx * src.at(x1, y0, ch);
        const double bot = (1.0 - wx) * src.at(x0, y1, ch) + wx * src.at(x1, y1, ch);
        const double v = (1.0 - wy) * top + wy * bot;
        dst.at(c, r, ch) = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
      }
    }
  }
  return dst;
}

}  // namespace detail

/// 640x480 periocular image -> zero-pad to 640x640 (80 rows above and below),
/// then bilinear downsample to 256x256.
inline Image squarify_periocular(const Image& img) {
  if (img.width != kPeriocularSourceWidth || img.height != kPeriocularSourceHeight) {
    throw DimensionError("squarify_periocular: expected 640x480, got " +
                         std::to_string(img.width) + "x" + std::to_string(img.height));
  }
  const int pad = (kPeriocularSourceWidth - kPeriocularSourceHeight) / 2;  // 80 rows
  Image padded(kPeriocularSourceWidth, kPeriocularSourceWidth, img.channels, 0);
  for (int y = 0; y < img.height; ++y) {
    std::copy(img.data.begin() + static_cast<std::size_t>(y) * img.width * img.channels,
              img.data.begin() + static_cast<std::size_t>(y + 1) * img.width * img.channels,
              padded.data.begin() +
                  (static_cast<std::size_t>(y + pad) * padded.width) * img.channels);
  }
  return detail::resize_bilinear(padded, kCanvasSize, kCanvasSize);
}

/// 64x512 normalized iris -> three strips on a zero 256x256 canvas. Pure
/// pixel moves, no resampling, so unpack can restore the source bit-exactly.
inline Image pack_iris_strips(const Image& img, const PackLayout& layout = {}) {
  if (img.width != layout.source_width || img.height != layout.source_height) {
    throw DimensionError("pack_iris_strips: expected 512x64, got " +
                         std::to_string(img.width) + "x" + std::to_string(img.height));
  }
  Image canvas(layout.canvas, layout.canvas, img.channels, 0);
  int col = 0;
  for (int s = 0; s < 3; ++s) {
    const int w = layout.strip_widths[s];
    const int row0 = layout.row_offsets[s];
    for (int y = 0; y < layout.strip_height; ++y) {
      for (int x = 0; x < w; ++x) {
        for (int ch = 0; ch < img.channels; ++ch) {
          canvas.at(x, row0 + y, ch) = img.at(col + x, y, ch);
        }
      }
    }
    col += w;
  }
  return canvas;
}

/// Inverse of pack_iris_strips; canvas pixels outside the strips are ignored.
inline Image unpack_iris_strips(const Image& img, const PackLayout& layout = {}) {
  if (img.width != layout.canvas || img.height != layout.canvas) {
    throw DimensionError("unpack_iris_strips: expected 256x256, got " +
                         std::to_string(img.width) + "x" + std::to_string(img.height));
  }
  Image out(layout.source_width, layout.source_height, img.channels, 0);
  int col = 0;
  for (int s = 0; s < 3; ++s) {
    const int w = layout.strip_widths[s];
    const int row0 = layout.row_offsets[s];
    for (int y = 0; y < layout.strip_height; ++y) {
      for (int x = 0; x < w; ++x) {
        for (int ch = 0; ch < img.channels; ++ch) {
          out.at(col + x, y, ch) = img.at(x, row0 + y, ch);
        }
      }
    }
    col += w;
  }
  return out;
}

/// ITU-R BT.601 luma, rounded to nearest. Gray input passes through.
inline Image to_gray(const Image& img) {
  if (img.channels == 1) return img;
  if (img.channels != 3) throw DimensionError("to_gray: expected 1 or 3 channels");
  Image out(img.width, img.height, 1);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const double luma =
          0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) + 0.114 * img.at(x, y, 2);
      out.at(x, y) = static_cast<std::uint8_t>(std::lround(luma));
    }
  }
  return out;
}

}  // namespace xspectral::preprocess

#pragma once

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "xspectral/error.hpp"

namespace xspectral {

/// 8-bit raster, row-major, interleaved channels (RGB order for color).
struct Image {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> data;

  Image() = default;
  Image(int w, int h, int c, std::uint8_t fill = 0)
      : width(w), height(h), channels(c),
        data(static_cast<std::size_t>(w) * h * c, fill) {}

  std::uint8_t& at(int x, int y, int c = 0) {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  std::uint8_t at(int x, int y, int c = 0) const {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }

  bool same_shape(const Image& o) const {
    return width == o.width && height == o.height && channels == o.channels;
  }
  bool operator==(const Image& o) const {
    return same_shape(o) && data == o.data;
  }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
};

inline Image load_png(const std::string& path) {
  cv::Mat m = cv::imread(path, cv::IMREAD_UNCHANGED);
  if (m.empty()) throw Error("cannot read image: " + path);
  if (m.depth() != CV_8U) throw Error("expected 8-bit image: " + path);
  if (m.channels() == 3) {
    cv::cvtColor(m, m, cv::COLOR_BGR2RGB);
  } else if (m.channels() == 4) {
    cv::cvtColor(m, m, cv::COLOR_BGRA2RGB);
  } else if (m.channels() != 1) {
    throw Error("unsupported channel count in " + path);
  }
  Image img(m.cols, m.rows, m.channels());
  for (int y = 0; y < m.rows; ++y) {
    const std::uint8_t* row = m.ptr<std::uint8_t>(y);
    std::copy(row, row + static_cast<std::size_t>(m.cols) * m.channels(),
              img.data.begin() + static_cast<std::size_t>(y) * m.cols * m.channels());
  }
  return img;
}

inline void save_png(const Image& img, const std::string& path) {
  if (img.channels != 1 && img.channels != 3) {
    throw Error("save_png: only 1- or 3-channel images supported");
  }
  cv::Mat m(img.height, img.width, img.channels == 1 ? CV_8UC1 : CV_8UC3,
            const_cast<std::uint8_t*>(img.data.data()));
  cv::Mat out;
  if (img.channels == 3) {
    cv::cvtColor(m, out, cv::COLOR_RGB2BGR);
  } else {
    out = m;
  }
  if (!cv::imwrite(path, out)) throw Error("cannot write image: " + path);
}

}  // namespace xspectral

// Copyright 2026 The Spinebox Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <system_error>

// jpeglib.h needs FILE and size_t declared first.
#include <jpeglib.h>

#include "spinebox/error.hpp"
#include "spinebox/io.hpp"

namespace spinebox {

namespace {

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  return bytes;
}

ImageBuffer from_rgb8(const std::uint8_t* rgb, int width, int height) {
  ImageBuffer img(width, height);
  auto dst = img.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = rgb[i];
  return img;
}

ImageBuffer decode_png(const std::vector<std::uint8_t>& bytes,
                       const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw Error(ErrorCode::kDecodeError, path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> rgb(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, rgb.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::kDecodeError, path.string() + ": " + msg);
  }
  return from_rgb8(rgb.data(), static_cast<int>(image.width),
                   static_cast<int>(image.height));
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

// Warnings (truncated data and the like) are counted in num_warnings and
// turned into a decode error by the caller instead of printed.
void jpeg_silent(j_common_ptr) {}

// Only trivially destructible locals live in this frame, so longjmp is safe.
bool decode_jpeg_raw(const std::vector<std::uint8_t>& bytes,
                     std::vector<std::uint8_t>& rgb, int& width, int& height,
                     JpegErrorManager& err) {
  jpeg_decompress_struct cinfo;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  err.base.output_message = jpeg_silent;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    return false;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  width = static_cast<int>(cinfo.output_width);
  height = static_cast<int>(cinfo.output_height);
  rgb.resize(static_cast<std::size_t>(width) * height * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = rgb.data() + static_cast<std::size_t>(cinfo.output_scanline) * width * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  if (err.base.num_warnings > 0) {
    std::snprintf(err.message, sizeof(err.message), "corrupt JPEG data");
    return false;
  }
  return true;
}

ImageBuffer decode_jpeg(const std::vector<std::uint8_t>& bytes,
                        const std::filesystem::path& path) {
  std::vector<std::uint8_t> rgb;
  int width = 0, height = 0;
  JpegErrorManager err{};
  if (!decode_jpeg_raw(bytes, rgb, width, height, err)) {
    throw Error(ErrorCode::kDecodeError, path.string() + ": " + err.message);
  }
  return from_rgb8(rgb.data(), width, height);
}

}  // namespace

ImageBuffer load_image(const std::filesystem::path& path) {
  const auto bytes = read_bytes(path);
  static constexpr std::uint8_t kPngMagic[] = {0x89, 'P', 'N', 'G'};
  if (bytes.size() >= 4 && std::equal(kPngMagic, kPngMagic + 4, bytes.begin())) {
    return decode_png(bytes, path);
  }
  if (bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF) {
    return decode_jpeg(bytes, path);
  }
  throw Error(ErrorCode::kDecodeError, path.string() + ": not a PNG or JPEG file");
}

void save_png(const ImageBuffer& img, const std::filesystem::path& path) {
  const auto src = img.data();
  std::vector<std::uint8_t> rgb(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    rgb[i] = static_cast<std::uint8_t>(std::clamp(std::lround(src[i]), 0L, 255L));
  }
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = PNG_FORMAT_RGB;

  png_alloc_size_t size = 0;
  if (!png_image_write_get_memory_size(image, size, 0, rgb.data(), 0, nullptr)) {
    throw Error(ErrorCode::kIoError, path.string() + ": " + image.message);
  }
  std::string encoded(size, '\0');
  if (!png_image_write_to_memory(&image, encoded.data(), &size, 0, rgb.data(), 0,
                                 nullptr)) {
    throw Error(ErrorCode::kIoError, path.string() + ": " + image.message);
  }
  encoded.resize(size);
  write_file_atomic(path, encoded);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  }
}

}  // namespace spinebox

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsoccer/entities.hpp"

namespace rsoccer {

struct StyleError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    bool operator==(const Rgb&) const = default;
};

/// Image height follows from the width and the field's aspect ratio.
struct RenderStyle {
    int width = 960;
    Rgb background{24, 24, 24};
    Rgb grass{18, 110, 42};
    Rgb lines{235, 235, 235};
    Rgb blue{40, 90, 230};
    Rgb yellow{240, 200, 20};
    Rgb ball{255, 120, 0};
    Rgb heading{20, 20, 20};
    bool show_ids = false;
    bool show_velocities = false;
};

/// World-to-pixel mapping for a field and style. World +y points up.
struct Viewport {
    int width = 0;
    int height = 0;
    double scale = 0.0;  // pixels per meter
    double half_extent_x = 0.0;
    double half_extent_y = 0.0;

    double px(double x) const { return (x + half_extent_x) * scale; }
    double py(double y) const { return (half_extent_y - y) * scale; }
};

Viewport make_viewport(const Field& field, const RenderStyle& style);

struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel

    Rgb at(int x, int y) const;
};

Image render_frame(const Frame& frame, const Field& field, const RenderStyle& style);
std::string render_svg(const Frame& frame, const Field& field, const RenderStyle& style);

/// Binary PPM (P6).
std::string encode_ppm(const Image& image);

enum class ImageFormat : std::uint8_t { Ppm, Svg };

/// Writes every `stride`-th frame as frame_<index>.<ext> under `out_dir`.
std::vector<std::filesystem::path> render_frames(const std::vector<Frame>& frames,
                                                 const std::filesystem::path& out_dir, const Field& field,
                                                 const RenderStyle& style, int stride = 1,
                                                 ImageFormat format = ImageFormat::Ppm);

/// Renders every `stride`-th frame of a trajectory log into `out_dir` as
/// frame_000000.ppm, frame_000005.ppm, ... Returns the written paths.
std::vector<std::filesystem::path> render_episode(const std::filesystem::path& log_path,
                                                  const std::filesystem::path& out_dir, const Field& field,
                                                  const RenderStyle& style, int stride = 1,
                                                  ImageFormat format = ImageFormat::Ppm);

}  // namespace rsoccer

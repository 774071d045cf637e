// SPDX-License-Identifier: Apache-2.0
#include "rsoccer/renderer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace rsoccer {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
// Seconds of travel drawn for a velocity vector.
constexpr double kVelocityHorizon = 0.25;

double center_circle_radius(const Field& field) { return field.league == League::SSL ? 0.5 : 0.2; }

// 3x5 digit glyphs, one row per 3 low bits, top row first.
constexpr std::uint8_t kDigits[10][5] = {
    {7, 5, 5, 5, 7}, {2, 6, 2, 2, 7}, {7, 1, 7, 4, 7}, {7, 1, 7, 1, 7}, {5, 5, 7, 1, 1},
    {7, 4, 7, 1, 7}, {7, 4, 7, 5, 7}, {7, 1, 1, 1, 1}, {7, 5, 7, 5, 7}, {7, 5, 7, 1, 7},
};

class Canvas {
public:
    explicit Canvas(Image& image) : img_(image) {}

    void fill(Rgb c) {
        for (int y = 0; y < img_.height; ++y) {
            for (int x = 0; x < img_.width; ++x) put(x, y, c);
        }
    }

    void fill_rect(double x0, double y0, double x1, double y1, Rgb c) {
        const int xa = clamp_x(std::lround(std::min(x0, x1)));
        const int xb = clamp_x(std::lround(std::max(x0, x1)));
        const int ya = clamp_y(std::lround(std::min(y0, y1)));
        const int yb = clamp_y(std::lround(std::max(y0, y1)));
        for (int y = ya; y < yb; ++y) {
            for (int x = xa; x < xb; ++x) put(x, y, c);
        }
    }

    void disc(double cx, double cy, double r, Rgb c) { ring(cx, cy, 0.0, r, c); }

    void circle(double cx, double cy, double r, double thickness, Rgb c) {
        ring(cx, cy, r - thickness / 2.0, r + thickness / 2.0, c);
    }

    void line(double x0, double y0, double x1, double y1, double thickness, Rgb c) {
        const double half = std::max(thickness / 2.0, 0.5);
        const int xa = clamp_x(static_cast<long>(std::floor(std::min(x0, x1) - half)));
        const int xb = clamp_x(static_cast<long>(std::ceil(std::max(x0, x1) + half)));
        const int ya = clamp_y(static_cast<long>(std::floor(std::min(y0, y1) - half)));
        const int yb = clamp_y(static_cast<long>(std::ceil(std::max(y0, y1) + half)));
        const double dx = x1 - x0;
        const double dy = y1 - y0;
        const double len2 = dx * dx + dy * dy;
        for (int y = ya; y < yb; ++y) {
            for (int x = xa; x < xb; ++x) {
                const double px = x + 0.5;
                const double py = y + 0.5;
                double t = len2 > 0.0 ? ((px - x0) * dx + (py - y0) * dy) / len2 : 0.0;
                t = std::clamp(t, 0.0, 1.0);
                if (std::hypot(px - (x0 + t * dx), py - (y0 + t * dy)) <= half) put(x, y, c);
            }
        }
    }

    void rect_outline(double x0, double y0, double x1, double y1, double t, Rgb c) {
        line(x0, y0, x1, y0, t, c);
        line(x1, y0, x1, y1, t, c);
        line(x1, y1, x0, y1, t, c);
        line(x0, y1, x0, y0, t, c);
    }

    void number(int value, double x, double y, int cell, Rgb c) {
        const std::string digits = std::to_string(value);
        for (std::size_t i = 0; i < digits.size(); ++i) {
            const auto& glyph = kDigits[digits[i] - '0'];
            const double gx = x + static_cast<double>(i) * 4.0 * cell;
            for (int row = 0; row < 5; ++row) {
                for (int col = 0; col < 3; ++col) {
                    if (glyph[row] & (4 >> col)) {
                        fill_rect(gx + col * cell, y + row * cell, gx + (col + 1) * cell, y + (row + 1) * cell, c);
                    }
                }
            }
        }
    }

private:
    void ring(double cx, double cy, double r_in, double r_out, Rgb c) {
        const int xa = clamp_x(static_cast<long>(std::floor(cx - r_out)));
        const int xb = clamp_x(static_cast<long>(std::ceil(cx + r_out)));
        const int ya = clamp_y(static_cast<long>(std::floor(cy - r_out)));
        const int yb = clamp_y(static_cast<long>(std::ceil(cy + r_out)));
        for (int y = ya; y < yb; ++y) {
            for (int x = xa; x < xb; ++x) {
                const double d = std::hypot(x + 0.5 - cx, y + 0.5 - cy);
                if (d <= r_out && d >= r_in) put(x, y, c);
            }
        }
    }

    int clamp_x(long v) const { return static_cast<int>(std::clamp<long>(v, 0, img_.width)); }
    int clamp_y(long v) const { return static_cast<int>(std::clamp<long>(v, 0, img_.height)); }

    void put(int x, int y, Rgb c) {
        const std::size_t i = (static_cast<std::size_t>(y) * img_.width + x) * 3;
        img_.rgb[i] = c.r;
        img_.rgb[i + 1] = c.g;
        img_.rgb[i + 2] = c.b;
    }

    Image& img_;
};

std::string hex(Rgb c) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
    return buf;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

Viewport make_viewport(const Field& field, const RenderStyle& style) {
    if (style.width <= 0) throw StyleError("render width must be positive");
    field.validate();
    const double pad = 0.02 * field.length;
    Viewport v;
    v.half_extent_x = field.half_length() + std::max(field.boundary_margin, field.goal_depth) + pad;
    v.half_extent_y = field.half_width() + field.boundary_margin + pad;
    v.width = style.width;
    v.scale = v.width / (2.0 * v.half_extent_x);
    v.height = static_cast<int>(std::lround(2.0 * v.half_extent_y * v.scale));
    if (v.height <= 0) throw StyleError("render width too small for the field aspect ratio");
    return v;
}

Rgb Image::at(int x, int y) const {
    const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
    return {rgb.at(i), rgb.at(i + 1), rgb.at(i + 2)};
}

Image render_frame(const Frame& frame, const Field& field, const RenderStyle& style) {
    const Viewport v = make_viewport(field, style);
    Image img;
    img.width = v.width;
    img.height = v.height;
    img.rgb.assign(static_cast<std::size_t>(img.width) * img.height * 3, 0);
    Canvas cv(img);
    const double t = std::max(1.0, 0.01 * v.scale);
    const double hl = field.half_length();
    const double hw = field.half_width();
    const double m = field.boundary_margin;

    cv.fill(style.background);
    cv.fill_rect(v.px(-hl - m), v.py(hw + m), v.px(hl + m), v.py(-hw - m), style.grass);
    cv.rect_outline(v.px(-hl), v.py(hw), v.px(hl), v.py(-hw), t, style.lines);
    cv.line(v.px(0.0), v.py(hw), v.px(0.0), v.py(-hw), t, style.lines);
    cv.circle(v.px(0.0), v.py(0.0), center_circle_radius(field) * v.scale, t, style.lines);
    for (double side : {-1.0, 1.0}) {
        const double line_x = side * hl;
        const double pen_x = side * (hl - field.penalty_length);
        cv.rect_outline(v.px(line_x), v.py(field.penalty_width / 2.0), v.px(pen_x), v.py(-field.penalty_width / 2.0),
                        t, style.lines);
        const double back = side * (hl + field.goal_depth);
        cv.rect_outline(v.px(line_x), v.py(field.goal_width / 2.0), v.px(back), v.py(-field.goal_width / 2.0),
                        2.0 * t, side > 0 ? style.yellow : style.blue);
    }

    const double rr = field.robot_radius * v.scale;
    for (const auto* team : {&frame.robots_blue, &frame.robots_yellow}) {
        for (const auto& [id, r] : *team) {
            const Rgb color = r.team == TeamColor::Blue ? style.blue : style.yellow;
            const double cx = v.px(r.x);
            const double cy = v.py(r.y);
            cv.disc(cx, cy, rr, color);
            const double h = r.theta * kDegToRad;
            cv.line(cx, cy, v.px(r.x + field.robot_radius * std::cos(h)), v.py(r.y + field.robot_radius * std::sin(h)),
                    std::max(1.0, rr / 4.0), style.heading);
            if (style.show_velocities) {
                cv.line(cx, cy, v.px(r.x + r.vx * kVelocityHorizon), v.py(r.y + r.vy * kVelocityHorizon), t,
                        style.lines);
            }
            if (style.show_ids) {
                const int cell = std::max(1, static_cast<int>(rr / 4.0));
                cv.number(id, cx + rr, cy - rr - 5 * cell, cell, style.lines);
            }
        }
    }

    const double bx = v.px(frame.ball.x);
    const double by = v.py(frame.ball.y);
    cv.disc(bx, by, std::max(2.0, field.ball_radius * v.scale), style.ball);
    if (style.show_velocities) {
        cv.line(bx, by, v.px(frame.ball.x + frame.ball.vx * kVelocityHorizon),
                v.py(frame.ball.y + frame.ball.vy * kVelocityHorizon), t, style.ball);
    }
    return img;
}

std::string render_svg(const Frame& frame, const Field& field, const RenderStyle& style) {
    const Viewport v = make_viewport(field, style);
    const double t = std::max(1.0, 0.01 * v.scale);
    const double hl = field.half_length();
    const double hw = field.half_width();
    const double m = field.boundary_margin;
    std::string s;
    auto rect = [&](double x0, double y0, double x1, double y1, const std::string& attrs) {
        s += "<rect x=\"" + num(v.px(std::min(x0, x1))) + "\" y=\"" + num(v.py(std::max(y0, y1))) + "\" width=\"" +
             num(std::abs(x1 - x0) * v.scale) + "\" height=\"" + num(std::abs(y1 - y0) * v.scale) + "\" " + attrs +
             "/>\n";
    };
    auto line = [&](double x0, double y0, double x1, double y1, double width, Rgb c) {
        s += "<line x1=\"" + num(v.px(x0)) + "\" y1=\"" + num(v.py(y0)) + "\" x2=\"" + num(v.px(x1)) + "\" y2=\"" +
             num(v.py(y1)) + "\" stroke=\"" + hex(c) + "\" stroke-width=\"" + num(width) + "\"/>\n";
    };
    auto circle = [&](double x, double y, double r, const std::string& attrs) {
        s += "<circle cx=\"" + num(v.px(x)) + "\" cy=\"" + num(v.py(y)) + "\" r=\"" + num(r) + "\" " + attrs + "/>\n";
    };
    const std::string stroke = "fill=\"none\" stroke=\"" + hex(style.lines) + "\" stroke-width=\"" + num(t) + "\"";

    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(v.width) + "\" height=\"" +
         std::to_string(v.height) + "\" viewBox=\"0 0 " + std::to_string(v.width) + " " + std::to_string(v.height) +
         "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"" + hex(style.background) + "\"/>\n";
    rect(-hl - m, -hw - m, hl + m, hw + m, "fill=\"" + hex(style.grass) + "\"");
    rect(-hl, -hw, hl, hw, stroke);
    line(0.0, hw, 0.0, -hw, t, style.lines);
    circle(0.0, 0.0, center_circle_radius(field) * v.scale, stroke);
    for (double side : {-1.0, 1.0}) {
        rect(side * hl, -field.penalty_width / 2.0, side * (hl - field.penalty_length), field.penalty_width / 2.0,
             stroke);
        rect(side * hl, -field.goal_width / 2.0, side * (hl + field.goal_depth), field.goal_width / 2.0,
             "fill=\"none\" stroke=\"" + hex(side > 0 ? style.yellow : style.blue) + "\" stroke-width=\"" +
                 num(2.0 * t) + "\"");
    }
    for (const auto* team : {&frame.robots_blue, &frame.robots_yellow}) {
        for (const auto& [id, r] : *team) {
            const Rgb color = r.team == TeamColor::Blue ? style.blue : style.yellow;
            circle(r.x, r.y, field.robot_radius * v.scale, "fill=\"" + hex(color) + "\"");
            const double h = r.theta * kDegToRad;
            line(r.x, r.y, r.x + field.robot_radius * std::cos(h), r.y + field.robot_radius * std::sin(h),
                 std::max(1.0, field.robot_radius * v.scale / 4.0), style.heading);
            if (style.show_velocities) {
                line(r.x, r.y, r.x + r.vx * kVelocityHorizon, r.y + r.vy * kVelocityHorizon, t, style.lines);
            }
            if (style.show_ids) {
                s += "<text x=\"" + num(v.px(r.x + field.robot_radius)) + "\" y=\"" +
                     num(v.py(r.y + field.robot_radius)) + "\" fill=\"" + hex(style.lines) +
                     "\" font-family=\"monospace\" font-size=\"" + num(field.robot_radius * v.scale) + "\">" +
                     std::to_string(id) + "</text>\n";
            }
        }
    }
    circle(frame.ball.x, frame.ball.y, std::max(2.0, field.ball_radius * v.scale), "fill=\"" + hex(style.ball) + "\"");
    if (style.show_velocities) {
        line(frame.ball.x, frame.ball.y, frame.ball.x + frame.ball.vx * kVelocityHorizon,
             frame.ball.y + frame.ball.vy * kVelocityHorizon, t, style.ball);
    }
    s += "</svg>\n";
    return s;
}

std::string encode_ppm(const Image& image) {
    std::string out = "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
    out.append(reinterpret_cast<const char*>(image.rgb.data()), image.rgb.size());
    return out;
}

std::vector<std::filesystem::path> render_frames(const std::vector<Frame>& frames,
                                                 const std::filesystem::path& out_dir, const Field& field,
                                                 const RenderStyle& style, int stride, ImageFormat format) {
    if (stride < 1) throw StyleError("stride must be >= 1");
    make_viewport(field, style);
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    const char* ext = format == ImageFormat::Ppm ? ".ppm" : ".svg";
    for (std::size_t i = 0; i < frames.size(); i += static_cast<std::size_t>(stride)) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%06zu%s", i, ext);
        const std::filesystem::path path = out_dir / name;
        const std::string bytes = format == ImageFormat::Ppm ? encode_ppm(render_frame(frames[i], field, style))
                                                             : render_svg(frames[i], field, style);
        std::ofstream out(path, std::ios::binary);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw std::runtime_error("cannot write " + path.string());
        written.push_back(path);
    }
    return written;
}

std::vector<std::filesystem::path> render_episode(const std::filesystem::path& log_path,
                                                  const std::filesystem::path& out_dir, const Field& field,
                                                  const RenderStyle& style, int stride, ImageFormat format) {
    if (stride < 1) throw StyleError("stride must be >= 1");
    make_viewport(field, style);
    return render_frames(read_trajectory_log(log_path), out_dir, field, style, stride, format);
}

}  // namespace rsoccer

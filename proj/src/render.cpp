#include "aquanim/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "json.hpp"

#include "aquanim/error.hpp"

namespace aquanim {

void RenderConfig::validate() const {
    if (fps <= 0) throw Error(ErrorCode::ValidationError, "fps must be a positive integer");
    if (!(duration > 0.0) || !std::isfinite(duration)) {
        throw Error(ErrorCode::ValidationError, "duration must be positive");
    }
    if (fps * duration < 2.0) {
        throw Error(ErrorCode::ValidationError,
                    "fps * duration must be at least 2 so both endpoints are rendered");
    }
    if (width <= 0 || height <= 0) {
        throw Error(ErrorCode::ValidationError, "output width and height must be positive");
    }
    if (precision < 0 || precision > 15) {
        throw Error(ErrorCode::ValidationError, "precision must lie in [0, 15]");
    }
}

std::size_t RenderConfig::frame_count() const {
    return static_cast<std::size_t>(std::llround(fps * duration)) + 1;
}

std::vector<Frame> sample_frames(const TransitionScript& script, const RenderConfig& cfg) {
    cfg.validate();
    const std::size_t n = cfg.frame_count();
    std::vector<Frame> frames;
    frames.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = i + 1 == n ? 1.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        frames.push_back(evaluate(script, TimeParam(t)));
    }
    return frames;
}

std::string format_number(double value, int precision) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, precision);
    std::string s(buf, res.ptr);
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    if (s == "-0") s = "0";
    return s;
}

PixelMap PixelMap::fit(const Rect& viewport, int width, int height) {
    PixelMap m;
    const double vw = viewport.width();
    const double vh = viewport.height();
    m.scale = std::min(width / vw, height / vh);
    m.offset_x = 0.5 * (width - vw * m.scale);
    m.offset_y = 0.5 * (height - vh * m.scale);
    m.view_x_min = viewport.x_min;
    m.view_y_max = viewport.y_max;
    return m;
}

Point PixelMap::to_pixel(Point p) const {
    return {offset_x + (p.x - view_x_min) * scale, offset_y + (view_y_max - p.y) * scale};
}

Rect PixelMap::to_pixel(const Rect& r) const {
    const Point lo = to_pixel(Point{r.x_min, r.y_max});
    const Point hi = to_pixel(Point{r.x_max, r.y_min});
    return {lo.x, hi.x, lo.y, hi.y};
}

namespace {

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct SvgWriter {
    const RenderConfig& cfg;
    std::string out;

    std::string num(double v) const { return format_number(v, cfg.precision); }

    void attr(const char* name, double v) {
        out += ' ';
        out += name;
        out += "=\"";
        out += num(v);
        out += '"';
    }
    void attr(const char* name, std::string_view v) {
        out += ' ';
        out += name;
        out += "=\"";
        out += xml_escape(v);
        out += '"';
    }

    void open_document() {
        out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out += "<svg xmlns=\"http://www.w3.org/2000/svg\"";
        attr("width", cfg.width);
        attr("height", cfg.height);
        out += " viewBox=\"0 0 " + num(cfg.width) + ' ' + num(cfg.height) + "\">\n";
        out += "<rect x=\"0\" y=\"0\"";
        attr("width", cfg.width);
        attr("height", cfg.height);
        out += " fill=\"#FFFFFFFF\"/>\n";
    }

    void frame_body(const Frame& frame, const std::string& clip_id) {
        if (frame.primitives.empty()) return;
        const PixelMap map = PixelMap::fit(frame.viewport, cfg.width, cfg.height);
        const Rect clip = map.to_pixel(frame.viewport);
        out += "<defs><clipPath";
        attr("id", clip_id);
        out += "><rect";
        attr("x", clip.x_min);
        attr("y", clip.y_min);
        attr("width", clip.width());
        attr("height", clip.height());
        out += "/></clipPath></defs>\n<g clip-path=\"url(#" + clip_id + ")\">\n";
        const double font = 0.035 * std::max(frame.viewport.width(), frame.viewport.height()) * map.scale;
        for (const auto& p : frame.primitives) {
            switch (p.kind) {
                case PrimitiveKind::FilledRect:
                case PrimitiveKind::StrokedRect: {
                    const Rect r = map.to_pixel(p.rect);
                    out += "<rect";
                    attr("x", r.x_min);
                    attr("y", r.y_min);
                    attr("width", r.width());
                    attr("height", r.height());
                    attr("fill", p.kind == PrimitiveKind::FilledRect ? p.fill.to_hex()
                                                                      : Color::transparent().to_hex());
                    attr("stroke", p.stroke.to_hex());
                    attr("stroke-width", p.stroke_width * map.scale);
                    out += "/>\n";
                    break;
                }
                case PrimitiveKind::Line: {
                    const Point a = map.to_pixel(p.p0);
                    const Point b = map.to_pixel(p.p1);
                    out += "<line";
                    attr("x1", a.x);
                    attr("y1", a.y);
                    attr("x2", b.x);
                    attr("y2", b.y);
                    attr("stroke", p.stroke.to_hex());
                    attr("stroke-width", p.stroke_width * map.scale);
                    out += "/>\n";
                    break;
                }
                case PrimitiveKind::Label: {
                    const Point a = map.to_pixel(p.p0);
                    out += "<text";
                    attr("x", a.x);
                    attr("y", a.y);
                    attr("font-size", font);
                    out += " font-family=\"sans-serif\" text-anchor=\"middle\" dominant-baseline=\"middle\"";
                    attr("fill", p.fill.to_hex());
                    out += '>';
                    out += xml_escape(p.text);
                    out += "</text>\n";
                    break;
                }
            }
        }
        out += "</g>\n";
    }
};

void json_number(std::string& out, const char* key, double v, int precision) {
    out += '"';
    out += key;
    out += "\":";
    out += format_number(v, precision);
}

void json_string(std::string& out, const char* key, const std::string& v) {
    out += '"';
    out += key;
    out += "\":";
    out += nlohmann::json(v).dump();
}

std::string keyframe_line(const Frame& frame, int precision) {
    std::string out = "{\"viewport\":{";
    json_number(out, "x_min", frame.viewport.x_min, precision);
    out += ',';
    json_number(out, "x_max", frame.viewport.x_max, precision);
    out += ',';
    json_number(out, "y_min", frame.viewport.y_min, precision);
    out += ',';
    json_number(out, "y_max", frame.viewport.y_max, precision);
    out += "},\"primitives\":[";
    bool first = true;
    for (const auto& p : frame.primitives) {
        if (!first) out += ',';
        first = false;
        switch (p.kind) {
            case PrimitiveKind::FilledRect:
            case PrimitiveKind::StrokedRect:
                out += "{\"kind\":\"rect\",";
                json_number(out, "x", p.rect.x_min, precision);
                out += ',';
                json_number(out, "y", p.rect.y_min, precision);
                out += ',';
                json_number(out, "w", p.rect.width(), precision);
                out += ',';
                json_number(out, "h", p.rect.height(), precision);
                out += ',';
                json_string(out, "fill",
                            p.kind == PrimitiveKind::FilledRect ? p.fill.to_hex()
                                                                : Color::transparent().to_hex());
                out += ',';
                json_string(out, "stroke", p.stroke.to_hex());
                out += ',';
                json_number(out, "stroke_width", p.stroke_width, precision);
                out += '}';
                break;
            case PrimitiveKind::Line:
                out += "{\"kind\":\"line\",";
                json_number(out, "x1", p.p0.x, precision);
                out += ',';
                json_number(out, "y1", p.p0.y, precision);
                out += ',';
                json_number(out, "x2", p.p1.x, precision);
                out += ',';
                json_number(out, "y2", p.p1.y, precision);
                out += ',';
                json_string(out, "stroke", p.stroke.to_hex());
                out += ',';
                json_number(out, "stroke_width", p.stroke_width, precision);
                out += '}';
                break;
            case PrimitiveKind::Label:
                out += "{\"kind\":\"text\",";
                json_number(out, "x", p.p0.x, precision);
                out += ',';
                json_number(out, "y", p.p0.y, precision);
                out += ',';
                json_string(out, "text", p.text);
                out += ',';
                json_string(out, "fill", p.fill.to_hex());
                out += '}';
                break;
        }
    }
    out += "]}";
    return out;
}

void require_frames(std::span<const Frame> frames) {
    if (frames.size() < 2) {
        throw Error(ErrorCode::ValidationError, "an animation needs at least 2 frames");
    }
}

}  // namespace

std::string emit_svg(const Frame& frame, const RenderConfig& cfg) {
    SvgWriter w{cfg, {}};
    w.open_document();
    w.frame_body(frame, "view");
    w.out += "</svg>\n";
    return w.out;
}

std::string emit_animated_svg(std::span<const Frame> frames, const RenderConfig& cfg) {
    require_frames(frames);
    SvgWriter w{cfg, {}};
    w.open_document();
    const double step = 1.0 / cfg.fps;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        const bool last = i + 1 == frames.size();
        w.out += "<g visibility=\"hidden\">\n<set attributeName=\"visibility\" to=\"visible\"";
        w.out += " begin=\"" + w.num(static_cast<double>(i) * step) + "s\"";
        if (last) {
            w.out += " fill=\"freeze\"/>\n";
        } else {
            w.out += " dur=\"" + w.num(step) + "s\"/>\n";
        }
        w.frame_body(frames[i], "view" + std::to_string(i));
        w.out += "</g>\n";
    }
    w.out += "</svg>\n";
    return w.out;
}

std::string emit_keyframes_doc(std::span<const Frame> frames, const RenderConfig& cfg) {
    require_frames(frames);
    std::string out = "{\"version\":1,\"fps\":" + std::to_string(cfg.fps) +
                      ",\"width\":" + std::to_string(cfg.width) +
                      ",\"height\":" + std::to_string(cfg.height) + ",\"frames\":[\n";
    for (std::size_t i = 0; i < frames.size(); ++i) {
        out += keyframe_line(frames[i], cfg.precision);
        out += i + 1 == frames.size() ? "\n" : ",\n";
    }
    out += "]}\n";
    return out;
}

}  // namespace aquanim

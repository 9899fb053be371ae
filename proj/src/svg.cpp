#include "unitsecant/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace unitsecant {

void SvgOptions::validate() const {
    if (width <= 0 || height <= 0) throw Error("svg: width and height must be positive");
    if (samples < 16) throw Error("svg: samples must be at least 16");
    if (!(margin >= 0.0) || 2.0 * margin >= std::min(width, height)) {
        throw Error("svg: margin must be non-negative and smaller than half the canvas");
    }
}

namespace {

struct Bounds {
    double min_x = std::numeric_limits<double>::infinity();
    double max_x = -std::numeric_limits<double>::infinity();
    double min_y = std::numeric_limits<double>::infinity();
    double max_y = -std::numeric_limits<double>::infinity();

    void add(double x, double y) {
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
    }
    double span() const { return std::max(max_x - min_x, max_y - min_y); }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    // avoid "-0.000"
    if (std::string_view(buf) == "-0.000") return "0.000";
    return buf;
}

std::string escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const Curve& curve, const TangentReport& report, double t_min, double t_max,
                       const SvgOptions& options) {
    options.validate();
    if (!(t_min < t_max)) throw Error("svg: empty parameter range");

    // Polyline pieces, split wherever the curve is not evaluable.
    std::vector<std::vector<Vec3>> pieces(1);
    Bounds bounds;
    for (int i = 0; i < options.samples; ++i) {
        const double t = i == options.samples - 1
                             ? t_max
                             : t_min + (t_max - t_min) * i / (options.samples - 1);
        try {
            const Vec3 p = point_at(curve, t);
            pieces.back().push_back(p);
            bounds.add(p.x, p.y);
        } catch (const DomainError&) {
            if (!pieces.back().empty()) pieces.emplace_back();
        }
    }
    std::erase_if(pieces, [](const auto& piece) { return piece.size() < 2; });

    const Vec3& a = report.point;
    const bool have_point = std::isfinite(a.x) && std::isfinite(a.y);
    if (have_point) bounds.add(a.x, a.y);
    if (!std::isfinite(bounds.min_x)) bounds.add(0.0, 0.0);

    std::optional<std::pair<Vec3, Vec3>> segment;
    if (report.verdict == Verdict::Tangent && report.direction && have_point) {
        const double half = 0.25 * std::max(bounds.span(), 1e-9);
        segment = std::make_pair(a - *report.direction * half, a + *report.direction * half);
        bounds.add(segment->first.x, segment->first.y);
        bounds.add(segment->second.x, segment->second.y);
    }

    double span_x = bounds.max_x - bounds.min_x;
    double span_y = bounds.max_y - bounds.min_y;
    if (span_x <= 0.0 && span_y <= 0.0) span_x = span_y = 1.0;
    const double usable_w = options.width - 2.0 * options.margin;
    const double usable_h = options.height - 2.0 * options.margin;
    const double scale = std::min(span_x > 0.0 ? usable_w / span_x : std::numeric_limits<double>::infinity(),
                                  span_y > 0.0 ? usable_h / span_y : std::numeric_limits<double>::infinity());
    const double cx = 0.5 * (bounds.min_x + bounds.max_x);
    const double cy = 0.5 * (bounds.min_y + bounds.max_y);
    auto sx = [&](double x) { return num(0.5 * options.width + (x - cx) * scale); };
    auto sy = [&](double y) { return num(0.5 * options.height - (y - cy) * scale); };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(options.width) +
           "\" height=\"" + std::to_string(options.height) + "\" viewBox=\"0 0 " +
           std::to_string(options.width) + " " + std::to_string(options.height) + "\">\n";
    out += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& piece : pieces) {
        out += "  <polyline class=\"curve\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < piece.size(); ++i) {
            if (i) out += ' ';
            out += sx(piece[i].x) + "," + sy(piece[i].y);
        }
        out += "\"/>\n";
    }
    if (segment) {
        out += "  <line class=\"tangent\" x1=\"" + sx(segment->first.x) + "\" y1=\"" +
               sy(segment->first.y) + "\" x2=\"" + sx(segment->second.x) + "\" y2=\"" +
               sy(segment->second.y) + "\" stroke=\"crimson\" stroke-width=\"1.5\"/>\n";
    }
    if (have_point) {
        out += "  <circle class=\"point\" cx=\"" + sx(a.x) + "\" cy=\"" + sy(a.y) +
               "\" r=\"4\" fill=\"royalblue\"/>\n";
        if (report.verdict != Verdict::Tangent) {
            std::string label = std::string(to_string(report.verdict));
            if (report.verdict == Verdict::Corner) label = "corner: no tangent";
            out += "  <text class=\"annotation\" x=\"" + sx(a.x) + "\" y=\"" + sy(a.y) +
                   "\" dx=\"8\" dy=\"-8\" font-family=\"sans-serif\" font-size=\"12\">" +
                   escape(label) + "</text>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

}  // namespace unitsecant

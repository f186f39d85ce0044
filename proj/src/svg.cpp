#include "pdp/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "pdp/json_io.hpp"

namespace pdp {

namespace {

constexpr int kCanvas = 840;
constexpr int kMargin = 60;

const char* kPalette[] = {"#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
                          "#e377c2", "#17becf", "#bcbd22", "#7f7f7f", "#aec7e8"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

std::string render_svg(const PlanSolution& solution, const ProblemInstance& instance) {
    double min_x = instance.depot.x, max_x = instance.depot.x;
    double min_y = instance.depot.y, max_y = instance.depot.y;
    for (const auto& d : instance.deliveries) {
        min_x = std::min(min_x, d.location.x);
        max_x = std::max(max_x, d.location.x);
        min_y = std::min(min_y, d.location.y);
        max_y = std::max(max_y, d.location.y);
    }
    const double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
    const double scale = (kCanvas - 2.0 * kMargin) / span;
    auto px = [&](double x) { return kMargin + (x - min_x) * scale; };
    // svg y grows downward
    auto py = [&](double y) { return kCanvas - kMargin - (y - min_y) * scale; };
    auto locate = [&](int location_id) -> Location {
        if (location_id == 0) return instance.depot;
        return instance.deliveries[static_cast<std::size_t>(location_id - 1)].location;
    };

    std::ostringstream svg;
    const int legend_height = 28 + 22 * static_cast<int>(solution.routes.size());
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\""
        << kCanvas + legend_height << "\" viewBox=\"0 0 " << kCanvas << " "
        << kCanvas + legend_height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (std::size_t r = 0; r < solution.routes.size(); ++r) {
        const auto& route = solution.routes[r];
        const char* color = kPalette[r % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"2.5\" opacity=\"0.85\" points=\"";
        for (std::size_t k = 0; k < route.visits.size(); ++k) {
            const Location loc = locate(route.visits[k].location_id);
            if (k > 0) svg << " ";
            svg << fmt(px(loc.x)) << "," << fmt(py(loc.y));
        }
        svg << "\"/>\n";
    }

    for (const auto& d : instance.deliveries) {
        const double x = px(d.location.x);
        const double y = py(d.location.y);
        if (d.is_top_priority()) {
            svg << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y)
                << "\" r=\"11\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2.5\"/>\n";
        }
        svg << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y)
            << "\" r=\"5\" fill=\"#333333\"/>\n";
        svg << "<text x=\"" << fmt(x + 8) << "\" y=\"" << fmt(y - 8)
            << "\" font-size=\"12\" font-family=\"sans-serif\" fill=\"#333333\">" << d.id
            << "</text>\n";
    }

    const double dx = px(instance.depot.x);
    const double dy = py(instance.depot.y);
    svg << "<rect x=\"" << fmt(dx - 7) << "\" y=\"" << fmt(dy - 7)
        << "\" width=\"14\" height=\"14\" fill=\"black\"/>\n";
    svg << "<text x=\"" << fmt(dx + 10) << "\" y=\"" << fmt(dy + 5)
        << "\" font-size=\"13\" font-family=\"sans-serif\" font-weight=\"bold\">depot</text>\n";

    int ly = kCanvas + 18;
    for (std::size_t r = 0; r < solution.routes.size(); ++r) {
        const auto& route = solution.routes[r];
        const char* color = kPalette[r % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg << "<line x1=\"" << kMargin << "\" y1=\"" << ly << "\" x2=\"" << kMargin + 36
            << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"3\"/>\n";
        svg << "<text x=\"" << kMargin + 44 << "\" y=\"" << ly + 4
            << "\" font-size=\"13\" font-family=\"sans-serif\">truck " << route.truck_id
            << ": distance " << fmt(route.total_distance) << ", "
            << route.deliveries_served() << " deliveries</text>\n";
        ly += 22;
    }

    svg << "</svg>\n";
    return svg.str();
}

void emit_svg(const PlanSolution& solution, const ProblemInstance& instance,
              const std::string& path) {
    write_text_file(path, render_svg(solution, instance));
}

}  // namespace pdp

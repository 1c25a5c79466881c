#include "hclust/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace hclust::svg {

namespace {

constexpr std::array<const char*, 10> palette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                                 "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#393b79"};
constexpr const char* gray = "#b0b0b0";
constexpr double panel = 400.0;
constexpr double margin = 20.0;

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

// Maps a square data window [-extent, extent]^2 around `center` into a panel.
struct Frame {
    double offset_x, cx, cy, extent;
    double x(double v) const { return offset_x + margin + (v - cx + extent) / (2 * extent) * (panel - 2 * margin); }
    double y(double v) const { return margin + (cy + extent - v) / (2 * extent) * (panel - 2 * margin); }
};

void header(std::ostringstream& out, double width, double height) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
        << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

// Draw order: unclustered first so cluster colors stay visible.
std::vector<std::size_t> draw_order(const std::vector<int>& labels) {
    std::vector<std::size_t> order(labels.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return (labels[a] == unclustered) > (labels[b] == unclustered);
    });
    return order;
}

void scatter_panel(std::ostringstream& out, const Frame& f, const std::vector<std::array<double, 2>>& pts,
                   const std::vector<int>& labels, const std::vector<std::array<double, 2>>& lines,
                   const std::string& caption) {
    out << "<g>\n<rect x=\"" << fmt(f.offset_x + margin / 2) << "\" y=\"" << fmt(margin / 2) << "\" width=\""
        << fmt(panel - margin) << "\" height=\"" << fmt(panel - margin)
        << "\" fill=\"none\" stroke=\"#dddddd\"/>\n";
    out << "<line x1=\"" << fmt(f.x(f.cx - f.extent)) << "\" y1=\"" << fmt(f.y(0)) << "\" x2=\""
        << fmt(f.x(f.cx + f.extent)) << "\" y2=\"" << fmt(f.y(0)) << "\" stroke=\"#eeeeee\"/>\n";
    out << "<line x1=\"" << fmt(f.x(0)) << "\" y1=\"" << fmt(f.y(f.cy - f.extent)) << "\" x2=\"" << fmt(f.x(0))
        << "\" y2=\"" << fmt(f.y(f.cy + f.extent)) << "\" stroke=\"#eeeeee\"/>\n";
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& d = lines[i];
        const double n = std::hypot(d[0], d[1]);
        if (n == 0) continue;
        const double s = f.extent / n;
        out << "<line x1=\"" << fmt(f.x(-s * d[0])) << "\" y1=\"" << fmt(f.y(-s * d[1])) << "\" x2=\""
            << fmt(f.x(s * d[0])) << "\" y2=\"" << fmt(f.y(s * d[1])) << "\" stroke=\"" << color(static_cast<int>(i))
            << "\" stroke-opacity=\"0.35\" stroke-dasharray=\"4 3\"/>\n";
    }
    for (std::size_t i : draw_order(labels))
        out << "<circle cx=\"" << fmt(f.x(pts[i][0])) << "\" cy=\"" << fmt(f.y(pts[i][1])) << "\" r=\"2.5\" fill=\""
            << color(labels[i]) << "\"/>\n";
    out << "<text x=\"" << fmt(f.offset_x + margin) << "\" y=\"" << fmt(panel - 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << caption << "</text>\n</g>\n";
}

}  // namespace

std::string color(int label) {
    if (label < 0) return gray;
    return palette[static_cast<std::size_t>(label) % palette.size()];
}

std::string embedding_plot(const Embedding& embedding, const std::vector<int>& labels,
                           const std::vector<std::vector<double>>& directions) {
    if (labels.size() != embedding.size()) throw std::invalid_argument("labels do not match the embedding");
    const std::size_t n = embedding.size();
    std::vector<std::array<std::size_t, 2>> views;
    if (embedding.dim >= 3)
        views = {{0, 1}, {0, 2}, {1, 2}};
    else
        views = {{0, 1}};

    double extent = 0.0;
    for (double x : embedding.coords) extent = std::max(extent, std::abs(x));
    if (extent == 0) extent = 1;
    extent *= 1.05;

    std::ostringstream out;
    header(out, panel * static_cast<double>(views.size()), panel);
    for (std::size_t v = 0; v < views.size(); ++v) {
        const auto [a, b] = views[v];
        std::vector<std::array<double, 2>> pts(n);
        Frame f{panel * static_cast<double>(v), 0.0, 0.0, extent};
        std::string caption;
        std::vector<std::array<double, 2>> lines;
        if (embedding.dim == 1) {
            // Value against index, index scaled into the window.
            for (std::size_t i = 0; i < n; ++i)
                pts[i] = {n > 1 ? -extent + 2 * extent * static_cast<double>(i) / static_cast<double>(n - 1) : 0.0,
                          embedding.coords[i]};
            caption = "psi_1 against simplex index";
        } else {
            for (std::size_t i = 0; i < n; ++i) pts[i] = {embedding.coords[i * embedding.dim + a], embedding.coords[i * embedding.dim + b]};
            for (const auto& d : directions)
                if (d.size() == embedding.dim) lines.push_back({d[a], d[b]});
            caption = "psi_" + std::to_string(a + 1) + " / psi_" + std::to_string(b + 1);
        }
        scatter_panel(out, f, pts, labels, lines, caption);
    }
    out << "</svg>\n";
    return out.str();
}

std::string complex_plot(const SimplicialComplex& complex, const PointCloud& coordinates, int p,
                         const std::vector<int>& labels) {
    if (labels.size() != complex.size(p)) throw std::invalid_argument("labels do not match K_p");
    const auto vertex_ids = complex.vertex_ids();
    for (Vertex v : vertex_ids)
        if (v >= coordinates.size()) throw std::invalid_argument("vertex id without coordinates");

    auto project = [&](Vertex v) -> std::array<double, 2> {
        const auto pt = coordinates.point(v);
        if (coordinates.dim == 1) return {pt[0], 0.0};
        if (coordinates.dim == 2) return {pt[0], pt[1]};
        return {pt[0] + 0.3 * pt[1], pt[2] + 0.3 * pt[1]};
    };

    double lo_x = 0, hi_x = 1, lo_y = 0, hi_y = 1;
    if (!vertex_ids.empty()) {
        lo_x = lo_y = std::numeric_limits<double>::infinity();
        hi_x = hi_y = -lo_x;
        for (Vertex v : vertex_ids) {
            const auto q = project(v);
            lo_x = std::min(lo_x, q[0]);
            hi_x = std::max(hi_x, q[0]);
            lo_y = std::min(lo_y, q[1]);
            hi_y = std::max(hi_y, q[1]);
        }
    }
    const double extent = std::max({(hi_x - lo_x) / 2, (hi_y - lo_y) / 2, 1e-9}) * 1.05;
    const Frame f{0.0, (lo_x + hi_x) / 2, (lo_y + hi_y) / 2, extent};

    std::ostringstream out;
    header(out, panel, panel);
    if (p > 0)
        for (Vertex v : vertex_ids) {
            const auto q = project(v);
            out << "<circle cx=\"" << fmt(f.x(q[0])) << "\" cy=\"" << fmt(f.y(q[1])) << "\" r=\"1\" fill=\"#888888\"/>\n";
        }
    for (std::size_t i : draw_order(labels)) {
        const auto s = complex.simplex(p, i);
        const std::string c = color(labels[i]);
        if (p == 0) {
            const auto q = project(s[0]);
            out << "<circle cx=\"" << fmt(f.x(q[0])) << "\" cy=\"" << fmt(f.y(q[1])) << "\" r=\"2.5\" fill=\"" << c
                << "\"/>\n";
        } else if (p == 1) {
            const auto a = project(s[0]), b = project(s[1]);
            out << "<line x1=\"" << fmt(f.x(a[0])) << "\" y1=\"" << fmt(f.y(a[1])) << "\" x2=\"" << fmt(f.x(b[0]))
                << "\" y2=\"" << fmt(f.y(b[1])) << "\" stroke=\"" << c << "\" stroke-width=\"1\"/>\n";
        } else {
            out << "<polygon points=\"";
            for (std::size_t k = 0; k < 3; ++k) {
                const auto q = project(s[k]);
                out << (k ? " " : "") << fmt(f.x(q[0])) << ',' << fmt(f.y(q[1]));
            }
            out << "\" fill=\"" << c << "\" fill-opacity=\"0.5\" stroke=\"none\"/>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace hclust::svg

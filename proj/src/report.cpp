#include "ordeval/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "ordeval/errors.hpp"

namespace ordeval {

namespace {

// Fixed-format numbers keep the markup byte-stable across runs.
std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string num(double v, int decimals = 4) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
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

struct Side {
    double origin;  // axis start x
    int sign;       // +1 grows right, -1 grows left
};

void render_cell(std::ostream& svg, const ReinforcementCell& cell, const Side& side, double row_top,
                 int axis_px) {
    const double bar_y = row_top + 36.0;
    const double bar_h = 16.0;
    const double box_mid = row_top + 18.0;
    const double box_h = 12.0;
    const char* dir = direction_name(cell.direction);

    const auto x_at = [&](double p) { return side.origin + side.sign * p * axis_px; };

    if (!cell.probability) {
        // Hollow placeholder: no estimate at this value.
        const double x0 = std::min(x_at(0.0), x_at(0.05));
        svg << "  <rect class=\"placeholder\" data-dir=\"" << dir << "\" data-value=\"" << cell.value
            << "\" x=\"" << px(x0) << "\" y=\"" << px(bar_y) << "\" width=\"" << px(0.05 * axis_px)
            << "\" height=\"" << px(bar_h)
            << "\" fill=\"none\" stroke=\"#9a9a9a\" stroke-dasharray=\"3,2\"/>\n";
        return;
    }

    const double p = *cell.probability;
    const double len = p * axis_px;
    const double x0 = std::min(x_at(0.0), x_at(p));
    svg << "  <rect class=\"bar " << (cell.direction == Direction::up ? "up" : "down")
        << (cell.significant ? " significant" : "") << "\" data-dir=\"" << dir << "\" data-value=\""
        << cell.value << "\" data-prob=\"" << num(p, 6) << "\" x=\"" << px(x0) << "\" y=\"" << px(bar_y)
        << "\" width=\"" << px(len) << "\" height=\"" << px(bar_h) << "\" fill=\""
        << (cell.significant ? "#b03030" : "#5b7fa6") << "\"/>\n";

    // Box-and-whiskers of the permutation null above the bar.
    const NullBox& nb = cell.null_box;
    const double w_lo = x_at(nb.q025);
    const double w_hi = x_at(nb.q975);
    svg << "  <line class=\"whisker\" data-dir=\"" << dir << "\" data-value=\"" << cell.value
        << "\" x1=\"" << px(w_lo) << "\" y1=\"" << px(box_mid) << "\" x2=\"" << px(w_hi) << "\" y2=\""
        << px(box_mid) << "\" stroke=\"#444444\"/>\n";
    for (const double q : {nb.q025, nb.q975}) {
        svg << "  <line x1=\"" << px(x_at(q)) << "\" y1=\"" << px(box_mid - 4.0) << "\" x2=\""
            << px(x_at(q)) << "\" y2=\"" << px(box_mid + 4.0) << "\" stroke=\"#444444\"/>\n";
    }
    const double bx0 = std::min(x_at(nb.q25), x_at(nb.q75));
    svg << "  <rect class=\"nullbox\" x=\"" << px(bx0) << "\" y=\"" << px(box_mid - box_h / 2)
        << "\" width=\"" << px(std::abs(x_at(nb.q75) - x_at(nb.q25))) << "\" height=\"" << px(box_h)
        << "\" fill=\"#e8e4d8\" stroke=\"#444444\"/>\n";
    svg << "  <line class=\"median\" x1=\"" << px(x_at(nb.median)) << "\" y1=\""
        << px(box_mid - box_h / 2) << "\" x2=\"" << px(x_at(nb.median)) << "\" y2=\""
        << px(box_mid + box_h / 2) << "\" stroke=\"#222222\"/>\n";
}

void render_axis(std::ostream& svg, const Side& side, double y, int axis_px) {
    svg << "  <line class=\"axis\" x1=\"" << px(side.origin) << "\" y1=\"" << px(y) << "\" x2=\""
        << px(side.origin + side.sign * axis_px) << "\" y2=\"" << px(y)
        << "\" stroke=\"#222222\"/>\n";
    for (const double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const double x = side.origin + side.sign * t * axis_px;
        svg << "  <line x1=\"" << px(x) << "\" y1=\"" << px(y) << "\" x2=\"" << px(x) << "\" y2=\""
            << px(y + 4.0) << "\" stroke=\"#222222\"/>\n";
        svg << "  <text x=\"" << px(x) << "\" y=\"" << px(y + 16.0)
            << "\" font-size=\"10\" text-anchor=\"middle\" fill=\"#222222\">" << num(t, 2)
            << "</text>\n";
    }
}

}  // namespace

std::string render_profile(const ReinforcementProfile& profile, const ProfilePlotOptions& options) {
    const int s = profile.scale.max_code;
    const int rows = s - 1;
    const double margin = 28.0;
    const double gutter = 56.0;
    const double header = 44.0;
    const double axis_zone = 26.0;
    const double legend_h = options.legend ? 40.0 : 0.0;
    const double width = 2 * margin + 2 * options.axis_px + gutter;
    const double height = header + rows * options.row_px + axis_zone + legend_h + 10.0;

    const Side down_side{margin + options.axis_px, -1};   // grows left
    const Side up_side{margin + options.axis_px + gutter, +1};  // grows right

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << px(width) << "\" height=\""
        << px(height) << "\" viewBox=\"0 0 " << px(width) << " " << px(height) << "\">\n";
    svg << "  <title>" << xml_escape(profile.attribute) << "</title>\n";
    svg << "  <text x=\"" << px(width / 2) << "\" y=\"18\" font-size=\"14\" text-anchor=\"middle\" "
        << "font-weight=\"bold\" fill=\"#111111\">" << xml_escape(profile.attribute) << "</text>\n";
    svg << "  <text x=\"" << px(down_side.origin - options.axis_px / 2.0)
        << "\" y=\"34\" font-size=\"11\" text-anchor=\"middle\" fill=\"#333333\">"
        << "downward reinforcement</text>\n";
    svg << "  <text x=\"" << px(up_side.origin + options.axis_px / 2.0)
        << "\" y=\"34\" font-size=\"11\" text-anchor=\"middle\" fill=\"#333333\">"
        << "upward reinforcement</text>\n";

    for (int v = s; v >= 2; --v) {
        const double row_top = header + (s - v) * options.row_px;
        svg << "  <text class=\"value-label\" x=\"" << px(margin + options.axis_px + gutter / 2)
            << "\" y=\"" << px(row_top + 46.0)
            << "\" font-size=\"13\" text-anchor=\"middle\" fill=\"#111111\">" << v << "</text>\n";
        render_cell(svg, profile.cell(Direction::down, v), down_side, row_top, options.axis_px);
        render_cell(svg, profile.cell(Direction::up, v), up_side, row_top, options.axis_px);
    }

    const double axis_y = header + rows * options.row_px + 4.0;
    render_axis(svg, down_side, axis_y, options.axis_px);
    render_axis(svg, up_side, axis_y, options.axis_px);

    if (options.legend) {
        const double ly = axis_y + 34.0;
        svg << "  <rect x=\"" << px(margin) << "\" y=\"" << px(ly - 9.0)
            << "\" width=\"12\" height=\"10\" fill=\"#b03030\"/>\n";
        svg << "  <text x=\"" << px(margin + 16.0) << "\" y=\"" << px(ly)
            << "\" font-size=\"10\" fill=\"#222222\">significant (bar beyond whiskers)</text>\n";
        svg << "  <rect x=\"" << px(margin + 190.0) << "\" y=\"" << px(ly - 9.0)
            << "\" width=\"12\" height=\"10\" fill=\"#5b7fa6\"/>\n";
        svg << "  <text x=\"" << px(margin + 206.0) << "\" y=\"" << px(ly)
            << "\" font-size=\"10\" fill=\"#222222\">within null range</text>\n";
        svg << "  <rect x=\"" << px(margin + 320.0) << "\" y=\"" << px(ly - 9.0)
            << "\" width=\"12\" height=\"10\" fill=\"none\" stroke=\"#9a9a9a\" "
            << "stroke-dasharray=\"3,2\"/>\n";
        svg << "  <text x=\"" << px(margin + 336.0) << "\" y=\"" << px(ly)
            << "\" font-size=\"10\" fill=\"#222222\">insufficient events; box = permutation null "
            << "(2.5-97.5%)</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

std::string render_ranking(const std::vector<AttributeScore>& ranked) {
    if (ranked.empty()) throw ValidationError("cannot render an empty ranking");

    const double margin = 30.0;
    const double label_w = 150.0;
    const double axis_px = 180.0;  // half axis for |score| = 1
    const double row_h = 26.0;
    const double header = 34.0;
    const double width = margin * 2 + label_w + 2 * axis_px;
    const double height = header + ranked.size() * row_h + 30.0;
    const double zero_x = margin + label_w + axis_px;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << px(width) << "\" height=\""
        << px(height) << "\" viewBox=\"0 0 " << px(width) << " " << px(height) << "\">\n";
    svg << "  <title>attribute relevance ranking</title>\n";
    svg << "  <text x=\"" << px(width / 2)
        << "\" y=\"18\" font-size=\"13\" text-anchor=\"middle\" font-weight=\"bold\" "
        << "fill=\"#111111\">ReliefF relevance</text>\n";

    for (std::size_t i = 0; i < ranked.size(); ++i) {
        const AttributeScore& entry = ranked[i];
        const double y = header + i * row_h;
        const double len = std::abs(entry.score) * axis_px;
        const double x0 = entry.score >= 0 ? zero_x : zero_x - len;
        svg << "  <text x=\"" << px(margin + label_w - 8.0) << "\" y=\"" << px(y + 15.0)
            << "\" font-size=\"11\" text-anchor=\"end\" fill=\"#111111\">" << entry.rank << ". "
            << xml_escape(entry.attribute) << "</text>\n";
        svg << "  <rect class=\"bar " << (entry.score >= 0 ? "positive" : "negative")
            << "\" data-attribute=\"" << xml_escape(entry.attribute) << "\" data-score=\""
            << num(entry.score, 6) << "\" x=\"" << px(x0) << "\" y=\"" << px(y + 4.0) << "\" width=\""
            << px(len) << "\" height=\"14\" fill=\"" << (entry.score >= 0 ? "#5b7fa6" : "#b08030")
            << "\"/>\n";
        svg << "  <text x=\"" << px(entry.score >= 0 ? x0 + len + 6.0 : x0 - 6.0) << "\" y=\""
            << px(y + 15.0) << "\" font-size=\"10\" text-anchor=\""
            << (entry.score >= 0 ? "start" : "end") << "\" fill=\"#333333\">" << num(entry.score, 4)
            << "</text>\n";
    }

    const double axis_bottom = header + ranked.size() * row_h + 6.0;
    svg << "  <line class=\"zero-axis\" x1=\"" << px(zero_x) << "\" y1=\"" << px(header - 6.0)
        << "\" x2=\"" << px(zero_x) << "\" y2=\"" << px(axis_bottom) << "\" stroke=\"#222222\"/>\n";
    svg << "  <text x=\"" << px(zero_x) << "\" y=\"" << px(axis_bottom + 14.0)
        << "\" font-size=\"10\" text-anchor=\"middle\" fill=\"#222222\">0</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

namespace {

std::string pad(const std::string& s, std::size_t width) {
    if (s.size() >= width) return s.substr(0, width);
    return s + std::string(width - s.size(), ' ');
}

std::string lpad(const std::string& s, std::size_t width) {
    if (s.size() >= width) return s.substr(0, width);
    return std::string(width - s.size(), ' ') + s;
}

}  // namespace

std::string render_text_report(const std::vector<ReinforcementProfile>& profiles,
                               const std::vector<KanoClassification>& classifications,
                               const std::vector<AttributeScore>& ranked_scores) {
    std::set<std::string> names_p, names_c, names_s;
    for (const auto& p : profiles) names_p.insert(p.attribute);
    for (const auto& c : classifications) names_c.insert(c.attribute);
    for (const auto& s : ranked_scores) names_s.insert(s.attribute);
    if (names_p != names_c || names_p != names_s) {
        std::string msg = "attribute sets differ between profiles, classifications and scores:";
        for (const auto& set : {names_p, names_c, names_s}) {
            msg += " {";
            for (const auto& name : set) msg += name + ",";
            msg += "}";
        }
        throw ValidationError(msg);
    }

    const auto classification_of = [&](const std::string& name) -> const KanoClassification& {
        for (const auto& c : classifications) {
            if (c.attribute == name) return c;
        }
        throw ValidationError("missing classification for " + name);
    };
    const auto score_of = [&](const std::string& name) -> const AttributeScore& {
        for (const auto& s : ranked_scores) {
            if (s.attribute == name) return s;
        }
        throw ValidationError("missing score for " + name);
    };

    std::ostringstream out;
    out << "ordinal attribute evaluation report\n";
    out << "====================================\n\n";

    for (const auto& profile : profiles) {
        const KanoClassification& cls = classification_of(profile.attribute);
        const AttributeScore& score = score_of(profile.attribute);

        out << "== " << profile.attribute << " ==\n";
        out << "ReliefF score: " << num(score.score, 4) << "  (rank " << score.rank << ")\n";
        out << "base rates: up " << num(profile.base_rates.up, 4) << ", down "
            << num(profile.base_rates.down, 4) << "\n";
        out << lpad("value", 6) << lpad("dir", 6) << lpad("probability", 13) << lpad("anti", 9)
            << lpad("events", 8) << lpad("significant", 13) << "\n";
        for (const auto& cell : profile.cells) {
            out << lpad(std::to_string(cell.value), 6) << lpad(direction_name(cell.direction), 6);
            if (cell.probability) {
                out << lpad(num(*cell.probability, 4), 13) << lpad(num(*cell.anti_probability, 4), 9);
            } else {
                out << lpad("undefined", 13) << lpad("-", 9);
            }
            out << lpad(std::to_string(cell.events), 8) << lpad(cell.significant ? "yes" : ".", 13)
                << "\n";
        }
        out << "category: " << cls.category.name() << "\n";
        if (!cls.evidence.empty()) {
            out << "evidence:";
            for (const auto& ev : cls.evidence) {
                out << " " << direction_name(ev.direction) << "@" << ev.value << (ev.anti ? "(anti)" : "");
            }
            out << "\n";
        }
        if (!cls.notes.empty()) out << "notes: " << cls.notes << "\n";
        out << "\n";
    }

    // Summary table: 28-char attribute column, 44-char category column.
    out << "summary\n";
    out << "-------\n";
    out << pad("attribute", 28) << pad("Kano quality category", 44) << "\n";
    for (const auto& profile : profiles) {
        const KanoClassification& cls = classification_of(profile.attribute);
        out << pad(profile.attribute, 28) << pad(kano_category_phrase(cls.category), 44) << "\n";
    }
    return out.str();
}

}  // namespace ordeval

#include "tops/modulation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace tops {

std::uint32_t gray_code(std::uint32_t k) { return k ^ (k >> 1); }

namespace {

int ilog2(int v) {
    int b = 0;
    while ((1 << b) < v) ++b;
    require((1 << b) == v, "size must be a power of two");
    return b;
}

PamAxis make_pam_axis(int levels, double scale) {
    PamAxis ax;
    ax.bits = ilog2(levels);
    ax.levels.resize(levels);
    for (int k = 0; k < levels; ++k)
        ax.levels[k] = scale * (2.0 * k - (levels - 1));
    return ax;
}

void fill_points_from_axes(Constellation& c) {
    c.points.clear();
    c.labels.clear();
    for (int ki = 0; ki < c.axis_i.size(); ++ki) {
        for (int kq = 0; kq < c.axis_q.size(); ++kq) {
            c.points.emplace_back(c.axis_i.levels[ki], c.axis_q.levels[kq]);
            std::uint32_t label =
                (gray_code(static_cast<std::uint32_t>(ki)) << c.axis_q.bits) |
                gray_code(static_cast<std::uint32_t>(kq));
            c.labels.push_back(label);
        }
    }
    c.m = static_cast<int>(c.points.size());
    c.bits_per_symbol = c.axis_i.bits + c.axis_q.bits;
}

}  // namespace

Constellation make_qam(int m) {
    require(m >= 4, "QAM size must be >= 4");
    int side = static_cast<int>(std::lround(std::sqrt(double(m))));
    require(side * side == m, "QAM size must be a perfect square");
    ilog2(side);
    // Unit average energy: E = 2 * (side^2 - 1)/3 * d^2 = 1.
    double d = std::sqrt(3.0 / (2.0 * (m - 1)));
    Constellation c;
    c.name = "qam" + std::to_string(m);
    c.separable = true;
    c.axis_i = make_pam_axis(side, d);
    c.axis_q = make_pam_axis(side, d);
    fill_points_from_axes(c);
    return c;
}

Constellation make_bpsk() {
    Constellation c;
    c.name = "bpsk";
    c.separable = true;
    c.axis_i = make_pam_axis(2, 1.0);
    c.axis_q.levels = {0.0};
    c.axis_q.bits = 0;
    fill_points_from_axes(c);
    return c;
}

Constellation make_psk(int m) {
    require(m >= 2, "PSK size must be >= 2");
    int bits = ilog2(m);
    Constellation c;
    c.name = "psk" + std::to_string(m);
    c.separable = false;
    c.m = m;
    c.bits_per_symbol = bits;
    for (int k = 0; k < m; ++k) {
        double phi = 2.0 * M_PI * k / m + M_PI / m;
        c.points.emplace_back(std::cos(phi), std::sin(phi));
        c.labels.push_back(gray_code(static_cast<std::uint32_t>(k)));
    }
    return c;
}

Constellation make_constellation(const std::string& spec) {
    std::string s;
    for (char ch : spec) s.push_back(static_cast<char>(std::tolower(ch)));
    if (s == "bpsk") return make_bpsk();
    auto num_of = [&](size_t pos) { return std::stoi(s.substr(pos)); };
    if (s.rfind("qam", 0) == 0) return make_qam(num_of(3));
    if (s.rfind("psk", 0) == 0) return make_psk(num_of(3));
    if (s.size() > 3 && s.substr(s.size() - 3) == "qam")
        return make_qam(std::stoi(s.substr(0, s.size() - 3)));
    throw InvalidArgument("unknown constellation: " + spec);
}

int nearest_level(const PamAxis& axis, double value) {
    int best = 0;
    double best_d = std::abs(value - axis.levels[0]);
    for (int k = 1; k < axis.size(); ++k) {
        double d = std::abs(value - axis.levels[k]);
        if (d < best_d) {  // strict: midpoint ties keep the lower level
            best_d = d;
            best = k;
        }
    }
    return best;
}

}  // namespace tops

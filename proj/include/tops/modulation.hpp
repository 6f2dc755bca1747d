#pragma once

#include <cstdint>
#include <vector>

#include "tops/types.hpp"

namespace tops {

// One real (PAM) axis of a separable constellation. Levels are ascending and
// Gray-labelled by position: label(k) = k ^ (k >> 1).
struct PamAxis {
    std::vector<double> levels;
    int bits = 0;  // log2(levels.size()); 0 for a degenerate {0} axis

    int size() const { return static_cast<int>(levels.size()); }
};

// A complex signal set with unit average energy. Separable sets (square QAM,
// BPSK) factor into two PAM axes; non-separable sets (PSK) only carry the
// point list.
struct Constellation {
    std::string name;
    int m = 0;  // number of complex points
    bool separable = false;
    PamAxis axis_i;  // in-phase axis (odd real-symbol positions)
    PamAxis axis_q;  // quadrature axis (even real-symbol positions)
    std::vector<cx> points;
    std::vector<std::uint32_t> labels;  // bit label per point
    int bits_per_symbol = 0;

    const PamAxis& axis_for(int symbol_index_1based) const {
        return (symbol_index_1based % 2 == 1) ? axis_i : axis_q;
    }
};

// Square M-QAM (M a power of 4), Gray-labelled per axis, unit average energy.
Constellation make_qam(int m);

// BPSK as a degenerate QAM: I axis {-1,+1}, Q axis pinned to {0}.
Constellation make_bpsk();

// M-PSK, non-separable; used to exercise the not-separable decoder path.
Constellation make_psk(int m);

// Constellation by name: "bpsk", "qam4"/"4qam", "qam16", "qam64", "psk8", ...
Constellation make_constellation(const std::string& spec);

std::uint32_t gray_code(std::uint32_t k);

// Index of the nearest level; exact midpoints resolve to the lower level.
int nearest_level(const PamAxis& axis, double value);

}  // namespace tops

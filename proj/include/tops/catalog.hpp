#pragma once

#include <vector>

#include "tops/stbc.hpp"

namespace tops {

// Golden code constants. theta * theta_bar == -1.
struct GoldenParams {
    double theta = (1.0 + std::sqrt(5.0)) / 2.0;
    double theta_bar = 1.0 - (1.0 + std::sqrt(5.0)) / 2.0;
    cx alpha{1.0, 1.0 - (1.0 + std::sqrt(5.0)) / 2.0};          // 1 + i(1 - theta)
    cx alpha_bar{1.0, (1.0 + std::sqrt(5.0)) / 2.0};            // 1 + i*theta
    cx gamma{0.0, 1.0};
};

// Srinath-Rajan constellation rotation, tan(2*theta) == 2.
struct SRParams {
    double rotation = std::atan(2.0) / 2.0;
    cx sqrt_i = std::polar(1.0, M_PI / 4.0);
};

// Parameters of the fast-decodable 4x2 code. The cyclotomic Z-bases
// {1, zeta+1/zeta, (zeta-1/zeta)/2i, (zeta^2-1/zeta^2)/2i} must be real.
// sigma remaps the bases under zeta -> zeta^2 plus conjugation.
struct Fast4x2Params {
    cx zeta = std::polar(1.0, 2.0 * M_PI / 15.0);
    cx r = std::polar(1.0, 2.0 * M_PI / 15.0);

    std::array<cx, 4> bases() const;
    std::array<cx, 4> sigma_bases() const;
};

// Spatial multiplexing over n_tx antennas, T = 1 (exempt from the
// minimum-delay restriction).
LinearSTBC build_vblast(int n_tx);

LinearSTBC build_alamouti();

LinearSTBC build_golden(const GoldenParams& p = {});

LinearSTBC build_sr2x2(const SRParams& p = {});

LinearSTBC build_sr4x2(const SRParams& p = {});

LinearSTBC build_fast4x2(const Fast4x2Params& p = {});

// 4-antenna complex interleaved orthogonal design (the diagonal-block
// structure of the 4x2 Srinath-Rajan code on its own).
LinearSTBC build_ciod4(const SRParams& p = {});

// Registry: builds a catalog code by name ("vblast4", "alamouti", "golden",
// "sr2x2", "sr4x2", "fast4x2", "ciod4"; "vblast<n>" generalizes).
LinearSTBC make_code(const std::string& name);

std::vector<std::string> catalog_names();

}  // namespace tops

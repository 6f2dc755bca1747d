#include "tops/catalog.hpp"

#include <array>
#include <cmath>

namespace tops {

namespace {

// One additive contribution: cell (row, col) += coeff * sym, with sym a
// 1-based real-coordinate index.
struct Term {
    int row, col, sym;
    cx coeff;
};

std::vector<CMatrix> weights_from_terms(int n_tx, int n_slots, int k,
                                        const std::vector<Term>& terms) {
    std::vector<CMatrix> w(k, CMatrix::Zero(n_tx, n_slots));
    for (const auto& t : terms) w[t.sym - 1](t.row - 1, t.col - 1) += t.coeff;
    return w;
}

// Substitute the per-complex-symbol coordinate rotation
//   s_iI = x_iI cos(th) - x_iQ sin(th),  s_iQ = x_iI sin(th) + x_iQ cos(th)
// so the returned weights are over the unrotated information reals x.
std::vector<CMatrix> rotate_pairs(const std::vector<CMatrix>& s_weights,
                                  double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    std::vector<CMatrix> x_weights(s_weights.size());
    for (size_t i = 0; i + 1 < s_weights.size(); i += 2) {
        x_weights[i] = c * s_weights[i] + s * s_weights[i + 1];
        x_weights[i + 1] = -s * s_weights[i] + c * s_weights[i + 1];
    }
    return x_weights;
}

constexpr cx I{0.0, 1.0};

}  // namespace

LinearSTBC build_vblast(int n_tx) {
    require(n_tx >= 1, "need at least one antenna");
    std::vector<CMatrix> w;
    for (int j = 0; j < n_tx; ++j) {
        CMatrix re = CMatrix::Zero(n_tx, 1);
        re(j, 0) = 1.0;
        w.push_back(re);
        w.push_back(I * re);
    }
    return LinearSTBC("vblast" + std::to_string(n_tx), n_tx, 1, std::move(w),
                      /*allow_nonsquare=*/true);
}

LinearSTBC build_alamouti() {
    // X = [[s1, -s2*], [s2, s1*]]
    std::vector<Term> t = {
        {1, 1, 1, 1.0},  {2, 2, 1, 1.0},   // s1I
        {1, 1, 2, I},    {2, 2, 2, -I},    // s1Q
        {2, 1, 3, 1.0},  {1, 2, 3, -1.0},  // s2I
        {2, 1, 4, I},    {1, 2, 4, I},     // s2Q
    };
    return LinearSTBC("alamouti", 2, 2, weights_from_terms(2, 2, 4, t));
}

LinearSTBC build_golden(const GoldenParams& p) {
    double f = 1.0 / std::sqrt(5.0);
    auto diag = [&](cx a, cx d) {
        CMatrix m = CMatrix::Zero(2, 2);
        m(0, 0) = f * a;
        m(1, 1) = f * d;
        return m;
    };
    auto anti = [&](cx b, cx c) {
        CMatrix m = CMatrix::Zero(2, 2);
        m(0, 1) = f * b;
        m(1, 0) = f * c;
        return m;
    };
    CMatrix a_i = diag(p.alpha, p.alpha_bar);
    CMatrix b_i = diag(p.alpha * p.theta, p.alpha_bar * p.theta_bar);
    CMatrix c_i = anti(p.alpha, p.gamma * p.alpha_bar);
    CMatrix d_i = anti(p.alpha * p.theta, p.gamma * p.alpha_bar * p.theta_bar);
    return LinearSTBC("golden", 2, 2,
                      {a_i, I * a_i, b_i, I * b_i, c_i, I * c_i, d_i, I * d_i});
}

LinearSTBC build_sr2x2(const SRParams& p) {
    // [[s1I + i s2Q,        sqrt(i)(s3I + i s4Q)],
    //  [sqrt(i)(s4I + i s3Q),        s2I + i s1Q]]
    // over rotated coordinates s; returned weights are over unrotated x.
    const cx q = p.sqrt_i;
    std::vector<Term> t = {
        {1, 1, 1, 1.0},   {2, 2, 2, I},      // s1I, s1Q
        {2, 2, 3, 1.0},   {1, 1, 4, I},      // s2I, s2Q
        {1, 2, 5, q},     {2, 1, 6, I * q},  // s3I, s3Q
        {2, 1, 7, q},     {1, 2, 8, I * q},  // s4I, s4Q
    };
    return LinearSTBC("sr2x2", 2, 2,
                      rotate_pairs(weights_from_terms(2, 2, 8, t), p.rotation));
}

namespace {

// Common 4x4 interleaved-Alamouti term layout. Symbol coordinate indices are
// given per 2x2 block; sym(i, I/Q) = 2i-1 / 2i.
void add_ciod_block(std::vector<Term>& t, int row0, int col0, int sym_a,
                    int sym_b, int sym_qa, int sym_qb, cx factor) {
    // [[ sA_I + i sQA_Q,  -sB_I + i sQB_Q],
    //  [ sB_I + i sQB_Q,   sA_I - i sQA_Q]] * factor
    auto iI = [](int s) { return 2 * s - 1; };
    auto iQ = [](int s) { return 2 * s; };
    t.push_back({row0, col0, iI(sym_a), factor});
    t.push_back({row0, col0, iQ(sym_qa), I * factor});
    t.push_back({row0, col0 + 1, iI(sym_b), -factor});
    t.push_back({row0, col0 + 1, iQ(sym_qb), I * factor});
    t.push_back({row0 + 1, col0, iI(sym_b), factor});
    t.push_back({row0 + 1, col0, iQ(sym_qb), I * factor});
    t.push_back({row0 + 1, col0 + 1, iI(sym_a), factor});
    t.push_back({row0 + 1, col0 + 1, iQ(sym_qa), -I * factor});
}

}  // namespace

LinearSTBC build_sr4x2(const SRParams& p) {
    const cx q = p.sqrt_i;
    std::vector<Term> t;
    // Diagonal blocks: symbols 1..4, Q-components interleaved 1<->3, 2<->4.
    add_ciod_block(t, 1, 1, 1, 2, 3, 4, 1.0);
    add_ciod_block(t, 3, 3, 3, 4, 1, 2, 1.0);
    // Off-diagonal blocks: symbols 5..8, interleaved 5<->7, 6<->8.
    add_ciod_block(t, 1, 3, 5, 6, 7, 8, q);
    add_ciod_block(t, 3, 1, 7, 8, 5, 6, q);
    return LinearSTBC("sr4x2", 4, 4,
                      rotate_pairs(weights_from_terms(4, 4, 16, t), p.rotation));
}

LinearSTBC build_ciod4(const SRParams& p) {
    std::vector<Term> t;
    add_ciod_block(t, 1, 1, 1, 2, 3, 4, 1.0);
    add_ciod_block(t, 3, 3, 3, 4, 1, 2, 1.0);
    return LinearSTBC("ciod4", 4, 4,
                      rotate_pairs(weights_from_terms(4, 4, 8, t), p.rotation));
}

std::array<cx, 4> Fast4x2Params::bases() const {
    cx zi = 1.0 / zeta;
    return {cx(1.0), zeta + zi, (zeta - zi) / (2.0 * I),
            (zeta * zeta - zi * zi) / (2.0 * I)};
}

std::array<cx, 4> Fast4x2Params::sigma_bases() const {
    Fast4x2Params sq{zeta * zeta, r};
    auto b = sq.bases();
    for (auto& v : b) v = std::conj(v);
    return b;
}

LinearSTBC build_fast4x2(const Fast4x2Params& p) {
    auto u = p.bases();
    auto us = p.sigma_bases();
    for (int j = 0; j < 4; ++j) {
        if (std::abs(u[j].imag()) > 1e-12 || std::abs(us[j].imag()) > 1e-12)
            throw InvalidArgument("invalid-params: Z-bases are not real");
    }
    const cx r = p.r;
    const cx r2 = r * r, r3 = r * r * r;

    // Alamouti block [[a, -b*], [b, a*]] at (row0, col0); each of a, b is
    // factor * s_i (or factor * sigma(s_i) when sig is set). A symbol is
    // s_i = f1*u1 + f2*u2 + i*f3*u3 + i*f4*u4 over real bases, so
    // conjugating a symbol flips the sign of its u3, u4 contributions.
    std::vector<Term> t;
    const cx iu(0.0, 1.0);
    auto add_lin = [&](int row, int col, int sym, cx factor, bool sig,
                       bool conj_sym) {
        for (int j = 0; j < 4; ++j) {
            cx basis = sig ? us[j] : u[j];
            cx unit = (j < 2) ? cx(1.0) : (conj_sym ? -iu : iu);
            t.push_back(
                {row, col, 4 * (sym - 1) + j + 1, factor * unit * basis.real()});
        }
    };
    auto add_block = [&](int row0, int col0, int sym_a, cx fa, bool siga,
                         int sym_b, cx fb, bool sigb) {
        add_lin(row0, col0, sym_a, fa, siga, false);
        add_lin(row0, col0 + 1, sym_b, -std::conj(fb), sigb, true);
        add_lin(row0 + 1, col0, sym_b, fb, sigb, false);
        add_lin(row0 + 1, col0 + 1, sym_a, std::conj(fa), siga, true);
    };
    add_block(1, 1, 1, 1.0, false, 2, r2, false);
    add_block(1, 3, 4, -r3, true, 3, r, true);
    add_block(3, 1, 3, r, false, 4, r3, false);
    add_block(3, 3, 1, 1.0, true, 2, r2, true);
    return LinearSTBC("fast4x2", 4, 4, weights_from_terms(4, 4, 16, t));
}

LinearSTBC make_code(const std::string& name) {
    if (name == "alamouti") return build_alamouti();
    if (name == "golden") return build_golden();
    if (name == "sr2x2") return build_sr2x2();
    if (name == "sr4x2") return build_sr4x2();
    if (name == "fast4x2") return build_fast4x2();
    if (name == "ciod4") return build_ciod4();
    if (name.rfind("vblast", 0) == 0 && name.size() > 6)
        return build_vblast(std::stoi(name.substr(6)));
    throw InvalidArgument("unknown code: " + name);
}

std::vector<std::string> catalog_names() {
    return {"vblast4", "alamouti", "golden", "sr2x2", "sr4x2", "fast4x2",
            "ciod4"};
}

}  // namespace tops

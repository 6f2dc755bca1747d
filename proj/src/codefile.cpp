#include "tops/codefile.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace tops {

namespace {

std::string format_real(double v) {
    std::ostringstream os;
    os.precision(std::numeric_limits<double>::max_digits10);
    os << v;
    return os.str();
}

}  // namespace

std::string format_complex(cx v) {
    std::string s = format_real(v.real());
    if (!std::signbit(v.imag())) s += "+";
    s += format_real(v.imag());
    s += "i";
    return s;
}

cx parse_complex(const std::string& token) {
    if (token.empty() || token.back() != 'i')
        throw InvalidArgument("bad complex token (missing 'i'): " + token);
    std::string body = token.substr(0, token.size() - 1);
    // Split at the last +/- that is not a leading sign or an exponent sign.
    size_t split = std::string::npos;
    for (size_t i = body.size(); i-- > 1;) {
        char c = body[i];
        if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos)
        throw InvalidArgument("bad complex token: " + token);
    size_t pos = 0;
    double re = std::stod(body.substr(0, split), &pos);
    if (pos != split) throw InvalidArgument("bad complex token: " + token);
    double im = std::stod(body.substr(split), &pos);
    if (pos != body.size() - split)
        throw InvalidArgument("bad complex token: " + token);
    return {re, im};
}

void write_code(std::ostream& os, const LinearSTBC& code) {
    os << "stbc " << code.name << " " << code.n_tx << " " << code.n_slots
       << " " << code.k() << "\n";
    for (const auto& w : code.weights) {
        for (int i = 0; i < code.n_tx; ++i) {
            for (int j = 0; j < code.n_slots; ++j) {
                if (j) os << " ";
                os << format_complex(w(i, j));
            }
            os << "\n";
        }
    }
}

LinearSTBC read_code(std::istream& is) {
    std::string magic, name;
    int n_tx = 0, n_slots = 0, k = 0;
    if (!(is >> magic >> name >> n_tx >> n_slots >> k) || magic != "stbc")
        throw InvalidArgument("bad code file header (expected 'stbc <name> "
                              "<Nt> <T> <K>')");
    require(n_tx >= 1 && n_slots >= 1 && k >= 1,
            "bad code file dimensions in header");
    std::vector<CMatrix> weights;
    for (int b = 0; b < k; ++b) {
        CMatrix w(n_tx, n_slots);
        for (int i = 0; i < n_tx; ++i) {
            for (int j = 0; j < n_slots; ++j) {
                std::string tok;
                if (!(is >> tok))
                    throw InvalidArgument(
                        "truncated code file in weight block " +
                        std::to_string(b + 1) + " (symbol " +
                        std::to_string(b + 1) + ", row " +
                        std::to_string(i + 1) + ")");
                w(i, j) = parse_complex(tok);
            }
        }
        weights.push_back(std::move(w));
    }
    return LinearSTBC(name, n_tx, n_slots, std::move(weights),
                      /*allow_nonsquare=*/true);
}

std::string code_to_string(const LinearSTBC& code) {
    std::ostringstream os;
    write_code(os, code);
    return os.str();
}

LinearSTBC code_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_code(is);
}

void save_code(const std::string& path, const LinearSTBC& code) {
    std::ofstream f(path);
    require(f.good(), "cannot open for writing: " + path);
    write_code(f, code);
}

LinearSTBC load_code(const std::string& path) {
    std::ifstream f(path);
    require(f.good(), "cannot open code file: " + path);
    return read_code(f);
}

}  // namespace tops

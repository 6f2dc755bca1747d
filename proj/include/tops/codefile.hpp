#pragma once

#include <iosfwd>
#include <string>

#include "tops/stbc.hpp"

namespace tops {

// Text code-description format:
//   stbc <name> <Nt> <T> <K>
// followed by K blocks of Nt lines, each line holding T complex tokens of the
// form `re+imi` (e.g. 0.5-0.25i). Emission uses max_digits10 so that
// parse(emit(code)) reproduces the weights bit-exactly.
void write_code(std::ostream& os, const LinearSTBC& code);
LinearSTBC read_code(std::istream& is);

std::string code_to_string(const LinearSTBC& code);
LinearSTBC code_from_string(const std::string& text);

void save_code(const std::string& path, const LinearSTBC& code);
LinearSTBC load_code(const std::string& path);

std::string format_complex(cx v);
cx parse_complex(const std::string& token);

}  // namespace tops

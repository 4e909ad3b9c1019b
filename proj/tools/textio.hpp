#pragma once

#include <iosfwd>
#include <string>

#include "dsmg/types.hpp"

namespace dsmg::cli {

// Plain-text matrices: a first line "m n", then m rows of n whitespace-separated
// decimals. A vector is an m x 1 matrix.
RealMatrix read_text_matrix(std::istream& in, const std::string& name);
RealMatrix read_text_matrix(const std::string& path);
RealVector read_text_vector(const std::string& path);

void write_text_vector(std::ostream& out, const RealVector& v);

}  // namespace dsmg::cli

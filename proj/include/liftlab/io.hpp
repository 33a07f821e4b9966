#pragma once

#include "liftlab/graph.hpp"

#include <iosfwd>
#include <string>

namespace liftlab {

// Shortest decimal string that round-trips the exact double.
std::string fmt_double(double v);

void write_matrix_csv(const Mat& M, std::ostream& os);
void write_vector_csv(const Vec& v, std::ostream& os);

}  // namespace liftlab

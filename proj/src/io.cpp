#include "liftlab/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <system_error>

namespace liftlab {

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

static std::string fmt_sci(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[48];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 16);
    return std::string(buf, res.ptr);
}

void write_matrix_csv(const Mat& M, std::ostream& os) {
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
        for (Eigen::Index c = 0; c < M.cols(); ++c) {
            if (c) os << ',';
            os << fmt_sci(M(r, c));
        }
        os << '\n';
    }
}

void write_vector_csv(const Vec& v, std::ostream& os) {
    for (Eigen::Index i = 0; i < v.size(); ++i) os << fmt_sci(v[i]) << '\n';
}

}  // namespace liftlab

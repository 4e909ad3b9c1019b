#include "textio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dsmg/errors.hpp"

namespace dsmg::cli {

RealMatrix read_text_matrix(std::istream& in, const std::string& name) {
    auto fail = [&](const std::string& what) { raise(ErrorKind::MalformedFile, name + ": " + what); };
    long rows = 0;
    long cols = 0;
    if (!(in >> rows >> cols)) fail("expected header 'm n'");
    if (rows < 1 || cols < 1) fail("dimensions must be positive");

    RealMatrix a(rows, cols);
    for (long i = 0; i < rows; ++i) {
        for (long j = 0; j < cols; ++j) {
            if (!(in >> a(i, j))) {
                std::ostringstream os;
                os << "missing or invalid entry (" << i + 1 << ", " << j + 1 << ")";
                fail(os.str());
            }
        }
    }
    std::string extra;
    if (in >> extra) fail("trailing data '" + extra + "'");
    if (!a.allFinite()) fail("non-finite entry");
    return a;
}

RealMatrix read_text_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::MalformedFile, path + ": cannot open file");
    return read_text_matrix(in, path);
}

RealVector read_text_vector(const std::string& path) {
    RealMatrix m = read_text_matrix(path);
    if (m.cols() != 1) raise(ErrorKind::MalformedFile, path + ": expected a single column (m 1)");
    return m.col(0);
}

void write_text_vector(std::ostream& out, const RealVector& v) {
    out << v.size() << " 1\n";
    char buf[40];
    for (Index i = 0; i < v.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", v[i]);
        out << buf << '\n';
    }
}

}  // namespace dsmg::cli

#include "ipt/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ipt {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error("matrix market: " + what + " (" + path + ")");
}

bool next_data_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '%') continue;
        return true;
    }
    return false;
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool is_exactly_symmetric(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (m.get(i, j) != m.get(j, i)) return false;
    return true;
}

}  // namespace

ComplexMatrix read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(path, "cannot open file");

    std::string header;
    if (!std::getline(in, header)) fail(path, "empty file");
    std::istringstream hs(header);
    std::string banner, object, format, field, symmetry;
    hs >> banner >> object >> format >> field >> symmetry;
    if (lower(banner) != "%%matrixmarket" || lower(object) != "matrix")
        fail(path, "malformed header '" + header + "'");
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (format != "coordinate" && format != "array") fail(path, "unsupported format " + format);
    if (field != "real" && field != "complex" && field != "integer")
        fail(path, "unsupported field " + field);
    if (symmetry != "general" && symmetry != "symmetric")
        fail(path, "unsupported symmetry " + symmetry);
    const bool complex_field = field == "complex";
    const bool symmetric = symmetry == "symmetric";

    std::string line;
    if (!next_data_line(in, line)) fail(path, "missing size line");
    std::istringstream ss(line);

    if (format == "coordinate") {
        std::size_t rows = 0, cols = 0, nnz = 0;
        if (!(ss >> rows >> cols >> nnz)) fail(path, "malformed size line");
        if (symmetric && rows != cols) fail(path, "symmetric matrix must be square");
        std::vector<Triplet> entries;
        entries.reserve(nnz * (symmetric ? 2 : 1));
        for (std::size_t k = 0; k < nnz; ++k) {
            if (!next_data_line(in, line)) fail(path, "truncated entry list");
            std::istringstream es(line);
            std::size_t i = 0, j = 0;
            double re = 0.0, im = 0.0;
            if (!(es >> i >> j >> re)) fail(path, "malformed entry '" + line + "'");
            if (complex_field && !(es >> im)) fail(path, "missing imaginary part in '" + line + "'");
            if (i < 1 || i > rows || j < 1 || j > cols)
                fail(path, "index out of bounds in '" + line + "'");
            entries.push_back({i - 1, j - 1, cplx(re, im)});
            if (symmetric && i != j) entries.push_back({j - 1, i - 1, cplx(re, im)});
        }
        try {
            return ComplexMatrix::sparse_from_triplets(rows, cols, std::move(entries));
        } catch (const std::invalid_argument& e) {
            fail(path, e.what());
        }
    }

    std::size_t rows = 0, cols = 0;
    if (!(ss >> rows >> cols)) fail(path, "malformed size line");
    if (symmetric && rows != cols) fail(path, "symmetric matrix must be square");
    ComplexMatrix m = ComplexMatrix::dense(rows, cols);
    // Array data is column-major; symmetric files store the lower triangle.
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = symmetric ? j : 0; i < rows; ++i) {
            if (!next_data_line(in, line)) fail(path, "truncated array data");
            std::istringstream es(line);
            double re = 0.0, im = 0.0;
            if (!(es >> re)) fail(path, "malformed value '" + line + "'");
            if (complex_field && !(es >> im)) fail(path, "missing imaginary part in '" + line + "'");
            m.at(i, j) = cplx(re, im);
            if (symmetric && i != j) m.at(j, i) = cplx(re, im);
        }
    }
    return m;
}

void write_matrix_market(const ComplexMatrix& m, const std::string& path,
                         const MatrixMarketOptions& options) {
    std::ofstream out(path);
    if (!out) fail(path, "cannot open file for writing");

    MatrixMarketOptions::Format format = options.format;
    if (format == MatrixMarketOptions::Format::Auto)
        format = m.is_sparse() ? MatrixMarketOptions::Format::Coordinate
                               : MatrixMarketOptions::Format::Array;
    const bool symmetric = options.write_symmetric && is_exactly_symmetric(m);

    bool complex_field = false;
    if (m.is_dense()) {
        const cplx* v = m.data();
        for (std::size_t t = 0; t < m.rows() * m.cols() && !complex_field; ++t)
            complex_field = v[t].imag() != 0.0;
    } else {
        for (const cplx& v : m.values())
            if (v.imag() != 0.0) {
                complex_field = true;
                break;
            }
    }

    auto emit = [&](cplx v) {
        out << format_value(v.real());
        if (complex_field) out << ' ' << format_value(v.imag());
    };

    out << "%%MatrixMarket matrix "
        << (format == MatrixMarketOptions::Format::Coordinate ? "coordinate" : "array") << ' '
        << (complex_field ? "complex" : "real") << ' ' << (symmetric ? "symmetric" : "general")
        << '\n';

    if (format == MatrixMarketOptions::Format::Coordinate) {
        const ComplexMatrix s = m.to_sparse();
        std::vector<Triplet> entries;
        for (std::size_t i = 0; i < s.rows(); ++i)
            for (std::size_t k = s.row_offsets()[i]; k < s.row_offsets()[i + 1]; ++k) {
                const std::size_t j = s.col_indices()[k];
                if (symmetric && j > i) continue;
                entries.push_back({i, j, s.values()[k]});
            }
        out << m.rows() << ' ' << m.cols() << ' ' << entries.size() << '\n';
        for (const Triplet& t : entries) {
            out << (t.row + 1) << ' ' << (t.col + 1) << ' ';
            emit(t.value);
            out << '\n';
        }
    } else {
        const ComplexMatrix d = m.to_dense();
        out << m.rows() << ' ' << m.cols() << '\n';
        for (std::size_t j = 0; j < d.cols(); ++j)
            for (std::size_t i = symmetric ? j : 0; i < d.rows(); ++i) {
                emit(d.get(i, j));
                out << '\n';
            }
    }
    if (!out) fail(path, "write failed");
}

}  // namespace ipt

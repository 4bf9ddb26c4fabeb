#include "qcwitness/matrix_file.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qcw {

using nlohmann::json;

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

const char *kind_name(StateKind kind) { return kind == StateKind::single ? "single" : "bipartite"; }

RMatrix read_block(const json &doc, const char *key, Eigen::Index size) {
    if (!doc.contains(key) || !doc[key].is_array()) {
        throw ParseError(std::string("missing array field \"") + key + "\"");
    }
    const json &rows = doc[key];
    if (static_cast<Eigen::Index>(rows.size()) != size) {
        throw ParseError(std::string("\"") + key + "\" must have " + std::to_string(size) + " rows");
    }
    RMatrix out(size, size);
    for (Eigen::Index r = 0; r < size; ++r) {
        const json &row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != size) {
            throw ParseError(std::string("\"") + key + "\" row " + std::to_string(r) + " must have " +
                             std::to_string(size) + " entries");
        }
        for (Eigen::Index c = 0; c < size; ++c) {
            const json &v = row[static_cast<std::size_t>(c)];
            if (!v.is_number()) {
                throw ParseError(std::string("\"") + key + "\" holds a non-numeric entry");
            }
            out(r, c) = v.get<double>();
        }
    }
    return out;
}

void write_block(std::ostringstream &out, const CMatrix &m, bool imag) {
    out << "[\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        out << "    [";
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out << (c ? ", " : "") << format_double(imag ? m(r, c).imag() : m(r, c).real());
        }
        out << "]" << (r + 1 < m.rows() ? "," : "") << "\n";
    }
    out << "  ]";
}

} // namespace

MatrixFile parse_matrix_file(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("malformed matrix file: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("matrix file must be a JSON object");
    }
    MatrixFile file;
    if (!doc.contains("kind") || !doc["kind"].is_string()) {
        throw ParseError("missing string field \"kind\"");
    }
    const auto kind = doc["kind"].get<std::string>();
    if (kind == "single") {
        file.kind = StateKind::single;
    } else if (kind == "bipartite") {
        file.kind = StateKind::bipartite;
    } else {
        throw ParseError("unknown kind \"" + kind + "\"");
    }
    if (!doc.contains("local_dim") || !doc["local_dim"].is_number_integer() ||
        doc["local_dim"].get<int>() < 1) {
        throw ParseError("missing positive integer field \"local_dim\"");
    }
    file.local_dim = doc["local_dim"].get<int>();
    const Eigen::Index size =
        file.kind == StateKind::single ? file.local_dim : Eigen::Index{file.local_dim} * file.local_dim;
    const RMatrix re = read_block(doc, "re", size);
    const RMatrix im = read_block(doc, "im", size);
    file.matrix = CMatrix(size, size);
    file.matrix.real() = re;
    file.matrix.imag() = im;
    return file;
}

MatrixFile read_matrix_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix_file(buf.str());
}

std::string format_matrix_file(const MatrixFile &file) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"kind\": \"" << kind_name(file.kind) << "\",\n";
    out << "  \"local_dim\": " << file.local_dim << ",\n";
    out << "  \"re\": ";
    write_block(out, file.matrix, false);
    out << ",\n  \"im\": ";
    write_block(out, file.matrix, true);
    out << "\n}\n";
    return out.str();
}

void write_matrix_file(const std::filesystem::path &path, const MatrixFile &file) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out << format_matrix_file(file);
}

MatrixFile to_matrix_file(const DensityMatrix &rho) {
    return {rho.kind(), rho.local_dim(), rho.matrix()};
}

DensityMatrix to_state(const MatrixFile &file) {
    if (file.kind == StateKind::single) {
        return DensityMatrix::single(file.matrix);
    }
    return DensityMatrix::bipartite(file.matrix, file.local_dim);
}

} // namespace qcw

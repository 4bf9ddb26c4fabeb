#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qcwitness/density.hpp"
#include "qcwitness/errors.hpp"
#include "qcwitness/types.hpp"

namespace qcw {

class ParseError : public Error {
  public:
    using Error::Error;
};

/// On-disk matrix: JSON object {"kind", "local_dim", "re", "im"} where re and
/// im are row-major arrays of rows holding the real and imaginary parts.
/// Numbers are written with 17 significant digits so doubles round-trip exactly.
struct MatrixFile {
    StateKind kind = StateKind::bipartite;
    int local_dim = 0;
    CMatrix matrix;
};

/// Throws ParseError on malformed JSON, unknown kind or shape mismatch.
MatrixFile parse_matrix_file(std::string_view text);
MatrixFile read_matrix_file(const std::filesystem::path &path);

std::string format_matrix_file(const MatrixFile &file);
void write_matrix_file(const std::filesystem::path &path, const MatrixFile &file);

MatrixFile to_matrix_file(const DensityMatrix &rho);

/// Throws InvalidStateError with the validation report.
DensityMatrix to_state(const MatrixFile &file);

/// printf("%.17g").
std::string format_double(double x);

} // namespace qcw

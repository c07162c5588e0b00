#pragma once

#include "mrnmf/matrix.hpp"

#include <filesystem>
#include <iosfwd>
#include <string_view>

namespace mrnmf {

enum class MatrixFormat { csv, matrix_market };

/// Parses "csv" / "matrix_market" (also "mtx", "mm"). Throws ParameterError.
MatrixFormat parse_matrix_format(std::string_view name);

/// Guesses the format from the file extension (.mtx / .mm -> MatrixMarket).
MatrixFormat format_from_extension(const std::filesystem::path& path);

/// Reads a matrix whose rows are feature dimensions and columns samples.
///
/// CSV: comma separated, no header, one row per line. MatrixMarket: the
/// dense "array real general" variant and the "coordinate real general"
/// variant (densified, absent entries are zero).
///
/// Errors: FormatError (with line number) on malformed text, DomainError for
/// negative/non-finite entries or an empty matrix, IoError if unreadable.
NonNegMatrix load_matrix(const std::filesystem::path& path, MatrixFormat format);

NonNegMatrix read_csv(std::istream& in);
NonNegMatrix read_matrix_market(std::istream& in);

/// Writes with 17 significant digits so doubles round-trip exactly.
void save_matrix(const NonNegMatrix& m, const std::filesystem::path& path,
                 MatrixFormat format);

void write_csv(const Matrix& m, std::ostream& out);
void write_matrix_market(const Matrix& m, std::ostream& out);

}  // namespace mrnmf

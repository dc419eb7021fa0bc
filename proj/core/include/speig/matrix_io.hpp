#pragma once

#include "speig/eigensolver.hpp"
#include "speig/types.hpp"

#include <filesystem>

namespace speig {

enum class MatrixFileFormat { Auto, MatrixMarket, Csv };

/// Load a dense real matrix.  Matrix Market files may be array or coordinate
/// layout with general, symmetric or skew-symmetric qualifiers; CSV files are
/// one row per line, comma separated.  Auto resolves by extension
/// (.mtx / .mm are Matrix Market, everything else CSV).  Parse failures
/// throw ParseError carrying the offending line number; a symmetric
/// declaration contradicted by the stored entries throws StructureViolation.
Matrix load_matrix(const std::filesystem::path& path,
                   MatrixFileFormat format = MatrixFileFormat::Auto);

/// Load with role validation applied after parsing.
SpdMatrix load_spd(const std::filesystem::path& path,
                   MatrixFileFormat format = MatrixFileFormat::Auto);
HamiltonianMatrix load_hamiltonian(
    const std::filesystem::path& path,
    MatrixFileFormat format = MatrixFileFormat::Auto);

/// Single-column (or single-row) file as a vector.
Vector load_vector(const std::filesystem::path& path,
                   MatrixFileFormat format = MatrixFileFormat::Auto);

/// Save a dense matrix.  Matrix Market output uses the array layout unless
/// `coordinate` is set (nonzeros only, general qualifier).  All values are
/// written with 17 significant digits, so array and CSV round trips are
/// bit-exact.
void save_matrix(const std::filesystem::path& path, const Matrix& m,
                 MatrixFileFormat format = MatrixFileFormat::Auto,
                 bool coordinate = false);

void save_vector(const std::filesystem::path& path, const Vector& v,
                 MatrixFileFormat format = MatrixFileFormat::Auto);

/// 17-significant-digit decimal rendering used for all numeric file output.
std::string format_full(double value);

}  // namespace speig

#pragma once

#include <iosfwd>
#include <string>

#include "cho/hamiltonian.hpp"

namespace cho {

/// Writes `%%MatrixMarket matrix coordinate real symmetric` with the lower
/// triangle, 1-based indices and 17 significant digits.
void write_matrix_market(std::ostream& out, const SymmetricSparseMatrix& m,
                         const std::string& comment = {});

/// Reads a real symmetric coordinate file back into upper-triangle storage.
/// Throws std::runtime_error on malformed input or unsupported headers.
SymmetricSparseMatrix read_matrix_market(std::istream& in);

}  // namespace cho

#ifndef TORP_IO_HPP
#define TORP_IO_HPP

//
// File formats.
//
// Matrix files: 20-byte header (magic "TRPM", then rows and cols as
// unsigned 64-bit little-endian), followed by rows*cols IEEE-754 doubles
// in little-endian column-major order. Round trips are bit exact.
//
// Instance directories: m.mat, l.mat, c.mat, n.mat plus a flat
// key=value manifest holding the generation parameters, the measured
// incoherence and the outlier support.
//

#include <filesystem>
#include <string>

#include "torp/synth.hpp"
#include "torp/types.hpp"

namespace torp {

void save_matrix(const std::filesystem::path& path, const DenseMatrix& m);
DenseMatrix load_matrix(const std::filesystem::path& path);

// Writes m.mat, l.mat, c.mat, n.mat and `manifest` into dir (created if
// missing).
void save_instance(const std::filesystem::path& dir, const ProblemInstance& inst);
ProblemInstance load_instance(const std::filesystem::path& dir);

}  // namespace torp

#endif  // TORP_IO_HPP

#pragma once

#include <string>

#include "matrix.hpp"

namespace orka {

enum class FileFormat { kAuto, kCsv, kBinary };

// CSV: one text row per sample row, comma separated, 17 significant digits.
// Binary: magic "ORKA", version byte 1, u64-LE dim count and dims, then
// f64-LE values with the last dimension varying fastest. 2-dim files are
// plain matrices (rows, cols); 3-dim files are clips (frames, frame_rows,
// frame_cols) and restore the frame shape on load.
//
// All writers go through a temp file + rename so readers never see partial
// output. All failures throw IoError.
Matrix read_matrix(const std::string& path, FileFormat fmt = FileFormat::kAuto);
void write_matrix(const Matrix& m, const std::string& path,
                  FileFormat fmt = FileFormat::kAuto);

// Shift vectors as CSV: one row per measurement, one column per dimension.
void write_shifts_csv(const ShiftVector& lambda, const std::string& path);
ShiftVector read_shifts_csv(const std::string& path, int dims);

// PGM P5 (binary grayscale, maxval <= 255) mapped into [0, 1]; the result is
// a one-column matrix carrying the frame shape.
Matrix read_pgm(const std::string& path);

// Loads every *.pgm / *.bin / *.csv frame in a directory (sorted by name)
// into a clip, one column per frame. All frames must share a shape.
Matrix read_frame_dir(const std::string& dir);

// Arbitrary small text artifact (reports, CSVs assembled by the caller),
// written atomically.
void write_text(const std::string& text, const std::string& path);

}  // namespace orka

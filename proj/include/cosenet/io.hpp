#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cosenet/matrix.hpp"
#include "cosenet/synthgen.hpp"

namespace cosenet {

/// Comma-separated rows, '#' comment lines and blank lines ignored. Only
/// checks that the data is square; range and symmetry are validate_matrix's
/// job.
Matrix read_matrix_file(const std::filesystem::path& path);
Matrix parse_matrix_text(const std::string& text);
void write_matrix_file(const std::filesystem::path& path, const Matrix& m);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double x);

std::string format_record(const SynthRecord& record);
SynthRecord parse_record(const std::string& line);

std::filesystem::path split_path(const std::filesystem::path& dir, Split split);
const char* split_name(Split split);

void write_split(const std::filesystem::path& dir, Split split,
                 const std::vector<SynthRecord>& records);
std::vector<SynthRecord> read_split(const std::filesystem::path& dir, Split split);

void write_synth_spec(const std::filesystem::path& dir, const SynthSpec& spec);
/// Returns false when the dataset directory has no spec file.
bool read_synth_spec(const std::filesystem::path& dir, SynthSpec& spec);

}  // namespace cosenet

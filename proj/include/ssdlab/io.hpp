#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ssdlab/bench.hpp"
#include "ssdlab/dense.hpp"
#include "ssdlab/duality.hpp"
#include "ssdlab/limits.hpp"
#include "ssdlab/ss_matrix.hpp"
#include "ssdlab/ssm.hpp"
#include "ssdlab/sss_extract.hpp"

/// JSON and CSV encodings of every artifact. Doubles are written in shortest
/// round-trip form. Malformed input raises `Error` with `Errc::parse_error`;
/// well-formed input of the wrong shape raises `Errc::shape_mismatch`.
namespace ssd::io {

using Json = nlohmann::ordered_json;

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

std::string matrix_to_csv(const Matrix& m);
Matrix matrix_from_csv(std::string_view text);

Json rows_to_json(const Matrix& m);
Matrix rows_from_json(const Json& rows, std::string_view what);

/// {"T": int, "rows": [[...], ...]}
Json to_json(const LowerTriangularMatrix& m);
LowerTriangularMatrix lower_triangular_from_json(const Json& j);

/// {"a": [...]}
Json to_json(const MaskVector& mask);
MaskVector mask_from_json(const Json& j);

/// {"T", "N", "A_diag", "b", "c"}
Json to_json(const DiagonalSsm& ssm);
DiagonalSsm ssm_from_json(const Json& j);

/// {key: [[...], ...]}
Json sequence_to_json(const SequenceData& x, std::string_view key = "X");
/// Accepts the "X" or "Y" key.
SequenceData sequence_from_json(const Json& j);

/// {"p", "Q", "K"}
Json to_json(const MaskedAttentionFactors& f);
MaskedAttentionFactors factors_from_json(const Json& j);

/// {"T", "N", "A", "b", "c", "r"}
Json to_json(const GeneralSssRepresentation& rep);
GeneralSssRepresentation sss_from_json(const Json& j);

/// {"N", "blocks": [{"start", "end", "new_columns"}], "representable",
/// "warnings"}; block bounds are 1-based and inclusive.
Json to_json(const RepresentabilityReport& report);

Json to_json(const CounterexampleReport& report);

Json to_json(const bench::FlopReport& report);
/// One header line plus one row per grid point.
std::string scaling_to_csv(const bench::ScalingResult& result);
/// Fitted slopes, bound verdicts and per-point band checks.
Json scaling_summary(const bench::ScalingResult& result);

Json parse_json(std::string_view text);
std::string read_file(const std::filesystem::path& path);

/// Lower-triangular matrix from a .csv file or a JSON file.
LowerTriangularMatrix load_matrix(const std::filesystem::path& path);
/// Sequence from a .csv file or a JSON file.
SequenceData load_sequence(const std::filesystem::path& path);
DiagonalSsm load_ssm(const std::filesystem::path& path);

/// Writes through a sibling temporary and renames it into place, so readers
/// never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Two-space indented JSON followed by a newline.
std::string dump(const Json& j);

}  // namespace ssd::io

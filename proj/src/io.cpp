#include "ssdlab/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace ssd::io {

std::string format_double(double value)
{
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) {
        throw Error(Errc::invalid_argument, "cannot format value");
    }
    return std::string(buf.data(), end);
}

std::string matrix_to_csv(const Matrix& m)
{
    std::string out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c > 0) {
                out += ',';
            }
            out += format_double(m(r, c));
        }
        out += '\n';
    }
    return out;
}

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view field)
{
    field = trim(field);
    if (!field.empty() && field.front() == '+') {
        field.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw Error(Errc::parse_error, "not a number: '" + std::string(field) + "'");
    }
    return value;
}

}  // namespace

Matrix matrix_from_csv(std::string_view text)
{
    std::vector<std::vector<double>> rows;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        const std::string_view line = trim(text.substr(pos, eol - pos));
        pos = eol + 1;
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            row.push_back(parse_number(line.substr(start, comma - start)));
            if (comma == std::string_view::npos) {
                break;
            }
            start = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw Error(Errc::parse_error, "CSV rows have different field counts");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw Error(Errc::parse_error, "CSV input is empty");
    }
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            m(r, c) = rows[r][c];
        }
    }
    return m;
}

Json rows_to_json(const Matrix& m)
{
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (double v : m.row(r)) {
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw Error(Errc::parse_error, std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

double number(const Json& j, std::string_view what)
{
    if (!j.is_number()) {
        throw Error(Errc::parse_error, std::string(what) + " holds a non-numeric entry");
    }
    return j.get<double>();
}

std::size_t count(const Json& j, const char* key)
{
    const Json& v = field(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        throw Error(Errc::parse_error, std::string("field '") + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

std::vector<double> vector_from_json(const Json& j, std::string_view what)
{
    if (!j.is_array()) {
        throw Error(Errc::parse_error, std::string(what) + " must be an array");
    }
    std::vector<double> out;
    out.reserve(j.size());
    for (const Json& v : j) {
        out.push_back(number(v, what));
    }
    return out;
}

Json vector_to_json(const std::vector<double>& v)
{
    Json out = Json::array();
    for (double x : v) {
        out.push_back(x);
    }
    return out;
}

void expect_shape(const Matrix& m, std::size_t rows, std::size_t cols, std::string_view what)
{
    if (m.rows() != rows || m.cols() != cols) {
        throw Error(Errc::shape_mismatch, std::string(what) + " is " + std::to_string(m.rows()) +
                                              "x" + std::to_string(m.cols()) + ", expected " +
                                              std::to_string(rows) + "x" + std::to_string(cols));
    }
}

}  // namespace

Matrix rows_from_json(const Json& rows, std::string_view what)
{
    if (!rows.is_array()) {
        throw Error(Errc::parse_error, std::string(what) + " must be an array of rows");
    }
    const std::size_t n_rows = rows.size();
    const std::size_t n_cols = n_rows ? (rows[0].is_array() ? rows[0].size() : 0) : 0;
    Matrix m(n_rows, n_cols);
    for (std::size_t r = 0; r < n_rows; ++r) {
        const Json& row = rows[r];
        if (!row.is_array() || row.size() != n_cols) {
            throw Error(Errc::parse_error, std::string(what) + " has ragged or non-array rows");
        }
        for (std::size_t c = 0; c < n_cols; ++c) {
            m(r, c) = number(row[c], what);
        }
    }
    return m;
}

Json to_json(const LowerTriangularMatrix& m)
{
    Json j;
    j["T"] = m.size();
    j["rows"] = rows_to_json(m.dense());
    return j;
}

LowerTriangularMatrix lower_triangular_from_json(const Json& j)
{
    const std::size_t T = count(j, "T");
    Matrix rows = rows_from_json(field(j, "rows"), "rows");
    expect_shape(rows, T, T, "rows");
    return LowerTriangularMatrix::from_dense(std::move(rows));
}

Json to_json(const MaskVector& mask)
{
    Json j;
    j["a"] = vector_to_json(mask.a);
    return j;
}

MaskVector mask_from_json(const Json& j)
{
    return MaskVector{vector_from_json(field(j, "a"), "a")};
}

Json to_json(const DiagonalSsm& ssm)
{
    Json j;
    j["T"] = ssm.steps();
    j["N"] = ssm.state_dim();
    j["A_diag"] = rows_to_json(ssm.gains());
    j["b"] = rows_to_json(ssm.in_weights());
    j["c"] = rows_to_json(ssm.out_weights());
    return j;
}

DiagonalSsm ssm_from_json(const Json& j)
{
    const std::size_t T = count(j, "T");
    const std::size_t N = count(j, "N");
    Matrix gains = rows_from_json(field(j, "A_diag"), "A_diag");
    Matrix b = rows_from_json(field(j, "b"), "b");
    Matrix c = rows_from_json(field(j, "c"), "c");
    expect_shape(gains, T, N, "A_diag");
    expect_shape(b, T, N, "b");
    expect_shape(c, T, N, "c");
    return DiagonalSsm(std::move(gains), std::move(b), std::move(c));
}

Json sequence_to_json(const SequenceData& x, std::string_view key)
{
    Json j;
    j[std::string(key)] = rows_to_json(x);
    return j;
}

SequenceData sequence_from_json(const Json& j)
{
    if (j.is_object() && j.contains("X")) {
        return rows_from_json(j.at("X"), "X");
    }
    return rows_from_json(field(j, "Y"), "Y");
}

Json to_json(const MaskedAttentionFactors& f)
{
    Json j;
    j["p"] = vector_to_json(f.mask);
    j["Q"] = rows_to_json(f.queries);
    j["K"] = rows_to_json(f.keys);
    return j;
}

MaskedAttentionFactors factors_from_json(const Json& j)
{
    MaskedAttentionFactors f;
    f.mask = vector_from_json(field(j, "p"), "p");
    f.queries = rows_from_json(field(j, "Q"), "Q");
    f.keys = rows_from_json(field(j, "K"), "K");
    check_factors(f);
    return f;
}

Json to_json(const GeneralSssRepresentation& rep)
{
    Json j;
    j["T"] = rep.steps();
    j["N"] = rep.state_dim();
    Json a = Json::array();
    for (const Matrix& m : rep.transitions) {
        a.push_back(rows_to_json(m));
    }
    j["A"] = std::move(a);
    j["b"] = rows_to_json(rep.in_weights);
    j["c"] = rows_to_json(rep.out_weights);
    j["r"] = rep.ranks;
    return j;
}

GeneralSssRepresentation sss_from_json(const Json& j)
{
    const std::size_t T = count(j, "T");
    const std::size_t N = count(j, "N");
    GeneralSssRepresentation rep;
    const Json& a = field(j, "A");
    if (!a.is_array() || a.size() != T) {
        throw Error(Errc::parse_error, "A must hold T matrices");
    }
    for (const Json& m : a) {
        rep.transitions.push_back(rows_from_json(m, "A"));
        expect_shape(rep.transitions.back(), N, N, "A[t]");
    }
    rep.in_weights = rows_from_json(field(j, "b"), "b");
    rep.out_weights = rows_from_json(field(j, "c"), "c");
    expect_shape(rep.in_weights, T, N, "b");
    expect_shape(rep.out_weights, T, N, "c");
    for (const Json& r : field(j, "r")) {
        if (!r.is_number_integer() || r.get<long long>() < 0) {
            throw Error(Errc::parse_error, "r must hold non-negative integers");
        }
        rep.ranks.push_back(r.get<std::size_t>());
    }
    check_representation(rep);
    return rep;
}

Json to_json(const RepresentabilityReport& report)
{
    Json j;
    j["N"] = report.state_dim;
    Json blocks = Json::array();
    for (const BlockNewColumns& b : report.blocks) {
        Json entry;
        entry["start"] = b.block.begin + 1;
        entry["end"] = b.block.end;
        entry["new_columns"] = b.count();
        blocks.push_back(std::move(entry));
    }
    j["blocks"] = std::move(blocks);
    j["representable"] = report.representable;
    j["warnings"] = report.warnings;
    return j;
}

Json to_json(const CounterexampleReport& report)
{
    Json j;
    j["name"] = report.name;
    j["T"] = report.steps;
    j["claim"] = report.claim;
    Json measured = Json::object();
    for (const auto& [key, value] : report.measurements) {
        if (std::isfinite(value)) {
            measured[key] = value;
        } else {
            measured[key] = nullptr;
        }
    }
    j["measurements"] = std::move(measured);
    j["applicable"] = report.applicable;
    j["verdict"] = report.verdict;
    return j;
}

Json to_json(const bench::FlopReport& report)
{
    Json j;
    j["path"] = std::string(bench::to_string(report.path));
    j["T"] = report.dims.steps;
    j["N"] = report.dims.state_dim;
    j["d"] = report.dims.channels;
    j["multiply_adds"] = report.multiply_adds;
    j["multiplications"] = report.multiplications;
    j["additions"] = report.additions;
    j["copies"] = report.copies;
    j["peak_live_elements"] = report.peak_live_elements;
    j["parameter_elements"] = report.parameter_elements;
    if (report.wall_seconds) {
        j["wall_seconds"] = *report.wall_seconds;
    }
    return j;
}

std::string scaling_to_csv(const bench::ScalingResult& result)
{
    std::ostringstream out;
    out << "path,T,N,d,multiply_adds,multiplications,additions,copies,peak_live_elements,"
           "parameter_elements\n";
    for (const bench::FlopReport& r : result.rows) {
        out << bench::to_string(r.path) << ',' << r.dims.steps << ',' << r.dims.state_dim << ','
            << r.dims.channels << ',' << r.multiply_adds << ',' << r.multiplications << ','
            << r.additions << ',' << r.copies << ',' << r.peak_live_elements << ','
            << r.parameter_elements << '\n';
    }
    return out.str();
}

Json scaling_summary(const bench::ScalingResult& result)
{
    auto slope = [](const std::optional<double>& s) { return s ? Json(*s) : Json(nullptr); };
    Json j;
    j["path"] = std::string(bench::to_string(result.path));
    j["points"] = result.rows.size();
    j["slope_T"] = slope(result.slope_steps);
    j["slope_N"] = slope(result.slope_state_dim);
    j["slope_d"] = slope(result.slope_channels);
    j["slopes_within_bounds"] = bench::slopes_within_bounds(result);
    if (result.path == bench::ExecutionPath::ssd) {
        bool band = true;
        for (const bench::FlopReport& r : result.rows) {
            band = band && bench::within_ssd_band(r);
        }
        j["all_within_3NTd_5NTd"] = band;
    }
    return j;
}

Json parse_json(std::string_view text)
{
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::parse_error, e.what());
    }
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::parse_error, "cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace {

bool is_csv(const std::filesystem::path& path)
{
    return path.extension() == ".csv";
}

}  // namespace

LowerTriangularMatrix load_matrix(const std::filesystem::path& path)
{
    const std::string text = read_file(path);
    if (is_csv(path)) {
        return LowerTriangularMatrix::from_dense(matrix_from_csv(text));
    }
    return lower_triangular_from_json(parse_json(text));
}

SequenceData load_sequence(const std::filesystem::path& path)
{
    const std::string text = read_file(path);
    if (is_csv(path)) {
        return matrix_from_csv(text);
    }
    return sequence_from_json(parse_json(text));
}

DiagonalSsm load_ssm(const std::filesystem::path& path)
{
    return ssm_from_json(parse_json(read_file(path)));
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(Errc::invalid_argument, "cannot write " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw Error(Errc::invalid_argument, "short write to " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string dump(const Json& j)
{
    return j.dump(2) + "\n";
}

}  // namespace ssd::io

#include "cosenet/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cosenet/error.hpp"

namespace cosenet {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<double> parse_list(std::string_view text, const std::string& where) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto field = trim(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
        double v = 0.0;
        const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (field.empty() || ec != std::errc{} || end != field.data() + field.size()) {
            throw Error(ErrorCode::IoError,
                        where + ": cannot parse '" + std::string(field) + "' as a number");
        }
        values.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return values;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    return out;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

Matrix parse_matrix_text(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        rows.push_back(parse_list(body, "line " + std::to_string(line_no)));
    }
    const std::size_t n = rows.size();
    if (n == 0) throw Error(ErrorCode::NotSquare, "matrix file has no rows");
    Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) {
            throw Error(ErrorCode::NotSquare, "row " + std::to_string(i) + " has " +
                                                  std::to_string(rows[i].size()) +
                                                  " values, expected " + std::to_string(n));
        }
        for (std::size_t j = 0; j < n; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return m;
}

Matrix read_matrix_file(const std::filesystem::path& path) {
    return parse_matrix_text(read_text(path));
}

void write_matrix_file(const std::filesystem::path& path, const Matrix& m) {
    auto out = open_out(path);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
    if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

std::string format_record(const SynthRecord& record) {
    std::string line;
    const Matrix& m = record.matrix.values();
    for (Eigen::Index k = 0; k < m.size(); ++k) {
        if (k) line += ',';
        line += format_double(m.data()[k]);
    }
    line += '|';
    const auto& bits = record.segmentation.bits();
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (i) line += ',';
        line += bits[i] ? '1' : '0';
    }
    return line;
}

SynthRecord parse_record(const std::string& line) {
    const auto bar = line.find('|');
    if (bar == std::string::npos) throw Error(ErrorCode::IoError, "record has no '|' separator");
    const auto flat = parse_list(std::string_view(line).substr(0, bar), "record matrix");
    const auto target = parse_list(std::string_view(line).substr(bar + 1), "record target");

    const std::size_t n = target.size();
    if (flat.size() != n * n) {
        throw Error(ErrorCode::IoError, "record has " + std::to_string(flat.size()) +
                                            " matrix values for " + std::to_string(n) + " bits");
    }
    std::vector<std::uint8_t> bits(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (target[i] != 0.0 && target[i] != 1.0) {
            throw Error(ErrorCode::IoError, "record target bit is not 0 or 1");
        }
        bits[i] = target[i] == 1.0 ? 1 : 0;
    }
    const auto sn = static_cast<Eigen::Index>(n);
    Matrix m = Eigen::Map<const Matrix>(flat.data(), sn, sn);
    return {validate_matrix(std::move(m)), SegmentationVector(std::move(bits))};
}

const char* split_name(Split split) {
    switch (split) {
        case Split::Train: return "train";
        case Split::Validation: return "validation";
        case Split::Test: return "test";
    }
    return "train";
}

std::filesystem::path split_path(const std::filesystem::path& dir, Split split) {
    return dir / (std::string(split_name(split)) + ".txt");
}

void write_split(const std::filesystem::path& dir, Split split,
                 const std::vector<SynthRecord>& records) {
    const auto path = split_path(dir, split);
    auto out = open_out(path);
    for (const auto& rec : records) out << format_record(rec) << '\n';
    if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

std::vector<SynthRecord> read_split(const std::filesystem::path& dir, Split split) {
    const auto path = split_path(dir, split);
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::vector<SynthRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        try {
            records.push_back(parse_record(line));
        } catch (const Error& e) {
            throw Error(e.code(), path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

void write_synth_spec(const std::filesystem::path& dir, const SynthSpec& spec) {
    nlohmann::json doc = {
        {"size", spec.size},           {"noise_mean", spec.noise_mean},
        {"noise_var", spec.noise_var}, {"groups_mean", spec.groups_mean},
        {"groups_var", spec.groups_var}, {"count", spec.count},
        {"seed", spec.seed},
    };
    auto out = open_out(dir / "spec.json");
    out << doc.dump(2) << '\n';
}

bool read_synth_spec(const std::filesystem::path& dir, SynthSpec& spec) {
    const auto path = dir / "spec.json";
    if (!std::filesystem::exists(path)) return false;
    try {
        const auto doc = nlohmann::json::parse(read_text(path));
        spec.size = doc.at("size").get<std::size_t>();
        spec.noise_mean = doc.at("noise_mean").get<double>();
        spec.noise_var = doc.at("noise_var").get<double>();
        spec.groups_mean = doc.at("groups_mean").get<double>();
        spec.groups_var = doc.at("groups_var").get<double>();
        spec.count = doc.at("count").get<std::size_t>();
        spec.seed = doc.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::IoError, "invalid " + path.string() + ": " + e.what());
    }
    return true;
}

}  // namespace cosenet

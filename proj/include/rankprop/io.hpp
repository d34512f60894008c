#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "rankprop/errors.hpp"
#include "rankprop/response_matrix.hpp"

namespace rankprop {

// Shortest decimal that round-trips to the same double, so serialized
// output is byte-stable across runs and platforms.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline double parse_value(const std::string& field, std::size_t line_no) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw ParseError("line " + std::to_string(line_no) + ": bad numeric value '" + field +
                         "'");
    return v;
}

// RFC 4180 tokenizer: quoted fields may contain commas, doubled quotes and
// newlines; records end at an unquoted newline (LF or CRLF).
inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false, field_started = false;
    std::size_t line_no = 1;

    auto end_field = [&]() {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&]() {
        end_field();
        records.push_back(std::move(record));
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line_no;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                if (field.empty() && !field_started) {
                    quoted = true;
                    field_started = true;
                } else {
                    throw ParseError("line " + std::to_string(line_no) +
                                     ": quote inside unquoted field");
                }
                break;
            case ',':
                end_field();
                break;
            case '\r':
                if (i + 1 >= text.size() || text[i + 1] != '\n')
                    throw ParseError("line " + std::to_string(line_no) +
                                     ": bare carriage return");
                break;  // the following \n ends the record
            case '\n':
                end_record();
                ++line_no;
                break;
            default:
                field.push_back(c);
                field_started = true;
        }
    }
    if (quoted) throw ParseError("unterminated quoted field at end of input");
    if (field_started || !field.empty() || !record.empty()) end_record();
    return records;
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += '"';
    return out;
}

}  // namespace detail

// Question-major CSV: header `question_id[,dataset],<model ids...>`, one row
// per question with a value per model. The dataset column is optional and
// recognized by its header name.
inline ResponseMatrix read_csv(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    const auto records = detail::parse_csv(buf.str());
    if (records.empty()) throw ParseError("empty CSV input");
    const auto& header = records[0];
    if (header.size() < 2 || header[0] != "question_id")
        throw ParseError("line 1: header must start with question_id");
    const bool tagged = header.size() >= 2 && header[1] == "dataset";
    const std::size_t first_model = tagged ? 2 : 1;
    if (header.size() <= first_model)
        throw ParseError("line 1: header lists no model columns");

    ResponseMatrix m;
    m.model_ids.assign(header.begin() + static_cast<std::ptrdiff_t>(first_model), header.end());
    const std::size_t M = m.m_count();
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& row = records[r];
        const std::size_t line_no = r + 1;
        if (row.size() != header.size())
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(row.size()));
        m.question_ids.push_back(row[0]);
        if (tagged) m.dataset_tags.push_back(row[1]);
        for (std::size_t j = 0; j < M; ++j) {
            const double v = detail::parse_value(row[first_model + j], line_no);
            if (!(v >= 0.0 && v <= 1.0))
                throw ValueOutOfRange("line " + std::to_string(line_no) + ": value " +
                                      row[first_model + j] + " outside [0,1]");
            m.values.push_back(v);
        }
    }
    if (m.question_ids.empty()) throw ParseError("CSV has a header but no data rows");
    m.recompute_binary_flag();
    m.validate();
    return m;
}

inline void write_csv(std::ostream& out, const ResponseMatrix& m) {
    out << "question_id";
    if (m.has_tags()) out << ",dataset";
    for (const auto& id : m.model_ids) out << ',' << detail::csv_escape(id);
    out << '\n';
    for (std::size_t q = 0; q < m.q_count(); ++q) {
        out << detail::csv_escape(m.question_ids[q]);
        if (m.has_tags()) out << ',' << detail::csv_escape(m.dataset_tags[q]);
        for (std::size_t j = 0; j < m.m_count(); ++j) out << ',' << format_double(m.at(q, j));
        out << '\n';
    }
}

// JSONL: one object per line, {"question_id": ..., "dataset": optional,
// "responses": {model id: value}}. Every line must cover the same model set.
inline ResponseMatrix read_jsonl(std::istream& in) {
    std::vector<MatrixRecord> recs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        nlohmann::ordered_json obj;
        try {
            obj = nlohmann::ordered_json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!obj.is_object() || !obj.contains("question_id") || !obj.contains("responses"))
            throw ParseError("line " + std::to_string(line_no) +
                             ": need question_id and responses");
        MatrixRecord base;
        base.question_id = obj["question_id"].get<std::string>();
        if (obj.contains("dataset")) base.dataset_tag = obj["dataset"].get<std::string>();
        const auto& resp = obj["responses"];
        if (!resp.is_object() || resp.empty())
            throw ParseError("line " + std::to_string(line_no) + ": responses must be a "
                             "non-empty object");
        for (const auto& [model, value] : resp.items()) {
            MatrixRecord r = base;
            r.model_id = model;
            if (!value.is_number())
                throw ParseError("line " + std::to_string(line_no) + ": non-numeric value for '" +
                                 model + "'");
            r.value = value.get<double>();
            recs.push_back(std::move(r));
        }
    }
    if (recs.empty()) throw ParseError("empty JSONL input");
    return build_matrix(recs);
}

inline void write_jsonl(std::ostream& out, const ResponseMatrix& m) {
    for (std::size_t q = 0; q < m.q_count(); ++q) {
        nlohmann::ordered_json obj;
        obj["question_id"] = m.question_ids[q];
        if (m.has_tags()) obj["dataset"] = m.dataset_tags[q];
        nlohmann::ordered_json resp;
        for (std::size_t j = 0; j < m.m_count(); ++j) resp[m.model_ids[j]] = m.at(q, j);
        obj["responses"] = std::move(resp);
        out << obj.dump() << '\n';
    }
}

enum class MatrixFormat { Csv, Jsonl };

inline ResponseMatrix read_matrix_file(const std::string& path, MatrixFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open input file: " + path);
    return format == MatrixFormat::Csv ? read_csv(in) : read_jsonl(in);
}

}  // namespace rankprop

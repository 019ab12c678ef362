#ifndef EQIP_INSTANCE_IO_HPP
#define EQIP_INSTANCE_IO_HPP

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "eqip/errors.hpp"
#include "eqip/instance.hpp"
#include "eqip/scalar.hpp"

namespace eqip {

// Instance file format:
//
//   # comment
//   p ip01 <n> <m>
//   c <c_1> ... <c_n>            (optional, at most once)
//   e <A_i1> ... <A_in> <b_i>    (exactly m lines)
//
// Tokens are whitespace-separated scalars ("3", "-0.25", "7/14").

namespace detail {

struct Token {
    std::string_view text;
    std::size_t column; // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

inline std::size_t parse_count(const Token& t, std::size_t line, const char* what) {
    if (t.text.empty() || t.text.size() > 9) throw ParseError(std::string("invalid ") + what, line, t.column);
    std::size_t v = 0;
    for (std::size_t k = 0; k < t.text.size(); ++k) {
        char ch = t.text[k];
        if (ch < '0' || ch > '9') {
            throw ParseError(std::string("invalid ") + what + " '" + std::string(t.text) + "'", line, t.column + k);
        }
        v = v * 10 + static_cast<std::size_t>(ch - '0');
    }
    return v;
}

inline Rational parse_token(const Token& t, std::size_t line) {
    try {
        return parse_scalar(t.text);
    } catch (const ParseError& e) {
        throw ParseError(e.detail() + " in '" + std::string(t.text) + "'", line, t.column + e.column() - 1);
    }
}

} // namespace detail

/// `comments`, when given, receives the text of every '#' line.
inline Instance parse_instance_file(std::string_view text, std::vector<std::string>* comments = nullptr) {
    RawInstance raw;
    bool have_header = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        auto tokens = detail::tokenize(line);
        if (tokens.empty()) continue;
        if (tokens[0].text.front() == '#') {
            if (comments) {
                auto body = line.substr(line.find('#') + 1);
                if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
                comments->emplace_back(body);
            }
            continue;
        }
        const auto& tag = tokens[0];

        if (!have_header) {
            if (tag.text != "p") throw ParseError("expected header line 'p ip01 <n> <m>'", line_no, tag.column);
            if (tokens.size() != 4 || tokens[1].text != "ip01") {
                throw ParseError("header must read 'p ip01 <n> <m>'", line_no, tag.column);
            }
            raw.n = detail::parse_count(tokens[2], line_no, "variable count");
            raw.m = detail::parse_count(tokens[3], line_no, "constraint count");
            if (raw.n == 0) throw ParseError("variable count must be positive", line_no, tokens[2].column);
            have_header = true;
            continue;
        }

        if (tag.text == "p") throw ParseError("duplicate header line", line_no, tag.column);
        if (tag.text == "c") {
            if (raw.c) throw ParseError("duplicate objective line", line_no, tag.column);
            if (tokens.size() - 1 != raw.n) {
                throw ParseError("objective line has " + std::to_string(tokens.size() - 1) + " of " +
                                     std::to_string(raw.n) + " entries",
                                 line_no, tag.column);
            }
            std::vector<Rational> c;
            for (std::size_t k = 1; k < tokens.size(); ++k) c.push_back(detail::parse_token(tokens[k], line_no));
            raw.c = std::move(c);
        } else if (tag.text == "e") {
            if (raw.rows.size() == raw.m) {
                throw ParseError("declared " + std::to_string(raw.m) + " rows, found more", line_no, tag.column);
            }
            if (tokens.size() - 1 != raw.n + 1) {
                throw ParseError("constraint line has " + std::to_string(tokens.size() - 1) + " tokens, expected " +
                                     std::to_string(raw.n + 1),
                                 line_no, tag.column);
            }
            std::vector<Rational> row;
            for (std::size_t k = 1; k <= raw.n; ++k) row.push_back(detail::parse_token(tokens[k], line_no));
            raw.rows.push_back(std::move(row));
            raw.b.push_back(detail::parse_token(tokens[raw.n + 1], line_no));
        } else {
            throw ParseError("unknown line type '" + std::string(tag.text) + "'", line_no, tag.column);
        }
    }
    if (!have_header) throw ParseError("missing header line 'p ip01 <n> <m>'", line_no + 1, 1);
    if (raw.rows.size() != raw.m) {
        throw ParseError("declared " + std::to_string(raw.m) + " rows, found " + std::to_string(raw.rows.size()),
                         line_no + 1, 1);
    }
    return validate_instance(raw);
}

/// Canonical text form; `comments` become leading "# " lines.
inline std::string write_instance_file(const Instance& inst, const std::vector<std::string>& comments = {}) {
    std::string out;
    for (const auto& c : comments) out += "# " + c + "\n";
    out += "p ip01 " + std::to_string(inst.n()) + " " + std::to_string(inst.m()) + "\n";
    if (inst.has_objective()) {
        out += "c";
        for (const auto& v : *inst.objective()) out += " " + render_scalar(v);
        out += "\n";
    }
    for (std::size_t i = 0; i < inst.m(); ++i) {
        out += "e";
        for (const auto& v : inst.row(i)) out += " " + render_scalar(v);
        out += " " + render_scalar(inst.b()[i]) + "\n";
    }
    return out;
}

inline Instance read_instance_file(const std::string& path, std::vector<std::string>* comments = nullptr) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_instance_file(ss.str(), comments);
}

} // namespace eqip

#endif // EQIP_INSTANCE_IO_HPP

#include "easym/table_io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "easym/errors.hpp"

namespace easym {
namespace {

using Kind = ParseError::Kind;

class TableReader {
public:
    explicit TableReader(std::string_view text) : text_(text) {}

    FuncTable parse() {
        skip_ws();
        expect('{');
        skip_ws();
        if (peek() != '}') {
            while (true) {
                skip_ws();
                member();
                skip_ws();
                if (peek() == '}') break;
                expect(',');
            }
        }
        expect('}');
        skip_ws();
        if (pos_ != text_.size()) fail(Kind::syntax, "trailing characters");
        return finish();
    }

private:
    [[noreturn]] void fail(Kind kind, const std::string& message) const {
        throw ParseError(kind, message, pos_);
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r')) {
            ++pos_;
        }
    }

    void expect(char c) {
        if (peek() != c) fail(Kind::syntax, std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string key() {
        expect('"');
        const std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != '"') {
            if (text_[pos_] == '\\') fail(Kind::header, "escape sequences are not allowed in keys");
            ++pos_;
        }
        if (pos_ == text_.size()) fail(Kind::syntax, "unterminated string");
        std::string k(text_.substr(start, pos_ - start));
        ++pos_;
        return k;
    }

    std::uint64_t integer() {
        const std::size_t start = pos_;
        if (peek() < '0' || peek() > '9') fail(Kind::syntax, "expected a nonnegative integer");
        std::uint64_t value = 0;
        while (peek() >= '0' && peek() <= '9') {
            const auto digit = static_cast<std::uint64_t>(peek() - '0');
            if (value > (UINT64_MAX - digit) / 10) fail(Kind::syntax, "integer too large");
            value = value * 10 + digit;
            ++pos_;
        }
        if (pos_ - start > 1 && text_[start] == '0') {
            pos_ = start;
            fail(Kind::syntax, "leading zeros are not allowed");
        }
        if (peek() == '.' || peek() == 'e' || peek() == 'E') fail(Kind::syntax, "expected an integer");
        return value;
    }

    void member() {
        const std::size_t key_at = pos_;
        const std::string k = key();
        skip_ws();
        expect(':');
        skip_ws();
        auto scalar = [&](std::optional<std::uint64_t>& slot, std::size_t& offset) {
            if (slot) {
                pos_ = key_at;
                fail(Kind::header, "duplicate key \"" + k + "\"");
            }
            offset = pos_;
            slot = integer();
        };
        if (k == "q") {
            scalar(q_, q_at_);
        } else if (k == "n") {
            scalar(n_, n_at_);
        } else if (k == "m") {
            scalar(m_, m_at_);
        } else if (k == "table") {
            if (table_) {
                pos_ = key_at;
                fail(Kind::header, "duplicate key \"table\"");
            }
            table_.emplace();
            expect('[');
            skip_ws();
            if (peek() != ']') {
                while (true) {
                    skip_ws();
                    cell_offsets_.push_back(pos_);
                    table_->push_back(integer());
                    skip_ws();
                    if (peek() == ']') break;
                    expect(',');
                }
            }
            table_end_ = pos_;
            expect(']');
        } else {
            pos_ = key_at;
            fail(Kind::header, "unknown key \"" + k + "\"");
        }
    }

    FuncTable finish() {
        if (!q_ || !n_ || !m_ || !table_) {
            pos_ = text_.size();
            fail(Kind::header, "missing one of the keys q, n, m, table");
        }
        if (!Field::supported(static_cast<unsigned>(*q_)) || *q_ > 9) {
            pos_ = q_at_;
            fail(Kind::header, "unsupported field size q");
        }
        if (*n_ == 0 || *n_ > 31) {
            pos_ = n_at_;
            fail(Kind::header, "n out of range");
        }
        if (*m_ == 0 || *m_ > 31) {
            pos_ = m_at_;
            fail(Kind::header, "m out of range");
        }
        Shape shape{static_cast<unsigned>(*q_), static_cast<std::size_t>(*n_), static_cast<std::size_t>(*m_)};
        Code domain = 0;
        Code codomain = 0;
        try {
            domain = shape.domain_size();
            codomain = shape.codomain_size();
        } catch (const ArgumentError&) {
            pos_ = n_at_;
            fail(Kind::header, "q^n or q^m too large");
        }
        if (table_->size() != domain) {
            pos_ = table_->size() > domain ? cell_offsets_[domain] : table_end_;
            fail(Kind::table_length, "table length " + std::to_string(table_->size()) + " != q^n = " +
                                         std::to_string(domain));
        }
        std::vector<Code> cells;
        cells.reserve(domain);
        for (std::size_t i = 0; i < table_->size(); ++i) {
            if ((*table_)[i] >= codomain) {
                pos_ = cell_offsets_[i];
                fail(Kind::code_range, "code out of range: " + std::to_string((*table_)[i]) + " >= q^m = " +
                                           std::to_string(codomain));
            }
            cells.push_back(static_cast<Code>((*table_)[i]));
        }
        return FuncTable(shape, std::move(cells));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::optional<std::uint64_t> q_, n_, m_;
    std::size_t q_at_ = 0, n_at_ = 0, m_at_ = 0;
    std::optional<std::vector<std::uint64_t>> table_;
    std::vector<std::size_t> cell_offsets_;
    std::size_t table_end_ = 0;
};

}  // namespace

std::string format_table(const FuncTable& F) {
    std::ostringstream os;
    os << "{\"q\": " << F.shape().q << ", \"n\": " << F.shape().n << ", \"m\": " << F.shape().m
       << ", \"table\": [";
    for (std::size_t x = 0; x < F.size(); ++x) os << (x ? ", " : "") << F[x];
    os << "]}\n";
    return os.str();
}

FuncTable parse_table(std::string_view text) { return TableReader(text).parse(); }

FuncTable read_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_table(buffer.str());
}

void write_table(const FuncTable& F, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write " + path.string());
    out << format_table(F);
    if (!out) throw ArgumentError("write failed for " + path.string());
}

}  // namespace easym

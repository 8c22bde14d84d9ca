#include "oppforge/json_doc.hpp"

#include "oppforge/error.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>

namespace oppforge {

namespace {

class JsoncParser {
public:
    explicit JsoncParser(std::string_view text) : text_(text) {}

    JsonDoc run()
    {
        if (text_.substr(0, 3) == "\xEF\xBB\xBF") {
            pos_ = 3;
        }
        skip_trivia();
        JsonDoc value = parse_value();
        skip_trivia();
        if (!eof()) {
            fail("trailing content after the top-level value");
        }
        return value;
    }

private:
    static constexpr int max_depth = 256;

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
    int depth_ = 0;

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char peek_at(std::size_t offset) const
    {
        return pos_ + offset < text_.size() ? text_[pos_ + offset] : '\0';
    }

    char advance()
    {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    [[noreturn]] void fail(const std::string& message) const
    {
        throw ParseError(line_, column_, message);
    }

    void skip_trivia()
    {
        for (;;) {
            while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r')) {
                advance();
            }
            if (eof() || peek() != '/') {
                return;
            }
            if (peek_at(1) == '/') {
                while (!eof() && peek() != '\n') {
                    advance();
                }
            } else if (peek_at(1) == '*') {
                int start_line = line_;
                int start_col = column_;
                advance();
                advance();
                for (;;) {
                    if (eof()) {
                        throw ParseError(start_line, start_col, "unterminated block comment");
                    }
                    if (advance() == '*' && !eof() && peek() == '/') {
                        advance();
                        break;
                    }
                }
            } else {
                fail("unexpected '/'");
            }
        }
    }

    void expect(char c, const char* what)
    {
        if (eof() || peek() != c) {
            fail(std::string("expected ") + what);
        }
        advance();
    }

    void expect_word(std::string_view word)
    {
        for (char c : word) {
            if (eof() || peek() != c) {
                fail("invalid literal");
            }
            advance();
        }
    }

    JsonDoc parse_value()
    {
        if (eof()) {
            fail("unexpected end of input");
        }
        switch (peek()) {
        case '{': return parse_object();
        case '[': return parse_array();
        case '"': return JsonDoc(parse_string());
        case 't':
            expect_word("true");
            return JsonDoc(true);
        case 'f':
            expect_word("false");
            return JsonDoc(false);
        case 'n':
            expect_word("null");
            return JsonDoc(nullptr);
        default:
            if (peek() == '-' || std::isdigit(static_cast<unsigned char>(peek()))) {
                return parse_number();
            }
            fail(std::string("unexpected character '") + peek() + "'");
        }
    }

    JsonDoc parse_object()
    {
        if (++depth_ > max_depth) {
            fail("nesting too deep");
        }
        advance(); // '{'
        JsonDoc object = JsonDoc::object();
        skip_trivia();
        if (!eof() && peek() == '}') {
            advance();
            --depth_;
            return object;
        }
        for (;;) {
            skip_trivia();
            if (eof() || peek() != '"') {
                fail("expected object key string");
            }
            std::string key = parse_string();
            skip_trivia();
            expect(':', "':' after object key");
            skip_trivia();
            object[std::move(key)] = parse_value();
            skip_trivia();
            if (!eof() && peek() == ',') {
                advance();
                skip_trivia();
                if (!eof() && peek() == '}') {
                    break; // trailing comma
                }
                continue;
            }
            if (!eof() && peek() == '}') {
                break;
            }
            fail("expected ',' or '}' in object");
        }
        advance(); // '}'
        --depth_;
        return object;
    }

    JsonDoc parse_array()
    {
        if (++depth_ > max_depth) {
            fail("nesting too deep");
        }
        advance(); // '['
        JsonDoc array = JsonDoc::array();
        skip_trivia();
        if (!eof() && peek() == ']') {
            advance();
            --depth_;
            return array;
        }
        for (;;) {
            skip_trivia();
            array.push_back(parse_value());
            skip_trivia();
            if (!eof() && peek() == ',') {
                advance();
                skip_trivia();
                if (!eof() && peek() == ']') {
                    break; // trailing comma
                }
                continue;
            }
            if (!eof() && peek() == ']') {
                break;
            }
            fail("expected ',' or ']' in array");
        }
        advance(); // ']'
        --depth_;
        return array;
    }

    void append_utf8(std::string& out, std::uint32_t cp)
    {
        if (cp < 0x80) {
            out += static_cast<char>(cp);
        } else if (cp < 0x800) {
            out += static_cast<char>(0xC0 | (cp >> 6));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else if (cp < 0x10000) {
            out += static_cast<char>(0xE0 | (cp >> 12));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else {
            out += static_cast<char>(0xF0 | (cp >> 18));
            out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        }
    }

    std::uint32_t parse_hex4()
    {
        std::uint32_t value = 0;
        for (int i = 0; i < 4; ++i) {
            if (eof()) {
                fail("truncated \\u escape");
            }
            char c = advance();
            value <<= 4;
            if (c >= '0' && c <= '9') {
                value |= static_cast<std::uint32_t>(c - '0');
            } else if (c >= 'a' && c <= 'f') {
                value |= static_cast<std::uint32_t>(c - 'a' + 10);
            } else if (c >= 'A' && c <= 'F') {
                value |= static_cast<std::uint32_t>(c - 'A' + 10);
            } else {
                fail("invalid hex digit in \\u escape");
            }
        }
        return value;
    }

    // Validates one multi-byte UTF-8 sequence whose lead byte was consumed.
    void consume_utf8_tail(std::string& out, unsigned char lead)
    {
        int extra = 0;
        std::uint32_t cp = 0;
        if ((lead & 0xE0) == 0xC0) {
            extra = 1;
            cp = lead & 0x1F;
        } else if ((lead & 0xF0) == 0xE0) {
            extra = 2;
            cp = lead & 0x0F;
        } else if ((lead & 0xF8) == 0xF0) {
            extra = 3;
            cp = lead & 0x07;
        } else {
            fail("invalid UTF-8 byte in string");
        }
        for (int i = 0; i < extra; ++i) {
            if (eof() || (static_cast<unsigned char>(peek()) & 0xC0) != 0x80) {
                fail("invalid UTF-8 continuation byte in string");
            }
            cp = (cp << 6) | (static_cast<unsigned char>(advance()) & 0x3F);
        }
        static constexpr std::uint32_t min_for_extra[] = {0, 0x80, 0x800, 0x10000};
        if (cp < min_for_extra[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            fail("invalid UTF-8 sequence in string");
        }
        append_utf8(out, cp);
    }

    std::string parse_string()
    {
        advance(); // '"'
        std::string out;
        for (;;) {
            if (eof()) {
                fail("unterminated string");
            }
            unsigned char c = static_cast<unsigned char>(advance());
            if (c == '"') {
                return out;
            }
            if (c == '\\') {
                if (eof()) {
                    fail("unterminated escape");
                }
                char e = advance();
                switch (e) {
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                case '/': out += '/'; break;
                case 'b': out += '\b'; break;
                case 'f': out += '\f'; break;
                case 'n': out += '\n'; break;
                case 'r': out += '\r'; break;
                case 't': out += '\t'; break;
                case 'u': {
                    std::uint32_t cp = parse_hex4();
                    if (cp >= 0xD800 && cp <= 0xDBFF) {
                        if (eof() || peek() != '\\' || peek_at(1) != 'u') {
                            fail("unpaired surrogate in \\u escape");
                        }
                        advance();
                        advance();
                        std::uint32_t low = parse_hex4();
                        if (low < 0xDC00 || low > 0xDFFF) {
                            fail("invalid low surrogate in \\u escape");
                        }
                        cp = 0x10000 + ((cp - 0xD800) << 10) + (low - 0xDC00);
                    } else if (cp >= 0xDC00 && cp <= 0xDFFF) {
                        fail("unpaired surrogate in \\u escape");
                    }
                    append_utf8(out, cp);
                    break;
                }
                default: fail("invalid escape sequence");
                }
            } else if (c < 0x20) {
                fail("unescaped control character in string");
            } else if (c < 0x80) {
                out += static_cast<char>(c);
            } else {
                consume_utf8_tail(out, c);
            }
        }
    }

    JsonDoc parse_number()
    {
        std::size_t start = pos_;
        bool negative = false;
        bool is_integer = true;

        if (peek() == '-') {
            negative = true;
            advance();
        }
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) {
            fail("invalid number");
        }
        if (peek() == '0') {
            advance();
            if (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
                fail("leading zeros are not allowed");
            }
        } else {
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
                advance();
            }
        }
        if (!eof() && peek() == '.') {
            is_integer = false;
            advance();
            if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) {
                fail("digits required after decimal point");
            }
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
                advance();
            }
        }
        if (!eof() && (peek() == 'e' || peek() == 'E')) {
            is_integer = false;
            advance();
            if (!eof() && (peek() == '+' || peek() == '-')) {
                advance();
            }
            if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) {
                fail("digits required in exponent");
            }
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
                advance();
            }
        }

        std::string_view token = text_.substr(start, pos_ - start);
        if (is_integer) {
            if (!negative) {
                std::uint64_t value = 0;
                auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
                if (ec == std::errc() && ptr == token.data() + token.size()) {
                    return JsonDoc(value);
                }
            } else {
                std::int64_t value = 0;
                auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
                if (ec == std::errc() && ptr == token.data() + token.size()) {
                    return JsonDoc(value);
                }
            }
            // fall through to double on overflow
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size()) {
            fail("invalid number");
        }
        return JsonDoc(value);
    }
};

void write_value(const JsonDoc& value, std::string& out, int level)
{
    const std::string pad(static_cast<std::size_t>(level) * 4, ' ');
    const std::string inner_pad(static_cast<std::size_t>(level + 1) * 4, ' ');

    if (value.is_object()) {
        if (value.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = value.begin(); it != value.end(); ++it) {
            if (!first) {
                out += ",\n";
            }
            first = false;
            out += inner_pad;
            out += JsonDoc(it.key()).dump();
            out += ": ";
            write_value(it.value(), out, level + 1);
        }
        out += '\n';
        out += pad;
        out += '}';
    } else if (value.is_array()) {
        if (value.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        bool first = true;
        for (const JsonDoc& element : value) {
            if (!first) {
                out += ",\n";
            }
            first = false;
            out += inner_pad;
            write_value(element, out, level + 1);
        }
        out += '\n';
        out += pad;
        out += ']';
    } else {
        out += value.dump();
    }
}

} // namespace

JsonDoc parse_jsonc(std::string_view text)
{
    return JsoncParser(text).run();
}

std::string serialize_json(const JsonDoc& doc)
{
    std::string out;
    write_value(doc, out, 0);
    out += '\n';
    return out;
}

} // namespace oppforge

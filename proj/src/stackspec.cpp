#include "stacky/stackspec.hpp"

#include <cctype>

#include "stacky/error.hpp"

namespace stacky {

namespace {

// cursor over the raw text; offsets in errors refer to the original string
struct Cursor {
    const std::string& text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && isspace((unsigned char)text[pos])) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
        return text[pos];
    }
    char take() {
        char c = peek();
        ++pos;
        return c;
    }
    void expect(char c) {
        char got = peek();
        if (got != c)
            throw ParseError(std::string("expected '") + c + "', found '" + got + "'", pos);
        ++pos;
    }
    bool try_take(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) { ++pos; return true; }
        return false;
    }
    std::string take_word() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && (isalnum((unsigned char)text[pos]) || text[pos] == '_'))
            ++pos;
        if (pos == start) throw ParseError("expected a name", pos);
        return text.substr(start, pos - start);
    }
    long long take_int() {
        skip_ws();
        size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() && isdigit((unsigned char)text[pos])) ++pos;
        if (pos == start || (pos == start + 1 && !isdigit((unsigned char)text[start])))
            throw ParseError("expected an integer", start);
        try {
            return std::stoll(text.substr(start, pos - start));
        } catch (const std::exception&) {
            throw ParseError("integer out of range", start);
        }
    }
    // text up to the matching close paren of an already-consumed '('
    std::string take_until_matching_paren() {
        size_t start = pos;
        int depth = 1;
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '(') ++depth;
            if (c == ')') {
                --depth;
                if (depth == 0) {
                    std::string body = text.substr(start, pos - start);
                    ++pos;
                    return body;
                }
            }
            ++pos;
        }
        throw ParseError("unbalanced parentheses", start);
    }
};

StackDescriptor parse_stack(Cursor& cur, const Bounds& bounds);

StackDescriptor parse_bg(Cursor& cur, const Bounds& bounds) {
    cur.expect('(');
    size_t body_start = cur.pos;
    std::string body = cur.take_until_matching_paren();
    // fields split on ';' (never appears inside cycle lists)
    long long degree = -1;
    std::string gens_text;
    FieldDescriptor field = FieldDescriptor::rationals();
    size_t p = 0;
    while (p < body.size()) {
        size_t semi = body.find(';', p);
        size_t end = semi == std::string::npos ? body.size() : semi;
        std::string field_text = body.substr(p, end - p);
        size_t field_off = body_start + p;
        p = end + 1;
        size_t eq = field_text.find('=');
        if (eq == std::string::npos) {
            if (field_text.find_first_not_of(" \t") == std::string::npos) continue;
            throw ParseError("expected key=value inside bg(...)", field_off);
        }
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t");
            size_t b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(field_text.substr(0, eq));
        std::string val = trim(field_text.substr(eq + 1));
        try {
            if (key == "degree") degree = std::stoll(val);
            else if (key == "gens") gens_text = val;
            else if (key == "field") field = FieldDescriptor::parse(val);
            else throw Error("unknown bg field '" + key + "'");
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(e.what(), field_off);
        }
    }
    if (degree <= 0) throw ParseError("bg(...) needs degree=<n>", body_start);
    if (gens_text.empty()) throw ParseError("bg(...) needs gens=...", body_start);
    try {
        PermGroup g = PermGroup::parse("degree=" + std::to_string(degree) + "; gens=" + gens_text,
                                       bounds);
        return StackDescriptor::bg(std::move(g), field);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(e.what(), body_start);
    }
}

StackDescriptor parse_stack(Cursor& cur, const Bounds& bounds) {
    size_t name_pos = cur.pos;
    std::string name = cur.take_word();
    if (name == "bg") return parse_bg(cur, bounds);
    if (name == "mu") {
        cur.expect('(');
        size_t arg_pos = cur.pos;
        long long l = cur.take_int();
        cur.expect(')');
        if (l <= 0) throw ParseError("mu(l) needs l >= 1", arg_pos);
        return StackDescriptor::mu(l);
    }
    if (name == "wps") {
        cur.expect('(');
        std::vector<long long> weights;
        size_t arg_pos = cur.pos;
        weights.push_back(cur.take_int());
        while (cur.try_take(',')) weights.push_back(cur.take_int());
        cur.expect(')');
        for (long long a : weights)
            if (a <= 0) throw ParseError("weights must be positive", arg_pos);
        return StackDescriptor::wps(std::move(weights));
    }
    if (name == "prod") {
        cur.expect('(');
        std::vector<StackDescriptor> factors;
        factors.push_back(parse_stack(cur, bounds));
        while (cur.try_take(',')) factors.push_back(parse_stack(cur, bounds));
        cur.expect(')');
        if (factors.size() < 2) throw ParseError("prod(...) needs at least two factors", name_pos);
        return StackDescriptor::product(std::move(factors));
    }
    throw ParseError("unknown stack constructor '" + name + "'", name_pos);
}

}  // namespace

StackDescriptor parse_stack_spec(const std::string& text, const Bounds& bounds) {
    Cursor cur{text};
    StackDescriptor x = parse_stack(cur, bounds);
    if (!cur.eof()) throw ParseError("trailing input after stack spec", cur.pos);
    return x;
}

namespace {

// raising-spec terms; '+' at the top level distributes terms over product factors
struct RaisingTermParser {
    Cursor& cur;
    const RaisingFileLoader& loader;
    const Bounds bounds;

    RaisingFunction parse_expr(const StackDescriptor& stack) {
        std::vector<size_t> term_offsets;
        std::vector<std::string> term_texts;
        // first split the expression into '+'-joined terms at depth 0
        cur.skip_ws();
        size_t start = cur.pos;
        int depth = 0;
        int brace = 0;
        term_offsets.push_back(cur.pos);
        size_t term_begin = cur.pos;
        while (cur.pos < cur.text.size()) {
            char c = cur.text[cur.pos];
            if (c == '(') ++depth;
            if (c == ')') {
                if (depth == 0) break;  // belongs to an enclosing boxplus
                --depth;
            }
            if (c == '{') ++brace;
            if (c == '}') --brace;
            if (c == ',' && depth == 0 && brace == 0) break;  // enclosing list
            if (c == '+' && depth == 0 && brace == 0) {
                term_texts.push_back(cur.text.substr(term_begin, cur.pos - term_begin));
                ++cur.pos;
                term_begin = cur.pos;
                term_offsets.push_back(cur.pos);
                continue;
            }
            ++cur.pos;
        }
        term_texts.push_back(cur.text.substr(term_begin, cur.pos - term_begin));

        if (term_texts.size() == 1)
            return parse_term(term_texts[0], term_offsets[0], stack);

        if (stack.kind() != StackDescriptor::Kind::Product)
            throw ParseError("'+'-joined raising terms need a product stack", start);
        if (term_texts.size() != stack.factors().size())
            throw ParseError("raising spec has " + std::to_string(term_texts.size()) +
                                 " terms but the product has " +
                                 std::to_string(stack.factors().size()) + " factors",
                             start);
        std::vector<RaisingFunction> parts;
        for (size_t i = 0; i < term_texts.size(); ++i)
            parts.push_back(parse_term(term_texts[i], term_offsets[i], stack.factors()[i]));
        return boxplus(stack, parts);
    }

    RaisingFunction parse_term(const std::string& raw, size_t offset,
                               const StackDescriptor& stack) {
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t");
            size_t b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string term = trim(raw);
        if (term.empty()) throw ParseError("empty raising term", offset);
        try {
            if (term == "builtin:index") return index_raising(stack);
            if (term == "builtin:quasitoric") return quasi_toric_raising(stack);
            if (term == "builtin:zero") return constant_raising(stack, Rat(0));
            if (term.rfind("constant:", 0) == 0)
                return constant_raising(stack, Rat::parse(term.substr(9)));
            if (term.rfind("table:{", 0) == 0 && term.back() == '}')
                return table_raising(stack, parse_table(term.substr(7, term.size() - 8), offset));
            if (term.rfind("file:", 0) == 0) {
                if (!loader) throw Error("file: raising terms are not available here");
                return table_raising(stack, loader(term.substr(5)));
            }
            if (term.rfind("boxplus(", 0) == 0 && term.back() == ')') {
                if (stack.kind() != StackDescriptor::Kind::Product)
                    throw Error("boxplus(...) needs a product stack");
                std::string body = term.substr(8, term.size() - 9);
                Cursor sub{body};
                RaisingTermParser inner{sub, loader, bounds};
                std::vector<RaisingFunction> parts;
                parts.push_back(inner.parse_expr(stack.factors()[0]));
                size_t i = 1;
                while (sub.try_take(',')) {
                    if (i >= stack.factors().size())
                        throw Error("boxplus has more arguments than product factors");
                    parts.push_back(inner.parse_expr(stack.factors()[i]));
                    ++i;
                }
                if (!sub.eof()) throw Error("trailing input in boxplus(...)");
                if (parts.size() != stack.factors().size())
                    throw Error("boxplus needs one raising function per factor");
                return boxplus(stack, parts);
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(e.what(), offset);
        }
        throw ParseError("unknown raising term '" + term + "'", offset);
    }

    static std::map<std::string, Rat> parse_table(const std::string& body, size_t offset) {
        std::map<std::string, Rat> table;
        size_t p = 0;
        while (p < body.size()) {
            // entry = label ':' value, split at the first ':' outside parens
            int depth = 0;
            size_t colon = std::string::npos;
            size_t end = body.size();
            for (size_t i = p; i < body.size(); ++i) {
                char c = body[i];
                if (c == '(') ++depth;
                if (c == ')') --depth;
                if (c == ':' && depth == 0 && colon == std::string::npos) colon = i;
                if (c == ',' && depth == 0) { end = i; break; }
            }
            if (colon == std::string::npos || colon >= end)
                throw ParseError("table entry needs label:value", offset + p);
            auto trim = [](std::string s) {
                size_t a = s.find_first_not_of(" \t");
                size_t b = s.find_last_not_of(" \t");
                return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
            };
            std::string label = trim(body.substr(p, colon - p));
            std::string value = trim(body.substr(colon + 1, end - colon - 1));
            if (label.empty()) throw ParseError("empty table label", offset + p);
            try {
                table[label] = Rat::parse(value);
            } catch (const std::exception& e) {
                throw ParseError(e.what(), offset + colon + 1);
            }
            p = end + 1;
        }
        return table;
    }
};

}  // namespace

RaisingFunction parse_raising_spec(const StackDescriptor& stack, const std::string& text,
                                   const RaisingFileLoader& loader) {
    Cursor cur{text};
    RaisingTermParser parser{cur, loader, {}};
    RaisingFunction c = parser.parse_expr(stack);
    if (!cur.eof()) throw ParseError("trailing input after raising spec", cur.pos);
    c.validate(stack);
    return c;
}

}  // namespace stacky

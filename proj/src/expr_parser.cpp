#include "defcalc/expr_parser.hpp"

#include <cctype>
#include <vector>

namespace defcalc {

namespace {

enum class Tok { Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t k = 0;
    auto push = [&](Tok t, std::string s) { out.push_back({t, std::move(s), line, col}); };
    while (k < text.size()) {
        char c = text[k];
        if (c == '\n') {
            ++line;
            col = 1;
            ++k;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++col;
            ++k;
            continue;
        }
        int start_col = col;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
                num += text[k++];
                ++col;
            }
            out.push_back({Tok::Int, num, line, start_col});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string id;
            while (k < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[k])))) {
                id += text[k++];
                ++col;
            }
            out.push_back({Tok::Ident, id, line, start_col});
            continue;
        }
        switch (c) {
        case '+': push(Tok::Plus, "+"); break;
        case '-': push(Tok::Minus, "-"); break;
        case '*': push(Tok::Star, "*"); break;
        case '/': push(Tok::Slash, "/"); break;
        case '^': push(Tok::Caret, "^"); break;
        case '(': push(Tok::LParen, "("); break;
        case ')': push(Tok::RParen, ")"); break;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
        ++k;
        ++col;
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> toks, int n, int order)
        : toks_(std::move(toks)), n_(n), order_(order) {}

    ParsedExpr run() {
        PolySeries v = parse_sum();
        expect(Tok::End, "end of expression");
        return {v, truncated_};
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_++]; }
    void expect(Tok kind, const std::string& what) {
        if (peek().kind != kind)
            throw ParseError("expected " + what + ", got '" + peek().text + "'", peek().line,
                             peek().col);
        ++pos_;
    }
    [[noreturn]] void fail(const Token& t, const std::string& msg) {
        throw ParseError(msg + " at '" + t.text + "'", t.line, t.col);
    }

    void note_truncation(const PolySeries& value, long estimate) {
        if (estimate > order_ && value.max_t_degree() < estimate)
            truncated_ = true;
    }

    // Alongside each value, track an upper bound for the untruncated t-degree
    // so dropped orders can be reported.
    struct Val {
        PolySeries v;
        long tdeg;
    };

    PolySeries parse_sum() {
        Val acc = parse_term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            bool minus = next().kind == Tok::Minus;
            Val rhs = parse_term();
            acc.v = minus ? acc.v - rhs.v : acc.v + rhs.v;
            acc.tdeg = std::max(acc.tdeg, rhs.tdeg);
        }
        return acc.v;
    }

    Val parse_term() {
        Val acc = parse_unary();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            Token op = next();
            Val rhs = parse_unary();
            if (op.kind == Tok::Star) {
                acc.v = acc.v * rhs.v;
                acc.tdeg += rhs.tdeg;
                note_truncation(acc.v, acc.tdeg);
            } else {
                if (!rhs.v.is_constant())
                    fail(op, "division requires a constant divisor");
                GaussRational c = rhs.v.constant_value();
                if (c.is_zero())
                    fail(op, "division by zero");
                acc.v = acc.v * (GaussRational::one() / c);
            }
        }
        return acc;
    }

    Val parse_unary() {
        if (peek().kind == Tok::Minus) {
            Token t = next();
            Val v = parse_unary();
            return {-v.v, v.tdeg};
        }
        if (peek().kind == Tok::Plus) {
            next();
            return parse_unary();
        }
        return parse_power();
    }

    Val parse_power() {
        Val base = parse_atom();
        if (peek().kind == Tok::Caret) {
            Token op = next();
            if (peek().kind != Tok::Int)
                fail(peek(), "exponent must be a nonnegative integer literal");
            Token e = next();
            unsigned long exp = std::stoul(e.text);
            if (exp > 64)
                fail(e, "exponent too large");
            base.v = base.v.pow(static_cast<unsigned>(exp));
            base.tdeg *= static_cast<long>(exp);
            note_truncation(base.v, base.tdeg);
            (void)op;
        }
        return base;
    }

    Val parse_atom() {
        Token t = next();
        switch (t.kind) {
        case Tok::Int:
            return {PolySeries::constant(n_, order_, GaussRational::integer(t.text)), 0};
        case Tok::LParen: {
            PolySeries v = parse_sum();
            expect(Tok::RParen, "')'");
            long tdeg = std::max(0, v.max_t_degree());
            return {v, tdeg};
        }
        case Tok::Ident: {
            if (t.text == "i")
                return {PolySeries::constant(n_, order_, GaussRational::i()), 0};
            if (t.text == "t") {
                Val v{PolySeries::var_t(n_, order_), 1};
                note_truncation(v.v, v.tdeg);
                return v;
            }
            bool zb = t.text.size() > 1 && t.text[0] == 'z' && t.text[1] == 'b';
            size_t digits = zb ? 2 : 1;
            if (t.text[0] == 'z' && t.text.size() > digits) {
                for (size_t k = digits; k < t.text.size(); ++k)
                    if (!std::isdigit(static_cast<unsigned char>(t.text[k])))
                        fail(t, "unknown identifier");
                int axis = std::stoi(t.text.substr(digits));
                if (axis < 1 || axis > n_)
                    fail(t, "axis out of range for chart dimension " + std::to_string(n_));
                return {zb ? PolySeries::var_zb(n_, order_, axis)
                           : PolySeries::var_z(n_, order_, axis),
                        0};
            }
            fail(t, "unknown identifier");
        }
        default:
            fail(t, "expected a value");
        }
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
    int n_, order_;
    bool truncated_ = false;
};

} // namespace

ParsedExpr parse_expression(const std::string& text, int n, int order) {
    return Parser(tokenize(text), n, order).run();
}

} // namespace defcalc
